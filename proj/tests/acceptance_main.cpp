// Prints one PASS/FAIL line per acceptance criterion; exit status 3 if any fails.
#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "singmod/acceptance.hpp"

int main(int argc, char** argv) {
  singmod::AcceptanceConfig cfg;
  const char* env = std::getenv("SINGMOD_CACHE_DIR");
  std::string cache_dir = env != nullptr ? env : SINGMOD_DEFAULT_CACHE;

  CLI::App app{"singmod acceptance run"};
  app.add_option("--cache-dir", cache_dir, "class polynomial cache directory");
  app.add_option("--jobs", cfg.jobs, "worker threads, 0 = hardware concurrency");
  app.add_option("--seed", cfg.seed, "corpus seed");
  app.add_option("--only", cfg.only, "criterion ids to run")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);
  cfg.cache_dir = cache_dir;

  bool ok = true;
  singmod::run_acceptance(cfg, [&](const singmod::CriterionResult& r) {
    std::cout << singmod::format_result(r) << std::endl;
    ok = ok && r.passed();
  });
  return ok ? 0 : 3;
}
