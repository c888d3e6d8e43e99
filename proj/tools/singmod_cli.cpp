// singmod: command-line front end.
// Exit codes: 0 ok, 1 computation error, 2 usage error, 3 acceptance failure.
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "singmod/singmod.hpp"

using json = nlohmann::ordered_json;
using namespace singmod;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string format = "json";
  int jobs = 0;
  std::string cache_dir;
  u64 seed = 20240917;
  long precision = 0;
};

std::vector<i64> parse_tuple(const std::string& text, std::size_t expected, const std::string& flag) {
  std::vector<i64> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(flag + ": '" + item + "' is not an integer");
    }
  }
  if (out.size() != expected) {
    throw UsageError(flag + " expects " + std::to_string(expected) + " comma-separated integers, got '" + text + "'");
  }
  return out;
}

TernaryQF parse_hessian(const std::string& text) {
  const auto v = parse_tuple(text, 6, "--hessian");
  return ternary_form(v[0], v[1], v[2], v[3], v[4], v[5]);
}

BinaryQF parse_form(const std::string& text) {
  const auto v = parse_tuple(text, 3, "--form");
  const BinaryQF f{v[0], v[1], v[2]};
  require_positive_definite(f);
  return f;
}

IntegerValuedQP parse_poly(const std::string& text) {
  const auto v = parse_tuple(text, 6, "--poly");
  return validate_integer_valued(qp_coefficients(v[0], v[1], v[2], v[3], v[4], v[5]));
}

std::string rational_str(const Rational& r) {
  return r.denominator() == 1 ? std::to_string(r.numerator())
                              : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

json hessian_json(const Mat3& m) {
  json rows = json::array();
  for (const auto& row : m) rows.push_back(json(std::vector<i64>(row.begin(), row.end())));
  return rows;
}

json form_json(const BinaryQF& f) { return json::array({f.a, f.b, f.c}); }

std::string factorization_str(i64 n) {
  std::string out;
  for (const auto& [p, e] : factorize(n)) {
    if (!out.empty()) out += " * ";
    out += std::to_string(p);
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

std::string tsv_cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + tsv_cell(v[i]);
    return out;
  }
  return v.dump();
}

// Rows share the keys of the first row; TSV gets one header line, JSON one object per line.
void emit_rows(const Globals& g, const std::vector<json>& rows) {
  if (g.format == "tsv") {
    if (rows.empty()) return;
    std::string line;
    for (const auto& [k, v] : rows.front().items()) line += (line.empty() ? "" : "\t") + k;
    std::cout << line << "\n";
    for (const auto& row : rows) {
      line.clear();
      bool first = true;
      for (const auto& [k, v] : row.items()) {
        line += (first ? "" : "\t") + tsv_cell(v);
        first = false;
      }
      std::cout << line << "\n";
    }
  } else {
    for (const auto& row : rows) std::cout << row.dump() << "\n";
  }
}

void emit(const Globals& g, const json& obj) {
  if (g.format == "tsv") {
    emit_rows(g, {obj});
  } else {
    std::cout << obj.dump() << "\n";
  }
}

ClassPolynomialCache open_cache(const Globals& g) {
  ClassPolynomialOptions opts;
  opts.precision_bits = g.precision;
  return ClassPolynomialCache(g.cache_dir, opts);
}

i64 require_prime(i64 p) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  return p;
}

json reduction_json(const ReductionReport& r) {
  json profile = json::array();
  for (const auto& [m, k] : r.multiplicity_profile) profile.push_back(json::array({m, k}));
  return {{"command", "reduce"},
          {"delta", r.delta.value},
          {"p", r.p},
          {"class_number", r.class_number},
          {"distinct_roots", r.distinct_roots},
          {"supersingular_roots", r.supersingular_roots},
          {"classification", classification_name(r.classification)},
          {"multiplicity_max", r.multiplicity_max},
          {"multiplicity_profile", profile},
          {"roots_in_fp2", r.roots_in_fp2},
          {"ss_count", ss_count(r.p)}};
}

}  // namespace

int main(int argc, char** argv) {
  Globals g;
  if (const char* env = std::getenv("SINGMOD_CACHE_DIR")) {
    g.cache_dir = env;
  } else {
    g.cache_dir = SINGMOD_DEFAULT_CACHE;
  }

  CLI::App app{"Singular moduli, quadratic forms and Gross lattices"};
  app.require_subcommand(1);
  // global flags may also follow the subcommand
  app.fallthrough();
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "tsv"}));
  app.add_option("--jobs", g.jobs, "worker threads, 0 = hardware concurrency")->check(CLI::NonNegativeNumber);
  app.add_option("--cache-dir", g.cache_dir, "class polynomial cache (env SINGMOD_CACHE_DIR)");
  app.add_option("--seed", g.seed, "seed for random corpora");
  app.add_option("--precision", g.precision, "class polynomial working bits (0 = estimate)")->check(CLI::NonNegativeNumber);

  // sigma
  i64 n = 1;
  auto* sigma = app.add_subcommand("sigma", "divisor counts and Moebius");
  sigma->add_option("--n", n, "positive integer")->required();

  // bqf
  auto* bqf = app.add_subcommand("bqf", "positive definite binary forms");
  bqf->require_subcommand(1);
  i64 delta = -3;
  std::string form_text;
  auto* bqf_classes = bqf->add_subcommand("classes", "reduced forms of a discriminant");
  bqf_classes->add_option("--delta", delta, "negative discriminant")->required();
  auto* bqf_count = bqf->add_subcommand("count", "r(R, n)");
  auto* bqf_bound = bqf->add_subcommand("bound", "r(R, n) <= u sigma0(n)");
  for (auto* sc : {bqf_count, bqf_bound}) {
    sc->add_option("--form", form_text, "a,b,c")->required();
    sc->add_option("--n", n, "target")->required();
  }

  // qpoly
  auto* qpoly = app.add_subcommand("qpoly", "integer-valued quadratic polynomials");
  qpoly->require_subcommand(1);
  std::string poly_text;
  auto* qp_validate = qpoly->add_subcommand("validate", "check and report the minimum point");
  auto* qp_count = qpoly->add_subcommand("count", "r(P, n)");
  auto* qp_bound = qpoly->add_subcommand("bound", "r(P, n) <= u sigma0_tilde(delta^2 n)");
  for (auto* sc : {qp_validate, qp_count, qp_bound}) sc->add_option("--poly", poly_text, "2a,b,2c,2d,2e,f")->required();
  for (auto* sc : {qp_count, qp_bound}) sc->add_option("--n", n, "target")->required();

  // tqf
  auto* tqf = app.add_subcommand("tqf", "positive definite ternary forms");
  tqf->require_subcommand(1);
  std::string hessian_text;
  bool primitive = false;
  auto* tqf_info = tqf->add_subcommand("info", "determinant, level, automorphs, minimal sublattice");
  auto* tqf_count = tqf->add_subcommand("count", "r(Q, n)");
  tqf_count->add_flag("--primitive", primitive, "count primitive vectors only");
  auto* tqf_slices = tqf->add_subcommand("slices", "r(Q, n) slice by slice");
  auto* tqf_bound = tqf->add_subcommand("bound", "Hermite-Dirichlet bound");
  for (auto* sc : {tqf_info, tqf_count, tqf_slices, tqf_bound}) {
    sc->add_option("--hessian", hessian_text, "a11,a22,a33,a12,a13,a23")->required();
  }
  for (auto* sc : {tqf_count, tqf_slices, tqf_bound}) sc->add_option("--n", n, "target")->required();

  // gross
  i64 prime = 2;
  std::string emit_what = "invariants";
  i64 terms = 20;
  auto* gross = app.add_subcommand("gross", "Gross lattice of a maximal order ramified at p");
  gross->add_option("--prime", prime, "prime p")->required();
  gross->add_option("--emit", emit_what, "what to print")->check(CLI::IsMember({"hessian", "invariants", "theta"}));
  gross->add_option("--terms", terms, "theta truncation")->check(CLI::NonNegativeNumber);

  // theta
  i64 u_index = 1;
  auto* theta = app.add_subcommand("theta", "theta series of a ternary form");
  theta->add_option("--hessian", hessian_text, "a11,a22,a33,a12,a13,a23")->required();
  theta->add_option("--terms", terms, "truncation")->check(CLI::NonNegativeNumber);
  theta->add_option("--u", u_index, "apply U_n")->check(CLI::PositiveNumber);

  // class polynomials and reduction
  auto* hcp = app.add_subcommand("hcp", "Hilbert class polynomial");
  hcp->add_option("--delta", delta, "negative discriminant")->required();

  auto* reduce = app.add_subcommand("reduce", "count reduced singular moduli");
  reduce->add_option("--delta", delta, "negative discriminant")->required();
  reduce->add_option("--p", prime, "prime")->required();
  bool lifted = false;
  reduce->add_flag("--phenomenon", lifted, "also compare against delta p^2");

  i64 delta_min = 3, delta_max = 200, p_min = 2, p_max = 50;
  SweepFilters filters;
  auto* sweep = app.add_subcommand("sweep", "reduction table over ranges of |delta| and p");
  sweep->add_option("--delta-min", delta_min, "smallest |delta|")->check(CLI::PositiveNumber);
  sweep->add_option("--delta-max", delta_max, "largest |delta|")->check(CLI::NonNegativeNumber);
  sweep->add_option("--p-min", p_min, "smallest prime");
  sweep->add_option("--p-max", p_max, "largest prime");
  sweep->add_flag("--fundamental", filters.fundamental_only, "fundamental discriminants only");
  sweep->add_flag("--p-fundamental", filters.p_fundamental_only, "p does not divide the conductor");
  sweep->add_flag("--supersingular", filters.supersingular_only, "p inert or ramified only");

  auto* genus = app.add_subcommand("genus-check", "r'(|delta|, S_p) against the class number formula");
  genus->add_option("--p", prime, "prime in {2, 3, 5, 7, 13}")->required();
  genus->add_option("--delta", delta, "negative discriminant")->required();

  std::vector<int> only;
  auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
  verify->add_option("--only", only, "criterion ids")->check(CLI::Range(1, 10));

  // Sweep output defaults to TSV unless --format is given.
  bool format_given = false;
  try {
    app.parse(argc, argv);
    format_given = app.get_option("--format")->count() > 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sigma->parsed()) {
      emit(g, {{"command", "sigma"},
               {"n", n},
               {"sigma0", sigma0(n)},
               {"sigma0_tilde", sigma0_tilde(n)},
               {"moebius", moebius(n)}});
    } else if (bqf_classes->parsed()) {
      const auto d = decompose_discriminant(delta);
      json forms = json::array();
      for (const auto& f : reduced_forms(d)) forms.push_back(form_json(f));
      emit(g, {{"command", "bqf classes"},
               {"delta", d.value},
               {"fundamental", d.fundamental},
               {"conductor", d.conductor},
               {"class_number", static_cast<i64>(forms.size())},
               {"u", automorph_count_u(d)},
               {"forms", forms}});
    } else if (bqf_count->parsed()) {
      const BinaryQF f = parse_form(form_text);
      emit(g, {{"command", "bqf count"}, {"form", form_json(f)}, {"n", n}, {"r", count_representations_binary(f, n)}});
    } else if (bqf_bound->parsed()) {
      const BinaryQF f = parse_form(form_text);
      const auto r = dirichlet_bound_holds(f, n);
      emit(g, {{"command", "bqf bound"},
               {"form", form_json(f)},
               {"n", n},
               {"r", r.count},
               {"u", r.u},
               {"sigma0", r.sigma0},
               {"bound", r.bound},
               {"holds", r.holds}});
    } else if (qp_validate->parsed()) {
      const auto p = parse_poly(poly_text);
      const auto mp = minimum_point(p);
      emit(g, {{"command", "qpoly validate"},
               {"poly", json::array({p.two_a, p.b, p.two_c, p.two_d, p.two_e, p.f})},
               {"delta", p.discriminant()},
               {"lambda", rational_str(mp.lambda)},
               {"mu", rational_str(mp.mu)},
               {"m", rational_str(mp.m)}});
    } else if (qp_count->parsed()) {
      const auto p = parse_poly(poly_text);
      emit(g, {{"command", "qpoly count"},
               {"poly", json::array({p.two_a, p.b, p.two_c, p.two_d, p.two_e, p.f})},
               {"n", n},
               {"r", count_representations_poly(p, n)}});
    } else if (qp_bound->parsed()) {
      const auto p = parse_poly(poly_text);
      const auto r = qp_bound_holds(p, n);
      emit(g, {{"command", "qpoly bound"},
               {"poly", json::array({p.two_a, p.b, p.two_c, p.two_d, p.two_e, p.f})},
               {"n", n},
               {"r", r.count},
               {"delta", r.delta},
               {"u", r.u},
               {"sigma0_tilde", r.sigma0_tilde},
               {"bound", r.bound},
               {"holds", r.holds}});
    } else if (tqf_info->parsed()) {
      const TernaryQF q = parse_hessian(hessian_text);
      const auto s = minimal_binary_sublattice(q);
      emit(g, {{"command", "tqf info"},
               {"hessian", hessian_json(q.hessian)},
               {"det", hessian_det(q)},
               {"level", level(q)},
               {"automorphs", automorph_group_order(q)},
               {"sublattice_form", form_json(s.restricted_form)},
               {"sublattice_det", s.restricted_det},
               {"hermite_rankin", s.satisfies_hermite_rankin(hessian_det(q))}});
    } else if (tqf_count->parsed()) {
      const TernaryQF q = parse_hessian(hessian_text);
      const i64 r = primitive ? count_primitive(q, n, PrimitiveMethod::GcdFilter) : count_representations(q, n);
      emit(g, {{"command", "tqf count"}, {"hessian", hessian_json(q.hessian)}, {"n", n}, {"primitive", primitive}, {"r", r}});
    } else if (tqf_slices->parsed()) {
      const TernaryQF q = parse_hessian(hessian_text);
      const auto rep = slices_count(q, n);
      json slices = json::array();
      for (const auto& [t, c] : rep.per_slice) slices.push_back(json::array({t, c}));
      emit(g, {{"command", "tqf slices"}, {"hessian", hessian_json(q.hessian)}, {"n", n}, {"r", rep.total}, {"slices", slices}});
    } else if (tqf_bound->parsed()) {
      const TernaryQF q = parse_hessian(hessian_text);
      const auto r = hermite_dirichlet_bound(q, n);
      emit(g, {{"command", "tqf bound"},
               {"hessian", hessian_json(q.hessian)},
               {"n", n},
               {"r", r.count},
               {"sigma0", r.sigma0},
               {"k", r.k},
               {"m", r.m},
               {"sigma0_tilde", r.sigma0_tilde},
               {"bound", r.bound},
               {"holds", r.holds}});
    } else if (gross->parsed()) {
      const auto lat = gross_lattice(require_prime(prime));
      json out{{"command", "gross"}, {"prime", prime}, {"hessian", hessian_json(lat.form.hessian)}};
      if (emit_what == "invariants") {
        const i64 det = hessian_det(lat.form);
        out["det"] = det;
        out["det_factored"] = factorization_str(det);
        out["level"] = level(lat.form);
        out["level_factored"] = factorization_str(level(lat.form));
      } else if (emit_what == "theta") {
        out["theta"] = theta_series(lat.form, terms).coefficients();
      }
      emit(g, out);
    } else if (theta->parsed()) {
      const TernaryQF q = parse_hessian(hessian_text);
      auto series = theta_series(q, terms * u_index);
      if (u_index > 1) series = u_operator(series, u_index);
      emit(g, {{"command", "theta"}, {"hessian", hessian_json(q.hessian)}, {"u", u_index}, {"coefficients", series.coefficients()}});
    } else if (hcp->parsed()) {
      const auto d = decompose_discriminant(delta);
      const auto poly = open_cache(g).get(d);
      std::vector<std::string> coeffs;
      for (const auto& c : poly.coefficients) coeffs.push_back(c.str());
      emit(g, {{"command", "hcp"}, {"delta", d.value}, {"degree", poly.degree()}, {"coefficients", coeffs}});
    } else if (reduce->parsed()) {
      const auto d = decompose_discriminant(delta);
      const auto cache = open_cache(g);
      json out = reduction_json(reduce_and_count(cache, d, prime));
      if (lifted) {
        const auto ph = phenomenon_check(cache, d, prime);
        out["lifted_delta"] = ph.lifted.value;
        out["lifted_distinct_roots"] = ph.lifted_distinct_roots;
        out["phenomenon"] = ph.equal;
      }
      emit(g, out);
    } else if (sweep->parsed()) {
      if (!format_given) g.format = "tsv";
      const auto cache = open_cache(g);
      std::vector<std::pair<Discriminant, i64>> work;
      std::vector<Discriminant> needed;
      const auto discs = delta_max >= delta_min ? discriminants_in_range(delta_min, delta_max) : std::vector<Discriminant>{};
      for (const auto& d : discs) {
        bool used = false;
        for (i64 p : primes_up_to(p_max)) {
          if (p < p_min || !sweep_accepts(d, p, filters)) continue;
          work.emplace_back(d, p);
          used = true;
        }
        if (used) needed.push_back(d);
      }
      cache.prefetch(needed, g.jobs);
      std::vector<json> rows(work.size());
      parallel_for(work.size(), g.jobs, [&](std::size_t i) {
        const auto row = sweep_row(cache, work[i].first, work[i].second);
        rows[i] = json{{"delta", row.delta.value},
                       {"p", row.p},
                       {"p_fundamental", row.p_fundamental},
                       {"classification", classification_name(row.classification)},
                       {"class_number", row.class_number},
                       {"distinct_roots", row.distinct_roots},
                       {"ss_count", row.ss_count},
                       {"multiplicity_max", row.multiplicity_max}};
      });
      emit_rows(g, rows);
    } else if (genus->parsed()) {
      const auto r = genus_identity_check(prime, decompose_discriminant(delta));
      emit(g, {{"command", "genus-check"},
               {"p", r.p},
               {"delta", r.delta.value},
               {"lhs", r.lhs},
               {"epsilon", r.epsilon},
               {"class_number", r.class_number},
               {"unit_index", r.unit_index},
               {"rhs", rational_str(r.rhs)},
               {"equal", r.equal},
               {"asserted", r.asserted}});
    } else if (verify->parsed()) {
      AcceptanceConfig cfg;
      cfg.cache_dir = g.cache_dir;
      cfg.jobs = g.jobs;
      cfg.seed = g.seed;
      cfg.only = only;
      bool ok = true;
      run_acceptance(cfg, [&](const CriterionResult& r) {
        ok = ok && r.passed();
        if (g.format == "json") {
          std::cout << json{{"id", r.id},
                            {"name", r.name},
                            {"passed", r.passed()},
                            {"correct", r.correct},
                            {"seconds", r.seconds},
                            {"target_seconds", r.target_seconds},
                            {"detail", r.detail}}
                           .dump()
                    << std::endl;
        } else {
          std::cout << format_result(r) << std::endl;
        }
      });
      return ok ? 0 : 3;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
