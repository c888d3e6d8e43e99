#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "singmod/arith.hpp"
#include "singmod/binary_forms.hpp"
#include "singmod/class_polynomial.hpp"
#include "singmod/cm_reduction.hpp"
#include "singmod/corpus.hpp"
#include "singmod/parallel.hpp"
#include "singmod/quad_poly.hpp"
#include "singmod/quaternion.hpp"
#include "singmod/ternary_forms.hpp"

namespace singmod {

struct AcceptanceConfig {
  std::filesystem::path cache_dir;
  int jobs = 0;
  u64 seed = 20240917;
  /// Criterion ids to run; empty runs all ten.
  std::vector<int> only;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool correct = false;
  double seconds = 0;
  double target_seconds = 0;
  std::string detail;

  CriterionResult() = default;
  CriterionResult(int id_, std::string name_) : id(id_), name(std::move(name_)) {}

  bool within_target() const { return seconds <= target_seconds; }
  bool passed() const { return correct && within_target(); }
};

inline std::string format_result(const CriterionResult& r) {
  char timing[96];
  std::snprintf(timing, sizeof timing, "%.1fs / %.0fs", r.seconds, r.target_seconds);
  std::ostringstream os;
  os << (r.passed() ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << ": " << r.detail << " (" << timing;
  if (!r.within_target()) os << ", over target";
  os << ")";
  return os.str();
}

namespace acceptance {

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

/// First failure message wins; later ones only bump the counter.
class Failures {
 public:
  void add(const std::string& what) {
    std::lock_guard<std::mutex> lock(mutex_);
    if (count_++ == 0) first_ = what;
  }
  i64 count() const { return count_; }
  std::string summary() const { return count_ == 0 ? "" : ", first: " + first_; }

 private:
  std::mutex mutex_;
  std::atomic<i64> count_{0};
  std::string first_;
};

inline std::vector<TernaryQF> ternary_corpus(u64 seed) { return random_ternary_forms(seed, 200, 12); }

inline CriterionResult gross_invariants() {
  CriterionResult r{1, "gross lattice invariants H = 32p^2, N = 4p for p <= 200"};
  r.target_seconds = 60;
  const auto primes = primes_up_to(200);
  i64 bad = 0;
  std::string first;
  for (i64 p : primes) {
    const GrossLattice g = gross_lattice(p);
    if (hessian_det(g.form) != 32 * p * p || level(g.form) != 4 * p) {
      if (bad++ == 0) first = "p=" + std::to_string(p);
    }
  }
  const TernaryQF s2 = gross_lattice(2).form;
  const bool golden2 = s2 == ternary_form(8, 8, 6, 0, 4, 4) && hessian_det(s2) == 128 && level(s2) == 8;
  const TernaryQF s163 = gross_lattice(163).form;
  const bool golden163 = hessian_det(s163) == 32 * 163 * 163 && level(s163) == 4 * 163;
  r.correct = bad == 0 && golden2 && golden163;
  r.detail = std::to_string(primes.size()) + " primes, " + std::to_string(bad) + " mismatches" + (bad ? " (" + first + ")" : "") +
             ", p=2 Hessian " + (golden2 ? "ok" : "WRONG") + ", p=163 det " + std::to_string(hessian_det(s163)) + " level " +
             std::to_string(level(s163));
  return r;
}

inline CriterionResult automorphs() {
  CriterionResult r{2, "automorphs |O(S_2)| = 48"};
  r.target_seconds = 1;
  const i64 n = automorph_group_order(gross_lattice(2).form);
  r.correct = n == 48;
  r.detail = "|O(S_2)| = " + std::to_string(n);
  return r;
}

inline CriterionResult slices(const AcceptanceConfig& cfg) {
  CriterionResult r{3, "slices count equals enumeration, 200 forms, n <= 300"};
  r.target_seconds = 600;
  const auto corpus = ternary_corpus(cfg.seed);
  Failures fail;
  parallel_for(corpus.size(), cfg.jobs, [&](std::size_t i) {
    const TernaryQF& q = corpus[i];
    const auto brute = representation_numbers(q, 300);
    const SliceDecomposition s = minimal_binary_sublattice(q);
    if (!s.satisfies_hermite_rankin(hessian_det(q))) {
      std::ostringstream os;
      os << "Hermite-Rankin fails for " << q;
      fail.add(os.str());
    }
    for (i64 n = 1; n <= 300; ++n) {
      const i64 c = slices_count(q, n, s).total;
      if (c != brute[static_cast<std::size_t>(n)]) {
        std::ostringstream os;
        os << q << " n=" << n << " slices " << c << " vs " << brute[static_cast<std::size_t>(n)];
        fail.add(os.str());
      }
    }
  });
  r.correct = fail.count() == 0;
  r.detail = "60000 counts, " + std::to_string(fail.count()) + " discrepancies" + fail.summary();
  return r;
}

inline CriterionResult hermite_dirichlet(const AcceptanceConfig& cfg) {
  CriterionResult r{4, "Hermite-Dirichlet bound on the corpus and Gross lattices p <= 200, n <= 2000"};
  r.target_seconds = 600;
  Failures fail;
  std::atomic<i64> checked{0};
  auto check = [&](const TernaryQF& q, i64 max_n) {
    const auto counts = representation_numbers(q, max_n);
    const i64 h = hessian_det(q);
    for (i64 n = 1; n <= max_n; ++n) {
      const auto rep = hermite_dirichlet_report(counts[static_cast<std::size_t>(n)], n, h);
      ++checked;
      if (!rep.holds) {
        std::ostringstream os;
        os << q << " n=" << n << " r=" << rep.count << " bound=" << rep.bound;
        fail.add(os.str());
      }
    }
  };
  const auto corpus = ternary_corpus(cfg.seed);
  parallel_for(corpus.size(), cfg.jobs, [&](std::size_t i) { check(corpus[i], 300); });
  const auto primes = primes_up_to(200);
  parallel_for(primes.size(), cfg.jobs, [&](std::size_t i) { check(gross_lattice(primes[i]).form, 2000); });
  r.correct = fail.count() == 0;
  r.detail = std::to_string(checked.load()) + " (Q, n) pairs, " + std::to_string(fail.count()) + " violations" + fail.summary();
  return r;
}

inline CriterionResult dirichlet(const AcceptanceConfig& cfg) {
  CriterionResult r{5, "Dirichlet bound, reduced forms |disc| <= 200, n <= 5000"};
  r.target_seconds = 300;
  std::vector<BinaryQF> forms;
  for (const auto& d : discriminants_in_range(3, 200)) {
    for (const auto& f : reduced_forms(d)) forms.push_back(f);
  }
  Failures fail;
  parallel_for(forms.size(), cfg.jobs, [&](std::size_t i) {
    for (i64 n = 1; n <= 5000; ++n) {
      const auto rep = dirichlet_bound_holds(forms[i], n);
      if (!rep.holds) {
        std::ostringstream os;
        os << forms[i] << " n=" << n << " r=" << rep.count << " bound=" << rep.bound;
        fail.add(os.str());
      }
    }
  });
  r.correct = fail.count() == 0;
  r.detail = std::to_string(forms.size()) + " forms x 5000 n, " + std::to_string(fail.count()) + " violations" + fail.summary();
  return r;
}

inline CriterionResult qp_bound(const AcceptanceConfig& cfg) {
  CriterionResult r{6, "quadratic polynomial bound, 500 random polynomials, n <= 500"};
  r.target_seconds = 300;
  const auto polys = random_valid_polynomials(cfg.seed + 1, 500, 20);
  Failures fail;
  parallel_for(polys.size(), cfg.jobs, [&](std::size_t i) {
    for (i64 n = 1; n <= 500; ++n) {
      const auto rep = qp_bound_holds(polys[i], n);
      if (!rep.holds) {
        std::ostringstream os;
        os << "P=" << polys[i] << " n=" << n << " r=" << rep.count << " bound=" << rep.bound;
        fail.add(os.str());
      }
    }
  });
  r.correct = fail.count() == 0;
  r.detail = "250000 (P, n) pairs, " + std::to_string(fail.count()) + " violations" + fail.summary();
  return r;
}

inline CriterionResult genus_identity() {
  CriterionResult r{7, "genus identity at p in {2,3,5,7,13}, gcd(disc, 2p) = 1, |disc| <= 400"};
  r.target_seconds = 120;
  i64 asserted = 0, bad = 0;
  std::string first;
  for (i64 p : {2, 3, 5, 7, 13}) {
    const GrossLattice g = gross_lattice(p);
    for (const auto& d : discriminants_in_range(3, 400)) {
      if (!is_p_fundamental(d, p) || std::gcd(d.value, 2 * p) != 1) continue;
      const auto rep = genus_identity_check(g, d);
      ++asserted;
      if (!rep.equal) {
        if (bad++ == 0) {
          std::ostringstream os;
          os << "p=" << p << " disc=" << d.value << " lhs=" << rep.lhs << " rhs=" << rep.rhs;
          first = os.str();
        }
      }
    }
  }
  const auto golden = genus_identity_check(2, decompose_discriminant(-3));
  const bool golden_ok = golden.lhs == 8 && golden.rhs == Rational(8) && golden.equal;
  r.correct = bad == 0 && golden_ok && asserted > 0;
  r.detail = std::to_string(asserted) + " cases, " + std::to_string(bad) + " failures" + (bad ? " (" + first + ")" : "") +
             ", r'(3, S_2) = " + std::to_string(golden.lhs);
  return r;
}

/// (disc, p) with |disc| p^2 <= bound and p not dividing the conductor.
inline std::vector<std::pair<Discriminant, i64>> phenomenon_pairs(i64 bound) {
  std::vector<std::pair<Discriminant, i64>> out;
  for (i64 p : primes_up_to(isqrt(i128(bound / 3)))) {
    for (const auto& d : discriminants_in_range(3, bound / (p * p))) {
      if (d.conductor % p != 0) out.emplace_back(d, p);
    }
  }
  return out;
}

inline CriterionResult phenomenon(const AcceptanceConfig& cfg, const ClassPolynomialCache& cache) {
  CriterionResult r{8, "phenomenon identity for |disc| p^2 <= 10^5, p not dividing the conductor"};
  r.target_seconds = 600;
  const auto t0 = Clock::now();
  const auto pairs = phenomenon_pairs(100000);
  std::set<i64> values;
  for (const auto& [d, p] : pairs) {
    values.insert(d.value);
    values.insert(d.value * p * p);
  }
  std::vector<Discriminant> discs;
  for (i64 v : values) discs.push_back(decompose_discriminant(v));
  const std::size_t built = cache.prefetch(discs, cfg.jobs);
  const double build_seconds = seconds_since(t0);
  Failures fail;
  parallel_for(pairs.size(), cfg.jobs, [&](std::size_t i) {
    const auto& [d, p] = pairs[i];
    const auto rep = phenomenon_check(cache, d, p);
    if (!rep.equal) fail.add("disc=" + std::to_string(d.value) + " p=" + std::to_string(p));
  });
  r.correct = fail.count() == 0;
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.1fs", build_seconds);
  r.detail = std::to_string(pairs.size()) + " pairs, " + std::to_string(fail.count()) + " mismatches" + fail.summary() + "; " +
             std::to_string(built) + " of " + std::to_string(discs.size()) + " class polynomials built in " + timing;
  return r;
}

inline CriterionResult multiplicities(const AcceptanceConfig& cfg, const ClassPolynomialCache& cache) {
  CriterionResult r{9, "multiplicity accounting, |disc| <= 2000, p <= 50"};
  r.target_seconds = 300;
  const auto discs = discriminants_in_range(3, 2000);
  const auto primes = primes_up_to(50);
  cache.prefetch(discs, cfg.jobs);
  Failures fail;
  std::atomic<i64> ordinary_checked{0};
  parallel_for(discs.size(), cfg.jobs, [&](std::size_t i) {
    const ClassPolynomial poly = cache.get(discs[i]);
    for (i64 p : primes) {
      const auto rep = reduce_and_count(poly, p);
      i64 sum = 0;
      for (const auto& [m, k] : rep.multiplicity_profile) sum += m * k;
      const std::string tag = "disc=" + std::to_string(discs[i].value) + " p=" + std::to_string(p);
      if (sum != rep.class_number) fail.add(tag + " multiplicity sum " + std::to_string(sum));
      if (rep.classification == Classification::MixedInvalid) fail.add(tag + " mixed-invalid");
      const bool ordinary_pf = rep.classification == Classification::Ordinary && is_p_fundamental(discs[i], p) && discs[i].value % p != 0;
      if (ordinary_pf) {
        ++ordinary_checked;
        if (rep.multiplicity_max != 1) fail.add(tag + " ordinary but not squarefree");
      }
    }
  });
  r.correct = fail.count() == 0;
  r.detail = std::to_string(discs.size() * primes.size()) + " pairs (" + std::to_string(ordinary_checked.load()) +
             " ordinary p-fundamental), " + std::to_string(fail.count()) + " failures" + fail.summary();
  return r;
}

inline CriterionResult limit_trend(const AcceptanceConfig& cfg, const ClassPolynomialCache& cache) {
  CriterionResult r{10, "#red_p <= #SS(p) for supersingular fundamental |disc| <= 5000, p in {11, 23, 47}"};
  r.target_seconds = 900;
  std::vector<Discriminant> discs;
  for (const auto& d : discriminants_in_range(3, 5000)) {
    if (d.is_fundamental()) discs.push_back(d);
  }
  cache.prefetch(discs, cfg.jobs);
  Failures fail;
  std::ostringstream summary;
  bool all_attained = true;
  for (i64 p : {11, 23, 47}) {
    const i64 ss = ss_count(p);
    std::atomic<i64> rows{0}, attained{0};
    parallel_for(discs.size(), cfg.jobs, [&](std::size_t i) {
      if (deuring_classification(discs[i], p) != Classification::Supersingular) return;
      const auto rep = reduce_and_count(cache, discs[i], p);
      ++rows;
      if (rep.distinct_roots > ss) fail.add("disc=" + std::to_string(discs[i].value) + " p=" + std::to_string(p));
      if (rep.distinct_roots == ss) ++attained;
    });
    all_attained = all_attained && attained > 0;
    summary << "p=" << p << ": " << rows.load() << " rows, #SS=" << ss << " attained " << attained.load() << "x; ";
  }
  r.correct = fail.count() == 0 && all_attained;
  r.detail = summary.str() + std::to_string(fail.count()) + " violations" + fail.summary();
  return r;
}

}  // namespace acceptance

/// Runs the selected criteria in order, reporting each result as soon as it is known.
inline std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg,
                                                   const std::function<void(const CriterionResult&)>& report = {}) {
  const ClassPolynomialCache cache(cfg.cache_dir);
  auto selected = [&](int id) { return cfg.only.empty() || std::find(cfg.only.begin(), cfg.only.end(), id) != cfg.only.end(); };
  std::vector<std::function<CriterionResult()>> criteria = {
      [] { return acceptance::gross_invariants(); },
      [] { return acceptance::automorphs(); },
      [&] { return acceptance::slices(cfg); },
      [&] { return acceptance::hermite_dirichlet(cfg); },
      [&] { return acceptance::dirichlet(cfg); },
      [&] { return acceptance::qp_bound(cfg); },
      [] { return acceptance::genus_identity(); },
      [&] { return acceptance::phenomenon(cfg, cache); },
      [&] { return acceptance::multiplicities(cfg, cache); },
      [&] { return acceptance::limit_trend(cfg, cache); },
  };
  std::vector<CriterionResult> results;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected(id)) continue;
    const auto t0 = acceptance::Clock::now();
    CriterionResult r;
    try {
      r = criteria[i]();
    } catch (const std::exception& e) {
      r.id = id;
      r.name = "criterion " + std::to_string(id);
      r.correct = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = acceptance::seconds_since(t0);
    if (r.target_seconds == 0) r.target_seconds = 1;
    if (report) report(r);
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace singmod
