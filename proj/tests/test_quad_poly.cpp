#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "singmod/binary_forms.hpp"
#include "singmod/corpus.hpp"
#include "singmod/quad_poly.hpp"

using namespace singmod;

namespace {

IntegerValuedQP relaxed(i64 two_a, i64 b, i64 two_c, i64 two_d, i64 two_e, i64 f) {
  return validate_integer_valued_relaxed(qp_coefficients(two_a, b, two_c, two_d, two_e, f));
}

ErrorCode rejection(i64 two_a, i64 b, i64 two_c, i64 two_d, i64 two_e, i64 f) {
  try {
    validate_integer_valued(qp_coefficients(two_a, b, two_c, two_d, two_e, f));
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

// Brute force over a box that certainly contains the ellipse P <= n.
i64 box_count(const IntegerValuedQP& p, i64 n, i64 box) {
  i64 c = 0;
  for (i64 x = -box; x <= box; ++x)
    for (i64 y = -box; y <= box; ++y) c += p.twice_value(x, y) == 2 * i128(n);
  return c;
}

// Solutions v of Q(v) = delta^2 (n - m) in the coset delta (Z^2 + (lambda, mu)).
i64 scaled_coset_count(const IntegerValuedQP& p, i64 n) {
  const MinimumPoint mp = minimum_point(p);
  const i64 delta = p.discriminant();
  const Rational target = Rational(2 * delta * delta) * (Rational(n) - mp.m);  // 2 Q(v)
  if (target < Rational(0) || target.denominator() != 1) return 0;
  const i128 t = target.numerator();
  const Rational sl = mp.lambda * Rational(delta), sm = mp.mu * Rational(delta);
  if (sl.denominator() != 1 || sm.denominator() != 1) return -1;
  const i64 ox = sl.numerator(), oy = sm.numerator();
  // two_a x^2 + 2 b x y + two_c y^2 = t, real y exists iff x^2 <= two_c t / |delta|
  const i128 xmax = isqrt(i128(p.two_c) * t / (-delta)) + 1;
  i64 count = 0;
  for (i128 x = -xmax; x <= xmax; ++x) {
    const i128 bb = 2 * i128(p.b) * x;
    const i128 disc = bb * bb - 4 * i128(p.two_c) * (i128(p.two_a) * x * x - t);
    i128 s;
    if (disc < 0 || !is_square(disc, &s)) continue;
    for (i128 num : {-bb + s, -bb - s}) {
      if (num % (2 * p.two_c) == 0) {
        const i128 y = num / (2 * p.two_c);
        if ((x - ox) % delta == 0 && (y - oy) % delta == 0) ++count;
      }
      if (s == 0) break;
    }
  }
  return count;
}

}  // namespace

TEST(Validate, BinomialIsNotPositiveDefinite) {
  // (x + y choose 2): the half-integrality conditions pass and b = 1, but the quadratic part is degenerate
  EXPECT_EQ(rejection(1, 1, 1, -1, -1, 0), ErrorCode::NotPositiveDefinite);
}

TEST(Validate, NegativeMinimumOnlyForStrict) {
  EXPECT_EQ(rejection(2, 0, 2, 2, 0, 0), ErrorCode::NegativeMinimum);
  const auto p = relaxed(2, 0, 2, 2, 0, 0);
  EXPECT_EQ(p.discriminant(), -4);
}

TEST(Validate, TriangularNumbers) {
  // x(x+1)/2 + y^2 dips to -1/8, so only the relaxed check applies
  const auto p = validate_integer_valued_relaxed(qp_coefficients(1, 0, 2, 1, 0, 0));
  for (i64 x = -20; x <= 20; ++x)
    for (i64 y = -20; y <= 20; ++y) ASSERT_EQ(p.twice_value(x, y) % 2, 0);
}

TEST(Validate, Rejections) {
  using A = std::array<Rational, 6>;
  auto code = [](const A& c) {
    try {
      validate_integer_valued(c);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  EXPECT_EQ(code(A{Rational(1, 3), 0, 1, 0, 0, 0}), ErrorCode::HalfIntegerViolation);
  EXPECT_EQ(code(A{1, Rational(1, 2), 1, 0, 0, 0}), ErrorCode::HalfIntegerViolation);
  EXPECT_EQ(code(A{1, 0, 1, 0, 0, Rational(1, 2)}), ErrorCode::HalfIntegerViolation);
  // x^2/2 + y^2: P(1, 0) = 1/2
  EXPECT_EQ(code(A{Rational(1, 2), 0, 1, 0, 0, 0}), ErrorCode::NotIntegerValued);
}

TEST(Validate, SixPointTestMatchesGridCheck) {
  for (i64 two_a = 1; two_a <= 4; ++two_a)
    for (i64 b = -2; b <= 2; ++b)
      for (i64 two_c = 1; two_c <= 4; ++two_c)
        for (i64 two_d = -3; two_d <= 3; ++two_d)
          for (i64 two_e = -3; two_e <= 3; ++two_e) {
            if (b * b - two_a * two_c >= 0) continue;
            bool grid = true;
            const IntegerValuedQP raw{two_a, b, two_c, two_d, two_e, 0};
            for (i64 x = -6; x <= 6 && grid; ++x)
              for (i64 y = -6; y <= 6 && grid; ++y) grid = raw.twice_value(x, y) % 2 == 0;
            bool accepted = true;
            try {
              validate_integer_valued_relaxed(qp_coefficients(two_a, b, two_c, two_d, two_e, 0));
            } catch (const Error&) {
              accepted = false;
            }
            ASSERT_EQ(accepted, grid) << raw;
          }
}

TEST(MinimumPoint, Examples) {
  const auto origin = minimum_point(relaxed(2, 0, 2, 0, 0, 0));
  EXPECT_EQ(origin.lambda, Rational(0));
  EXPECT_EQ(origin.mu, Rational(0));
  EXPECT_EQ(origin.m, Rational(0));
  const auto half = minimum_point(relaxed(2, 0, 2, 2, 0, 0));
  EXPECT_EQ(half.lambda, Rational(1, 2));
  EXPECT_EQ(half.mu, Rational(0));
  EXPECT_EQ(half.m, Rational(-1, 4));
  // x^2 + xy + y^2 + x + 1: the gradient of Q at (lambda, mu) is (1, 0), so 2 lambda + mu = 1 and lambda + 2 mu = 0
  const auto hex = minimum_point(relaxed(2, 1, 2, 2, 0, 1));
  EXPECT_EQ(hex.lambda, Rational(2, 3));
  EXPECT_EQ(hex.mu, Rational(-1, 3));
  EXPECT_EQ(hex.m, Rational(2, 3));
  EXPECT_EQ(Rational(3) * hex.lambda, Rational(2));
}

TEST(MinimumPoint, DenominatorsDivideDeltaForIntegralQuadraticPart) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<i64> coef(-20, 20);
  int checked = 0;
  while (checked < 2000) {
    const i64 two_a = 2 * (1 + rng() % 10), b = coef(rng), two_c = 2 * (1 + rng() % 10);
    const i64 two_d = 2 * coef(rng), two_e = 2 * coef(rng), f = coef(rng);
    if (b * b - two_a * two_c >= 0) continue;
    const auto mp = minimum_point(relaxed(two_a, b, two_c, two_d, two_e, f));
    const i64 delta = b * b - two_a * two_c;
    ASSERT_EQ(delta % mp.lambda.denominator(), 0);
    ASSERT_EQ(delta % mp.mu.denominator(), 0);
    ++checked;
  }
}

TEST(MinimumPoint, HalfIntegralCounterexample) {
  // x^2/2 + y^2/2 + x/2 + y/2 has delta = -1 and lambda = 1/2
  const auto mp = minimum_point(relaxed(1, 0, 1, 1, 1, 0));
  EXPECT_EQ(mp.lambda, Rational(1, 2));
  EXPECT_EQ(relaxed(1, 0, 1, 1, 1, 0).discriminant(), -1);
}

TEST(CountPoly, Examples) {
  EXPECT_EQ(count_representations_poly(relaxed(2, 0, 2, 0, 0, 0), 2), 4);
  EXPECT_EQ(count_representations_poly(relaxed(2, 0, 2, 2, 0, 0), 2), 2);
  // x^2 + x + y^2 = 1 at (0, +-1) and (-1, +-1)
  EXPECT_EQ(count_representations_poly(relaxed(2, 0, 2, 2, 0, 0), 1), 4);
  EXPECT_EQ(count_representations_poly(relaxed(2, 0, 2, 2, 0, 0), -1), 0);
}

TEST(CountPoly, MatchesBoxEnumeration) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<i64> coef(-6, 6);
  int done = 0;
  while (done < 60) {
    const i64 two_a = 1 + rng() % 6, b = coef(rng), two_c = 1 + rng() % 6;
    IntegerValuedQP p;
    try {
      p = relaxed(two_a, b, two_c, coef(rng), coef(rng), coef(rng));
    } catch (const Error&) {
      continue;
    }
    // the ellipse P <= 40 sits inside |x + lambda| <= sqrt(2 two_c (40 - m) / |delta|), same for y
    const auto mp = minimum_point(p);
    const double room = 40.0 - boost::rational_cast<double>(mp.m), ad = static_cast<double>(-p.discriminant());
    const double bx = std::abs(boost::rational_cast<double>(mp.lambda)) + std::sqrt(2 * p.two_c * room / ad);
    const double by = std::abs(boost::rational_cast<double>(mp.mu)) + std::sqrt(2 * p.two_a * room / ad);
    const i64 box = static_cast<i64>(std::max(bx, by)) + 2;
    if (box > 150) continue;
    for (i64 n = -3; n <= 40; ++n) ASSERT_EQ(count_representations_poly(p, n), box_count(p, n, box)) << p << " n=" << n;
    ++done;
  }
}

TEST(CountPoly, AgreesWithBinaryForms) {
  for (const auto& d : discriminants_in_range(3, 100)) {
    for (const auto& f : reduced_forms(d)) {
      const auto p = relaxed(2 * f.a, f.b, 2 * f.c, 0, 0, 0);
      for (i64 n = 0; n <= 200; ++n) ASSERT_EQ(count_representations_poly(p, n), count_representations_binary(f, n));
    }
  }
}

TEST(CountPoly, ScaledCosetIdentity) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<i64> coef(-8, 8);
  int done = 0;
  while (done < 100) {
    const i64 two_a = 2 * (1 + rng() % 4), b = coef(rng), two_c = 2 * (1 + rng() % 4);
    IntegerValuedQP p;
    try {
      p = relaxed(two_a, b, two_c, 2 * coef(rng), 2 * coef(rng), coef(rng));
    } catch (const Error&) {
      continue;
    }
    const i64 n = static_cast<i64>(rng() % 30);
    ASSERT_EQ(scaled_coset_count(p, n), count_representations_poly(p, n)) << p << " n=" << n;
    ++done;
  }
}

TEST(QPBound, Examples) {
  const auto r1 = qp_bound_holds(validate_integer_valued(qp_coefficients(2, 0, 2, 2, 0, 1)), 3);
  EXPECT_TRUE(r1.holds);
  EXPECT_EQ(r1.count, 2);
  EXPECT_EQ(r1.sigma0_tilde, 10);
  EXPECT_EQ(r1.bound, 40);
  const auto r2 = qp_bound_holds(validate_integer_valued(qp_coefficients(2, 0, 2, 0, 0, 0)), 2);
  EXPECT_TRUE(r2.holds);
  EXPECT_EQ(r2.count, 4);
  EXPECT_EQ(r2.bound, 32);
}

TEST(QPBound, HalfIntegralQuadraticPartUsesItsAutomorphs) {
  // x^2/2 + y^2/2 + x/2 + y/2 + 1: delta = -1, r(P, 1) = 4; Q is proportional to x^2 + y^2 with 4 automorphs
  const auto p = validate_integer_valued(qp_coefficients(1, 0, 1, 1, 1, 1));
  const auto r = qp_bound_holds(p, 1);
  EXPECT_EQ(r.count, 4);
  EXPECT_EQ(r.u, 4);
  EXPECT_TRUE(r.holds);
  // u = 2 read off delta = -1 would give the bound 2, which r(P, 1) = 4 exceeds
  EXPECT_GT(r.count, 2 * sigma0_tilde(i64{1}));
}

TEST(QPBound, RandomCorpus) {
  const auto polys = random_valid_polynomials(99, 100, 20);
  for (const auto& p : polys)
    for (i64 n = 1; n <= 200; ++n) ASSERT_TRUE(qp_bound_holds(p, n).holds) << p << " n=" << n;
}
