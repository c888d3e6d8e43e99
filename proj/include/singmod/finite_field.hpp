#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "singmod/arith.hpp"

namespace singmod::fp {

using singmod::powmod;

/// Dense polynomial over F_p, coefficients ascending, no trailing zeros (zero poly is empty).
class Poly {
 public:
  Poly() = default;
  Poly(u64 p, std::vector<u64> coeffs) : p_(p), c_(std::move(coeffs)) {
    for (auto& x : c_) x %= p_;
    trim();
  }

  static Poly x_power(u64 p, std::size_t k) {
    std::vector<u64> c(k + 1, 0);
    c[k] = 1;
    return {p, std::move(c)};
  }
  static Poly constant(u64 p, u64 v) { return {p, {v}}; }

  u64 modulus() const { return p_; }
  const std::vector<u64>& coefficients() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  u64 leading() const { return c_.empty() ? 0 : c_.back(); }
  u64 operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

  Poly operator+(const Poly& o) const {
    std::vector<u64> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = ((*this)[i] + o[i]) % p_;
    return {p_, std::move(r)};
  }

  Poly operator-(const Poly& o) const {
    std::vector<u64> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = ((*this)[i] + p_ - o[i]) % p_;
    return {p_, std::move(r)};
  }

  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return {p_, {}};
    std::vector<u128> acc(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) {
        acc[i + j] = (acc[i + j] + (u128)c_[i] * o.c_[j]) % p_;
      }
    }
    std::vector<u64> r(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<u64>(acc[i]);
    return {p_, std::move(r)};
  }

  Poly scaled(u64 s) const {
    std::vector<u64> r(c_);
    for (auto& x : r) x = mulmod(x, s, p_);
    return {p_, std::move(r)};
  }

  Poly monic() const {
    if (is_zero()) return *this;
    return scaled(inverse(leading()));
  }

  Poly derivative() const {
    if (c_.size() <= 1) return {p_, {}};
    std::vector<u64> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = mulmod(c_[i], i % p_, p_);
    return {p_, std::move(r)};
  }

  /// Quotient and remainder; divisor must be nonzero.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw Error(ErrorCode::InvalidArgument, "polynomial division by zero");
    if (degree() < d.degree()) return {Poly{p_, {}}, *this};
    std::vector<u64> rem(c_);
    std::vector<u64> quo(c_.size() - d.c_.size() + 1, 0);
    const u64 inv = inverse(d.leading());
    for (std::size_t i = quo.size(); i-- > 0;) {
      u64 coef = mulmod(rem[i + d.c_.size() - 1], inv, p_);
      quo[i] = coef;
      if (coef == 0) continue;
      for (std::size_t j = 0; j < d.c_.size(); ++j) {
        rem[i + j] = (rem[i + j] + p_ - mulmod(coef, d.c_[j], p_)) % p_;
      }
    }
    return {Poly{p_, std::move(quo)}, Poly{p_, std::move(rem)}};
  }

  Poly operator/(const Poly& d) const { return divmod(d).first; }
  Poly operator%(const Poly& d) const { return divmod(d).second; }

  u64 inverse(u64 a) const {
    if (a % p_ == 0) throw Error(ErrorCode::InvalidArgument, "inverse of zero in F_p");
    return powmod(a, p_ - 2, p_);
  }

  u64 evaluate(u64 x) const {
    u64 acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = (mulmod(acc, x, p_) + c_[i]) % p_;
    return acc;
  }

  std::string str() const {
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i] == 0) continue;
      if (!out.empty()) out += " + ";
      if (c_[i] != 1 || i == 0) out += std::to_string(c_[i]);
      if (i >= 1) out += (c_[i] != 1 ? "*X" : "X");
      if (i >= 2) out += "^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  u64 p_ = 2;
  std::vector<u64> c_;
};

/// Monic gcd.
inline Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// base^e mod m.
inline Poly powmod(const Poly& base, u128 e, const Poly& m) {
  Poly result = Poly::constant(m.modulus(), 1) % m;
  Poly b = base % m;
  while (e) {
    if (e & 1) result = (result * b) % m;
    b = (b * b) % m;
    e >>= 1;
  }
  return result;
}

namespace detail {

// f(X) = g(X^p); returns g, using a^(1/p) = a on F_p.
inline Poly pth_root(const Poly& f) {
  const u64 p = f.modulus();
  std::vector<u64> r(static_cast<std::size_t>(f.degree()) / p + 1, 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f[i * p];
  return {p, std::move(r)};
}

}  // namespace detail

/// Squarefree decomposition f = lc * prod g_i^{m_i} with pairwise coprime squarefree monic g_i.
inline std::vector<std::pair<Poly, long>> squarefree_factorization(const Poly& f) {
  std::vector<std::pair<Poly, long>> out;
  if (f.degree() <= 0) return out;
  const u64 p = f.modulus();
  Poly monic = f.monic();
  Poly fd = monic.derivative();
  if (fd.is_zero()) {
    for (auto& [g, m] : squarefree_factorization(detail::pth_root(monic))) out.emplace_back(g, m * static_cast<long>(p));
    return out;
  }
  Poly c = gcd(monic, fd);
  Poly w = monic / c;
  long i = 1;
  while (!w.is_one()) {
    Poly y = gcd(w, c);
    Poly z = w / y;
    if (z.degree() > 0) out.emplace_back(z.monic(), i);
    ++i;
    w = y;
    c = c / y;
  }
  if (!c.is_one()) {
    for (auto& [g, m] : squarefree_factorization(detail::pth_root(c.monic()))) out.emplace_back(g, m * static_cast<long>(p));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  return out;
}

/// Product of the distinct monic irreducible factors of f.
inline Poly squarefree_part(const Poly& f) {
  Poly r = Poly::constant(f.modulus(), 1);
  for (const auto& [g, m] : squarefree_factorization(f)) r = r * g;
  return r;
}

/// Distinct-degree factorization of a squarefree monic f: (d, product of its degree-d factors).
inline std::vector<std::pair<long, Poly>> distinct_degree_factorization(const Poly& f, long max_degree = -1) {
  std::vector<std::pair<long, Poly>> out;
  const u64 p = f.modulus();
  Poly rest = f.monic();
  Poly x = Poly::x_power(p, 1);
  Poly frob = x % rest;  // X^{p^d} mod rest
  for (long d = 1; rest.degree() >= 2 * d; ++d) {
    if (max_degree >= 0 && d > max_degree) return out;
    frob = powmod(frob, p, rest);
    Poly g = gcd(rest, frob - x);
    if (g.degree() > 0) {
      out.emplace_back(d, g);
      rest = rest / g;
      frob = frob % rest;
    }
  }
  if (rest.degree() > 0 && (max_degree < 0 || rest.degree() <= max_degree)) out.emplace_back(rest.degree(), rest);
  return out;
}

/// Number of distinct roots of f lying in F_{p^2} (f need not be squarefree).
inline long roots_in_fp2(const Poly& f) {
  Poly sq = squarefree_part(f);
  if (sq.degree() <= 0) return 0;
  // gcd(sq, X^{p^2} - X)
  Poly x = Poly::x_power(f.modulus(), 1);
  Poly frob2 = powmod(x, (u128)f.modulus() * f.modulus(), sq);
  return gcd(sq, frob2 - x).degree();
}


/// Splits a squarefree monic f whose irreducible factors all have degree d (p odd).
inline std::vector<Poly> equal_degree_factorization(const Poly& f, long d) {
  const u64 p = f.modulus();
  if (p == 2) throw Error(ErrorCode::InvalidArgument, "equal-degree splitting needs an odd prime");
  std::vector<Poly> done;
  std::vector<Poly> todo{f.monic()};
  u128 exponent = 1;
  for (long i = 0; i < d; ++i) exponent *= p;
  exponent = (exponent - 1) / 2;
  u64 shift = 0;
  while (!todo.empty()) {
    Poly g = todo.back();
    todo.pop_back();
    if (g.degree() == d) {
      done.push_back(g);
      continue;
    }
    // gcd(g, (X + shift)^((p^d - 1)/2) - 1) splits g for about half of the shifts
    while (true) {
      ++shift;
      Poly base({p, {shift % p, 1}});
      Poly h = gcd(g, powmod(base, exponent, g) - Poly::constant(p, 1));
      if (h.degree() > 0 && h.degree() < g.degree()) {
        todo.push_back(h);
        todo.push_back(g / h);
        break;
      }
      if (shift > 64 * p + 64) throw Error(ErrorCode::InvalidArgument, "equal-degree splitting did not converge");
    }
  }
  return done;
}

/// Square root mod an odd prime p of a quadratic residue a (Tonelli-Shanks).
inline u64 sqrt_mod(u64 a, u64 p) {
  a %= p;
  if (a == 0) return 0;
  if (powmod(a, (p - 1) / 2, p) != 1) throw Error(ErrorCode::InvalidArgument, "not a quadratic residue");
  u64 q = p - 1;
  int s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  u64 z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  u64 m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    u64 i = 0, tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    u64 b = c;
    for (u64 k = 0; k + i + 1 < m; ++k) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

/// F_{p^2} = F_p[t] / (t^2 - n), n a fixed non-residue; elements a + b t.
class Fp2 {
 public:
  explicit Fp2(u64 p) : p_(p) {
    if (p == 2) throw Error(ErrorCode::InvalidArgument, "F_4 is not supported");
    n_ = 2;
    while (powmod(n_, (p - 1) / 2, p) != p - 1) ++n_;
  }

  struct Elem {
    u64 a = 0;
    u64 b = 0;
    friend bool operator==(const Elem&, const Elem&) = default;
    friend bool operator<(const Elem& x, const Elem& y) { return x.a != y.a ? x.a < y.a : x.b < y.b; }
  };

  u64 modulus() const { return p_; }
  u64 non_residue() const { return n_; }

  Elem from(u64 a) const { return {a % p_, 0}; }
  Elem add(Elem x, Elem y) const { return {(x.a + y.a) % p_, (x.b + y.b) % p_}; }
  Elem sub(Elem x, Elem y) const { return {(x.a + p_ - y.a) % p_, (x.b + p_ - y.b) % p_}; }
  Elem mul(Elem x, Elem y) const {
    return {(mulmod(x.a, y.a, p_) + mulmod(mulmod(x.b, y.b, p_), n_, p_)) % p_,
            (mulmod(x.a, y.b, p_) + mulmod(x.b, y.a, p_)) % p_};
  }
  Elem inv(Elem x) const {
    // (a + b t)^{-1} = (a - b t) / (a^2 - n b^2)
    u64 norm = (mulmod(x.a, x.a, p_) + p_ - mulmod(n_, mulmod(x.b, x.b, p_), p_)) % p_;
    if (norm == 0) throw Error(ErrorCode::InvalidArgument, "inverse of zero in F_{p^2}");
    u64 ni = powmod(norm, p_ - 2, p_);
    return {mulmod(x.a, ni, p_), mulmod((p_ - x.b) % p_, ni, p_)};
  }

  /// Both square roots of an element of F_p inside F_{p^2}.
  Elem sqrt_of(u64 d) const {
    d %= p_;
    if (d == 0) return {0, 0};
    if (powmod(d, (p_ - 1) / 2, p_) == 1) return {sqrt_mod(d, p_), 0};
    // d / n is a residue: sqrt(d) = sqrt(d / n) t
    u64 r = sqrt_mod(mulmod(d, powmod(n_, p_ - 2, p_), p_), p_);
    return {0, r};
  }

 private:
  u64 p_;
  u64 n_;
};

/// Roots in F_{p^2} of a squarefree f whose irreducible factors have degree <= 2 (p odd).
inline std::vector<Fp2::Elem> roots_deg_le2(const Fp2& field, const Poly& f) {
  const u64 p = f.modulus();
  std::vector<Fp2::Elem> out;
  for (const auto& [d, part] : distinct_degree_factorization(f)) {
    if (d > 2) throw Error(ErrorCode::InvalidArgument, "factor of degree > 2");
    for (const auto& g : equal_degree_factorization(part, d)) {
      if (d == 1) {
        out.push_back(field.from((p - g[0]) % p));
        continue;
      }
      // X^2 + u X + v: (-u +- sqrt(u^2 - 4 v)) / 2
      const u64 u = g[1], v = g[0];
      const u64 disc = (mulmod(u, u, p) + p - mulmod(4 % p, v, p)) % p;
      const Fp2::Elem s = field.sqrt_of(disc);
      const Fp2::Elem half = field.from(powmod(2, p - 2, p));
      const Fp2::Elem minus_u = field.from((p - u) % p);
      out.push_back(field.mul(field.add(minus_u, s), half));
      out.push_back(field.mul(field.sub(minus_u, s), half));
    }
  }
  return out;
}

/// Supersingular j-invariants in characteristic p, from the roots of the Hasse polynomial
/// sum_i binom(m, i)^2 L^i (m = (p-1)/2) of the Legendre family, j = 256 (L^2 - L + 1)^3 / (L^2 (L - 1)^2).
inline std::vector<Fp2::Elem> supersingular_j_invariants(u64 p) {
  if (p == 2 || p == 3) return {Fp2::Elem{0, 0}};
  const Fp2 field(p);
  const u64 m = (p - 1) / 2;
  std::vector<u64> hasse(m + 1);
  u64 binom = 1;
  for (u64 i = 0; i <= m; ++i) {
    hasse[i] = mulmod(binom, binom, p);
    // binom(m, i + 1) = binom(m, i) (m - i) / (i + 1)
    binom = mulmod(mulmod(binom, (m - i) % p, p), powmod(i + 1, p - 2, p), p);
  }
  std::vector<Fp2::Elem> js;
  for (const auto& l : roots_deg_le2(field, Poly(p, hasse))) {
    auto l2 = field.mul(l, l);
    auto num_base = field.add(field.sub(l2, l), field.from(1));
    auto num = field.mul(field.from(256), field.mul(num_base, field.mul(num_base, num_base)));
    auto lm1 = field.sub(l, field.from(1));
    auto den = field.mul(l2, field.mul(lm1, lm1));
    js.push_back(field.mul(num, field.inv(den)));
  }
  std::sort(js.begin(), js.end());
  js.erase(std::unique(js.begin(), js.end()), js.end());
  return js;
}

/// prod (X - j) over the supersingular j; the coefficients lie in F_p.
inline Poly supersingular_polynomial(u64 p) {
  const auto js = supersingular_j_invariants(p);
  if (p == 2 || p == 3) return Poly::x_power(p, 1);
  const Fp2 field(p);
  std::vector<Fp2::Elem> poly{field.from(1)};
  for (const auto& j : js) {
    std::vector<Fp2::Elem> next(poly.size() + 1, Fp2::Elem{});
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k + 1] = field.add(next[k + 1], poly[k]);
      next[k] = field.sub(next[k], field.mul(poly[k], j));
    }
    poly = std::move(next);
  }
  std::vector<u64> coeffs;
  for (const auto& c : poly) {
    if (c.b != 0) throw Error(ErrorCode::InvalidArgument, "supersingular polynomial is not defined over F_p");
    coeffs.push_back(c.a);
  }
  return {p, std::move(coeffs)};
}

}  // namespace singmod::fp
