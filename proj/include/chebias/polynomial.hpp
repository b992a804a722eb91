#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "chebias/error.hpp"
#include "chebias/gaussian.hpp"
#include "chebias/modpoly.hpp"

namespace chebias {

/// Residue of an arbitrary-precision integer modulo a word-size prime.
inline std::uint64_t mod_small(const BigInt& a, const ModArith& F) {
  BigInt r = a % F.modulus();
  if (r < 0) r += F.modulus();
  return static_cast<std::uint64_t>(r);
}

/// An integer kept as 32-bit limbs for repeated cheap reduction modulo
/// different primes.
class LimbInteger {
 public:
  LimbInteger() = default;
  explicit LimbInteger(const BigInt& a) : negative_(a < 0) {
    BigInt m = negative_ ? BigInt(-a) : a;
    while (m > 0) {
      limbs_.push_back(static_cast<std::uint32_t>(m & 0xffffffffu));
      m >>= 32;
    }
  }
  bool is_zero() const noexcept { return limbs_.empty(); }
  std::uint64_t mod(const ModArith& F) const noexcept {
    const std::uint64_t base = F.reduce(std::uint64_t{1} << 32);
    std::uint64_t r = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) r = F.add(F.mul(r, base), F.reduce(std::uint64_t{limbs_[i]}));
    return negative_ ? F.neg(r) : r;
  }

 private:
  bool negative_ = false;
  std::vector<std::uint32_t> limbs_;  // least significant first
};

/// Integer polynomial, ascending coefficients.
struct IntPoly {
  std::vector<BigInt> coeffs;

  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> c) : coeffs(std::move(c)) { trim(); }

  void trim() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  }
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool monic() const { return !coeffs.empty() && coeffs.back() == 1; }
  const BigInt& operator[](std::size_t i) const { return coeffs[i]; }

  /// Non-leading coefficients reduced mod p (f must be monic).
  std::vector<std::uint64_t> low_residues(const ModArith& F) const {
    std::vector<std::uint64_t> r;
    for (std::size_t i = 0; i + 1 < coeffs.size(); ++i) r.push_back(mod_small(coeffs[i], F));
    return r;
  }
  std::vector<std::uint64_t> residues(const ModArith& F) const {
    std::vector<std::uint64_t> r;
    for (const auto& c : coeffs) r.push_back(mod_small(c, F));
    return r;
  }

  friend bool operator==(const IntPoly&, const IntPoly&) = default;
};

inline IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.coeffs.empty() || b.coeffs.empty()) return {};
  std::vector<BigInt> c(a.coeffs.size() + b.coeffs.size() - 1);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) c[i + j] += a.coeffs[i] * b.coeffs[j];
  return IntPoly(std::move(c));
}

/// Exact division by a monic polynomial; throws if the remainder is nonzero.
inline IntPoly exact_divide(const IntPoly& num, const IntPoly& den) {
  if (!den.monic()) throw error("exact_divide: divisor must be monic");
  std::vector<BigInt> r = num.coeffs;
  const std::size_t dd = den.coeffs.size() - 1;
  if (r.size() < den.coeffs.size()) throw error("exact_divide: degree too small");
  std::vector<BigInt> q(r.size() - dd);
  for (std::size_t k = r.size(); k-- > dd;) {
    const BigInt c = r[k];
    q[k - dd] = c;
    if (c != 0)
      for (std::size_t j = 0; j <= dd; ++j) r[k - dd + j] -= c * den.coeffs[j];
  }
  for (const auto& x : r)
    if (x != 0) throw error("exact_divide: nonzero remainder");
  return IntPoly(std::move(q));
}

/// Remainder of x^e modulo a monic integer polynomial.
inline IntPoly x_pow_mod(std::size_t e, const IntPoly& f) {
  const std::size_t n = static_cast<std::size_t>(f.degree());
  std::vector<BigInt> r(n, 0);
  if (n == 0) return {};
  if (e < n) {
    r[e] = 1;
    return IntPoly(std::move(r));
  }
  r.assign(n, 0);
  r[n - 1] = 1;  // x^(n-1)
  for (std::size_t k = n - 1; k < e; ++k) {
    // multiply by x
    const BigInt top = r[n - 1];
    for (std::size_t j = n - 1; j > 0; --j) r[j] = r[j - 1] - top * f.coeffs[j];
    r[0] = -top * f.coeffs[0];
  }
  return IntPoly(std::move(r));
}

/// Rational polynomial, ascending coefficients, with its common denominator.
struct RatPoly {
  std::vector<Rational> coeffs;

  RatPoly() = default;
  explicit RatPoly(std::vector<Rational> c) : coeffs(std::move(c)) {}
  explicit RatPoly(const IntPoly& p) {
    for (const auto& c : p.coeffs) coeffs.emplace_back(c);
  }

  /// lcm of the coefficient denominators.
  BigInt denominator() const {
    BigInt d = 1;
    for (const auto& c : coeffs) d = boost::multiprecision::lcm(d, BigInt(boost::multiprecision::denominator(c)));
    return d;
  }
  /// denominator() * this, as integers.
  std::vector<BigInt> scaled_numerators() const {
    const BigInt d = denominator();
    std::vector<BigInt> out;
    for (const auto& c : coeffs) out.push_back(BigInt(boost::multiprecision::numerator(c)) * (d / BigInt(boost::multiprecision::denominator(c))));
    return out;
  }

  /// Residues mod p; throws if p divides a denominator.
  std::vector<std::uint64_t> residues(const ModArith& F) const {
    std::vector<std::uint64_t> out;
    for (const auto& c : coeffs) {
      std::uint64_t den = mod_small(BigInt(boost::multiprecision::denominator(c)), F);
      if (den == 0) throw error("RatPoly: prime divides a denominator");
      out.push_back(F.mul(mod_small(BigInt(boost::multiprecision::numerator(c)), F), F.inv(den)));
    }
    return out;
  }
  friend bool operator==(const RatPoly&, const RatPoly&) = default;
};

/// Phi_m by the quotient recursion Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d.
inline IntPoly cyclotomic_polynomial(std::size_t m) {
  if (m == 0) throw error("cyclotomic_polynomial: m must be positive");
  std::vector<IntPoly> phi(m + 1);
  for (std::size_t d = 1; d <= m; ++d) {
    if (m % d != 0) continue;
    std::vector<BigInt> c(d + 1, 0);
    c[0] = -1;
    c[d] = 1;
    IntPoly q(std::move(c));
    for (std::size_t e = 1; e < d; ++e)
      if (d % e == 0) q = exact_divide(q, phi[e]);
    phi[d] = std::move(q);
  }
  return phi[m];
}

/// Determinant of a square integer matrix by fraction-free elimination.
inline BigInt bareiss_determinant(std::vector<std::vector<BigInt>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < n && a[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(a[k], a[s]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

/// Discriminant of a monic polynomial, via the Sylvester resultant with f'.
inline BigInt discriminant(const IntPoly& f) {
  if (!f.monic() || f.degree() < 1) throw error("discriminant: polynomial must be monic of degree >= 1");
  const std::size_t n = static_cast<std::size_t>(f.degree());
  if (n == 1) return 1;
  std::vector<BigInt> df(n);
  for (std::size_t i = 1; i <= n; ++i) df[i - 1] = f.coeffs[i] * static_cast<unsigned>(i);
  const std::size_t N = 2 * n - 1;
  std::vector<std::vector<BigInt>> S(N, std::vector<BigInt>(N, 0));
  // Rows: n-1 shifts of f, n shifts of f' (descending coefficient order).
  for (std::size_t r = 0; r < n - 1; ++r)
    for (std::size_t j = 0; j <= n; ++j) S[r][r + j] = f.coeffs[n - j];
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j < n; ++j) S[n - 1 + r][r + j] = df[n - 1 - j];
  BigInt res = bareiss_determinant(std::move(S));
  // disc = (-1)^(n(n-1)/2) Res(f, f') for monic f
  if ((n * (n - 1) / 2) % 2 == 1) res = -res;
  return res;
}

}  // namespace chebias
