#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "chebias/error.hpp"

namespace chebias {

/// Arithmetic in Z/p for an odd modulus p < 2^63.
class ModArith {
 public:
  explicit ModArith(std::uint64_t p) : p_(p) {
    if (p < 3 || p >= (std::uint64_t{1} << 63)) throw error("ModArith: modulus out of range");
    barrett_ = ~std::uint64_t{0} / p;
  }

  std::uint64_t modulus() const noexcept { return p_; }
  bool small() const noexcept { return p_ < (std::uint64_t{1} << 32); }

  /// x mod p for any 64-bit x.
  std::uint64_t reduce(std::uint64_t x) const noexcept {
    auto q = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * barrett_) >> 64);
    std::uint64_t r = x - q * p_;
    while (r >= p_) r -= p_;
    return r;
  }
  std::uint64_t reduce(unsigned __int128 x) const noexcept { return static_cast<std::uint64_t>(x % p_); }

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept {
    if (small()) return reduce(a * b);
    return reduce(static_cast<unsigned __int128>(a) * b);
  }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept {
    std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  std::uint64_t neg(std::uint64_t a) const noexcept { return a == 0 ? 0 : p_ - a; }

  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const noexcept {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  /// Inverse via the extended Euclidean algorithm; throws if a == 0 mod p.
  std::uint64_t inv(std::uint64_t a) const {
    a %= p_;
    if (a == 0) throw error("ModArith: zero has no inverse");
    __int128 t = 0, nt = 1;
    __int128 r = p_, nr = a;
    while (nr != 0) {
      __int128 q = r / nr;
      __int128 tmp = t - q * nt;
      t = nt;
      nt = tmp;
      tmp = r - q * nr;
      r = nr;
      nr = tmp;
    }
    if (r != 1) throw error("ModArith: element not invertible");
    if (t < 0) t += p_;
    return static_cast<std::uint64_t>(t);
  }

 private:
  std::uint64_t p_;
  std::uint64_t barrett_;
};

/// Degree of gcd(a, b) over F_p; inputs are coefficient vectors (ascending),
/// trailing zeros allowed. Returns -1 when both are zero.
inline int poly_gcd_degree(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b, const ModArith& F) {
  auto trim = [](std::vector<std::uint64_t>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  trim(a);
  trim(b);
  while (!b.empty()) {
    // a <- a mod b
    const std::uint64_t lead_inv = F.inv(b.back());
    const std::size_t db = b.size() - 1;
    while (a.size() >= b.size()) {
      const std::uint64_t c = F.mul(a.back(), lead_inv);
      const std::size_t shift = a.size() - b.size();
      for (std::size_t j = 0; j < db; ++j) a[shift + j] = F.sub(a[shift + j], F.mul(c, b[j]));
      a.pop_back();
      trim(a);
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

/// The ring F_p[x] / (f) for a monic f of degree n >= 1.
///
/// Elements are dense vectors of n residues in [0, p). Products accumulate
/// lazily in 64-bit words when 2 n (p-1)^2 < 2^64 and in 128-bit words otherwise.
class ModPolyRing {
 public:
  using Elem = std::vector<std::uint64_t>;

  /// `f_low` holds the n non-leading coefficients of f, already reduced mod p.
  ModPolyRing(std::span<const std::uint64_t> f_low, const ModArith& F) : F_(F), n_(f_low.size()) {
    if (n_ == 0) throw error("ModPolyRing: modulus polynomial must have degree >= 1");
    neg_f_.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) neg_f_[j] = F_.neg(f_low[j] % F_.modulus());
    const unsigned __int128 pm1 = F_.modulus() - 1;
    lazy64_ = pm1 * pm1 * (2 * n_ + 2) < (static_cast<unsigned __int128>(1) << 64);
    scratch64_.resize(2 * n_);
    scratch128_.resize(2 * n_);
  }

  std::size_t degree() const noexcept { return n_; }
  const ModArith& field() const noexcept { return F_; }

  Elem one() const {
    Elem e(n_, 0);
    if (n_ == 1) {
      e[0] = 1;
      return e;
    }
    e[0] = 1;
    return e;
  }

  /// The class of x.
  Elem x() const {
    Elem e(n_, 0);
    if (n_ == 1)
      e[0] = neg_f_[0];
    else
      e[1] = 1;
    return e;
  }

  Elem mul(const Elem& a, const Elem& b) {
    return lazy64_ ? mul_impl<std::uint64_t>(a, b, scratch64_) : mul_impl<unsigned __int128>(a, b, scratch128_);
  }
  Elem sqr(const Elem& a) {
    return lazy64_ ? sqr_impl<std::uint64_t>(a, scratch64_) : sqr_impl<unsigned __int128>(a, scratch128_);
  }

  /// a * x.
  Elem mul_x(const Elem& a) const {
    Elem r(n_, 0);
    if (n_ == 0) return r;
    const std::uint64_t top = a[n_ - 1];
    for (std::size_t k = n_ - 1; k > 0; --k) r[k] = a[k - 1];
    for (std::size_t j = 0; j < n_; ++j) r[j] = F_.add(r[j], F_.mul(top, neg_f_[j]));
    return r;
  }

  /// x^e mod f.
  Elem x_pow(std::uint64_t e) {
    if (e == 0) return one();
    Elem r = x();
    for (int bit = std::bit_width(e) - 2; bit >= 0; --bit) {
      r = sqr(r);
      if ((e >> bit) & 1) r = mul_x(r);
    }
    return r;
  }

  /// g(h) mod f for g given by its coefficients (any length).
  Elem compose(std::span<const std::uint64_t> g, const Elem& h) {
    Elem acc(n_, 0);
    for (std::size_t k = g.size(); k-- > 0;) {
      acc = mul(acc, h);
      acc[0] = F_.add(acc[0], g[k] % F_.modulus());
    }
    return acc;
  }

  /// Full modulus polynomial, ascending, monic.
  std::vector<std::uint64_t> modulus_poly() const {
    std::vector<std::uint64_t> f(n_ + 1);
    for (std::size_t j = 0; j < n_; ++j) f[j] = F_.neg(neg_f_[j]);
    f[n_] = 1;
    return f;
  }

  /// True if gcd(f, a) has positive degree.
  bool shares_factor(const Elem& a) const { return poly_gcd_degree(modulus_poly(), a, F_) > 0; }

 private:
  template <class Acc>
  Elem reduce_product(std::vector<Acc>& prod) const {
    for (std::size_t k = 2 * n_ - 2; k >= n_; --k) {
      const std::uint64_t c = F_.reduce(prod[k]);
      if (c != 0) {
        const std::size_t base = k - n_;
        if constexpr (std::is_same_v<Acc, std::uint64_t>) {
          for (std::size_t j = 0; j < n_; ++j) prod[base + j] += c * neg_f_[j];
        } else {
          for (std::size_t j = 0; j < n_; ++j) prod[base + j] += static_cast<unsigned __int128>(c) * neg_f_[j];
        }
      }
      if (k == n_) break;
    }
    Elem r(n_);
    for (std::size_t j = 0; j < n_; ++j) r[j] = F_.reduce(prod[j]);
    return r;
  }

  // Lazy accumulation: before reduce_product each slot holds at most n products,
  // and reduction adds at most n more, so 2n (p-1)^2 bounds every slot.
  template <class Acc>
  Elem mul_impl(const Elem& a, const Elem& b, std::vector<Acc>& prod) {
    std::fill(prod.begin(), prod.end(), Acc{0});
    for (std::size_t i = 0; i < n_; ++i) {
      const Acc ai = a[i];
      if (ai == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) prod[i + j] += ai * static_cast<Acc>(b[j]);
    }
    if (n_ == 1) return {F_.reduce(prod[0])};
    return reduce_product(prod);
  }

  template <class Acc>
  Elem sqr_impl(const Elem& a, std::vector<Acc>& prod) {
    std::fill(prod.begin(), prod.end(), Acc{0});
    for (std::size_t i = 0; i < n_; ++i) {
      const Acc ai = a[i];
      if (ai == 0) continue;
      const Acc twice = ai * 2;
      prod[2 * i] += ai * ai;
      for (std::size_t j = i + 1; j < n_; ++j) prod[i + j] += twice * static_cast<Acc>(a[j]);
    }
    if (n_ == 1) return {F_.reduce(prod[0])};
    return reduce_product(prod);
  }

  ModArith F_;
  std::size_t n_;
  Elem neg_f_;
  bool lazy64_ = false;
  std::vector<std::uint64_t> scratch64_;
  std::vector<unsigned __int128> scratch128_;
};

}  // namespace chebias
