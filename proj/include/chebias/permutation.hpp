#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chebias/error.hpp"

namespace chebias {

/// A bijection of {0, ..., n-1}, stored as its image array.
///
/// Points are 0-based internally. Text I/O uses 1-based cycle notation,
/// e.g. "(1 2)(3 4)" or the compact "(12)(34)" for single-digit points.
class Permutation {
 public:
  using point = std::uint32_t;

  Permutation() = default;

  /// Identity on `degree` points.
  explicit Permutation(std::size_t degree) : images_(degree) {
    std::iota(images_.begin(), images_.end(), point{0});
  }

  explicit Permutation(std::vector<point> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (point x : images_) {
      if (x >= images_.size() || seen[x]) throw error("permutation images are not a bijection");
      seen[x] = true;
    }
  }

  /// Parses 1-based cycle notation. Whitespace inside a cycle separates
  /// points; a cycle without whitespace is read one digit per point.
  static Permutation from_cycles(std::string_view text, std::size_t degree);

  /// Like from_cycles but infers the degree as the largest point mentioned.
  static Permutation from_cycles(std::string_view text);

  std::size_t degree() const noexcept { return images_.size(); }
  point operator()(point x) const { return images_[x]; }
  std::span<const point> images() const noexcept { return images_; }

  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  Permutation inverse() const {
    std::vector<point> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<point>(i);
    Permutation r;
    r.images_ = std::move(inv);
    return r;
  }

  /// p^e for any integer e (negative exponents invert).
  Permutation pow(long long e) const;

  /// Lengths of all cycles, fixed points included, in descending order.
  std::vector<std::size_t> cycle_type() const {
    std::vector<std::size_t> out;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t s = 0; s < images_.size(); ++s) {
      if (seen[s]) continue;
      std::size_t len = 0;
      for (std::size_t x = s; !seen[x]; x = images_[x]) {
        seen[x] = true;
        ++len;
      }
      out.push_back(len);
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
  }

  std::size_t order() const {
    std::size_t r = 1;
    for (std::size_t len : cycle_type()) r = std::lcm(r, len);
    return r;
  }

  /// 1-based, space-separated cycle string; "()" for the identity.
  std::string to_cycles() const {
    std::string out;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t s = 0; s < images_.size(); ++s) {
      if (seen[s] || images_[s] == s) continue;
      out += '(';
      bool first = true;
      for (std::size_t x = s; !seen[x]; x = images_[x]) {
        seen[x] = true;
        if (!first) out += ' ';
        out += std::to_string(x + 1);
        first = false;
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

 private:
  std::vector<point> images_;
};

/// (a o b)(x) = a(b(x)): b is applied first.
inline Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) throw error("compose: degree mismatch");
  std::vector<Permutation::point> img(a.degree());
  for (std::size_t x = 0; x < img.size(); ++x) img[x] = a(b(static_cast<Permutation::point>(x)));
  return Permutation(std::move(img));
}

inline Permutation operator*(const Permutation& a, const Permutation& b) { return compose(a, b); }

/// a g a^-1.
inline Permutation conjugate(const Permutation& g, const Permutation& a) {
  return a * g * a.inverse();
}

inline Permutation Permutation::pow(long long e) const {
  Permutation base = e < 0 ? inverse() : *this;
  unsigned long long n = e < 0 ? static_cast<unsigned long long>(-(e + 1)) + 1 : static_cast<unsigned long long>(e);
  Permutation result(degree());
  while (n) {
    if (n & 1) result = result * base;
    base = base * base;
    n >>= 1;
  }
  return result;
}

namespace detail {

inline std::vector<std::vector<std::size_t>> parse_cycle_points(std::string_view text) {
  std::vector<std::vector<std::size_t>> cycles;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw error("cycle notation: expected '(' in \"" + std::string(text) + "\"");
    std::size_t close = text.find(')', i);
    if (close == std::string_view::npos) throw error("cycle notation: unbalanced parenthesis");
    std::string_view body = text.substr(i + 1, close - i - 1);
    // Trim.
    while (!body.empty() && std::isspace(static_cast<unsigned char>(body.front()))) body.remove_prefix(1);
    while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.remove_suffix(1);
    std::vector<std::size_t> pts;
    bool spaced = std::any_of(body.begin(), body.end(), [](char c) {
      return std::isspace(static_cast<unsigned char>(c)) || c == ',';
    });
    if (spaced) {
      std::size_t j = 0;
      while (j < body.size()) {
        while (j < body.size() && (std::isspace(static_cast<unsigned char>(body[j])) || body[j] == ',')) ++j;
        std::size_t start = j;
        while (j < body.size() && std::isdigit(static_cast<unsigned char>(body[j]))) ++j;
        if (start == j) {
          if (j < body.size()) throw error("cycle notation: unexpected character");
          break;
        }
        pts.push_back(std::stoul(std::string(body.substr(start, j - start))));
      }
    } else {
      for (char c : body) {
        if (!std::isdigit(static_cast<unsigned char>(c))) throw error("cycle notation: unexpected character");
        pts.push_back(static_cast<std::size_t>(c - '0'));
      }
    }
    for (std::size_t p : pts)
      if (p == 0) throw error("cycle notation: points are 1-based");
    if (!pts.empty()) cycles.push_back(std::move(pts));
    i = close + 1;
    skip_ws();
  }
  return cycles;
}

}  // namespace detail

inline Permutation Permutation::from_cycles(std::string_view text, std::size_t degree) {
  std::vector<point> img(degree);
  std::iota(img.begin(), img.end(), point{0});
  std::vector<bool> used(degree, false);
  for (const auto& cyc : detail::parse_cycle_points(text)) {
    for (std::size_t p : cyc) {
      if (p > degree) throw error("cycle notation: point " + std::to_string(p) + " exceeds degree");
      if (used[p - 1]) throw error("cycle notation: point " + std::to_string(p) + " repeated");
      used[p - 1] = true;
    }
    for (std::size_t k = 0; k < cyc.size(); ++k)
      img[cyc[k] - 1] = static_cast<point>(cyc[(k + 1) % cyc.size()] - 1);
  }
  return Permutation(std::move(img));
}

inline Permutation Permutation::from_cycles(std::string_view text) {
  std::size_t degree = 0;
  for (const auto& cyc : detail::parse_cycle_points(text))
    for (std::size_t p : cyc) degree = std::max(degree, p);
  return from_cycles(text, degree);
}

}  // namespace chebias

template <>
struct std::hash<chebias::Permutation> {
  std::size_t operator()(const chebias::Permutation& p) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto x : p.images()) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};
