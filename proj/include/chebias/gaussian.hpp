#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "chebias/error.hpp"

namespace chebias {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact a + b i with a, b rational.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long long re) : re_(re) {}  // NOLINT: implicit from integers is intended
  GaussianRational(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational i() { return {0, 1}; }

  const Rational& re() const noexcept { return re_; }
  const Rational& im() const noexcept { return im_; }
  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }

  GaussianRational conj() const { return {re_, -im_}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    Rational n = o.re_ * o.re_ + o.im_ * o.im_;
    if (n == 0) throw error("GaussianRational: division by zero");
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const GaussianRational&, const GaussianRational&) = default;

  /// "re+im*i" / "re-im*i" with rationals written as n or n/d.
  std::string to_string() const {
    std::string s = re_.str();
    if (im_ < 0) {
      s += "-";
      s += Rational(-im_).str();
    } else {
      s += "+";
      s += im_.str();
    }
    return s + "*i";
  }

  /// Accepts the to_string format as well as a bare rational "n/d".
  static GaussianRational parse(std::string_view text) {
    std::string t;
    for (char c : text)
      if (c != ' ') t += c;
    if (t.empty()) throw error("GaussianRational: empty string");
    try {
      if (t.size() < 2 || t.substr(t.size() - 2) != "*i") return {Rational(t)};
      std::string body = t.substr(0, t.size() - 2);
      std::size_t split = body.find_first_of("+-", 1);
      while (split != std::string::npos && (body[split - 1] == '/'))
        split = body.find_first_of("+-", split + 1);
      if (split == std::string::npos) return {0, Rational(body)};
      Rational re(body.substr(0, split));
      std::string im = body.substr(split);
      if (im.front() == '+') im.erase(0, 1);
      return {re, Rational(im)};
    } catch (const std::exception&) {
      throw error("GaussianRational: cannot parse \"" + std::string(text) + "\"");
    }
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.to_string(); }

}  // namespace chebias
