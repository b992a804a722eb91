#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "chebias/error.hpp"
#include "chebias/field_data.hpp"
#include "chebias/modpoly.hpp"
#include "chebias/perm_group.hpp"
#include "chebias/polynomial.hpp"

namespace chebias {

/// x^p mod (f, p) with coefficients in [0, p).
///
/// Requires p odd and f squarefree modulo p.
inline std::vector<std::uint64_t> modpoly_pow_x_p(const IntPoly& f, std::uint64_t p) {
  if (p % 2 == 0) throw error("modpoly_pow_x_p: p must be odd");
  if (!f.monic()) throw error("modpoly_pow_x_p: f must be monic");
  const ModArith F(p);
  const auto full = f.residues(F);
  std::vector<std::uint64_t> df;
  for (std::size_t i = 1; i < full.size(); ++i) df.push_back(F.mul(full[i], i % p));
  if (poly_gcd_degree(full, df, F) > 0) throw error("modpoly_pow_x_p: f is not squarefree modulo p (excluded prime)");
  ModPolyRing R(f.low_residues(F), F);
  return R.x_pow(p);
}

namespace detail {

/// An automorphism polynomial prepared for reduction modulo many primes:
/// g = N(x) / D with integer N.
struct PreparedAutomorphism {
  std::vector<LimbInteger> numerators;
  LimbInteger denominator;
  explicit PreparedAutomorphism(const RatPoly& g) : denominator(g.denominator()) {
    for (const auto& c : g.scaled_numerators()) numerators.emplace_back(c);
  }
};

}  // namespace detail

/// The Frobenius class of a rational prime, from field data.
///
/// For an unramified p, sigma_i is the Frobenius of some prime above p exactly
/// when gcd(f, g_i - x^p) is nontrivial modulo p, and those sigma_i form one
/// conjugacy class of G+. Testing one automorphism per class therefore finds
/// the class; in strict mode every class is tested and exactly one must match.
class FieldFrobenius {
 public:
  explicit FieldFrobenius(std::shared_ptr<const NumberFieldData> fd) : fd_(std::move(fd)) {
    group_ = fd_->ambient_group();
    if (group_->order() != fd_->degree()) throw corrupt_data("field data: |G+| differs from the field degree");
    const std::size_t classes = group_->class_count();
    candidate_.assign(classes, static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < fd_->perm_map.size(); ++i) {
      const auto c = group_->class_of(fd_->perm_map[i]);
      if (fd_->perm_map[i] == group_->class_representative(c)) candidate_[c] = i;
      prepared_.emplace_back(fd_->automorphisms[i]);
    }
    for (std::size_t c = 0; c < classes; ++c)
      if (candidate_[c] == static_cast<std::size_t>(-1)) throw corrupt_data("field data: a class of G+ has no automorphism");
    // Large classes first: the expected number of gcd tests is smallest.
    for (std::size_t c = 0; c < classes; ++c) order_.push_back(c);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return group_->class_size(a) > group_->class_size(b); });
  }

  const GroupPtr& group() const noexcept { return group_; }
  const NumberFieldData& data() const noexcept { return *fd_; }
  bool is_excluded(std::uint64_t p) const { return p < 3 || fd_->is_excluded(p); }

  /// Class of G+ containing the Frobenius at p, or nullopt for excluded p.
  /// Throws corrupt_data when no class or (in strict mode) several match.
  std::optional<std::size_t> frobenius_class(std::uint64_t p, bool strict = true) const {
    if (is_excluded(p)) return std::nullopt;
    const ModArith F(p);
    ModPolyRing R(fd_->f.low_residues(F), F);
    const auto xp = R.x_pow(p);
    const auto fpoly = R.modulus_poly();
    std::optional<std::size_t> found;
    for (std::size_t c : order_) {
      if (matches(candidate_[c], xp, fpoly, F)) {
        if (found) throw corrupt_data("identify_frobenius: several classes match at p = " + std::to_string(p));
        found = c;
        if (!strict) break;
      }
    }
    if (!found) throw corrupt_data("identify_frobenius: no automorphism matches x^p at p = " + std::to_string(p));
    return found;
  }

  /// All automorphism indices i with gcd(f, g_i - x^p) nontrivial.
  std::vector<std::size_t> matching_automorphisms(std::uint64_t p) const {
    if (is_excluded(p)) throw error("matching_automorphisms: excluded prime");
    const ModArith F(p);
    ModPolyRing R(fd_->f.low_residues(F), F);
    const auto xp = R.x_pow(p);
    const auto fpoly = R.modulus_poly();
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < prepared_.size(); ++i)
      if (matches(i, xp, fpoly, F)) out.push_back(i);
    return out;
  }

 private:
  bool matches(std::size_t aut, const std::vector<std::uint64_t>& xp, const std::vector<std::uint64_t>& fpoly,
               const ModArith& F) const {
    const auto& g = prepared_[aut];
    const std::uint64_t d = g.denominator.mod(F);
    if (d == 0) throw corrupt_data("identify_frobenius: prime divides a denominator but is not excluded");
    std::vector<std::uint64_t> diff(xp.size());
    for (std::size_t k = 0; k < xp.size(); ++k) diff[k] = F.sub(g.numerators[k].mod(F), F.mul(d, xp[k]));
    return poly_gcd_degree(fpoly, std::move(diff), F) > 0;
  }

  std::shared_ptr<const NumberFieldData> fd_;
  GroupPtr group_;
  std::vector<std::size_t> candidate_;  // per class of G+: automorphism whose perm is the representative
  std::vector<std::size_t> order_;
  std::vector<detail::PreparedAutomorphism> prepared_;
};

/// Frobenius at p for Q(zeta_m) in closed form: x -> x^(p mod m).
class CyclotomicFrobenius {
 public:
  explicit CyclotomicFrobenius(std::size_t m) : m_(m), fd_(cyclotomic_field_data(m)) {
    group_ = fd_.ambient_group();
    std::size_t k = 0;
    perm_of_residue_.resize(m);
    for (std::size_t a = 1; a < m; ++a)
      if (std::gcd(a, m) == 1) perm_of_residue_[a] = fd_.perm_map[k++];
  }

  std::size_t modulus() const noexcept { return m_; }
  const GroupPtr& group() const noexcept { return group_; }
  const NumberFieldData& data() const noexcept { return fd_; }
  bool is_excluded(std::uint64_t p) const { return p < 3 || fd_.is_excluded(p); }

  std::optional<Permutation> frobenius(std::uint64_t p) const {
    if (is_excluded(p)) return std::nullopt;
    return perm_of_residue_[p % m_];
  }
  std::optional<std::size_t> frobenius_class(std::uint64_t p, bool = true) const {
    auto s = frobenius(p);
    if (!s) return std::nullopt;
    return group_->class_of(*s);
  }

 private:
  std::size_t m_;
  NumberFieldData fd_;
  GroupPtr group_;
  std::vector<Permutation> perm_of_residue_;
};

/// Frobenius oracle over either ingested field data or a closed-form
/// cyclotomic field. Immutable and safe to share across threads.
class FrobeniusOracle {
 public:
  static FrobeniusOracle from_field(std::shared_ptr<const NumberFieldData> fd, bool strict = true) {
    FrobeniusOracle o;
    o.field_ = std::make_shared<const FieldFrobenius>(std::move(fd));
    o.strict_ = strict;
    return o;
  }
  static FrobeniusOracle cyclotomic(std::size_t m) {
    FrobeniusOracle o;
    o.cyclo_ = std::make_shared<const CyclotomicFrobenius>(m);
    return o;
  }

  const GroupPtr& group() const { return field_ ? field_->group() : cyclo_->group(); }
  const NumberFieldData& data() const { return field_ ? field_->data() : cyclo_->data(); }
  bool is_excluded(std::uint64_t p) const { return field_ ? field_->is_excluded(p) : cyclo_->is_excluded(p); }
  bool strict() const noexcept { return strict_; }

  std::optional<std::size_t> frobenius_class(std::uint64_t p) const {
    return field_ ? field_->frobenius_class(p, strict_) : cyclo_->frobenius_class(p);
  }

  /// A representative Frobenius element: the canonical representative of its class.
  std::optional<Permutation> frobenius(std::uint64_t p) const {
    if (cyclo_) return cyclo_->frobenius(p);
    auto c = frobenius_class(p);
    if (!c) return std::nullopt;
    return group()->class_representative(*c);
  }

 private:
  std::shared_ptr<const FieldFrobenius> field_;
  std::shared_ptr<const CyclotomicFrobenius> cyclo_;
  bool strict_ = true;
};

/// Frobenius element at p (canonical class representative) from field data.
inline std::optional<Permutation> identify_frobenius(const FieldFrobenius& oracle, std::uint64_t p) {
  auto c = oracle.frobenius_class(p, true);
  if (!c) return std::nullopt;
  return oracle.group()->class_representative(*c);
}

}  // namespace chebias
