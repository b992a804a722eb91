#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chebias/embedding.hpp"
#include "chebias/error.hpp"
#include "chebias/gaussian.hpp"
#include "chebias/perm_group.hpp"

namespace chebias {

/// A function on a permutation group that is constant on conjugacy classes.
///
/// Values are exact Gaussian rationals, one per class in the group's class
/// numbering.
class ClassFunction {
 public:
  ClassFunction(GroupPtr group, std::vector<GaussianRational> values)
      : group_(std::move(group)), values_(std::move(values)) {
    if (!group_) throw error("ClassFunction: null group");
    if (values_.size() != group_->class_count()) throw error("ClassFunction: one value per class required");
  }

  static ClassFunction constant(GroupPtr group, const GaussianRational& v) {
    std::vector<GaussianRational> vals(group->class_count(), v);
    return {std::move(group), std::move(vals)};
  }

  static ClassFunction indicator(GroupPtr group, std::size_t class_id) {
    if (class_id >= group->class_count()) throw error("indicator: class out of range");
    std::vector<GaussianRational> vals(group->class_count());
    vals[class_id] = 1;
    return {std::move(group), std::move(vals)};
  }

  /// Samples `f` at every class representative.
  template <class F>
  static ClassFunction from_representatives(GroupPtr group, F&& f) {
    std::vector<GaussianRational> vals;
    vals.reserve(group->class_count());
    for (std::size_t c = 0; c < group->class_count(); ++c) vals.push_back(f(group->class_representative(c)));
    return {std::move(group), std::move(vals)};
  }

  const PermutationGroup& group() const noexcept { return *group_; }
  const GroupPtr& group_ptr() const noexcept { return group_; }
  std::span<const GaussianRational> values() const noexcept { return values_; }

  const GaussianRational& at_class(std::size_t c) const { return values_.at(c); }
  const GaussianRational& at_element(std::size_t element_index) const {
    return values_[group_->class_of(element_index)];
  }
  const GaussianRational& operator()(const Permutation& g) const { return values_[group_->class_of(g)]; }

  ClassFunction conj() const {
    std::vector<GaussianRational> v;
    for (const auto& z : values_) v.push_back(z.conj());
    return {group_, std::move(v)};
  }

  ClassFunction& operator+=(const ClassFunction& o) {
    require_same(o);
    for (std::size_t c = 0; c < values_.size(); ++c) values_[c] += o.values_[c];
    return *this;
  }
  ClassFunction& operator-=(const ClassFunction& o) {
    require_same(o);
    for (std::size_t c = 0; c < values_.size(); ++c) values_[c] -= o.values_[c];
    return *this;
  }
  ClassFunction& operator*=(const GaussianRational& s) {
    for (auto& z : values_) z *= s;
    return *this;
  }
  friend ClassFunction operator+(ClassFunction a, const ClassFunction& b) { return a += b; }
  friend ClassFunction operator-(ClassFunction a, const ClassFunction& b) { return a -= b; }
  friend ClassFunction operator*(const GaussianRational& s, ClassFunction a) { return a *= s; }
  friend ClassFunction operator-(ClassFunction a) { return a *= GaussianRational(-1); }

  bool is_zero() const {
    for (const auto& z : values_)
      if (!z.is_zero()) return false;
    return true;
  }

  friend bool operator==(const ClassFunction& a, const ClassFunction& b) {
    return same_group(a, b) && a.values_ == b.values_;
  }

  static bool same_group(const ClassFunction& a, const ClassFunction& b) {
    return a.group_ == b.group_ || *a.group_ == *b.group_;
  }

 private:
  void require_same(const ClassFunction& o) const {
    if (!same_group(*this, o)) throw error("class functions live on different groups");
  }

  GroupPtr group_;
  std::vector<GaussianRational> values_;
};

/// r_m(g) = #{h in G : h^m = g}.
inline ClassFunction power_root_count(const GroupPtr& group, long long m) {
  if (m < 1) throw error("power_root_count: m must be positive");
  std::vector<long long> per_element(group->order(), 0);
  for (const auto& h : group->elements()) ++per_element[group->index_checked(h.pow(m))];
  std::vector<GaussianRational> vals;
  for (std::size_t c = 0; c < group->class_count(); ++c)
    vals.emplace_back(per_element[group->class_members(c).front()]);
  return {group, std::move(vals)};
}

/// r_G(g) = #{h in G : h^2 = g}.
inline ClassFunction square_root_count(const GroupPtr& group) { return power_root_count(group, 2); }

/// g -> t(g^m).
inline ClassFunction power_twist(const ClassFunction& t, long long m) {
  if (m < 1) throw error("power_twist: m must be positive");
  const auto& G = t.group();
  std::vector<GaussianRational> vals;
  for (std::size_t c = 0; c < G.class_count(); ++c) vals.push_back(t(G.class_representative(c).pow(m)));
  return {t.group_ptr(), std::move(vals)};
}

/// <t1, t2> = (1/|G|) sum_g t1(g) conj(t2(g)).
inline GaussianRational inner_product(const ClassFunction& t1, const ClassFunction& t2) {
  if (!ClassFunction::same_group(t1, t2)) throw error("inner_product: class functions on different groups");
  const auto& G = t1.group();
  GaussianRational acc;
  for (std::size_t c = 0; c < G.class_count(); ++c)
    acc += GaussianRational(static_cast<long long>(G.class_size(c))) * t1.at_class(c) * t2.at_class(c).conj();
  return acc / GaussianRational(static_cast<long long>(G.order()));
}

/// Induction from the subgroup to the ambient group:
/// t+(g) = sum over left cosets xG with x^-1 g x in G of t(x^-1 g x).
///
/// The x^-1 g x form makes each term independent of the coset representative.
inline ClassFunction induce(const ClassFunction& t, const SubgroupEmbedding& emb) {
  if (!(t.group() == emb.sub())) throw error("induce: class function is not on the embedded subgroup");
  const auto& A = emb.ambient();
  std::vector<GaussianRational> vals;
  vals.reserve(A.class_count());
  for (std::size_t c = 0; c < A.class_count(); ++c) {
    const Permutation& g = A.class_representative(c);
    GaussianRational acc;
    for (std::size_t x : emb.left_coset_reps()) {
      const Permutation& xp = A.element(x);
      auto s = emb.to_sub(A.index_checked(xp.inverse() * g * xp));
      if (s) acc += t.at_element(*s);
    }
    vals.push_back(std::move(acc));
  }
  return {emb.ambient_ptr(), std::move(vals)};
}

/// C+ : the ambient class containing a class of the subgroup.
inline std::size_t class_plus(std::size_t sub_class, const SubgroupEmbedding& emb) {
  if (sub_class >= emb.sub().class_count()) throw error("class_plus: class out of range");
  return emb.ambient_class_of(sub_class);
}

/// t_{C1,C2} = (|G|/|C1|) 1_{C1} - (|G|/|C2|) 1_{C2}.
inline ClassFunction bias_function(const GroupPtr& group, std::size_t c1, std::size_t c2) {
  const Rational order(static_cast<long long>(group->order()));
  auto t = GaussianRational(order / static_cast<long long>(group->class_size(c1))) * ClassFunction::indicator(group, c1);
  t -= GaussianRational(order / static_cast<long long>(group->class_size(c2))) * ClassFunction::indicator(group, c2);
  return t;
}

/// A cyclic decomposition G = <g_1> x ... x <g_r> of an abelian group.
struct CyclicDecomposition {
  std::vector<std::size_t> generators;  // element indices
  std::vector<std::size_t> orders;
  /// coordinates[e][i] = exponent of generators[i] in element e.
  std::vector<std::vector<std::size_t>> coordinates;
};

/// Splits off a maximal-order element (modulo the span found so far) at each step.
inline CyclicDecomposition cyclic_decomposition(const PermutationGroup& G) {
  if (!G.is_abelian()) throw error("cyclic_decomposition: group is not abelian");
  const std::size_t n = G.order();
  CyclicDecomposition d;
  std::vector<bool> in_span(n, false);
  std::vector<std::vector<std::size_t>> coords(n);
  std::vector<std::size_t> span{0};
  in_span[0] = true;

  auto quotient_order = [&](std::size_t x) {
    std::size_t k = 1, y = x;
    while (!in_span[y]) {
      y = G.multiply(y, x);
      ++k;
    }
    return k;
  };

  while (span.size() < n) {
    std::size_t best = 0, best_order = 0;
    for (std::size_t x = 0; x < n; ++x) {
      if (in_span[x]) continue;
      std::size_t q = quotient_order(x);
      if (q > best_order) {
        best = x;
        best_order = q;
      }
    }
    // Lift to an element of the same coset whose order equals its quotient order.
    std::size_t lift = n;
    for (std::size_t s : span) {
      std::size_t y = G.multiply(best, s);
      if (G.element(y).order() == best_order) {
        lift = y;
        break;
      }
    }
    if (lift == n) throw error("cyclic_decomposition: no complement lift found");

    const std::size_t r = d.generators.size();
    d.generators.push_back(lift);
    d.orders.push_back(best_order);
    std::vector<std::size_t> grown;
    for (std::size_t s : span) {
      std::size_t y = s;
      for (std::size_t j = 0; j < best_order; ++j) {
        if (j > 0) {
          in_span[y] = true;
          coords[y] = coords[s];
        }
        coords[y].resize(r + 1, 0);
        if (j > 0) coords[y][r] = j;
        grown.push_back(y);
        y = G.multiply(y, lift);
      }
    }
    span = std::move(grown);
  }
  for (auto& c : coords) c.resize(d.generators.size(), 0);
  d.coordinates = std::move(coords);
  return d;
}

/// All irreducible characters of an abelian group of exponent dividing 4,
/// trivial character first. Values are 4th roots of unity.
inline std::vector<ClassFunction> abelian_characters(const GroupPtr& group) {
  if (!group->is_abelian()) throw error("abelian_characters: group is not abelian");
  if (4 % group->exponent() != 0) throw error("abelian_characters: exponent does not divide 4");
  const auto dec = cyclic_decomposition(*group);
  const GaussianRational roots[4] = {1, GaussianRational::i(), -1, -GaussianRational::i()};

  std::vector<ClassFunction> chars;
  std::vector<std::size_t> k(dec.orders.size(), 0);
  while (true) {
    std::vector<GaussianRational> vals(group->class_count());
    for (std::size_t e = 0; e < group->order(); ++e) {
      std::size_t quarter_turns = 0;
      for (std::size_t i = 0; i < k.size(); ++i) quarter_turns += (4 / dec.orders[i]) * k[i] * dec.coordinates[e][i];
      vals[group->class_of(e)] = roots[quarter_turns % 4];
    }
    chars.emplace_back(group, std::move(vals));
    std::size_t i = k.size();
    while (i > 0 && ++k[i - 1] == dec.orders[i - 1]) k[--i] = 0;
    if (i == 0) break;
  }
  return chars;
}

/// <chi, t> and its conjugate for every character; the pairing that enters a
/// sum over Irr(G) depends on the convention of the caller, so both are kept.
struct CharacterPairing {
  GaussianRational pairing;
  GaussianRational conjugate;
};

inline std::vector<CharacterPairing> character_pairings(const std::vector<ClassFunction>& chars,
                                                        const ClassFunction& t) {
  std::vector<CharacterPairing> out;
  for (const auto& chi : chars) {
    auto z = inner_product(chi, t);
    out.push_back({z, z.conj()});
  }
  return out;
}

}  // namespace chebias
