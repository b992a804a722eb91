#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "chebias/error.hpp"
#include "chebias/permutation.hpp"

namespace chebias {

/// A finite permutation group stored exhaustively.
///
/// Elements are kept in lexicographic order of their image arrays, so element
/// index 0 is always the identity. Conjugacy classes are numbered by their
/// smallest member, which is also the class representative.
class PermutationGroup {
 public:
  static constexpr std::size_t default_cap = 1'000'000;

  /// Closure of `gens` under composition; throws if it exceeds `cap` elements.
  static PermutationGroup generate(std::size_t degree, std::vector<Permutation> gens,
                                   std::size_t cap = default_cap) {
    for (const auto& g : gens)
      if (g.degree() != degree) throw error("generate_group: generator degree mismatch");
    PermutationGroup G;
    G.degree_ = degree;
    G.generators_ = std::move(gens);

    std::unordered_map<Permutation, std::size_t> seen;
    std::vector<Permutation> elems{Permutation(degree)};
    seen.emplace(elems.front(), 0);
    for (std::size_t head = 0; head < elems.size(); ++head) {
      for (const auto& s : G.generators_) {
        Permutation next = elems[head] * s;
        if (seen.contains(next)) continue;
        if (elems.size() >= cap)
          throw error("generate_group: closure exceeds cap of " + std::to_string(cap) + " elements");
        seen.emplace(next, elems.size());
        elems.push_back(std::move(next));
      }
    }
    std::sort(elems.begin(), elems.end());
    G.elements_ = std::move(elems);
    G.index_.reserve(G.elements_.size());
    for (std::size_t i = 0; i < G.elements_.size(); ++i) G.index_.emplace(G.elements_[i], i);
    G.build_classes();
    return G;
  }

  /// Parses 1-based cycle strings for the generators.
  static PermutationGroup from_cycle_strings(std::size_t degree, const std::vector<std::string>& gens,
                                             std::size_t cap = default_cap) {
    std::vector<Permutation> perms;
    for (const auto& s : gens) perms.push_back(Permutation::from_cycles(s, degree));
    return generate(degree, std::move(perms), cap);
  }

  std::size_t degree() const noexcept { return degree_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }
  const std::vector<Permutation>& elements() const noexcept { return elements_; }
  const Permutation& element(std::size_t i) const { return elements_.at(i); }

  std::optional<std::size_t> index_of(const Permutation& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const Permutation& p) const { return index_.contains(p); }

  std::size_t index_checked(const Permutation& p) const {
    auto i = index_of(p);
    if (!i) throw error("element " + p.to_cycles() + " is not in the group");
    return *i;
  }

  /// Index of e_i * e_j.
  std::size_t multiply(std::size_t i, std::size_t j) const { return index_.at(elements_[i] * elements_[j]); }
  std::size_t power(std::size_t i, long long m) const { return index_.at(elements_[i].pow(m)); }

  // Conjugacy classes.
  std::size_t class_count() const noexcept { return class_members_.size(); }
  std::size_t class_of(std::size_t element_index) const { return class_of_.at(element_index); }
  std::size_t class_of(const Permutation& p) const { return class_of_[index_checked(p)]; }
  std::size_t class_size(std::size_t c) const { return class_members_.at(c).size(); }
  std::span<const std::size_t> class_members(std::size_t c) const { return class_members_.at(c); }
  const Permutation& class_representative(std::size_t c) const { return elements_[class_members_.at(c).front()]; }

  bool is_abelian() const {
    for (std::size_t a = 0; a < generators_.size(); ++a)
      for (std::size_t b = a + 1; b < generators_.size(); ++b)
        if (generators_[a] * generators_[b] != generators_[b] * generators_[a]) return false;
    return true;
  }

  std::size_t exponent() const {
    std::size_t e = 1;
    for (const auto& g : elements_) e = std::lcm(e, g.order());
    return e;
  }

  /// True if every element of `sub` lies in this group.
  bool contains_group(const PermutationGroup& sub) const {
    if (sub.degree() != degree_) return false;
    return std::all_of(sub.elements().begin(), sub.elements().end(),
                       [&](const Permutation& p) { return contains(p); });
  }

  friend bool operator==(const PermutationGroup& a, const PermutationGroup& b) {
    return a.degree_ == b.degree_ && a.elements_ == b.elements_;
  }

 private:
  void build_classes() {
    class_of_.assign(elements_.size(), npos);
    std::vector<Permutation> inverses;
    for (const auto& s : generators_) inverses.push_back(s.inverse());
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      if (class_of_[i] != npos) continue;
      const std::size_t c = class_members_.size();
      std::vector<std::size_t> members{i};
      class_of_[i] = c;
      for (std::size_t head = 0; head < members.size(); ++head) {
        const Permutation& g = elements_[members[head]];
        for (std::size_t k = 0; k < generators_.size(); ++k) {
          std::size_t j = index_.at(generators_[k] * g * inverses[k]);
          if (class_of_[j] == npos) {
            class_of_[j] = c;
            members.push_back(j);
          }
        }
      }
      std::sort(members.begin(), members.end());
      class_members_.push_back(std::move(members));
    }
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, std::size_t> index_;
  std::vector<std::size_t> class_of_;
  std::vector<std::vector<std::size_t>> class_members_;
};

using GroupPtr = std::shared_ptr<const PermutationGroup>;

inline GroupPtr make_group(std::size_t degree, std::vector<Permutation> gens,
                           std::size_t cap = PermutationGroup::default_cap) {
  return std::make_shared<const PermutationGroup>(PermutationGroup::generate(degree, std::move(gens), cap));
}

inline GroupPtr make_group(std::size_t degree, const std::vector<std::string>& gens,
                           std::size_t cap = PermutationGroup::default_cap) {
  return std::make_shared<const PermutationGroup>(PermutationGroup::from_cycle_strings(degree, gens, cap));
}

/// Symmetric group on n points.
inline GroupPtr symmetric_group(std::size_t n) {
  std::vector<Permutation> gens;
  if (n >= 2) {
    std::vector<Permutation::point> t(n), c(n);
    std::iota(t.begin(), t.end(), 0u);
    std::swap(t[0], t[1]);
    for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<Permutation::point>((i + 1) % n);
    gens = {Permutation(t), Permutation(c)};
  }
  return make_group(n, std::move(gens));
}

}  // namespace chebias
