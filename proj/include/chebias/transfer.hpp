#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "chebias/class_function.hpp"
#include "chebias/embedding.hpp"
#include "chebias/error.hpp"

namespace chebias {

/// One group of primes of K above p sharing a Frobenius class and residue degree.
struct SplitEntry {
  std::size_t class_id;  // conjugacy class of the subgroup G
  std::size_t residue_degree;
  std::size_t multiplicity;
  friend bool operator==(const SplitEntry&, const SplitEntry&) = default;
  friend auto operator<=>(const SplitEntry&, const SplitEntry&) = default;
};

/// How a rational prime with Frobenius sigma in G+ decomposes in K = L^G.
struct SplittingPattern {
  std::vector<SplitEntry> entries;  // sorted by (class_id, residue_degree)

  std::size_t degree_sum() const {
    std::size_t s = 0;
    for (const auto& e : entries) s += e.residue_degree * e.multiplicity;
    return s;
  }
  friend bool operator==(const SplittingPattern&, const SplittingPattern&) = default;
};

/// Orbits of <sigma> acting by right multiplication on the right cosets Gt.
/// An orbit of length f through Gt is one prime of residue degree f whose
/// Frobenius class is that of t sigma^f t^-1 in G.
inline SplittingPattern split_prime(std::size_t sigma_index, const SubgroupEmbedding& emb) {
  const auto& A = emb.ambient();
  if (sigma_index >= A.order()) throw error("split_prime: sigma not in the ambient group");
  const auto& reps = emb.right_coset_reps();
  std::vector<bool> seen(reps.size(), false);
  std::vector<SplitEntry> raw;
  for (std::size_t c = 0; c < reps.size(); ++c) {
    if (seen[c]) continue;
    std::size_t f = 0;
    std::size_t x = reps[c];
    std::size_t coset = c;
    do {
      seen[coset] = true;
      x = A.multiply(x, sigma_index);
      coset = emb.right_coset_of(x);
      ++f;
    } while (coset != c);
    const Permutation& t = A.element(reps[c]);
    Permutation frob = t * A.element(sigma_index).pow(static_cast<long long>(f)) * t.inverse();
    auto s = emb.to_sub(A.index_checked(frob));
    if (!s) throw error("split_prime: orbit Frobenius left the subgroup");
    raw.push_back({emb.sub().class_of(*s), f, 1});
  }
  std::sort(raw.begin(), raw.end());
  SplittingPattern out;
  for (const auto& e : raw) {
    if (!out.entries.empty() && out.entries.back().class_id == e.class_id &&
        out.entries.back().residue_degree == e.residue_degree)
      ++out.entries.back().multiplicity;
    else
      out.entries.push_back(e);
  }
  return out;
}

inline SplittingPattern split_prime(const Permutation& sigma, const SubgroupEmbedding& emb) {
  auto i = emb.ambient().index_of(sigma);
  if (!i) throw error("split_prime: sigma not in the ambient group");
  return split_prime(*i, emb);
}

/// Splitting patterns for every conjugacy class of G+, computed once.
class PatternTable {
 public:
  explicit PatternTable(const SubgroupEmbedding& emb) {
    const auto& A = emb.ambient();
    patterns_.reserve(A.class_count());
    for (std::size_t c = 0; c < A.class_count(); ++c) {
      patterns_.push_back(split_prime(A.class_members(c).front(), emb));
      if (patterns_.back().degree_sum() != emb.index())
        throw error("PatternTable: residue degrees do not sum to the index");
    }
  }
  const SplittingPattern& for_class(std::size_t ambient_class) const { return patterns_.at(ambient_class); }
  std::size_t size() const noexcept { return patterns_.size(); }

 private:
  std::vector<SplittingPattern> patterns_;
};

/// Exact per-prime, per-power transfer identity:
///   sum over entries with f | m of f * mult * t(c^(m/f)) == t+(sigma^m).
inline bool transfer_identity_check(const SubgroupEmbedding& emb, const ClassFunction& t, std::size_t sigma_index,
                                    long long m, const ClassFunction& induced) {
  if (m < 1) throw error("transfer_identity_check: m must be positive");
  const auto& A = emb.ambient();
  const auto& G = emb.sub();
  auto pattern = split_prime(sigma_index, emb);
  GaussianRational lhs;
  for (const auto& e : pattern.entries) {
    const auto f = static_cast<long long>(e.residue_degree);
    if (m % f != 0) continue;
    const Permutation frob_power = G.class_representative(e.class_id).pow(m / f);
    lhs += GaussianRational(f * static_cast<long long>(e.multiplicity)) * t(frob_power);
  }
  const GaussianRational rhs = induced(A.element(sigma_index).pow(m));
  return lhs == rhs;
}

inline bool transfer_identity_check(const SubgroupEmbedding& emb, const ClassFunction& t, const Permutation& sigma,
                                    long long m) {
  auto i = emb.ambient().index_of(sigma);
  if (!i) throw error("transfer_identity_check: sigma not in the ambient group");
  return transfer_identity_check(emb, t, *i, m, induce(t, emb));
}

}  // namespace chebias
