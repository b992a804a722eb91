#pragma once

#include <memory>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "chebias/class_function.hpp"
#include "chebias/embedding.hpp"
#include "chebias/perm_group.hpp"

namespace chebias::testing {

inline Permutation random_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<Permutation::point> v(n);
  std::iota(v.begin(), v.end(), 0u);
  std::shuffle(v.begin(), v.end(), rng);
  return Permutation(std::move(v));
}

/// A random ambient group of order in [2, max_order] on at most 6 points, with
/// a subgroup generated by up to two random elements of it.
inline std::shared_ptr<const SubgroupEmbedding> random_embedding(std::mt19937_64& rng, std::size_t max_order) {
  while (true) {
    const std::size_t n = 3 + rng() % 4;
    std::vector<Permutation> gens;
    const std::size_t k = 1 + rng() % 2;
    for (std::size_t i = 0; i < k; ++i) gens.push_back(random_permutation(n, rng));
    GroupPtr A;
    try {
      A = make_group(n, gens, max_order);
    } catch (const error&) {
      continue;
    }
    if (A->order() < 2) continue;
    std::vector<Permutation> sub_gens;
    const std::size_t ks = rng() % 3;
    for (std::size_t i = 0; i < ks; ++i) sub_gens.push_back(A->element(rng() % A->order()));
    auto G = make_group(n, sub_gens);
    return std::make_shared<const SubgroupEmbedding>(A, G);
  }
}

inline ClassFunction random_integer_function(const GroupPtr& G, std::mt19937_64& rng, int span = 9) {
  std::vector<GaussianRational> vals;
  for (std::size_t c = 0; c < G->class_count(); ++c)
    vals.emplace_back(Rational(static_cast<long long>(rng() % (2 * span + 1)) - span),
                      Rational(static_cast<long long>(rng() % (2 * span + 1)) - span));
  return {G, std::move(vals)};
}

/// Induction by brute force over the whole ambient group:
/// t+(g) = (1/|G|) sum_{a in G+, a^-1 g a in G} t(a^-1 g a).
inline ClassFunction induce_brute(const ClassFunction& t, const SubgroupEmbedding& emb) {
  const auto& A = emb.ambient();
  const auto& G = emb.sub();
  std::vector<GaussianRational> vals;
  for (std::size_t c = 0; c < A.class_count(); ++c) {
    const auto& g = A.class_representative(c);
    GaussianRational acc;
    for (const auto& a : A.elements()) {
      const auto h = a.inverse() * g * a;
      if (G.contains(h)) acc += t(h);
    }
    vals.push_back(acc / GaussianRational(static_cast<long long>(G.order())));
  }
  return {emb.ambient_ptr(), std::move(vals)};
}

}  // namespace chebias::testing
