#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "chebias/class_function.hpp"
#include "chebias/embedding.hpp"
#include "chebias/error.hpp"
#include "chebias/perm_group.hpp"

namespace chebias {

/// Outcome of testing the fusion/square-root hypotheses for (G < G+, C1, C2).
///
/// Valid means C1 and C2 fuse in G+ while r_G(C1) < r_G(C2); the difference
/// |C2| pi(x; C1) - |C1| pi(x; C2) is then eventually positive.
struct BiasCertificate {
  std::shared_ptr<const SubgroupEmbedding> embedding;
  std::size_t c1 = 0, c2 = 0;  // classes of G
  Permutation c1_rep, c2_rep;
  long long r1 = 0, r2 = 0;
  bool fused = false;
  /// Limit of (pi(x;C1) - pi(x;C2)) / R(x); only set when |C1| = |C2|.
  std::optional<Rational> predicted_normalized_limit;
  /// Limit of D(x) = (pi(x;C1)/|C1| - pi(x;C2)/|C2|) / R(x), which is (r2 - r1)/|G|.
  Rational predicted_d_limit;

  bool valid() const { return fused && r1 < r2; }
  long long r_gap() const { return r2 - r1; }

  std::string to_string() const {
    const auto& e = *embedding;
    std::ostringstream os;
    os << "ambient_order=" << e.ambient().order() << " sub_order=" << e.sub().order() << " index=" << e.index()
       << " c1=" << c1_rep.to_cycles() << " c2=" << c2_rep.to_cycles() << " |C1|=" << e.sub().class_size(c1)
       << " |C2|=" << e.sub().class_size(c2) << " r1=" << r1 << " r2=" << r2 << " fused=" << (fused ? "yes" : "no")
       << " valid=" << (valid() ? "yes" : "no") << " d_limit=" << predicted_d_limit.str();
    if (predicted_normalized_limit) os << " normalized_limit=" << predicted_normalized_limit->str();
    return os.str();
  }
};

inline BiasCertificate check_theorem(std::shared_ptr<const SubgroupEmbedding> emb, std::size_t c1, std::size_t c2) {
  const auto& G = emb->sub();
  if (c1 >= G.class_count() || c2 >= G.class_count()) throw error("check_theorem: class not in the subgroup");
  const auto r = square_root_count(emb->sub_ptr());
  BiasCertificate cert;
  cert.c1 = c1;
  cert.c2 = c2;
  cert.c1_rep = G.class_representative(c1);
  cert.c2_rep = G.class_representative(c2);
  cert.r1 = static_cast<long long>(r.at_class(c1).re());
  cert.r2 = static_cast<long long>(r.at_class(c2).re());
  cert.fused = class_plus(c1, *emb) == class_plus(c2, *emb);
  const Rational gap(cert.r2 - cert.r1);
  cert.predicted_d_limit = gap / static_cast<long long>(G.order());
  if (G.class_size(c1) == G.class_size(c2))
    cert.predicted_normalized_limit = cert.predicted_d_limit * static_cast<long long>(G.class_size(c1));
  cert.embedding = std::move(emb);
  return cert;
}

inline BiasCertificate check_theorem(std::shared_ptr<const SubgroupEmbedding> emb, const Permutation& g1,
                                     const Permutation& g2) {
  const auto& G = emb->sub();
  if (!G.contains(g1) || !G.contains(g2)) throw error("check_theorem: class representative not in the subgroup");
  const std::size_t c1 = G.class_of(g1), c2 = G.class_of(g2);
  return check_theorem(std::move(emb), c1, c2);
}

/// Result of the H, K subgroup criterion together with the brute-force counts
/// behind it.
struct LemmaReport {
  bool holds = false;
  std::string reason;                 // first failed condition, empty on success
  bool h_nonsquare_in_h = false;
  bool k_square_in_k = false;
  bool conjugate_in_ambient = false;
  std::size_t product_order = 0;      // |HK|
  std::size_t roots_of_k_in_g = 0;    // #{x in G : x^2 = k}
  std::size_t roots_of_k_in_k = 0;    // #{x in K : x^2 = k}
  std::size_t involutions_h = 0;      // #{x in H : x^2 = 1}
  std::size_t roots_of_h_in_g = 0;    // #{x in G : x^2 = h}
  std::size_t roots_of_h_in_h = 0;
  std::size_t involutions_k = 0;
  bool product_formulas = false;      // both factorizations of the counts agree
};

namespace detail {

inline std::size_t count_square_roots(const PermutationGroup& G, const Permutation& target) {
  std::size_t n = 0;
  for (const auto& x : G.elements())
    if (x * x == target) ++n;
  return n;
}

inline bool conjugate_in(const PermutationGroup& G, const Permutation& a, const Permutation& b) {
  return G.contains(a) && G.contains(b) && G.class_of(a) == G.class_of(b);
}

}  // namespace detail

/// Checks: H and K are subgroups of G+ with trivial intersection, H centralizes
/// K, h is not a square in H, k is a square in K, and h ~ k in G+. On success
/// also recounts square roots over G = HK by brute force.
inline LemmaReport check_lemma_criterion(const PermutationGroup& ambient, const PermutationGroup& H,
                                         const PermutationGroup& K, const Permutation& h, const Permutation& k) {
  if (!ambient.contains_group(H) || !ambient.contains_group(K))
    throw error("check_lemma_criterion: H and K must be subgroups of the ambient group");
  for (const auto& x : H.elements())
    if (!x.is_identity() && K.contains(x)) throw error("check_lemma_criterion: H and K intersect nontrivially");
  for (const auto& a : H.generators())
    for (const auto& b : K.generators())
      if (a * b != b * a) throw error("check_lemma_criterion: H does not centralize K");
  if (!H.contains(h) || !K.contains(k)) throw error("check_lemma_criterion: h must lie in H and k in K");

  LemmaReport rep;
  const Permutation e(ambient.degree());
  rep.roots_of_h_in_h = detail::count_square_roots(H, h);
  rep.roots_of_k_in_k = detail::count_square_roots(K, k);
  rep.involutions_h = detail::count_square_roots(H, e);
  rep.involutions_k = detail::count_square_roots(K, e);
  rep.h_nonsquare_in_h = rep.roots_of_h_in_h == 0;
  rep.k_square_in_k = rep.roots_of_k_in_k > 0;
  rep.conjugate_in_ambient = detail::conjugate_in(ambient, h, k);

  std::vector<Permutation> gens = H.generators();
  gens.insert(gens.end(), K.generators().begin(), K.generators().end());
  const auto G = PermutationGroup::generate(ambient.degree(), gens);
  rep.product_order = G.order();
  rep.roots_of_k_in_g = detail::count_square_roots(G, k);
  rep.roots_of_h_in_g = detail::count_square_roots(G, h);
  rep.product_formulas = rep.product_order == H.order() * K.order() &&
                         rep.roots_of_k_in_g == rep.roots_of_k_in_k * rep.involutions_h &&
                         rep.roots_of_h_in_g == rep.roots_of_h_in_h * rep.involutions_k;

  if (!rep.h_nonsquare_in_h)
    rep.reason = "h is a square in H";
  else if (!rep.k_square_in_k)
    rep.reason = "k is not a square in K";
  else if (!rep.conjugate_in_ambient)
    rep.reason = "h and k are not conjugate in the ambient group";
  else if (!rep.product_formulas)
    rep.reason = "square-root counts over HK do not factor";
  else if (rep.roots_of_h_in_g != 0 || rep.roots_of_k_in_g == 0)
    rep.reason = "square-root counts over HK contradict the criterion";
  rep.holds = rep.reason.empty();
  return rep;
}

/// The order-32 configuration: G+ = <(12)(34), (5678), (15)(27)(36)(48)>,
/// G = <(12)(34), (5678)>, C1 = {(12)(34)}, C2 = {(57)(68)}.
struct WreathExample {
  std::shared_ptr<const SubgroupEmbedding> embedding;
  std::size_t c1 = 0, c2 = 0;
  Permutation tau, sigma, gamma;
};

inline WreathExample build_wreath_example() {
  WreathExample ex;
  ex.tau = Permutation::from_cycles("(1 2)(3 4)", 8);
  ex.sigma = Permutation::from_cycles("(5 6 7 8)", 8);
  ex.gamma = Permutation::from_cycles("(1 5)(2 7)(3 6)(4 8)", 8);
  auto ambient = make_group(8, {ex.tau, ex.sigma, ex.gamma});
  auto sub = make_group(8, {ex.tau, ex.sigma});
  ex.embedding = std::make_shared<const SubgroupEmbedding>(ambient, sub);
  ex.c1 = sub->class_of(ex.tau);
  ex.c2 = sub->class_of(Permutation::from_cycles("(5 7)(6 8)", 8));
  return ex;
}

/// A search hit: the certificate plus the subgroup-criterion report backing it.
struct SearchInstance {
  std::vector<std::size_t> cycle_type;  // non-trivial cycles of sigma and tau
  Permutation sigma, tau, swap;
  BiasCertificate certificate;
  LemmaReport lemma;
  /// (|G+|, |G|, cycle type of c1, cycle type of c2, r-gap).
  using Signature = std::tuple<std::size_t, std::size_t, std::vector<std::size_t>, std::vector<std::size_t>, long long>;
  Signature signature() const {
    const auto& e = *certificate.embedding;
    return {e.ambient().order(), e.sub().order(), certificate.c1_rep.cycle_type(), certificate.c2_rep.cycle_type(),
            certificate.r_gap()};
  }
};

struct SearchOptions {
  std::size_t max_degree = 12;
  std::size_t max_ambient_order = 10'000;
};

namespace detail {

/// Partitions of `total` into parts >= 2, parts non-increasing.
inline void partitions(std::size_t total, std::size_t max_part, std::vector<std::size_t>& cur,
                       std::vector<std::vector<std::size_t>>& out) {
  if (total == 0) {
    if (!cur.empty()) out.push_back(cur);
    return;
  }
  for (std::size_t p = std::min(total, max_part); p >= 2; --p) {
    cur.push_back(p);
    partitions(total - p, p, cur, out);
    cur.pop_back();
  }
}

/// Product of cycles of the given lengths on consecutive points starting at `offset`.
inline Permutation cycles_at(std::size_t n, const std::vector<std::size_t>& type, std::size_t offset) {
  std::vector<Permutation::point> img(n);
  std::iota(img.begin(), img.end(), 0u);
  std::size_t at = offset;
  for (std::size_t len : type) {
    for (std::size_t i = 0; i < len; ++i) img[at + i] = static_cast<Permutation::point>(at + (i + 1) % len);
    at += len;
  }
  return Permutation(std::move(img));
}

}  // namespace detail

/// Instances of the S_n recipe: sigma, tau of one cycle type with order
/// divisible by 4 and disjoint supports; H = <sigma^2>, K = <tau>,
/// h = sigma^2, k = tau^2, G+ = <sigma, tau, swap>. Pairs are enumerated up to
/// conjugacy in S_n, which leaves one canonical pair per cycle type.
///
/// Every hit carries an independently recomputed certificate and lemma report.
/// These are group-theoretic instances only; realizing G+ as a Galois group is
/// a separate question.
inline std::vector<SearchInstance> search_sn_instances(std::size_t n, std::size_t max_elem_order,
                                                       const SearchOptions& opt = {}) {
  if (n > opt.max_degree) throw error("search: degree " + std::to_string(n) + " exceeds cap " + std::to_string(opt.max_degree));
  std::vector<std::vector<std::size_t>> types;
  std::vector<std::size_t> cur;
  for (std::size_t support = 2; 2 * support <= n; ++support) detail::partitions(support, support, cur, types);

  std::vector<SearchInstance> out;
  std::map<SearchInstance::Signature, bool> seen;
  for (const auto& type : types) {
    std::size_t order = std::accumulate(type.begin(), type.end(), std::size_t{1},
                                        [](std::size_t a, std::size_t b) { return std::lcm(a, b); });
    if (order % 4 != 0 || order > max_elem_order) continue;
    const std::size_t support = std::accumulate(type.begin(), type.end(), std::size_t{0});

    SearchInstance inst;
    inst.cycle_type = type;
    inst.sigma = detail::cycles_at(n, type, 0);
    inst.tau = detail::cycles_at(n, type, support);
    // Pair the i-th point of sigma's cycles with the i-th point of tau's.
    std::vector<Permutation::point> sw(n);
    std::iota(sw.begin(), sw.end(), 0u);
    for (std::size_t i = 0; i < support; ++i) {
      sw[i] = static_cast<Permutation::point>(support + i);
      sw[support + i] = static_cast<Permutation::point>(i);
    }
    inst.swap = Permutation(std::move(sw));

    const Permutation h = inst.sigma * inst.sigma;
    const Permutation k = inst.tau * inst.tau;
    GroupPtr ambient;
    try {
      ambient = make_group(n, {inst.sigma, inst.tau, inst.swap}, opt.max_ambient_order);
    } catch (const error&) {
      continue;  // over the ambient-order cap
    }
    auto H = make_group(n, {h});
    auto K = make_group(n, {inst.tau});
    inst.lemma = check_lemma_criterion(*ambient, *H, *K, h, k);
    if (!inst.lemma.holds) continue;

    auto sub = make_group(n, {h, inst.tau});
    auto emb = std::make_shared<const SubgroupEmbedding>(ambient, sub);
    inst.certificate = check_theorem(emb, h, k);
    if (!inst.certificate.valid()) continue;
    if (seen.emplace(inst.signature(), true).second) out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace chebias
