#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>
#include <openssl/evp.h>

#include "chebias/embedding.hpp"
#include "chebias/error.hpp"
#include "chebias/perm_group.hpp"
#include "chebias/polynomial.hpp"

namespace chebias {

/// A Galois number field L = Q[x]/(f) of degree n = |G+|, with its n
/// automorphisms x -> g_i(x) and their images in a permutation
/// representation of G+.
///
/// Composition law: sigma_i o sigma_j (sigma_j first) corresponds to the
/// polynomial g_j(g_i(x)) mod f, and maps to perm_map[i] * perm_map[j].
struct NumberFieldData {
  std::string name;
  IntPoly f;
  std::vector<RatPoly> automorphisms;
  std::vector<Permutation> perm_map;
  std::vector<std::uint64_t> excluded_primes;  // sorted
  std::size_t group_degree = 0;
  std::vector<Permutation> group_generators;
  std::vector<Permutation> subgroup_generators;
  Permutation class1_rep, class2_rep;
  std::string poly_checksum;

  std::size_t degree() const { return static_cast<std::size_t>(f.degree()); }
  bool is_excluded(std::uint64_t p) const {
    return std::binary_search(excluded_primes.begin(), excluded_primes.end(), p);
  }

  GroupPtr ambient_group() const { return make_group(group_degree, group_generators); }
  std::shared_ptr<const SubgroupEmbedding> embedding(const GroupPtr& ambient) const {
    return std::make_shared<const SubgroupEmbedding>(ambient, make_group(group_degree, subgroup_generators));
  }
};

/// Lowercase hex SHA-256 of the comma-joined decimal coefficient strings.
inline std::string poly_checksum(const IntPoly& f) {
  std::string text;
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    if (i) text += ',';
    text += f.coeffs[i].str();
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw error("poly_checksum: digest failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return os.str();
}

namespace detail {

inline BigInt parse_bigint(const std::string& s) {
  try {
    return BigInt(s);
  } catch (const std::exception&) {
    throw error("field data: bad integer \"" + s + "\"");
  }
}

inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_bigint(s));
  BigInt den = parse_bigint(s.substr(slash + 1));
  if (den == 0) throw error("field data: zero denominator");
  return Rational(parse_bigint(s.substr(0, slash)), den);
}

inline std::string rational_string(const Rational& q) {
  return BigInt(boost::multiprecision::numerator(q)).str() + "/" + BigInt(boost::multiprecision::denominator(q)).str();
}

}  // namespace detail

inline NumberFieldData field_data_from_json(const nlohmann::json& j) {
  NumberFieldData fd;
  try {
    fd.name = j.at("name").get<std::string>();
    std::vector<BigInt> coeffs;
    for (const auto& c : j.at("poly")) coeffs.push_back(detail::parse_bigint(c.get<std::string>()));
    fd.f = IntPoly(std::move(coeffs));
    const auto degree = j.at("degree").get<std::size_t>();
    if (fd.f.degree() < 1 || static_cast<std::size_t>(fd.f.degree()) != degree)
      throw error("field data: poly degree does not match \"degree\"");
    if (!fd.f.monic()) throw error("field data: defining polynomial must be monic");

    const auto& grp = j.at("group");
    fd.group_degree = grp.at("degree").get<std::size_t>();
    for (const auto& g : grp.at("generators"))
      fd.group_generators.push_back(Permutation::from_cycles(g.get<std::string>(), fd.group_degree));
    for (const auto& g : j.at("subgroup_generators"))
      fd.subgroup_generators.push_back(Permutation::from_cycles(g.get<std::string>(), fd.group_degree));
    fd.class1_rep = Permutation::from_cycles(j.at("class1_rep").get<std::string>(), fd.group_degree);
    fd.class2_rep = Permutation::from_cycles(j.at("class2_rep").get<std::string>(), fd.group_degree);

    for (const auto& a : j.at("automorphisms")) {
      std::vector<Rational> c;
      for (const auto& q : a.at("coeffs")) c.push_back(detail::parse_rational(q.get<std::string>()));
      if (c.size() > degree) throw error("field data: automorphism polynomial degree too large");
      c.resize(degree, Rational(0));
      fd.automorphisms.emplace_back(std::move(c));
      fd.perm_map.push_back(Permutation::from_cycles(a.at("perm").get<std::string>(), fd.group_degree));
    }
    for (const auto& p : j.at("excluded_primes")) {
      if (p.is_string())
        fd.excluded_primes.push_back(std::stoull(p.get<std::string>()));
      else
        fd.excluded_primes.push_back(p.get<std::uint64_t>());
    }
    std::sort(fd.excluded_primes.begin(), fd.excluded_primes.end());
    fd.excluded_primes.erase(std::unique(fd.excluded_primes.begin(), fd.excluded_primes.end()), fd.excluded_primes.end());
    fd.poly_checksum = j.at("poly_checksum").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw error(std::string("field data: ") + e.what());
  }
  if (fd.poly_checksum != poly_checksum(fd.f))
    throw corrupt_data("field data: poly_checksum does not match the defining polynomial");
  return fd;
}

inline nlohmann::json field_data_to_json(const NumberFieldData& fd) {
  nlohmann::json j;
  j["name"] = fd.name;
  j["degree"] = fd.degree();
  auto poly = nlohmann::json::array();
  for (const auto& c : fd.f.coeffs) poly.push_back(c.str());
  j["poly"] = poly;
  auto auts = nlohmann::json::array();
  for (std::size_t i = 0; i < fd.automorphisms.size(); ++i) {
    auto coeffs = nlohmann::json::array();
    for (const auto& q : fd.automorphisms[i].coeffs) coeffs.push_back(detail::rational_string(q));
    auts.push_back({{"coeffs", coeffs}, {"perm", fd.perm_map.at(i).to_cycles()}});
  }
  j["automorphisms"] = auts;
  auto gens = nlohmann::json::array();
  for (const auto& g : fd.group_generators) gens.push_back(g.to_cycles());
  j["group"] = {{"degree", fd.group_degree}, {"generators", gens}};
  auto sub = nlohmann::json::array();
  for (const auto& g : fd.subgroup_generators) sub.push_back(g.to_cycles());
  j["subgroup_generators"] = sub;
  j["class1_rep"] = fd.class1_rep.to_cycles();
  j["class2_rep"] = fd.class2_rep.to_cycles();
  j["excluded_primes"] = fd.excluded_primes;
  j["poly_checksum"] = fd.poly_checksum;
  return j;
}

inline NumberFieldData load_field_data(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open field data file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw error("field data " + path.string() + ": " + e.what());
  }
  return field_data_from_json(j);
}

inline void save_field_data(const NumberFieldData& fd, const std::filesystem::path& path) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp);
    if (!out) throw error("cannot write " + tmp.string());
    out << field_data_to_json(fd).dump(1) << '\n';
    if (!out) throw error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline std::vector<std::uint64_t> prime_factors_small(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(n);
  return out;
}

/// Q(zeta_m): f = Phi_m, automorphisms x -> x^a for a in (Z/m)^*, acting on
/// (Z/m)^* by multiplication. G = G+, C1 = {1}, C2 = {-1}.
inline NumberFieldData cyclotomic_field_data(std::size_t m) {
  if (m < 3 || m > 10'000) throw error("cyclotomic_field_data: m must lie in [3, 10000]");
  NumberFieldData fd;
  fd.name = "cyclotomic-" + std::to_string(m);
  fd.f = cyclotomic_polynomial(m);
  const std::size_t n = fd.degree();

  std::vector<std::size_t> units;
  std::vector<std::size_t> position(m, 0);
  for (std::size_t a = 1; a < m; ++a)
    if (std::gcd(a, m) == 1) {
      position[a] = units.size();
      units.push_back(a);
    }
  if (units.size() != n) throw error("cyclotomic_field_data: degree mismatch");
  fd.group_degree = n;

  auto unit_perm = [&](std::size_t a) {
    std::vector<Permutation::point> img(n);
    for (std::size_t k = 0; k < n; ++k) img[k] = static_cast<Permutation::point>(position[(a * units[k]) % m]);
    return Permutation(std::move(img));
  };

  // x^k mod Phi_m for k = 0 .. m-1, keeping the unit exponents.
  std::vector<BigInt> cur(n, 0);
  cur[0] = 1;
  for (std::size_t k = 0; k < m; ++k) {
    if (std::gcd(k, m) == 1) {
      std::vector<Rational> c;
      for (const auto& x : cur) c.emplace_back(x);
      fd.automorphisms.emplace_back(std::move(c));
      fd.perm_map.push_back(unit_perm(k));
    }
    const BigInt top = cur[n - 1];
    for (std::size_t j = n - 1; j > 0; --j) cur[j] = cur[j - 1] - top * fd.f.coeffs[j];
    cur[0] = -top * fd.f.coeffs[0];
  }
  fd.group_generators = fd.perm_map;
  fd.subgroup_generators = fd.perm_map;
  fd.class1_rep = Permutation(n);
  fd.class2_rep = unit_perm(m - 1);
  fd.excluded_primes = prime_factors_small(m);
  if (!std::binary_search(fd.excluded_primes.begin(), fd.excluded_primes.end(), std::uint64_t{2}))
    fd.excluded_primes.insert(fd.excluded_primes.begin(), 2);
  fd.poly_checksum = poly_checksum(fd.f);
  return fd;
}

/// Outcome of validate_field_data: `ok` or the first violated invariant.
struct ValidationReport {
  bool ok = true;
  std::string failure;
  std::vector<std::uint64_t> sample_primes;
  std::size_t checks = 0;

  void fail(std::string why) {
    if (ok) {
      ok = false;
      failure = std::move(why);
    }
  }
};

namespace detail {

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % d == 0) return n == d;
  }
  // Deterministic Miller-Rabin for 64-bit inputs.
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  auto mulmod = [n](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
  };
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = 1, b = a % n, e = d;
    while (e) {
      if (e & 1) x = mulmod(x, b);
      b = mulmod(b, b);
      e >>= 1;
    }
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace detail

/// Checks every NumberFieldData invariant. Exact checks (checksum,
/// discriminant support, group structure) run once; the automorphism and
/// composition checks run modulo `sample_primes` random primes in [10^6, 10^7].
inline ValidationReport validate_field_data(const NumberFieldData& fd, std::size_t sample_primes,
                                            std::uint64_t seed = 20240601) {
  ValidationReport rep;
  const std::size_t n = fd.degree();

  if (fd.poly_checksum != poly_checksum(fd.f)) rep.fail("poly_checksum mismatch");
  if (fd.automorphisms.size() != n || fd.perm_map.size() != n) {
    rep.fail("expected " + std::to_string(n) + " automorphisms");
    return rep;
  }

  // Group structure: perm_map is a bijection onto G+ and |G+| = n.
  GroupPtr ambient;
  try {
    ambient = fd.ambient_group();
  } catch (const error& e) {
    rep.fail(std::string("group: ") + e.what());
    return rep;
  }
  if (ambient->order() != n) rep.fail("|G+| = " + std::to_string(ambient->order()) + " differs from the field degree");
  {
    std::set<Permutation> distinct(fd.perm_map.begin(), fd.perm_map.end());
    if (distinct.size() != n) rep.fail("perm_map is not injective");
    for (const auto& p : fd.perm_map)
      if (!ambient->contains(p)) rep.fail("perm " + p.to_cycles() + " is not in G+");
  }
  try {
    auto emb = fd.embedding(ambient);
    if (!emb->sub().contains(fd.class1_rep) || !emb->sub().contains(fd.class2_rep))
      rep.fail("class representatives are not in the subgroup");
  } catch (const error& e) {
    rep.fail(std::string("subgroup: ") + e.what());
  }
  ++rep.checks;

  // Every prime where f is not squarefree, or that divides a denominator, is excluded.
  {
    BigInt disc = discriminant(fd.f);
    if (disc == 0) rep.fail("defining polynomial is not squarefree");
    if (disc < 0) disc = -disc;
    for (std::uint64_t p : fd.excluded_primes)
      while (disc != 0 && disc % p == 0) disc /= p;
    if (disc != 1) rep.fail("discriminant has prime factors outside excluded_primes");
    for (const auto& g : fd.automorphisms) {
      BigInt d = g.denominator();
      for (std::uint64_t p : fd.excluded_primes)
        while (d % p == 0) d /= p;
      if (d != 1) rep.fail("an automorphism denominator has prime factors outside excluded_primes");
    }
    ++rep.checks;
  }
  if (!rep.ok) return rep;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(1'000'000, 10'000'000);
  while (rep.sample_primes.size() < sample_primes) {
    std::uint64_t q = dist(rng) | 1;
    while (!detail::is_prime_u64(q) || fd.is_excluded(q)) q += 2;
    rep.sample_primes.push_back(q);

    const ModArith F(q);
    ModPolyRing R(fd.f.low_residues(F), F);
    std::vector<ModPolyRing::Elem> g;
    for (const auto& a : fd.automorphisms) g.push_back(a.residues(F));
    std::map<ModPolyRing::Elem, std::size_t> by_residue;
    for (std::size_t i = 0; i < n; ++i) by_residue.emplace(g[i], i);
    if (by_residue.size() != n) {
      rep.fail("automorphisms coincide modulo " + std::to_string(q));
      return rep;
    }
    std::map<Permutation, std::size_t> by_perm;
    for (std::size_t i = 0; i < n; ++i) by_perm.emplace(fd.perm_map[i], i);

    // Composition closure: g_j(g_i(x)) == g_k exactly when perm_k = perm_i * perm_j.
    for (std::size_t i = 0; i < n && rep.ok; ++i)
      for (std::size_t j = 0; j < n && rep.ok; ++j) {
        auto comp = R.compose(g[j], g[i]);
        auto it = by_residue.find(comp);
        const std::size_t expect = by_perm.at(fd.perm_map[i] * fd.perm_map[j]);
        if (it == by_residue.end())
          rep.fail("composition closure fails: g_" + std::to_string(j) + "(g_" + std::to_string(i) +
                   ") is not an automorphism modulo " + std::to_string(q));
        else if (it->second != expect)
          rep.fail("perm_map is not a homomorphism at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
        ++rep.checks;
      }
    // Each g_i maps the root to a root.
    const auto fres = fd.f.residues(F);
    for (std::size_t i = 0; i < n && rep.ok; ++i) {
      auto v = R.compose(fres, g[i]);
      if (std::any_of(v.begin(), v.end(), [](std::uint64_t c) { return c != 0; }))
        rep.fail("f(g_" + std::to_string(i) + "(x)) is not 0 modulo (f, " + std::to_string(q) + ")");
      ++rep.checks;
    }
    if (!rep.ok) return rep;
  }
  return rep;
}

}  // namespace chebias
