#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chebias/class_function.hpp"
#include "chebias/counter.hpp"
#include "chebias/criteria.hpp"
#include "chebias/error.hpp"
#include "chebias/field_data.hpp"
#include "chebias/frobenius.hpp"
#include "chebias/perm_group.hpp"
#include "chebias/transfer.hpp"

namespace chebias::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_usage = 2;

/// Raised for bad arguments discovered after CLI11 parsing.
struct usage_error : error {
  using error::error;
};

/// Integer from decimal or scientific notation ("1e7"); must be exact.
inline std::uint64_t parse_count(const std::string& text, const char* what) {
  std::size_t pos = 0;
  long double v = 0;
  try {
    v = std::stold(text, &pos);
  } catch (const std::exception&) {
    throw usage_error(std::string(what) + ": not a number: \"" + text + "\"");
  }
  if (pos != text.size() || !(v >= 0) || v > 1.8e19L || std::floor(v) != v)
    throw usage_error(std::string(what) + ": expected a non-negative integer, got \"" + text + "\"");
  return static_cast<std::uint64_t>(v);
}

/// Resolves a fixture argument: the path itself, then with ".json", then both
/// again under $CHEBIAS_FIXTURE_DIR.
inline std::filesystem::path resolve_fixture(const std::string& arg) {
  namespace fs = std::filesystem;
  std::vector<fs::path> tries{arg, arg + ".json"};
  if (const char* dir = std::getenv("CHEBIAS_FIXTURE_DIR"); dir && *dir) {
    const fs::path base(dir);
    const fs::path name = fs::path(arg).filename();
    for (const auto& p : {base / arg, base / (arg + ".json"), base / name, base / (name.string() + ".json")}) tries.push_back(p);
  }
  for (const auto& p : tries)
    if (fs::is_regular_file(p)) return p;
  throw usage_error("field data not found: " + arg);
}

struct Logger {
  std::ostream& err;
  int verbosity = 1;
  template <class... Args>
  void info(const Args&... args) const {
    if (verbosity < 1) return;
    err << "[chebias]";
    ((err << ' ' << args), ...);
    err << '\n';
  }
};

inline std::string join_u64(const std::vector<std::uint64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

inline nlohmann::json certificate_json(const BiasCertificate& c) {
  const auto& e = *c.embedding;
  nlohmann::json j;
  j["ambient_order"] = e.ambient().order();
  j["sub_order"] = e.sub().order();
  j["index"] = e.index();
  j["c1"] = c.c1_rep.to_cycles();
  j["c2"] = c.c2_rep.to_cycles();
  j["c1_size"] = e.sub().class_size(c.c1);
  j["c2_size"] = e.sub().class_size(c.c2);
  j["r1"] = c.r1;
  j["r2"] = c.r2;
  j["r_gap"] = c.r_gap();
  j["fused"] = c.fused;
  j["valid"] = c.valid();
  j["predicted_d_limit"] = c.predicted_d_limit.str();
  if (c.predicted_normalized_limit) j["predicted_normalized_limit"] = c.predicted_normalized_limit->str();
  return j;
}

inline void print_pattern_table(std::ostream& out, const SubgroupEmbedding& emb) {
  const PatternTable table(emb);
  const auto& A = emb.ambient();
  const auto& G = emb.sub();
  out << "class_plus\tsize\tpattern (class of G: f^mult)\n";
  for (std::size_t d = 0; d < A.class_count(); ++d) {
    out << A.class_representative(d).to_cycles() << '\t' << A.class_size(d) << '\t';
    bool first = true;
    for (const auto& e : table.for_class(d).entries) {
      out << (first ? "" : " ") << G.class_representative(e.class_id).to_cycles() << ':' << e.residue_degree;
      if (e.multiplicity > 1) out << '^' << e.multiplicity;
      first = false;
    }
    out << '\n';
  }
}

/// Group description: {"group": {"degree", "generators"}, "subgroup_generators",
/// "class1_rep", "class2_rep"}; a field-data file qualifies.
inline BiasCertificate certificate_from_group_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw usage_error("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw corrupt_data(path.string() + ": " + e.what());
  }
  try {
    const std::size_t degree = j.at("group").at("degree").get<std::size_t>();
    auto ambient = make_group(degree, j.at("group").at("generators").get<std::vector<std::string>>());
    auto sub = make_group(degree, j.at("subgroup_generators").get<std::vector<std::string>>());
    auto emb = std::make_shared<const SubgroupEmbedding>(ambient, sub);
    return check_theorem(emb, Permutation::from_cycles(j.at("class1_rep").get<std::string>(), degree),
                         Permutation::from_cycles(j.at("class2_rep").get<std::string>(), degree));
  } catch (const nlohmann::json::exception& e) {
    throw corrupt_data(path.string() + ": " + e.what());
  }
}

inline ClassFunction select_t(const std::string& name, const GroupPtr& G, std::size_t c1, std::size_t c2) {
  if (name == "paper-bias") return bias_function(G, c1, c2);
  if (name == "diff") return ClassFunction::indicator(G, c1) - ClassFunction::indicator(G, c2);
  if (name == "one") return ClassFunction::constant(G, GaussianRational(1));
  throw usage_error("unknown --t \"" + name + "\" (expected paper-bias, diff or one)");
}

/// Exact identity checks on the built-in example and a small cyclotomic field.
inline int selftest(std::ostream& out) {
  int failures = 0;
  auto report = [&](const std::string& name, bool ok) {
    out << (ok ? "ok   " : "FAIL ") << name << '\n';
    if (!ok) ++failures;
  };
  const auto ex = build_wreath_example();
  const auto& emb = *ex.embedding;
  const auto t = bias_function(emb.sub_ptr(), ex.c1, ex.c2);
  const auto r = square_root_count(emb.sub_ptr());
  report("classfn: induced bias function vanishes", induce(t, emb).is_zero());
  report("classfn: -<t, r_G> = 4", -inner_product(t, r) == GaussianRational(4));
  {
    GaussianRational sq;
    for (std::size_t i = 0; i < emb.sub().order(); ++i) sq = sq + t(emb.sub().element(i).pow(2));
    report("classfn: mean of t(g^2) equals <t, r_G>",
           sq / GaussianRational(static_cast<long long>(emb.sub().order())) == inner_product(t, r));
  }
  {
    const auto tp = induce(t, emb);
    bool ok = true;
    for (std::size_t s = 0; s < emb.ambient().order(); ++s)
      for (long long m = 1; m <= 32; ++m) ok = ok && transfer_identity_check(emb, t, s, m, tp);
    report("transfer: identity for every sigma and m <= 32", ok);
  }
  {
    bool ok = true;
    const PatternTable table(emb);
    for (std::size_t d = 0; d < table.size(); ++d) ok = ok && table.for_class(d).degree_sum() == emb.index();
    report("transfer: degree conservation", ok);
  }
  report("criteria: example certificate valid with r-gap 4",
         [&] {
           const auto c = check_theorem(ex.embedding, ex.c1, ex.c2);
           return c.valid() && c.r_gap() == 4;
         }());
  {
    auto fd = std::make_shared<const NumberFieldData>(cyclotomic_field_data(15));
    const FieldFrobenius field(fd);
    const CyclotomicFrobenius closed(15);
    bool ok = true;
    for_each_prime(3, 3000, [&](std::uint64_t p) {
      if (closed.is_excluded(p)) return;
      ok = ok && field.frobenius_class(p) == closed.frobenius_class(p);
    });
    report("fieldarith: modular Frobenius matches p mod 15", ok);
  }
  out << (failures ? "selftest FAILED" : "selftest passed") << '\n';
  return failures ? exit_failure : exit_ok;
}

/// Entry point for the command-line tool.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Chebotarev bias laboratory: group criteria, Frobenius computation and prime races"};
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "suppress progress logs");
  app.fallthrough();  // accept the global flag after a subcommand too

  // group
  auto* group = app.add_subcommand("group", "parse and inspect permutation groups");
  group->require_subcommand(1);
  auto* gparse = group->add_subcommand("parse", "parse a cycle string and print its canonical form");
  std::string cycles;
  std::size_t gdegree = 0;
  gparse->add_option("cycles", cycles, "cycle string, e.g. \"(1 2)(3 4)\"")->required();
  gparse->add_option("--degree", gdegree, "number of points (default: largest point)");
  auto* gshow = group->add_subcommand("show", "order, exponent and conjugacy classes of a generated group");
  std::vector<std::string> gens;
  gshow->add_option("generators", gens, "generator cycle strings")->required();
  gshow->add_option("--degree", gdegree, "number of points")->required();

  // search
  auto* search = app.add_subcommand("search", "search S_n for subgroup-criterion instances");
  std::size_t sdegree = 8, max_order = 1000;
  SearchOptions sopt;
  search->add_option("--degree", sdegree, "degree n")->required();
  search->add_option("--max-order", max_order, "largest element order considered");
  search->add_option("--max-degree", sopt.max_degree, "degree cap");
  search->add_option("--max-ambient-order", sopt.max_ambient_order, "cap on |G+|");

  // check
  auto* check = app.add_subcommand("check", "print a bias certificate");
  std::string example, group_file;
  bool table = false;
  auto* ex_opt = check->add_option("--example", example, "built-in example (paper)");
  auto* grp_opt = check->add_option("--group,--field", group_file, "group description or field-data file");
  ex_opt->excludes(grp_opt);
  check->add_flag("--table", table, "also print the class -> splitting pattern table");

  // field
  auto* field = app.add_subcommand("field", "field-data files");
  field->require_subcommand(1);
  auto* fvalidate = field->add_subcommand("validate", "validate a field-data file");
  std::string field_path;
  std::size_t samples = 20;
  fvalidate->add_option("file", field_path)->required();
  fvalidate->add_option("--samples", samples, "number of random primes for the modular checks");
  auto* fcyclo = field->add_subcommand("cyclotomic", "write field data for Q(zeta_m)");
  std::size_t cyclo_m = 0;
  std::string out_path;
  fcyclo->add_option("m", cyclo_m)->required();
  fcyclo->add_option("--out", out_path)->required();

  // count
  auto* count = app.add_subcommand("count", "accumulate prime counts and write the bias series");
  std::string limit_text = "1e7", t_name = "paper-bias";
  double grid_ratio = 1.05;
  unsigned threads = 1;
  std::size_t count_cyclo = 0;
  bool fast = false, mobius = false;
  auto* cf = count->add_option("--field", field_path, "field-data file");
  auto* cc = count->add_option("--cyclotomic", count_cyclo, "use Q(zeta_m) with closed-form Frobenius");
  cf->excludes(cc);
  count->add_option("--limit", limit_text, "largest x (accepts 1e7)");
  count->add_option("--grid-ratio", grid_ratio, "checkpoint ratio");
  count->add_option("--t", t_name, "class function: paper-bias, diff or one");
  count->add_option("--out", out_path, "series CSV")->required();
  count->add_option("--threads", threads, "worker threads");
  count->add_flag("--fast", fast, "stop at the first matching class instead of testing all");
  count->add_flag("--mobius", mobius, "track twisted psi and check the Moebius identity");

  // emit-figure
  auto* figure = app.add_subcommand("emit-figure", "extract (x, D(x)) from a series");
  std::string series_path;
  figure->add_option("--series", series_path)->required();
  figure->add_option("--out", out_path)->required();

  auto* self = app.add_subcommand("selftest", "run the exact identity checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_usage;
  }

  const Logger log{err, quiet ? 0 : 1};
  try {
    if (*gparse) {
      const auto p = gdegree ? Permutation::from_cycles(cycles, gdegree) : Permutation::from_cycles(cycles);
      out << p.to_cycles() << '\n';
      for (std::size_t i = 0; i < p.degree(); ++i) out << (i ? " " : "") << p(static_cast<Permutation::point>(i)) + 1;
      out << '\n';
      return exit_ok;
    }
    if (*gshow) {
      const auto G = make_group(gdegree, gens);
      out << "order " << G->order() << "\nexponent " << G->exponent() << "\nabelian " << (G->is_abelian() ? "yes" : "no")
          << "\nclasses " << G->class_count() << '\n';
      for (std::size_t c = 0; c < G->class_count(); ++c)
        out << G->class_representative(c).to_cycles() << '\t' << G->class_size(c) << '\n';
      return exit_ok;
    }
    if (*search) {
      const auto hits = search_sn_instances(sdegree, max_order, sopt);
      log.info("search degree", sdegree, "instances", hits.size());
      for (const auto& h : hits) {
        auto j = certificate_json(h.certificate);
        j["cycle_type"] = h.cycle_type;
        j["sigma"] = h.sigma.to_cycles();
        j["tau"] = h.tau.to_cycles();
        j["swap"] = h.swap.to_cycles();
        j["lemma"] = {{"holds", h.lemma.holds},
                      {"product_order", h.lemma.product_order},
                      {"roots_of_k_in_g", h.lemma.roots_of_k_in_g},
                      {"roots_of_h_in_g", h.lemma.roots_of_h_in_g},
                      {"product_formulas", h.lemma.product_formulas}};
        j["realization"] = "group-theoretic instance only";
        out << j.dump() << '\n';
      }
      return exit_ok;
    }
    if (*check) {
      BiasCertificate cert;
      if (!example.empty()) {
        if (example != "paper") throw usage_error("unknown example \"" + example + "\" (expected paper)");
        const auto ex = build_wreath_example();
        cert = check_theorem(ex.embedding, ex.c1, ex.c2);
      } else if (!group_file.empty()) {
        cert = certificate_from_group_file(resolve_fixture(group_file));
      } else {
        throw usage_error("check needs --example or --group");
      }
      out << cert.to_string() << '\n';
      if (table) print_pattern_table(out, *cert.embedding);
      return cert.valid() ? exit_ok : exit_failure;
    }
    if (*fvalidate) {
      const auto path = resolve_fixture(field_path);
      NumberFieldData fd;
      try {
        fd = load_field_data(path);
      } catch (const corrupt_data& e) {
        out << "invalid: " << e.what() << '\n';
        return exit_failure;
      }
      log.info("field", fd.name, "degree", fd.degree(), "checksum", fd.poly_checksum);
      log.info("excluded primes", join_u64(fd.excluded_primes));
      const auto rep = validate_field_data(fd, samples);
      log.info("sample primes", join_u64(rep.sample_primes));
      if (!rep.ok) {
        out << "invalid: " << rep.failure << '\n';
        return exit_failure;
      }
      out << "valid: " << rep.checks << " checks\n";
      return exit_ok;
    }
    if (*fcyclo) {
      const auto fd = cyclotomic_field_data(cyclo_m);
      save_field_data(fd, out_path);
      log.info("wrote", out_path, "degree", fd.degree(), "checksum", fd.poly_checksum);
      return exit_ok;
    }
    if (*count) {
      const std::uint64_t limit = parse_count(limit_text, "--limit");
      if (limit < 2) throw usage_error("--limit must be >= 2");
      if (!(grid_ratio > 1.0)) throw usage_error("--grid-ratio must exceed 1");
      if (threads < 1) throw usage_error("--threads must be >= 1");
      if (limit > sieve_limit_cap) throw usage_error("--limit exceeds the sieve cap 2^34");
      std::optional<FrobeniusOracle> oracle;
      std::shared_ptr<const NumberFieldData> fd;
      if (count_cyclo) {
        oracle = FrobeniusOracle::cyclotomic(count_cyclo);
      } else if (!field_path.empty()) {
        fd = std::make_shared<const NumberFieldData>(load_field_data(resolve_fixture(field_path)));
        oracle = FrobeniusOracle::from_field(fd, !fast);
      } else {
        throw usage_error("count needs --field or --cyclotomic");
      }
      const auto& data = oracle->data();
      log.info("field", data.name, "degree", data.degree(), "checksum", data.poly_checksum);
      log.info("excluded primes", join_u64(data.excluded_primes));
      const auto emb = data.embedding(oracle->group());
      const auto& G = emb->sub_ptr();
      const std::size_t c1 = G->class_of(data.class1_rep), c2 = G->class_of(data.class2_rep);
      const auto t = select_t(t_name, G, c1, c2);
      AccumulateOptions opt;
      opt.threads = threads;
      if (mobius) {
        std::size_t levels = 1;
        while ((std::uint64_t{1} << (levels + 1)) <= limit) ++levels;
        opt.max_twist = levels;
      }
      log.info("limit", limit, "grid-ratio", grid_ratio, "threads", threads, "t", t_name);
      const auto series = accumulate(*oracle, *emb, t, Checkpoints::geometric(limit, grid_ratio), opt);
      emit_series(series, out_path);
      const auto& a = series.audit;
      log.info("primes used", a.primes_used, "excluded seen", join_u64(a.excluded_seen));
      log.info("psi-nonzero primes", a.psi_nonzero_primes, "degree violations", a.degree_violations);
      const auto [ld, nd] = density_estimates(series);
      log.info("final D", format_real(series.D.back()), "log density", format_real(ld), "natural density", format_real(nd));
      bool ok = a.degree_violations == 0;
      if (mobius) {
        const auto m = mobius_check(series);
        log.info("mobius", m.ok ? "ok" : "FAILED", "max relative mismatch", format_real(m.max_relative_mismatch),
                 "exact mismatches", m.exact_mismatches, "theta/sqrt(X)", format_real(m.theta_over_sqrt_x));
        ok = ok && m.ok;
      }
      log.info("wrote", out_path, "rows", series.x.size());
      return ok ? exit_ok : exit_failure;
    }
    if (*figure) {
      const auto rows = read_series_xd(series_path);
      std::string text = "x,D\n";
      for (const auto& [x, d] : rows) text += x + "," + d + "\n";
      write_text_file(out_path, text);
      log.info("wrote", out_path, "rows", rows.size());
      return exit_ok;
    }
    if (*self) return selftest(out);
  } catch (const usage_error& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_failure;
  }
  return exit_usage;
}

}  // namespace chebias::cli
