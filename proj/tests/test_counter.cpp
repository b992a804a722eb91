#include <gtest/gtest.h>

#include <boost/math/special_functions/expint.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "chebias/counter.hpp"
#include "chebias/criteria.hpp"
#include "test_support.hpp"

using namespace chebias;

namespace {

const std::filesystem::path fixture = std::filesystem::path(CHEBIAS_SOURCE_DIR) / "fixtures" / "paper32.json";

std::shared_ptr<const NumberFieldData> wreath_field() {
  static const auto fd = std::make_shared<const NumberFieldData>(load_field_data(fixture));
  return fd;
}

// Closed form: R(x) = sqrt(2)/log 2 + (li(sqrt x) - li(sqrt 2)) / 2, li(y) = Ei(log y).
double r_closed(double x) {
  auto li = [](double y) { return boost::math::expint(std::log(y)); };
  return std::sqrt(2.0) / std::log(2.0) + 0.5 * (li(std::sqrt(x)) - li(std::sqrt(2.0)));
}

int mobius_mu(std::size_t n) {
  int mu = 1;
  for (std::size_t d = 2; d <= n; ++d) {
    if (n % d) continue;
    n /= d;
    if (n % d == 0) return 0;
    mu = -mu;
  }
  return mu;
}

struct Direct {
  std::vector<std::vector<long long>> pi;  // [checkpoint][class]
  std::vector<std::complex<long double>> theta;
  std::vector<std::vector<std::complex<long double>>> psi;  // [l-1][checkpoint]
};

// Straightforward evaluation of the definitions, prime by prime and
// checkpoint by checkpoint, from split_prime directly.
template <class Oracle>
Direct direct_sums(const Oracle& oracle, const SubgroupEmbedding& emb, const ClassFunction& t,
                   const std::vector<std::uint64_t>& xs, std::size_t twists) {
  const auto& G = emb.sub();
  Direct d;
  d.pi.assign(xs.size(), std::vector<long long>(G.class_count(), 0));
  d.theta.assign(xs.size(), 0);
  d.psi.assign(twists, std::vector<std::complex<long double>>(xs.size(), 0));
  auto val = [&](const Permutation& g) {
    const auto& z = t(g);
    return std::complex<long double>(static_cast<long double>(z.re()), static_cast<long double>(z.im()));
  };
  for (auto p : sieve_primes(xs.back())) {
    const auto sigma = oracle.frobenius(p);
    if (!sigma) continue;
    const auto pattern = split_prime(*sigma, emb);
    const long double lp = std::log(static_cast<long double>(p));
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const long double x = static_cast<long double>(xs[i]);
      for (const auto& e : pattern.entries) {
        const auto& rep = G.class_representative(e.class_id);
        const long double norm = std::pow(static_cast<long double>(p), static_cast<long double>(e.residue_degree));
        const long double w = static_cast<long double>(e.residue_degree * e.multiplicity) * lp;
        if (norm <= x) {
          d.pi[i][e.class_id] += static_cast<long long>(e.multiplicity);
          d.theta[i] += w * val(rep);
        }
        for (std::size_t l = 1; l <= twists; ++l)
          for (long long k = 1; std::pow(norm, static_cast<long double>(k * l)) <= x * (1 + 1e-15L); ++k)
            d.psi[l - 1][i] += w * val(rep.pow(k * static_cast<long long>(l)));
      }
    }
  }
  return d;
}

bool close(std::complex<double> a, std::complex<long double> b, double rel = 1e-9) {
  const double scale = std::max(1.0, static_cast<double>(std::abs(b)));
  return std::abs(std::complex<double>(static_cast<double>(b.real()), static_cast<double>(b.imag())) - a) <= rel * scale;
}

}  // namespace

TEST(Checkpoints, GeometricGrid) {
  const auto cps = Checkpoints::geometric(1000, 1.05);
  EXPECT_EQ(cps.xs.front(), 2u);
  EXPECT_EQ(cps.xs.back(), 1000u);
  EXPECT_TRUE(std::is_sorted(cps.xs.begin(), cps.xs.end()));
  EXPECT_EQ(std::adjacent_find(cps.xs.begin(), cps.xs.end()), cps.xs.end());
  EXPECT_THROW(Checkpoints::geometric(1), error);
  EXPECT_THROW(Checkpoints::geometric(100, 1.0), error);
  EXPECT_THROW(Checkpoints({1, 5}), error);
  EXPECT_EQ(Checkpoints({9, 3, 9, 4}).xs, (std::vector<std::uint64_t>{3, 4, 9}));
}

TEST(RNorm, EmptyIntegralAtTwo) { EXPECT_DOUBLE_EQ(r_norm(2.0), std::sqrt(2.0) / std::log(2.0)); }

TEST(RNorm, MatchesLogarithmicIntegralClosedForm) {
  for (double x : {2.5, 10.0, 1e3, 1e5, 1e7, 1e10}) EXPECT_NEAR(r_norm(x), r_closed(x), 1e-9 * r_closed(x)) << x;
  EXPECT_THROW(r_norm(1.5), error);
}

TEST(RNorm, AsymptoticRatioAndMonotonicity) {
  const double x = 1e10;
  const double ratio = r_norm(x) / (std::sqrt(x) / std::log(x));
  EXPECT_GE(ratio, 1.0);
  EXPECT_LE(ratio, 1.3);
  const auto grid = Checkpoints::geometric(10'000'000'000ull, 1.05);
  double prev = 0;
  for (auto g : grid.xs) {
    const double r = r_norm(static_cast<double>(g));
    EXPECT_GT(r, prev) << g;
    prev = r;
  }
}

TEST(Positivity, PositiveFromFirstJump) {
  const std::vector<std::uint64_t> xs{10, 1'000, 1'000'000, 1'000'000'000'000ull};
  const auto tr = integrate_positivity({{2, 1}}, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double X = static_cast<double>(xs[i]);
    EXPECT_NEAR(tr.log_density[i], std::log(X / 2) / std::log(X), 1e-12);
    EXPECT_NEAR(tr.natural_density[i], (X - 2) / X, 1e-12);
    EXPECT_EQ(tr.value[i], 1);
  }
  EXPECT_GT(tr.log_density.back(), 0.97);
}

TEST(Positivity, AlternatingSignsGiveOneHalf) {
  std::vector<std::pair<std::uint64_t, long long>> events;
  long long v = 0;
  for (int k = 1; k <= 40; ++k) {
    const long long target = (k % 2) ? 1 : -1;
    events.emplace_back(std::uint64_t{1} << k, target - v);
    v = target;
  }
  const auto tr = integrate_positivity(events, {std::uint64_t{1} << 40});
  EXPECT_NEAR(tr.log_density[0], 0.5, 0.03);
}

TEST(Positivity, TiesAreNotPositive) {
  const auto tr = integrate_positivity({{3, 1}, {5, -1}}, {100});
  EXPECT_NEAR(tr.natural_density[0], 2.0 / 100, 1e-15);
  EXPECT_EQ(tr.value[0], 0);
}

TEST(Accumulate, CyclotomicFourCountsResidueClasses) {
  const auto oracle = FrobeniusOracle::cyclotomic(4);
  const auto emb = oracle.data().embedding(oracle.group());
  const auto& G = emb->sub();
  const auto cps = Checkpoints::geometric(100'000);
  const auto s = accumulate(oracle, *emb, ClassFunction::constant(emb->sub_ptr(), 1), cps);
  const auto e = G.class_of(Permutation(2));
  for (std::size_t i = 0; i < cps.size(); ++i) {
    long long ones = 0, threes = 0;
    for (auto p : sieve_primes(cps.xs[i])) {
      ones += p % 4 == 1;
      threes += p % 4 == 3;
    }
    EXPECT_EQ(s.pi[i][e], ones);
    EXPECT_EQ(s.pi[i][1 - e], threes);
    EXPECT_EQ(s.ideals[i], ones + threes);
  }
  EXPECT_EQ(s.audit.excluded_seen, (std::vector<std::uint64_t>{2}));
}

TEST(Accumulate, AgreesWithDirectEvaluationOnCyclotomicSubextension) {
  // (Z/15)^x = <2> x <-1>; K is the fixed field of <2>, of degree 2.
  const auto oracle = FrobeniusOracle::cyclotomic(15);
  const auto A = oracle.group();
  const auto& perms = oracle.data().perm_map;
  const auto two = *oracle.frobenius(17);  // 17 = 2 mod 15
  auto sub = make_group(A->degree(), {two});
  ASSERT_EQ(sub->order(), 4u);
  (void)perms;
  const SubgroupEmbedding emb(A, sub);
  std::mt19937_64 rng(41);
  const auto t = chebias::testing::random_integer_function(sub, rng);
  AccumulateOptions opt;
  opt.max_twist = 16;
  opt.c1 = sub->class_of(two);
  opt.c2 = sub->class_of(two.pow(3));
  const auto cps = Checkpoints::geometric(100'000, 1.3);
  const auto s = accumulate(oracle, emb, t, cps, opt);
  const auto d = direct_sums(oracle, emb, t, cps.xs, opt.max_twist);
  for (std::size_t i = 0; i < cps.size(); ++i) {
    EXPECT_EQ(s.pi[i], d.pi[i]) << cps.xs[i];
    EXPECT_TRUE(close(s.theta[i], d.theta[i])) << cps.xs[i];
    for (std::size_t l = 0; l < opt.max_twist; ++l) EXPECT_TRUE(close(s.psi_twisted[l][i], d.psi[l][i])) << cps.xs[i] << " " << l;
  }
  const auto m = mobius_check(s);
  EXPECT_TRUE(m.ok);
  EXPECT_EQ(m.exact_mismatches, 0u);
  EXPECT_LE(m.max_relative_mismatch, 1e-6);
  // The independent sums satisfy the same identity.
  for (std::size_t i = 0; i < cps.size(); ++i) {
    std::complex<long double> rhs = 0;
    for (std::size_t l = 1; l <= opt.max_twist; ++l) rhs += static_cast<long double>(mobius_mu(l)) * d.psi[l - 1][i];
    EXPECT_LE(std::abs(rhs - d.theta[i]), 1e-9L * std::max<long double>(1, std::abs(d.theta[i])));
  }
}

TEST(Accumulate, MobiusIdentityForConstantOne) {
  const auto fd = wreath_field();
  const auto oracle = FrobeniusOracle::from_field(fd);
  const auto emb = fd->embedding(oracle.group());
  AccumulateOptions opt;
  opt.max_twist = 13;
  const auto s = accumulate(oracle, *emb, ClassFunction::constant(emb->sub_ptr(), 1), Checkpoints::geometric(10'000), opt);
  const auto m = mobius_check(s);
  EXPECT_TRUE(m.ok) << m.max_relative_mismatch;
  EXPECT_GT(m.exact_levels_checked, 0u);
}

TEST(Accumulate, MobiusCheckNeedsEnoughTwists) {
  const auto oracle = FrobeniusOracle::cyclotomic(5);
  const auto emb = oracle.data().embedding(oracle.group());
  const auto s = accumulate(oracle, *emb, ClassFunction::constant(emb->sub_ptr(), 1), Checkpoints::geometric(1000));
  EXPECT_THROW(mobius_check(s), error);
}

TEST(Accumulate, WreathPsiCancelsAtEveryPrime) {
  const auto fd = wreath_field();
  const auto oracle = FrobeniusOracle::from_field(fd);
  const auto emb = fd->embedding(oracle.group());
  const auto& G = emb->sub_ptr();
  const auto t = bias_function(G, G->class_of(fd->class1_rep), G->class_of(fd->class2_rep));
  AccumulateOptions opt;
  opt.max_twist = 16;
  const auto s = accumulate(oracle, *emb, t, Checkpoints::geometric(100'000), opt);
  EXPECT_EQ(s.audit.psi_nonzero_primes, 0u);
  for (const auto& v : s.psi) EXPECT_EQ(v, std::complex<double>(0, 0));
  const auto m = mobius_check(s);
  EXPECT_TRUE(m.ok);
  EXPECT_GT(m.theta_over_sqrt_x, 0);
  EXPECT_EQ(s.audit.excluded_seen, (std::vector<std::uint64_t>{2, 3, 7, 17}));
  EXPECT_EQ(s.audit.degree_violations, 0u);
  // Counts are monotone and add up to the number of ideals.
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    long long total = 0;
    for (std::size_t c = 0; c < s.pi[i].size(); ++c) {
      total += s.pi[i][c];
      if (i) {
        EXPECT_GE(s.pi[i][c], s.pi[i - 1][c]);
      }
    }
    EXPECT_EQ(total, s.ideals[i]);
  }
}

TEST(Accumulate, ThreadCountDoesNotChangeOutput) {
  const auto fd = wreath_field();
  const auto oracle = FrobeniusOracle::from_field(fd);
  const auto emb = fd->embedding(oracle.group());
  const auto& G = emb->sub_ptr();
  const auto t = bias_function(G, G->class_of(fd->class1_rep), G->class_of(fd->class2_rep));
  const auto cps = Checkpoints::geometric(200'000);
  AccumulateOptions opt;
  opt.block_size = 1 << 14;
  const auto one = series_csv(accumulate(oracle, *emb, t, cps, opt));
  opt.threads = 3;
  EXPECT_EQ(series_csv(accumulate(oracle, *emb, t, cps, opt)), one);
  opt.threads = 8;
  EXPECT_EQ(series_csv(accumulate(oracle, *emb, t, cps, opt)), one);
}

TEST(Accumulate, RelabelingRootsKeepsClassCounts) {
  const auto fd = wreath_field();
  auto relabeled = *fd;
  const auto a = Permutation::from_cycles("(1 3 5 7)(2 8)", 8);
  auto conj = [&](const Permutation& g) { return a * g * a.inverse(); };
  for (auto& p : relabeled.perm_map) p = conj(p);
  for (auto& p : relabeled.group_generators) p = conj(p);
  for (auto& p : relabeled.subgroup_generators) p = conj(p);
  relabeled.class1_rep = conj(relabeled.class1_rep);
  relabeled.class2_rep = conj(relabeled.class2_rep);
  auto run = [](std::shared_ptr<const NumberFieldData> f) {
    const auto oracle = FrobeniusOracle::from_field(f);
    const auto emb = f->embedding(oracle.group());
    return series_csv(accumulate(oracle, *emb, ClassFunction::constant(emb->sub_ptr(), 1), Checkpoints::geometric(30'000)));
  };
  EXPECT_EQ(run(std::make_shared<const NumberFieldData>(relabeled)), run(fd));
}

TEST(Accumulate, ChebotarevFrequenciesOnCyclotomicField) {
  const auto oracle = FrobeniusOracle::cyclotomic(12);
  const auto emb = oracle.data().embedding(oracle.group());
  const auto s = accumulate(oracle, *emb, ClassFunction::constant(emb->sub_ptr(), 1), Checkpoints::geometric(1'000'000));
  const auto& A = *oracle.group();
  for (std::size_t c = 0; c < A.class_count(); ++c) {
    const double freq = static_cast<double>(s.frobenius_class_counts[c]) / static_cast<double>(s.audit.primes_used);
    const double expect = static_cast<double>(A.class_size(c)) / static_cast<double>(A.order());
    EXPECT_NEAR(freq / expect, 1.0, 0.05);
  }
}

TEST(Accumulate, Rejections) {
  const auto oracle = FrobeniusOracle::cyclotomic(5);
  const auto emb = oracle.data().embedding(oracle.group());
  const auto t = ClassFunction::constant(emb->sub_ptr(), 1);
  EXPECT_THROW(accumulate(oracle, *emb, t, Checkpoints{}), error);
  AccumulateOptions opt;
  opt.threads = 0;
  EXPECT_THROW(accumulate(oracle, *emb, t, Checkpoints::geometric(100), opt), error);
  const auto other = FrobeniusOracle::cyclotomic(8);
  EXPECT_THROW(accumulate(other, *emb, t, Checkpoints::geometric(100)), error);
}

TEST(EmitSeries, HeaderOnlyForEmptySeriesAndOneRowPerCheckpoint) {
  EXPECT_EQ(series_csv(BiasSeries{}), std::string(series_csv_header) + "\n");
  const auto oracle = FrobeniusOracle::cyclotomic(8);
  const auto emb = oracle.data().embedding(oracle.group());
  const auto cps = Checkpoints::geometric(5000);
  const auto s = accumulate(oracle, *emb, ClassFunction::constant(emb->sub_ptr(), 1), cps);
  const auto path = std::filesystem::temp_directory_path() / "chebias_series_test.csv";
  emit_series(s, path);
  std::ifstream in(path);
  std::string line;
  std::size_t rows = 0;
  std::getline(in, line);
  EXPECT_EQ(line, series_csv_header);
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, cps.size());
  EXPECT_EQ(read_series_xd(path).size(), cps.size());
  std::filesystem::remove(path);
}

TEST(EmitSeries, RealFormatting) {
  EXPECT_EQ(format_real(0.5), "0.5");
  EXPECT_EQ(format_real(-0.0), "0");
  EXPECT_EQ(format_real(1.0 / 3.0), "0.333333333333");
}
