#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "chebias/perm_group.hpp"
#include "chebias/permutation.hpp"

using namespace chebias;

namespace {

Permutation P(const char* s, std::size_t n = 8) { return Permutation::from_cycles(s, n); }

// Independent conjugacy test: search the whole group for a conjugator.
bool brute_conjugate(const PermutationGroup& G, const Permutation& a, const Permutation& b) {
  for (std::size_t i = 0; i < G.order(); ++i) {
    const auto& x = G.element(i);
    if (x * a * x.inverse() == b) return true;
  }
  return false;
}

std::vector<std::size_t> order_census(const PermutationGroup& G) {
  std::vector<std::size_t> census(G.exponent() + 1, 0);
  for (std::size_t i = 0; i < G.order(); ++i) ++census[G.element(i).order()];
  return census;
}

}  // namespace

TEST(Permutation, ParsesBothCycleStyles) {
  EXPECT_EQ(P("(12)(34)"), P("(1 2)(3 4)"));
  EXPECT_EQ(P(" ( 1 2 ) ( 3 4 ) "), P("(1 2)(3 4)"));
  EXPECT_EQ(Permutation::from_cycles("(1 10 11)", 12).to_cycles(), "(1 10 11)");
  EXPECT_EQ(P("()").to_cycles(), "()");
  EXPECT_TRUE(P("").is_identity());
}

TEST(Permutation, RejectsMalformedCycles) {
  EXPECT_THROW(P("(1 1)"), error);
  EXPECT_THROW(P("(1 2)(2 3)"), error);
  EXPECT_THROW(P("(0 1)"), error);
  EXPECT_THROW(P("(1 9)"), error);
  EXPECT_THROW(P("(1 2"), error);
  EXPECT_THROW(Permutation(std::vector<Permutation::point>{0, 0}), error);
}

TEST(Permutation, ComposeAppliesRightFactorFirst) {
  const auto a = Permutation::from_cycles("(1 2 3)", 3), b = Permutation::from_cycles("(1 2)", 3);
  // a(b(1)) = a(2) = 3
  EXPECT_EQ(compose(a, b)(0), 2u);
  EXPECT_TRUE(compose(P("(12)"), P("(12)")).is_identity());
  EXPECT_THROW(compose(P("(12)", 3), P("(12)", 4)), error);
}

TEST(Permutation, GammaConjugatesSigmaIntoFirstBlock) {
  const auto gamma = P("(15)(27)(36)(48)"), sigma = P("(5678)");
  EXPECT_EQ(gamma * sigma * gamma, P("(1324)"));
}

TEST(Permutation, CycleTypes) {
  EXPECT_EQ(Permutation(8).cycle_type(), std::vector<std::size_t>(8, 1));
  EXPECT_EQ(P("(12)(34)").cycle_type(), (std::vector<std::size_t>{2, 2, 1, 1, 1, 1}));
  EXPECT_EQ(P("(5678)").cycle_type(), (std::vector<std::size_t>{4, 1, 1, 1, 1}));
  EXPECT_EQ(compose(P("(12)(34)"), P("(5678)")).cycle_type(), (std::vector<std::size_t>{4, 2, 2}));
}

TEST(Permutation, RandomAlgebraLaws) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 12;
    auto rnd = [&] {
      std::vector<Permutation::point> v(n);
      std::iota(v.begin(), v.end(), 0u);
      std::shuffle(v.begin(), v.end(), rng);
      return Permutation(v);
    };
    const auto a = rnd(), b = rnd(), c = rnd();
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_TRUE((a * a.inverse()).is_identity());
    EXPECT_EQ(Permutation::from_cycles(a.to_cycles(), n), a);
    EXPECT_TRUE(a.pow(static_cast<long long>(a.order())).is_identity());
    EXPECT_EQ(a.pow(-1), a.inverse());
  }
}

TEST(PermutationGroup, WreathGroupsHaveExpectedOrders) {
  const auto G = make_group(8, std::vector<std::string>{"(12)(34)", "(5678)"});
  const auto Gp = make_group(8, std::vector<std::string>{"(12)(34)", "(5678)", "(15)(27)(36)(48)"});
  EXPECT_EQ(G->order(), 8u);
  EXPECT_EQ(Gp->order(), 32u);
  EXPECT_TRUE(G->is_abelian());
  for (std::size_t i = 0; i < G->order(); ++i)
    for (std::size_t j = 0; j < G->order(); ++j) EXPECT_EQ(G->element(i) * G->element(j), G->element(j) * G->element(i));
  EXPECT_EQ(G->class_count(), 8u);
  EXPECT_EQ(Gp->class_of(P("(12)(34)")), Gp->class_of(P("(57)(68)")));
  EXPECT_FALSE(Gp->is_abelian());
}

TEST(PermutationGroup, TrivialGroupFromNoGenerators) {
  const auto G = make_group(5, std::vector<Permutation>{});
  EXPECT_EQ(G->order(), 1u);
  EXPECT_TRUE(G->element(0).is_identity());
}

TEST(PermutationGroup, CapIsEnforced) { EXPECT_THROW(PermutationGroup::generate(8, {P("(12)"), P("(12345678)")}, 1000), error); }

TEST(PermutationGroup, S3Classes) {
  const auto S3 = make_group(3, std::vector<std::string>{"(12)", "(123)"});
  std::multiset<std::size_t> sizes;
  for (std::size_t c = 0; c < S3->class_count(); ++c) sizes.insert(S3->class_size(c));
  EXPECT_EQ(sizes, (std::multiset<std::size_t>{1, 2, 3}));
}

TEST(PermutationGroup, SymmetricGroupClassCountsArePartitionNumbers) {
  const std::size_t partitions[] = {1, 1, 2, 3, 5, 7, 11};
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto S = symmetric_group(n);
    std::size_t fact = 1;
    for (std::size_t k = 2; k <= n; ++k) fact *= k;
    EXPECT_EQ(S->order(), fact);
    EXPECT_EQ(S->class_count(), partitions[n]);
  }
}

TEST(PermutationGroup, ClosureAndConjugacyAgreeWithBruteForce) {
  const std::vector<std::vector<std::string>> gens{
      {"(12)(34)", "(5678)", "(15)(27)(36)(48)"}, {"(1234)", "(13)"}, {"(123)", "(12)(45)"}, {"(12345)", "(25)(34)"}};
  for (const auto& g : gens) {
    const auto G = make_group(8, g);
    ASSERT_LE(G->order(), 64u);
    std::size_t total = 0;
    for (std::size_t c = 0; c < G->class_count(); ++c) total += G->class_size(c);
    EXPECT_EQ(total, G->order());
    EXPECT_TRUE(G->element(0).is_identity());
    for (std::size_t i = 0; i < G->order(); ++i) {
      EXPECT_TRUE(G->contains(G->element(i).inverse()));
      for (std::size_t j = 0; j < G->order(); ++j) {
        EXPECT_TRUE(G->contains(G->element(i) * G->element(j)));
        const bool same = G->class_of(i) == G->class_of(j);
        EXPECT_EQ(same, brute_conjugate(*G, G->element(i), G->element(j)));
        if (same) {
          EXPECT_EQ(G->element(i).cycle_type(), G->element(j).cycle_type());
        }
      }
    }
    for (std::size_t c = 0; c < G->class_count(); ++c)
      for (auto m : G->class_members(c)) EXPECT_LE(G->class_representative(c), G->element(m));
  }
}

TEST(PermutationGroup, WreathBaseIsZ4xZ4SwappedByGamma) {
  const auto sigma = P("(5678)"), gamma = P("(15)(27)(36)(48)");
  const auto sigma2 = gamma * sigma * gamma;
  const auto B = make_group(8, {sigma, sigma2});
  EXPECT_EQ(B->order(), 16u);
  EXPECT_TRUE(B->is_abelian());
  const auto census = order_census(*B);
  EXPECT_EQ(census[1], 1u);
  EXPECT_EQ(census[2], 3u);
  EXPECT_EQ(census[4], 12u);
  EXPECT_EQ(gamma * sigma * gamma.inverse(), sigma2);
  EXPECT_EQ(gamma * sigma2 * gamma.inverse(), sigma);
}
