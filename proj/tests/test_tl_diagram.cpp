#include "anyonrg/tl_diagram.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace anyonrg::tl;

TEST(Laurent, Arithmetic) {
  const Laurent a = Laurent::A(), ai = Laurent::A_inv();
  EXPECT_EQ(a * ai, Laurent(1));
  EXPECT_EQ(Laurent::delta(), -(a * a) - ai * ai);
  EXPECT_EQ((a + 1).pow(2), a * a + Laurent::monomial(2, 1) + 1);
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_EQ(Laurent::delta().coeff(2), -1);
  EXPECT_EQ(Laurent::delta().coeff(0), 0);
}

TEST(Laurent, IsingEvaluation) {
  const auto A = ising_kauffman_A();
  EXPECT_NEAR(std::abs(Laurent::delta().evaluate(A) - std::sqrt(2.0)), 0.0, 1e-14);
  const auto roots = ising_kauffman_roots();
  ASSERT_EQ(roots.size(), 4u);
  for (auto r : roots) {
    EXPECT_NEAR(std::abs(r), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(Laurent::delta().evaluate(r) - std::sqrt(2.0)), 0.0, 1e-14);
  }
}

TEST(Pairing, RejectsCrossingAndFixedPoints) {
  EXPECT_THROW(PlanarPairing({2, 3, 0, 1}), std::invalid_argument);  // 0-2, 1-3 cross
  EXPECT_THROW(PlanarPairing({0, 1}), std::invalid_argument);
  EXPECT_THROW(PlanarPairing({1, 0, 2}), std::invalid_argument);
  EXPECT_NO_THROW(PlanarPairing({1, 0, 3, 2}));
}

TEST(Pairing, CatalanBasis) {
  const std::size_t catalan[] = {1, 1, 2, 5, 14, 42, 132, 429};
  for (int n = 1; n <= 7; ++n) {
    const auto basis = enumerate_diagrams(n);
    EXPECT_EQ(basis.size(), catalan[n]) << n;
    for (const auto& d : basis) {
      std::vector<TLElement> word;
      for (int i : d.word) word.push_back(generator(n, i));
      const TLElement prod = word.empty() ? identity(n) : compose_all(word);
      TLElement expect(n);
      expect.add(d.diagram, Laurent::delta().pow(static_cast<unsigned>(d.loops)));
      EXPECT_EQ(prod, expect);
    }
  }
}

TEST(Compose, LoopsAndClosure) {
  const auto e = generator(3, 1);
  EXPECT_EQ(compose(e, e), Laurent::delta() * e);
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(trace_closure(identity(n)), Laurent::delta().pow(n));
  // closing e_1 on two strands leaves one loop
  EXPECT_EQ(trace_closure(generator(2, 1)), Laurent::delta());
  EXPECT_THROW(compose(identity(2), identity(3)), std::invalid_argument);
  EXPECT_THROW(generator(3, 3), std::invalid_argument);
}

TEST(Relations, HoldUpToEightStrands) {
  for (int n = 3; n <= 8; ++n) EXPECT_TRUE(verify_relations(n).all_passed()) << n;
}

TEST(Relations, CorruptedLoopValueIsCaught) {
  const Laurent d2 = Laurent::delta().pow(2);
  const auto bad = verify_relations(4, [&](const TLElement& a, const TLElement& b) { return compose(a, b, d2); });
  EXPECT_FALSE(bad.all_passed());
  bool square_failed = false;
  for (const auto& c : bad.checks)
    if (c.relation.find("^2") != std::string::npos) square_failed |= !c.passed();
  EXPECT_TRUE(square_failed);
}

TEST(Braids, ReidemeisterTwoAndThree) {
  for (int n = 2; n <= 7; ++n) EXPECT_TRUE(verify_braid_relations(n).all_passed()) << n;
  const auto b = kauffman_braid(3, 1, Crossing::over), bi = kauffman_braid(3, 1, Crossing::under);
  EXPECT_EQ(compose(b, bi), identity(3));
}

TEST(Compose, RandomWordsAssociate) {
  std::mt19937_64 rng(2024);
  for (int n = 3; n <= 6; ++n) {
    std::uniform_int_distribution<int> gen(1, n - 1);
    for (int rep = 0; rep < 30; ++rep) {
      TLElement x = generator(n, gen(rng)), y = kauffman_braid(n, gen(rng), Crossing::over),
                z = generator(n, gen(rng)) + kauffman_braid(n, gen(rng), Crossing::under);
      EXPECT_EQ(compose(compose(x, y), z), compose(x, compose(y, z)));
    }
  }
}

TEST(Evaluate, MatchesLaurentCoefficients) {
  const auto A = ising_kauffman_A();
  const TLElement sym = compose(kauffman_braid(3, 1, Crossing::over), generator(3, 2));
  const NumericTLElement num = evaluate(sym, A);
  ASSERT_EQ(num.size(), sym.size());
  for (const auto& [p, c] : sym.terms()) EXPECT_NEAR(std::abs(num.terms().at(p) - c.evaluate(A)), 0.0, 1e-15);
}
