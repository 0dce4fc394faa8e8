#include "anyonrg/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace anyonrg;
using namespace anyonrg::oracle;

TEST(JordanWigner, SmallestCase) {
  const auto p = jordan_wigner(2);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p[0], PauliString({Pauli::X}, 0));
  EXPECT_EQ(p[1], PauliString({Pauli::Y}, 0));
  EXPECT_THROW(jordan_wigner(3), std::invalid_argument);
  EXPECT_THROW(jordan_wigner(0), std::invalid_argument);
  EXPECT_THROW(jordan_wigner(kMaxMajoranas + 2), std::invalid_argument);
}

TEST(JordanWigner, PauliAlgebra) {
  const PauliString x({Pauli::X}, 0), y({Pauli::Y}, 0), z({Pauli::Z}, 0);
  EXPECT_EQ(x * y, PauliString({Pauli::Z}, 1));
  EXPECT_EQ(y * x, PauliString({Pauli::Z}, 3));
  EXPECT_EQ(z * z, PauliString({Pauli::I}, 0));
  EXPECT_FALSE(x.commutes_with(z));
}

TEST(JordanWigner, MajoranaAlgebraAtEight) {
  const std::size_t n = 8;
  std::vector<DenseOperator> psi;
  for (std::size_t a = 0; a < n; ++a) psi.push_back(build_majorana(n, a));
  const auto one = DenseOperator::identity(n / 2);
  for (std::size_t a = 0; a < n; ++a) {
    EXPECT_EQ(psi[a].distance(psi[a].adjoint()), 0.0);
    for (std::size_t b = 0; b < n; ++b) {
      const auto anti = psi[a] * psi[b] + psi[b] * psi[a];
      EXPECT_EQ(anti.distance(a == b ? one * 2.0 : one * 0.0), 0.0) << a << "," << b;
    }
  }
}

TEST(Build, GeneratorsAndBraids) {
  const std::size_t n = 10;
  for (std::size_t j = 0; j < n; ++j) {
    const auto e = build(majorana::tl_generator(n, j));
    EXPECT_LT((e * e).distance(e * std::sqrt(2.0)), 1e-12);
    const auto b = build(majorana::braid_unitary(n, j, majorana::BraidSign::over));
    EXPECT_LT((b * b.adjoint()).distance(DenseOperator::identity(n / 2)), 1e-12);
    const auto bond = majorana::bond(n, j);
    // b psi_x b* = -psi_{x+eps}, with psi_{x+eps} = sign * psi_right
    const auto lhs = b * build_majorana(n, bond.left) * b.adjoint();
    EXPECT_LT(lhs.distance(build_majorana(n, bond.right) * static_cast<double>(-bond.sign)), 1e-12) << j;
  }
}

TEST(Build, LinearInCoefficients) {
  auto q1 = majorana::tl_generator(8, 1), q2 = majorana::tl_generator(8, 4);
  auto sum = q1;
  sum += q2;
  EXPECT_LT(build(sum).distance(build(q1) + build(q2)), 1e-14);
  EXPECT_LT(build_tl_word(8, {1, 4}).distance(build(q1) * build(q2)), 1e-14);
}

TEST(GroundState, FrozenEnergies) {
  // independent numpy Jordan-Wigner diagonalization; n=4 is 2 sqrt2 - 2
  const std::pair<std::size_t, double> cases[] = {
      {4, 2 * std::sqrt(2.0) - 2}, {8, 1.961336119447234}, {12, 3.0211797591008174}};
  for (auto [n, e0] : cases) {
    const auto h = majorana::ising_hamiltonian(n);
    const auto dense = ground_state(build(h), n);
    const auto blocks = ground_state(h);
    EXPECT_NEAR(dense.energy, e0, 1e-10) << n;
    EXPECT_NEAR(blocks.energy, e0, 1e-10) << n;
    EXPECT_TRUE(dense.unique());
    EXPECT_EQ(blocks.parity, 1);
    EXPECT_LT((dense.covariance - blocks.covariance).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(GroundState, OracleEqualsMomentum) {
  for (int L0 : {1, 2, 3, 4, 5, 6}) {
    const majorana::LatticeSpec l(0, 1.0, L0);
    const auto gs = ground_state(majorana::ising_hamiltonian(l.majorana_count()));
    ASSERT_TRUE(gs.unique());
    EXPECT_LT((gs.covariance - majorana::ground_state_momentum(l).gamma).cwiseAbs().maxCoeff(), 1e-10) << L0;
  }
}

TEST(GroundState, ShiftInvariantAndGapped) {
  auto h = majorana::ising_hamiltonian(8);
  const auto a = ground_state(build(h), 8);
  h.add_constant(3.5);
  const auto b = ground_state(build(h), 8);
  EXPECT_NEAR(b.energy - a.energy, 3.5, 1e-12);
  EXPECT_NEAR(a.gap, b.gap, 1e-12);
  EXPECT_NEAR(a.gap, 1.082392200292392, 1e-10);
  EXPECT_LT((a.covariance - b.covariance).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(GroundState, PeriodicSeamIsDegenerate) {
  const auto gs = ground_state(build(majorana::ising_hamiltonian(8, 1.0, majorana::Boundary::periodic)), 8);
  EXPECT_EQ(gs.degeneracy, 2u);
  EXPECT_FALSE(gs.unique());
  EXPECT_EQ(gs.covariance.size(), 0);
}
