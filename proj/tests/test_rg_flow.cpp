#include "anyonrg/oracle.hpp"
#include "anyonrg/rg_flow.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <thread>

using namespace anyonrg;
using namespace anyonrg::rg;
using majorana::LatticeSpec;

namespace {
constexpr double kPi = std::numbers::pi;

RefinementSpec spec(LatticeSpec c, int M, Direction side = Direction::right, BraidSign b = BraidSign::over) {
  RefinementSpec s;
  s.coarse = c;
  s.depth = M;
  s.attachment = side;
  s.braid = b;
  return s;
}
}  // namespace

TEST(Refinement, Embedding) {
  const auto r = embed_sites(spec(LatticeSpec(0, 1.0, 2), 2));
  ASSERT_EQ(r.size(), 4u);
  EXPECT_EQ(r[1].fine_site, 4u);
  EXPECT_EQ(r[1].first, 8u);
  EXPECT_EQ(r[1].second, 9u);
  const auto l = embed_sites(spec(LatticeSpec(0, 1.0, 2), 2, Direction::left));
  EXPECT_EQ(l[1].first, 9u);
  EXPECT_EQ(l[1].second, 10u);
  EXPECT_THROW(spec(LatticeSpec(0), -1).validate(), std::invalid_argument);
  EXPECT_DOUBLE_EQ(spec(LatticeSpec(0), 3).bilinear_factor(), 8.0);
}

TEST(Flow, RestrictionEqualsClosedFormUpToDepthSix) {
  for (int M = 0; M <= 6; ++M) {
    const auto s = spec(LatticeSpec(0, 1.0, 2), M);
    const auto mom = flow_covariance(s);
    const auto bog = flow_covariance(s, FineSource::bogoliubov);
    EXPECT_LT(mom.route_difference(), 1e-10) << M;
    EXPECT_LT((bog.gamma - mom.closed_form).cwiseAbs().maxCoeff(), 1e-10) << M;
    EXPECT_LT(mom.antisymmetry_residual(), 1e-15);
    EXPECT_LE(mom.max_singular_value(), 1.0 + 1e-12);
    for (long d = 1; d < 4; ++d)
      EXPECT_NEAR(mom.closed_form(d, 0), flow_two_point_csc(s.coarse, M, d), 1e-12) << M << " " << d;
  }
}

TEST(Flow, SemigroupLaw) {
  const LatticeSpec c(0, 1.0, 2);
  for (int m1 = 0; m1 <= 3; ++m1) {
    for (int m2 = 0; m2 <= 3; ++m2) {
      const auto direct = flow_covariance(spec(c, m1 + m2));
      const auto inner = flow_covariance(spec(c.refined(m1), m2));
      const auto composed = restrict_flow(inner, c, m1);
      EXPECT_LT((composed.gamma - direct.gamma).cwiseAbs().maxCoeff(), 1e-10) << m1 << "+" << m2;
    }
  }
  EXPECT_THROW(restrict_flow(flow_covariance(spec(c, 1)), c, 1), std::invalid_argument);
}

TEST(Flow, AttachmentSidesAgree) {
  const LatticeSpec c(0, 1.0, 3);
  for (int M = 1; M <= 4; ++M) {
    const auto r = flow_covariance(spec(c, M, Direction::right));
    const auto l = flow_covariance(spec(c, M, Direction::left));
    EXPECT_LT((r.gamma - l.gamma).cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(Flow, DepthZeroIsGroundStateAndOdd) {
  const LatticeSpec c(0, 1.0, 8);
  for (long d : {1L, 2L, 5L}) {
    EXPECT_EQ(flow_two_point(c, 0, d), majorana::field_two_point(c, d));
    EXPECT_EQ(flow_two_point(c, 3, -d), -flow_two_point(c, 3, d));
  }
  // the closed form is exact at every depth
  for (int M : {0, 5, 10})
    for (long d : {1L, 2L, 4L}) EXPECT_NEAR(flow_two_point(c, M, d), flow_two_point_csc(c, M, d), 1e-12);
}

TEST(Flow, ConcurrentFineStateCache) {
  clear_fine_state_cache();
  const LatticeSpec fine = LatticeSpec(0, 1.0, 4).refined(3);
  std::vector<std::shared_ptr<const FineState>> got(8);
  std::vector<std::thread> ts;
  for (std::size_t i = 0; i < got.size(); ++i) ts.emplace_back([&, i] { got[i] = fine_state(fine); });
  for (auto& t : ts) t.join();
  for (const auto& g : got) EXPECT_EQ(g.get(), got[0].get());
  EXPECT_EQ(fine_state_cache_size(), 1u);
}

TEST(Abel, SeriesAndLimits) {
  for (double th : {kPi / 8, kPi / 4, kPi / 2, 2.5}) {
    EXPECT_NEAR(abel_sum(th, 0.99), abel_sum_exact(th, 0.99), 1e-12);
    EXPECT_NEAR(abel_limit(th), abel_limit_exact(th), 1e-8 * abel_limit_exact(th)) << th;
    EXPECT_NEAR(cesaro_mean(th, 200000), abel_limit_exact(th), 1e-4);
    const std::size_t n = 37;
    EXPECT_NEAR(partial_sum(th, n), std::pow(std::sin(n * th / 2), 2) / std::sin(th / 2), 1e-12);
  }
  EXPECT_THROW(abel_sum(1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(scaling_limit_two_point(0.0, 8.0, 1.0), std::invalid_argument);
  EXPECT_THROW(scaling_limit_two_point(16.0, 8.0, 1.0), std::invalid_argument);
  EXPECT_THROW(infinite_volume_two_point(0.0, 1.0), std::invalid_argument);
}

TEST(ScalingLimit, NormalizationIsGlobal) {
  const LatticeSpec c(0, 1.0, 8);
  const double fitted = fit_normalization(c, 10, {1, 2, 4}) * c.half_length() / c.spacing();
  EXPECT_NEAR(fitted, kFrozenKappa, 1e-9);
  const auto rep = flow_convergence(c, {1, 2, 4}, 10, frozen_normalization(c));
  EXPECT_LT(rep.errors.back(), 1e-3);
  EXPECT_NEAR(rep.fitted_rate, 0.25, 0.05);
  // each d on its own agrees with the shared constant
  for (long d : {1L, 2L, 4L}) {
    const double g = flow_two_point(c, 10, d);
    const double lim = scaling_limit_two_point(static_cast<double>(d), 8.0, frozen_normalization(c)).imag();
    EXPECT_NEAR(g / lim, 1.0, 1e-6) << d;
  }
}

TEST(ScalingLimit, InfiniteVolume) {
  const LatticeSpec c(0, 1.0, 100);
  const double d = 1.0;
  const auto lim = scaling_limit_two_point(d, c.half_length(), frozen_normalization(c));
  const auto inf = infinite_volume_two_point(d, c.spacing());
  EXPECT_NEAR(kPrescriptionFactor * lim.imag() / inf.imag(), 1.0, 1e-3);
  EXPECT_EQ(inf.real(), 0.0);
}

TEST(Chirality, CrossRatioAndSwap) {
  const LatticeSpec c(0, 1.0, 8);
  const auto rb = chiral_correlators(spec(c, 10), 0, 2);
  const auto rbi = chiral_correlators(spec(c, 10, Direction::right, BraidSign::inverse), 0, 2);
  const auto lb = chiral_correlators(spec(c, 10, Direction::left), 0, 2);
  EXPECT_LT(rb.cross_ratio(), 0.05);
  EXPECT_EQ(lb.distance(rbi), 0.0);
  EXPECT_EQ(lb.distance(rb.swapped()), 0.0);
  EXPECT_GT(rb.distance(lb), 0.1);
  // ++ entry carries the field two-point function
  EXPECT_NEAR(rb.value[0][0], flow_two_point(c, 10, 2), 1e-6);
  EXPECT_THROW(chiral_correlators(spec(c, 1), 3, 3), std::invalid_argument);
}

TEST(BraidedCorrelator, MatchesOracle) {
  const LatticeSpec c(0, 1.0, 2);  // 8 coarse Majoranas
  for (int M : {0, 1}) {
    const std::size_t nf = c.refined(M).majorana_count();
    const auto gs = oracle::ground_state(majorana::ising_hamiltonian(nf));
    ASSERT_TRUE(gs.unique());
    for (auto [x, y] : {std::pair<std::size_t, std::size_t>{2, 5}, {4, 2}, {3, 5}, {5, 1}}) {
      const bool right = y > x;
      const auto sp =
          majorana::separate_pair(c, x, right ? y - x : x + 1 - y, right ? Direction::right : Direction::left);
      majorana::MajoranaQuadratic fine(nf, sp.observable.constant());
      const auto& a = sp.observable.alpha();
      for (Eigen::Index u = 0; u < a.rows(); ++u)
        for (Eigen::Index v = u + 1; v < a.cols(); ++v)
          if (a(u, v) != 0.0) fine.add_bilinear(u << M, v << M, std::exp2(M) * a(u, v));
      const auto op = oracle::build(fine);
      const std::complex<double> want = gs.vector.dot(op.matrix() * gs.vector);
      EXPECT_NEAR(std::abs(braided_correlator(spec(c, M), x, y) - want), 0.0, 1e-10) << M << " " << x << " " << y;
    }
  }
  EXPECT_THROW(braided_correlator(spec(c, 0), 3, 3), std::invalid_argument);
  // y = x + 1 is the unbraided generator
  const auto g = majorana::ground_state_momentum(c).gamma;
  EXPECT_NEAR(std::abs(braided_correlator(spec(c, 0), 3, 4) - (1.0 - g(4, 3)) / std::sqrt(2.0)), 0.0, 1e-12);
  EXPECT_THROW(braided_correlator(spec(c, 0), 1, 8), std::out_of_range);
}
