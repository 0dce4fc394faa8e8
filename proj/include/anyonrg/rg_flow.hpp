#pragma once

// Braiding renormalization channel for the critical Ising chain and its
// scaling limit.
//
// alpha^M refines a coarse field site x in Lambda_N to the fine field site
// at the same coordinate in Lambda_{N+M}. The coarse field is the pair
// phi_x = (psi_a + psi_b)/sqrt2 of the fine Majoranas attached there
// ((2k, 2k+1) for right attachment, (2k+1, 2k+2) for left). Every bilinear
// picks up 2^(M * scaling_exponent).

#include "anyonrg/majorana.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace anyonrg::rg {

using majorana::BraidSign;
using majorana::Direction;
using majorana::LatticeSpec;

struct RefinementSpec {
  LatticeSpec coarse{0};
  int depth = 0;
  Direction attachment = Direction::right;
  BraidSign braid = BraidSign::over;
  double scaling_exponent = 1.0;

  LatticeSpec fine() const { return coarse.refined(depth); }
  double bilinear_factor() const;  // 2^(M * scaling_exponent)
  /// Throws std::invalid_argument for negative depth.
  void validate() const;
};

struct EmbeddedSite {
  std::size_t fine_site;  // field site on Lambda_{N+M}
  std::size_t first;      // fine Majorana indices of the pair
  std::size_t second;
};

/// One entry per coarse field site.
std::vector<EmbeddedSite> embed_sites(const RefinementSpec& spec);

// ------------------------------------------------------------ fine states

enum class FineSource { momentum, bogoliubov };

/// Ground-state covariance of a fine lattice. The momentum source is
/// translation invariant and evaluated lazily per distance; the Bogoliubov
/// source is a dense diagonalization (at most kMaxBogoliubov Majoranas).
class FineState {
 public:
  static constexpr std::size_t kMaxBogoliubov = 2048;

  FineState(const LatticeSpec& lattice, FineSource source);
  ~FineState();
  FineState(const FineState&) = delete;
  FineState& operator=(const FineState&) = delete;

  const LatticeSpec& lattice() const { return lattice_; }
  FineSource source() const { return source_; }
  /// Gamma_ab; thread safe.
  double gamma(std::size_t a, std::size_t b) const;
  /// Evaluates the given Majorana distances in parallel (momentum source).
  void prefetch(const std::vector<long>& distances) const;

 private:
  struct Profile;
  LatticeSpec lattice_;
  FineSource source_;
  Eigen::MatrixXd dense_;
  std::unique_ptr<Profile> profile_;
};

/// Memoized fine state; concurrent callers share one computation.
std::shared_ptr<const FineState> fine_state(const LatticeSpec& lattice, FineSource source = FineSource::momentum);
std::size_t fine_state_cache_size();
void clear_fine_state_cache();

// ------------------------------------------------------------- flow

struct FlowState {
  RefinementSpec spec;
  Eigen::MatrixXd gamma;        // restriction of the fine ground state, scaled
  Eigen::MatrixXd closed_form;  // momentum sum over Gamma_{N+M,+}, scaled

  double route_difference() const { return (gamma - closed_form).cwiseAbs().maxCoeff(); }
  /// Largest singular value of the unscaled restriction; <= 1 for a state.
  double max_singular_value() const;
  double antisymmetry_residual() const { return (gamma + gamma.transpose()).cwiseAbs().maxCoeff(); }
};

FlowState flow_covariance(const RefinementSpec& spec, FineSource source = FineSource::momentum);

/// Restricts a flow computed on the refined coarse lattice Lambda_{N+outer}
/// back to Lambda_N (semigroup step). `fine_flow.spec.coarse` must equal
/// `coarse.refined(outer)`.
FlowState restrict_flow(const FlowState& fine_flow, const LatticeSpec& coarse, int outer);

/// G_M(steps * eps_N) from the momentum sum over Gamma_{N+M,+}, scaled.
double flow_two_point(const LatticeSpec& coarse, int depth, long steps, double scaling_exponent = 1.0);
/// Same in closed form: (eps_N / 4L)[csc(pi(d+h)/2L) + csc(pi(d-h)/2L)],
/// h = eps_{N+M+1}, at scaling exponent 1.
double flow_two_point_csc(const LatticeSpec& coarse, int depth, long steps);

/// omega_M(sqrt2 e_x - 1) for the coarse bond x -> x+1 of the field lattice.
double renormalized_tl_expectation(const RefinementSpec& spec, std::size_t x);

/// Three-step construction: braid e_x's legs apart until one sits on
/// Majorana y, refine by alpha^M (coarse Majorana j -> fine j 2^M, plus one
/// for left attachment), evaluate in the fine ground state. x, y index the
/// coarse Majorana lattice; y > x + 1 separates to the right, y < x to the
/// left; y = x + 1 is e_x itself. Throws std::invalid_argument for y = x and
/// std::out_of_range if the braids would cross the seam.
std::complex<double> braided_correlator(const RefinementSpec& spec, std::size_t x, std::size_t y,
                                        FineSource source = FineSource::momentum);

// ---------------------------------------------------------- scaling limit

struct AbelOptions {
  double one_minus_r = 1e-6;
  int richardson_levels = 3;  // r_j = 1 - (1-r) 2^j, j < levels
  double tail = 40.0;         // terms until r^m < e^-tail
};

/// sum_{m < count} sin((m + 1/2) theta)
double partial_sum(double theta, std::size_t count);
/// (C,1) mean of the first `count` partial sums.
double cesaro_mean(double theta, std::size_t count);
/// sum_m r^(m+1/2) sin((m+1/2) theta), truncated once r^m < e^-tail.
double abel_sum(double theta, double r, double tail = 40.0);
/// Im[r^(1/2) e^(i theta/2) / (1 - r e^(i theta))]
double abel_sum_exact(double theta, double r);
/// Richardson extrapolation of abel_sum to r -> 1.
double abel_limit(double theta, const AbelOptions& opts = {});
/// 1 / (2 sin(theta/2))
double abel_limit_exact(double theta);

/// omega_inf(psi_x psi_y) = i c S(pi d / L) with S the Abel-summed series.
/// Throws std::invalid_argument unless 0 < |d| < 2L.
std::complex<double> scaling_limit_two_point(double d, double half_length, double normalization,
                                             const AbelOptions& opts = {});
std::complex<double> scaling_limit_two_point_exact(double d, double half_length, double normalization);

/// (i eps_N / pi)(1/(d + i0) + 1/(d - i0)) = 2 i eps_N / (pi d). Throws for d = 0.
std::complex<double> infinite_volume_two_point(double d, double coarse_spacing);
/// Each i0 term alone equals the principal value, so the circle limit meets
/// the infinite-volume form divided by this factor.
inline constexpr double kPrescriptionFactor = 2.0;

/// Dimensionless normalization kappa = c L / eps_N, fitted once by least
/// squares at depth 10 over d/L in {1/8, 1/4, 1/2} and frozen.
inline constexpr double kFrozenKappa = 1.000000189;
double frozen_normalization(const LatticeSpec& coarse);

/// Least-squares c matching G_depth(steps) to c * abel_limit_exact.
double fit_normalization(const LatticeSpec& coarse, int depth, const std::vector<long>& steps);

struct ConvergenceReport {
  std::vector<int> depths;
  std::vector<double> errors;        // max_d relative error against c S
  std::vector<double> step_changes;  // max_d |G_M - G_{M-1}|, from depth 1
  double fitted_rate = 0.0;          // per-depth factor fitted to `errors`
  double step_rate = 0.0;            // per-depth factor fitted to `step_changes`
};

/// Errors are fitted over depths with error above `floor`.
ConvergenceReport flow_convergence(const LatticeSpec& coarse, const std::vector<long>& steps, int max_depth,
                                   double normalization, double floor = 1e-7);

// ------------------------------------------------------------ chirality

/// table[s][s'] = -i omega_M(psi_{s|x} psi_{s'|y}) * 2^(M s_exp), index 0 = '+',
/// 1 = '-', with psi_{+-} = (psi_x -+ psi_{x+eps})/sqrt2 after refinement.
struct ChiralTable {
  std::array<std::array<double, 2>, 2> value{};

  double cross_ratio() const;
  ChiralTable swapped() const;  // + <-> -
  double distance(const ChiralTable& o) const;
};

/// x, y are coarse field sites. Right attachment braids the partner leg
/// onto the fine site next to the anchor; left attachment braids the anchor
/// onto the site next to the partner.
ChiralTable chiral_correlators(const RefinementSpec& spec, std::size_t x, std::size_t y,
                               FineSource source = FineSource::momentum);

}  // namespace anyonrg::rg
