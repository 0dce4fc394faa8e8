#pragma once

// Free-fermion realization of the critical Ising chain.
//
// At log-scale N the field lattice has spacing eps_N = 2^-N eps_0 and
// n_N = 2 l_N sites, l_N = 2^N L_0, on a circle of length 2L, L = eps_0 L_0.
// Each field site x carries the Majorana pair (psi_x, psi_{x + eps_{N+1}}),
// so the Majorana lattice has spacing eps_{N+1} and 2 n_N sites. Majorana j
// sits at -L + j eps_{N+1}; field site i owns Majoranas 2i and 2i+1.
// Boundary conditions are anti-periodic: psi_L = -psi_{-L}.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace anyonrg::majorana {

class LatticeSpec {
 public:
  /// Throws std::invalid_argument for negative scale, non-positive spacing
  /// or half-site count.
  explicit LatticeSpec(int log_scale, double base_spacing = 1.0, int base_half_sites = 1);

  int log_scale() const { return log_scale_; }
  double base_spacing() const { return base_spacing_; }
  int base_half_sites() const { return base_half_sites_; }

  double spacing() const;           // eps_N
  double majorana_spacing() const;  // eps_{N+1}
  double half_length() const { return base_spacing_ * base_half_sites_; }
  std::size_t half_sites() const;   // l_N
  std::size_t field_sites() const { return 2 * half_sites(); }
  std::size_t majorana_count() const { return 2 * field_sites(); }

  double coordinate(std::size_t majorana) const;
  double field_coordinate(std::size_t site) const;

  /// Anti-periodic positive momenta (pi/L)(m + 1/2), m < l_N.
  std::vector<double> momenta() const;

  /// Same volume, log-scale N + depth.
  LatticeSpec refined(int depth) const;

  friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;

 private:
  int log_scale_;
  double base_spacing_;
  int base_half_sites_;
};

/// Nearest-neighbour bond j -> j+1 on the Majorana ring. psi_{x+eps} equals
/// `sign * psi_right`; the sign is -1 only on the seam bond.
struct Bond {
  std::size_t left;
  std::size_t right;
  int sign;
};
Bond bond(std::size_t majorana_count, std::size_t j);

enum class BraidSign { over, inverse };
enum class Direction { left, right };

/// c * 1 + i * sum_{x<y} alpha_xy psi_x psi_y with alpha real antisymmetric.
class MajoranaQuadratic {
 public:
  explicit MajoranaQuadratic(std::size_t n, std::complex<double> constant = 0.0);
  /// Throws std::invalid_argument if alpha is not square and antisymmetric.
  MajoranaQuadratic(std::complex<double> constant, Eigen::MatrixXd alpha);

  std::size_t size() const { return static_cast<std::size_t>(alpha_.rows()); }
  std::complex<double> constant() const { return constant_; }
  const Eigen::MatrixXd& alpha() const { return alpha_; }

  /// Adds i * value * psi_x psi_y (x != y).
  void add_bilinear(std::size_t x, std::size_t y, double value);
  void add_constant(std::complex<double> c) { constant_ += c; }

  MajoranaQuadratic& operator+=(const MajoranaQuadratic& o);
  MajoranaQuadratic& operator*=(double s);

  bool is_self_adjoint() const { return constant_.imag() == 0.0; }
  MajoranaQuadratic adjoint() const;

 private:
  std::complex<double> constant_;
  Eigen::MatrixXd alpha_;
};

/// Conjugation action of a Gaussian unitary: U psi_x U* = sign(x) psi_{image(x)}.
class SignedSiteMap {
 public:
  static SignedSiteMap identity(std::size_t n);
  /// Throws std::invalid_argument unless image is a bijection with signs +-1.
  SignedSiteMap(std::vector<std::size_t> image, std::vector<int> sign);

  std::size_t size() const { return image_.size(); }
  std::size_t image(std::size_t x) const { return image_[x]; }
  int sign(std::size_t x) const { return sign_[x]; }
  /// (other after this): psi_x -> other(this(psi_x))
  SignedSiteMap then(const SignedSiteMap& other) const;
  SignedSiteMap inverse() const;

  friend bool operator==(const SignedSiteMap&, const SignedSiteMap&) = default;

 private:
  std::vector<std::size_t> image_;
  std::vector<int> sign_;
};

/// e_x = (1 + i psi_{x+eps} psi_x)/sqrt2 on Majorana bond j.
MajoranaQuadratic tl_generator(const LatticeSpec& lattice, std::size_t j);
MajoranaQuadratic tl_generator(std::size_t majorana_count, std::size_t j);
/// b_x = (i/sqrt2)(psi_{x+eps} psi_x - 1); the inverse braid is its adjoint.
MajoranaQuadratic braid_unitary(const LatticeSpec& lattice, std::size_t j, BraidSign sign);
MajoranaQuadratic braid_unitary(std::size_t majorana_count, std::size_t j, BraidSign sign);

/// Conjugation by the braid on bond j, as a signed permutation.
SignedSiteMap braid_action(std::size_t majorana_count, std::size_t j, BraidSign sign);
/// Appends conjugation by the braid on bond j to `map`.
SignedSiteMap conjugate_action(const SignedSiteMap& map, std::size_t j, BraidSign sign);
/// U q U* for the Gaussian unitary whose action is `map`.
MajoranaQuadratic conjugate(const MajoranaQuadratic& q, const SignedSiteMap& map);

struct SeparatedPair {
  SignedSiteMap action;
  MajoranaQuadratic observable;
  std::size_t first;   // Majorana indices of the separated legs
  std::size_t second;
};

/// Conjugates e_j by a chain of braids so its legs end up m Majorana steps
/// apart. Left moves psi_j through bonds j-1, j-2, ...; right moves
/// psi_{j+1} through bonds j+1, j+2, .... Throws std::out_of_range if the
/// chain would cross the seam.
SeparatedPair separate_pair(const LatticeSpec& lattice, std::size_t j, std::size_t m, Direction direction,
                            BraidSign sign = BraidSign::over);

enum class Boundary { antiperiodic, periodic };

/// H = J sum_x e_x.
MajoranaQuadratic ising_hamiltonian(std::size_t majorana_count, double coupling = 1.0,
                                    Boundary boundary = Boundary::antiperiodic);

/// Gamma_xy = -i(<psi_x psi_y> - delta_xy).
struct CovarianceState {
  LatticeSpec lattice;
  Eigen::MatrixXd gamma;

  double antisymmetry_residual() const;
  double max_singular_value() const;
  /// max |Gamma^T Gamma - 1|
  double purity_residual() const;
};

/// Gamma(j Majorana steps) from the momentum sum: (eps_N/L) sum_k sin(k d) for
/// odd j, zero for even j.
double majorana_two_point(const LatticeSpec& lattice, long steps);

/// omega(psi_x psi_y) / i for the pair field at field separation
/// x - y = steps * eps_N:
///   (eps_N / 2L) sum_k sin(k (x-y)) sin(eps_N k) / sin(eps_N k / 2).
double field_two_point(const LatticeSpec& lattice, long steps);

CovarianceState ground_state_momentum(const LatticeSpec& lattice);

struct BogoliubovResult {
  CovarianceState state;
  double energy = 0.0;
  std::vector<double> mode_energies;  // eigenvalues of i*alpha, ascending
};

/// Diagonalizes i*alpha of H and fills the negative modes. Throws
/// std::runtime_error if a zero mode below `zero_tol` is found.
BogoliubovResult bogoliubov(const LatticeSpec& lattice, const MajoranaQuadratic& hamiltonian,
                            double zero_tol = 1e-10);
CovarianceState ground_state_bogoliubov(const LatticeSpec& lattice, double coupling = 1.0);

/// Exact ground energy per Majorana of the infinite chain at J = 1:
/// 1/sqrt2 - sqrt2/pi.
double ising_energy_density_limit();

/// <psi_{i1} ... psi_{ik}> by Wick's theorem; indices may repeat and come
/// in any order.
std::complex<double> expect_string(const CovarianceState& state, std::vector<std::size_t> indices);
std::complex<double> expect(const CovarianceState& state, const MajoranaQuadratic& q);
/// <q1 q2>
std::complex<double> expect_product(const CovarianceState& state, const MajoranaQuadratic& q1,
                                    const MajoranaQuadratic& q2);

/// Pfaffian of a complex antisymmetric matrix (Parlett-Reid elimination).
std::complex<double> pfaffian(Eigen::MatrixXcd m);

}  // namespace anyonrg::majorana
