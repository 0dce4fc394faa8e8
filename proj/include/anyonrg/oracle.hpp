#pragma once

// Brute-force Jordan-Wigner representation. n Majoranas act on n/2 qubits:
//   psi_{2j} = Z_0 ... Z_{j-1} X_j,   psi_{2j+1} = Z_0 ... Z_{j-1} Y_j.
// Qubit j is bit j of the basis index. Fermion parity is prod Z_j.

#include "anyonrg/majorana.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace anyonrg::oracle {

inline constexpr std::size_t kMaxMajoranas = 24;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

/// i^phase * (letter_0 (x) letter_1 (x) ...).
class PauliString {
 public:
  explicit PauliString(std::size_t qubits, int phase = 0);
  PauliString(std::vector<Pauli> letters, int phase);

  std::size_t qubits() const { return letters_.size(); }
  Pauli letter(std::size_t q) const { return letters_[q]; }
  int phase() const { return phase_; }  // exponent of i, in 0..3
  std::complex<double> coefficient() const;

  PauliString operator*(const PauliString& o) const;
  PauliString scaled_by_i(int power) const;
  bool commutes_with(const PauliString& o) const;

  std::uint32_t flip_mask() const;   // X or Y
  std::uint32_t sign_mask() const;   // Z or Y

  /// <target| P |basis> is nonzero only for target = basis ^ flip_mask.
  std::complex<double> amplitude(std::uint32_t basis) const;

  std::string str() const;
  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::vector<Pauli> letters_;
  int phase_;
};

/// Throws std::invalid_argument for odd, zero or oversized n.
std::vector<PauliString> jordan_wigner(std::size_t majorana_count);

struct PauliTerm {
  std::complex<double> weight;
  PauliString string;
};
using PauliSum = std::vector<PauliTerm>;

/// c * 1 + i sum_{x<y} alpha_xy psi_x psi_y expanded in Pauli strings.
PauliSum to_pauli_sum(const majorana::MajoranaQuadratic& q);

class DenseOperator {
 public:
  DenseOperator(std::size_t qubits, Eigen::MatrixXcd matrix);
  static DenseOperator identity(std::size_t qubits);

  std::size_t qubits() const { return qubits_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

  DenseOperator operator*(const DenseOperator& o) const;
  DenseOperator operator+(const DenseOperator& o) const;
  DenseOperator operator-(const DenseOperator& o) const;
  DenseOperator operator*(std::complex<double> s) const;
  DenseOperator adjoint() const;

  double max_abs() const;
  double distance(const DenseOperator& o) const { return (*this - o).max_abs(); }

 private:
  std::size_t qubits_;
  Eigen::MatrixXcd matrix_;
};

DenseOperator build(const PauliString& p);
DenseOperator build(const PauliSum& sum, std::size_t qubits);
DenseOperator build(const majorana::MajoranaQuadratic& q);
DenseOperator build_majorana(std::size_t majorana_count, std::size_t a);
/// e_{j1} e_{j2} ... in operator order (leftmost acts last).
DenseOperator build_tl_word(std::size_t majorana_count, const std::vector<std::size_t>& bonds);
DenseOperator build_braid_word(std::size_t majorana_count,
                               const std::vector<std::pair<std::size_t, majorana::BraidSign>>& word);

struct GroundState {
  double energy = 0.0;
  double gap = 0.0;             // to the next distinct level
  std::size_t degeneracy = 0;   // number of levels within tolerance of the minimum
  int parity = 0;               // +1 / -1 when unique
  Eigen::VectorXcd vector;      // empty unless unique
  Eigen::MatrixXd covariance;   // Gamma, empty unless unique

  bool unique() const { return degeneracy == 1; }
};

/// Lowest eigenpair of a Hermitian operator. Degenerate ground spaces are
/// reported in `degeneracy` and leave vector/covariance empty. `majorana_count`
/// enables the covariance (pass 0 to skip it).
GroundState ground_state(const DenseOperator& h, std::size_t majorana_count, double tol = 1e-9);

/// Same, for a quadratic Hamiltonian, via the two parity blocks without
/// ever forming the full matrix.
GroundState ground_state(const majorana::MajoranaQuadratic& h, double tol = 1e-9);

/// Full spectrum of the parity sector (+1 even, -1 odd), ascending.
std::vector<double> parity_spectrum(const majorana::MajoranaQuadratic& h, int parity);

/// Gamma_ab = -i <v| psi_a psi_b |v> for a != b.
Eigen::MatrixXd covariance(const Eigen::VectorXcd& state, std::size_t majorana_count);

}  // namespace anyonrg::oracle
