#pragma once

// SU(2)_k fusion-tree chains of sigma = 1/2 anyons.
//
// Labels are stored as twice the spin (0, 1, ..., k). A basis state is the
// label sequence (j_{-L}, ..., j_{L-eps}); neighbouring labels differ by
// fusion with sigma.

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace anyonrg::fusion {

using Label = int;  // twice the spin
inline constexpr Label kSigma = 1;

/// "0", "1/2", "1", "3/2", ...
std::string label_str(Label twice_j);
/// Throws std::invalid_argument on malformed text.
Label parse_label(const std::string& text);

/// sin(n pi/(k+2)) / sin(pi/(k+2)).
double quantum_integer(int k, int n);
double quantum_factorial(int k, int n);
double quantum_dimension(int k, Label a);

/// (a, b, c) obey the triangle rule, integer total spin and a+b+c <= k.
bool admissible(int k, Label a, Label b, Label c);
/// j -> j' under fusion with sigma.
bool sigma_step(int k, Label from, Label to);

/// q-deformed Wigner 6j symbol {a b e; c d f}_q; zero if a triad is
/// inadmissible.
double q6j(int k, Label a, Label b, Label e, Label c, Label d, Label f);

/// (F^{abc}_d)_{ef}: e is the channel of a x b, f the channel of b x c.
class FSymbolTable {
 public:
  FSymbolTable() = default;
  explicit FSymbolTable(int k) : k_(k) {}

  /// Unitary gauge from the q-Racah formula.
  static FSymbolTable racah(int k);
  /// {"k": int, "entries": [{"a","b","c","d","e","f": "1/2", "value": x}]}.
  /// Throws std::runtime_error on malformed input.
  static FSymbolTable from_json(const std::string& text);
  std::string to_json() const;

  int level() const { return k_; }
  /// Throws std::out_of_range for labels outside 0..k; missing entries are 0.
  double get(Label a, Label b, Label c, Label d, Label e, Label f) const;
  void set(Label a, Label b, Label c, Label d, Label e, Label f, double value);
  std::size_t size() const { return entries_.size(); }

  /// F' = u(a,b,e) u(e,c,d) / (u(b,c,f) u(a,f,d)) F, u = +-1 per vertex.
  FSymbolTable gauge_transformed(const std::function<int(Label, Label, Label)>& vertex_sign) const;

 private:
  using Key = std::array<Label, 6>;
  int k_ = 0;
  std::map<Key, double> entries_;
};

struct FusionCategoryData {
  int k = 0;
  std::vector<Label> labels;
  std::vector<double> quantum_dimensions;  // indexed by label
  FSymbolTable fsymbols;

  double d_sigma() const { return quantum_dimensions.at(kSigma); }
};

/// Throws std::invalid_argument for k < 1.
FusionCategoryData su2k(int k);
FusionCategoryData su2k(int k, FSymbolTable table);

double fsymbol(const FusionCategoryData& data, Label a, Label b, Label c, Label d, Label e, Label f);

/// Largest |F F^T - 1| over the matrices (F^{abc}_d).
double orthogonality_residual(const FusionCategoryData& data);
/// Largest pentagon-equation residual.
double pentagon_residual(const FusionCategoryData& data);

struct FixedBoundary {
  Label left;   // j_{-L}
  Label right;  // j_L
};

class FusionBasis {
 public:
  /// Periodic chain, j_L = j_{-L}.
  FusionBasis(int k, std::size_t sites);
  FusionBasis(int k, std::size_t sites, FixedBoundary boundary);

  int level() const { return k_; }
  std::size_t site_count() const { return sites_; }
  bool periodic() const { return !fixed_; }
  const std::optional<FixedBoundary>& boundary() const { return fixed_; }

  std::size_t dim() const { return states_.size(); }
  const std::vector<Label>& state(std::size_t i) const { return states_[i]; }
  std::optional<std::size_t> index(const std::vector<Label>& labels) const;

  /// Sites that carry a projector: all of them when periodic, 1..n-1 otherwise.
  std::vector<std::size_t> active_sites() const;
  Label left_of(const std::vector<Label>& s, std::size_t x) const;
  Label right_of(const std::vector<Label>& s, std::size_t x) const;

  /// Admissible walk count from the sigma transfer matrix.
  std::uint64_t transfer_matrix_count() const;

 private:
  void enumerate();

  int k_;
  std::size_t sites_;
  std::optional<FixedBoundary> fixed_;
  std::vector<std::vector<Label>> states_;
  std::map<std::vector<Label>, std::size_t> lookup_;
};

using SparseMatrix = Eigen::SparseMatrix<double>;

/// <..k_x..| P0_x |..j_x..> = F_{j_x,0} F_{k_x,0} with F = F^{j_{x-eps} s s}_{j_{x+eps}}.
/// Throws std::out_of_range for an inactive site, std::logic_error on an
/// inadmissible basis state.
SparseMatrix projector_p0(const FusionCategoryData& data, const FusionBasis& basis, std::size_t x);
/// sum_x J_x P0_x; J_0 is ignored for fixed boundaries (its label is frozen).
/// Throws std::invalid_argument unless couplings.size() == site_count.
SparseMatrix hamiltonian(const FusionCategoryData& data, const FusionBasis& basis, const std::vector<double>& couplings);

}  // namespace anyonrg::fusion
