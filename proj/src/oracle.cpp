#include "anyonrg/oracle.hpp"

#include "anyonrg/parallel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace anyonrg::oracle {

using cplx = std::complex<double>;

namespace {

cplx i_power(int p) {
  switch (((p % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// sigma_a sigma_b = i^phase sigma_c
std::pair<Pauli, int> letter_product(Pauli a, Pauli b) {
  if (a == Pauli::I) return {b, 0};
  if (b == Pauli::I) return {a, 0};
  if (a == b) return {Pauli::I, 0};
  const int ai = static_cast<int>(a), bi = static_cast<int>(b);
  const auto c = static_cast<Pauli>(6 - ai - bi);
  // cyclic X->Y->Z gives +i
  const bool cyclic = (bi - ai + 3) % 3 == 1;
  return {c, cyclic ? 1 : 3};
}

std::size_t check_count(std::size_t n) {
  if (n == 0 || n % 2 == 1) throw std::invalid_argument("oracle: Majorana count must be even and positive");
  if (n > kMaxMajoranas) throw std::invalid_argument("oracle: Majorana count above the dense-size cap");
  return n / 2;
}

}  // namespace

// --------------------------------------------------------------- Pauli

PauliString::PauliString(std::size_t qubits, int phase) : letters_(qubits, Pauli::I), phase_(((phase % 4) + 4) % 4) {
  if (qubits > 32) throw std::invalid_argument("PauliString: at most 32 qubits");
}

PauliString::PauliString(std::vector<Pauli> letters, int phase)
    : letters_(std::move(letters)), phase_(((phase % 4) + 4) % 4) {
  if (letters_.size() > 32) throw std::invalid_argument("PauliString: at most 32 qubits");
}

cplx PauliString::coefficient() const { return i_power(phase_); }

PauliString PauliString::operator*(const PauliString& o) const {
  if (o.qubits() != qubits()) throw std::invalid_argument("PauliString: qubit count mismatch");
  std::vector<Pauli> out(qubits());
  int phase = phase_ + o.phase_;
  for (std::size_t q = 0; q < qubits(); ++q) {
    const auto [c, p] = letter_product(letters_[q], o.letters_[q]);
    out[q] = c;
    phase += p;
  }
  return PauliString(std::move(out), phase);
}

PauliString PauliString::scaled_by_i(int power) const { return PauliString(letters_, phase_ + power); }

bool PauliString::commutes_with(const PauliString& o) const {
  int clashes = 0;
  for (std::size_t q = 0; q < qubits(); ++q) {
    if (letters_[q] != Pauli::I && o.letters_[q] != Pauli::I && letters_[q] != o.letters_[q]) ++clashes;
  }
  return clashes % 2 == 0;
}

std::uint32_t PauliString::flip_mask() const {
  std::uint32_t m = 0;
  for (std::size_t q = 0; q < qubits(); ++q) {
    if (letters_[q] == Pauli::X || letters_[q] == Pauli::Y) m |= 1u << q;
  }
  return m;
}

std::uint32_t PauliString::sign_mask() const {
  std::uint32_t m = 0;
  for (std::size_t q = 0; q < qubits(); ++q) {
    if (letters_[q] == Pauli::Z || letters_[q] == Pauli::Y) m |= 1u << q;
  }
  return m;
}

cplx PauliString::amplitude(std::uint32_t basis) const {
  int ys = 0;
  for (Pauli l : letters_) ys += l == Pauli::Y;
  const int flips = std::popcount(basis & sign_mask());
  return i_power(phase_ + ys + 2 * flips);
}

std::string PauliString::str() const {
  static const char* kPhase[] = {"+", "+i", "-", "-i"};
  std::string s = kPhase[phase_];
  for (Pauli l : letters_) s += "IXYZ"[static_cast<int>(l)];
  return s;
}

std::vector<PauliString> jordan_wigner(std::size_t n) {
  const std::size_t qubits = check_count(n);
  std::vector<PauliString> out;
  out.reserve(n);
  for (std::size_t j = 0; j < qubits; ++j) {
    std::vector<Pauli> letters(qubits, Pauli::I);
    for (std::size_t q = 0; q < j; ++q) letters[q] = Pauli::Z;
    letters[j] = Pauli::X;
    out.emplace_back(letters, 0);
    letters[j] = Pauli::Y;
    out.emplace_back(std::move(letters), 0);
  }
  return out;
}

PauliSum to_pauli_sum(const majorana::MajoranaQuadratic& q) {
  const std::size_t n = q.size();
  const auto psi = jordan_wigner(n);
  PauliSum sum;
  if (q.constant() != cplx(0.0)) sum.push_back({q.constant(), PauliString(n / 2)});
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      const double a = q.alpha()(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
      if (a != 0.0) sum.push_back({a, (psi[x] * psi[y]).scaled_by_i(1)});
    }
  }
  return sum;
}

// -------------------------------------------------------------- dense

DenseOperator::DenseOperator(std::size_t qubits, Eigen::MatrixXcd matrix) : qubits_(qubits), matrix_(std::move(matrix)) {
  const Eigen::Index dim = Eigen::Index{1} << qubits;
  if (matrix_.rows() != dim || matrix_.cols() != dim) throw std::invalid_argument("DenseOperator: wrong dimension");
}

DenseOperator DenseOperator::identity(std::size_t qubits) {
  const Eigen::Index dim = Eigen::Index{1} << qubits;
  return DenseOperator(qubits, Eigen::MatrixXcd::Identity(dim, dim));
}

DenseOperator DenseOperator::operator*(const DenseOperator& o) const {
  if (o.qubits_ != qubits_) throw std::invalid_argument("DenseOperator: size mismatch");
  return DenseOperator(qubits_, matrix_ * o.matrix_);
}

DenseOperator DenseOperator::operator+(const DenseOperator& o) const {
  if (o.qubits_ != qubits_) throw std::invalid_argument("DenseOperator: size mismatch");
  return DenseOperator(qubits_, matrix_ + o.matrix_);
}

DenseOperator DenseOperator::operator-(const DenseOperator& o) const {
  if (o.qubits_ != qubits_) throw std::invalid_argument("DenseOperator: size mismatch");
  return DenseOperator(qubits_, matrix_ - o.matrix_);
}

DenseOperator DenseOperator::operator*(cplx s) const { return DenseOperator(qubits_, matrix_ * s); }

DenseOperator DenseOperator::adjoint() const { return DenseOperator(qubits_, matrix_.adjoint()); }

double DenseOperator::max_abs() const { return matrix_.cwiseAbs().maxCoeff(); }

DenseOperator build(const PauliString& p) {
  const Eigen::Index dim = Eigen::Index{1} << p.qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  const std::uint32_t flip = p.flip_mask();
  for (Eigen::Index b = 0; b < dim; ++b) {
    const auto ub = static_cast<std::uint32_t>(b);
    m(static_cast<Eigen::Index>(ub ^ flip), b) = p.amplitude(ub);
  }
  return DenseOperator(p.qubits(), std::move(m));
}

DenseOperator build(const PauliSum& sum, std::size_t qubits) {
  const Eigen::Index dim = Eigen::Index{1} << qubits;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : sum) {
    if (t.string.qubits() != qubits) throw std::invalid_argument("build: qubit count mismatch");
    const std::uint32_t flip = t.string.flip_mask();
    for (Eigen::Index b = 0; b < dim; ++b) {
      const auto ub = static_cast<std::uint32_t>(b);
      m(static_cast<Eigen::Index>(ub ^ flip), b) += t.weight * t.string.amplitude(ub);
    }
  }
  return DenseOperator(qubits, std::move(m));
}

DenseOperator build(const majorana::MajoranaQuadratic& q) {
  const std::size_t qubits = check_count(q.size());
  return build(to_pauli_sum(q), qubits);
}

DenseOperator build_majorana(std::size_t n, std::size_t a) {
  const auto psi = jordan_wigner(n);
  if (a >= n) throw std::out_of_range("build_majorana: index out of range");
  return build(psi[a]);
}

DenseOperator build_tl_word(std::size_t n, const std::vector<std::size_t>& bonds) {
  DenseOperator out = DenseOperator::identity(check_count(n));
  for (std::size_t j : bonds) out = out * build(majorana::tl_generator(n, j));
  return out;
}

DenseOperator build_braid_word(std::size_t n, const std::vector<std::pair<std::size_t, majorana::BraidSign>>& word) {
  DenseOperator out = DenseOperator::identity(check_count(n));
  for (const auto& [j, s] : word) out = out * build(majorana::braid_unitary(n, j, s));
  return out;
}

// -------------------------------------------------------- eigensolves

namespace {

struct Eigenpairs {
  std::vector<double> values;
  Eigen::MatrixXcd vectors;  // columns
};

Eigenpairs lowest(Eigen::MatrixXd a, int count, bool want_vectors) {
  const auto n = static_cast<lapack_int>(a.rows());
  count = std::min<int>(count, n);
  std::vector<double> w(static_cast<std::size_t>(n));
  Eigen::MatrixXd z(n, want_vectors ? count : 1);
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(std::max(count, 1)));
  lapack_int found = 0;
  const lapack_int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', count == n ? 'A' : 'I', 'U', n,
                                         a.data(), n, 0.0, 0.0, 1, count, 0.0, &found, w.data(), z.data(), n,
                                         support.data());
  if (info != 0) throw std::runtime_error("oracle: dsyevr failed");
  Eigenpairs out;
  out.values.assign(w.begin(), w.begin() + found);
  if (want_vectors) out.vectors = z.leftCols(found).cast<cplx>();
  return out;
}

Eigenpairs lowest(Eigen::MatrixXcd a, int count, bool want_vectors) {
  const auto n = static_cast<lapack_int>(a.rows());
  count = std::min<int>(count, n);
  std::vector<double> w(static_cast<std::size_t>(n));
  Eigen::MatrixXcd z(n, want_vectors ? count : 1);
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(std::max(count, 1)));
  lapack_int found = 0;
  const lapack_int info = LAPACKE_zheevr(LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', count == n ? 'A' : 'I', 'U', n,
                                         a.data(), n, 0.0, 0.0, 1, count, 0.0, &found, w.data(), z.data(), n,
                                         support.data());
  if (info != 0) throw std::runtime_error("oracle: zheevr failed");
  Eigenpairs out;
  out.values.assign(w.begin(), w.begin() + found);
  if (want_vectors) out.vectors = z.leftCols(found);
  return out;
}

constexpr int kLevels = 4;

struct ParityBlock {
  std::vector<std::uint32_t> states;
  std::vector<std::uint32_t> index;  // full basis -> position in block
};

ParityBlock parity_block(std::size_t qubits, int parity) {
  ParityBlock blk;
  const std::uint32_t dim = 1u << qubits;
  blk.index.assign(dim, std::numeric_limits<std::uint32_t>::max());
  for (std::uint32_t b = 0; b < dim; ++b) {
    const int p = std::popcount(b) % 2 == 0 ? 1 : -1;
    if (p == parity) {
      blk.index[b] = static_cast<std::uint32_t>(blk.states.size());
      blk.states.push_back(b);
    }
  }
  return blk;
}

Eigen::MatrixXcd block_matrix(const PauliSum& sum, const ParityBlock& blk) {
  const auto dim = static_cast<Eigen::Index>(blk.states.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : sum) {
    const std::uint32_t flip = t.string.flip_mask();
    if (std::popcount(flip) % 2 != 0) throw std::invalid_argument("oracle: Hamiltonian does not conserve parity");
    for (Eigen::Index c = 0; c < dim; ++c) {
      const std::uint32_t b = blk.states[static_cast<std::size_t>(c)];
      m(static_cast<Eigen::Index>(blk.index[b ^ flip]), c) += t.weight * t.string.amplitude(b);
    }
  }
  return m;
}

Eigenpairs solve_block(const Eigen::MatrixXcd& m, int count, bool want_vectors) {
  if (m.imag().cwiseAbs().maxCoeff() == 0.0) return lowest(Eigen::MatrixXd(m.real()), count, want_vectors);
  return lowest(m, count, want_vectors);
}

void classify(GroundState& gs, std::vector<double> levels, double tol) {
  std::sort(levels.begin(), levels.end());
  gs.energy = levels.front();
  gs.degeneracy = 0;
  gs.gap = std::numeric_limits<double>::infinity();
  for (double e : levels) {
    if (e - gs.energy <= tol) {
      ++gs.degeneracy;
    } else {
      gs.gap = e - gs.energy;
      break;
    }
  }
}

}  // namespace

Eigen::MatrixXd covariance(const Eigen::VectorXcd& v, std::size_t n) {
  const auto psi = jordan_wigner(n);
  if (v.size() != (Eigen::Index{1} << (n / 2))) throw std::invalid_argument("covariance: state dimension mismatch");
  const auto ni = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(ni, ni);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  }
  std::vector<double> values(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t p) {
    const PauliString s = psi[pairs[p].first] * psi[pairs[p].second];
    const std::uint32_t flip = s.flip_mask();
    cplx acc = 0.0;
    for (Eigen::Index b = 0; b < v.size(); ++b) {
      const auto ub = static_cast<std::uint32_t>(b);
      acc += std::conj(v(static_cast<Eigen::Index>(ub ^ flip))) * s.amplitude(ub) * v(b);
    }
    values[p] = (cplx(0.0, -1.0) * acc).real();
  });
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto a = static_cast<Eigen::Index>(pairs[p].first), b = static_cast<Eigen::Index>(pairs[p].second);
    gamma(a, b) = values[p];
    gamma(b, a) = -values[p];
  }
  return gamma;
}

GroundState ground_state(const DenseOperator& h, std::size_t n, double tol) {
  if ((h.matrix() - h.matrix().adjoint()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, h.max_abs())) {
    throw std::invalid_argument("ground_state: operator is not Hermitian");
  }
  Eigenpairs ep = lowest(h.matrix(), kLevels, true);
  GroundState gs;
  classify(gs, ep.values, tol);
  if (!gs.unique()) return gs;
  gs.vector = ep.vectors.col(0);
  double parity = 0.0;
  for (Eigen::Index b = 0; b < gs.vector.size(); ++b) {
    parity += std::norm(gs.vector(b)) * (std::popcount(static_cast<std::uint32_t>(b)) % 2 == 0 ? 1.0 : -1.0);
  }
  gs.parity = parity > 0.5 ? 1 : (parity < -0.5 ? -1 : 0);
  if (n > 0) gs.covariance = covariance(gs.vector, n);
  return gs;
}

GroundState ground_state(const majorana::MajoranaQuadratic& h, double tol) {
  const std::size_t n = h.size();
  const std::size_t qubits = check_count(n);
  if (h.constant().imag() != 0.0) throw std::invalid_argument("ground_state: Hamiltonian is not self-adjoint");
  const PauliSum sum = to_pauli_sum(h);

  std::vector<double> levels;
  Eigenpairs best;
  int best_parity = 0;
  ParityBlock best_block;
  for (int parity : {1, -1}) {
    ParityBlock blk = parity_block(qubits, parity);
    Eigenpairs ep = solve_block(block_matrix(sum, blk), kLevels, true);
    levels.insert(levels.end(), ep.values.begin(), ep.values.end());
    if (best_parity == 0 || ep.values.front() < best.values.front()) {
      best = std::move(ep);
      best_parity = parity;
      best_block = std::move(blk);
    }
  }
  GroundState gs;
  classify(gs, levels, tol);
  if (!gs.unique()) return gs;
  gs.parity = best_parity;
  gs.vector = Eigen::VectorXcd::Zero(Eigen::Index{1} << qubits);
  for (std::size_t c = 0; c < best_block.states.size(); ++c) {
    gs.vector(static_cast<Eigen::Index>(best_block.states[c])) = best.vectors(static_cast<Eigen::Index>(c), 0);
  }
  gs.covariance = covariance(gs.vector, n);
  return gs;
}

std::vector<double> parity_spectrum(const majorana::MajoranaQuadratic& h, int parity) {
  if (parity != 1 && parity != -1) throw std::invalid_argument("parity_spectrum: parity must be +1 or -1");
  const std::size_t qubits = check_count(h.size());
  const ParityBlock blk = parity_block(qubits, parity);
  const auto dim = static_cast<int>(blk.states.size());
  return solve_block(block_matrix(to_pauli_sum(h), blk), dim, false).values;
}

}  // namespace anyonrg::oracle
