#include "anyonrg/majorana.hpp"

#include "anyonrg/kernels.hpp"
#include "anyonrg/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace anyonrg::majorana {

using cplx = std::complex<double>;

// ------------------------------------------------------------ lattice

LatticeSpec::LatticeSpec(int log_scale, double base_spacing, int base_half_sites)
    : log_scale_(log_scale), base_spacing_(base_spacing), base_half_sites_(base_half_sites) {
  if (log_scale < 0 || log_scale > 40) throw std::invalid_argument("LatticeSpec: log-scale out of range");
  if (!(base_spacing > 0.0)) throw std::invalid_argument("LatticeSpec: base spacing must be positive");
  if (base_half_sites < 1) throw std::invalid_argument("LatticeSpec: base half-length must be >= 1 site");
}

double LatticeSpec::spacing() const { return std::ldexp(base_spacing_, -log_scale_); }
double LatticeSpec::majorana_spacing() const { return std::ldexp(base_spacing_, -log_scale_ - 1); }
std::size_t LatticeSpec::half_sites() const { return static_cast<std::size_t>(base_half_sites_) << log_scale_; }

double LatticeSpec::coordinate(std::size_t majorana) const {
  return -half_length() + static_cast<double>(majorana) * majorana_spacing();
}

double LatticeSpec::field_coordinate(std::size_t site) const {
  return -half_length() + static_cast<double>(site) * spacing();
}

std::vector<double> LatticeSpec::momenta() const {
  const std::size_t l = half_sites();
  std::vector<double> k(l);
  for (std::size_t m = 0; m < l; ++m) k[m] = std::numbers::pi / half_length() * (static_cast<double>(m) + 0.5);
  return k;
}

LatticeSpec LatticeSpec::refined(int depth) const {
  if (depth < 0) throw std::invalid_argument("LatticeSpec::refined: negative depth");
  return LatticeSpec(log_scale_ + depth, base_spacing_, base_half_sites_);
}

Bond bond(std::size_t majorana_count, std::size_t j) {
  if (majorana_count < 2 || j >= majorana_count) throw std::out_of_range("bond: index out of range");
  if (j + 1 == majorana_count) return {j, 0, -1};
  return {j, j + 1, +1};
}

// ------------------------------------------------------ quadratic forms

MajoranaQuadratic::MajoranaQuadratic(std::size_t n, cplx constant)
    : constant_(constant), alpha_(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))) {}

MajoranaQuadratic::MajoranaQuadratic(cplx constant, Eigen::MatrixXd alpha)
    : constant_(constant), alpha_(std::move(alpha)) {
  if (alpha_.rows() != alpha_.cols()) throw std::invalid_argument("MajoranaQuadratic: alpha must be square");
  if ((alpha_ + alpha_.transpose()).cwiseAbs().maxCoeff() != 0.0) {
    throw std::invalid_argument("MajoranaQuadratic: alpha must be exactly antisymmetric");
  }
}

void MajoranaQuadratic::add_bilinear(std::size_t x, std::size_t y, double value) {
  if (x == y) throw std::invalid_argument("add_bilinear: coincident indices");
  if (x >= size() || y >= size()) throw std::out_of_range("add_bilinear: index out of range");
  const auto xi = static_cast<Eigen::Index>(x), yi = static_cast<Eigen::Index>(y);
  alpha_(xi, yi) += value;
  alpha_(yi, xi) -= value;
}

MajoranaQuadratic& MajoranaQuadratic::operator+=(const MajoranaQuadratic& o) {
  if (o.size() != size()) throw std::invalid_argument("MajoranaQuadratic: size mismatch");
  constant_ += o.constant_;
  alpha_ += o.alpha_;
  return *this;
}

MajoranaQuadratic& MajoranaQuadratic::operator*=(double s) {
  constant_ *= s;
  alpha_ *= s;
  return *this;
}

MajoranaQuadratic MajoranaQuadratic::adjoint() const {
  // (i a psi_x psi_y)* = -i a psi_y psi_x = i a psi_x psi_y for x != y
  return MajoranaQuadratic(std::conj(constant_), alpha_);
}

// --------------------------------------------------------- signed maps

SignedSiteMap SignedSiteMap::identity(std::size_t n) {
  std::vector<std::size_t> image(n);
  for (std::size_t i = 0; i < n; ++i) image[i] = i;
  return SignedSiteMap(std::move(image), std::vector<int>(n, 1));
}

SignedSiteMap::SignedSiteMap(std::vector<std::size_t> image, std::vector<int> sign)
    : image_(std::move(image)), sign_(std::move(sign)) {
  if (image_.size() != sign_.size()) throw std::invalid_argument("SignedSiteMap: size mismatch");
  std::vector<char> hit(image_.size(), 0);
  for (std::size_t i = 0; i < image_.size(); ++i) {
    if (image_[i] >= image_.size() || hit[image_[i]]) throw std::invalid_argument("SignedSiteMap: not a bijection");
    hit[image_[i]] = 1;
    if (sign_[i] != 1 && sign_[i] != -1) throw std::invalid_argument("SignedSiteMap: signs must be +-1");
  }
}

SignedSiteMap SignedSiteMap::then(const SignedSiteMap& other) const {
  if (other.size() != size()) throw std::invalid_argument("SignedSiteMap: size mismatch");
  std::vector<std::size_t> image(size());
  std::vector<int> sign(size());
  for (std::size_t x = 0; x < size(); ++x) {
    image[x] = other.image_[image_[x]];
    sign[x] = sign_[x] * other.sign_[image_[x]];
  }
  return SignedSiteMap(std::move(image), std::move(sign));
}

SignedSiteMap SignedSiteMap::inverse() const {
  std::vector<std::size_t> image(size());
  std::vector<int> sign(size());
  for (std::size_t x = 0; x < size(); ++x) {
    image[image_[x]] = x;
    sign[image_[x]] = sign_[x];
  }
  return SignedSiteMap(std::move(image), std::move(sign));
}

// ------------------------------------------------- generators and braids

MajoranaQuadratic tl_generator(std::size_t n, std::size_t j) {
  const Bond b = bond(n, j);
  MajoranaQuadratic e(n, 1.0 / std::numbers::sqrt2);
  // i psi_{x+eps} psi_x = i sign psi_right psi_left
  e.add_bilinear(b.right, b.left, b.sign / std::numbers::sqrt2);
  return e;
}

MajoranaQuadratic tl_generator(const LatticeSpec& lattice, std::size_t j) {
  return tl_generator(lattice.majorana_count(), j);
}

MajoranaQuadratic braid_unitary(std::size_t n, std::size_t j, BraidSign sign) {
  // b = (i/sqrt2)(psi_{x+eps} psi_x - 1) = (i psi_{x+eps} psi_x - i)/sqrt2... with the
  // bilinear written as i*(1/sqrt2)*psi_{x+eps} psi_x times i: see below.
  const Bond b = bond(n, j);
  MajoranaQuadratic u(n, cplx(0.0, -1.0 / std::numbers::sqrt2));
  // (i/sqrt2) psi_{x+eps} psi_x = i * (sign/sqrt2) psi_right psi_left
  u.add_bilinear(b.right, b.left, b.sign / std::numbers::sqrt2);
  return sign == BraidSign::over ? u : u.adjoint();
}

MajoranaQuadratic braid_unitary(const LatticeSpec& lattice, std::size_t j, BraidSign sign) {
  return braid_unitary(lattice.majorana_count(), j, sign);
}

SignedSiteMap braid_action(std::size_t n, std::size_t j, BraidSign sign) {
  // b psi_x b* = -psi_{x+eps},  b psi_{x+eps} b* = psi_x; the inverse braid
  // puts the minus sign on the other leg.
  const Bond b = bond(n, j);
  std::vector<std::size_t> image(n);
  std::vector<int> s(n, 1);
  for (std::size_t i = 0; i < n; ++i) image[i] = i;
  image[b.left] = b.right;
  image[b.right] = b.left;
  if (sign == BraidSign::over) {
    s[b.left] = -b.sign;
    s[b.right] = b.sign;
  } else {
    s[b.left] = b.sign;
    s[b.right] = -b.sign;
  }
  return SignedSiteMap(std::move(image), std::move(s));
}

SignedSiteMap conjugate_action(const SignedSiteMap& map, std::size_t j, BraidSign sign) {
  return map.then(braid_action(map.size(), j, sign));
}

MajoranaQuadratic conjugate(const MajoranaQuadratic& q, const SignedSiteMap& map) {
  if (map.size() != q.size()) throw std::invalid_argument("conjugate: size mismatch");
  const auto n = static_cast<Eigen::Index>(q.size());
  Eigen::MatrixXd alpha = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index x = 0; x < n; ++x) {
    for (Eigen::Index y = 0; y < n; ++y) {
      const double a = q.alpha()(x, y);
      if (a == 0.0) continue;
      const auto ux = static_cast<std::size_t>(x), uy = static_cast<std::size_t>(y);
      alpha(static_cast<Eigen::Index>(map.image(ux)), static_cast<Eigen::Index>(map.image(uy))) +=
          a * map.sign(ux) * map.sign(uy);
    }
  }
  return MajoranaQuadratic(q.constant(), std::move(alpha));
}

SeparatedPair separate_pair(const LatticeSpec& lattice, std::size_t j, std::size_t m, Direction direction,
                            BraidSign sign) {
  const std::size_t n = lattice.majorana_count();
  if (m < 1) throw std::invalid_argument("separate_pair: distance must be >= 1 step");
  if (j >= n) throw std::out_of_range("separate_pair: site out of range");
  const Bond home = bond(n, j);
  SignedSiteMap action = SignedSiteMap::identity(n);
  std::size_t first = home.left, second = home.right;
  if (direction == Direction::left) {
    if (m - 1 > j) throw std::out_of_range("separate_pair: braid chain wraps the chain");
    for (std::size_t s = 1; s < m; ++s) action = conjugate_action(action, j - s, sign);
    first = j - (m - 1);
  } else {
    if (home.sign < 0 || j + m > n - 1) throw std::out_of_range("separate_pair: braid chain wraps the chain");
    for (std::size_t s = 1; s < m; ++s) action = conjugate_action(action, j + s, sign);
    second = j + m;
  }
  return {action, conjugate(tl_generator(n, j), action), first, second};
}

MajoranaQuadratic ising_hamiltonian(std::size_t n, double coupling, Boundary boundary) {
  MajoranaQuadratic h(n);
  for (std::size_t j = 0; j < n; ++j) {
    MajoranaQuadratic e = tl_generator(n, j);
    if (boundary == Boundary::periodic && j + 1 == n) {
      // drop the seam sign
      e = MajoranaQuadratic(e.constant(), -e.alpha());
    }
    h += e;
  }
  h *= coupling;
  return h;
}

// ---------------------------------------------------------- covariance

double CovarianceState::antisymmetry_residual() const {
  return (gamma + gamma.transpose()).cwiseAbs().maxCoeff();
}

double CovarianceState::max_singular_value() const {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(gamma);
  return svd.singularValues()(0);
}

double CovarianceState::purity_residual() const {
  const auto n = gamma.rows();
  return (gamma.transpose() * gamma - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
}

double majorana_two_point(const LatticeSpec& lattice, long steps) {
  if (steps % 2 == 0) return 0.0;
  const double d = static_cast<double>(steps) * lattice.majorana_spacing();
  const double L = lattice.half_length();
  return lattice.spacing() / L * kernels::half_sine_sum(lattice.half_sites(), std::numbers::pi * d / L);
}

double field_two_point(const LatticeSpec& lattice, long steps) {
  const double eps = lattice.spacing();
  const double L = lattice.half_length();
  const std::vector<double> k = lattice.momenta();
  std::vector<double> w(k.size());
  for (std::size_t m = 0; m < k.size(); ++m) w[m] = std::sin(eps * k[m]) / std::sin(0.5 * eps * k[m]);
  const double d = static_cast<double>(steps) * eps;
  return eps / (2.0 * L) * kernels::half_sine_series(w, std::numbers::pi * d / L);
}

CovarianceState ground_state_momentum(const LatticeSpec& lattice) {
  const std::size_t n = lattice.majorana_count();
  std::vector<double> profile(n, 0.0);
  parallel_for(n, [&](std::size_t j) { profile[j] = majorana_two_point(lattice, static_cast<long>(j)); });
  const auto ni = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd gamma(ni, ni);
  for (Eigen::Index a = 0; a < ni; ++a) {
    for (Eigen::Index b = 0; b < ni; ++b) {
      gamma(a, b) = a >= b ? profile[static_cast<std::size_t>(a - b)] : -profile[static_cast<std::size_t>(b - a)];
    }
  }
  return {lattice, std::move(gamma)};
}

BogoliubovResult bogoliubov(const LatticeSpec& lattice, const MajoranaQuadratic& hamiltonian, double zero_tol) {
  if (hamiltonian.size() != lattice.majorana_count()) throw std::invalid_argument("bogoliubov: size mismatch");
  const Eigen::MatrixXcd h = cplx(0.0, 1.0) * hamiltonian.alpha().cast<cplx>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("bogoliubov: eigensolver failed");
  const Eigen::VectorXd& lambda = es.eigenvalues();
  if (lambda.cwiseAbs().minCoeff() < zero_tol) {
    throw std::runtime_error("bogoliubov: zero mode in the single-particle spectrum (boundary sign?)");
  }
  const Eigen::MatrixXcd& v = es.eigenvectors();
  const Eigen::MatrixXcd s = v * lambda.array().sign().matrix().cast<cplx>().asDiagonal() * v.adjoint();
  // <psi psi^T> = 1 - sign(h)^T, so Gamma = i sign(h)^T
  const Eigen::MatrixXd gamma = (cplx(0.0, 1.0) * s.transpose()).real();

  BogoliubovResult out{{lattice, gamma}, 0.0, {}};
  out.energy = hamiltonian.constant().real() - 0.5 * lambda.cwiseAbs().sum();
  out.mode_energies.assign(lambda.data(), lambda.data() + lambda.size());
  return out;
}

CovarianceState ground_state_bogoliubov(const LatticeSpec& lattice, double coupling) {
  if (!(coupling > 0.0)) throw std::invalid_argument("ground_state_bogoliubov: coupling must be positive");
  return bogoliubov(lattice, ising_hamiltonian(lattice.majorana_count(), coupling)).state;
}

double ising_energy_density_limit() { return 1.0 / std::numbers::sqrt2 - std::numbers::sqrt2 / std::numbers::pi; }

// ----------------------------------------------------------------- Wick

std::complex<double> pfaffian(Eigen::MatrixXcd a) {
  const Eigen::Index n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("pfaffian: matrix must be square");
  if (n % 2 == 1) return 0.0;
  cplx pf = 1.0;
  for (Eigen::Index k = 0; k + 1 < n; k += 2) {
    Eigen::Index kp = k + 1;
    double best = std::abs(a(k + 1, k));
    for (Eigen::Index i = k + 2; i < n; ++i) {
      if (std::abs(a(i, k)) > best) {
        best = std::abs(a(i, k));
        kp = i;
      }
    }
    if (kp != k + 1) {
      a.row(k + 1).swap(a.row(kp));
      a.col(k + 1).swap(a.col(kp));
      pf = -pf;
    }
    if (a(k + 1, k) == cplx(0.0)) return 0.0;
    pf *= a(k, k + 1);
    if (k + 2 < n) {
      const Eigen::Index rest = n - k - 2;
      const Eigen::VectorXcd tau = a.row(k).segment(k + 2, rest).transpose() / a(k, k + 1);
      const Eigen::VectorXcd col = a.col(k + 1).segment(k + 2, rest);
      a.block(k + 2, k + 2, rest, rest) += tau * col.transpose() - col * tau.transpose();
    }
  }
  return pf;
}

std::complex<double> expect_string(const CovarianceState& state, std::vector<std::size_t> idx) {
  const auto n = static_cast<std::size_t>(state.gamma.rows());
  for (std::size_t i : idx) {
    if (i >= n) throw std::out_of_range("expect_string: index out of range");
  }
  // normal-order with anticommutation signs, cancelling psi_x^2 = 1
  int sign = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t p = 0; p + 1 < idx.size(); ++p) {
      if (idx[p] == idx[p + 1]) {
        idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(p), idx.begin() + static_cast<std::ptrdiff_t>(p + 2));
        changed = true;
        break;
      }
      if (idx[p] > idx[p + 1]) {
        std::swap(idx[p], idx[p + 1]);
        sign = -sign;
        changed = true;
      }
    }
  }
  if (idx.empty()) return static_cast<double>(sign);
  if (idx.size() % 2 == 1) return 0.0;
  const auto k = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = a + 1; b < k; ++b) {
      const cplx v = cplx(0.0, state.gamma(static_cast<Eigen::Index>(idx[a]), static_cast<Eigen::Index>(idx[b])));
      m(a, b) = v;
      m(b, a) = -v;
    }
  }
  return static_cast<double>(sign) * pfaffian(std::move(m));
}

namespace {

struct Bilinear {
  std::size_t x, y;
  double alpha;
};

std::vector<Bilinear> bilinears(const MajoranaQuadratic& q) {
  std::vector<Bilinear> out;
  const auto n = static_cast<Eigen::Index>(q.size());
  for (Eigen::Index x = 0; x < n; ++x) {
    for (Eigen::Index y = x + 1; y < n; ++y) {
      if (q.alpha()(x, y) != 0.0) out.push_back({static_cast<std::size_t>(x), static_cast<std::size_t>(y), q.alpha()(x, y)});
    }
  }
  return out;
}

}  // namespace

std::complex<double> expect(const CovarianceState& state, const MajoranaQuadratic& q) {
  if (static_cast<Eigen::Index>(q.size()) != state.gamma.rows()) throw std::invalid_argument("expect: lattice mismatch");
  cplx acc = q.constant();
  // <i a psi_x psi_y> = i a (i Gamma_xy) = -a Gamma_xy
  for (const auto& b : bilinears(q)) acc -= b.alpha * state.gamma(static_cast<Eigen::Index>(b.x), static_cast<Eigen::Index>(b.y));
  return acc;
}

std::complex<double> expect_product(const CovarianceState& state, const MajoranaQuadratic& q1,
                                    const MajoranaQuadratic& q2) {
  if (q1.size() != q2.size()) throw std::invalid_argument("expect_product: size mismatch");
  const cplx i(0.0, 1.0);
  cplx acc = q1.constant() * q2.constant();
  acc += q1.constant() * (expect(state, q2) - q2.constant());
  acc += q2.constant() * (expect(state, q1) - q1.constant());
  const auto b1 = bilinears(q1);
  const auto b2 = bilinears(q2);
  for (const auto& u : b1) {
    for (const auto& v : b2) {
      acc += (i * u.alpha) * (i * v.alpha) * expect_string(state, {u.x, u.y, v.x, v.y});
    }
  }
  return acc;
}

}  // namespace anyonrg::majorana
