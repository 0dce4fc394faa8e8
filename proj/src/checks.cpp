#include "anyonrg/checks.hpp"

#include "anyonrg/fusion.hpp"
#include "anyonrg/majorana.hpp"
#include "anyonrg/oracle.hpp"
#include "anyonrg/tl_diagram.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>

namespace anyonrg::checks {

namespace {

using majorana::BraidSign;
using oracle::DenseOperator;
using cplx = std::complex<double>;

CheckResult make(std::string group, std::string name, double residual, double tolerance) {
  return {std::move(group), std::move(name), residual, tolerance, std::isfinite(residual) && residual <= tolerance};
}

// (L0, N) with 4 L0 2^N = n and N as large as possible
majorana::LatticeSpec lattice_for(std::size_t n) {
  if (n % 4 != 0 || n == 0) throw std::invalid_argument("ground_states: Majorana count must be a multiple of 4");
  std::size_t l0 = n / 4;
  int N = 0;
  while (l0 % 2 == 0) {
    l0 /= 2;
    ++N;
  }
  return majorana::LatticeSpec(N, 1.0, static_cast<int>(l0));
}

}  // namespace

bool all_passed(const Report& r) {
  return std::all_of(r.begin(), r.end(), [](const CheckResult& c) { return c.passed; });
}

void append(Report& into, const Report& more) { into.insert(into.end(), more.begin(), more.end()); }

Report tl_symbolic(int max_n) {
  Report out;
  for (int n = 3; n <= max_n; ++n) {
    for (const auto& c : tl::verify_relations(n).checks) {
      out.push_back(make("tl_symbolic", fmt::format("n={}: {}", n, c.relation), c.failed, 0.0));
    }
  }
  return out;
}

Report braid_symbolic(int max_n) {
  Report out;
  for (int n = 3; n <= max_n; ++n) {
    for (const auto& c : tl::verify_braid_relations(n).checks) {
      out.push_back(make("braid_symbolic", fmt::format("n={}: {}", n, c.relation), c.failed, 0.0));
    }
  }
  return out;
}

Report tl_homomorphism(int strands, cplx A, int words, int max_length, std::uint64_t seed) {
  if (strands < 2) throw std::invalid_argument("tl_homomorphism: need at least 2 strands");
  const auto n = static_cast<std::size_t>(strands + strands % 2);
  const auto gen = [&](int i) { return oracle::build(majorana::tl_generator(n, static_cast<std::size_t>(i - 1))); };
  const cplx delta = -A * A - 1.0 / (A * A);

  std::map<tl::PlanarPairing, DenseOperator> basis;
  for (const auto& dw : tl::enumerate_diagrams(strands)) {
    DenseOperator m = DenseOperator::identity(n / 2);
    for (int i : dw.word) m = m * gen(i);
    basis.emplace(dw.diagram, m * (1.0 / std::pow(delta, dw.loops)));
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(1, strands - 1);
  std::uniform_int_distribution<int> len(1, max_length);
  double worst = 0.0;
  for (int w = 0; w < words; ++w) {
    const int l = len(rng);
    tl::TLElement sym = tl::identity(strands);
    DenseOperator direct = DenseOperator::identity(n / 2);
    for (int s = 0; s < l; ++s) {
      const int i = pick(rng);
      sym = tl::compose(sym, tl::generator(strands, i));
      direct = direct * gen(i);
    }
    DenseOperator via = DenseOperator::identity(n / 2) * 0.0;
    const tl::NumericTLElement numeric = tl::evaluate(sym, A);
    for (const auto& [p, c] : numeric.terms()) via = via + basis.at(p) * c;
    worst = std::max(worst, via.distance(direct));
  }
  return {make("tl_homomorphism",
               fmt::format("{} strands, {} words, A = {:.6f}{:+.6f}i", strands, words, A.real(), A.imag()), worst,
               1e-10)};
}

Report majorana_tl(std::size_t max_n, std::optional<double> delta_override) {
  Report out;
  const double delta = delta_override.value_or(std::numbers::sqrt2);
  for (std::size_t n = 4; n <= max_n; n += 2) {
    std::vector<DenseOperator> e;
    for (std::size_t j = 0; j < n; ++j) e.push_back(oracle::build(majorana::tl_generator(n, j)));
    double square = 0.0, braid = 0.0, far = 0.0, herm = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      const std::size_t y = (x + 1) % n;
      square = std::max(square, (e[x] * e[x]).distance(e[x] * delta));
      braid = std::max(braid, (e[x] * e[y] * e[x]).distance(e[x]));
      braid = std::max(braid, (e[y] * e[x] * e[y]).distance(e[y]));
      herm = std::max(herm, e[x].distance(e[x].adjoint()));
      for (std::size_t z = 0; z < n; ++z) {
        const std::size_t d = (z + n - x) % n;
        if (d >= 2 && d <= n - 2) far = std::max(far, (e[x] * e[z]).distance(e[z] * e[x]));
      }
    }
    out.push_back(make("majorana_tl", fmt::format("n={}: e_x^2 = delta e_x", n), square, 1e-10));
    out.push_back(make("majorana_tl", fmt::format("n={}: e_x e_(x+-1) e_x = e_x", n), braid, 1e-10));
    out.push_back(make("majorana_tl", fmt::format("n={}: e_x e_y = e_y e_x, |x-y| >= 2", n), far, 1e-10));
    out.push_back(make("majorana_tl", fmt::format("n={}: e_x self-adjoint", n), herm, 1e-12));
  }
  return out;
}

Report braid_matrices(std::size_t max_n) {
  Report out;
  for (std::size_t n = 4; n <= max_n; n += 2) {
    const std::size_t q = n / 2;
    std::vector<DenseOperator> psi;
    for (std::size_t a = 0; a < n; ++a) psi.push_back(oracle::build_majorana(n, a));
    double unitary = 0.0, inverse = 0.0, yb = 0.0, action = 0.0, algebra = 0.0;
    std::vector<DenseOperator> b, bi;
    for (std::size_t j = 0; j < n; ++j) {
      b.push_back(oracle::build(majorana::braid_unitary(n, j, BraidSign::over)));
      bi.push_back(oracle::build(majorana::braid_unitary(n, j, BraidSign::inverse)));
    }
    const DenseOperator one = DenseOperator::identity(q);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t c = 0; c < n; ++c) {
        const DenseOperator anti = psi[a] * psi[c] + psi[c] * psi[a];
        algebra = std::max(algebra, anti.distance(one * (a == c ? 2.0 : 0.0)));
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      unitary = std::max(unitary, (b[j] * b[j].adjoint()).distance(one));
      inverse = std::max(inverse, (b[j] * bi[j]).distance(one));
      const std::size_t k = (j + 1) % n;
      yb = std::max(yb, (b[j] * b[k] * b[j]).distance(b[k] * b[j] * b[k]));
      for (auto sign : {BraidSign::over, BraidSign::inverse}) {
        const DenseOperator& u = sign == BraidSign::over ? b[j] : bi[j];
        const auto map = majorana::braid_action(n, j, sign);
        for (std::size_t x = 0; x < n; ++x) {
          action = std::max(action, (u * psi[x] * u.adjoint()).distance(psi[map.image(x)] * double(map.sign(x))));
        }
      }
    }
    out.push_back(make("braid_matrix", fmt::format("n={}: {{psi_a, psi_b}} = 2 delta_ab", n), algebra, 1e-12));
    out.push_back(make("braid_matrix", fmt::format("n={}: b_x b_x^* = 1", n), unitary, 1e-12));
    out.push_back(make("braid_matrix", fmt::format("n={}: b_x b_x^-1 = 1", n), inverse, 1e-12));
    out.push_back(make("braid_matrix", fmt::format("n={}: Yang-Baxter", n), yb, 1e-12));
    out.push_back(make("braid_matrix", fmt::format("n={}: b psi b^* as signed permutation", n), action, 1e-12));
  }
  return out;
}

Report kauffman_roots(std::size_t n) {
  Report out;
  const std::size_t j = n / 2 - 1;
  const DenseOperator e = oracle::build(majorana::tl_generator(n, j));
  const DenseOperator one = DenseOperator::identity(n / 2);
  const DenseOperator b = oracle::build(majorana::braid_unitary(n, j, BraidSign::over));
  const DenseOperator bs = b.adjoint();
  for (const cplx A : tl::ising_kauffman_roots()) {
    const DenseOperator k = one * A + e * (1.0 / A);
    const double unitary = (k * k.adjoint()).distance(one);
    // k = lambda U with lambda read off the (0,0) entry
    const auto prop = [&](const DenseOperator& u) { return k.distance(u * (k.matrix()(0, 0) / u.matrix()(0, 0))); };
    const double proportional = std::min(prop(b), prop(bs));
    const std::string tag = fmt::format("A = {:.6f}{:+.6f}i", A.real(), A.imag());
    out.push_back(make("kauffman", tag + ": A + A^-1 e unitary", unitary, 1e-12));
    out.push_back(make("kauffman", tag + ": A + A^-1 e ~ b or b^*", proportional, 1e-12));
    const cplx delta = -A * A - 1.0 / (A * A);
    out.push_back(make("kauffman", tag + ": -A^2 - A^-2 = sqrt2", std::abs(delta - std::numbers::sqrt2), 1e-12));
  }
  return out;
}

Report separated_pairs(std::size_t n, std::size_t max_distance) {
  majorana::LatticeSpec lat(0, 1.0, 1);
  // smallest lattice with n Majoranas
  for (int l0 = 1;; ++l0) {
    lat = majorana::LatticeSpec(0, 1.0, l0);
    if (lat.majorana_count() == n) break;
    if (lat.majorana_count() > n) throw std::invalid_argument("separated_pairs: Majorana count must be a multiple of 4");
  }
  double worst = 0.0, spectrum = 0.0;
  int cases = 0;
  for (auto dir : {majorana::Direction::left, majorana::Direction::right}) {
    for (auto sign : {BraidSign::over, BraidSign::inverse}) {
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t m = 1; m <= max_distance; ++m) {
          std::optional<majorana::SeparatedPair> sp;
          try {
            sp.emplace(majorana::separate_pair(lat, x, m, dir, sign));
          } catch (const std::out_of_range&) {
            continue;
          }
          DenseOperator u = DenseOperator::identity(n / 2);
          if (dir == majorana::Direction::left) {
            for (std::size_t s = 1; s < m; ++s) u = oracle::build(majorana::braid_unitary(n, x - s, sign)) * u;
          } else {
            for (std::size_t s = 1; s < m; ++s) u = oracle::build(majorana::braid_unitary(n, x + s, sign)) * u;
          }
          const DenseOperator e = oracle::build(majorana::tl_generator(n, x));
          const DenseOperator got = oracle::build(sp->observable);
          worst = std::max(worst, got.distance(u * e * u.adjoint()));
          // spectrum {0, sqrt2}: q^2 = sqrt2 q
          spectrum = std::max(spectrum, (got * got).distance(got * std::numbers::sqrt2));
          ++cases;
        }
      }
    }
  }
  return {make("separate_pair", fmt::format("n={}: {} cases against U e_x U^*", n, cases), worst, 1e-12),
          make("separate_pair", fmt::format("n={}: separated observable q^2 = sqrt2 q", n), spectrum, 1e-12)};
}

Report fusion(int k, std::size_t max_sites, std::optional<double> delta_override) {
  Report out;
  const auto data = fusion::su2k(k);
  const double ds = data.d_sigma();
  const double delta = delta_override.value_or(ds);
  const std::string g = fmt::format("fusion_k{}", k);
  out.push_back(make(g, "d_sigma = 2 cos(pi/(k+2))", std::abs(ds - 2.0 * std::cos(std::numbers::pi / (k + 2))), 1e-12));
  out.push_back(make(g, "F F^T = 1", fusion::orthogonality_residual(data), 1e-12));
  out.push_back(make(g, "pentagon", fusion::pentagon_residual(data), 1e-10));
  for (std::size_t n = 4; n <= max_sites; ++n) {
    const fusion::FusionBasis basis(k, n);
    const double count = std::abs(static_cast<double>(basis.dim()) - static_cast<double>(basis.transfer_matrix_count()));
    if (basis.dim() == 0) {
      out.push_back(make(g, fmt::format("n={}: empty basis, transfer-matrix trace vanishes", n), count, 0.0));
      continue;
    }
    std::vector<Eigen::MatrixXd> e;
    double proj = 0.0;
    for (std::size_t x : basis.active_sites()) {
      const Eigen::MatrixXd p(fusion::projector_p0(data, basis, x));
      proj = std::max({proj, (p * p - p).cwiseAbs().maxCoeff(), (p - p.transpose()).cwiseAbs().maxCoeff()});
      e.push_back(ds * p);
    }
    double square = 0.0, braid = 0.0, far = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      const std::size_t y = (x + 1) % n;
      square = std::max(square, (e[x] * e[x] - delta * e[x]).cwiseAbs().maxCoeff());
      braid = std::max(braid, (e[x] * e[y] * e[x] - e[x]).cwiseAbs().maxCoeff());
      braid = std::max(braid, (e[y] * e[x] * e[y] - e[y]).cwiseAbs().maxCoeff());
      for (std::size_t z = 0; z < n; ++z) {
        const std::size_t d = (z + n - x) % n;
        if (d >= 2 && d <= n - 2) far = std::max(far, (e[x] * e[z] - e[z] * e[x]).cwiseAbs().maxCoeff());
      }
    }
    out.push_back(make(g, fmt::format("n={} (dim {}): P0 = P0^2 = P0^T", n, basis.dim()), proj, 1e-10));
    out.push_back(make(g, fmt::format("n={}: e_x^2 = delta e_x", n), square, 1e-10));
    out.push_back(make(g, fmt::format("n={}: e_x e_(x+-1) e_x = e_x", n), braid, 1e-10));
    out.push_back(make(g, fmt::format("n={}: e_x e_y = e_y e_x, |x-y| >= 2", n), far, 1e-10));
    out.push_back(make(g, fmt::format("n={}: basis count = transfer-matrix trace", n), count, 0.0));
  }
  return out;
}

Report ground_states(std::size_t max_n, std::size_t oracle_cap, double tol) {
  Report out;
  for (std::size_t n = 4; n <= max_n; n += 4) {
    const auto lat = lattice_for(n);
    const auto mom = majorana::ground_state_momentum(lat);
    const auto bog = majorana::bogoliubov(lat, majorana::ising_hamiltonian(n));
    const std::string tag = fmt::format("n={} (N={}, L={})", n, lat.log_scale(), lat.half_length());
    out.push_back(make("ground_state", tag + ": momentum = Bogoliubov",
                       (mom.gamma - bog.state.gamma).cwiseAbs().maxCoeff(), tol));
    out.push_back(make("ground_state", tag + ": purity", mom.purity_residual(), tol));
    if (n <= oracle_cap) {
      const auto gs = oracle::ground_state(majorana::ising_hamiltonian(n));
      if (!gs.unique()) {
        out.push_back(make("ground_state", tag + ": oracle ground state unique", static_cast<double>(gs.degeneracy), 1.0));
        continue;
      }
      out.push_back(make("ground_state", tag + ": momentum = oracle", (mom.gamma - gs.covariance).cwiseAbs().maxCoeff(), tol));
      out.push_back(make("ground_state", tag + ": energy oracle = Bogoliubov", std::abs(gs.energy - bog.energy), tol));
    }
  }
  return out;
}

}  // namespace anyonrg::checks
