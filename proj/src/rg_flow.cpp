#include "anyonrg/rg_flow.hpp"

#include "anyonrg/kernels.hpp"
#include "anyonrg/parallel.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <mutex>
#include <numbers>
#include <set>
#include <shared_mutex>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace anyonrg::rg {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

double RefinementSpec::bilinear_factor() const { return std::exp2(depth * scaling_exponent); }

void RefinementSpec::validate() const {
  if (depth < 0) throw std::invalid_argument("RefinementSpec: depth must be >= 0");
  if (depth > 30) throw std::invalid_argument("RefinementSpec: depth above 30");
}

std::vector<EmbeddedSite> embed_sites(const RefinementSpec& spec) {
  spec.validate();
  const std::size_t n = spec.coarse.field_sites();
  const std::size_t stride = std::size_t{1} << spec.depth;
  const bool shifted = spec.depth > 0 && spec.attachment == Direction::left;
  std::vector<EmbeddedSite> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = i * stride;
    const std::size_t a = 2 * k + (shifted ? 1 : 0);
    out[i] = {k, a, a + 1};
  }
  return out;
}

// ------------------------------------------------------------ fine states

struct FineState::Profile {
  mutable std::shared_mutex mutex;
  std::unordered_map<long, double> values;  // Gamma at positive odd distance
};

FineState::FineState(const LatticeSpec& lattice, FineSource source) : lattice_(lattice), source_(source) {
  if (source == FineSource::bogoliubov) {
    const std::size_t n = lattice.majorana_count();
    if (n > kMaxBogoliubov) throw std::invalid_argument("FineState: lattice too large for the dense Bogoliubov route");
    dense_ = majorana::bogoliubov(lattice, majorana::ising_hamiltonian(n)).state.gamma;
  } else {
    profile_ = std::make_unique<Profile>();
  }
}

FineState::~FineState() = default;

double FineState::gamma(std::size_t a, std::size_t b) const {
  const std::size_t n = lattice_.majorana_count();
  if (a >= n || b >= n) throw std::out_of_range("FineState: Majorana index out of range");
  if (dense_.size() > 0) return dense_(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  const long d = static_cast<long>(a) - static_cast<long>(b);
  const long ad = std::labs(d);
  if (ad % 2 == 0) return 0.0;
  {
    std::shared_lock lock(profile_->mutex);
    const auto it = profile_->values.find(ad);
    if (it != profile_->values.end()) return d > 0 ? it->second : -it->second;
  }
  const double v = majorana::majorana_two_point(lattice_, ad);
  {
    std::unique_lock lock(profile_->mutex);
    profile_->values.emplace(ad, v);
  }
  return d > 0 ? v : -v;
}

void FineState::prefetch(const std::vector<long>& distances) const {
  if (!profile_) return;
  std::vector<long> todo;
  {
    std::shared_lock lock(profile_->mutex);
    for (long d : std::set<long>(distances.begin(), distances.end())) {
      const long ad = std::labs(d);
      if (ad % 2 == 1 && !profile_->values.contains(ad)) todo.push_back(ad);
    }
  }
  std::sort(todo.begin(), todo.end());
  todo.erase(std::unique(todo.begin(), todo.end()), todo.end());
  std::vector<double> v(todo.size());
  parallel_for(todo.size(), [&](std::size_t i) { v[i] = majorana::majorana_two_point(lattice_, todo[i]); });
  std::unique_lock lock(profile_->mutex);
  for (std::size_t i = 0; i < todo.size(); ++i) profile_->values.emplace(todo[i], v[i]);
}

namespace {

using CacheKey = std::tuple<int, double, int, int>;

struct Cache {
  std::mutex mutex;
  std::map<CacheKey, std::shared_future<std::shared_ptr<const FineState>>> entries;
};

Cache& cache() {
  static Cache c;
  return c;
}

}  // namespace

std::shared_ptr<const FineState> fine_state(const LatticeSpec& lattice, FineSource source) {
  const CacheKey key{lattice.log_scale(), lattice.base_spacing(), lattice.base_half_sites(), static_cast<int>(source)};
  Cache& c = cache();
  std::promise<std::shared_ptr<const FineState>> promise;
  std::shared_future<std::shared_ptr<const FineState>> pending;
  {
    std::lock_guard lock(c.mutex);
    const auto it = c.entries.find(key);
    if (it != c.entries.end()) {
      pending = it->second;
    } else {
      c.entries.emplace(key, promise.get_future().share());
    }
  }
  if (pending.valid()) return pending.get();
  try {
    auto state = std::make_shared<const FineState>(lattice, source);
    promise.set_value(state);
    return state;
  } catch (...) {
    promise.set_exception(std::current_exception());
    std::lock_guard lock(c.mutex);
    c.entries.erase(key);
    throw;
  }
}

std::size_t fine_state_cache_size() {
  std::lock_guard lock(cache().mutex);
  return cache().entries.size();
}

void clear_fine_state_cache() {
  std::lock_guard lock(cache().mutex);
  cache().entries.clear();
}

// ---------------------------------------------------------------- flow

double flow_two_point(const LatticeSpec& coarse, int depth, long steps, double scaling_exponent) {
  if (depth < 0) throw std::invalid_argument("flow_two_point: negative depth");
  const LatticeSpec fine = coarse.refined(depth);
  return std::exp2(depth * scaling_exponent) * majorana::field_two_point(fine, steps * (1L << depth));
}

double flow_two_point_csc(const LatticeSpec& coarse, int depth, long steps) {
  if (depth < 0) throw std::invalid_argument("flow_two_point_csc: negative depth");
  const double L = coarse.half_length();
  const double d = static_cast<double>(steps) * coarse.spacing();
  const double h = coarse.refined(depth).majorana_spacing();
  return coarse.spacing() / (4.0 * L) * (1.0 / std::sin(kPi * (d + h) / (2.0 * L)) + 1.0 / std::sin(kPi * (d - h) / (2.0 * L)));
}

double FlowState::max_singular_value() const {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(gamma / spec.bilinear_factor());
  return svd.singularValues()(0);
}

FlowState flow_covariance(const RefinementSpec& spec, FineSource source) {
  const auto sites = embed_sites(spec);
  const auto fs = fine_state(spec.fine(), source);
  const std::size_t n = sites.size();
  const double factor = spec.bilinear_factor();

  std::vector<long> distances;
  for (const auto& s : sites) {
    for (const auto& t : sites) {
      for (std::size_t u : {s.first, s.second})
        for (std::size_t v : {t.first, t.second}) distances.push_back(static_cast<long>(u) - static_cast<long>(v));
    }
  }
  fs->prefetch(distances);

  const auto ni = static_cast<Eigen::Index>(n);
  FlowState out{spec, Eigen::MatrixXd::Zero(ni, ni), Eigen::MatrixXd::Zero(ni, ni)};
  parallel_for(n * n, [&](std::size_t p) {
    const std::size_t i = p / n, j = p % n;
    if (i == j) return;
    const auto& s = sites[i];
    const auto& t = sites[j];
    const double g = fs->gamma(s.first, t.first) + fs->gamma(s.first, t.second) + fs->gamma(s.second, t.first) +
                     fs->gamma(s.second, t.second);
    out.gamma(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = factor * 0.5 * g;
  });

  std::vector<double> profile(2 * n - 1);
  parallel_for(profile.size(), [&](std::size_t p) {
    profile[p] = flow_two_point(spec.coarse, spec.depth, static_cast<long>(p) - static_cast<long>(n - 1),
                                spec.scaling_exponent);
  });
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) out.closed_form(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = profile[i + n - 1 - j];
  return out;
}

FlowState restrict_flow(const FlowState& fine_flow, const LatticeSpec& coarse, int outer) {
  if (outer < 0) throw std::invalid_argument("restrict_flow: negative depth");
  if (!(fine_flow.spec.coarse == coarse.refined(outer))) {
    throw std::invalid_argument("restrict_flow: flow does not live on the refined lattice");
  }
  RefinementSpec spec = fine_flow.spec;
  spec.coarse = coarse;
  spec.depth += outer;
  const std::size_t n = coarse.field_sites();
  const auto stride = static_cast<Eigen::Index>(std::size_t{1} << outer);
  const double factor = std::exp2(outer * spec.scaling_exponent);
  const auto ni = static_cast<Eigen::Index>(n);
  FlowState out{spec, Eigen::MatrixXd(ni, ni), Eigen::MatrixXd(ni, ni)};
  for (Eigen::Index i = 0; i < ni; ++i) {
    for (Eigen::Index j = 0; j < ni; ++j) {
      out.gamma(i, j) = factor * fine_flow.gamma(i * stride, j * stride);
      out.closed_form(i, j) = factor * fine_flow.closed_form(i * stride, j * stride);
    }
  }
  return out;
}

double renormalized_tl_expectation(const RefinementSpec& spec, std::size_t x) {
  const auto sites = embed_sites(spec);
  const std::size_t n = sites.size();
  if (x >= n) throw std::out_of_range("renormalized_tl_expectation: site out of range");
  const auto fs = fine_state(spec.fine());
  const auto pair_gamma = [&](const EmbeddedSite& s, const EmbeddedSite& t) {
    return 0.5 * (fs->gamma(s.first, t.first) + fs->gamma(s.first, t.second) + fs->gamma(s.second, t.first) +
                  fs->gamma(s.second, t.second));
  };
  // phi_{x+eps} = -phi_{-L} across the seam
  const double g = x + 1 < n ? pair_gamma(sites[x + 1], sites[x]) : -pair_gamma(sites[0], sites[x]);
  // <i phi_{x+eps} phi_x> = i (i Gamma) = -Gamma
  return -spec.bilinear_factor() * g;
}

std::complex<double> braided_correlator(const RefinementSpec& spec, std::size_t x, std::size_t y, FineSource source) {
  spec.validate();
  if (x == y) throw std::invalid_argument("braided_correlator: coincident points");
  const std::size_t n = spec.coarse.majorana_count();
  if (x >= n || y >= n) throw std::out_of_range("braided_correlator: site out of range");
  const bool right = y > x;
  const std::size_t m = right ? y - x : x + 1 - y;
  const auto sp = majorana::separate_pair(spec.coarse, x, m, right ? Direction::right : Direction::left, spec.braid);

  const std::size_t stride = std::size_t{1} << spec.depth;
  const std::size_t shift = spec.depth > 0 && spec.attachment == Direction::left ? 1 : 0;
  const auto refine = [&](std::size_t j) { return j * stride + shift; };
  const auto fs = fine_state(spec.fine(), source);

  cplx acc = sp.observable.constant();
  const Eigen::MatrixXd& alpha = sp.observable.alpha();
  for (Eigen::Index u = 0; u < alpha.rows(); ++u) {
    for (Eigen::Index v = u + 1; v < alpha.cols(); ++v) {
      if (alpha(u, v) == 0.0) continue;
      // <i a psi_u psi_v> = -a Gamma_uv
      acc -= spec.bilinear_factor() * alpha(u, v) *
             fs->gamma(refine(static_cast<std::size_t>(u)), refine(static_cast<std::size_t>(v)));
    }
  }
  return acc;
}

// ---------------------------------------------------------- scaling limit

double partial_sum(double theta, std::size_t count) { return kernels::half_sine_sum(count, theta); }

double cesaro_mean(double theta, std::size_t count) {
  if (count == 0) throw std::invalid_argument("cesaro_mean: need at least one term");
  std::vector<double> w(count);
  for (std::size_t m = 0; m < count; ++m) w[m] = static_cast<double>(count - m) / static_cast<double>(count);
  return kernels::half_sine_series(w, theta);
}

double abel_sum(double theta, double r, double tail) {
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("abel_sum: need 0 < r < 1");
  const auto count = static_cast<std::size_t>(std::ceil(tail / -std::log(r)));
  return kernels::damped_half_sine_sum(count, r, theta);
}

double abel_sum_exact(double theta, double r) {
  const cplx num = std::sqrt(r) * std::polar(1.0, theta / 2.0);
  return (num / (1.0 - r * std::polar(1.0, theta))).imag();
}

double abel_limit(double theta, const AbelOptions& opts) {
  if (opts.richardson_levels < 1) throw std::invalid_argument("abel_limit: need at least one level");
  const auto levels = static_cast<std::size_t>(opts.richardson_levels);
  std::vector<double> row(levels);
  parallel_for(levels, [&](std::size_t j) {
    row[j] = abel_sum(theta, 1.0 - opts.one_minus_r * std::exp2(static_cast<double>(j)), opts.tail);
  });
  // error is a power series in (1 - r); h doubles along the row
  for (std::size_t l = 1; l < levels; ++l) {
    const double f = std::exp2(static_cast<double>(l)) - 1.0;
    for (std::size_t j = 0; j + l < levels; ++j) row[j] = row[j] + (row[j] - row[j + 1]) / f;
  }
  return row[0];
}

double abel_limit_exact(double theta) { return 1.0 / (2.0 * std::sin(theta / 2.0)); }

namespace {
void check_separation(double d, double L) {
  if (!(L > 0.0)) throw std::invalid_argument("two-point: half-length must be positive");
  if (d == 0.0) throw std::invalid_argument("two-point: coincident points");
  if (std::abs(d) >= 2.0 * L) throw std::invalid_argument("two-point: separation outside (-2L, 2L)");
}
}  // namespace

std::complex<double> scaling_limit_two_point(double d, double L, double c, const AbelOptions& opts) {
  check_separation(d, L);
  return {0.0, c * abel_limit(kPi * d / L, opts)};
}

std::complex<double> scaling_limit_two_point_exact(double d, double L, double c) {
  check_separation(d, L);
  return {0.0, c * abel_limit_exact(kPi * d / L)};
}

std::complex<double> infinite_volume_two_point(double d, double eps) {
  if (d == 0.0) throw std::invalid_argument("infinite_volume_two_point: coincident points");
  // 1/(d + i0) + 1/(d - i0) = 2 P(1/d)
  return {0.0, 2.0 * eps / (kPi * d)};
}

double frozen_normalization(const LatticeSpec& coarse) {
  return kFrozenKappa * coarse.spacing() / coarse.half_length();
}

double fit_normalization(const LatticeSpec& coarse, int depth, const std::vector<long>& steps) {
  if (steps.empty()) throw std::invalid_argument("fit_normalization: no separations");
  std::vector<double> g(steps.size());
  parallel_for(steps.size(), [&](std::size_t i) { g[i] = flow_two_point(coarse, depth, steps[i]); });
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const double s = abel_limit_exact(kPi * static_cast<double>(steps[i]) * coarse.spacing() / coarse.half_length());
    num += g[i] * s;
    den += s * s;
  }
  return num / den;
}

namespace {
double log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (std::log(y[i]) - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return std::exp(sxy / sxx);
}
}  // namespace

ConvergenceReport flow_convergence(const LatticeSpec& coarse, const std::vector<long>& steps, int max_depth,
                                   double c, double floor) {
  if (max_depth < 1) throw std::invalid_argument("flow_convergence: need max_depth >= 1");
  if (steps.empty()) throw std::invalid_argument("flow_convergence: no separations");
  const std::size_t depths = static_cast<std::size_t>(max_depth) + 1;
  std::vector<double> g(depths * steps.size());
  parallel_for(g.size(), [&](std::size_t p) {
    g[p] = flow_two_point(coarse, static_cast<int>(p / steps.size()), steps[p % steps.size()]);
  });
  ConvergenceReport rep;
  std::vector<double> fx, fy, sx, sy;
  for (std::size_t m = 0; m < depths; ++m) {
    double err = 0.0, change = 0.0;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const double limit = c * abel_limit_exact(kPi * static_cast<double>(steps[i]) * coarse.spacing() /
                                                coarse.half_length());
      err = std::max(err, std::abs(g[m * steps.size() + i] - limit) / std::abs(limit));
      if (m > 0) change = std::max(change, std::abs(g[m * steps.size() + i] - g[(m - 1) * steps.size() + i]));
    }
    rep.depths.push_back(static_cast<int>(m));
    rep.errors.push_back(err);
    if (m > 0) {
      rep.step_changes.push_back(change);
      sx.push_back(static_cast<double>(m));
      sy.push_back(change);
    }
    if (m > 0 && err > floor) {
      fx.push_back(static_cast<double>(m));
      fy.push_back(err);
    }
  }
  rep.fitted_rate = log_slope(fx, fy);
  rep.step_rate = log_slope(sx, sy);
  return rep;
}

// ------------------------------------------------------------ chirality

double ChiralTable::cross_ratio() const {
  const double diag = std::max(std::abs(value[0][0]), std::abs(value[1][1]));
  return std::max(std::abs(value[0][1]), std::abs(value[1][0])) / diag;
}

ChiralTable ChiralTable::swapped() const {
  ChiralTable t;
  for (int s = 0; s < 2; ++s)
    for (int u = 0; u < 2; ++u) t.value[s][u] = value[1 - s][1 - u];
  return t;
}

double ChiralTable::distance(const ChiralTable& o) const {
  double d = 0.0;
  for (int s = 0; s < 2; ++s)
    for (int u = 0; u < 2; ++u) d = std::max(d, std::abs(value[s][u] - o.value[s][u]));
  return d;
}

ChiralTable chiral_correlators(const RefinementSpec& spec, std::size_t x, std::size_t y, FineSource source) {
  const auto sites = embed_sites(spec);
  if (x >= sites.size() || y >= sites.size()) throw std::out_of_range("chiral_correlators: site out of range");
  if (x == y) throw std::invalid_argument("chiral_correlators: coincident sites");
  const auto fs = fine_state(spec.fine(), source);

  // Signs picked up while braiding the coarse pair next to each other:
  // right moves the partner psi_{a+2} -> psi_{a+1} through bond a+1,
  // left moves the anchor psi_{a-1} -> psi_a through bond a-1.
  int anchor = 1, partner = 1;
  if (spec.depth > 0) {
    if (spec.attachment == Direction::right) {
      partner = spec.braid == BraidSign::over ? 1 : -1;
    } else {
      anchor = spec.braid == BraidSign::over ? -1 : 1;
    }
  }
  struct Leg {
    std::size_t site;
    double coeff;
  };
  const auto chiral = [&](const EmbeddedSite& e, int s) {
    // psi_{+-} = (psi_x -+ psi_{x+eps}) / sqrt2, s = +1 for '+'
    return std::array<Leg, 2>{Leg{e.first, anchor / std::numbers::sqrt2},
                              Leg{e.second, -s * partner / std::numbers::sqrt2}};
  };
  ChiralTable t;
  for (int s = 0; s < 2; ++s) {
    for (int u = 0; u < 2; ++u) {
      double acc = 0.0;
      for (const Leg& p : chiral(sites[x], s == 0 ? 1 : -1))
        for (const Leg& q : chiral(sites[y], u == 0 ? 1 : -1)) acc += p.coeff * q.coeff * fs->gamma(p.site, q.site);
      t.value[s][u] = spec.bilinear_factor() * acc;
    }
  }
  return t;
}

}  // namespace anyonrg::rg
