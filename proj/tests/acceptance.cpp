// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "anyonrg/checks.hpp"
#include "anyonrg/oracle.hpp"
#include "anyonrg/rg_flow.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#ifndef ANYONRG_CLI_PATH
#error "ANYONRG_CLI_PATH must name the anyonrg executable"
#endif

using namespace anyonrg;
using majorana::BraidSign;
using majorana::Direction;
using majorana::LatticeSpec;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

void require(Outcome& o, bool ok, const std::string& what) {
  if (!ok) {
    o.passed = false;
    o.detail += (o.detail.empty() ? "" : "; ") + what;
  }
}

// Folds a check report into the outcome; `cap` tightens every tolerance.
double absorb(Outcome& o, const checks::Report& r, double cap) {
  double worst = 0.0;
  for (const auto& c : r) {
    worst = std::max(worst, c.residual);
    if (!c.passed || c.residual > cap) require(o, false, fmt::format("{} / {} = {:.3g}", c.group, c.name, c.residual));
  }
  return worst;
}

rg::RefinementSpec refinement(LatticeSpec c, int M, Direction side = Direction::right, BraidSign b = BraidSign::over) {
  rg::RefinementSpec s;
  s.coarse = c;
  s.depth = M;
  s.attachment = side;
  s.braid = b;
  return s;
}

Outcome algebra() {
  Outcome o;
  const auto sym = checks::tl_symbolic(8);
  absorb(o, sym, 0.0);
  const double maj = absorb(o, checks::majorana_tl(12), 1e-10);
  double fus = 0.0;
  for (int k : {2, 3}) fus = std::max(fus, absorb(o, checks::fusion(k, 10), 1e-10));
  o.detail = o.passed ? fmt::format("{} symbolic relations exact (n<=8); Majorana max {:.2g} (n<=12); fusion k=2,3 max {:.2g} "
                                    "(<=10 sites)",
                                    sym.size(), maj, fus)
                      : o.detail;
  return o;
}

Outcome braiding() {
  Outcome o;
  absorb(o, checks::braid_symbolic(8), 0.0);
  double worst = absorb(o, checks::braid_matrices(12), 1e-12);
  worst = std::max(worst, absorb(o, checks::separated_pairs(12, 5), 1e-12));
  worst = std::max(worst, absorb(o, checks::kauffman_roots(10), 1e-12));
  if (o.passed) o.detail = fmt::format("Reidemeister II/III exact (n<=8); matrices max residual {:.2g}", worst);
  return o;
}

Outcome ground_states() {
  Outcome o;
  const double worst = absorb(o, checks::ground_states(32, oracle::kMaxMajoranas, 1e-10), 1e-10);
  if (o.passed)
    o.detail = fmt::format("4..32 Majoranas, oracle up to {}, max entry difference {:.2g}", oracle::kMaxMajoranas, worst);
  return o;
}

Outcome flow() {
  Outcome o;
  const LatticeSpec coarse(0, 1.0, 4);
  double route = 0.0, semigroup = 0.0;
  for (int M = 0; M <= 6; ++M) {
    const auto mom = rg::flow_covariance(refinement(coarse, M));
    const auto bog = rg::flow_covariance(refinement(coarse, M), rg::FineSource::bogoliubov);
    route = std::max({route, mom.route_difference(), bog.route_difference()});
  }
  for (int m1 = 0; m1 <= 6; ++m1) {
    for (int m2 = 0; m1 + m2 <= 6; ++m2) {
      const auto direct = rg::flow_covariance(refinement(coarse, m1 + m2));
      const auto composed = rg::restrict_flow(rg::flow_covariance(refinement(coarse.refined(m1), m2)), coarse, m1);
      semigroup = std::max(semigroup, (direct.gamma - composed.gamma).cwiseAbs().maxCoeff());
    }
  }
  require(o, route <= 1e-10, fmt::format("restriction vs closed form {:.3g}", route));
  require(o, semigroup <= 1e-10, fmt::format("semigroup {:.3g}", semigroup));
  if (o.passed) o.detail = fmt::format("M<=6: restriction vs closed form {:.2g}, semigroup {:.2g}", route, semigroup);
  return o;
}

Outcome scaling_limit() {
  Outcome o;
  const LatticeSpec coarse(0, 1.0, 8);
  const std::vector<long> steps{1, 2, 4};  // d/L = 1/8, 1/4, 1/2
  const double kappa = rg::fit_normalization(coarse, 10, steps) * coarse.half_length() / coarse.spacing();
  require(o, std::abs(kappa - rg::kFrozenKappa) < 1e-6, fmt::format("refit kappa {} drifted from frozen", kappa));
  const double c = rg::frozen_normalization(coarse);
  const auto rep = rg::flow_convergence(coarse, steps, 10, c);
  double worst = 0.0;
  for (long d : steps) {
    const double g = rg::flow_two_point(coarse, 10, d);
    const double lim = rg::scaling_limit_two_point(static_cast<double>(d) * coarse.spacing(), coarse.half_length(), c).imag();
    worst = std::max(worst, std::abs(g - lim) / std::abs(lim));
  }
  require(o, worst < 1e-3, fmt::format("M=10 relative error {:.3g}", worst));
  require(o, std::abs(rep.fitted_rate / 0.25 - 1) <= 0.2, fmt::format("fitted rate {:.4f}", rep.fitted_rate));
  if (o.passed)
    o.detail = fmt::format("kappa {:.9f}; M=10 relative error {:.2g} (Abel); fitted rate {:.4f} vs 0.25", kappa, worst,
                           rep.fitted_rate);
  return o;
}

Outcome infinite_volume() {
  Outcome o;
  std::vector<double> gaps;
  for (int ratio : {10, 100, 1000}) {
    const LatticeSpec coarse(0, 1.0, ratio);  // d = eps_N, L/d = ratio
    const auto lim = rg::scaling_limit_two_point(1.0, coarse.half_length(), rg::frozen_normalization(coarse));
    const auto inf = rg::infinite_volume_two_point(1.0, coarse.spacing());
    gaps.push_back(std::abs(rg::kPrescriptionFactor * lim.imag() / inf.imag() - 1.0));
  }
  require(o, gaps[1] < 1e-3, fmt::format("L/d=100 ratio off by {:.3g}", gaps[1]));
  require(o, gaps[2] < gaps[1] && gaps[1] < gaps[0], "ratio not approaching 1");
  if (o.passed)
    o.detail = fmt::format("|ratio - 1| = {:.2g}, {:.2g}, {:.2g} at L/d = 10, 100, 1000", gaps[0], gaps[1], gaps[2]);
  return o;
}

Outcome chirality() {
  Outcome o;
  const LatticeSpec coarse(0, 1.0, 8);
  const std::size_t x = 4, y = 6;  // d = 2 eps_0 = L/4
  const auto rb = rg::chiral_correlators(refinement(coarse, 10), x, y);
  const auto rbi = rg::chiral_correlators(refinement(coarse, 10, Direction::right, BraidSign::inverse), x, y);
  const auto lb = rg::chiral_correlators(refinement(coarse, 10, Direction::left), x, y);
  require(o, rb.cross_ratio() < 0.05, fmt::format("cross ratio {:.3g}", rb.cross_ratio()));
  require(o, lb.distance(rb.swapped()) == 0.0, "left attachment is not the +- swap");
  require(o, rbi.distance(rb.swapped()) == 0.0, "inverse braid is not the +- swap");
  if (o.passed)
    o.detail = fmt::format("M=10 cross ratio {:.2g}; left and inverse-braid tables equal the swap exactly", rb.cross_ratio());
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

Outcome determinism() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / "anyonrg_acceptance";
  std::filesystem::create_directories(dir);
  int runs = 0;
  for (std::string cmd : {"verify", "flow", "chirality", "correlator", "gs"}) {
    for (std::string format : {"csv", "json"}) {
      const auto out = dir / (cmd + "." + format);
      std::string first;
      for (const char* threads : {"1", "1", "4"}) {
        const std::string line = fmt::format("ANYONRG_THREADS={} \"{}\" {} --format {} --seed 7 --out \"{}\"", threads,
                                             ANYONRG_CLI_PATH, cmd, format, out.string());
        const int status = std::system(line.c_str());
        ++runs;
        if (status != 0) {
          require(o, false, fmt::format("{} exited with {}", cmd, status));
          break;
        }
        const std::string text = slurp(out);
        if (first.empty()) {
          first = text;
        } else if (text != first) {
          require(o, false, fmt::format("{} --format {} differs with ANYONRG_THREADS={}", cmd, format, threads));
        }
      }
    }
  }
  if (o.passed) o.detail = fmt::format("{} runs of 5 commands x 2 formats byte-identical (1 and 4 threads)", runs);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const Criterion all[] = {
      {1, "algebra suite", 30, algebra},
      {2, "braiding suite", 10, braiding},
      {3, "ground-state agreement", 60, ground_states},
      {4, "RG-flow reproduction", 60, flow},
      {5, "scaling limit", 300, scaling_limit},
      {6, "infinite volume", 10, infinite_volume},
      {7, "chirality", 120, chirality},
      {8, "determinism", 600, determinism},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_s) require(o, false, fmt::format("took {:.1f} s, limit {:.0f} s", secs, c.limit_s));
    if (!o.passed) ++failed;
    fmt::print("criterion {} [{}] {}: {} ({:.2f} s, limit {:.0f} s)\n", c.id, o.passed ? "PASS" : "FAIL", c.name,
               o.detail, secs, c.limit_s);
    std::fflush(stdout);
  }
  fmt::print("{} of 8 criteria passed\n", 8 - failed);
  return failed == 0 ? 0 : 1;
}
