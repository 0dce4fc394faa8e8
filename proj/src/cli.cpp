#include "anyonrg/cli.hpp"

#include "anyonrg/checks.hpp"
#include "anyonrg/majorana.hpp"
#include "anyonrg/oracle.hpp"
#include "anyonrg/rg_flow.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <stdexcept>

namespace anyonrg::cli {

using majorana::BraidSign;
using majorana::Direction;
using majorana::LatticeSpec;

namespace {

constexpr int kMaxTotalDepth = 20;  // N + M
constexpr std::size_t kVerifySites = 10;
constexpr std::size_t kVerifyMajoranas = 12;

const char* name(Direction d) { return d == Direction::left ? "left" : "right"; }
const char* name(BraidSign b) { return b == BraidSign::over ? "over" : "inverse"; }
const char* name(Format f) { return f == Format::csv ? "csv" : "json"; }

Direction parse_direction(const std::string& s) {
  if (s == "left") return Direction::left;
  if (s == "right") return Direction::right;
  throw std::invalid_argument("attachment must be left or right, got '" + s + "'");
}

BraidSign parse_braid(const std::string& s) {
  if (s == "over") return BraidSign::over;
  if (s == "inverse") return BraidSign::inverse;
  throw std::invalid_argument("braid must be over or inverse, got '" + s + "'");
}

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw std::invalid_argument("format must be csv or json, got '" + s + "'");
}

LatticeSpec coarse_lattice(const RunConfig& c) { return LatticeSpec(c.scale_N, 1.0, c.half_length); }

rg::RefinementSpec refinement(const RunConfig& c, int depth, Direction side, BraidSign braid) {
  rg::RefinementSpec s;
  s.coarse = coarse_lattice(c);
  s.depth = depth;
  s.attachment = side;
  s.braid = braid;
  return s;
}

std::string csv_cell(const Cell& cell) {
  struct V {
    std::string operator()(std::monostate) const { return "NA"; }
    std::string operator()(long v) const { return fmt::format("{}", v); }
    std::string operator()(double v) const { return fmt::format("{}", v); }
    std::string operator()(const std::string& v) const {
      if (v.find_first_of(",\"\n") == std::string::npos) return v;
      std::string q = "\"";
      for (char ch : v) {
        if (ch == '"') q += '"';
        q += ch;
      }
      return q + "\"";
    }
  };
  return std::visit(V{}, cell);
}

nlohmann::ordered_json json_cell(const Cell& cell) {
  struct V {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(long v) const { return v; }
    nlohmann::ordered_json operator()(double v) const { return v; }
    nlohmann::ordered_json operator()(const std::string& v) const { return v; }
  };
  return std::visit(V{}, cell);
}

}  // namespace

nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["command"] = c.command;
  j["k"] = c.k;
  j["scale_N"] = c.scale_N;
  j["depth_M"] = c.depth_M;
  j["half_length"] = c.half_length;
  j["separations"] = c.separations;
  j["attachment"] = name(c.attachment);
  j["braid"] = name(c.braid);
  j["kauffman_A"] = c.kauffman_A;
  j["format"] = name(c.format);
  j["out"] = c.out;
  j["seed"] = c.seed;
  j["delta"] = c.delta ? nlohmann::ordered_json(*c.delta) : nlohmann::ordered_json(nullptr);
  return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
  try {
    RunConfig c;
    c.command = j.at("command").get<std::string>();
    c.k = j.at("k").get<int>();
    c.scale_N = j.at("scale_N").get<int>();
    c.depth_M = j.at("depth_M").get<int>();
    c.half_length = j.at("half_length").get<int>();
    c.separations = j.at("separations").get<std::vector<long>>();
    c.attachment = parse_direction(j.at("attachment").get<std::string>());
    c.braid = parse_braid(j.at("braid").get<std::string>());
    c.kauffman_A = j.at("kauffman_A").get<double>();
    c.format = parse_format(j.at("format").get<std::string>());
    c.out = j.at("out").get<std::string>();
    c.seed = j.at("seed").get<std::uint64_t>();
    if (!j.at("delta").is_null()) c.delta = j.at("delta").get<double>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
}

void validate(const RunConfig& c) {
  auto fail = [](const std::string& m) { throw std::invalid_argument(m); };
  if (c.command != "verify" && c.command != "flow" && c.command != "chirality" && c.command != "correlator" &&
      c.command != "gs")
    fail("unknown command '" + c.command + "'");
  if (c.k < 1 || c.k > 16) fail("--k must lie in [1, 16]");
  if (c.scale_N < 0) fail("--scale-N must be >= 0");
  if (c.depth_M < 0) fail("--depth-M must be >= 0");
  if (c.scale_N + c.depth_M > kMaxTotalDepth) fail(fmt::format("--scale-N + --depth-M must be <= {}", kMaxTotalDepth));
  if (c.half_length < 1) fail("--half-length must be >= 1");
  if (!std::isfinite(c.kauffman_A)) fail("--kauffman-A must be finite");
  if (c.delta && !std::isfinite(*c.delta)) fail("--delta must be finite");

  const auto lattice = coarse_lattice(c);
  const long sites = static_cast<long>(lattice.field_sites());
  const long majoranas = static_cast<long>(lattice.majorana_count());
  if (c.command == "flow" || c.command == "chirality" || c.command == "correlator") {
    if (c.separations.empty()) fail("--separations must not be empty");
    for (long d : c.separations) {
      if (d == 0) fail("invalid separation 0");
      // flow: anywhere on the circle; the others anchor mid-chain and must not cross the seam
      const long bound = c.command == "flow" ? sites : c.command == "chirality" ? sites / 2 : majoranas / 2 - 1;
      if (std::abs(d) >= bound) fail(fmt::format("invalid separation {}: |d| must be < {}", d, bound));
    }
  }
}

// --------------------------------------------------------------- commands

Table cmd_verify(const RunConfig& c) {
  const std::complex<double> A = std::polar(1.0, std::numbers::pi * c.kauffman_A);
  checks::Report r;
  checks::append(r, checks::tl_symbolic(8));
  checks::append(r, checks::braid_symbolic(8));
  for (int strands = 3; strands <= 6; ++strands)
    checks::append(r, checks::tl_homomorphism(strands, A, 20, 8, c.seed + static_cast<std::uint64_t>(strands)));
  checks::append(r, checks::majorana_tl(kVerifyMajoranas, c.delta));
  checks::append(r, checks::braid_matrices(kVerifyMajoranas));
  checks::append(r, checks::kauffman_roots(8));
  checks::append(r, checks::separated_pairs(kVerifyMajoranas, 4));
  checks::append(r, checks::fusion(c.k, kVerifySites, c.delta));
  checks::append(r, checks::ground_states(32, oracle::kMaxMajoranas));

  Table t;
  t.columns = {"group", "check", "residual", "tolerance", "passed"};
  std::size_t failed = 0;
  for (const auto& e : r) {
    t.rows.push_back({e.group, e.name, e.residual, e.tolerance, std::string(e.passed ? "yes" : "no")});
    if (!e.passed) ++failed;
  }
  t.passed = failed == 0;
  t.notes.push_back(fmt::format("checks: {} run, {} failed", r.size(), failed));
  return t;
}

Table cmd_flow(const RunConfig& c) {
  const auto coarse = coarse_lattice(c);
  const double norm = rg::frozen_normalization(coarse);
  Table t;
  t.notes = {"omega_M(phi_x phi_y) = re + i im at x - y = d eps_N, scaled by 2^M",
             fmt::format("limit: i c / (2 sin(pi d eps_N / 2L)), c = {} eps_N / L", rg::kFrozenKappa)};
  t.columns = {"M", "d", "re", "im", "limit_im", "rel_error"};
  for (int M = 0; M <= c.depth_M; ++M) {
    for (long d : c.separations) {
      const double g = rg::flow_two_point(coarse, M, d);
      const double limit =
          rg::scaling_limit_two_point_exact(static_cast<double>(d) * coarse.spacing(), coarse.half_length(), norm).imag();
      t.rows.push_back({static_cast<long>(M), d, 0.0, g, limit, std::abs(g - limit) / std::abs(limit)});
    }
  }
  return t;
}

Table cmd_chirality(const RunConfig& c) {
  const auto coarse = coarse_lattice(c);
  const std::size_t x = coarse.field_sites() / 2;
  Table t;
  t.notes = {"t_ss' = -i omega_M(psi_{s|x} psi_{s'|y}) 2^M, y = x + d eps_N, s = p(+) or m(-)",
             "psi_+- = (psi_x -+ psi_{x+eps})/sqrt2 on the fine lattice",
             "cross_ratio = max(|t_pm|, |t_mp|) / max(|t_pp|, |t_mm|)"};
  t.columns = {"M", "d", "attachment", "braid", "t_pp", "t_pm", "t_mp", "t_mm", "cross_ratio"};
  for (int M = 0; M <= c.depth_M; ++M) {
    for (long d : c.separations) {
      const std::size_t y = static_cast<std::size_t>(static_cast<long>(x) + d);
      for (Direction side : {Direction::right, Direction::left}) {
        for (BraidSign b : {BraidSign::over, BraidSign::inverse}) {
          const auto tab = rg::chiral_correlators(refinement(c, M, side, b), x, y);
          t.rows.push_back({static_cast<long>(M), d, std::string(name(side)), std::string(name(b)), tab.value[0][0],
                            tab.value[0][1], tab.value[1][0], tab.value[1][1], tab.cross_ratio()});
        }
      }
    }
  }
  return t;
}

Table cmd_correlator(const RunConfig& c) {
  const auto coarse = coarse_lattice(c);
  const std::size_t x = coarse.majorana_count() / 2;
  Table t;
  t.notes = {"e_x on Majorana bond x is braided |d| times (right for d > 0, left for d < 0), refined, evaluated",
             "legs end at (x, y) = (x, x + 1 + d) or (x - |d|, x + 1); value = omega_M(...) scaled by 2^M"};
  t.columns = {"M", "d", "x", "y", "re", "im"};
  for (int M = 0; M <= c.depth_M; ++M) {
    for (long d : c.separations) {
      const std::size_t y = static_cast<std::size_t>(d > 0 ? static_cast<long>(x) + 1 + d : static_cast<long>(x) + d);
      const auto v = rg::braided_correlator(refinement(c, M, c.attachment, c.braid), x, y);
      t.rows.push_back({static_cast<long>(M), d, static_cast<long>(x), static_cast<long>(y), v.real(), v.imag()});
    }
  }
  return t;
}

Table cmd_gs(const RunConfig& c) {
  const auto lattice = coarse_lattice(c);
  const std::size_t n = lattice.majorana_count();
  const auto momentum = majorana::ground_state_momentum(lattice);
  Eigen::MatrixXd bogoliubov, dense;
  if (n <= rg::FineState::kMaxBogoliubov) bogoliubov = majorana::ground_state_bogoliubov(lattice).gamma;
  double energy = std::nan("");
  if (n <= oracle::kMaxMajoranas) {
    const auto gs = oracle::ground_state(majorana::ising_hamiltonian(n));
    energy = gs.energy;
    if (gs.unique()) dense = gs.covariance;
  }
  Table t;
  t.notes = {"Gamma_ab = -i(<psi_a psi_b> - delta_ab), anti-periodic critical chain, J = 1",
             fmt::format("majoranas: {}; bogoliubov: {}; oracle: {}", n, bogoliubov.size() ? "yes" : "skipped",
                         dense.size() ? "yes" : "skipped")};
  if (std::isfinite(energy)) t.notes.push_back(fmt::format("oracle ground energy: {}", energy));
  t.columns = {"a", "b", "gamma_momentum", "gamma_bogoliubov", "gamma_oracle"};
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const auto ia = static_cast<Eigen::Index>(a), ib = static_cast<Eigen::Index>(b);
      t.rows.push_back({static_cast<long>(a), static_cast<long>(b), momentum.gamma(ia, ib),
                        bogoliubov.size() ? Cell(bogoliubov(ia, ib)) : Cell(),
                        dense.size() ? Cell(dense(ia, ib)) : Cell()});
    }
  }
  return t;
}

Table run(const RunConfig& c) {
  validate(c);
  if (c.command == "verify") return cmd_verify(c);
  if (c.command == "flow") return cmd_flow(c);
  if (c.command == "chirality") return cmd_chirality(c);
  if (c.command == "correlator") return cmd_correlator(c);
  return cmd_gs(c);
}

std::string render(const RunConfig& c, const Table& t) {
  if (c.format == Format::json) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["command"] = c.command;
    j["config"] = to_json(c);
    j["notes"] = t.notes;
    j["columns"] = t.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
      nlohmann::ordered_json o = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < row.size(); ++i) o[t.columns[i]] = json_cell(row[i]);
      rows.push_back(std::move(o));
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
  }
  std::string s = "# schema-version: 1\n";
  s += "# command: " + c.command + "\n";
  s += "# config: " + to_json(c).dump() + "\n";
  for (const auto& n : t.notes) s += "# " + n + "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) s += (i ? "," : "") + t.columns[i];
  s += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + csv_cell(row[i]);
    s += "\n";
  }
  return s;
}

// ------------------------------------------------------------ entry point

int main(int argc, char** argv) {
  CLI::App app{"Braiding renormalization of anyonic chains: relation checks, flows and scaling limits"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig c;
  std::string attachment = "right", braid = "over", format = "csv";
  std::optional<double> delta;
  app.add_option("--k", c.k, "SU(2)_k level for the fusion chain checks")->capture_default_str();
  app.add_option("--scale-N", c.scale_N, "coarse log-scale N")->capture_default_str();
  app.add_option("--depth-M", c.depth_M, "refinement depth (sweeps run M = 0..depth)")->capture_default_str();
  app.add_option("--half-length", c.half_length, "half circumference L in units of eps_0")->capture_default_str();
  app.add_option("--separations", c.separations, "comma separated separations in coarse steps")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--attachment", attachment, "fine pair attachment side")
      ->check(CLI::IsMember({"left", "right"}))
      ->capture_default_str();
  app.add_option("--braid", braid, "braid sign")->check(CLI::IsMember({"over", "inverse"}))->capture_default_str();
  app.add_option("--kauffman-A", c.kauffman_A, "evaluation point A = exp(i pi a)")->capture_default_str();
  app.add_option("--delta", delta, "override the loop value in the TL checks (negative control)");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--out", c.out, "output path, - for stdout")->capture_default_str();
  app.add_option("--seed", c.seed, "seed for random relation words")->capture_default_str();

  for (const char* cmd : {"verify", "flow", "chirality", "correlator", "gs"}) app.add_subcommand(cmd);
  const char* help[][2] = {{"verify", "run every relation and agreement check"},
                           {"flow", "renormalized two-point function against the scaling limit"},
                           {"chirality", "chiral correlator tables for both attachments and braids"},
                           {"correlator", "braided correlator sweep"},
                           {"gs", "ground-state covariance: momentum, Bogoliubov, oracle"}};
  for (const auto& h : help) app.get_subcommand(h[0])->description(h[1]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (const char* env = std::getenv("ANYONRG_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*env == '\0' || *end != '\0' || v < 1) {
      std::cerr << "error: ANYONRG_THREADS must be a positive integer\n";
      return kExitUsage;
    }
  }

  c.command = app.get_subcommands().front()->get_name();
  c.attachment = parse_direction(attachment);
  c.braid = parse_braid(braid);
  c.format = parse_format(format);
  c.delta = delta;

  Table t;
  try {
    t = run(c);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const std::string text = render(c, t);
  if (c.out == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!f || !f.write(text.data(), static_cast<std::streamsize>(text.size()))) {
      std::cerr << "error: cannot write " << c.out << "\n";
      return kExitUsage;
    }
  }
  if (!t.passed) {
    for (const auto& row : t.rows)
      if (std::get<std::string>(row[4]) == "no")
        std::cerr << "FAIL " << std::get<std::string>(row[0]) << ": " << std::get<std::string>(row[1]) << "\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

}  // namespace anyonrg::cli
