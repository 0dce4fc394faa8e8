#include "anyonrg/fusion.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace anyonrg::fusion {

std::string label_str(Label j) {
  if (j < 0) throw std::invalid_argument("label_str: negative label");
  return j % 2 == 0 ? std::to_string(j / 2) : std::to_string(j) + "/2";
}

Label parse_label(const std::string& text) {
  std::size_t used = 0;
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      const int v = std::stoi(text, &used);
      if (used != text.size() || v < 0) throw std::invalid_argument(text);
      return 2 * v;
    }
    const std::string num = text.substr(0, slash);
    const int v = std::stoi(num, &used);
    if (used != num.size() || text.substr(slash + 1) != "2" || v < 0 || v % 2 == 0) throw std::invalid_argument(text);
    return v;
  } catch (const std::logic_error&) {
    throw std::invalid_argument("parse_label: malformed label '" + text + "'");
  }
}

double quantum_integer(int k, int n) {
  if (k < 1) throw std::invalid_argument("quantum_integer: level must be >= 1");
  const double t = std::numbers::pi / (k + 2);
  return std::sin(n * t) / std::sin(t);
}

double quantum_factorial(int k, int n) {
  if (n < 0) throw std::invalid_argument("quantum_factorial: negative argument");
  double f = 1.0;
  for (int m = 2; m <= n; ++m) f *= quantum_integer(k, m);
  return f;
}

double quantum_dimension(int k, Label a) { return quantum_integer(k, a + 1); }

bool admissible(int k, Label a, Label b, Label c) {
  if (a < 0 || b < 0 || c < 0 || a > k || b > k || c > k) return false;
  if ((a + b + c) % 2 != 0) return false;
  if (c < std::abs(a - b) || c > a + b) return false;
  return a + b + c <= 2 * k;
}

bool sigma_step(int k, Label from, Label to) { return admissible(k, from, kSigma, to); }

namespace {

double triangle(int k, Label a, Label b, Label c) {
  return std::sqrt(quantum_factorial(k, (a + b - c) / 2) * quantum_factorial(k, (a - b + c) / 2) *
                   quantum_factorial(k, (-a + b + c) / 2) / quantum_factorial(k, (a + b + c) / 2 + 1));
}

}  // namespace

double q6j(int k, Label j1, Label j2, Label j3, Label j4, Label j5, Label j6) {
  if (!admissible(k, j1, j2, j3) || !admissible(k, j1, j5, j6) || !admissible(k, j4, j2, j6) ||
      !admissible(k, j4, j5, j3)) {
    return 0.0;
  }
  const int a1 = (j1 + j2 + j3) / 2, a2 = (j1 + j5 + j6) / 2, a3 = (j4 + j2 + j6) / 2, a4 = (j4 + j5 + j3) / 2;
  const int b1 = (j1 + j2 + j4 + j5) / 2, b2 = (j2 + j3 + j5 + j6) / 2, b3 = (j3 + j1 + j6 + j4) / 2;
  const int lo = std::max({a1, a2, a3, a4});
  const int hi = std::min({b1, b2, b3});
  double sum = 0.0;
  for (int z = lo; z <= hi; ++z) {
    const double den = quantum_factorial(k, z - a1) * quantum_factorial(k, z - a2) * quantum_factorial(k, z - a3) *
                       quantum_factorial(k, z - a4) * quantum_factorial(k, b1 - z) * quantum_factorial(k, b2 - z) *
                       quantum_factorial(k, b3 - z);
    if (den == 0.0) continue;
    sum += (z % 2 == 0 ? 1.0 : -1.0) * quantum_factorial(k, z + 1) / den;
  }
  return triangle(k, j1, j2, j3) * triangle(k, j1, j5, j6) * triangle(k, j4, j2, j6) * triangle(k, j4, j5, j3) * sum;
}

// ------------------------------------------------------------ F table

FSymbolTable FSymbolTable::racah(int k) {
  if (k < 1) throw std::invalid_argument("FSymbolTable: level must be >= 1");
  FSymbolTable t(k);
  for (Label a = 0; a <= k; ++a)
    for (Label b = 0; b <= k; ++b)
      for (Label c = 0; c <= k; ++c)
        for (Label d = 0; d <= k; ++d)
          for (Label e = 0; e <= k; ++e)
            for (Label f = 0; f <= k; ++f) {
              if (!admissible(k, a, b, e) || !admissible(k, e, c, d) || !admissible(k, b, c, f) ||
                  !admissible(k, a, f, d)) {
                continue;
              }
              const double sign = ((a + b + c + d) / 2) % 2 == 0 ? 1.0 : -1.0;
              const double v =
                  sign * std::sqrt(quantum_integer(k, e + 1) * quantum_integer(k, f + 1)) * q6j(k, a, b, e, c, d, f);
              t.set(a, b, c, d, e, f, v);
            }
  return t;
}

FSymbolTable FSymbolTable::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("F-symbol file: ") + e.what());
  }
  if (!j.is_object() || !j.contains("k") || !j["k"].is_number_integer() || !j.contains("entries") ||
      !j["entries"].is_array()) {
    throw std::runtime_error("F-symbol file: expected {\"k\": int, \"entries\": [...]}");
  }
  FSymbolTable t(j["k"].get<int>());
  if (t.k_ < 1) throw std::runtime_error("F-symbol file: level must be >= 1");
  for (const auto& e : j["entries"]) {
    std::array<Label, 6> key{};
    const char* names[] = {"a", "b", "c", "d", "e", "f"};
    for (int i = 0; i < 6; ++i) {
      if (!e.contains(names[i]) || !e[names[i]].is_string()) {
        throw std::runtime_error(std::string("F-symbol file: entry missing label ") + names[i]);
      }
      try {
        key[static_cast<std::size_t>(i)] = parse_label(e[names[i]].get<std::string>());
      } catch (const std::invalid_argument& err) {
        throw std::runtime_error(std::string("F-symbol file: ") + err.what());
      }
    }
    if (!e.contains("value") || !e["value"].is_number()) throw std::runtime_error("F-symbol file: entry missing value");
    try {
      t.set(key[0], key[1], key[2], key[3], key[4], key[5], e["value"].get<double>());
    } catch (const std::out_of_range& err) {
      throw std::runtime_error(std::string("F-symbol file: ") + err.what());
    }
  }
  return t;
}

std::string FSymbolTable::to_json() const {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [key, v] : entries_) {
    entries.push_back({{"a", label_str(key[0])},
                       {"b", label_str(key[1])},
                       {"c", label_str(key[2])},
                       {"d", label_str(key[3])},
                       {"e", label_str(key[4])},
                       {"f", label_str(key[5])},
                       {"value", v}});
  }
  return nlohmann::json{{"k", k_}, {"entries", entries}}.dump(1);
}

double FSymbolTable::get(Label a, Label b, Label c, Label d, Label e, Label f) const {
  for (Label l : {a, b, c, d, e, f}) {
    if (l < 0 || l > k_) throw std::out_of_range("fsymbol: label " + std::to_string(l) + "/2 outside level");
  }
  const auto it = entries_.find({a, b, c, d, e, f});
  return it == entries_.end() ? 0.0 : it->second;
}

void FSymbolTable::set(Label a, Label b, Label c, Label d, Label e, Label f, double value) {
  for (Label l : {a, b, c, d, e, f}) {
    if (l < 0 || l > k_) throw std::out_of_range("fsymbol: label " + std::to_string(l) + "/2 outside level");
  }
  if (value == 0.0) {
    entries_.erase({a, b, c, d, e, f});
  } else {
    entries_[{a, b, c, d, e, f}] = value;
  }
}

FSymbolTable FSymbolTable::gauge_transformed(const std::function<int(Label, Label, Label)>& u) const {
  FSymbolTable out(k_);
  for (const auto& [key, v] : entries_) {
    const auto [a, b, c, d, e, f] = key;
    const int s = u(a, b, e) * u(e, c, d) * u(b, c, f) * u(a, f, d);
    out.entries_[key] = s * v;
  }
  return out;
}

FusionCategoryData su2k(int k) { return su2k(k, FSymbolTable::racah(k)); }

FusionCategoryData su2k(int k, FSymbolTable table) {
  if (k < 1) throw std::invalid_argument("su2k: level must be >= 1");
  if (table.level() != k) throw std::invalid_argument("su2k: F-symbol table level mismatch");
  FusionCategoryData d;
  d.k = k;
  for (Label a = 0; a <= k; ++a) {
    d.labels.push_back(a);
    d.quantum_dimensions.push_back(quantum_dimension(k, a));
  }
  d.fsymbols = std::move(table);
  return d;
}

double fsymbol(const FusionCategoryData& data, Label a, Label b, Label c, Label d, Label e, Label f) {
  return data.fsymbols.get(a, b, c, d, e, f);
}

double orthogonality_residual(const FusionCategoryData& data) {
  const int k = data.k;
  double worst = 0.0;
  for (Label a = 0; a <= k; ++a)
    for (Label b = 0; b <= k; ++b)
      for (Label c = 0; c <= k; ++c)
        for (Label d = 0; d <= k; ++d) {
          std::vector<Label> es, fs;
          for (Label x = 0; x <= k; ++x) {
            if (admissible(k, a, b, x) && admissible(k, x, c, d)) es.push_back(x);
            if (admissible(k, b, c, x) && admissible(k, a, x, d)) fs.push_back(x);
          }
          if (es.empty() && fs.empty()) continue;
          if (es.size() != fs.size()) return std::numeric_limits<double>::infinity();
          const auto m = static_cast<Eigen::Index>(es.size());
          Eigen::MatrixXd F(m, m);
          for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = 0; j < m; ++j) F(i, j) = data.fsymbols.get(a, b, c, d, es[i], fs[j]);
          worst = std::max(worst, (F * F.transpose() - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff());
        }
  return worst;
}

double pentagon_residual(const FusionCategoryData& data) {
  const int k = data.k;
  const auto& F = data.fsymbols;
  double worst = 0.0;
  for (Label a = 0; a <= k; ++a)
    for (Label b = 0; b <= k; ++b)
      for (Label c = 0; c <= k; ++c)
        for (Label d = 0; d <= k; ++d)
          for (Label e = 0; e <= k; ++e)
            for (Label f = 0; f <= k; ++f) {
              if (!admissible(k, a, b, f)) continue;
              for (Label g = 0; g <= k; ++g) {
                if (!admissible(k, f, c, g) || !admissible(k, g, d, e)) continue;
                for (Label kk = 0; kk <= k; ++kk)
                  for (Label l = 0; l <= k; ++l) {
                    const double lhs = F.get(f, c, d, e, g, l) * F.get(a, b, l, e, f, kk);
                    double rhs = 0.0;
                    for (Label h = 0; h <= k; ++h) {
                      rhs += F.get(a, b, c, g, f, h) * F.get(a, h, d, e, g, kk) * F.get(b, c, d, kk, h, l);
                    }
                    worst = std::max(worst, std::abs(lhs - rhs));
                  }
              }
            }
  return worst;
}

// -------------------------------------------------------------- basis

FusionBasis::FusionBasis(int k, std::size_t sites) : k_(k), sites_(sites) {
  if (k < 1) throw std::invalid_argument("FusionBasis: level must be >= 1");
  if (sites < 2) throw std::invalid_argument("FusionBasis: need at least 2 sites");
  enumerate();
}

FusionBasis::FusionBasis(int k, std::size_t sites, FixedBoundary boundary) : k_(k), sites_(sites), fixed_(boundary) {
  if (k < 1) throw std::invalid_argument("FusionBasis: level must be >= 1");
  if (sites < 2) throw std::invalid_argument("FusionBasis: need at least 2 sites");
  if (boundary.left < 0 || boundary.left > k || boundary.right < 0 || boundary.right > k) {
    throw std::invalid_argument("FusionBasis: boundary label outside level");
  }
  enumerate();
}

void FusionBasis::enumerate() {
  std::vector<Label> cur(sites_);
  std::function<void(std::size_t)> walk = [&](std::size_t pos) {
    if (pos == sites_) {
      const Label closing = fixed_ ? fixed_->right : cur[0];
      if (sigma_step(k_, cur[sites_ - 1], closing)) {
        lookup_.emplace(cur, states_.size());
        states_.push_back(cur);
      }
      return;
    }
    for (Label j = 0; j <= k_; ++j) {
      if (pos > 0 && !sigma_step(k_, cur[pos - 1], j)) continue;
      if (pos == 0 && fixed_ && j != fixed_->left) continue;
      cur[pos] = j;
      walk(pos + 1);
    }
  };
  walk(0);
}

std::optional<std::size_t> FusionBasis::index(const std::vector<Label>& labels) const {
  const auto it = lookup_.find(labels);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> FusionBasis::active_sites() const {
  std::vector<std::size_t> out;
  for (std::size_t x = fixed_ ? 1 : 0; x < sites_; ++x) out.push_back(x);
  return out;
}

Label FusionBasis::left_of(const std::vector<Label>& s, std::size_t x) const {
  if (x > 0) return s[x - 1];
  if (fixed_) throw std::out_of_range("FusionBasis: site 0 has no left neighbour on a fixed chain");
  return s[sites_ - 1];
}

Label FusionBasis::right_of(const std::vector<Label>& s, std::size_t x) const {
  if (x + 1 < sites_) return s[x + 1];
  return fixed_ ? fixed_->right : s[0];
}

std::uint64_t FusionBasis::transfer_matrix_count() const {
  const auto m = static_cast<std::size_t>(k_ + 1);
  using Mat = std::vector<std::vector<std::uint64_t>>;
  Mat t(m, std::vector<std::uint64_t>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) t[i][j] = sigma_step(k_, static_cast<Label>(i), static_cast<Label>(j));
  Mat p(m, std::vector<std::uint64_t>(m, 0));
  for (std::size_t i = 0; i < m; ++i) p[i][i] = 1;
  for (std::size_t s = 0; s < sites_; ++s) {
    Mat q(m, std::vector<std::uint64_t>(m, 0));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t l = 0; l < m; ++l)
        if (p[i][l])
          for (std::size_t j = 0; j < m; ++j) q[i][j] += p[i][l] * t[l][j];
    p = std::move(q);
  }
  if (fixed_) return p[static_cast<std::size_t>(fixed_->left)][static_cast<std::size_t>(fixed_->right)];
  std::uint64_t tr = 0;
  for (std::size_t i = 0; i < m; ++i) tr += p[i][i];
  return tr;
}

// -------------------------------------------------------- projectors

SparseMatrix projector_p0(const FusionCategoryData& data, const FusionBasis& basis, std::size_t x) {
  if (data.k != basis.level()) throw std::invalid_argument("projector_p0: level mismatch");
  if (x >= basis.site_count() || (!basis.periodic() && x == 0)) {
    throw std::out_of_range("projector_p0: site " + std::to_string(x) + " carries no projector");
  }
  const int k = data.k;
  std::vector<Eigen::Triplet<double>> trip;
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    std::vector<Label> s = basis.state(i);
    const Label a = basis.left_of(s, x), d = basis.right_of(s, x), j = s[x];
    if (!sigma_step(k, a, j) || !sigma_step(k, j, d)) {
      throw std::logic_error("projector_p0: inadmissible basis state");
    }
    const double fj = fsymbol(data, a, kSigma, kSigma, d, j, 0);
    if (fj == 0.0) continue;
    for (Label kx = 0; kx <= k; ++kx) {
      if (!sigma_step(k, a, kx) || !sigma_step(k, kx, d)) continue;
      const double fk = fsymbol(data, a, kSigma, kSigma, d, kx, 0);
      if (fk == 0.0) continue;
      s[x] = kx;
      const auto target = basis.index(s);
      if (!target) throw std::logic_error("projector_p0: image state missing from basis");
      trip.emplace_back(static_cast<int>(*target), static_cast<int>(i), fj * fk);
    }
  }
  const auto dim = static_cast<Eigen::Index>(basis.dim());
  SparseMatrix p(dim, dim);
  p.setFromTriplets(trip.begin(), trip.end());
  return p;
}

SparseMatrix hamiltonian(const FusionCategoryData& data, const FusionBasis& basis, const std::vector<double>& J) {
  if (J.size() != basis.site_count()) throw std::invalid_argument("hamiltonian: need one coupling per site");
  const auto dim = static_cast<Eigen::Index>(basis.dim());
  SparseMatrix h(dim, dim);
  for (std::size_t x : basis.active_sites()) {
    if (J[x] != 0.0) h += J[x] * projector_p0(data, basis, x);
  }
  h.prune(0.0);
  return h;
}

}  // namespace anyonrg::fusion
