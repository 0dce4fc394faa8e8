#include "anyonrg/tl_diagram.hpp"

#include <cmath>
#include <deque>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace anyonrg::tl {

// ---------------------------------------------------------------- Laurent

Laurent::Laurent(long long constant) {
  if (constant != 0) terms_[0] = constant;
}

Laurent Laurent::monomial(long long coeff, int power) {
  Laurent out;
  if (coeff != 0) out.terms_[power] = coeff;
  return out;
}

Laurent Laurent::delta() { return monomial(-1, 2) + monomial(-1, -2); }

long long Laurent::coeff(int power) const {
  auto it = terms_.find(power);
  return it == terms_.end() ? 0 : it->second;
}

void Laurent::prune() {
  std::erase_if(terms_, [](const auto& kv) { return kv.second == 0; });
}

Laurent& Laurent::operator+=(const Laurent& o) {
  for (const auto& [p, c] : o.terms_) terms_[p] += c;
  prune();
  return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) {
  for (const auto& [p, c] : o.terms_) terms_[p] -= c;
  prune();
  return *this;
}

Laurent& Laurent::operator*=(const Laurent& o) {
  std::map<int, long long> out;
  for (const auto& [p, c] : terms_) {
    for (const auto& [q, d] : o.terms_) out[p + q] += c * d;
  }
  terms_ = std::move(out);
  prune();
  return *this;
}

Laurent Laurent::operator-() const {
  Laurent out = *this;
  for (auto& [p, c] : out.terms_) c = -c;
  return out;
}

Laurent Laurent::pow(unsigned n) const {
  Laurent out(1);
  for (unsigned i = 0; i < n; ++i) out *= *this;
  return out;
}

std::complex<double> Laurent::evaluate(std::complex<double> a) const {
  std::complex<double> acc = 0.0;
  for (const auto& [p, c] : terms_) acc += static_cast<double>(c) * std::pow(a, p);
  return acc;
}

std::string Laurent::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, c] : terms_) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    const long long mag = c < 0 ? -c : c;
    if (p == 0) {
      os << mag;
      continue;
    }
    if (mag != 1) os << mag << "*";
    os << "A";
    if (p != 1) os << "^" << p;
  }
  return os.str();
}

// ---------------------------------------------------------- PlanarPairing

bool PlanarPairing::is_planar(const std::vector<std::uint8_t>& partner) {
  const std::size_t m = partner.size();
  if (m == 0 || m % 2 != 0) return false;
  std::vector<std::size_t> open;
  for (std::size_t p = 0; p < m; ++p) {
    const std::size_t q = partner[p];
    if (q >= m || q == p || partner[q] != p) return false;
    if (q > p) {
      open.push_back(p);
    } else {
      if (open.empty() || open.back() != q) return false;
      open.pop_back();
    }
  }
  return open.empty();
}

PlanarPairing::PlanarPairing(std::vector<std::uint8_t> partner) : partner_(std::move(partner)) {
  if (!is_planar(partner_)) throw std::invalid_argument("PlanarPairing: not a planar perfect matching");
}

PlanarPairing PlanarPairing::identity(int n) {
  if (n < 1 || n > 127) throw std::invalid_argument("identity: strand count must be in [1, 127]");
  std::vector<std::uint8_t> p(2 * n);
  for (int i = 0; i < n; ++i) {
    p[i] = static_cast<std::uint8_t>(2 * n - 1 - i);
    p[2 * n - 1 - i] = static_cast<std::uint8_t>(i);
  }
  return PlanarPairing(std::move(p));
}

PlanarPairing PlanarPairing::cup_cap(int n, int i) {
  if (i < 1 || i > n - 1) throw std::invalid_argument("generator: index out of range");
  std::vector<std::uint8_t> p = identity(n).raw();
  const int a = i - 1, b = i;  // 0-based strand positions
  const int ta = 2 * n - 1 - a, tb = 2 * n - 1 - b;
  p[a] = static_cast<std::uint8_t>(b);
  p[b] = static_cast<std::uint8_t>(a);
  p[ta] = static_cast<std::uint8_t>(tb);
  p[tb] = static_cast<std::uint8_t>(ta);
  return PlanarPairing(std::move(p));
}

std::pair<PlanarPairing, int> stack(const PlanarPairing& upper, const PlanarPairing& lower) {
  const int n = upper.strands();
  if (lower.strands() != n) throw std::invalid_argument("stack: strand count mismatch");

  std::vector<std::uint8_t> out(2 * n);
  std::vector<char> middle_seen(n, 0);

  // Follows a strand entering `upper` (from_upper) or `lower` at `point`
  // until it leaves through the outer boundary; returns the result point.
  auto walk = [&](bool in_upper, int point) {
    while (true) {
      const PlanarPairing& d = in_upper ? upper : lower;
      const int q = d.partner(point);
      const bool q_top = d.is_top(q);
      const int pos = d.position(q);
      if (in_upper && q_top) return 2 * n - 1 - pos;
      if (!in_upper && !q_top) return pos;
      middle_seen[pos] = 1;
      in_upper = !in_upper;
      point = in_upper ? upper.bottom(pos) : lower.top(pos);
    }
  };

  for (int i = 0; i < n; ++i) {
    const int end = walk(false, lower.bottom(i));
    out[i] = static_cast<std::uint8_t>(end);
    out[end] = static_cast<std::uint8_t>(i);
  }
  for (int i = 0; i < n; ++i) {
    const int start = 2 * n - 1 - i;
    const int end = walk(true, upper.top(i));
    out[start] = static_cast<std::uint8_t>(end);
    out[end] = static_cast<std::uint8_t>(start);
  }

  int loops = 0;
  for (int j = 0; j < n; ++j) {
    if (middle_seen[j]) continue;
    ++loops;
    int pos = j;
    bool in_upper = true;
    do {
      middle_seen[pos] = 1;
      const PlanarPairing& d = in_upper ? upper : lower;
      const int q = d.partner(in_upper ? d.bottom(pos) : d.top(pos));
      pos = d.position(q);
      in_upper = !in_upper;
    } while (pos != j || !in_upper);
  }
  return {PlanarPairing(std::move(out)), loops};
}

int closure_loops(const PlanarPairing& p) {
  const int n = p.strands();
  std::vector<char> seen(2 * n, 0);
  int loops = 0;
  for (int start = 0; start < 2 * n; ++start) {
    if (seen[start]) continue;
    ++loops;
    int point = start;
    do {
      seen[point] = 1;
      const int q = p.partner(point);
      seen[q] = 1;
      // closing arc joins top position i with bottom position i
      const int pos = p.position(q);
      point = p.is_top(q) ? p.bottom(pos) : p.top(pos);
    } while (point != start);
  }
  return loops;
}

// ------------------------------------------------------------- elements


TLElement identity(int n) {
  if (n < 1) throw std::invalid_argument("identity: n must be >= 1");
  TLElement x(n);
  x.add(PlanarPairing::identity(n), Laurent(1));
  return x;
}

TLElement generator(int n, int i) {
  if (n < 2 || i < 1 || i > n - 1) throw std::invalid_argument("generator: index out of range");
  TLElement x(n);
  x.add(PlanarPairing::cup_cap(n, i), Laurent(1));
  return x;
}

TLElement kauffman_braid(int n, int i, Crossing sign) {
  const TLElement one = identity(n);
  const TLElement e = generator(n, i);
  if (sign == Crossing::over) return Laurent::A() * one + Laurent::A_inv() * e;
  return Laurent::A_inv() * one + Laurent::A() * e;
}

TLElement compose(const TLElement& a, const TLElement& b, const Laurent& loop_value) {
  a.check_same(b);
  TLElement out(a.strands());
  for (const auto& [pa, ca] : a.terms()) {
    for (const auto& [pb, cb] : b.terms()) {
      auto [p, loops] = stack(pa, pb);
      out.add(p, ca * cb * loop_value.pow(static_cast<unsigned>(loops)));
    }
  }
  return out;
}

TLElement compose(const TLElement& a, const TLElement& b) { return compose(a, b, Laurent::delta()); }

TLElement compose_all(const std::vector<TLElement>& word) {
  if (word.empty()) throw std::invalid_argument("compose_all: empty word");
  TLElement acc = word.front();
  for (std::size_t i = 1; i < word.size(); ++i) acc = compose(acc, word[i]);
  return acc;
}

Laurent trace_closure(const TLElement& x) {
  Laurent acc;
  const Laurent d = Laurent::delta();
  for (const auto& [p, c] : x.terms()) acc += c * d.pow(static_cast<unsigned>(closure_loops(p)));
  return acc;
}

NumericTLElement evaluate(const TLElement& x, std::complex<double> A) {
  NumericTLElement out(x.strands());
  for (const auto& [p, c] : x.terms()) out.add(p, c.evaluate(A));
  return out;
}

std::complex<double> ising_kauffman_A() { return std::polar(1.0, 3.0 * std::numbers::pi / 8.0); }

std::vector<std::complex<double>> ising_kauffman_roots() {
  const double t = 3.0 * std::numbers::pi / 8.0;
  return {std::polar(1.0, t), std::polar(1.0, -t), -std::polar(1.0, t), -std::polar(1.0, -t)};
}

// ------------------------------------------------------------ relations

bool RelationReport::all_passed() const {
  for (const auto& c : checks) {
    if (!c.passed()) return false;
  }
  return true;
}

RelationReport verify_relations(int n) {
  return verify_relations(n, [](const TLElement& a, const TLElement& b) { return compose(a, b); });
}

RelationReport verify_relations(int n, const ComposeFn& product) {
  if (n < 3) throw std::invalid_argument("verify_relations: need n >= 3");
  RelationReport report{n, {{"e_x^2 = delta e_x"}, {"e_x e_{x+-1} e_x = e_x"}, {"e_x e_y = e_y e_x (|x-y|>=2)"}}};
  const Laurent d = Laurent::delta();
  auto tally = [](RelationCheck& c, bool ok) {
    ++c.checked;
    if (!ok) ++c.failed;
  };
  for (int i = 1; i < n; ++i) {
    const TLElement ei = generator(n, i);
    tally(report.checks[0], product(ei, ei) == d * ei);
    for (int j : {i - 1, i + 1}) {
      if (j < 1 || j > n - 1) continue;
      const TLElement ej = generator(n, j);
      tally(report.checks[1], product(product(ei, ej), ei) == ei);
    }
    for (int j = i + 2; j < n; ++j) {
      const TLElement ej = generator(n, j);
      tally(report.checks[2], product(ei, ej) == product(ej, ei));
    }
  }
  return report;
}

RelationReport verify_braid_relations(int n) {
  if (n < 2) throw std::invalid_argument("verify_braid_relations: need n >= 2");
  RelationReport report{n, {{"Reidemeister II: b_i b_i^-1 = 1"}, {"Reidemeister II: b_i^-1 b_i = 1"},
                            {"Reidemeister III: b_i b_{i+1} b_i = b_{i+1} b_i b_{i+1}"}}};
  const TLElement one = identity(n);
  auto tally = [](RelationCheck& c, bool ok) {
    ++c.checked;
    if (!ok) ++c.failed;
  };
  for (int i = 1; i < n; ++i) {
    const TLElement bp = kauffman_braid(n, i, Crossing::over);
    const TLElement bm = kauffman_braid(n, i, Crossing::under);
    tally(report.checks[0], compose(bp, bm) == one);
    tally(report.checks[1], compose(bm, bp) == one);
    if (i + 1 < n) {
      const TLElement cp = kauffman_braid(n, i + 1, Crossing::over);
      tally(report.checks[2], compose_all({bp, cp, bp}) == compose_all({cp, bp, cp}));
      const TLElement cm = kauffman_braid(n, i + 1, Crossing::under);
      tally(report.checks[2], compose_all({bm, cm, bm}) == compose_all({cm, bm, cm}));
    }
  }
  return report;
}

std::vector<DiagramWord> enumerate_diagrams(int n) {
  if (n < 1) throw std::invalid_argument("enumerate_diagrams: n must be >= 1");
  std::vector<DiagramWord> out;
  std::set<PlanarPairing> seen;
  std::deque<DiagramWord> queue;
  queue.push_back({PlanarPairing::identity(n), {}, 0});
  seen.insert(queue.front().diagram);
  while (!queue.empty()) {
    DiagramWord cur = std::move(queue.front());
    queue.pop_front();
    for (int i = 1; i < n; ++i) {
      auto [next, loops] = stack(cur.diagram, PlanarPairing::cup_cap(n, i));
      if (!seen.insert(next).second) continue;
      DiagramWord w{next, cur.word, cur.loops + loops};
      w.word.push_back(i);
      queue.push_back(std::move(w));
    }
    out.push_back(std::move(cur));
  }
  return out;
}

}  // namespace anyonrg::tl
