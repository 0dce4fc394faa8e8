#pragma once

// Planar Temperley-Lieb diagrams with exact Laurent-polynomial coefficients
// in the Kauffman variable A, loop value delta = -A^2 - A^-2.

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <type_traits>
#include <string>
#include <vector>

namespace anyonrg::tl {

/// Integer Laurent polynomial in A.
class Laurent {
 public:
  Laurent() = default;
  Laurent(long long constant);  // NOLINT: implicit from integers is intended
  static Laurent monomial(long long coeff, int power);
  static Laurent A() { return monomial(1, 1); }
  static Laurent A_inv() { return monomial(1, -1); }
  /// -A^2 - A^-2
  static Laurent delta();

  bool is_zero() const { return terms_.empty(); }
  long long coeff(int power) const;
  const std::map<int, long long>& terms() const { return terms_; }

  Laurent& operator+=(const Laurent& o);
  Laurent& operator-=(const Laurent& o);
  Laurent& operator*=(const Laurent& o);
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator*(Laurent a, const Laurent& b) { return a *= b; }
  Laurent operator-() const;
  Laurent pow(unsigned n) const;
  friend bool operator==(const Laurent&, const Laurent&) = default;

  std::complex<double> evaluate(std::complex<double> a) const;
  std::string str() const;

 private:
  void prune();
  std::map<int, long long> terms_;
};

/// Non-crossing perfect matching of the 2n boundary points of an n-strand box.
///
/// Points are numbered counterclockwise: bottom 0..n-1 left to right, then
/// top n..2n-1 right to left, so top position i (from the left) is 2n-1-i.
class PlanarPairing {
 public:
  /// Throws std::invalid_argument unless `partner` is a planar involution
  /// without fixed points on an even number of points.
  explicit PlanarPairing(std::vector<std::uint8_t> partner);

  static PlanarPairing identity(int n);
  static PlanarPairing cup_cap(int n, int i);

  int strands() const { return static_cast<int>(partner_.size() / 2); }
  int partner(int point) const { return partner_[point]; }
  int bottom(int i) const { return i; }
  int top(int i) const { return 2 * strands() - 1 - i; }
  bool is_top(int point) const { return point >= strands(); }
  /// Left-to-right position of a boundary point on its edge.
  int position(int point) const { return is_top(point) ? 2 * strands() - 1 - point : point; }
  const std::vector<std::uint8_t>& raw() const { return partner_; }

  static bool is_planar(const std::vector<std::uint8_t>& partner);

  friend auto operator<=>(const PlanarPairing&, const PlanarPairing&) = default;
  friend bool operator==(const PlanarPairing&, const PlanarPairing&) = default;

 private:
  std::vector<std::uint8_t> partner_;
};

/// Stacks `upper` on top of `lower`; returns the resulting pairing and the
/// number of closed loops removed.
std::pair<PlanarPairing, int> stack(const PlanarPairing& upper, const PlanarPairing& lower);

/// Loops formed when the top of the diagram is closed onto its bottom.
int closure_loops(const PlanarPairing& p);

template <class Scalar>
class BasicElement {
 public:
  using Terms = std::map<PlanarPairing, Scalar>;

  explicit BasicElement(int n) : n_(n) {}
  BasicElement(int n, Terms terms) : n_(n), terms_(std::move(terms)) { prune(); }

  int strands() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add(const PlanarPairing& p, const Scalar& c) {
    auto [it, inserted] = terms_.try_emplace(p, c);
    if (!inserted) it->second += c;
    if (is_zero_scalar(it->second)) terms_.erase(it);
  }

  BasicElement& operator+=(const BasicElement& o) {
    check_same(o);
    for (const auto& [p, c] : o.terms_) add(p, c);
    return *this;
  }
  BasicElement& operator-=(const BasicElement& o) {
    check_same(o);
    for (const auto& [p, c] : o.terms_) add(p, Scalar{} - c);
    return *this;
  }
  friend BasicElement operator+(BasicElement a, const BasicElement& b) { return a += b; }
  friend BasicElement operator-(BasicElement a, const BasicElement& b) { return a -= b; }
  friend BasicElement operator*(const Scalar& s, const BasicElement& x) {
    BasicElement out(x.n_);
    for (const auto& [p, c] : x.terms_) out.add(p, s * c);
    return out;
  }
  friend bool operator==(const BasicElement& a, const BasicElement& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  void check_same(const BasicElement& o) const {
    if (o.n_ != n_) throw std::invalid_argument("TL element: strand count mismatch");
  }

 private:
  static bool is_zero_scalar(const Scalar& s) {
    if constexpr (std::is_same_v<Scalar, Laurent>) {
      return s.is_zero();
    } else {
      return s == Scalar{};
    }
  }
  void prune() {
    std::erase_if(terms_, [](const auto& kv) { return is_zero_scalar(kv.second); });
  }

  int n_;
  Terms terms_;
};

using TLElement = BasicElement<Laurent>;
using NumericTLElement = BasicElement<std::complex<double>>;

enum class Crossing { over, under };

TLElement identity(int n);
TLElement generator(int n, int i);  // 1 <= i <= n-1, strands i and i+1 (1-based)
/// A*1 + A^-1*e_i for over, A^-1*1 + A*e_i for under.
TLElement kauffman_braid(int n, int i, Crossing sign);

/// Product `a * b`: a stacked on top of b. Each closed loop contributes
/// `loop_value` (delta by default).
TLElement compose(const TLElement& a, const TLElement& b);
TLElement compose(const TLElement& a, const TLElement& b, const Laurent& loop_value);
/// Left-to-right product of a word of elements.
TLElement compose_all(const std::vector<TLElement>& word);

Laurent trace_closure(const TLElement& x);

NumericTLElement evaluate(const TLElement& x, std::complex<double> A);

/// Default evaluation point for Ising: A = e^{3 i pi / 8}, delta = sqrt 2.
std::complex<double> ising_kauffman_A();
/// The four unit-circle solutions of -A^2 - A^-2 = sqrt 2.
std::vector<std::complex<double>> ising_kauffman_roots();

struct RelationCheck {
  std::string relation;
  int checked = 0;
  int failed = 0;
  bool passed() const { return failed == 0; }
};

struct RelationReport {
  int strands = 0;
  std::vector<RelationCheck> checks;
  bool all_passed() const;
};

/// Checks e_i^2 = delta e_i, e_i e_{i+-1} e_i = e_i and far commutativity for
/// all valid indices. `product` overrides composition (negative controls).
using ComposeFn = std::function<TLElement(const TLElement&, const TLElement&)>;
RelationReport verify_relations(int n);
RelationReport verify_relations(int n, const ComposeFn& product);
/// Reidemeister II (both orders) and III for all adjacent positions.
RelationReport verify_braid_relations(int n);

/// Every basis diagram on n strands paired with one generator word that
/// produces it, and the loop count picked up along the way:
/// word product = delta^loops * diagram. Word entries are 1-based indices.
struct DiagramWord {
  PlanarPairing diagram;
  std::vector<int> word;
  int loops = 0;
};
std::vector<DiagramWord> enumerate_diagrams(int n);

}  // namespace anyonrg::tl
