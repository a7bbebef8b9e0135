#ifndef PNPN_CHOW_HPP
#define PNPN_CHOW_HPP

#include <functional>
#include <vector>

#include "pnpn/ints.hpp"

// Exact arithmetic in the bigraded intersection ring
//   Z[L,h] / (L^{n+1}, h^{n+1})
// of a product of two n-dimensional projective spaces, plus the total-Chern
// functor calculus built on it (twists, duals, Frobenius scaling, wedge/sym
// powers, Euler characteristics via Chern character and Todd class).

namespace pnpn::chow {

/// Element of Z[L,h]/(L^{n+1},h^{n+1}) (or with rational coefficients):
/// coeff(i,j) is the coefficient of L^i h^j, 0 <= i,j <= n.
template <class R>
class ChowGrid {
public:
  ChowGrid() : n_(0), c_(1) {}
  explicit ChowGrid(int n) : n_(n), c_((n + 1) * (n + 1)) {
    if (n < 0) throw std::invalid_argument("ChowGrid: negative dimension");
  }

  static ChowGrid one(int n) {
    ChowGrid g(n);
    g.at(0, 0) = 1;
    return g;
  }
  /// a*L + b*h as a degree-1 class.
  static ChowGrid divisor(int n, const R& a, const R& b) {
    ChowGrid g(n);
    if (n >= 1) {
      g.at(1, 0) = a;
      g.at(0, 1) = b;
    }
    return g;
  }

  int n() const { return n_; }
  R& at(int i, int j) { return c_[i * (n_ + 1) + j]; }
  const R& at(int i, int j) const { return c_[i * (n_ + 1) + j]; }

  bool operator==(const ChowGrid& o) const { return n_ == o.n_ && c_ == o.c_; }
  bool operator!=(const ChowGrid& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const auto& v : c_)
      if (v != 0) return false;
    return true;
  }

  ChowGrid& operator+=(const ChowGrid& o) {
    check_same(o);
    for (size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  ChowGrid& operator-=(const ChowGrid& o) {
    check_same(o);
    for (size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  friend ChowGrid operator+(ChowGrid a, const ChowGrid& b) { return a += b; }
  friend ChowGrid operator-(ChowGrid a, const ChowGrid& b) { return a -= b; }

  ChowGrid operator-() const {
    ChowGrid r(n_);
    for (size_t k = 0; k < c_.size(); ++k) r.c_[k] = -c_[k];
    return r;
  }

  friend ChowGrid operator*(const ChowGrid& a, const ChowGrid& b) {
    a.check_same(b);
    int n = a.n_;
    ChowGrid r(n);
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j) {
        const R& v = a.at(i, j);
        if (v == 0) continue;
        for (int k = 0; i + k <= n; ++k)
          for (int l = 0; j + l <= n; ++l) {
            const R& w = b.at(k, l);
            if (w == 0) continue;
            r.at(i + k, j + l) += v * w;
          }
      }
    return r;
  }
  ChowGrid& operator*=(const ChowGrid& o) { return *this = *this * o; }

  ChowGrid& scale(const R& s) {
    for (auto& v : c_) v *= s;
    return *this;
  }

  /// Part of total degree d (i + j == d).
  ChowGrid degree_part(int d) const {
    ChowGrid r(n_);
    for (int i = 0; i <= n_; ++i)
      for (int j = 0; j <= n_; ++j)
        if (i + j == d) r.at(i, j) = at(i, j);
    return r;
  }

  int max_degree() const { return 2 * n_; }

  /// Multiply the total-degree-d component by factor(d).
  ChowGrid scale_by_degree(const std::function<R(int)>& factor) const {
    ChowGrid r(n_);
    for (int i = 0; i <= n_; ++i)
      for (int j = 0; j <= n_; ++j)
        if (at(i, j) != 0) r.at(i, j) = at(i, j) * factor(i + j);
    return r;
  }

  /// Multiplicative inverse of a class with constant term 1 (Neumann series;
  /// the augmentation-positive part is nilpotent under truncation).
  ChowGrid inverse() const {
    if (at(0, 0) != 1)
      throw non_unit_error("inv_unit: constant term must be 1");
    ChowGrid m = *this;
    m.at(0, 0) = 0;
    ChowGrid s = one(n_);
    ChowGrid t = one(n_);
    for (int step = 0; step < max_degree(); ++step) {
      t = -(t * m);
      if (t.is_zero()) break;
      s += t;
    }
    return s;
  }

private:
  void check_same(const ChowGrid& o) const {
    if (n_ != o.n_)
      throw dimension_mismatch("ChowGrid: ambient dimensions differ");
  }

  int n_;
  std::vector<R> c_;
};

using ChowClass = ChowGrid<Int>;
using ChowClassQ = ChowGrid<Rat>;

ChowClassQ to_rational(const ChowClass& c);
/// Fails with arithmetic_fault if any coefficient has a denominator.
ChowClass to_integral(const ChowClassQ& c);

inline ChowClass chow_mul(const ChowClass& a, const ChowClass& b) { return a * b; }
inline ChowClass inv_unit(const ChowClass& a) { return a.inverse(); }

/// Rank plus total Chern class (constant term 1).
struct BundleClassData {
  long rank = 0;
  ChowClass total;

  bool operator==(const BundleClassData& o) const {
    return rank == o.rank && total == o.total;
  }
};

/// Total Chern class of E0[n,q,k](-L), the rank-n kernel bundle: the monad
///   O(-q h) -> (n+1) O (+) O((q-k)L - k h) -> O(q L)
/// gives c = (1 + (q-k)L - k h) / ((1 - q h)(1 + q L)).
BundleClassData chern_E0_symbolic(int n, long q, long k);

/// Total Chern class of E (X) M for M the line bundle a*L + b*h:
/// c_j(E(x)M) = sum_i C(r-i, j-i) c_i(E) m^{j-i}.
ChowClass twist_chern(long rank, const ChowClass& c, const Int& a, const Int& b);

/// c_i |-> (-1)^i c_i.
ChowClass dual_chern(long rank, const ChowClass& c);

/// Cycle-class action of the q-power Frobenius: codimension-d part scales
/// by q^d. Requires q >= 1.
ChowClass frobenius_pull_chern(const ChowClass& c, long q);

enum class PowerKind { Wedge, Sym };

/// Rank and total Chern class of Wedge^k E or Sym^k E, computed through the
/// Chern character (Newton's identities both ways, exact rationals in the
/// middle, integrality enforced on output).
BundleClassData wedge_sym_chern(long rank, const ChowClass& c, long k, PowerKind kind);

/// Chern character r + p_1 + p_2/2! + ... as a rational class.
ChowClassQ chern_character(long rank, const ChowClass& c);
/// Inverse of chern_character; the constant term of ch must be a nonnegative
/// integer (the rank).
BundleClassData chern_class_from_character(const ChowClassQ& ch);

/// Tensor product via multiplicativity of the Chern character.
BundleClassData tensor_chern(const BundleClassData& a, const BundleClassData& b);

/// Todd class of the product of two projective n-spaces.
ChowClassQ todd_class(int n);

/// Exact Euler characteristic deg(ch . Td) with an integrality assertion.
Int euler_char_hrr(long rank, const ChowClass& c);

} // namespace pnpn::chow

#endif
