#ifndef PNPN_BIPOLY_HPP
#define PNPN_BIPOLY_HPP

#include <map>
#include <utility>
#include <vector>

#include "pnpn/gf.hpp"

namespace pnpn::poly {

using gf::Elt;
using gf::FieldPtr;

using Expo = std::vector<uint8_t>;

/// All exponent vectors of the given length summing to d, lexicographically
/// descending (x0-major).  Cached; do not mutate the result.
const std::vector<Expo>& monomials(int nvars, int d);

/// Position of `e` in monomials(nvars, deg(e)).
long monomial_index(const Expo& e);

/// Bihomogeneous polynomial in two blocks of variables x_0..x_nx-1 /
/// y_0..y_ny-1 over a Galois field.  Terms are kept in a sorted map keyed by
/// (x-exponents, y-exponents).
class Bipoly {
public:
  using Key = std::pair<Expo, Expo>;

  Bipoly() = default;
  Bipoly(FieldPtr F, int nx, int ny) : F_(std::move(F)), nx_(nx), ny_(ny) {}

  static Bipoly zero(FieldPtr F, int nx, int ny) { return Bipoly(F, nx, ny); }
  static Bipoly constant(FieldPtr F, int nx, int ny, Elt c);
  /// x_i or y_i as a linear monomial.
  static Bipoly variable(FieldPtr F, int nx, int ny, bool y_block, int i);

  const FieldPtr& field() const { return F_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  bool is_zero() const { return t_.empty(); }
  size_t term_count() const { return t_.size(); }
  const std::map<Key, Elt>& terms() const { return t_; }

  void add_term(const Expo& xe, const Expo& ye, Elt c);

  /// (x-degree, y-degree); bihomogeneity is enforced on add_term.
  std::pair<int, int> bidegree() const { return {degx_, degy_}; }

  Bipoly operator+(const Bipoly& o) const;
  Bipoly operator-() const;
  Bipoly operator-(const Bipoly& o) const { return *this + (-o); }
  Bipoly operator*(const Bipoly& o) const;
  Bipoly scale(Elt c) const;
  bool operator==(const Bipoly& o) const { return t_ == o.t_; }

  Bipoly power(long k) const;
  /// Entry-wise q-th power; q must be a power of the field characteristic
  /// (then f -> f^q raises each coefficient and exponent, no cross terms).
  Bipoly frobenius_power(long q) const;

  /// Substitute numbers for the y block (resp. x block), leaving a
  /// polynomial in the other block (ny = 0 after eval_y).
  Bipoly eval_y(const std::vector<Elt>& point) const;
  Bipoly eval_x(const std::vector<Elt>& point) const;
  Elt eval(const std::vector<Elt>& x, const std::vector<Elt>& y) const;

  /// Set the last variable of both blocks to zero and drop it (restriction
  /// to the coordinate hyperplane pair).
  Bipoly drop_last_variables() const;

  /// Restriction to a line u*c + v*d in the x block with the y block
  /// evaluated at a point (or symmetrically): a binary form in (u,v),
  /// returned as coefficients of u^{d-i} v^i, i = 0..deg.
  std::vector<Elt> restrict_line_x(const std::vector<Elt>& c, const std::vector<Elt>& d,
                                   const std::vector<Elt>& y_point) const;
  std::vector<Elt> restrict_line_y(const std::vector<Elt>& x_point,
                                   const std::vector<Elt>& c,
                                   const std::vector<Elt>& d) const;

  /// Exchange the two variable blocks (x <-> y).
  Bipoly swap_blocks() const;

private:
  FieldPtr F_;
  int nx_ = 0, ny_ = 0;
  int degx_ = -1, degy_ = -1;  // -1 until the first term lands
  std::map<Key, Elt> t_;
};

/// The pairing form f = sum a_ij x_i y_j of an (n+1)x(n+1) coefficient
/// matrix (row index i on x, column index j on y).
Bipoly pairing_form(FieldPtr F, const std::vector<std::vector<Elt>>& a);

} // namespace pnpn::poly

#endif
