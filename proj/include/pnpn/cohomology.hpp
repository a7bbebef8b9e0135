#ifndef PNPN_COHOMOLOGY_HPP
#define PNPN_COHOMOLOGY_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "pnpn/bipoly.hpp"
#include "pnpn/linalg.hpp"

// Line-bundle cohomology on projective space and its squares (Bott plus
// Kunneth), explicit multiplication matrices between cohomology strata, and
// an exact-sequence dimension chaser that produces certified dimensions or
// honest intervals.

namespace pnpn::cohom {

using gf::FieldPtr;
using la::FqMat;
using poly::Bipoly;

/// h^i(P^n, O(d)) for i = 0..n.
std::vector<long long> bott_h(int n, int d);

/// h^i(P^n x P^n, O(a,b)) for i = 0..2n (nonzero only at i in {0, n, 2n}).
std::vector<long long> kunneth_h(int n, int a, int b);

/// Basis labels for the cohomology strata: signed exponent vectors, one per
/// factor.  Nonnegative vectors are section monomials; vectors with all
/// entries <= -1 index the top-cohomology (local-cohomology) monomials.
struct CohomBasis {
  int n = 0, i = 0, a = 0, b = 0;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> labels;
};
CohomBasis stratum_basis(int n, int i, int a, int b);

/// Matrix of multiplication by a bihomogeneous f on the degree-i stratum,
/// from twist (a,b) to (a2,b2).  On dual-monomial factors the action is
/// contraction: exponents add and any term leaving the all-negative range
/// dies.  i must be 0, n or 2n; deg f must equal the twist difference.
FqMat mult_matrix(const FieldPtr& F, int n, int i, std::pair<int, int> src,
                  std::pair<int, int> dst, const Bipoly& f);

// ---- intervals and the chaser ----------------------------------------------

inline constexpr long long kInfDim = -1;  // "unbounded above"

struct Ival {
  long long lo = 0;
  long long hi = kInfDim;

  static Ival exact(long long v) { return {v, v}; }
  static Ival atLeast(long long v) { return {v, kInfDim}; }
  bool is_exact() const { return hi == lo; }
  bool contains(long long v) const { return v >= lo && (hi == kInfDim || v <= hi); }
};

/// Long-exact-sequence engine: terms T_0 -> T_1 -> ... -> T_m with zero
/// maps off both ends; dims[j] = dim T_j, ranks[j] = rank(T_j -> T_{j+1}).
/// Exactness forces dims[j] = ranks[j-1] + ranks[j]; interval propagation to
/// a fixpoint yields per-entry feasible ranges.  Throws model_error if the
/// constraints are infeasible.
struct ChaseResult {
  std::vector<Ival> dims, ranks;
};
ChaseResult les_chase(std::vector<Ival> dims, std::vector<Ival> ranks);

/// The long exact cohomology sequence of 0 -> A -> B -> C -> 0 on a space
/// with top degree `maxi`: known dims (exact) and per-degree rank intervals
/// for the two inner maps; connecting ranks free.  Returns the chased dims
/// of all three objects (index [obj][degree]).
struct SesChase {
  std::vector<std::vector<Ival>> dims;  // [3][maxi+1]
  bool fully_exact() const;
};
SesChase ses_chase(int maxi, const std::vector<Ival>& dimA,
                   const std::vector<Ival>& dimB, const std::vector<Ival>& dimC,
                   const std::vector<Ival>& rankAB, const std::vector<Ival>& rankBC);

// ---- Euler characteristics -------------------------------------------------

/// chi(O(a,b)) on the product, with the polynomial binomial extension.
Int chi_line_bundle(int n, long long a, long long b);

/// Exact chi of E0[n,q,k](-L)(s,t) by additivity over the monad:
/// chi = (n+1) chi(O(s,t)) + chi(O(s+q-k, t-k)) - chi(O(s, t-q)) - chi(O(s+q, t)).
Int monad_chi(int n, long q, long k, long long s, long long t);

// ---- tables -----------------------------------------------------------------

struct CohomTableEntry {
  int i = 0, s = 0, t = 0;
  Ival dim;
  bool exact() const { return dim.is_exact(); }
};

struct CohomTable {
  int n = 0;
  std::vector<CohomTableEntry> entries;

  const CohomTableEntry* find(int i, int s, int t) const;
  nlohmann::json to_json() const;
  std::string to_csv() const;
};

} // namespace pnpn::cohom

#endif
