#ifndef PNPN_MONAD_HPP
#define PNPN_MONAD_HPP

#include <optional>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "pnpn/bipoly.hpp"
#include "pnpn/linalg.hpp"

// Explicit finite-field realization of the kernel bundles: three-term
// complexes of bigraded polynomial matrices
//
//     O(src) --A--> (+)_i O(mid_i) --B--> O(tgt),      B o A = 0,
//
// with A injective and B surjective as bundle maps; the cohomology in the
// middle is the rank-n bundle under study.  All section computations are
// exact linear algebra over F_{p^e}.

namespace pnpn::model {

using gf::Elt;
using gf::FieldPtr;
using la::FqMat;
using poly::Bipoly;

using Twist = std::pair<int, int>;  // (L-degree, h-degree)

struct MonadData {
  FieldPtr F;
  int n = 0;
  long q = 0, k = 0;
  FqMat form;         // (n+1)x(n+1) nondegenerate pairing matrix
  bool flipped = false;  // false: presented over the h factor; true: over L
  bool canonical = true; // false for substituted (hyperplane-restricted) data

  Twist src, tgt;
  std::vector<Twist> mid;
  std::vector<Bipoly> acol, brow;

  /// Rank of the cohomology bundle.
  long rank() const { return (long)mid.size() - 2; }
};

FqMat identity_form(const FieldPtr& F, int n);
FqMat random_nondegenerate_form(const FieldPtr& F, int n, gf::Rng& rng);

/// The monad of E0[n,q,k](-L) for the divisor cut out by the given pairing
/// form:  A = (y_0^q,...,y_n^q, -f^{q-k})^T,  B = (l_0^q,...,l_n^q, f^k)
/// with l_j = sum_i form[i][j] x_i.  Checks B o A = 0 symbolically and the
/// form's nondegeneracy.  With flipped=true the presentation is over the L
/// factor instead (x and y exchange roles, bidegrees swap).
MonadData build_monad(int n, long q, long k, const FqMat& form, bool flipped = false);

/// Dual complex (data reshuffle: entries swap sides, twists negate).
MonadData dual_monad(const MonadData& m);

/// The presentation of the kernel over the other factor for the SAME
/// divisor; equivalently, exchange the variable blocks and transpose the
/// form.  Involution.
MonadData flip_monad(const MonadData& m);

/// Substitute x_n = y_n = 0; requires the leading n x n block of the form
/// to stay nondegenerate.
MonadData restrict_hyperplane_pair(const MonadData& m);

/// Exact dim H^0 of the cohomology bundle twisted by (s,t):
/// nullity(B on sections) - rank(A on sections).
long long h0_twist(const MonadData& m, int s, int t);

/// Coset representatives for H^0: columns in the coordinates of the middle
/// term's monomial basis (block per summand, blocks in order).
struct SectionBasis {
  long mid_dim = 0;
  std::vector<long> block_offset;  // offset of each summand's monomial block
  FqMat reps;                      // mid_dim x h0 representative columns
  FqMat alpha_image;               // basis of im(A on sections)
};
SectionBasis h0_sections(const MonadData& m, int s, int t);

// ---- lines and splitting types --------------------------------------------

enum class LineSide { L, H };  // which factor the line moves in

struct Line {
  LineSide side;
  std::vector<Elt> point;  // coordinates of the fixed point in the other factor
  std::vector<Elt> c, d;   // the line is { u*c + v*d } in the moving factor
};

/// Splitting type a_1 >= ... >= a_r of the restriction to a line in a fiber
/// of one of the projections, recovered from the exact H^0 profile
/// h^0(t) = sum_i max(0, a_i + t + 1) over t in [-q-2, q+2].
struct SplittingType {
  std::vector<int> parts;
  bool operator==(const SplittingType& o) const { return parts == o.parts; }
};

SplittingType splitting_type(const MonadData& m, const Line& line);

/// Seeded line samplers.  *_in_A lines lie inside the divisor, *_off_A meet
/// it properly; h-side samplers fix a point of the L factor.
Line sample_l_line_off_A(const MonadData& m, gf::Rng& rng);
Line sample_l_line_in_A(const MonadData& m, gf::Rng& rng);
Line sample_h_line_generic(const MonadData& m, gf::Rng& rng);
Line sample_h_line_in_A(const MonadData& m, gf::Rng& rng);

/// True iff f vanishes identically on the line.
bool line_inside_A(const MonadData& m, const Line& line);

// ---- thickened divisor -----------------------------------------------------

/// Sections over the subscheme cut out by f^k: the monad with all pieces
/// reduced mod f^k.
long long h0_twist_mod_fk(const MonadData& m, int s, int t);

/// H^0 of the rank-(n-1) complement complex
///   O(-q h) -> (n+1) O -> O(q L)   (mod f^k)
/// in the decomposition of the restriction to the thickened divisor.
long long h0_eprime_mod_fk(const MonadData& m, int s, int t);

/// dim of the bidegree-(a,b) piece of the coordinate ring mod f^k.
long long dim_ring_mod_fk(const MonadData& m, int a, int b);

struct KADecompositionEntry {
  int s, t;
  long long total, line_summand, eprime;
};
/// Dimension bookkeeping for restriction |-> O((q-k)L-kh) (+) E' over a
/// twist box; additive == true iff total = summand + eprime everywhere.
struct KADecompositionReport {
  std::vector<KADecompositionEntry> entries;
  bool additive = true;
};
KADecompositionReport restrict_to_kA(const MonadData& m, int s_lo, int s_hi,
                                     int t_lo, int t_hi);

// ---- probes ----------------------------------------------------------------

struct ProbeResult {
  bool generated = false;
  long long h0 = 0;
  long points_checked = 0;
  // First failing point, if any (x then y coordinates).
  std::optional<std::pair<std::vector<Elt>, std::vector<Elt>>> failure;
};

/// Evaluates an H^0 basis at `samples` random rational points (on the whole
/// product, or on the divisor when on_A) and checks the sections span the
/// bundle fiber at each.  Deterministic under the seed.
ProbeResult global_gen_probe(const MonadData& m, int s, int t, int samples,
                             uint64_t seed, bool on_A = false);
/// Same probe for sections reduced mod f^k at points of the divisor.
ProbeResult global_gen_probe_on_kA(const MonadData& m, int s, int t, int samples,
                                   uint64_t seed);

/// Entry-wise q-th power of a polynomial matrix; q must be a power of the
/// coefficient characteristic.
std::vector<Bipoly> frobenius_presentation(const std::vector<Bipoly>& entries, long q);

nlohmann::json monad_to_json(const MonadData& m);

// ---- internal helpers shared with the cohomology layer ---------------------

/// dim H^0(O(a,b)) on the product (0 when a or b < 0).
long long h0_dim_product(int n, int a, int b);

/// Multiplication H^0(O(src)) -> H^0(O(dst)) by a bihomogeneous polynomial of
/// bidegree dst - src, in the graded-lex monomial bases.
FqMat mult_block_h0(const Bipoly& f, int n, Twist src, Twist dst, const FieldPtr& F);

/// The B and A matrices on sections at twist (s,t).
FqMat beta_matrix(const MonadData& m, int s, int t);
FqMat alpha_matrix(const MonadData& m, int s, int t);

} // namespace pnpn::model

#endif
