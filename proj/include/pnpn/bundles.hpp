#ifndef PNPN_BUNDLES_HPP
#define PNPN_BUNDLES_HPP

#include <memory>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "pnpn/chow.hpp"

// Symbolic bundle expressions: build the bundles of interest from
// constructors (line bundles, pulled-back tautological quotients, Frobenius
// pullbacks, duals, tensor/sum/wedge/sym, the kernel family E0[n,q,k]) and
// evaluate rank / total Chern class recursively.

namespace pnpn::bundles {

enum class NodeKind {
  LineBundle,  // params a, b: the class a*L + b*h
  PullbackQh,  // rank-n quotient pulled back from the h factor
  PullbackQL,  // rank-n quotient pulled back from the L factor
  Frobenius,   // param a: pullback along the p^a-power endomorphism
  Dual,
  Tensor,
  DirectSum,
  Wedge,       // param k
  Sym,         // param k
  E0,          // params n, q, k: the kernel bundle E0[n,q,k](-L)
};

struct BundleExpr {
  NodeKind kind;
  long long p1 = 0, p2 = 0, p3 = 0;  // meaning depends on kind
  std::vector<std::shared_ptr<BundleExpr>> children;
};

using ExprPtr = std::shared_ptr<BundleExpr>;

ExprPtr line_bundle(long long a, long long b);
ExprPtr pullback_qh();
ExprPtr pullback_ql();
ExprPtr frobenius(long long a, ExprPtr child);
ExprPtr dual(ExprPtr child);
ExprPtr tensor(std::vector<ExprPtr> children);
ExprPtr direct_sum(std::vector<ExprPtr> children);
ExprPtr wedge(long long k, ExprPtr child);
ExprPtr sym(long long k, ExprPtr child);
ExprPtr e0_kernel(long long n, long long q, long long k);

/// Recursive (rank, total Chern) evaluation over the degree-truncated ring
/// for the product of two projective n-spaces in characteristic p.
chow::BundleClassData eval_expr(const BundleExpr& e, int n, long p);

nlohmann::json expr_to_json(const BundleExpr& e);
ExprPtr expr_from_json(const nlohmann::json& j);

/// True iff no twist of E0[n,q] has first Chern class proportional to L or
/// to h, i.e. iff n does not divide q-1 (n >= 2).
bool factor_pullback_obstruction(int n, long q);

/// A witness that some twist of the searched bundle could be a pullback of a
/// rank-2 bundle along a map to a space with cyclic degree-1 and degree-2
/// Chow groups: twist (a,b) (class a*L + b*h), pulled-back hyperplane class
/// alpha*L + beta*h, and Chern data (u1, u2) of the putative source.
struct PullbackSolution {
  long long a = 0, b = 0;
  long long alpha = 0, beta = 0;
  std::vector<Int> u;

  bool operator==(const PullbackSolution& o) const {
    return a == o.a && b == o.b && alpha == o.alpha && beta == o.beta && u == o.u;
  }
};

/// Enumerates twists |a|,|b| <= box of a rank-2 class on the product of two
/// projective planes and solves the degree-1 and degree-2 coefficient
/// equations (u1 normalized into {0,1} by an even twist of the source).
/// Deterministic lexicographic order in (a, b).  Empty output = no twist
/// matches any pullback shape at this level.
std::vector<PullbackSolution> nondegeneracy_search(long rank, const chow::ChowClass& c,
                                                   long box);

} // namespace pnpn::bundles

#endif
