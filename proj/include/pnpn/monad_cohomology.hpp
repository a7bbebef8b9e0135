#ifndef PNPN_MONAD_COHOMOLOGY_HPP
#define PNPN_MONAD_COHOMOLOGY_HPP

#include "pnpn/cohomology.hpp"
#include "pnpn/monad.hpp"

// Full cohomology tables for monad cohomology bundles.  Per twist:
//   - h^0 exact (sections nullspace), h^{2n} exact (dual monad + Serre),
//   - chi exact (additivity over the monad terms),
//   - middle degrees by chasing the two short exact sequences
//       0 -> K -> Mid -> Tgt -> 0,   0 -> Src -> K -> E -> 0
//     with multiplication-matrix ranks on the {0, n, 2n} strata; rank
//     intervals that stay undetermined are reported as honest intervals.

namespace pnpn::cohom {

/// chi(E(s,t)) for the cohomology bundle of an arbitrary three-term complex
/// of line-bundle sums.
Int monad_chi_generic(const model::MonadData& m, long long s, long long t);

CohomTable monad_cohom_table(const model::MonadData& m, int s_lo, int s_hi,
                             int t_lo, int t_hi);

/// The monad restricted to a projection fiber through the given point: a
/// complex with one trivialized factor (twists and entry degrees collapse
/// onto the moving factor).
model::MonadData fiber_monad(const model::MonadData& m, model::LineSide side,
                             const std::vector<gf::Elt>& point);

} // namespace pnpn::cohom

#endif
