#ifndef PNPN_CHARP_HPP
#define PNPN_CHARP_HPP

#include <vector>

#include "pnpn/linalg.hpp"

// Characteristic-2 multilinear algebra on the tautological quotient bundle Q
// of the projective plane (or P^n): graded-piece models of Q (x) Q, Sym^2 Q,
// Wedge^2 Q and the Frobenius pullback F*Q built from the Euler presentation;
// the divided square D^2 Q realized as the symmetric tensors inside Q (x) Q;
// exactness of
//   0 -> F*Q -> Sym^2 Q -> Wedge^2 Q -> 0
//   0 -> Wedge^2 Q -> D^2 Q -> F*Q -> 0
// degree by degree, with the section-dimension bookkeeping of the D^2 Q
// resolution.

namespace pnpn::charp {

struct DegreeReport {
  int d = 0;
  long long fq = 0, sym2 = 0, lam2 = 0, qq = 0, d2 = 0;  // section dims
  bool sq_injective = false;
  bool pr_surjective = false;
  bool ses1_exact_mid = false;   // ker(Sym2 -> Wedge2) = im(F*Q)
  bool composite1_zero = false;  // F*Q -> Sym2 -> Wedge2
  bool lift_injective = false;
  bool diag_surjective = false;
  bool ses2_exact_mid = false;   // ker(D2 -> F*Q) = im(Wedge2)
  bool composite2_zero = false;  // Wedge2 -> D2 -> F*Q

  bool all_ok() const {
    return sq_injective && pr_surjective && ses1_exact_mid && composite1_zero &&
           lift_injective && diag_surjective && ses2_exact_mid && composite2_zero;
  }
};

struct CharpReport {
  int n = 0;
  long p = 2;
  std::vector<DegreeReport> degrees;
  long long h0_fq = 0, h1_fq = 0;        // F*Q and its first cohomology at twist 0
  long long h0_d2 = 0, h0_d2_minus1 = 0; // D^2 Q at twists 0 and -1
  long rank_fq = 0, rank_sym2 = 0, rank_lam2 = 0, rank_d2 = 0;
  // dim checks of 0 -> O(-2) -> O(1) + (n+1) O -> D^2 Q -> 0 per degree
  bool resolution_dims_ok = false;

  bool all_ok() const;
};

/// Runs the whole suite on P^n in characteristic p (p = 2 required; the
/// sequences are special to characteristic 2).  Degrees 0..dmax.
CharpReport charp_multilinear_suite(int n, long p, int dmax = 4);

} // namespace pnpn::charp

#endif
