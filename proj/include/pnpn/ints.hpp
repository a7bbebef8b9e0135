#ifndef PNPN_INTS_HPP
#define PNPN_INTS_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace pnpn {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Error taxonomy. dimension_mismatch / non_unit are contract violations on
// inputs; arithmetic_fault signals an internal invariant break (a bug, e.g.
// a non-integral Euler characteristic); model_error is an inconsistency
// detected in finite-field model data.
struct dimension_mismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct non_unit_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct arithmetic_fault : std::logic_error {
  using std::logic_error::logic_error;
};
struct model_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Binomial coefficient C(m, j) for arbitrary integer m and j >= 0, via the
/// polynomial extension m(m-1)...(m-j+1)/j!.
inline Int binomial(const Int& m, long j) {
  if (j < 0) return 0;
  Int num = 1;
  for (long i = 0; i < j; ++i) num *= (m - i);
  Int den = 1;
  for (long i = 2; i <= j; ++i) den *= i;
  Int q = num / den;
  if (q * den != num) throw arithmetic_fault("binomial: non-integral result");
  return q;
}

inline Int binomial_ll(long long m, long j) { return binomial(Int(m), j); }

inline long long to_ll(const Int& v) {
  if (v > std::numeric_limits<long long>::max() ||
      v < std::numeric_limits<long long>::min())
    throw arithmetic_fault("integer out of 64-bit range: " + v.str());
  return static_cast<long long>(v);
}

inline bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// Returns a >= 0 with p^a == q, or -1 if q is not a power of p.
inline int power_exponent(long p, long q) {
  if (q < 1) return -1;
  int a = 0;
  long v = 1;
  while (v < q) {
    v *= p;
    ++a;
  }
  return v == q ? a : -1;
}

inline bool is_prime_power(long q, long* p_out = nullptr, int* a_out = nullptr) {
  if (q < 2) {
    // q = 1 is allowed as p^0 for any p; callers that need the base must
    // supply it themselves.
    if (q == 1) {
      if (a_out) *a_out = 0;
      return true;
    }
    return false;
  }
  long p = 2;
  while (q % p != 0) {
    ++p;
    if (p * p > q) {
      p = q;
      break;
    }
  }
  long v = q;
  while (v % p == 0) v /= p;
  if (v != 1) return false;
  if (p_out) *p_out = p;
  if (a_out) *a_out = power_exponent(p, q);
  return true;
}

} // namespace pnpn

#endif
