#ifndef PNPN_GF_HPP
#define PNPN_GF_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "pnpn/ints.hpp"

namespace pnpn::gf {

/// Deterministic 64-bit generator (splitmix64).  Used everywhere randomness
/// is needed; subtask seeds are derived from a master seed and a tag so runs
/// are reproducible across platforms.
class Rng {
public:
  explicit Rng(uint64_t seed) : s_(seed) {}
  uint64_t next() {
    uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  /// Uniform value in [0, bound) by rejection.
  uint64_t below(uint64_t bound) {
    if (bound == 0) return 0;
    uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

private:
  uint64_t s_;
};

/// FNV-1a over a tag string mixed with a master seed; stable across runs.
uint64_t derive_seed(uint64_t master, const std::string& tag);

using Elt = uint16_t;  // field element index in [0, p^e)

/// The field with p^e elements, p prime.  Elements are indices: the digit
/// expansion of an index in base p gives the coordinates in the power basis
/// of F_p[z]/(m(z)) for a fixed lexicographically-least irreducible m.
/// Multiplication uses discrete-log tables, addition a full table for small
/// fields and digit arithmetic otherwise.
class GaloisField {
public:
  GaloisField(long p, int e);

  long p() const { return p_; }
  int e() const { return e_; }
  long q() const { return q_; }

  Elt zero() const { return 0; }
  Elt one() const { return 1; }

  Elt add(Elt a, Elt b) const {
    if (!add_table_.empty()) return add_table_[(size_t)a * q_ + b];
    return add_slow(a, b);
  }
  Elt neg(Elt a) const { return neg_table_[a]; }
  Elt sub(Elt a, Elt b) const { return add(a, neg(b)); }
  Elt mul(Elt a, Elt b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % (q_ - 1)];
  }
  Elt inv(Elt a) const {
    if (a == 0) throw model_error("GaloisField: inverse of zero");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }
  Elt pow(Elt a, long long k) const;

  /// Embedding of integers (reduction mod p).
  Elt from_int(long long v) const {
    long long r = v % p_;
    if (r < 0) r += p_;
    return (Elt)r;
  }

  Elt random(Rng& rng) const { return (Elt)rng.below((uint64_t)q_); }
  Elt random_nonzero(Rng& rng) const { return (Elt)(1 + rng.below((uint64_t)(q_ - 1))); }

  /// Coefficients of the element in the power basis (length e).
  std::vector<int> digits(Elt a) const;

private:
  Elt add_slow(Elt a, Elt b) const;

  long p_;
  int e_;
  long q_;
  std::vector<Elt> modulus_;  // irreducible, degree e, coefficients mod p
  std::vector<Elt> exp_, log_, neg_table_, add_table_;
};

using FieldPtr = std::shared_ptr<const GaloisField>;

/// Field spec of the model: characteristic p and extension degree e; by
/// default e is the least exponent with p^e >= 64 (point-sampling supply).
struct FieldSpec {
  long p = 2;
  int e = 0;  // 0 = choose default

  FieldPtr make() const;
};

int default_extension(long p);

} // namespace pnpn::gf

#endif
