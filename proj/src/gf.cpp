#include "pnpn/gf.hpp"

#include <algorithm>

namespace pnpn::gf {

uint64_t derive_seed(uint64_t master, const std::string& tag) {
  uint64_t h = 0xcbf29ce484222325ULL ^ master;
  for (unsigned char c : tag) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  h ^= master >> 32;
  h *= 0x100000001b3ULL;
  return h;
}

namespace {

// Dense polynomials over F_p as coefficient vectors (little-endian).
using Poly = std::vector<long>;

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mod(Poly f, const Poly& m, long p) {
  trim(f);
  while (f.size() >= m.size()) {
    long c = f.back();
    size_t shift = f.size() - m.size();
    for (size_t i = 0; i < m.size(); ++i) {
      f[shift + i] = (f[shift + i] - c * m[i]) % p;
      if (f[shift + i] < 0) f[shift + i] += p;
    }
    trim(f);
  }
  return f;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, long p) {
  if (a.empty() || b.empty()) return {};
  Poly f(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) f[i + j] = (f[i + j] + a[i] * b[j]) % p;
  return poly_mod(std::move(f), m, p);
}

bool divides(const Poly& d, Poly f, long p) {
  // Make d monic first.
  Poly dm = d;
  long lead = dm.back();
  long inv = 1;
  for (long x = 1; x < p; ++x)
    if ((x * lead) % p == 1) inv = x;
  for (auto& c : dm) c = (c * inv) % p;
  f = poly_mod(std::move(f), dm, p);
  return f.empty();
}

bool is_irreducible(const Poly& f, long p) {
  int e = (int)f.size() - 1;
  if (e <= 0) return false;
  // Trial division by every monic polynomial of degree 1..e/2.
  for (int d = 1; 2 * d <= e; ++d) {
    long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long idx = 0; idx < count; ++idx) {
      Poly g(d + 1, 0);
      long v = idx;
      for (int i = 0; i < d; ++i) {
        g[i] = v % p;
        v /= p;
      }
      g[d] = 1;
      if (divides(g, f, p)) return false;
    }
  }
  return true;
}

long poly_to_index(const Poly& f, long p) {
  long idx = 0, mult = 1;
  for (long c : f) {
    idx += c * mult;
    mult *= p;
  }
  return idx;
}

Poly index_to_poly(long idx, long p) {
  Poly f;
  while (idx > 0) {
    f.push_back(idx % p);
    idx /= p;
  }
  return f;
}

} // namespace

GaloisField::GaloisField(long p, int e) : p_(p), e_(e) {
  if (!is_prime(p)) throw std::invalid_argument("GaloisField: p must be prime");
  if (e < 1) throw std::invalid_argument("GaloisField: e must be >= 1");
  long q = 1;
  for (int i = 0; i < e; ++i) {
    q *= p;
    if (q > 1 << 15)
      throw std::invalid_argument("GaloisField: field too large for table arithmetic");
  }
  q_ = q;

  // Lexicographically least monic irreducible of degree e (constant first).
  Poly mod;
  if (e == 1) {
    mod = {0, 1};
  } else {
    long count = 1;
    for (int i = 0; i < e; ++i) count *= p;
    for (long idx = 0; idx < count; ++idx) {
      Poly f = index_to_poly(idx, p);
      f.resize(e + 1, 0);
      f[e] = 1;
      if (is_irreducible(f, p)) {
        mod = f;
        break;
      }
    }
    if (mod.empty()) throw arithmetic_fault("GaloisField: no irreducible found");
  }
  modulus_.assign(mod.begin(), mod.end());

  // Negation and (for small q) addition tables.
  neg_table_.resize(q_);
  for (long a = 0; a < q_; ++a) {
    Poly fa = index_to_poly(a, p_);
    for (auto& c : fa) c = (p_ - c) % p_;
    neg_table_[a] = (Elt)poly_to_index(fa, p_);
  }
  if (q_ <= 1024) {
    add_table_.resize((size_t)q_ * q_);
    for (long a = 0; a < q_; ++a)
      for (long b = 0; b < q_; ++b) add_table_[(size_t)a * q_ + b] = add_slow((Elt)a, (Elt)b);
  }

  // Discrete-log tables from the least primitive element.
  Poly m(modulus_.begin(), modulus_.end());
  exp_.assign(q_ - 1, 0);
  log_.assign(q_, 0);
  for (long g = 2; g < q_; ++g) {
    Poly pg = index_to_poly(g, p_);
    Poly acc = {1};
    bool primitive = true;
    std::vector<Elt> seq;
    seq.reserve(q_ - 1);
    for (long i = 0; i < q_ - 1; ++i) {
      long idx = poly_to_index(acc, p_);
      if (i > 0 && idx == 1) {
        primitive = false;
        break;
      }
      seq.push_back((Elt)idx);
      acc = poly_mulmod(acc, pg, m, p_);
    }
    if (primitive && poly_to_index(acc, p_) == 1) {
      for (long i = 0; i < q_ - 1; ++i) {
        exp_[i] = seq[i];
        log_[seq[i]] = i;
      }
      return;
    }
  }
  if (q_ == 2) {
    exp_[0] = 1;
    log_[1] = 0;
    return;
  }
  throw arithmetic_fault("GaloisField: no primitive element found");
}

Elt GaloisField::add_slow(Elt a, Elt b) const {
  long ra = a, rb = b, out = 0, mult = 1;
  for (int i = 0; i < e_; ++i) {
    long da = ra % p_, db = rb % p_;
    out += ((da + db) % p_) * mult;
    mult *= p_;
    ra /= p_;
    rb /= p_;
  }
  return (Elt)out;
}

Elt GaloisField::pow(Elt a, long long k) const {
  if (a == 0) {
    if (k == 0) return 1;
    if (k < 0) throw model_error("GaloisField: negative power of zero");
    return 0;
  }
  long long ord = q_ - 1;
  long long r = k % ord;
  if (r < 0) r += ord;
  return exp_[(log_[a] * (unsigned long long)r) % ord];
}

std::vector<int> GaloisField::digits(Elt a) const {
  std::vector<int> d(e_);
  long v = a;
  for (int i = 0; i < e_; ++i) {
    d[i] = (int)(v % p_);
    v /= p_;
  }
  return d;
}

int default_extension(long p) {
  int e = 1;
  long q = p;
  while (q < 64) {
    q *= p;
    ++e;
  }
  return e;
}

FieldPtr FieldSpec::make() const {
  int ee = e > 0 ? e : default_extension(p);
  return std::make_shared<GaloisField>(p, ee);
}

} // namespace pnpn::gf
