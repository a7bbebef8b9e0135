#include "pnpn/chow.hpp"

namespace pnpn::chow {

ChowClassQ to_rational(const ChowClass& c) {
  ChowClassQ r(c.n());
  for (int i = 0; i <= c.n(); ++i)
    for (int j = 0; j <= c.n(); ++j) r.at(i, j) = Rat(c.at(i, j));
  return r;
}

ChowClass to_integral(const ChowClassQ& c) {
  ChowClass r(c.n());
  for (int i = 0; i <= c.n(); ++i)
    for (int j = 0; j <= c.n(); ++j) {
      const Rat& v = c.at(i, j);
      if (denominator(v) != 1)
        throw arithmetic_fault("to_integral: non-integral coefficient");
      r.at(i, j) = numerator(v);
    }
  return r;
}

BundleClassData chern_E0_symbolic(int n, long q, long k) {
  if (n < 1) throw std::invalid_argument("chern_E0_symbolic: n must be >= 1");
  if (!is_prime_power(q))
    throw std::invalid_argument("chern_E0_symbolic: q must be a prime power");
  if (k < 1 || k > q)
    throw std::invalid_argument("chern_E0_symbolic: k out of range [1,q]");
  ChowClass a = ChowClass::one(n) + ChowClass::divisor(n, 0, Int(-q));
  ChowClass mid = ChowClass::one(n) + ChowClass::divisor(n, Int(q - k), Int(-k));
  ChowClass b = ChowClass::one(n) + ChowClass::divisor(n, Int(q), 0);
  return {n, inv_unit(a) * mid * inv_unit(b)};
}

ChowClass twist_chern(long rank, const ChowClass& c, const Int& a, const Int& b) {
  int n = c.n();
  ChowClass m = ChowClass::divisor(n, a, b);
  // Precompute degree parts of c and powers of m.
  std::vector<ChowClass> cd, mp;
  for (int d = 0; d <= c.max_degree(); ++d) cd.push_back(c.degree_part(d));
  mp.push_back(ChowClass::one(n));
  for (int d = 1; d <= c.max_degree(); ++d) mp.push_back(mp.back() * m);
  ChowClass out(n);
  for (int j = 0; j <= c.max_degree(); ++j) {
    ChowClass cj(n);
    for (int i = 0; i <= j; ++i) {
      Int coef = binomial(Int(rank - i), j - i);
      if (coef == 0) continue;
      ChowClass term = cd[i] * mp[j - i];
      term.scale(coef);
      cj += term;
    }
    out += cj.degree_part(j);
  }
  return out;
}

ChowClass dual_chern(long /*rank*/, const ChowClass& c) {
  return c.scale_by_degree([](int d) { return (d % 2 == 0) ? Int(1) : Int(-1); });
}

ChowClass frobenius_pull_chern(const ChowClass& c, long q) {
  if (q < 1) throw std::invalid_argument("frobenius_pull_chern: q must be >= 1");
  return c.scale_by_degree([&](int d) {
    Int f = 1;
    for (int i = 0; i < d; ++i) f *= q;
    return f;
  });
}

namespace {

// Power sums p_1..p_maxd from elementary symmetric functions (= Chern
// classes), by Newton's identities, degreewise in the grid.
std::vector<ChowClassQ> power_sums(const ChowClassQ& c, int maxd) {
  int n = c.n();
  std::vector<ChowClassQ> e, p;
  for (int d = 0; d <= maxd; ++d) e.push_back(c.degree_part(d));
  p.assign(maxd + 1, ChowClassQ(n));
  for (int m = 1; m <= maxd; ++m) {
    ChowClassQ s = e[m];
    s.scale(Rat(m) * ((m % 2 == 1) ? 1 : -1));
    for (int i = 1; i < m; ++i) {
      ChowClassQ t = e[i] * p[m - i];
      t.scale((i % 2 == 1) ? Rat(1) : Rat(-1));
      s += t;
    }
    p[m] = s;
  }
  return p;
}

// Elementary symmetric functions from power sums (inverse direction).
std::vector<ChowClassQ> elementary_from_power_sums(const std::vector<ChowClassQ>& p,
                                                   int maxd, int n) {
  std::vector<ChowClassQ> e(maxd + 1, ChowClassQ(n));
  e[0] = ChowClassQ::one(n);
  for (int m = 1; m <= maxd; ++m) {
    ChowClassQ s(n);
    for (int i = 1; i <= m; ++i) {
      ChowClassQ t = e[m - i] * p[i];
      t.scale((i % 2 == 1) ? Rat(1) : Rat(-1));
      s += t;
    }
    s.scale(Rat(1, (unsigned)m));
    e[m] = s;
  }
  return e;
}

Rat factorial_rat(int m) {
  Int f = 1;
  for (int i = 2; i <= m; ++i) f *= i;
  return Rat(f);
}

} // namespace

ChowClassQ chern_character(long rank, const ChowClass& c) {
  int n = c.n();
  int maxd = 2 * n;
  auto p = power_sums(to_rational(c), maxd);
  ChowClassQ ch(n);
  ch.at(0, 0) = rank;
  for (int m = 1; m <= maxd; ++m) {
    ChowClassQ t = p[m];
    t.scale(Rat(1) / factorial_rat(m));
    ch += t;
  }
  return ch;
}

BundleClassData chern_class_from_character(const ChowClassQ& ch) {
  int n = ch.n();
  int maxd = 2 * n;
  Rat r0 = ch.at(0, 0);
  if (denominator(r0) != 1 || numerator(r0) < 0)
    throw arithmetic_fault("chern_class_from_character: bad rank term");
  std::vector<ChowClassQ> p(maxd + 1, ChowClassQ(n));
  for (int m = 1; m <= maxd; ++m) {
    p[m] = ch.degree_part(m);
    p[m].scale(factorial_rat(m));
  }
  auto e = elementary_from_power_sums(p, maxd, n);
  ChowClassQ total(n);
  for (int m = 0; m <= maxd; ++m) total += e[m];
  return {to_ll(numerator(r0)), to_integral(total)};
}

BundleClassData tensor_chern(const BundleClassData& a, const BundleClassData& b) {
  ChowClassQ ch = chern_character(a.rank, a.total) * chern_character(b.rank, b.total);
  BundleClassData out = chern_class_from_character(ch);
  if (out.rank != a.rank * b.rank)
    throw arithmetic_fault("tensor_chern: rank mismatch");
  return out;
}

namespace {

// t-adic series with ChowClassQ coefficients, truncated beyond degree k.
using TSeries = std::vector<ChowClassQ>;

TSeries tseries_mul(const TSeries& a, const TSeries& b, int k, int n) {
  TSeries r(k + 1, ChowClassQ(n));
  for (int i = 0; i <= k; ++i)
    for (int j = 0; i + j <= k; ++j) {
      if (a[i].is_zero() || b[j].is_zero()) continue;
      r[i + j] += a[i] * b[j];
    }
  return r;
}

} // namespace

BundleClassData wedge_sym_chern(long rank, const ChowClass& c, long k, PowerKind kind) {
  int n = c.n();
  if (k < 0) throw std::invalid_argument("wedge_sym_chern: k must be >= 0");
  if (kind == PowerKind::Wedge && k > rank)
    throw std::invalid_argument("wedge_sym_chern: wedge exponent exceeds rank");
  if (k == 0) return {1, ChowClass::one(n)};

  ChowClassQ ch = chern_character(rank, c);
  // log of the generating series: N(t) = sum_{j>=1} (+-)^{j-1} t^j/j psi^j(ch),
  // where psi^j scales the degree-d component by j^d.  Sym uses +, Wedge -.
  TSeries N((size_t)k + 1, ChowClassQ(n));
  for (int j = 1; j <= k; ++j) {
    ChowClassQ a = ch.scale_by_degree([&](int d) {
      Int f = 1;
      for (int i = 0; i < d; ++i) f *= j;
      return Rat(f);
    });
    Rat sign = (kind == PowerKind::Sym) ? Rat(1, (unsigned)j)
                                        : Rat((j % 2 == 1) ? 1 : -1, (unsigned)j);
    a.scale(sign);
    N[j] = a;
  }
  // exp(N) truncated at t^k.
  TSeries E((size_t)k + 1, ChowClassQ(n));
  E[0] = ChowClassQ::one(n);
  TSeries Npow = E;
  Rat fact = 1;
  for (int m = 1; m <= k; ++m) {
    Npow = tseries_mul(Npow, N, (int)k, n);
    fact *= m;
    TSeries term = Npow;
    for (auto& t : term) t.scale(Rat(1) / fact);
    for (int i = 0; i <= k; ++i) E[i] += term[i];
  }
  BundleClassData out = chern_class_from_character(E[k]);
  Int expect = (kind == PowerKind::Wedge) ? binomial(Int(rank), k)
                                          : binomial(Int(rank + k - 1), k);
  if (Int(out.rank) != expect)
    throw arithmetic_fault("wedge_sym_chern: rank bookkeeping failed");
  return out;
}

ChowClassQ todd_class(int n) {
  // One factor: (x / (1 - e^{-x}))^{n+1} with x the hyperplane class,
  // computed by inverting u(x) = (1 - e^{-x})/x = sum (-x)^m / (m+1)!.
  std::vector<Rat> u(n + 1);
  for (int m = 0; m <= n; ++m) {
    Rat term = Rat(1) / factorial_rat(m + 1);
    if (m % 2 == 1) term = -term;
    u[m] = term;
  }
  // Invert the univariate series: t * u = 1.
  std::vector<Rat> t(n + 1);
  t[0] = 1;
  for (int d = 1; d <= n; ++d) {
    Rat s = 0;
    for (int i = 0; i < d; ++i) s += t[i] * u[d - i];
    t[d] = -s;
  }
  // Raise to (n+1)-st power.
  std::vector<Rat> f(n + 1);
  f[0] = 1;
  for (int rep = 0; rep < n + 1; ++rep) {
    std::vector<Rat> g(n + 1);
    for (int i = 0; i <= n; ++i)
      for (int j = 0; i + j <= n; ++j) g[i + j] += f[i] * t[j];
    f = g;
  }
  ChowClassQ td(n);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) td.at(i, j) = f[i] * f[j];
  return td;
}

Int euler_char_hrr(long rank, const ChowClass& c) {
  int n = c.n();
  ChowClassQ v = chern_character(rank, c) * todd_class(n);
  Rat chi = v.at(n, n);
  if (denominator(chi) != 1)
    throw arithmetic_fault("euler_char_hrr: non-integral Euler characteristic");
  return numerator(chi);
}

} // namespace pnpn::chow
