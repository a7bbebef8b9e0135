#include "pnpn/cohomology.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

namespace pnpn::cohom {

using poly::Expo;
using poly::monomials;

std::vector<long long> bott_h(int n, int d) {
  std::vector<long long> h(n + 1, 0);
  if (d >= 0)
    h[0] = to_ll(binomial_ll(n + d, n));
  else if (d <= -n - 1)
    h[n] = to_ll(binomial_ll(-d - 1, n));
  return h;
}

std::vector<long long> kunneth_h(int n, int a, int b) {
  std::vector<long long> ha = bott_h(n, a), hb = bott_h(n, b);
  std::vector<long long> h(2 * n + 1, 0);
  for (int j = 0; j <= n; ++j)
    for (int k = 0; k <= n; ++k)
      if (ha[j] && hb[k]) h[j + k] += ha[j] * hb[k];
  return h;
}

namespace {

// Labels for one factor: monomials if d >= 0, dual monomials (all entries
// <= -1 summing to d) if d <= -n-1, nothing otherwise.
std::vector<std::vector<int>> factor_labels(int n, int d, bool dual) {
  std::vector<std::vector<int>> out;
  if (!dual) {
    if (d < 0) return out;
    for (const Expo& e : monomials(n + 1, d)) out.emplace_back(e.begin(), e.end());
  } else {
    if (d > -n - 1) return out;
    for (const Expo& e : monomials(n + 1, -d - (n + 1))) {
      std::vector<int> lab(n + 1);
      for (int i = 0; i <= n; ++i) lab[i] = -(int)e[i] - 1;
      out.push_back(std::move(lab));
    }
  }
  return out;
}

struct StratumShape {
  bool dual_x = false, dual_y = false;
  bool empty = true;
};

StratumShape stratum_shape(int n, int i, int a, int b) {
  StratumShape s;
  if (i == 0) {
    s.dual_x = s.dual_y = false;
    s.empty = (a < 0 || b < 0);
  } else if (i == n) {
    if (a <= -n - 1 && b >= 0) {
      s.dual_x = true;
      s.empty = false;
    } else if (a >= 0 && b <= -n - 1) {
      s.dual_y = true;
      s.empty = false;
    }
  } else if (i == 2 * n) {
    s.dual_x = s.dual_y = true;
    s.empty = !(a <= -n - 1 && b <= -n - 1);
  } else {
    throw std::invalid_argument("stratum: i must be 0, n or 2n");
  }
  return s;
}

} // namespace

CohomBasis stratum_basis(int n, int i, int a, int b) {
  CohomBasis out;
  out.n = n;
  out.i = i;
  out.a = a;
  out.b = b;
  StratumShape s = stratum_shape(n, i, a, b);
  if (s.empty) return out;
  auto xl = factor_labels(n, a, s.dual_x);
  auto yl = factor_labels(n, b, s.dual_y);
  for (const auto& x : xl)
    for (const auto& y : yl) out.labels.emplace_back(x, y);
  return out;
}

namespace {

long long label_rank(int n, int d, bool dual, const std::vector<int>& lab) {
  Expo e(n + 1);
  if (!dual) {
    for (int i = 0; i <= n; ++i) e[i] = (uint8_t)lab[i];
  } else {
    for (int i = 0; i <= n; ++i) e[i] = (uint8_t)(-lab[i] - 1);
  }
  (void)d;
  return poly::monomial_index(e);
}

} // namespace

FqMat mult_matrix(const FieldPtr& F, int n, int i, std::pair<int, int> src,
                  std::pair<int, int> dst, const Bipoly& f) {
  int da = dst.first - src.first, db = dst.second - src.second;
  if (da < 0 || db < 0)
    throw dimension_mismatch("mult_matrix: twist must not decrease");
  if (!f.is_zero()) {
    auto [dx, dy] = f.bidegree();
    if (dx != da || dy != db)
      throw dimension_mismatch("mult_matrix: polynomial degree mismatch");
  }
  StratumShape ss = stratum_shape(n, i, src.first, src.second);
  StratumShape ds = stratum_shape(n, i, dst.first, dst.second);
  CohomBasis sb = stratum_basis(n, i, src.first, src.second);
  CohomBasis dbasis = stratum_basis(n, i, dst.first, dst.second);
  FqMat out(F, (long)dbasis.labels.size(), (long)sb.labels.size());
  if (sb.labels.empty() || dbasis.labels.empty()) return out;
  if (ss.dual_x != ds.dual_x || ss.dual_y != ds.dual_y)
    return out;  // induced map between different substrata is zero
  long ny = 0;
  {
    // number of y-labels in the destination basis (row-major indexing)
    ny = (long)factor_labels(n, dst.second, ds.dual_y).size();
  }
  long col = 0;
  for (const auto& [lx, ly] : sb.labels) {
    for (const auto& [key, c] : f.terms()) {
      std::vector<int> tx(n + 1), ty(n + 1);
      bool dead = false;
      for (int v = 0; v <= n; ++v) {
        tx[v] = lx[v] + key.first[v];
        ty[v] = ly[v] + key.second[v];
        if (ss.dual_x && tx[v] > -1) dead = true;
        if (ss.dual_y && ty[v] > -1) dead = true;
      }
      if (dead) continue;
      long row = label_rank(n, dst.first, ds.dual_x, tx) * ny +
                 label_rank(n, dst.second, ds.dual_y, ty);
      out.at(row, col) = F->add(out.at(row, col), c);
    }
    ++col;
  }
  return out;
}

// ---- chaser ----------------------------------------------------------------

namespace {

long long add_hi(long long a, long long b) {
  if (a == kInfDim || b == kInfDim) return kInfDim;
  return a + b;
}

// a - b rounded into [0, inf]; hi semantics.
long long sub_hi(long long a, long long b_lo) {
  if (a == kInfDim) return kInfDim;
  return a - b_lo;
}

bool tighten(Ival& x, long long lo, long long hi) {
  bool changed = false;
  if (lo > x.lo) {
    x.lo = lo;
    changed = true;
  }
  if (hi != kInfDim && (x.hi == kInfDim || hi < x.hi)) {
    x.hi = hi;
    changed = true;
  }
  return changed;
}

} // namespace

ChaseResult les_chase(std::vector<Ival> dims, std::vector<Ival> ranks) {
  size_t m = dims.size();
  if (ranks.size() + 1 != m && !(m == 0 && ranks.empty()))
    throw std::invalid_argument("les_chase: need one rank per adjacent pair");
  for (auto& d : dims)
    if (d.lo < 0) d.lo = 0;
  for (auto& r : ranks)
    if (r.lo < 0) r.lo = 0;

  auto rank_at = [&](long j) -> Ival {
    if (j < 0 || j >= (long)ranks.size()) return Ival::exact(0);
    return ranks[j];
  };

  bool changed = true;
  int guard = 0;
  while (changed) {
    if (++guard > 10000) throw arithmetic_fault("les_chase: no fixpoint");
    changed = false;
    for (long j = 0; j < (long)m; ++j) {
      Ival rl = rank_at(j - 1), rr = rank_at(j);
      // dims[j] = ranks[j-1] + ranks[j]
      changed |= tighten(dims[j], rl.lo + rr.lo, add_hi(rl.hi, rr.hi));
      if (dims[j].hi != kInfDim && dims[j].hi < dims[j].lo)
        throw model_error("les_chase: infeasible exact sequence data");
      // ranks[j] = dims[j] - ranks[j-1]
      if (j < (long)ranks.size()) {
        long long lo = dims[j].lo - (rl.hi == kInfDim ? dims[j].lo : rl.hi);
        long long hi = sub_hi(dims[j].hi, rl.lo);
        changed |= tighten(ranks[j], std::max(0LL, lo), hi);
        if (ranks[j].hi != kInfDim && ranks[j].hi < ranks[j].lo)
          throw model_error("les_chase: infeasible exact sequence data");
      }
      // ranks[j-1] = dims[j] - ranks[j]
      if (j - 1 >= 0 && j - 1 < (long)ranks.size()) {
        long long lo = dims[j].lo - (rr.hi == kInfDim ? dims[j].lo : rr.hi);
        long long hi = sub_hi(dims[j].hi, rr.lo);
        changed |= tighten(ranks[j - 1], std::max(0LL, lo), hi);
        if (ranks[j - 1].hi != kInfDim && ranks[j - 1].hi < ranks[j - 1].lo)
          throw model_error("les_chase: infeasible exact sequence data");
      }
    }
  }
  return {dims, ranks};
}

bool SesChase::fully_exact() const {
  for (const auto& row : dims)
    for (const auto& d : row)
      if (!d.is_exact()) return false;
  return true;
}

SesChase ses_chase(int maxi, const std::vector<Ival>& dimA,
                   const std::vector<Ival>& dimB, const std::vector<Ival>& dimC,
                   const std::vector<Ival>& rankAB, const std::vector<Ival>& rankBC) {
  // LES terms: H^0A, H^0B, H^0C, H^1A, ..., H^maxi C.
  std::vector<Ival> dims, ranks;
  for (int i = 0; i <= maxi; ++i) {
    dims.push_back(dimA[i]);
    dims.push_back(dimB[i]);
    dims.push_back(dimC[i]);
  }
  for (int i = 0; i <= maxi; ++i) {
    ranks.push_back(rankAB[i]);
    ranks.push_back(rankBC[i]);
    if (i < maxi) ranks.push_back(Ival{0, kInfDim});  // connecting map
  }
  ChaseResult r = les_chase(std::move(dims), std::move(ranks));
  SesChase out;
  out.dims.assign(3, std::vector<Ival>(maxi + 1));
  for (int i = 0; i <= maxi; ++i)
    for (int obj = 0; obj < 3; ++obj) out.dims[obj][i] = r.dims[3 * i + obj];
  return out;
}

// ---- chi -------------------------------------------------------------------

Int chi_line_bundle(int n, long long a, long long b) {
  return binomial(Int(n + a), n) * binomial(Int(n + b), n);
}

Int monad_chi(int n, long q, long k, long long s, long long t) {
  Int chi = Int(n + 1) * chi_line_bundle(n, s, t);
  chi += chi_line_bundle(n, s + q - k, t - k);
  chi -= chi_line_bundle(n, s, t - q);
  chi -= chi_line_bundle(n, s + q, t);
  return chi;
}

// ---- tables ----------------------------------------------------------------

const CohomTableEntry* CohomTable::find(int i, int s, int t) const {
  for (const auto& e : entries)
    if (e.i == i && e.s == s && e.t == t) return &e;
  return nullptr;
}

nlohmann::json CohomTable::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json j;
    j["i"] = e.i;
    j["s"] = e.s;
    j["t"] = e.t;
    if (e.exact())
      j["dim"] = e.dim.lo;
    else
      j["dim"] = nullptr;
    j["lo"] = e.dim.lo;
    j["hi"] = e.dim.hi;  // -1 encodes "no upper bound"
    j["exact"] = e.exact();
    arr.push_back(j);
  }
  return nlohmann::json{{"n", n}, {"entries", arr}};
}

std::string CohomTable::to_csv() const {
  std::ostringstream os;
  os << "i,s,t,dim,lo,hi,exact\n";
  for (const auto& e : entries) {
    os << e.i << ',' << e.s << ',' << e.t << ',';
    if (e.exact())
      os << e.dim.lo;
    os << ',' << e.dim.lo << ',' << e.dim.hi << ',' << (e.exact() ? 1 : 0) << '\n';
  }
  return os.str();
}

} // namespace pnpn::cohom
