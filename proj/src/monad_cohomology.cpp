#include "pnpn/monad_cohomology.hpp"

#include <algorithm>

namespace pnpn::cohom {

using model::MonadData;
using model::Twist;

Int monad_chi_generic(const MonadData& m, long long s, long long t) {
  Int chi = 0;
  for (const auto& mi : m.mid) chi += chi_line_bundle(m.n, mi.first + s, mi.second + t);
  chi -= chi_line_bundle(m.n, m.src.first + s, m.src.second + t);
  chi -= chi_line_bundle(m.n, m.tgt.first + s, m.tgt.second + t);
  return chi;
}

namespace {

// Rank of the induced map on the degree-i stratum for the B side (Mid -> Tgt)
// or the A side (Src -> Mid).
long stratum_rank_B(const MonadData& m, int i, int s, int t) {
  Twist dst{m.tgt.first + s, m.tgt.second + t};
  FqMat acc;
  bool have = false;
  for (size_t j = 0; j < m.mid.size(); ++j) {
    Twist src{m.mid[j].first + s, m.mid[j].second + t};
    FqMat blk = mult_matrix(m.F, m.n, i, src, dst, m.brow[j]);
    if (!have) {
      acc = blk;
      have = true;
    } else {
      acc = acc.hcat(blk);
    }
  }
  return acc.rank();
}

long stratum_rank_A(const MonadData& m, int i, int s, int t) {
  Twist src{m.src.first + s, m.src.second + t};
  long rows = 0;
  std::vector<FqMat> blocks;
  for (size_t j = 0; j < m.mid.size(); ++j) {
    Twist dst{m.mid[j].first + s, m.mid[j].second + t};
    blocks.push_back(mult_matrix(m.F, m.n, i, src, dst, m.acol[j]));
    rows += blocks.back().rows();
  }
  FqMat acc(m.F, rows, blocks.empty() ? 0 : blocks[0].cols());
  long off = 0;
  for (const auto& b : blocks) {
    for (long r = 0; r < b.rows(); ++r)
      for (long c = 0; c < b.cols(); ++c) acc.at(off + r, c) = b.at(r, c);
    off += b.rows();
  }
  return acc.rank();
}

bool is_stratum(int n, int i) { return i == 0 || i == n || i == 2 * n; }

} // namespace

CohomTable monad_cohom_table(const MonadData& m, int s_lo, int s_hi, int t_lo,
                             int t_hi) {
  CohomTable table;
  int n = m.n;
  int maxi = 2 * n;
  table.n = n;
  MonadData dm = dual_monad(m);
  for (int s = s_lo; s <= s_hi; ++s)
    for (int t = t_lo; t <= t_hi; ++t) {
      // Kunneth dims of the three terms.
      std::vector<Ival> dimA(maxi + 1), dimB(maxi + 1), dimC(maxi + 1);
      std::vector<long long> hA =
          kunneth_h(n, m.src.first + s, m.src.second + t);
      std::vector<long long> hC =
          kunneth_h(n, m.tgt.first + s, m.tgt.second + t);
      std::vector<long long> hB(maxi + 1, 0);
      for (const auto& mi : m.mid) {
        auto v = kunneth_h(n, mi.first + s, mi.second + t);
        for (int i = 0; i <= maxi; ++i) hB[i] += v[i];
      }
      // Stage 1: K = ker(Mid -> Tgt); all ranks computable on strata.
      std::vector<long long> rB(maxi + 2, 0);
      for (int i = 0; i <= maxi; ++i)
        if (is_stratum(n, i) && (hB[i] || hC[i]))
          rB[i] = (hB[i] && hC[i]) ? stratum_rank_B(m, i, s, t) : 0;
      std::vector<long long> hK(maxi + 1, 0);
      for (int i = 0; i <= maxi; ++i) {
        long long coker_prev = (i > 0) ? hC[i - 1] - rB[i - 1] : 0;
        hK[i] = (hB[i] - rB[i]) + coker_prev;
        if (hK[i] < 0) throw model_error("monad_cohom_table: negative kernel dim");
      }
      // Stage 2: 0 -> A -> K -> E -> 0 with rank intervals for H(A)->H(K).
      std::vector<Ival> dA(maxi + 1), dK(maxi + 1), dE(maxi + 1), rAK(maxi + 1),
          rKE(maxi + 1);
      for (int i = 0; i <= maxi; ++i) {
        dA[i] = Ival::exact(hA[i]);
        dK[i] = Ival::exact(hK[i]);
        dE[i] = Ival{0, kInfDim};
        long long s_i = 0;
        if (is_stratum(n, i) && hA[i]) s_i = stratum_rank_A(m, i, s, t);
        long long cap = std::min(hA[i], hK[i]);
        if (i == 0)
          rAK[i] = Ival::exact(s_i);  // H^0(K) embeds in H^0(Mid)
        else
          rAK[i] = Ival{s_i, cap};
        rKE[i] = Ival{0, kInfDim};
      }
      // Exact endpoint overrides.
      long long h0 = hK[0] - rAK[0].lo;
      dE[0] = Ival::exact(h0);
      long long htop = model::h0_twist(dm, -s - n - 1, -t - n - 1);
      dE[maxi] = Ival::exact(htop);
      Int chi = monad_chi_generic(m, s, t);

      // Chase + chi tightening to a fixpoint.
      SesChase chased;
      for (int round = 0; round < 8; ++round) {
        chased = ses_chase(maxi, dA, dK, dE, rAK, rKE);
        bool changed = false;
        for (int i = 0; i <= maxi; ++i) {
          const Ival& v = chased.dims[2][i];
          if (v.lo > dE[i].lo || (v.hi != kInfDim &&
                                  (dE[i].hi == kInfDim || v.hi < dE[i].hi))) {
            changed = true;
          }
          dE[i] = v;
        }
        // Alternating sum = chi: bound each dim from the others.
        bool all_bounded = true;
        for (int i = 0; i <= maxi; ++i)
          if (dE[i].hi == kInfDim) all_bounded = false;
        for (int i = 0; i <= maxi; ++i) {
          // (-1)^i h^i = chi - sum_{j != i} (-1)^j h^j
          Int rest_min = 0, rest_max = 0;
          bool ok = true;
          for (int j = 0; j <= maxi && ok; ++j) {
            if (j == i) continue;
            if (dE[j].hi == kInfDim) {
              ok = false;
              break;
            }
            if (j % 2 == 0) {
              rest_min += dE[j].lo;
              rest_max += dE[j].hi;
            } else {
              rest_min -= dE[j].hi;
              rest_max -= dE[j].lo;
            }
          }
          if (!ok) continue;
          Int lo_i, hi_i;
          if (i % 2 == 0) {
            lo_i = chi - rest_max;
            hi_i = chi - rest_min;
          } else {
            lo_i = rest_min - chi;
            hi_i = rest_max - chi;
          }
          long long lo = to_ll(lo_i), hi = to_ll(hi_i);
          if (lo > dE[i].lo) {
            dE[i].lo = std::max(0LL, lo);
            changed = true;
          }
          if (dE[i].hi == kInfDim || hi < dE[i].hi) {
            dE[i].hi = hi;
            changed = true;
          }
          if (dE[i].hi < dE[i].lo)
            throw model_error("monad_cohom_table: chi constraint infeasible");
        }
        (void)all_bounded;
        if (!changed) break;
      }
      for (int i = 0; i <= maxi; ++i) {
        CohomTableEntry e;
        e.i = i;
        e.s = s;
        e.t = t;
        e.dim = dE[i];
        table.entries.push_back(e);
      }
      // Consistency: fully exact columns must alternate to chi.
      bool full = true;
      for (int i = 0; i <= maxi; ++i)
        if (!dE[i].is_exact()) full = false;
      if (full) {
        Int alt = 0;
        for (int i = 0; i <= maxi; ++i)
          alt += (i % 2 == 0) ? Int(dE[i].lo) : -Int(dE[i].lo);
        if (alt != chi)
          throw model_error("monad_cohom_table: alternating sum misses chi");
      }
    }
  return table;
}

MonadData fiber_monad(const MonadData& m, model::LineSide side,
                      const std::vector<gf::Elt>& point) {
  MonadData f = m;
  f.canonical = false;
  auto collapse = [&](const Twist& tw) -> Twist {
    return side == model::LineSide::L ? Twist{tw.first, 0} : Twist{0, tw.second};
  };
  f.src = collapse(m.src);
  f.tgt = collapse(m.tgt);
  for (auto& t : f.mid) t = collapse(t);
  auto restrict_poly = [&](const poly::Bipoly& e) {
    poly::Bipoly r(m.F, m.n + 1, m.n + 1);
    if (side == model::LineSide::L) {
      poly::Bipoly ev = e.eval_y(point);
      for (const auto& [key, c] : ev.terms())
        r.add_term(key.first, poly::Expo(m.n + 1, 0), c);
    } else {
      poly::Bipoly ev = e.eval_x(point);
      for (const auto& [key, c] : ev.terms())
        r.add_term(poly::Expo(m.n + 1, 0), key.second, c);
    }
    return r;
  };
  for (auto& e : f.acol) e = restrict_poly(e);
  for (auto& e : f.brow) e = restrict_poly(e);
  return f;
}

} // namespace pnpn::cohom
