#include "pnpn/monad.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>

namespace pnpn::model {

using poly::Expo;
using poly::monomial_index;
using poly::monomials;

FqMat identity_form(const FieldPtr& F, int n) {
  return FqMat::identity(F, n + 1);
}

FqMat random_nondegenerate_form(const FieldPtr& F, int n, gf::Rng& rng) {
  for (int tries = 0; tries < 1000; ++tries) {
    FqMat m = FqMat::random(F, n + 1, n + 1, rng);
    if (m.determinant() != 0) return m;
  }
  throw model_error("random_nondegenerate_form: sampling exhausted");
}

namespace {

Bipoly form_poly(const FieldPtr& F, const FqMat& form) {
  int n1 = (int)form.rows();
  std::vector<std::vector<Elt>> a(n1, std::vector<Elt>(n1));
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n1; ++j) a[i][j] = form.at(i, j);
  return poly::pairing_form(F, a);
}

} // namespace

MonadData build_monad(int n, long q, long k, const FqMat& form, bool flipped) {
  if (n < 1) throw std::invalid_argument("build_monad: n must be >= 1");
  const FieldPtr& F = form.field();
  if (!F) throw std::invalid_argument("build_monad: form has no field");
  if (power_exponent(F->p(), q) < 0)
    throw std::invalid_argument("build_monad: q must be a power of the characteristic");
  if (k < 1 || k > q) throw std::invalid_argument("build_monad: k out of range [1,q]");
  if (form.rows() != n + 1 || form.cols() != n + 1)
    throw dimension_mismatch("build_monad: form must be (n+1)x(n+1)");
  if (form.determinant() == 0)
    throw model_error("build_monad: singular form (the divisor must be smooth)");

  MonadData m;
  m.F = F;
  m.n = n;
  m.q = q;
  m.k = k;
  m.form = form;
  m.flipped = flipped;
  m.canonical = true;

  Bipoly f = form_poly(F, form);
  int iq = (int)q, ik = (int)k;
  if (!flipped) {
    m.src = {0, -iq};
    m.tgt = {iq, 0};
    for (int i = 0; i <= n; ++i) m.mid.push_back({0, 0});
    m.mid.push_back({iq - ik, -ik});
    for (int i = 0; i <= n; ++i)
      m.acol.push_back(Bipoly::variable(F, n + 1, n + 1, true, i).frobenius_power(q));
    m.acol.push_back(-f.power(q - k));
    for (int j = 0; j <= n; ++j) {
      Bipoly lam(F, n + 1, n + 1);
      for (int i = 0; i <= n; ++i) {
        Elt c = form.at(i, j);
        if (!c) continue;
        Expo xe(n + 1, 0), ye(n + 1, 0);
        xe[i] = 1;
        lam.add_term(xe, ye, c);
      }
      m.brow.push_back(lam.frobenius_power(q));
    }
    m.brow.push_back(f.power(k));
  } else {
    m.src = {-iq, 0};
    m.tgt = {0, iq};
    for (int i = 0; i <= n; ++i) m.mid.push_back({0, 0});
    m.mid.push_back({-ik, iq - ik});
    for (int i = 0; i <= n; ++i)
      m.acol.push_back(Bipoly::variable(F, n + 1, n + 1, false, i).frobenius_power(q));
    m.acol.push_back(-f.power(q - k));
    for (int i = 0; i <= n; ++i) {
      Bipoly mu(F, n + 1, n + 1);
      for (int j = 0; j <= n; ++j) {
        Elt c = form.at(i, j);
        if (!c) continue;
        Expo xe(n + 1, 0), ye(n + 1, 0);
        ye[j] = 1;
        mu.add_term(xe, ye, c);
      }
      m.brow.push_back(mu.frobenius_power(q));
    }
    m.brow.push_back(f.power(k));
  }

  // B o A must vanish identically: (sum l_j y_j)^q - f^{q-k} f^k = f^q - f^q.
  Bipoly comp(F, n + 1, n + 1);
  for (size_t i = 0; i < m.acol.size(); ++i) comp = comp + m.brow[i] * m.acol[i];
  if (!comp.is_zero()) throw model_error("build_monad: B o A != 0");
  return m;
}

MonadData dual_monad(const MonadData& m) {
  MonadData d = m;
  d.src = {-m.tgt.first, -m.tgt.second};
  d.tgt = {-m.src.first, -m.src.second};
  d.mid.clear();
  for (const auto& t : m.mid) d.mid.push_back({-t.first, -t.second});
  d.acol = m.brow;
  d.brow = m.acol;
  d.canonical = false;  // shape no longer matches build_monad output
  return d;
}

MonadData flip_monad(const MonadData& m) {
  Twist expect_src = m.flipped ? Twist{-(int)m.q, 0} : Twist{0, -(int)m.q};
  if (!m.canonical || m.src != expect_src)
    throw std::invalid_argument("flip_monad: requires a monad straight from build_monad");
  return build_monad(m.n, m.q, m.k, m.form, !m.flipped);
}

MonadData restrict_hyperplane_pair(const MonadData& m) {
  if (m.n < 2)
    throw std::invalid_argument("restrict_hyperplane_pair: n must be >= 2");
  // The leading n x n block must stay nondegenerate.
  FqMat block(m.F, m.n, m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) block.at(i, j) = m.form.at(i, j);
  if (block.determinant() == 0)
    throw model_error("restrict_hyperplane_pair: restricted form is degenerate");
  MonadData r = m;
  r.n = m.n - 1;
  r.form = block;
  r.canonical = false;
  r.acol.clear();
  r.brow.clear();
  for (const auto& e : m.acol) r.acol.push_back(e.drop_last_variables());
  for (const auto& e : m.brow) r.brow.push_back(e.drop_last_variables());
  return r;
}

long long h0_dim_product(int n, int a, int b) {
  if (a < 0 || b < 0) return 0;
  return to_ll(binomial_ll(n + a, n) * binomial_ll(n + b, n));
}

FqMat mult_block_h0(const Bipoly& f, int n, Twist src, Twist dst, const FieldPtr& F) {
  long long cols = h0_dim_product(n, src.first, src.second);
  long long rows = h0_dim_product(n, dst.first, dst.second);
  FqMat out(F, rows, cols);
  if (rows == 0 || cols == 0 || f.is_zero()) return out;
  auto [dx, dy] = f.bidegree();
  if (dx != dst.first - src.first || dy != dst.second - src.second)
    throw dimension_mismatch("mult_block_h0: entry bidegree inconsistent with twists");
  const auto& xin = monomials(n + 1, src.first);
  const auto& yin = monomials(n + 1, src.second);
  long ny_out = (long)monomials(n + 1, dst.second).size();
  long col = 0;
  for (const auto& mx : xin)
    for (const auto& my : yin) {
      for (const auto& [key, c] : f.terms()) {
        Expo tx(mx), ty(my);
        for (int i = 0; i <= n; ++i) {
          tx[i] = (uint8_t)(tx[i] + key.first[i]);
          ty[i] = (uint8_t)(ty[i] + key.second[i]);
        }
        long row = monomial_index(tx) * ny_out + monomial_index(ty);
        out.at(row, col) = F->add(out.at(row, col), c);
      }
      ++col;
    }
  return out;
}

FqMat beta_matrix(const MonadData& m, int s, int t) {
  Twist tw{m.tgt.first + s, m.tgt.second + t};
  long long rows = h0_dim_product(m.n, tw.first, tw.second);
  long long cols = 0;
  for (const auto& mi : m.mid) cols += h0_dim_product(m.n, mi.first + s, mi.second + t);
  FqMat out(m.F, rows, cols);
  long off = 0;
  for (size_t i = 0; i < m.mid.size(); ++i) {
    Twist srctw{m.mid[i].first + s, m.mid[i].second + t};
    FqMat blk = mult_block_h0(m.brow[i], m.n, srctw, tw, m.F);
    for (long r = 0; r < blk.rows(); ++r)
      for (long c = 0; c < blk.cols(); ++c) out.at(r, off + c) = blk.at(r, c);
    off += blk.cols();
  }
  return out;
}

FqMat alpha_matrix(const MonadData& m, int s, int t) {
  Twist stw{m.src.first + s, m.src.second + t};
  long long cols = h0_dim_product(m.n, stw.first, stw.second);
  long long rows = 0;
  for (const auto& mi : m.mid) rows += h0_dim_product(m.n, mi.first + s, mi.second + t);
  FqMat out(m.F, rows, cols);
  long off = 0;
  for (size_t i = 0; i < m.mid.size(); ++i) {
    Twist dtw{m.mid[i].first + s, m.mid[i].second + t};
    FqMat blk = mult_block_h0(m.acol[i], m.n, stw, dtw, m.F);
    for (long r = 0; r < blk.rows(); ++r)
      for (long c = 0; c < blk.cols(); ++c) out.at(off + r, c) = blk.at(r, c);
    off += blk.rows();
  }
  return out;
}

long long h0_twist(const MonadData& m, int s, int t) {
  FqMat beta = beta_matrix(m, s, t);
  FqMat alpha = alpha_matrix(m, s, t);
  return (beta.cols() - beta.rank()) - alpha.rank();
}

SectionBasis h0_sections(const MonadData& m, int s, int t) {
  SectionBasis out;
  FqMat beta = beta_matrix(m, s, t);
  FqMat alpha = alpha_matrix(m, s, t);
  out.mid_dim = beta.cols();
  long off = 0;
  for (const auto& mi : m.mid) {
    out.block_offset.push_back(off);
    off += h0_dim_product(m.n, mi.first + s, mi.second + t);
  }
  FqMat ker = beta.nullspace();
  std::vector<long> acols = la::complete_basis(FqMat(m.F, out.mid_dim, 0), alpha);
  out.alpha_image = alpha.submatrix_cols(acols);
  std::vector<long> reps = la::complete_basis(out.alpha_image, ker);
  out.reps = ker.submatrix_cols(reps);
  return out;
}

// ---- lines -----------------------------------------------------------------

namespace {

struct LineComplex {
  FieldPtr F;
  int srcdeg = 0, tgtdeg = 0;
  std::vector<int> middeg;
  // binary forms as coefficient vectors of u^{deg-i} v^i (empty = zero)
  std::vector<std::vector<Elt>> acol, brow;
};

std::vector<Elt> restrict_entry(const Bipoly& e, const Line& line) {
  if (line.side == LineSide::L) return e.restrict_line_x(line.c, line.d, line.point);
  return e.restrict_line_y(line.point, line.c, line.d);
}

LineComplex restrict_to_line(const MonadData& m, const Line& line) {
  LineComplex lc;
  lc.F = m.F;
  auto deg_of = [&](const Twist& tw) {
    return line.side == LineSide::L ? tw.first : tw.second;
  };
  lc.srcdeg = deg_of(m.src);
  lc.tgtdeg = deg_of(m.tgt);
  for (const auto& mi : m.mid) lc.middeg.push_back(deg_of(mi));
  for (const auto& e : m.acol) lc.acol.push_back(restrict_entry(e, line));
  for (const auto& e : m.brow) lc.brow.push_back(restrict_entry(e, line));
  return lc;
}

// Multiplication H0(O(sd)) -> H0(O(dd)) by a binary form on the line.
FqMat bin_mult_block(const FieldPtr& F, const std::vector<Elt>& form, int sd, int dd) {
  long cols = sd >= 0 ? sd + 1 : 0;
  long rows = dd >= 0 ? dd + 1 : 0;
  FqMat out(F, rows, cols);
  if (rows == 0 || cols == 0 || form.empty()) return out;
  for (long j = 0; j < cols; ++j)
    for (long i = 0; i < (long)form.size(); ++i)
      if (form[i]) out.at(i + j, j) = form[i];
  return out;
}

FqMat line_beta(const LineComplex& lc, int t) {
  long rows = lc.tgtdeg + t >= 0 ? lc.tgtdeg + t + 1 : 0;
  long cols = 0;
  for (int d : lc.middeg) cols += std::max(0, d + t + 1);
  FqMat out(lc.F, rows, cols);
  long off = 0;
  for (size_t i = 0; i < lc.middeg.size(); ++i) {
    FqMat blk = bin_mult_block(lc.F, lc.brow[i], lc.middeg[i] + t, lc.tgtdeg + t);
    for (long r = 0; r < blk.rows(); ++r)
      for (long c = 0; c < blk.cols(); ++c) out.at(r, off + c) = blk.at(r, c);
    off += blk.cols();
  }
  return out;
}

FqMat line_alpha(const LineComplex& lc, int t) {
  long cols = lc.srcdeg + t >= 0 ? lc.srcdeg + t + 1 : 0;
  long rows = 0;
  for (int d : lc.middeg) rows += std::max(0, d + t + 1);
  FqMat out(lc.F, rows, cols);
  long off = 0;
  for (size_t i = 0; i < lc.middeg.size(); ++i) {
    FqMat blk = bin_mult_block(lc.F, lc.acol[i], lc.srcdeg + t, lc.middeg[i] + t);
    for (long r = 0; r < blk.rows(); ++r)
      for (long c = 0; c < blk.cols(); ++c) out.at(off + r, c) = blk.at(r, c);
    off += blk.rows();
  }
  return out;
}

// Multiplication by u (uv_index 0) or v (1) on the concatenated middle
// pieces, from twist t to t+1.
FqMat line_mid_shift(const LineComplex& lc, int t, int uv_index) {
  long rows = 0, cols = 0;
  for (int d : lc.middeg) {
    cols += std::max(0, d + t + 1);
    rows += std::max(0, d + t + 2);
  }
  FqMat out(lc.F, rows, cols);
  long roff = 0, coff = 0;
  for (int d : lc.middeg) {
    long bc = std::max(0, d + t + 1), br = std::max(0, d + t + 2);
    for (long j = 0; j < bc; ++j) out.at(roff + j + uv_index, coff + j) = 1;
    roff += br;
    coff += bc;
  }
  return out;
}

// Exact h0 of the cohomology bundle of the restricted complex at twist t.
// For t >= -1 the kernel/image count is exact (the source line bundle has
// degree srcdeg + t >= -1, so no H^1 correction).  For t <= -2 sections are
// recovered from the saturated degrees -1 and 0: a section sigma of W(t)
// corresponds to the tuple (w . sigma) over the degree-j monomials w in
// (u,v), j = -1-t, with consecutive compatibilities v.s_a = u.s_{a+1}.
long long line_h0(const LineComplex& lc, int t) {
  if (lc.srcdeg < 0)
    throw model_error("line_h0: presentation has negative source degree on the line");
  if (t >= -1) {
    FqMat beta = line_beta(lc, t);
    FqMat alpha = line_alpha(lc, t);
    return (beta.cols() - beta.rank()) - alpha.rank();
  }
  long j = -1 - t;
  // Representatives of M_{-1} = H0(W(-1)).
  FqMat beta1 = line_beta(lc, -1);
  FqMat alpha1 = line_alpha(lc, -1);
  FqMat ker1 = beta1.nullspace();
  FqMat none(lc.F, beta1.cols(), 0);
  FqMat a1img = alpha1.submatrix_cols(la::complete_basis(none, alpha1));
  FqMat reps = ker1.submatrix_cols(la::complete_basis(a1img, ker1));
  long r1 = reps.cols();
  if (r1 == 0) return 0;
  FqMat alpha0 = line_alpha(lc, 0);
  FqMat none0(lc.F, alpha0.rows(), 0);
  FqMat a0img = alpha0.submatrix_cols(la::complete_basis(none0, alpha0));
  long ra = a0img.cols();
  FqMat mu = line_mid_shift(lc, -1, 0).mul(reps);
  FqMat mv = line_mid_shift(lc, -1, 1).mul(reps);
  long dim0 = mu.rows();
  // Unknowns: j+1 coefficient blocks (r1 each) + j auxiliary blocks (ra each).
  FqMat sys(lc.F, j * dim0, (j + 1) * r1 + j * ra);
  for (long a = 0; a < j; ++a) {
    for (long i = 0; i < dim0; ++i) {
      for (long cidx = 0; cidx < r1; ++cidx) {
        sys.at(a * dim0 + i, a * r1 + cidx) = mv.at(i, cidx);
        sys.at(a * dim0 + i, (a + 1) * r1 + cidx) = lc.F->neg(mu.at(i, cidx));
      }
      for (long cidx = 0; cidx < ra; ++cidx)
        sys.at(a * dim0 + i, (j + 1) * r1 + a * ra + cidx) = lc.F->neg(a0img.at(i, cidx));
    }
  }
  return sys.cols() - sys.rank();
}

} // namespace

SplittingType splitting_type(const MonadData& m, const Line& line) {
  int srcdeg = line.side == LineSide::L ? m.src.first : m.src.second;
  const MonadData* use = &m;
  MonadData dm;
  bool negate = false;
  if (srcdeg < 0) {
    dm = dual_monad(m);
    use = &dm;
    negate = true;
    int d2 = line.side == LineSide::L ? dm.src.first : dm.src.second;
    if (d2 < 0) throw model_error("splitting_type: no exact presentation on this line");
  }
  LineComplex lc = restrict_to_line(*use, line);
  long r = use->rank();
  int c1 = -lc.srcdeg - lc.tgtdeg;
  for (int d : lc.middeg) c1 += d;
  int q = (int)m.q;
  int lo = -q - 2, hi = q + 2;
  std::vector<long long> prof;
  for (int t = lo; t <= hi; ++t) prof.push_back(line_h0(lc, t));

  // Second differences give the multiplicity of each part in [-q-1, q].
  auto h = [&](int t) { return prof[t - lo]; };
  std::vector<int> parts;
  long long placed_sum = 0;
  for (int t = lo + 1; t <= hi - 1; ++t) {
    long long mult = h(t + 1) - 2 * h(t) + h(t - 1);
    if (mult < 0) throw model_error("splitting_type: profile is not concave-split");
    int part = -t - 1;
    for (long long c = 0; c < mult; ++c) {
      parts.push_back(part);
      placed_sum += part;
    }
  }
  // Whatever is left sits at the top of the window.
  long long missing = r - (long long)parts.size();
  if (missing < 0) throw model_error("splitting_type: too many parts recovered");
  if (missing > 0) {
    long long total = c1;
    long long rem = total - placed_sum;
    if (rem % missing != 0)
      throw model_error("splitting_type: leftover parts do not balance degree");
    long long top = rem / missing;
    if (top < q + 1)
      throw model_error("splitting_type: unresolved part inside the window");
    for (long long c = 0; c < missing; ++c) parts.push_back((int)top);
  }
  // Validate the recovered multiset against the full measured profile.
  long long sum = 0;
  for (int a : parts) sum += a;
  if (sum != c1) throw model_error("splitting_type: degree mismatch");
  for (int t = lo; t <= hi; ++t) {
    long long expect = 0;
    for (int a : parts) expect += std::max(0LL, (long long)a + t + 1);
    if (expect != h(t))
      throw model_error("splitting_type: profile not realized by any multiset");
  }
  if (negate)
    for (int& a : parts) a = -a;
  std::sort(parts.begin(), parts.end(), std::greater<int>());
  return {parts};
}

// ---- line sampling ---------------------------------------------------------

namespace {

std::vector<Elt> random_projective_point(const FieldPtr& F, int n, gf::Rng& rng) {
  for (int tries = 0; tries < 1000; ++tries) {
    std::vector<Elt> v(n + 1);
    bool nonzero = false;
    for (auto& c : v) {
      c = F->random(rng);
      if (c) nonzero = true;
    }
    if (nonzero) return v;
  }
  throw model_error("random_projective_point: sampling exhausted");
}

bool independent(const FieldPtr& F, const std::vector<Elt>& a, const std::vector<Elt>& b) {
  FqMat m(F, 2, (long)a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    m.at(0, (long)i) = a[i];
    m.at(1, (long)i) = b[i];
  }
  return m.rank() == 2;
}

// Coefficients of the linear form f(., P) on the moving factor.
std::vector<Elt> pairing_slice(const MonadData& m, const std::vector<Elt>& point,
                               LineSide side) {
  int n1 = m.n + 1;
  std::vector<Elt> out(n1, 0);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n1; ++j) {
      // f = sum form[i][j] x_i y_j
      if (side == LineSide::L)  // moving x, fixed y = point
        out[i] = m.F->add(out[i], m.F->mul(m.form.at(i, j), point[j]));
      else  // moving y, fixed x = point
        out[j] = m.F->add(out[j], m.F->mul(m.form.at(i, j), point[i]));
    }
  return out;
}

Elt dot(const FieldPtr& F, const std::vector<Elt>& a, const std::vector<Elt>& b) {
  Elt s = 0;
  for (size_t i = 0; i < a.size(); ++i) s = F->add(s, F->mul(a[i], b[i]));
  return s;
}

Line sample_line(const MonadData& m, gf::Rng& rng, LineSide side, bool inside) {
  for (int tries = 0; tries < 1000; ++tries) {
    Line line;
    line.side = side;
    line.point = random_projective_point(m.F, m.n, rng);
    std::vector<Elt> lam = pairing_slice(m, line.point, side);
    if (inside) {
      FqMat lm(m.F, 1, m.n + 1);
      for (int i = 0; i <= m.n; ++i) lm.at(0, i) = lam[i];
      FqMat ker = lm.nullspace();
      if (ker.cols() < 2) continue;
      // Random independent pair from the kernel.
      for (int inner = 0; inner < 50; ++inner) {
        std::vector<Elt> c(m.n + 1, 0), d(m.n + 1, 0);
        for (long col = 0; col < ker.cols(); ++col) {
          Elt rc = m.F->random(rng), rd = m.F->random(rng);
          for (int i = 0; i <= m.n; ++i) {
            c[i] = m.F->add(c[i], m.F->mul(ker.at(i, col), rc));
            d[i] = m.F->add(d[i], m.F->mul(ker.at(i, col), rd));
          }
        }
        if (independent(m.F, c, d)) {
          line.c = c;
          line.d = d;
          return line;
        }
      }
    } else {
      std::vector<Elt> c = random_projective_point(m.F, m.n, rng);
      std::vector<Elt> d = random_projective_point(m.F, m.n, rng);
      if (!independent(m.F, c, d)) continue;
      if (dot(m.F, lam, c) == 0 && dot(m.F, lam, d) == 0) continue;
      line.c = c;
      line.d = d;
      return line;
    }
  }
  throw model_error("sample_line: sampling exhausted");
}

} // namespace

Line sample_l_line_off_A(const MonadData& m, gf::Rng& rng) {
  return sample_line(m, rng, LineSide::L, false);
}
Line sample_l_line_in_A(const MonadData& m, gf::Rng& rng) {
  return sample_line(m, rng, LineSide::L, true);
}
Line sample_h_line_generic(const MonadData& m, gf::Rng& rng) {
  return sample_line(m, rng, LineSide::H, false);
}
Line sample_h_line_in_A(const MonadData& m, gf::Rng& rng) {
  return sample_line(m, rng, LineSide::H, true);
}

bool line_inside_A(const MonadData& m, const Line& line) {
  std::vector<Elt> lam = pairing_slice(m, line.point, line.side);
  return dot(m.F, lam, line.c) == 0 && dot(m.F, lam, line.d) == 0;
}

// ---- thickened divisor -----------------------------------------------------

namespace {

// Columns spanning f^k . S_{(a-k, b-k)} inside the (a,b) piece.
FqMat fk_image(const MonadData& m, int a, int b) {
  Bipoly fk = form_poly(m.F, m.form).power(m.k);
  return mult_block_h0(fk, m.n, {a - (int)m.k, b - (int)m.k}, {a, b}, m.F);
}

// Block-diagonal f^k images for all middle summands at twist (s,t).
FqMat fk_image_mid(const MonadData& m, int s, int t) {
  long rows = 0, cols = 0;
  std::vector<FqMat> blocks;
  for (const auto& mi : m.mid) {
    FqMat b = fk_image(m, mi.first + s, mi.second + t);
    rows += b.rows();
    cols += b.cols();
    blocks.push_back(std::move(b));
  }
  FqMat out(m.F, rows, cols);
  long ro = 0, co = 0;
  for (const auto& b : blocks) {
    for (long i = 0; i < b.rows(); ++i)
      for (long j = 0; j < b.cols(); ++j) out.at(ro + i, co + j) = b.at(i, j);
    ro += b.rows();
    co += b.cols();
  }
  return out;
}

long long h0_mod_fk_complex(const MonadData& m, int s, int t) {
  FqMat beta = beta_matrix(m, s, t);
  FqMat alpha = alpha_matrix(m, s, t);
  FqMat tsub = fk_image(m, m.tgt.first + s, m.tgt.second + t);
  FqMat msub = fk_image_mid(m, s, t);
  // Multiplication by f^k is injective, and msub is block diagonal, so the
  // column counts are the ranks.
  long rank_beta_bar = la::rank_mod(beta, tsub);
  long long quot_dim = beta.cols() - msub.cols();
  long long nullity_beta_bar = quot_dim - rank_beta_bar;
  long rank_alpha_bar =
      (alpha.cols() == 0) ? 0 : (alpha.hcat(msub).rank() - msub.cols());
  return nullity_beta_bar - rank_alpha_bar;
}

MonadData eprime_complex(const MonadData& m) {
  MonadData e = m;
  e.canonical = false;
  e.mid.pop_back();
  e.acol.pop_back();
  e.brow.pop_back();
  return e;
}

} // namespace

long long h0_twist_mod_fk(const MonadData& m, int s, int t) {
  return h0_mod_fk_complex(m, s, t);
}

long long h0_eprime_mod_fk(const MonadData& m, int s, int t) {
  return h0_mod_fk_complex(eprime_complex(m), s, t);
}

long long dim_ring_mod_fk(const MonadData& m, int a, int b) {
  return h0_dim_product(m.n, a, b) -
         h0_dim_product(m.n, a - (int)m.k, b - (int)m.k);
}

KADecompositionReport restrict_to_kA(const MonadData& m, int s_lo, int s_hi,
                                     int t_lo, int t_hi) {
  KADecompositionReport rep;
  const Twist& last = m.mid.back();
  for (int s = s_lo; s <= s_hi; ++s)
    for (int t = t_lo; t <= t_hi; ++t) {
      KADecompositionEntry e;
      e.s = s;
      e.t = t;
      e.total = h0_twist_mod_fk(m, s, t);
      e.line_summand = dim_ring_mod_fk(m, last.first + s, last.second + t);
      e.eprime = h0_eprime_mod_fk(m, s, t);
      if (e.total != e.line_summand + e.eprime) rep.additive = false;
      rep.entries.push_back(e);
    }
  return rep;
}

// ---- probes ----------------------------------------------------------------

namespace {

// Value of each middle-coordinate section column at a point.
FqMat evaluate_sections(const MonadData& m, const FqMat& reps,
                        const std::vector<long>& block_offset, int s, int t,
                        const std::vector<Elt>& x, const std::vector<Elt>& y) {
  long nmid = (long)m.mid.size();
  FqMat vals(m.F, nmid, reps.cols());
  for (long i = 0; i < nmid; ++i) {
    Twist tw{m.mid[i].first + s, m.mid[i].second + t};
    if (tw.first < 0 || tw.second < 0) continue;
    const auto& xm = monomials(m.n + 1, tw.first);
    const auto& ym = monomials(m.n + 1, tw.second);
    // Monomial values at the point, in basis order.
    std::vector<Elt> mv;
    mv.reserve(xm.size() * ym.size());
    for (const auto& ex : xm) {
      Elt vx = m.F->one();
      for (int v = 0; v <= m.n; ++v)
        if (ex[v]) vx = m.F->mul(vx, m.F->pow(x[v], ex[v]));
      for (const auto& ey : ym) {
        Elt vy = vx;
        for (int v = 0; v <= m.n; ++v)
          if (ey[v]) vy = m.F->mul(vy, m.F->pow(y[v], ey[v]));
        mv.push_back(vy);
      }
    }
    for (long c = 0; c < reps.cols(); ++c) {
      Elt acc = 0;
      for (size_t r = 0; r < mv.size(); ++r) {
        Elt coeff = reps.at(block_offset[i] + (long)r, c);
        if (coeff && mv[r]) acc = m.F->add(acc, m.F->mul(coeff, mv[r]));
      }
      vals.at(i, c) = acc;
    }
  }
  return vals;
}

ProbeResult run_probe(const MonadData& m, const FqMat& reps,
                      const std::vector<long>& block_offset, int s, int t,
                      int samples, uint64_t seed, bool on_A) {
  ProbeResult res;
  res.h0 = reps.cols();
  gf::Rng rng(seed);
  long nmid = (long)m.mid.size();
  if (res.h0 < m.rank()) {
    res.generated = false;
    return res;
  }
  for (int sample = 0; sample < samples; ++sample) {
    std::vector<Elt> x, y;
    for (int tries = 0;; ++tries) {
      if (tries > 1000) throw model_error("global_gen_probe: sampling exhausted");
      x = random_projective_point(m.F, m.n, rng);
      if (on_A) {
        std::vector<Elt> mu = pairing_slice(m, x, LineSide::H);
        FqMat mm(m.F, 1, m.n + 1);
        for (int i = 0; i <= m.n; ++i) mm.at(0, i) = mu[i];
        FqMat ker = mm.nullspace();
        if (ker.cols() == 0) continue;
        y.assign(m.n + 1, 0);
        bool nz = false;
        for (long col = 0; col < ker.cols(); ++col) {
          Elt rc = m.F->random(rng);
          for (int i = 0; i <= m.n; ++i) {
            y[i] = m.F->add(y[i], m.F->mul(ker.at(i, col), rc));
            if (y[i]) nz = true;
          }
        }
        if (!nz) continue;
      } else {
        y = random_projective_point(m.F, m.n, rng);
      }
      // The bundle fiber needs A(P) != 0 and B(P) != 0.
      bool a_ok = false, b_ok = false;
      for (long i = 0; i < nmid; ++i) {
        if (m.acol[i].eval(x, y)) a_ok = true;
        if (m.brow[i].eval(x, y)) b_ok = true;
      }
      if (a_ok && b_ok) break;
    }
    FqMat vals = evaluate_sections(m, reps, block_offset, s, t, x, y);
    FqMat apoint(m.F, nmid, 1);
    for (long i = 0; i < nmid; ++i) apoint.at(i, 0) = m.acol[i].eval(x, y);
    long need = nmid - 1;  // dim ker B(P) = fiber rank + 1
    res.points_checked++;
    if (vals.hcat(apoint).rank() != need) {
      res.generated = false;
      res.failure = std::make_pair(x, y);
      return res;
    }
  }
  res.generated = true;
  return res;
}

} // namespace

ProbeResult global_gen_probe(const MonadData& m, int s, int t, int samples,
                             uint64_t seed, bool on_A) {
  SectionBasis sb = h0_sections(m, s, t);
  return run_probe(m, sb.reps, sb.block_offset, s, t, samples, seed, on_A);
}

ProbeResult global_gen_probe_on_kA(const MonadData& m, int s, int t, int samples,
                                   uint64_t seed) {
  // Section representatives mod f^k: u with beta(u) in f^k . (target piece),
  // modulo the f^k middle subspace and the alpha image.
  FqMat beta = beta_matrix(m, s, t);
  FqMat alpha = alpha_matrix(m, s, t);
  FqMat tsub = fk_image(m, m.tgt.first + s, m.tgt.second + t);
  FqMat msub = fk_image_mid(m, s, t);
  FqMat paired = beta.hcat(tsub).nullspace();
  // Keep the u-part of the kernel pairs.
  FqMat upart(m.F, beta.cols(), paired.cols());
  for (long i = 0; i < beta.cols(); ++i)
    for (long j = 0; j < paired.cols(); ++j) upart.at(i, j) = paired.at(i, j);
  FqMat base = msub.hcat(alpha);
  FqMat basis = base.submatrix_cols(la::complete_basis(FqMat(m.F, beta.cols(), 0), base));
  FqMat reps = upart.submatrix_cols(la::complete_basis(basis, upart));
  std::vector<long> block_offset;
  long off = 0;
  for (const auto& mi : m.mid) {
    block_offset.push_back(off);
    off += h0_dim_product(m.n, mi.first + s, mi.second + t);
  }
  return run_probe(m, reps, block_offset, s, t, samples, seed, /*on_A=*/true);
}

std::vector<Bipoly> frobenius_presentation(const std::vector<Bipoly>& entries, long q) {
  std::vector<Bipoly> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.frobenius_power(q));
  return out;
}

nlohmann::json monad_to_json(const MonadData& m) {
  nlohmann::json j;
  j["field"] = {{"p", m.F->p()}, {"e", m.F->e()}};
  j["n"] = m.n;
  j["q"] = m.q;
  j["k"] = m.k;
  j["flipped"] = m.flipped;
  nlohmann::json form = nlohmann::json::array();
  for (long i = 0; i < m.form.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (long jj = 0; jj < m.form.cols(); ++jj) row.push_back(m.form.at(i, jj));
    form.push_back(row);
  }
  j["form"] = form;
  auto twist_json = [](const Twist& t) {
    return nlohmann::json::array({t.first, t.second});
  };
  j["src"] = twist_json(m.src);
  j["tgt"] = twist_json(m.tgt);
  nlohmann::json mids = nlohmann::json::array();
  for (const auto& t : m.mid) mids.push_back(twist_json(t));
  j["mid"] = mids;
  auto poly_json = [](const Bipoly& f) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [key, c] : f.terms()) {
      nlohmann::json term = nlohmann::json::array();
      term.push_back(c);
      term.push_back(key.first);
      term.push_back(key.second);
      terms.push_back(term);
    }
    return terms;
  };
  nlohmann::json acol = nlohmann::json::array(), brow = nlohmann::json::array();
  for (const auto& e : m.acol) acol.push_back(poly_json(e));
  for (const auto& e : m.brow) brow.push_back(poly_json(e));
  j["A"] = acol;
  j["B"] = brow;
  return j;
}

} // namespace pnpn::model
