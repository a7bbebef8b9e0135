#include "pnpn/linalg.hpp"

#include <cstring>

namespace pnpn::la {

FqMat FqMat::identity(FieldPtr F, long n) {
  FqMat m(F, n, n);
  for (long i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FqMat FqMat::random(FieldPtr F, long rows, long cols, gf::Rng& rng) {
  FqMat m(F, rows, cols);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) m.at(i, j) = F->random(rng);
  return m;
}

FqMat FqMat::transpose() const {
  FqMat t(F_, cols_, rows_);
  for (long i = 0; i < rows_; ++i)
    for (long j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

FqMat FqMat::mul(const FqMat& o) const {
  if (cols_ != o.rows_) throw dimension_mismatch("FqMat::mul: shape mismatch");
  FqMat r(F_, rows_, o.cols_);
  for (long i = 0; i < rows_; ++i)
    for (long k = 0; k < cols_; ++k) {
      Elt v = at(i, k);
      if (v == 0) continue;
      for (long j = 0; j < o.cols_; ++j) {
        Elt w = o.at(k, j);
        if (w == 0) continue;
        r.at(i, j) = F_->add(r.at(i, j), F_->mul(v, w));
      }
    }
  return r;
}

FqMat FqMat::hcat(const FqMat& o) const {
  if (rows_ != o.rows_) throw dimension_mismatch("FqMat::hcat: row mismatch");
  FqMat r(F_ ? F_ : o.F_, rows_, cols_ + o.cols_);
  for (long i = 0; i < rows_; ++i) {
    for (long j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    for (long j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
  }
  return r;
}

FqMat FqMat::submatrix_cols(const std::vector<long>& cols) const {
  FqMat r(F_, rows_, (long)cols.size());
  for (long i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols.size(); ++j) r.at(i, (long)j) = at(i, cols[j]);
  return r;
}

namespace {

// --- packed GF(2) elimination ---------------------------------------------

struct GF2Mat {
  long rows, cols, words;
  std::vector<uint64_t> a;

  GF2Mat(long r, long c)
      : rows(r), cols(c), words((c + 63) / 64), a((size_t)r * words, 0) {}

  void set(long i, long j) { a[(size_t)i * words + j / 64] |= 1ULL << (j % 64); }
  bool get(long i, long j) const {
    return (a[(size_t)i * words + j / 64] >> (j % 64)) & 1ULL;
  }
  uint64_t* row(long i) { return &a[(size_t)i * words]; }
  const uint64_t* row(long i) const { return &a[(size_t)i * words]; }
};

GF2Mat pack(const FqMat& m) {
  GF2Mat g(m.rows(), m.cols());
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j)
      if (m.at(i, j)) g.set(i, j);
  return g;
}

// Row echelon; returns pivot columns.  If `reduce` is set, clears above
// pivots as well (reduced form).
std::vector<long> gf2_eliminate(GF2Mat& g, bool reduce) {
  std::vector<long> pivots;
  long r = 0;
  for (long c = 0; c < g.cols && r < g.rows; ++c) {
    long piv = -1;
    for (long i = r; i < g.rows; ++i)
      if (g.get(i, c)) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (long w = 0; w < g.words; ++w) std::swap(g.row(piv)[w], g.row(r)[w]);
    uint64_t* pr = g.row(r);
    long start = r + 1, stop = g.rows;
    for (long i = (reduce ? 0 : start); i < stop; ++i) {
      if (i == r || !g.get(i, c)) continue;
      uint64_t* ri = g.row(i);
      for (long w = c / 64; w < g.words; ++w) ri[w] ^= pr[w];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

long gf2_rank(const FqMat& m) {
  GF2Mat g = pack(m);
  return (long)gf2_eliminate(g, false).size();
}

FqMat gf2_nullspace(const FqMat& m) {
  GF2Mat g = pack(m);
  std::vector<long> pivots = gf2_eliminate(g, true);
  std::vector<bool> is_pivot(m.cols(), false);
  for (long c : pivots) is_pivot[c] = true;
  long nullity = m.cols() - (long)pivots.size();
  FqMat ker(m.field(), m.cols(), nullity);
  long kcol = 0;
  for (long c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    ker.at(c, kcol) = 1;
    for (size_t pi = 0; pi < pivots.size(); ++pi)
      if (g.get((long)pi, c)) ker.at(pivots[pi], kcol) = 1;
    ++kcol;
  }
  return ker;
}

// --- generic table-driven elimination --------------------------------------

struct Work {
  const gf::GaloisField* F;
  long rows, cols;
  std::vector<Elt> a;
  Work(const FqMat& m)
      : F(m.field().get()), rows(m.rows()), cols(m.cols()), a((size_t)rows * cols) {
    for (long i = 0; i < rows; ++i)
      for (long j = 0; j < cols; ++j) a[(size_t)i * cols + j] = m.at(i, j);
  }
  Elt* row(long i) { return &a[(size_t)i * cols]; }
};

// In-place echelon over F_q; returns pivot columns.
std::vector<long> fq_eliminate(Work& w, bool reduce) {
  std::vector<long> pivots;
  long r = 0;
  for (long c = 0; c < w.cols && r < w.rows; ++c) {
    long piv = -1;
    for (long i = r; i < w.rows; ++i)
      if (w.row(i)[c]) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (long j = 0; j < w.cols; ++j) std::swap(w.row(piv)[j], w.row(r)[j]);
    Elt* pr = w.row(r);
    Elt lead_inv = w.F->inv(pr[c]);
    if (lead_inv != 1)
      for (long j = c; j < w.cols; ++j) pr[j] = w.F->mul(pr[j], lead_inv);
    for (long i = (reduce ? 0 : r + 1); i < w.rows; ++i) {
      if (i == r) continue;
      Elt* ri = w.row(i);
      Elt f = ri[c];
      if (!f) continue;
      Elt nf = w.F->neg(f);
      for (long j = c; j < w.cols; ++j)
        if (pr[j]) ri[j] = w.F->add(ri[j], w.F->mul(nf, pr[j]));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

} // namespace

long FqMat::rank() const {
  if (rows_ == 0 || cols_ == 0) return 0;
  if (F_->q() == 2) return gf2_rank(*this);
  Work w(*this);
  return (long)fq_eliminate(w, false).size();
}

FqMat FqMat::nullspace() const {
  if (cols_ == 0) return FqMat(F_, 0, 0);
  if (rows_ == 0) return identity(F_, cols_);
  if (F_->q() == 2) return gf2_nullspace(*this);
  Work w(*this);
  std::vector<long> pivots = fq_eliminate(w, true);
  std::vector<bool> is_pivot(cols_, false);
  for (long c : pivots) is_pivot[c] = true;
  long nullity = cols_ - (long)pivots.size();
  FqMat ker(F_, cols_, nullity);
  long kcol = 0;
  for (long c = 0; c < cols_; ++c) {
    if (is_pivot[c]) continue;
    ker.at(c, kcol) = 1;
    for (size_t pi = 0; pi < pivots.size(); ++pi) {
      Elt v = w.row((long)pi)[c];
      if (v) ker.at(pivots[pi], kcol) = F_->neg(v);
    }
    ++kcol;
  }
  return ker;
}

Elt FqMat::determinant() const {
  if (rows_ != cols_) throw dimension_mismatch("determinant: square matrix required");
  if (rows_ == 0) return 1;
  Work w(*this);
  // Track the product of leading entries with row-swap signs.
  Elt det = 1;
  long r = 0;
  for (long c = 0; c < cols_ && r < rows_; ++c) {
    long piv = -1;
    for (long i = r; i < rows_; ++i)
      if (w.row(i)[c]) {
        piv = i;
        break;
      }
    if (piv < 0) return 0;
    if (piv != r) {
      for (long j = 0; j < cols_; ++j) std::swap(w.row(piv)[j], w.row(r)[j]);
      det = F_->neg(det);
    }
    Elt lead = w.row(r)[c];
    det = F_->mul(det, lead);
    Elt li = F_->inv(lead);
    for (long j = c; j < cols_; ++j) w.row(r)[j] = F_->mul(w.row(r)[j], li);
    for (long i = r + 1; i < rows_; ++i) {
      Elt f = w.row(i)[c];
      if (!f) continue;
      Elt nf = F_->neg(f);
      for (long j = c; j < cols_; ++j)
        if (w.row(r)[j]) w.row(i)[j] = F_->add(w.row(i)[j], F_->mul(nf, w.row(r)[j]));
    }
    ++r;
  }
  return r == rows_ ? det : 0;
}

long rank_mod(const FqMat& A, const FqMat& S) {
  if (S.cols() == 0) return A.rank();
  if (A.cols() == 0) return 0;
  return A.hcat(S).rank() - S.rank();
}

namespace {

// Incremental reducer: holds echelonized vectors, reduces new ones in place.
struct Echelon {
  const gf::GaloisField* F;
  long dim;
  std::vector<std::vector<Elt>> rows;  // each normalized, with pivot position
  std::vector<long> pivots;

  Echelon(const gf::GaloisField* f, long d) : F(f), dim(d) {}

  // Reduces v against the current rows; returns true (and absorbs v) if a
  // new pivot appears.
  bool insert(std::vector<Elt> v) {
    for (size_t k = 0; k < rows.size(); ++k) {
      Elt c = v[pivots[k]];
      if (!c) continue;
      Elt nf = F->neg(c);
      const auto& rk = rows[k];
      for (long j = 0; j < dim; ++j)
        if (rk[j]) v[j] = F->add(v[j], F->mul(nf, rk[j]));
    }
    long piv = -1;
    for (long j = 0; j < dim; ++j)
      if (v[j]) {
        piv = j;
        break;
      }
    if (piv < 0) return false;
    Elt li = F->inv(v[piv]);
    if (li != 1)
      for (long j = 0; j < dim; ++j) v[j] = F->mul(v[j], li);
    rows.push_back(std::move(v));
    pivots.push_back(piv);
    return true;
  }
};

} // namespace

std::vector<long> complete_basis(const FqMat& base, const FqMat& cand) {
  std::vector<long> chosen;
  const gf::GaloisField* F = cand.field() ? cand.field().get()
                                          : (base.field() ? base.field().get() : nullptr);
  if (!F) return chosen;
  long dim = cand.rows() ? cand.rows() : base.rows();
  Echelon ech(F, dim);
  for (long j = 0; j < base.cols(); ++j) {
    std::vector<Elt> v(dim);
    for (long i = 0; i < dim; ++i) v[i] = base.at(i, j);
    ech.insert(std::move(v));
  }
  for (long j = 0; j < cand.cols(); ++j) {
    std::vector<Elt> v(dim);
    for (long i = 0; i < dim; ++i) v[i] = cand.at(i, j);
    if (ech.insert(std::move(v))) chosen.push_back(j);
  }
  return chosen;
}

bool solve_column(const FqMat& A, const std::vector<Elt>& b, std::vector<Elt>& x_out) {
  if ((long)b.size() != A.rows()) throw dimension_mismatch("solve_column: size mismatch");
  FqMat aug(A.field(), A.rows(), A.cols() + 1);
  for (long i = 0; i < A.rows(); ++i) {
    for (long j = 0; j < A.cols(); ++j) aug.at(i, j) = A.at(i, j);
    aug.at(i, A.cols()) = b[i];
  }
  FqMat ker = aug.nullspace();
  const auto& F = A.field();
  for (long c = 0; c < ker.cols(); ++c) {
    Elt last = ker.at(A.cols(), c);
    if (!last) continue;
    Elt scale = F->neg(F->inv(last));
    x_out.assign(A.cols(), 0);
    for (long i = 0; i < A.cols(); ++i) x_out[i] = F->mul(ker.at(i, c), scale);
    return true;
  }
  // b may be zero.
  bool zero = true;
  for (Elt v : b)
    if (v) zero = false;
  if (zero) {
    x_out.assign(A.cols(), 0);
    return true;
  }
  return false;
}

} // namespace pnpn::la
