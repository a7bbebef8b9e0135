#ifndef PNPN_LINALG_HPP
#define PNPN_LINALG_HPP

#include <vector>

#include "pnpn/gf.hpp"

namespace pnpn::la {

using gf::Elt;
using gf::FieldPtr;

/// Dense row-major matrix over a Galois field.  Rank/nullspace use plain
/// Gaussian elimination; over F_2 rows are repacked into 64-bit words.
class FqMat {
public:
  FqMat() : rows_(0), cols_(0) {}
  FqMat(FieldPtr F, long rows, long cols)
      : F_(std::move(F)), rows_(rows), cols_(cols), a_((size_t)rows * cols, 0) {}

  long rows() const { return rows_; }
  long cols() const { return cols_; }
  const FieldPtr& field() const { return F_; }

  Elt& at(long i, long j) { return a_[(size_t)i * cols_ + j]; }
  Elt at(long i, long j) const { return a_[(size_t)i * cols_ + j]; }

  bool operator==(const FqMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  static FqMat identity(FieldPtr F, long n);
  static FqMat random(FieldPtr F, long rows, long cols, gf::Rng& rng);

  FqMat transpose() const;
  FqMat mul(const FqMat& o) const;
  /// Columns of `o` appended on the right.
  FqMat hcat(const FqMat& o) const;
  FqMat submatrix_cols(const std::vector<long>& cols) const;

  long rank() const;
  /// Basis of the right kernel, one column per basis vector.
  FqMat nullspace() const;
  Elt determinant() const;

private:
  FieldPtr F_;
  long rows_, cols_;
  std::vector<Elt> a_;
};

/// rank([A | S]) - rank(S): the rank of A as a map into the quotient by the
/// column space of S.
long rank_mod(const FqMat& A, const FqMat& S);

/// Greedily extends the column space of `base` by columns of `cand`;
/// returns the indices of the chosen candidate columns.
std::vector<long> complete_basis(const FqMat& base, const FqMat& cand);

/// One solution x of A x = b, if any.
bool solve_column(const FqMat& A, const std::vector<Elt>& b, std::vector<Elt>& x_out);

} // namespace pnpn::la

#endif
