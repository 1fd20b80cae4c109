#ifndef AINFTY_SPARSE_MATRIX_HPP
#define AINFTY_SPARSE_MATRIX_HPP

#include <map>
#include <optional>
#include <vector>

#include "ainfty/scalar.hpp"

namespace ainfty {

/// Sparse column vector: index -> nonzero coefficient.
using SparseVec = std::map<int, Scalar>;

void vec_add_scaled(SparseVec& dst, const SparseVec& src, const Scalar& c);

/// Exact sparse matrix over a fixed field. Zero entries are never stored.
class SparseMatrix {
public:
  SparseMatrix(int rows, int cols, const Field& field)
      : rows_(rows), cols_(cols), field_(field), row_data_(rows) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Field& field() const { return field_; }

  void set(int r, int c, const Scalar& v);
  Scalar get(int r, int c) const;
  const SparseVec& row(int r) const { return row_data_[r]; }

  SparseVec column(int c) const;
  void set_column(int c, const SparseVec& v);

  /// y = M x (x indexed by columns).
  SparseVec apply(const SparseVec& x) const;

  bool operator==(const SparseMatrix& o) const;

private:
  int rows_, cols_;
  Field field_;
  std::vector<SparseVec> row_data_;  // row -> (col -> value)
};

struct RrefResult {
  SparseMatrix reduced;
  std::vector<int> pivot_cols;
  int rank = 0;
};

/// Reduced row echelon form with deterministic pivoting: pivots are chosen
/// as the first nonzero entry scanning columns left to right, rows top down.
RrefResult rref(const SparseMatrix& m);

/// Basis of the null space; each vector has a leading 1 in a free column.
std::vector<SparseVec> kernel_basis(const SparseMatrix& m);

/// Basis of the column span: the columns of M at the rref pivot positions.
std::vector<SparseVec> image_basis(const SparseMatrix& m);

/// One solution of M x = b, or nullopt. Free variables are set to zero, so
/// the answer is deterministic.
std::optional<SparseVec> solve(const SparseMatrix& m, const SparseVec& b);

int rank(const SparseMatrix& m);

}  // namespace ainfty

#endif
