#include "ainfty/sparse_matrix.hpp"

namespace ainfty {

void vec_add_scaled(SparseVec& dst, const SparseVec& src, const Scalar& c) {
  if (c.is_zero()) return;
  for (const auto& [i, v] : src) {
    auto it = dst.find(i);
    if (it == dst.end()) {
      dst.emplace(i, v * c);
    } else {
      it->second += v * c;
      if (it->second.is_zero()) dst.erase(it);
    }
  }
}

void SparseMatrix::set(int r, int c, const Scalar& v) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    fail(ErrorKind::SemanticError, "matrix index out of bounds");
  if (v.is_zero())
    row_data_[r].erase(c);
  else
    row_data_[r][c] = v;
}

Scalar SparseMatrix::get(int r, int c) const {
  auto it = row_data_[r].find(c);
  return it == row_data_[r].end() ? Scalar::zero(field_) : it->second;
}

SparseVec SparseMatrix::column(int c) const {
  SparseVec out;
  for (int r = 0; r < rows_; ++r) {
    auto it = row_data_[r].find(c);
    if (it != row_data_[r].end()) out[r] = it->second;
  }
  return out;
}

void SparseMatrix::set_column(int c, const SparseVec& v) {
  for (int r = 0; r < rows_; ++r) row_data_[r].erase(c);
  for (const auto& [r, val] : v) set(r, c, val);
}

SparseVec SparseMatrix::apply(const SparseVec& x) const {
  SparseVec out;
  for (int r = 0; r < rows_; ++r) {
    Scalar acc = Scalar::zero(field_);
    for (const auto& [c, v] : row_data_[r]) {
      auto it = x.find(c);
      if (it != x.end()) acc += v * it->second;
    }
    if (!acc.is_zero()) out[r] = acc;
  }
  return out;
}

bool SparseMatrix::operator==(const SparseMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && field_ == o.field_ &&
         row_data_ == o.row_data_;
}

RrefResult rref(const SparseMatrix& m) {
  RrefResult res{m, {}, 0};
  SparseMatrix& a = res.reduced;
  int pivot_row = 0;
  for (int c = 0; c < a.cols() && pivot_row < a.rows(); ++c) {
    int sel = -1;
    for (int r = pivot_row; r < a.rows(); ++r) {
      if (!a.get(r, c).is_zero()) {
        sel = r;
        break;
      }
    }
    if (sel < 0) continue;
    // Swap rows sel <-> pivot_row.
    if (sel != pivot_row) {
      SparseVec tmp = a.row(sel);
      SparseVec tmp2 = a.row(pivot_row);
      for (int cc = 0; cc < a.cols(); ++cc) {
        a.set(sel, cc, Scalar::zero(a.field()));
        a.set(pivot_row, cc, Scalar::zero(a.field()));
      }
      for (const auto& [cc, vv] : tmp) a.set(pivot_row, cc, vv);
      for (const auto& [cc, vv] : tmp2) a.set(sel, cc, vv);
    }
    Scalar inv = a.get(pivot_row, c).inverse();
    SparseVec prow = a.row(pivot_row);
    for (const auto& [cc, vv] : prow) a.set(pivot_row, cc, vv * inv);
    prow = a.row(pivot_row);
    for (int r = 0; r < a.rows(); ++r) {
      if (r == pivot_row) continue;
      Scalar f = a.get(r, c);
      if (f.is_zero()) continue;
      for (const auto& [cc, vv] : prow) a.set(r, cc, a.get(r, cc) - f * vv);
    }
    res.pivot_cols.push_back(c);
    ++pivot_row;
  }
  res.rank = static_cast<int>(res.pivot_cols.size());
  return res;
}

std::vector<SparseVec> kernel_basis(const SparseMatrix& m) {
  RrefResult rr = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  std::vector<int> pivot_row_of(m.cols(), -1);
  for (int k = 0; k < rr.rank; ++k) {
    is_pivot[rr.pivot_cols[k]] = true;
    pivot_row_of[rr.pivot_cols[k]] = k;
  }
  std::vector<SparseVec> basis;
  for (int c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    SparseVec v;
    v[c] = Scalar::one(m.field());
    for (int pc = 0; pc < m.cols(); ++pc) {
      if (!is_pivot[pc]) continue;
      Scalar e = rr.reduced.get(pivot_row_of[pc], c);
      if (!e.is_zero()) v[pc] = -e;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<SparseVec> image_basis(const SparseMatrix& m) {
  RrefResult rr = rref(m);
  std::vector<SparseVec> basis;
  for (int c : rr.pivot_cols) basis.push_back(m.column(c));
  return basis;
}

std::optional<SparseVec> solve(const SparseMatrix& m, const SparseVec& b) {
  SparseMatrix aug(m.rows(), m.cols() + 1, m.field());
  for (int r = 0; r < m.rows(); ++r)
    for (const auto& [c, v] : m.row(r)) aug.set(r, c, v);
  for (const auto& [r, v] : b) aug.set(r, m.cols(), v);
  RrefResult rr = rref(aug);
  SparseVec x;
  for (int k = 0; k < rr.rank; ++k) {
    int pc = rr.pivot_cols[k];
    if (pc == m.cols()) return std::nullopt;  // inconsistent
    Scalar v = rr.reduced.get(k, m.cols());
    if (!v.is_zero()) x[pc] = v;
  }
  return x;
}

int rank(const SparseMatrix& m) { return rref(m).rank; }

}  // namespace ainfty
