#ifndef AINFTY_GRADED_HPP
#define AINFTY_GRADED_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ainfty/sparse_matrix.hpp"

namespace ainfty {

struct BasisElement {
  std::string name;
  int degree = 0;
};

/// Finite Z-graded vector space with a named, ordered basis.
class GradedVectorSpace {
public:
  GradedVectorSpace(Field field, std::vector<BasisElement> basis);

  const Field& field() const { return field_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const BasisElement& basis(int i) const { return basis_[i]; }
  int degree(int i) const { return basis_[i].degree; }
  const std::string& name(int i) const { return basis_[i].name; }
  int index_of(const std::string& name) const;  // -1 if absent
  bool has_degree(int d) const;
  std::vector<int> indices_of_degree(int d) const;
  int min_degree() const { return min_degree_; }
  int max_degree() const { return max_degree_; }

private:
  Field field_;
  std::vector<BasisElement> basis_;
  std::map<std::string, int> index_;
  int min_degree_ = 0, max_degree_ = 0;
};

using SpacePtr = std::shared_ptr<const GradedVectorSpace>;

SpacePtr make_space(Field field, std::vector<BasisElement> basis);

/// Linear combination of basis elements of one space: index -> coefficient.
using LinComb = SparseVec;

int lincomb_degree(const GradedVectorSpace& space, const LinComb& v);
std::string lincomb_to_string(const GradedVectorSpace& space, const LinComb& v);

/// Degree-r linear map between graded spaces, stored column-sparse.
class GradedMap {
public:
  GradedMap(SpacePtr src, SpacePtr dst, int degree);

  static GradedMap identity(SpacePtr space);
  static GradedMap zero(SpacePtr src, SpacePtr dst, int degree);

  const SpacePtr& source() const { return src_; }
  const SpacePtr& target() const { return dst_; }
  int degree() const { return degree_; }

  /// Throws DegreeMismatch unless every target term lives in degree
  /// (source degree + r).
  void set_entry(int src_index, int dst_index, const Scalar& c);
  void set_column(int src_index, const LinComb& v);
  const LinComb& column(int src_index) const { return columns_[src_index]; }

  LinComb apply(const LinComb& v) const;
  LinComb apply_basis(int src_index) const { return columns_[src_index]; }

  bool is_zero() const;
  bool operator==(const GradedMap& o) const;

  GradedMap operator+(const GradedMap& o) const;
  GradedMap operator-(const GradedMap& o) const;
  GradedMap scaled(const Scalar& c) const;
  GradedMap scaled(int c) const;

  SparseMatrix matrix() const;  // dense index space, rows = target basis

  /// Composition this . o (apply o first); plain linear composition.
  GradedMap compose_after(const GradedMap& o) const;

  /// Inverse as a graded linear map (degree must be 0 and the map square
  /// blockwise); throws NotInvertible.
  GradedMap inverse() const;

private:
  SpacePtr src_, dst_;
  int degree_;
  std::vector<LinComb> columns_;
};

/// Basis element of a tensor power A^{otimes n}: a tuple of basis indices.
using TensorIndex = std::vector<int>;

/// Sparse element of a tensor power.
using TensorLin = std::map<TensorIndex, Scalar>;

int tensor_degree(const GradedVectorSpace& space, const TensorIndex& t);
void tensor_add(TensorLin& dst, const TensorIndex& t, const Scalar& c);
void tensor_add_scaled(TensorLin& dst, const TensorLin& src, const Scalar& c);
std::string tensor_to_string(const GradedVectorSpace& space, const TensorIndex& t);

/// Applies f_1 x ... x f_k to a basis tensor with the full Koszul sign:
/// each map f_j crossing an element x_i (i < j) contributes
/// (-1)^{|x_i||f_j|}. The result lives in the targets' tensor product.
/// Throws ArityMismatch / SpaceMismatch.
TensorLin koszul_tensor_apply(const std::vector<GradedMap>& maps,
                              const TensorIndex& element);

/// Operator-level Koszul sign for (f_1 x...x f_k) . (g_1 x...x g_k)
/// = sign * (f_1.g_1) x ... x (f_k.g_k). Returns {sign, composed factors}.
std::pair<int, std::vector<GradedMap>> koszul_compose_tensors(
    const std::vector<GradedMap>& first, const std::vector<GradedMap>& second);

/// alpha_n = (-1)^{n(n-1)/2}, the sign of s^{xn}(s^{-1})^{xn}.
int alpha_sign(int n);

/// Degree shift by +1. Basis names are preserved.
SpacePtr suspend(const SpacePtr& space);

/// The suspension map s : A -> sA (degree +1) and its inverse.
GradedMap suspension_map(const SpacePtr& space, const SpacePtr& suspended);
GradedMap suspension_inverse(const SpacePtr& space, const SpacePtr& suspended);

}  // namespace ainfty

#endif
