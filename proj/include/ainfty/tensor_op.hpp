#ifndef AINFTY_TENSOR_OP_HPP
#define AINFTY_TENSOR_OP_HPP

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "ainfty/graded.hpp"

namespace ainfty {

/// Lazy operator on tensor powers: A^{x arity_in} -> B^{x arity_out} of a
/// fixed degree. Nodes form a DAG; evaluation on a basis tuple is memoized
/// (thread-safe insert-or-read), so deep recursions stay cheap.
class TensorOp {
public:
  virtual ~TensorOp() = default;

  const SpacePtr& source() const { return src_; }
  const SpacePtr& target() const { return dst_; }
  int arity_in() const { return arity_in_; }
  int arity_out() const { return arity_out_; }
  int degree() const { return degree_; }

  TensorLin eval(const TensorIndex& x) const;

protected:
  TensorOp(SpacePtr src, SpacePtr dst, int arity_in, int arity_out, int degree)
      : src_(std::move(src)), dst_(std::move(dst)),
        arity_in_(arity_in), arity_out_(arity_out), degree_(degree) {}

  virtual TensorLin compute(const TensorIndex& x) const = 0;

  SpacePtr src_, dst_;
  int arity_in_, arity_out_, degree_;

private:
  mutable std::mutex mu_;
  mutable std::map<TensorIndex, TensorLin> memo_;
};

using OpPtr = std::shared_ptr<const TensorOp>;

/// Explicit sparse table (absent tuples map to zero).
OpPtr op_table(SpacePtr src, SpacePtr dst, int arity_in, int arity_out,
               int degree, std::map<TensorIndex, TensorLin> table);

/// Wraps a degree-r linear map as an arity-1 operator.
OpPtr op_linear(const GradedMap& f);

/// Identity on k tensor factors.
OpPtr op_identity(SpacePtr space, int k);

OpPtr op_zero(SpacePtr src, SpacePtr dst, int arity_in, int arity_out, int degree);

/// Tensor product of blocks; all blocks must share the source space and the
/// target space. Evaluation uses the Koszul rule: block j picks up
/// (-1)^{deg(block j) * (degree of inputs fed to blocks < j)}.
OpPtr op_tensor(std::vector<OpPtr> blocks);

/// outer . inner; inner's target/arity_out must match outer's source/arity_in.
OpPtr op_compose(OpPtr outer, OpPtr inner);

/// Integer-weighted sum of same-shaped operators.
OpPtr op_sum(std::vector<std::pair<int, OpPtr>> terms);

OpPtr op_scale(int c, OpPtr op);

}  // namespace ainfty

#endif
