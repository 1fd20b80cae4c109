#ifndef AINFTY_AINFTY_HPP
#define AINFTY_AINFTY_HPP

#include <functional>
#include <optional>

#include "ainfty/tensor_op.hpp"

namespace ainfty {

/// Multilinear map A^{x n} -> B of fixed degree, stored as a sparse table of
/// structure constants.
class MultilinearOp {
public:
  MultilinearOp(SpacePtr src, SpacePtr dst, int arity, int degree)
      : src_(std::move(src)), dst_(std::move(dst)), arity_(arity), degree_(degree) {}

  const SpacePtr& source() const { return src_; }
  const SpacePtr& target() const { return dst_; }
  int arity() const { return arity_; }
  int degree() const { return degree_; }

  void set(const TensorIndex& in, const LinComb& out);  // degree-checked
  void add(const TensorIndex& in, const LinComb& out, const Scalar& c);
  LinComb apply(const TensorIndex& in) const;
  const std::map<TensorIndex, LinComb>& table() const { return table_; }
  bool is_zero() const { return table_.empty(); }
  bool operator==(const MultilinearOp& o) const;

  OpPtr as_op() const;

private:
  SpacePtr src_, dst_;
  int arity_, degree_;
  std::map<TensorIndex, LinComb> table_;
};

/// Enumerates all basis tuples of space^{x n} whose total degree d satisfies
/// pred(d); prune(d_partial, remaining) may cut branches early.
void for_each_tuple(const GradedVectorSpace& space, int n,
                    const std::function<void(const TensorIndex&)>& visit);

/// Materializes a lazy operator with arity_out = 1 into an explicit table,
/// skipping input tuples that cannot hit the target space for degree reasons.
MultilinearOp materialize(const OpPtr& op);

struct AInftyAlgebra {
  SpacePtr space;
  int cap = 0;
  std::vector<MultilinearOp> m;  // m[n] for 1 <= n <= cap; m[0] unused

  static AInftyAlgebra empty(SpacePtr space, int cap);
  const MultilinearOp& op(int n) const { return m.at(n); }
  MultilinearOp& op(int n) { return m.at(n); }
  bool is_dga() const;  // m_n = 0 for n >= 3

  /// Differential m_1 as a plain graded map.
  GradedMap differential() const;
};

struct AInftyMorphism {
  AInftyAlgebra source, target;
  int cap = 0;
  std::vector<MultilinearOp> f;  // f[n] for 1 <= n <= cap; f[0] unused

  static AInftyMorphism empty(const AInftyAlgebra& src, const AInftyAlgebra& dst);
  const MultilinearOp& comp(int n) const { return f.at(n); }
  MultilinearOp& comp(int n) { return f.at(n); }
};

AInftyMorphism identity_morphism(const AInftyAlgebra& alg);

/// (-1)^{sum_{j<k} (i_k - 1) i_j} over the parts of the composition.
int sign_l(const std::vector<int>& parts);

struct Violation {
  TensorIndex input;
  LinComb residual;
};

struct CheckReport {
  bool pass = true;
  long total_violations = 0;
  std::vector<Violation> witnesses;  // at most 10

  void record(const TensorIndex& in, const LinComb& res);
};

/// Residual of the defining identities on a single basis tuple (zero iff the
/// identity holds there).
LinComb associativity_residual(const AInftyAlgebra& alg, int n, const TensorIndex& x);
LinComb morphism_residual(const AInftyMorphism& f, int n, const TensorIndex& x);

CheckReport check_higher_associativity(const AInftyAlgebra& alg, int n);
CheckReport check_morphism(const AInftyMorphism& f, int n);

/// g after f; f: A -> A', g: A' -> A''.
AInftyMorphism compose(const AInftyMorphism& f, const AInftyMorphism& g);

/// Two-sided inverse; throws NotInvertible unless f_1 has full rank.
AInftyMorphism invert(const AInftyMorphism& f);

/// Sum over (p,q)-shuffles with graded signs, as an endomorphism of the
/// (p+q)-th tensor power.
OpPtr shuffle_product(int p, int q, SpacePtr space);
TensorLin shuffle_apply(const GradedVectorSpace& space, int p, int q,
                        const TensorIndex& x);

CheckReport check_balanced(const MultilinearOp& op, int n);

}  // namespace ainfty

#endif
