#ifndef AINFTY_COALGEBRA_HPP
#define AINFTY_COALGEBRA_HPP

#include "ainfty/retract.hpp"
#include "ainfty/transfer.hpp"

namespace ainfty {

/// Basis word of the weight-truncated tensor coalgebra T^c(V): a tuple of
/// basis indices of V; the empty word is the coaugmentation unit.
using Word = TensorIndex;
using CoalgElem = std::map<Word, Scalar>;

int word_degree(const GradedVectorSpace& base, const Word& w);

/// Deconcatenation coproduct terms (unreduced: includes the two unit ends).
std::vector<std::pair<Word, Word>> deconcat(const Word& w);
/// Reduced coproduct: both parts nonempty.
std::vector<std::pair<Word, Word>> deconcat_reduced(const Word& w);

/// Weight-graded map between truncated tensor coalgebras, evaluated lazily on
/// basis words with memoization; results beyond the weight cap are truncated.
class CoalgOp {
public:
  virtual ~CoalgOp() = default;

  const SpacePtr& source_base() const { return src_; }
  const SpacePtr& target_base() const { return dst_; }
  int degree() const { return degree_; }
  int cap() const { return cap_; }
  /// Guaranteed minimum weight decrease (0 = may preserve weight).
  int weight_drop() const { return weight_drop_; }

  CoalgElem eval(const Word& w) const;

protected:
  CoalgOp(SpacePtr src, SpacePtr dst, int degree, int cap, int weight_drop)
      : src_(std::move(src)), dst_(std::move(dst)), degree_(degree), cap_(cap),
        weight_drop_(weight_drop) {}

  virtual CoalgElem compute(const Word& w) const = 0;

  SpacePtr src_, dst_;
  int degree_, cap_, weight_drop_;

private:
  mutable std::mutex mu_;
  mutable std::map<Word, CoalgElem> memo_;
};

using CoalgPtr = std::shared_ptr<const CoalgOp>;

CoalgPtr coalg_identity(SpacePtr base, int cap);
CoalgPtr coalg_zero(SpacePtr src, SpacePtr dst, int degree, int cap);
CoalgPtr coalg_sum(std::vector<std::pair<int, CoalgPtr>> terms);
CoalgPtr coalg_scale(int c, CoalgPtr op);
CoalgPtr coalg_compose(CoalgPtr outer, CoalgPtr inner);

/// Unique coderivation with corestriction sum of the given components
/// (arity -> map V^{x arity} -> V, all of one degree; arity 0 = value on the
/// unit is allowed).
CoalgPtr lift_to_coderivation(SpacePtr base, std::map<int, OpPtr> comps, int cap);

/// Unique coaugmented coalgebra morphism with the given corestriction
/// components (arity >= 1). Throws UnitViolation on an arity-0 component.
CoalgPtr lift_to_morphism(SpacePtr src, SpacePtr dst, std::map<int, OpPtr> comps,
                          int cap);

/// The lifted homotopy: sum_n sum_{r+t=n-1} id^{x r} (x) h (x) (ip)^{x t},
/// with h and ip degree +1 / 0 endomorphisms of the base.
CoalgPtr homotopy_lift(const GradedMap& h, const GradedMap& ip, int cap);

/// Reads one (in_weight -> out_weight = 1) block of a coalgebra map as an
/// ordinary tensor operator.
OpPtr coalg_component(CoalgPtr op, int in_weight);

struct PerturbationResult {
  CoalgPtr H_t, I_t, P_t, d_inf;
};

/// Basic perturbation lemma on the truncation; t must strictly decrease the
/// weight (NotWeightDecreasing otherwise).
PerturbationResult perturb(const CoalgPtr& P, const CoalgPtr& I, const CoalgPtr& H,
                           const CoalgPtr& d_tilde, const CoalgPtr& t, int cap);

/// Independent transfer path: suspend, lift, perturb, unsuspend.
TransferResult oracle_transfer(const AInftyAlgebra& alg,
                               const DeformationRetract& retract, int cap);

}  // namespace ainfty

#endif
