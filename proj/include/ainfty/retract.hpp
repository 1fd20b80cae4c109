#ifndef AINFTY_RETRACT_HPP
#define AINFTY_RETRACT_HPP

#include "ainfty/graded.hpp"

namespace ainfty {

struct DeformationRetract {
  SpacePtr big;      // A
  GradedMap d;       // degree -1 differential on A
  SpacePtr small;    // H, zero differential
  GradedMap p;       // A -> H
  GradedMap i;       // H -> A
  GradedMap h;       // A -> A, degree +1

  /// pi = id, id - ip = dh + hd, h^2 = ph = hi = 0, di = 0, pd = 0;
  /// throws on the first failure.
  void verify() const;
};

struct HomologyResult {
  SpacePtr space;               // H with basis named after leading terms
  std::vector<LinComb> reps;    // cycle representative in A per H basis vector
};

/// Throws NotADifferential unless d^2 = 0 and deg d = -1.
HomologyResult homology(const SpacePtr& A, const GradedMap& d);

/// Deterministic splitting A_n = (im d) + (chosen cycle reps) + (d-preimages);
/// the result satisfies all side conditions by construction.
DeformationRetract build_retract(const SpacePtr& A, const GradedMap& d);

/// Like build_retract but processing the basis of A in a permuted order;
/// used to produce a second, genuinely different retract on the same complex.
DeformationRetract build_retract_permuted(const SpacePtr& A, const GradedMap& d,
                                          const std::vector<int>& order);

/// Repairs the side conditions of a homotopy: requires pi = id,
/// id - ip = dh + hd, di = 0 and pd = 0 on input (NotARetract otherwise),
/// then replaces h by (1-ip)h(1-ip) and then by hdh, after which
/// h^2 = ph = hi = 0 hold; already-normalized input is a fixed point.
DeformationRetract normalize_side_conditions(const SpacePtr& A, const GradedMap& d,
                                             const SpacePtr& H, const GradedMap& p,
                                             const GradedMap& i, const GradedMap& h);

}  // namespace ainfty

#endif
