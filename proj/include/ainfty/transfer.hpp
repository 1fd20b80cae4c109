#ifndef AINFTY_TRANSFER_HPP
#define AINFTY_TRANSFER_HPP

#include "ainfty/ainfty.hpp"
#include "ainfty/retract.hpp"

namespace ainfty {

/// The arity-indexed operator families h_n, nu_n, d_n, m_j^n, built lazily.
struct OperatorFamily {
  SpacePtr space;
  GradedMap d, ip, h;
  OpPtr nu;  // the product, A (x) A -> A

  /// h_n = sum_{r+t=n-1} id^{x r} (x) h (x) (ip)^{x t}.
  OpPtr h_n(int n) const;
  /// nu_n = sum_{r+t=n-2} (-1)^t id^{x r} (x) nu (x) id^{x t}.
  OpPtr nu_n(int n) const;
  /// d_n = (-1)^{n-1} sum_{r+1+t=n} id^{x r} (x) d (x) id^{x t}.
  OpPtr d_n(int n) const;
};

/// m_j^n = sum_{r+j+t=n} (-1)^{rj+t} id^{x r} (x) m_j (x) id^{x t}.
OpPtr m_j_n(const AInftyAlgebra& alg, int j, int n);

struct TransferResult {
  AInftyAlgebra minimal;            // (H, m')
  AInftyAlgebra ambient;            // the input structure on A
  AInftyMorphism inclusion;         // (H, m') -> (A, m)
  AInftyMorphism projection;        // (A, m) -> (H, m')
  std::vector<OpPtr> lambda_ops;    // lambda_n (dg-algebra path), index = arity
  std::vector<OpPtr> chi_ops;       // chi_n, index = arity
};

/// Merkulov's lambda recursion: lambda_2 = nu and
/// lambda_n = sum_{k+l=n} (-1)^{k(l+1)} nu(h lambda_k (x) h lambda_l) with the
/// formal rule h lambda_1 = -id. Throws FormalSymbolApplied for n = 1.
OpPtr lambda(int n, const DeformationRetract& retract, const OpPtr& nu);

/// chi_2 = nu, chi_n = (-1)^{n-1} chi_{n-1} h_{n-1} nu_n.
OpPtr chi_dga(int n, const DeformationRetract& retract, const OpPtr& nu);

/// chi_2 = m_2, chi_n = m_n + sum_{j=1}^{n-2} (-1)^{n-j} chi_{n-j} h_{n-j} m_{j+1}^n.
OpPtr chi_ainfty(int n, const DeformationRetract& retract, const AInftyAlgebra& alg);

/// Minimal model of a dg-algebra (m2 given as a structure-constant table):
/// m'_n = p lambda_n i^{xn}, i_n = h lambda_n i^{xn}, p_n = (-1)^n p_{n-1} nu_n h_n.
TransferResult transfer_dga(const SpacePtr& A, const GradedMap& d,
                            const MultilinearOp& m2,
                            const DeformationRetract& retract, int cap);

/// Minimal model of an A-infinity algebra via the chi recursion of the
/// general homotopy transfer.
TransferResult transfer_ainfty(const AInftyAlgebra& alg,
                               const DeformationRetract& retract, int cap);

/// Phi_n = sum_{j+l+k=n, 2<=l<=n-1} (-1)^{jl+k}
///         lambda_{j+k+1}(id^{xj} (x) lambda_l (x) id^{xk}); vanishes
/// identically (the key lemma behind the minimal model).
OpPtr phi_residual(int n, const DeformationRetract& retract, const OpPtr& nu);

}  // namespace ainfty

#endif
