#include "ainfty/transfer.hpp"

namespace ainfty {

namespace {

OpPtr id_blocks(const SpacePtr& space, int k) {
  return op_identity(space, k);
}

// Builds sum_{r+mid+t=n} sign(r,t) * id^{x r} (x) mid_op (x) id^{x t}.
OpPtr sandwich_sum(const SpacePtr& space, const OpPtr& mid, int n,
                   const std::function<int(int, int)>& sign) {
  const int w = mid->arity_in();
  std::vector<std::pair<int, OpPtr>> terms;
  for (int r = 0; r + w <= n; ++r) {
    int t = n - w - r;
    std::vector<OpPtr> blocks;
    if (r > 0) blocks.push_back(id_blocks(space, r));
    blocks.push_back(mid);
    if (t > 0) blocks.push_back(id_blocks(space, t));
    terms.push_back({sign(r, t), op_tensor(std::move(blocks))});
  }
  return op_sum(std::move(terms));
}

}  // namespace

OpPtr OperatorFamily::h_n(int n) const {
  OpPtr h_op = op_linear(h);
  OpPtr ip_op = op_linear(ip);
  std::vector<std::pair<int, OpPtr>> terms;
  for (int r = 0; r + 1 <= n; ++r) {
    int t = n - 1 - r;
    std::vector<OpPtr> blocks;
    if (r > 0) blocks.push_back(op_identity(space, r));
    blocks.push_back(h_op);
    for (int k = 0; k < t; ++k) blocks.push_back(ip_op);
    terms.push_back({1, op_tensor(std::move(blocks))});
  }
  return op_sum(std::move(terms));
}

OpPtr OperatorFamily::nu_n(int n) const {
  if (n < 2) fail(ErrorKind::ArityMismatch, "nu_n needs n >= 2");
  return sandwich_sum(space, nu, n,
                      [](int, int t) { return (t % 2 == 0) ? 1 : -1; });
}

OpPtr OperatorFamily::d_n(int n) const {
  OpPtr d_op = op_linear(d);
  if (n == 1) return d_op;
  int outer = ((n - 1) % 2 == 0) ? 1 : -1;
  return sandwich_sum(space, d_op, n,
                      [outer](int, int) { return outer; });
}

OpPtr m_j_n(const AInftyAlgebra& alg, int j, int n) {
  OpPtr mj = alg.op(j).as_op();
  return sandwich_sum(alg.space, mj, n, [j](int r, int t) {
    return ((r * j + t) % 2 == 0) ? 1 : -1;
  });
}

namespace {

// h lambda_k with the formal rule h lambda_1 = -id.
OpPtr h_lambda(const std::vector<OpPtr>& lam, const GradedMap& h, int k) {
  if (k == 1) return op_scale(-1, op_identity(h.source(), 1));
  return op_compose(op_linear(h), lam[k]);
}

std::vector<OpPtr> lambda_table(int cap, const DeformationRetract& retract,
                                const OpPtr& nu) {
  std::vector<OpPtr> lam(cap + 1);
  if (cap >= 2) lam[2] = nu;
  for (int n = 3; n <= cap; ++n) {
    std::vector<std::pair<int, OpPtr>> terms;
    for (int k = 1; k < n; ++k) {
      int l = n - k;
      int sign = ((k * (l + 1)) % 2 == 0) ? 1 : -1;
      OpPtr blocks = op_tensor({h_lambda(lam, retract.h, k), h_lambda(lam, retract.h, l)});
      terms.push_back({sign, op_compose(nu, blocks)});
    }
    lam[n] = op_sum(std::move(terms));
  }
  return lam;
}

std::vector<OpPtr> chi_table_dga(int cap, const OperatorFamily& fam) {
  std::vector<OpPtr> chi(cap + 1);
  if (cap >= 2) chi[2] = fam.nu;
  for (int n = 3; n <= cap; ++n) {
    OpPtr inner = op_compose(fam.h_n(n - 1), fam.nu_n(n));
    chi[n] = op_scale(((n - 1) % 2 == 0) ? 1 : -1, op_compose(chi[n - 1], inner));
  }
  return chi;
}

std::vector<OpPtr> chi_table_ainfty(int cap, const OperatorFamily& fam,
                                    const AInftyAlgebra& alg) {
  std::vector<OpPtr> chi(cap + 1);
  if (cap >= 2) chi[2] = alg.op(2).as_op();
  for (int n = 3; n <= cap; ++n) {
    std::vector<std::pair<int, OpPtr>> terms;
    terms.push_back({1, alg.op(n).as_op()});
    for (int j = 1; j <= n - 2; ++j) {
      OpPtr inner = op_compose(fam.h_n(n - j), m_j_n(alg, j + 1, n));
      terms.push_back({((n - j) % 2 == 0) ? 1 : -1, op_compose(chi[n - j], inner)});
    }
    chi[n] = op_sum(std::move(terms));
  }
  return chi;
}

void require(bool ok, ErrorKind kind, const char* msg) {
  if (!ok) fail(kind, msg);
}

void validate_dga(const SpacePtr& A, const GradedMap& d, const MultilinearOp& m2) {
  require(d.degree() == -1 && d.compose_after(d).is_zero(),
          ErrorKind::NotADgAlgebra, "d is not a square-zero degree -1 map");
  require(m2.arity() == 2 && m2.degree() == 0 && m2.source() == A && m2.target() == A,
          ErrorKind::NotADgAlgebra, "product must be a degree-0 binary operation on A");
  const Field field = A->field();
  // Associativity and the Leibniz rule, elementwise.
  for_each_tuple(*A, 3, [&](const TensorIndex& x) {
    LinComb left, right;
    for (const auto& [b, c] : m2.apply({x[0], x[1]}))
      vec_add_scaled(left, m2.apply({b, x[2]}), c);
    for (const auto& [b, c] : m2.apply({x[1], x[2]}))
      vec_add_scaled(right, m2.apply({x[0], b}), c);
    vec_add_scaled(left, right, Scalar::from_int(field, -1));
    require(left.empty(), ErrorKind::NotADgAlgebra, "product is not associative");
  });
  for_each_tuple(*A, 2, [&](const TensorIndex& x) {
    LinComb res = d.apply(m2.apply(x));
    for (const auto& [b, c] : d.apply_basis(x[0]))
      vec_add_scaled(res, m2.apply({b, x[1]}), Scalar::zero(field) - c);
    int sx = A->degree(x[0]) % 2 == 0 ? 1 : -1;
    for (const auto& [b, c] : d.apply_basis(x[1]))
      vec_add_scaled(res, m2.apply({x[0], b}), Scalar::from_int(field, -sx) * c);
    require(res.empty(), ErrorKind::NotADgAlgebra, "d is not a derivation");
  });
}

OpPtr i_tensor(const DeformationRetract& retract, int n) {
  std::vector<OpPtr> blocks(n, op_linear(retract.i));
  return op_tensor(std::move(blocks));
}

// Assembles minimal model, inclusion, projection from the chi/lambda tables.
TransferResult assemble(const AInftyAlgebra& ambient, const DeformationRetract& retract,
                        int cap, const OperatorFamily& fam,
                        const std::vector<OpPtr>& lam, const std::vector<OpPtr>& chi,
                        bool ainfty_projection, const AInftyAlgebra& alg_for_mjn) {
  TransferResult out;
  out.ambient = ambient;
  out.lambda_ops = lam;
  out.chi_ops = chi;

  const std::vector<OpPtr>& structural = lam.empty() ? chi : lam;
  OpPtr p_op = op_linear(retract.p);
  OpPtr h_op = op_linear(retract.h);

  out.minimal = AInftyAlgebra::empty(retract.small, cap);
  for (int n = 2; n <= cap; ++n) {
    OpPtr mn = op_compose(p_op, op_compose(structural[n], i_tensor(retract, n)));
    out.minimal.op(n) = materialize(mn);
  }

  out.inclusion = AInftyMorphism::empty(out.minimal, ambient);
  for (int j = 0; j < retract.small->dim(); ++j)
    out.inclusion.comp(1).set({j}, retract.i.apply_basis(j));
  // i_n = -(h lambda_n) i^{xn}: the minus extends the formal rule
  // h lambda_1 = -id, which makes n = 1 reproduce i itself.
  for (int n = 2; n <= cap; ++n) {
    OpPtr in = op_compose(h_op, op_compose(structural[n], i_tensor(retract, n)));
    out.inclusion.comp(n) = materialize(op_scale(-1, in));
  }

  out.projection = AInftyMorphism::empty(ambient, out.minimal);
  for (int j = 0; j < retract.big->dim(); ++j)
    out.projection.comp(1).set({j}, retract.p.apply_basis(j));
  std::vector<OpPtr> pops(cap + 1);
  pops[1] = p_op;
  for (int n = 2; n <= cap; ++n) {
    if (!ainfty_projection) {
      OpPtr inner = op_compose(fam.nu_n(n), fam.h_n(n));
      pops[n] = op_scale((n % 2 == 0) ? 1 : -1, op_compose(pops[n - 1], inner));
    } else {
      std::vector<std::pair<int, OpPtr>> terms;
      OpPtr hn = fam.h_n(n);
      for (int j = 1; j <= n - 1; ++j) {
        OpPtr inner = op_compose(m_j_n(alg_for_mjn, n - j + 1, n), hn);
        terms.push_back({(n % 2 == 0) ? 1 : -1, op_compose(pops[j], inner)});
      }
      pops[n] = op_sum(std::move(terms));
    }
    out.projection.comp(n) = materialize(pops[n]);
  }
  return out;
}

}  // namespace

OpPtr lambda(int n, const DeformationRetract& retract, const OpPtr& nu) {
  if (n < 2)
    fail(ErrorKind::FormalSymbolApplied,
         "lambda_1 is a formal symbol and cannot be evaluated on its own");
  return lambda_table(n, retract, nu)[n];
}

OpPtr chi_dga(int n, const DeformationRetract& retract, const OpPtr& nu) {
  if (n < 2) fail(ErrorKind::ArityMismatch, "chi needs n >= 2");
  OperatorFamily fam{retract.big, retract.d,
                     retract.i.compose_after(retract.p), retract.h, nu};
  return chi_table_dga(n, fam)[n];
}

OpPtr chi_ainfty(int n, const DeformationRetract& retract, const AInftyAlgebra& alg) {
  if (n < 2) fail(ErrorKind::ArityMismatch, "chi needs n >= 2");
  OperatorFamily fam{retract.big, retract.d,
                     retract.i.compose_after(retract.p), retract.h, alg.op(2).as_op()};
  return chi_table_ainfty(n, fam, alg)[n];
}

TransferResult transfer_dga(const SpacePtr& A, const GradedMap& d,
                            const MultilinearOp& m2,
                            const DeformationRetract& retract, int cap) {
  validate_dga(A, d, m2);
  require(retract.big == A && retract.d == d, ErrorKind::RetractMismatch,
          "retract does not belong to (A, d)");
  retract.verify();

  AInftyAlgebra ambient = AInftyAlgebra::empty(A, cap);
  for (int j = 0; j < A->dim(); ++j) {
    const LinComb& col = d.apply_basis(j);
    if (!col.empty()) ambient.op(1).set({j}, col);
  }
  ambient.op(2) = m2;

  OperatorFamily fam{A, d, retract.i.compose_after(retract.p), retract.h, m2.as_op()};
  std::vector<OpPtr> lam = lambda_table(cap, retract, fam.nu);
  std::vector<OpPtr> chi = chi_table_dga(cap, fam);
  return assemble(ambient, retract, cap, fam, lam, chi, false, ambient);
}

TransferResult transfer_ainfty(const AInftyAlgebra& alg,
                               const DeformationRetract& retract, int cap) {
  require(retract.big == alg.space, ErrorKind::NotARetract,
          "retract does not belong to the algebra's space");
  require(retract.d == alg.differential(), ErrorKind::NotARetract,
          "retract differential differs from m_1");
  retract.verify();
  require(cap <= alg.cap, ErrorKind::ArityMismatch, "cap exceeds input algebra cap");

  OperatorFamily fam{alg.space, retract.d,
                     retract.i.compose_after(retract.p), retract.h, alg.op(2).as_op()};
  std::vector<OpPtr> chi = chi_table_ainfty(cap, fam, alg);
  return assemble(alg, retract, cap, fam, {}, chi, true, alg);
}

OpPtr phi_residual(int n, const DeformationRetract& retract, const OpPtr& nu) {
  if (n < 3) fail(ErrorKind::ArityMismatch, "phi needs n >= 3");
  std::vector<OpPtr> lam = lambda_table(n, retract, nu);
  std::vector<std::pair<int, OpPtr>> terms;
  for (int l = 2; l <= n - 1; ++l) {
    for (int j = 0; j + l <= n; ++j) {
      int k = n - j - l;
      std::vector<OpPtr> blocks;
      if (j > 0) blocks.push_back(op_identity(retract.big, j));
      blocks.push_back(lam[l]);
      if (k > 0) blocks.push_back(op_identity(retract.big, k));
      int sign = ((j * l + k) % 2 == 0) ? 1 : -1;
      terms.push_back({sign, op_compose(lam[j + k + 1], op_tensor(std::move(blocks)))});
    }
  }
  return op_sum(std::move(terms));
}

}  // namespace ainfty
