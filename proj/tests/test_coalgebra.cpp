#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace ainfty;
using namespace ainfty::testing;

namespace {

void for_each_word(const GradedVectorSpace& base, int cap,
                   const std::function<void(const Word&)>& visit) {
  visit({});
  for (int n = 1; n <= cap; ++n)
    for_each_tuple(base, n, [&](const TensorIndex& x) { visit(x); });
}

bool coalg_equal(const CoalgPtr& a, const CoalgPtr& b) {
  bool equal = true;
  for_each_word(*a->source_base(), a->cap(), [&](const Word& w) {
    if (!equal) return;
    CoalgElem lhs = a->eval(w), rhs = b->eval(w);
    for (const auto& [u, c] : rhs) {
      auto it = lhs.find(u);
      if (it == lhs.end())
        lhs.emplace(u, -c);
      else if ((it->second - c).is_zero())
        lhs.erase(it);
      else
        it->second -= c;
    }
    for (auto it = lhs.begin(); it != lhs.end();)
      it = it->second.is_zero() ? lhs.erase(it) : std::next(it);
    equal = lhs.empty();
  });
  return equal;
}

bool coalg_is_zero(const CoalgPtr& a) {
  bool zero = true;
  for_each_word(*a->source_base(), a->cap(), [&](const Word& w) {
    if (!zero) return;
    for (const auto& [u, c] : a->eval(w)) zero = zero && c.is_zero();
  });
  return zero;
}

/// b_n = s m_n (s^{-1})^{xn} on the suspension.
std::map<int, OpPtr> suspended_components(const AInftyAlgebra& alg,
                                          const SpacePtr& sV, int up_to) {
  GradedMap s = suspension_map(alg.space, sV);
  GradedMap sinv = suspension_inverse(alg.space, sV);
  std::map<int, OpPtr> comps;
  for (int n = 1; n <= up_to; ++n) {
    if (alg.op(n).is_zero()) continue;
    comps[n] = op_compose(
        op_linear(s),
        op_compose(alg.op(n).as_op(),
                   op_tensor(std::vector<OpPtr>(n, op_linear(sinv)))));
  }
  return comps;
}

}  // namespace

TEST_CASE("deconcatenation counts") {
  Word w{0, 1, 2};
  CHECK(deconcat(w).size() == 4);
  CHECK(deconcat_reduced(w).size() == 2);
  CHECK(deconcat({}).size() == 1);
  CHECK(deconcat_reduced({0}).empty());
}

TEST_CASE("coderivation lift: components round-trip and the square detects the structure") {
  AlgebraSpec spec = load_fixture("lambda_xyz");
  const AInftyAlgebra& alg = spec.algebra;
  SpacePtr sV = suspend(alg.space);
  auto comps = suspended_components(alg, sV, 2);
  int cap = 4;
  CoalgPtr D = lift_to_coderivation(sV, comps, cap);

  // extracting the weight-(n -> 1) block returns the input components
  for (const auto& [n, op] : comps) {
    MultilinearOp got = materialize(coalg_component(D, n));
    MultilinearOp want = materialize(op);
    CHECK(got == want);
  }

  // D^2 = 0 on the bar side encodes d^2 = 0, the Leibniz rule and
  // associativity all at once
  CHECK(coalg_is_zero(coalg_compose(D, D)));
}

TEST_CASE("a broken input structure breaks the bar differential square") {
  AlgebraSpec spec = load_fixture("lambda_xyz");
  AInftyAlgebra alg = spec.algebra;
  const SpacePtr& V = alg.space;
  // d(x) = xz squares to zero but violates the Leibniz rule against m2
  alg.op(1).set({V->index_of("x")},
                {{V->index_of("xz"), Scalar::one(V->field())}});
  SpacePtr sV = suspend(V);
  CoalgPtr D = lift_to_coderivation(sV, suspended_components(alg, sV, 2), 4);
  CHECK_FALSE(coalg_is_zero(coalg_compose(D, D)));
}

TEST_CASE("morphism lift is unit-preserving and rejects arity-0 components") {
  AlgebraSpec spec = load_fixture("lambda_ab");
  SpacePtr sV = suspend(spec.algebra.space);
  CoalgPtr I = lift_to_morphism(
      sV, sV, {{1, op_identity(sV, 1)}}, 3);
  CHECK(coalg_equal(I, coalg_identity(sV, 3)));
  CHECK(I->eval({}).size() == 1);
  CHECK_THROWS_AS(
      lift_to_morphism(sV, sV, {{0, op_identity(sV, 1)}}, 3), Error);
}

TEST_CASE("lifted homotopy side conditions survive on the bar side") {
  AlgebraSpec spec = load_fixture("lambda_xyz");
  const SpacePtr& V = spec.algebra.space;
  DeformationRetract r = build_retract(V, spec.algebra.differential());
  SpacePtr sV = suspend(V);
  SpacePtr sH = suspend(r.small);
  GradedMap sA = suspension_map(V, sV), sAinv = suspension_inverse(V, sV);
  GradedMap sH_ = suspension_map(r.small, sH), sHinv = suspension_inverse(r.small, sH);
  int cap = 3;
  GradedMap hp = sA.compose_after(r.h).compose_after(sAinv);
  GradedMap ipp = sA.compose_after(r.i.compose_after(r.p)).compose_after(sAinv);
  CoalgPtr H = homotopy_lift(hp, ipp, cap);
  CoalgPtr I = lift_to_morphism(
      sH, sV, {{1, op_linear(sA.compose_after(r.i).compose_after(sHinv))}}, cap);
  CoalgPtr P = lift_to_morphism(
      sV, sH, {{1, op_linear(sH_.compose_after(r.p).compose_after(sAinv))}}, cap);
  CHECK(coalg_is_zero(coalg_compose(H, H)));
  CHECK(coalg_is_zero(coalg_compose(H, I)));
  CHECK(coalg_is_zero(coalg_compose(P, H)));
  CHECK(coalg_equal(coalg_compose(P, I), coalg_identity(sH, cap)));
}

TEST_CASE("perturbation output satisfies the transferred-complex identities") {
  AlgebraSpec spec = load_fixture("lambda_xyz");
  const AInftyAlgebra& alg = spec.algebra;
  const SpacePtr& V = alg.space;
  DeformationRetract r = build_retract(V, alg.differential());
  SpacePtr sV = suspend(V);
  SpacePtr sH = suspend(r.small);
  GradedMap sA = suspension_map(V, sV), sAinv = suspension_inverse(V, sV);
  GradedMap sH_ = suspension_map(r.small, sH), sHinv = suspension_inverse(r.small, sH);
  int cap = 4;
  auto comps = suspended_components(alg, sV, 2);
  CoalgPtr d_tilde = lift_to_coderivation(sV, {{1, comps[1]}}, cap);
  CoalgPtr t = lift_to_coderivation(sV, {{2, comps[2]}}, cap);
  CHECK(t->weight_drop() == 1);
  CoalgPtr H = homotopy_lift(sA.compose_after(r.h).compose_after(sAinv),
                             sA.compose_after(r.i.compose_after(r.p)).compose_after(sAinv),
                             cap);
  CoalgPtr I = lift_to_morphism(
      sH, sV, {{1, op_linear(sA.compose_after(r.i).compose_after(sHinv))}}, cap);
  CoalgPtr P = lift_to_morphism(
      sV, sH, {{1, op_linear(sH_.compose_after(r.p).compose_after(sAinv))}}, cap);
  PerturbationResult out = perturb(P, I, H, d_tilde, t, cap);
  CoalgPtr D = coalg_sum({{1, d_tilde}, {1, t}});

  CHECK(coalg_is_zero(coalg_compose(out.d_inf, out.d_inf)));
  CHECK(coalg_equal(coalg_compose(out.P_t, out.I_t), coalg_identity(sH, cap)));
  // chain conditions: I_t d_inf = D I_t and P_t D = d_inf P_t
  CHECK(coalg_equal(coalg_compose(out.I_t, out.d_inf), coalg_compose(D, out.I_t)));
  CHECK(coalg_equal(coalg_compose(out.P_t, D), coalg_compose(out.d_inf, out.P_t)));
  // perturbed homotopy side conditions
  CHECK(coalg_is_zero(coalg_compose(out.H_t, out.H_t)));
  CHECK(coalg_is_zero(coalg_compose(out.H_t, out.I_t)));
  CHECK(coalg_is_zero(coalg_compose(out.P_t, out.H_t)));
  // homotopy identity: id - I_t P_t = D H_t + H_t D
  CoalgPtr lhs = coalg_sum({{1, coalg_identity(sV, cap)},
                            {-1, coalg_compose(out.I_t, out.P_t)}});
  CoalgPtr rhs = coalg_sum({{1, coalg_compose(D, out.H_t)},
                            {1, coalg_compose(out.H_t, D)}});
  CHECK(coalg_equal(lhs, rhs));

  // a weight-preserving perturbation is rejected
  CHECK_THROWS_AS(perturb(P, I, H, d_tilde, d_tilde, cap), Error);
}

TEST_CASE("oracle transfer reproduces the direct recursion on a small fixture") {
  AlgebraSpec spec = load_fixture("kx3_f7");
  DeformationRetract r =
      build_retract(spec.algebra.space, spec.algebra.differential());
  TransferResult direct = transfer_dga(spec.algebra.space,
                                       spec.algebra.differential(),
                                       spec.algebra.op(2), r, 4);
  TransferResult oracle = oracle_transfer(spec.algebra, r, 4);
  for (int n = 1; n <= 4; ++n) {
    CHECK(direct.minimal.op(n) == oracle.minimal.op(n));
    CHECK(direct.inclusion.comp(n) == oracle.inclusion.comp(n));
    CHECK(direct.projection.comp(n) == oracle.projection.comp(n));
  }
}

TEST_CASE("oracle transfer handles a genuine a-infinity input") {
  AInftyMorphism f = random_valid_morphism(
      mixed_base_algebra(Field::rationals(), 4), 2024);
  AInftyAlgebra alg = f.target;
  DeformationRetract r = build_retract(alg.space, alg.differential());
  TransferResult direct = transfer_ainfty(alg, r, 4);
  TransferResult oracle = oracle_transfer(alg, r, 4);
  for (int n = 1; n <= 4; ++n) {
    INFO("n=", n);
    CHECK(direct.minimal.op(n) == oracle.minimal.op(n));
    CHECK(direct.inclusion.comp(n) == oracle.inclusion.comp(n));
    CHECK(direct.projection.comp(n) == oracle.projection.comp(n));
  }
  CHECK(algebra_ok(direct.minimal, 4));
  CHECK(morphism_ok(direct.inclusion, 4));
  CHECK(morphism_ok(direct.projection, 4));
}
