#ifndef AINFTY_TESTS_HELPERS_HPP
#define AINFTY_TESTS_HELPERS_HPP

#include <random>

#include "ainfty/coalgebra.hpp"
#include "ainfty/io.hpp"

namespace ainfty::testing {

/// Evaluates two operators of the same shape on every basis tuple.
inline bool op_equal(const OpPtr& a, const OpPtr& b) {
  if (a->arity_in() != b->arity_in() || a->arity_out() != b->arity_out() ||
      a->degree() != b->degree())
    return false;
  bool equal = true;
  for_each_tuple(*a->source(), a->arity_in(), [&](const TensorIndex& x) {
    if (!equal) return;
    TensorLin lhs = a->eval(x), rhs = b->eval(x);
    TensorLin diff = lhs;
    tensor_add_scaled(diff, rhs, Scalar::from_int(a->source()->field(), -1));
    equal = diff.empty();
  });
  return equal;
}

inline bool op_is_zero(const OpPtr& a) {
  bool zero = true;
  for_each_tuple(*a->source(), a->arity_in(), [&](const TensorIndex& x) {
    if (zero) zero = a->eval(x).empty();
  });
  return zero;
}

/// Three-dimensional dg-algebra with mixed degrees 0/1/2, nonzero
/// differential and nonzero product: d(e2) = e1, e0*e0 = e0.
inline AInftyAlgebra mixed_base_algebra(const Field& field, int cap) {
  SpacePtr V = make_space(field, {{"e0", 0}, {"e1", 1}, {"e2", 2}});
  AInftyAlgebra alg = AInftyAlgebra::empty(V, cap);
  alg.op(1).set({2}, {{1, Scalar::one(field)}});
  alg.op(2).set({0, 0}, {{0, Scalar::one(field)}});
  return alg;
}

inline Scalar random_scalar(const Field& field, std::mt19937_64& rng, int spread = 2) {
  std::uniform_int_distribution<int> dist(-spread, spread);
  return Scalar::from_int(field, dist(rng));
}

/// Random degree-0 automorphism of the space (blockwise per degree, retried
/// until invertible).
inline GradedMap random_automorphism(const SpacePtr& V, std::mt19937_64& rng) {
  for (;;) {
    GradedMap g(V, V, 0);
    for (int j = 0; j < V->dim(); ++j) {
      LinComb col;
      for (int b : V->indices_of_degree(V->degree(j))) {
        Scalar c = random_scalar(V->field(), rng);
        if (b == j && c.is_zero()) c = Scalar::one(V->field());
        if (!c.is_zero()) col[b] = c;
      }
      g.set_column(j, col);
    }
    try {
      (void)g.inverse();
      return g;
    } catch (const Error&) {
      // singular draw; try again
    }
  }
}

inline LinComb random_lincomb(const SpacePtr& V, int degree, std::mt19937_64& rng,
                              int spread = 2) {
  LinComb v;
  for (int b : V->indices_of_degree(degree)) {
    Scalar c = random_scalar(V->field(), rng, spread);
    if (!c.is_zero()) v[b] = c;
  }
  return v;
}

/// Random graded map of the given degree with small integer entries.
inline GradedMap random_graded_map(const SpacePtr& src, const SpacePtr& dst,
                                   int degree, std::mt19937_64& rng) {
  GradedMap g(src, dst, degree);
  for (int j = 0; j < src->dim(); ++j)
    g.set_column(j, random_lincomb(dst, src->degree(j) + degree, rng));
  return g;
}

/// Random multilinear map with small integer structure constants.
inline MultilinearOp random_multilinear(const SpacePtr& src, const SpacePtr& dst,
                                        int arity, int degree, std::mt19937_64& rng) {
  MultilinearOp op(src, dst, arity, degree);
  for_each_tuple(*src, arity, [&](const TensorIndex& x) {
    op.set(x, random_lincomb(dst, tensor_degree(*src, x) + degree, rng));
  });
  return op;
}

/// All compositions of n into ordered positive parts.
inline std::vector<std::vector<int>> compositions_of(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int rest) -> void {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int part = 1; part <= rest; ++part) {
      cur.push_back(part);
      self(self, rest - part);
      cur.pop_back();
    }
  };
  rec(rec, n);
  return out;
}

/// Transports the source structure along random components (f_1 invertible,
/// f_n arbitrary): the unique target structure making f a morphism is solved
/// arity by arity, so the result is valid by construction.
inline AInftyMorphism random_valid_morphism(const AInftyAlgebra& src,
                                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const SpacePtr& V = src.space;
  GradedMap f1 = random_automorphism(V, rng);
  GradedMap f1inv = f1.inverse();

  AInftyMorphism f = AInftyMorphism::empty(src, AInftyAlgebra::empty(V, src.cap));
  for (int j = 0; j < V->dim(); ++j) f.comp(1).set({j}, f1.apply_basis(j));
  for (int n = 2; n <= f.cap; ++n)
    for_each_tuple(*V, n, [&](const TensorIndex& x) {
      f.comp(n).set(x, random_lincomb(V, tensor_degree(*V, x) + n - 1, rng));
    });

  for (int n = 1; n <= f.cap; ++n) {
    // With the arity-n target product still zero, the morphism residual on x
    // equals m'_n(f_1 x_1, ..., f_1 x_n): solve for m'_n and install it.
    MultilinearOp T(V, V, n, n - 2);
    for_each_tuple(*V, n, [&](const TensorIndex& x) {
      T.set(x, morphism_residual(f, n, x));
    });
    std::vector<OpPtr> blocks(n, op_linear(f1inv));
    f.target.op(n) =
        materialize(op_compose(T.as_op(), op_tensor(std::move(blocks))));
  }
  return f;
}

/// All check_morphism reports up to the cap pass.
inline bool morphism_ok(const AInftyMorphism& f, int cap) {
  for (int n = 1; n <= cap; ++n)
    if (!check_morphism(f, n).pass) return false;
  return true;
}

inline bool algebra_ok(const AInftyAlgebra& alg, int cap) {
  for (int n = 1; n <= cap; ++n)
    if (!check_higher_associativity(alg, n).pass) return false;
  return true;
}

/// Random complex with d^2 = 0: a direct sum of interval complexes and
/// points, conjugated by a random degree-0 automorphism.
inline std::pair<SpacePtr, GradedMap> random_complex(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> deg(-1, 2), kind(0, 2);
  std::vector<BasisElement> basis;
  std::vector<std::pair<int, int>> arrows;  // (source index, target index)
  int dim = 5 + static_cast<int>(rng() % 3);
  for (int j = 0; j < dim;) {
    int d0 = deg(rng);
    if (kind(rng) && j + 1 < dim) {
      basis.push_back({"v" + std::to_string(j), d0 + 1});
      basis.push_back({"v" + std::to_string(j + 1), d0});
      arrows.push_back({j, j + 1});
      j += 2;
    } else {
      basis.push_back({"v" + std::to_string(j), d0});
      j += 1;
    }
  }
  SpacePtr V = make_space(Field::rationals(), basis);
  GradedMap d0(V, V, -1);
  for (auto [a, b] : arrows) d0.set_entry(a, b, Scalar::one(V->field()));
  GradedMap g = random_automorphism(V, rng);
  GradedMap d = g.compose_after(d0).compose_after(g.inverse());
  return {V, d};
}

}  // namespace ainfty::testing

#endif
