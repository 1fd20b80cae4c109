#include "ainfty/ainfty.hpp"

#include <algorithm>
#include <set>

namespace ainfty {

void MultilinearOp::set(const TensorIndex& in, const LinComb& out) {
  if (static_cast<int>(in.size()) != arity_)
    fail(ErrorKind::ArityMismatch, "structure constant tuple of wrong length");
  int din = tensor_degree(*src_, in);
  LinComb cleaned;
  for (const auto& [j, c] : out) {
    if (c.is_zero()) continue;
    if (dst_->degree(j) != din + degree_)
      fail(ErrorKind::DegreeMismatch,
           "structure constant " + tensor_to_string(*src_, in) + " -> " +
               dst_->name(j) + " violates degree " + std::to_string(degree_));
    cleaned[j] = c;
  }
  if (cleaned.empty())
    table_.erase(in);
  else
    table_[in] = std::move(cleaned);
}

void MultilinearOp::add(const TensorIndex& in, const LinComb& out, const Scalar& c) {
  LinComb cur = apply(in);
  vec_add_scaled(cur, out, c);
  set(in, cur);
}

LinComb MultilinearOp::apply(const TensorIndex& in) const {
  auto it = table_.find(in);
  return it == table_.end() ? LinComb{} : it->second;
}

bool MultilinearOp::operator==(const MultilinearOp& o) const {
  return arity_ == o.arity_ && degree_ == o.degree_ && table_ == o.table_;
}

OpPtr MultilinearOp::as_op() const {
  std::map<TensorIndex, TensorLin> table;
  for (const auto& [in, out] : table_) {
    TensorLin t;
    for (const auto& [j, c] : out) t.emplace(TensorIndex{j}, c);
    table.emplace(in, std::move(t));
  }
  return op_table(src_, dst_, arity_, 1, degree_, std::move(table));
}

void for_each_tuple(const GradedVectorSpace& space, int n,
                    const std::function<void(const TensorIndex&)>& visit) {
  TensorIndex t(n);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == n) {
      visit(t);
      return;
    }
    for (int i = 0; i < space.dim(); ++i) {
      t[pos] = i;
      rec(pos + 1);
    }
  };
  rec(0);
}

MultilinearOp materialize(const OpPtr& op) {
  if (op->arity_out() != 1)
    fail(ErrorKind::ArityMismatch, "materialize expects a vector-valued operator");
  const GradedVectorSpace& src = *op->source();
  const GradedVectorSpace& dst = *op->target();
  MultilinearOp out(op->source(), op->target(), op->arity_in(), op->degree());

  // A tuple can only contribute when (its degree + operator degree) is a
  // degree realized in the target space.
  std::set<int> wanted;
  for (int j = 0; j < dst.dim(); ++j) wanted.insert(dst.degree(j) - op->degree());
  const int n = op->arity_in();
  const int lo = src.min_degree(), hi = src.max_degree();

  TensorIndex t(n);
  std::function<void(int, int)> rec = [&](int pos, int partial) {
    int rem = n - pos;
    auto it = wanted.lower_bound(partial + rem * lo);
    if (it == wanted.end() || *it > partial + rem * hi) return;
    if (pos == n) {
      TensorLin r = op->eval(t);
      LinComb col;
      for (const auto& [tt, c] : r) col[tt[0]] = c;
      if (!col.empty()) out.set(t, col);
      return;
    }
    for (int i = 0; i < src.dim(); ++i) {
      t[pos] = i;
      rec(pos + 1, partial + src.degree(i));
    }
  };
  rec(0, 0);
  return out;
}

AInftyAlgebra AInftyAlgebra::empty(SpacePtr space, int cap) {
  AInftyAlgebra alg;
  alg.space = space;
  alg.cap = cap;
  alg.m.reserve(cap + 1);
  for (int n = 0; n <= cap; ++n)
    alg.m.emplace_back(space, space, std::max(n, 1), n - 2);
  return alg;
}

bool AInftyAlgebra::is_dga() const {
  for (int n = 3; n <= cap; ++n)
    if (!m[n].is_zero()) return false;
  return true;
}

GradedMap AInftyAlgebra::differential() const {
  GradedMap d(space, space, -1);
  for (const auto& [in, out] : m[1].table()) d.set_column(in[0], out);
  return d;
}

AInftyMorphism AInftyMorphism::empty(const AInftyAlgebra& src, const AInftyAlgebra& dst) {
  if (!(src.space->field() == dst.space->field()))
    fail(ErrorKind::FieldMismatch, "morphism between different fields");
  AInftyMorphism f;
  f.source = src;
  f.target = dst;
  f.cap = std::min(src.cap, dst.cap);
  for (int n = 0; n <= f.cap; ++n)
    f.f.emplace_back(src.space, dst.space, std::max(n, 1), n - 1);
  return f;
}

AInftyMorphism identity_morphism(const AInftyAlgebra& alg) {
  AInftyMorphism f = AInftyMorphism::empty(alg, alg);
  for (int i = 0; i < alg.space->dim(); ++i)
    f.f[1].set({i}, {{i, Scalar::one(alg.space->field())}});
  return f;
}

int sign_l(const std::vector<int>& parts) {
  long exp = 0;
  const int r = static_cast<int>(parts.size());
  for (int j = 0; j < r; ++j)
    for (int k = j + 1; k < r; ++k) exp += static_cast<long>(parts[k] - 1) * parts[j];
  return (exp % 2 == 0) ? 1 : -1;
}

void CheckReport::record(const TensorIndex& in, const LinComb& res) {
  pass = false;
  ++total_violations;
  if (witnesses.size() < 10) witnesses.push_back({in, res});
}

namespace {

// Applies id^{x r} (x) g (x) id^{x t} to x and feeds the result through outer,
// with the Koszul sign of g crossing the first r inputs.
LinComb plug_middle(const GradedVectorSpace& space, const MultilinearOp& outer,
                    const MultilinearOp& g, int r, const TensorIndex& x) {
  const int s = g.arity();
  int crossed = 0;
  for (int a = 0; a < r; ++a) crossed += space.degree(x[a]);
  Scalar sign = Scalar::from_int(space.field(),
                                 ((g.degree() * crossed) % 2 == 0) ? 1 : -1);
  TensorIndex mid(x.begin() + r, x.begin() + r + s);
  LinComb inner = g.apply(mid);
  LinComb out;
  for (const auto& [b, c] : inner) {
    TensorIndex y;
    y.reserve(x.size() - s + 1);
    y.insert(y.end(), x.begin(), x.begin() + r);
    y.push_back(b);
    y.insert(y.end(), x.begin() + r + s, x.end());
    vec_add_scaled(out, outer.apply(y), c * sign);
  }
  return out;
}

void compositions_rec(int n, std::vector<int>& cur,
                      const std::function<void(const std::vector<int>&)>& visit) {
  if (n == 0) {
    visit(cur);
    return;
  }
  for (int part = 1; part <= n; ++part) {
    cur.push_back(part);
    compositions_rec(n - part, cur, visit);
    cur.pop_back();
  }
}

void for_each_composition(int n, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> cur;
  compositions_rec(n, cur, visit);
}

// Applies f_{parts[0]} (x) ... (x) f_{parts[r-1]} to x with element-level
// Koszul signs, then feeds the length-r result through outer.
LinComb blocks_then(const GradedVectorSpace& space, const MultilinearOp& outer,
                    const std::vector<MultilinearOp>& f, const std::vector<int>& parts,
                    const TensorIndex& x) {
  Field field = space.field();
  std::map<TensorIndex, Scalar> acc;
  acc.emplace(TensorIndex{}, Scalar::one(field));
  int offset = 0, degree_before = 0;
  for (int part : parts) {
    const MultilinearOp& blk = f[part];
    TensorIndex slice(x.begin() + offset, x.begin() + offset + part);
    int exp = blk.degree() * degree_before;
    Scalar sign = Scalar::from_int(field, (exp % 2 == 0) ? 1 : -1);
    LinComb image = blk.apply(slice);
    std::map<TensorIndex, Scalar> next;
    for (const auto& [prefix, c] : acc) {
      for (const auto& [b, a] : image) {
        TensorIndex y = prefix;
        y.push_back(b);
        Scalar v = c * a * sign;
        auto it = next.find(y);
        if (it == next.end())
          next.emplace(y, v);
        else {
          it->second = it->second + v;
          if (it->second.is_zero()) next.erase(it);
        }
      }
    }
    acc = std::move(next);
    degree_before += tensor_degree(space, slice);
    offset += part;
  }
  LinComb out;
  for (const auto& [y, c] : acc) vec_add_scaled(out, outer.apply(y), c);
  return out;
}

}  // namespace

LinComb associativity_residual(const AInftyAlgebra& alg, int n, const TensorIndex& x) {
  const Field field = alg.space->field();
  LinComb res;
  for (int s = 1; s <= n; ++s) {
    for (int r = 0; r + s <= n; ++r) {
      int t = n - s - r;
      int sign = ((r * s + t) % 2 == 0) ? 1 : -1;
      LinComb term = plug_middle(*alg.space, alg.op(r + t + 1), alg.op(s), r, x);
      vec_add_scaled(res, term, Scalar::from_int(field, sign));
    }
  }
  return res;
}

LinComb morphism_residual(const AInftyMorphism& f, int n, const TensorIndex& x) {
  const Field field = f.source.space->field();
  LinComb res;
  for (int s = 1; s <= n; ++s) {
    for (int r = 0; r + s <= n; ++r) {
      int t = n - s - r;
      int sign = ((r * s + t) % 2 == 0) ? 1 : -1;
      LinComb term = plug_middle(*f.source.space, f.comp(r + t + 1), f.source.op(s), r, x);
      vec_add_scaled(res, term, Scalar::from_int(field, sign));
    }
  }
  for_each_composition(n, [&](const std::vector<int>& parts) {
    const MultilinearOp& outer = f.target.op(static_cast<int>(parts.size()));
    LinComb term = blocks_then(*f.source.space, outer, f.f, parts, x);
    vec_add_scaled(res, term, Scalar::from_int(field, -sign_l(parts)));
  });
  return res;
}

CheckReport check_higher_associativity(const AInftyAlgebra& alg, int n) {
  if (n > alg.cap) fail(ErrorKind::ArityMismatch, "arity beyond cap");
  CheckReport report;
  for_each_tuple(*alg.space, n, [&](const TensorIndex& x) {
    LinComb res = associativity_residual(alg, n, x);
    if (!res.empty()) report.record(x, res);
  });
  return report;
}

CheckReport check_morphism(const AInftyMorphism& f, int n) {
  if (n > f.cap) fail(ErrorKind::ArityMismatch, "arity beyond cap");
  for (int k = 1; k <= f.cap; ++k) {
    if (f.comp(k).source() != f.source.space || f.comp(k).target() != f.target.space)
      fail(ErrorKind::SpaceMismatch, "morphism components do not connect source to target");
  }
  CheckReport report;
  for_each_tuple(*f.source.space, n, [&](const TensorIndex& x) {
    LinComb res = morphism_residual(f, n, x);
    if (!res.empty()) report.record(x, res);
  });
  return report;
}

AInftyMorphism compose(const AInftyMorphism& f, const AInftyMorphism& g) {
  if (g.source.space != f.target.space)
    fail(ErrorKind::SpaceMismatch, "composition: middle algebras differ");
  AInftyMorphism out = AInftyMorphism::empty(f.source, g.target);
  out.cap = std::min(f.cap, g.cap);
  const Field field = f.source.space->field();
  for (int n = 1; n <= out.cap; ++n) {
    MultilinearOp& comp = out.comp(n);
    for_each_tuple(*f.source.space, n, [&](const TensorIndex& x) {
      LinComb val;
      for_each_composition(n, [&](const std::vector<int>& parts) {
        const MultilinearOp& outer = g.comp(static_cast<int>(parts.size()));
        LinComb term = blocks_then(*f.source.space, outer, f.f, parts, x);
        vec_add_scaled(val, term, Scalar::from_int(field, sign_l(parts)));
      });
      if (!val.empty()) comp.set(x, val);
    });
  }
  return out;
}

AInftyMorphism invert(const AInftyMorphism& f) {
  GradedMap f1(f.source.space, f.target.space, 0);
  for (const auto& [in, out] : f.comp(1).table()) f1.set_column(in[0], out);
  GradedMap g1 = f1.inverse();  // throws NotInvertible

  AInftyMorphism g = AInftyMorphism::empty(f.target, f.source);
  g.cap = f.cap;
  for (int i = 0; i < f.target.space->dim(); ++i) g.comp(1).set({i}, g1.apply_basis(i));

  const Field field = f.source.space->field();
  for (int n = 2; n <= g.cap; ++n) {
    MultilinearOp& gn = g.comp(n);
    for_each_tuple(*f.target.space, n, [&](const TensorIndex& x) {
      LinComb val;
      for_each_composition(n, [&](const std::vector<int>& parts) {
        if (parts.size() < 2) return;
        const MultilinearOp& outer = f.comp(static_cast<int>(parts.size()));
        LinComb term = blocks_then(*f.target.space, outer, g.f, parts, x);
        vec_add_scaled(val, term, Scalar::from_int(field, sign_l(parts)));
      });
      if (val.empty()) return;
      LinComb corrected = g1.apply(val);
      LinComb neg;
      vec_add_scaled(neg, corrected, Scalar::from_int(field, -1));
      if (!neg.empty()) gn.set(x, neg);
    });
  }
  return g;
}

TensorLin shuffle_apply(const GradedVectorSpace& space, int p, int q,
                        const TensorIndex& x) {
  const int n = p + q;
  if (static_cast<int>(x.size()) != n)
    fail(ErrorKind::ArityMismatch, "shuffle on tuple of wrong length");
  TensorLin out;
  // Choose the output positions of the first block, in increasing order.
  std::vector<int> pos(p);
  std::function<void(int, int)> rec = [&](int idx, int start) {
    if (idx == p) {
      TensorIndex y(n, -1);
      for (int a = 0; a < p; ++a) y[pos[a]] = x[a];
      int b = p;
      for (int k = 0; k < n; ++k)
        if (y[k] < 0) y[k] = x[b++];
      // Combined sgn(sigma) * eps(sigma; x): one factor per inverted pair.
      long exp = 0;
      std::vector<bool> first_block(n, false);
      for (int a = 0; a < p; ++a) first_block[pos[a]] = true;
      for (int a = 0; a < p; ++a)
        for (int k = 0; k < pos[a]; ++k)
          if (!first_block[k]) {
            // second-block element at output k precedes first-block x[a]
            exp += 1 + static_cast<long>(space.degree(x[a])) * space.degree(y[k]);
          }
      tensor_add(out, y, Scalar::from_int(space.field(), (exp % 2 == 0) ? 1 : -1));
      return;
    }
    for (int k = start; k <= n - (p - idx); ++k) {
      pos[idx] = k;
      rec(idx + 1, k + 1);
    }
  };
  if (p == 0 || q == 0) {
    tensor_add(out, x, Scalar::one(space.field()));
    return out;
  }
  rec(0, 0);
  return out;
}

namespace {
class ShuffleOp final : public TensorOp {
public:
  ShuffleOp(SpacePtr space, int p, int q)
      : TensorOp(space, space, p + q, p + q, 0), p_(p), q_(q) {}

protected:
  TensorLin compute(const TensorIndex& x) const override {
    return shuffle_apply(*src_, p_, q_, x);
  }

private:
  int p_, q_;
};
}  // namespace

OpPtr shuffle_product(int p, int q, SpacePtr space) {
  if (p < 1 || q < 1) fail(ErrorKind::ArityMismatch, "shuffle needs p,q >= 1");
  return std::make_shared<ShuffleOp>(std::move(space), p, q);
}

CheckReport check_balanced(const MultilinearOp& op, int n) {
  CheckReport report;
  if (n < 2) fail(ErrorKind::ArityMismatch, "balancedness needs arity >= 2");
  if (op.arity() != n) fail(ErrorKind::ArityMismatch, "operator arity mismatch");
  for (int p = 1; p < n; ++p) {
    for_each_tuple(*op.source(), n, [&](const TensorIndex& x) {
      TensorLin shuffled = shuffle_apply(*op.source(), p, n - p, x);
      LinComb res;
      for (const auto& [y, c] : shuffled) vec_add_scaled(res, op.apply(y), c);
      if (!res.empty()) report.record(x, res);
    });
  }
  return report;
}

}  // namespace ainfty
