#include "ainfty/coalgebra.hpp"

namespace ainfty {

int word_degree(const GradedVectorSpace& base, const Word& w) {
  return tensor_degree(base, w);
}

std::vector<std::pair<Word, Word>> deconcat(const Word& w) {
  std::vector<std::pair<Word, Word>> out;
  for (size_t i = 0; i <= w.size(); ++i)
    out.emplace_back(Word(w.begin(), w.begin() + i), Word(w.begin() + i, w.end()));
  return out;
}

std::vector<std::pair<Word, Word>> deconcat_reduced(const Word& w) {
  std::vector<std::pair<Word, Word>> out;
  for (size_t i = 1; i + 1 <= w.size(); ++i)
    out.emplace_back(Word(w.begin(), w.begin() + i), Word(w.begin() + i, w.end()));
  return out;
}

CoalgElem CoalgOp::eval(const Word& w) const {
  if (static_cast<int>(w.size()) > cap_)
    fail(ErrorKind::ArityMismatch, "word beyond weight cap");
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(w);
    if (it != memo_.end()) return it->second;
  }
  CoalgElem result = compute(w);
  std::lock_guard<std::mutex> lock(mu_);
  return memo_.emplace(w, std::move(result)).first->second;
}

namespace {

void elem_add(CoalgElem& dst, const Word& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = dst.find(w);
  if (it == dst.end()) {
    dst.emplace(w, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) dst.erase(it);
}

void elem_add_scaled(CoalgElem& dst, const CoalgElem& src, const Scalar& c) {
  if (c.is_zero()) return;
  for (const auto& [w, a] : src) elem_add(dst, w, a * c);
}

class CoalgIdentity final : public CoalgOp {
public:
  CoalgIdentity(SpacePtr base, int cap) : CoalgOp(base, base, 0, cap, 0) {}

protected:
  CoalgElem compute(const Word& w) const override {
    return {{w, Scalar::one(src_->field())}};
  }
};

class CoalgZero final : public CoalgOp {
public:
  CoalgZero(SpacePtr src, SpacePtr dst, int degree, int cap)
      : CoalgOp(std::move(src), std::move(dst), degree, cap, cap + 1) {}

protected:
  CoalgElem compute(const Word&) const override { return {}; }
};

class CoalgSum final : public CoalgOp {
public:
  CoalgSum(std::vector<std::pair<int, CoalgPtr>> terms, SpacePtr src, SpacePtr dst,
           int degree, int cap, int drop)
      : CoalgOp(std::move(src), std::move(dst), degree, cap, drop),
        terms_(std::move(terms)) {}

protected:
  CoalgElem compute(const Word& w) const override {
    CoalgElem out;
    for (const auto& [c, op] : terms_)
      elem_add_scaled(out, op->eval(w), Scalar::from_int(src_->field(), c));
    return out;
  }

private:
  std::vector<std::pair<int, CoalgPtr>> terms_;
};

class CoalgCompose final : public CoalgOp {
public:
  CoalgCompose(CoalgPtr outer, CoalgPtr inner)
      : CoalgOp(inner->source_base(), outer->target_base(),
                inner->degree() + outer->degree(), inner->cap(),
                std::min(inner->weight_drop() + outer->weight_drop(),
                         inner->cap() + 1)),
        outer_(std::move(outer)), inner_(std::move(inner)) {}

protected:
  CoalgElem compute(const Word& w) const override {
    CoalgElem mid = inner_->eval(w);
    CoalgElem out;
    for (const auto& [u, c] : mid) elem_add_scaled(out, outer_->eval(u), c);
    return out;
  }

private:
  CoalgPtr outer_, inner_;
};

class CoderLift final : public CoalgOp {
public:
  CoderLift(SpacePtr base, std::map<int, OpPtr> comps, int degree, int cap, int drop)
      : CoalgOp(base, base, degree, cap, drop), comps_(std::move(comps)) {}

protected:
  CoalgElem compute(const Word& w) const override {
    const int m = static_cast<int>(w.size());
    const Field field = src_->field();
    CoalgElem out;
    for (int r = 0; r <= m; ++r) {
      int pre_deg = word_degree(*src_, Word(w.begin(), w.begin() + r));
      for (const auto& [k, op] : comps_) {
        if (r + k > m) continue;
        if (m - k + 1 > cap_) continue;  // truncation (only possible for k = 0)
        int exp = op->degree() * pre_deg;
        Scalar sign = Scalar::from_int(field, (exp % 2 == 0) ? 1 : -1);
        TensorLin image = op->eval(Word(w.begin() + r, w.begin() + r + k));
        for (const auto& [g, c] : image) {
          Word y(w.begin(), w.begin() + r);
          y.push_back(g[0]);
          y.insert(y.end(), w.begin() + r + k, w.end());
          elem_add(out, y, c * sign);
        }
      }
    }
    return out;
  }

private:
  std::map<int, OpPtr> comps_;
};

class MorphLift final : public CoalgOp {
public:
  MorphLift(SpacePtr src, SpacePtr dst, std::map<int, OpPtr> comps, int degree, int cap)
      : CoalgOp(std::move(src), std::move(dst), degree, cap, 0),
        comps_(std::move(comps)) {}

protected:
  CoalgElem compute(const Word& w) const override {
    const Field field = src_->field();
    if (w.empty()) return {{Word{}, Scalar::one(field)}};
    const int m = static_cast<int>(w.size());
    CoalgElem out;
    // Ordered partitions of the word into nonempty blocks, each sent through
    // the matching component with the Koszul crossing sign.
    std::function<void(int, Word&, const Scalar&, int)> rec =
        [&](int offset, Word& acc, const Scalar& coeff, int deg_before) {
          if (offset == m) {
            elem_add(out, acc, coeff);
            return;
          }
          for (const auto& [k, op] : comps_) {
            if (k < 1 || offset + k > m) continue;
            Word slice(w.begin() + offset, w.begin() + offset + k);
            int exp = op->degree() * deg_before;
            Scalar sign = Scalar::from_int(field, (exp % 2 == 0) ? 1 : -1);
            TensorLin image = op->eval(slice);
            for (const auto& [g, c] : image) {
              acc.push_back(g[0]);
              Scalar next = coeff * c * sign;
              rec(offset + k, acc, next, deg_before + word_degree(*src_, slice));
              acc.pop_back();
            }
          }
        };
    Word acc;
    Scalar one = Scalar::one(field);
    rec(0, acc, one, 0);
    return out;
  }

private:
  std::map<int, OpPtr> comps_;
};

class HomotopyLift final : public CoalgOp {
public:
  HomotopyLift(GradedMap h, GradedMap ip, int cap)
      : CoalgOp(h.source(), h.source(), 1, cap, 0),
        h_(std::move(h)), ip_(std::move(ip)) {}

protected:
  CoalgElem compute(const Word& w) const override {
    const int m = static_cast<int>(w.size());
    CoalgElem out;
    GradedMap id = GradedMap::identity(src_);
    for (int r = 0; r + 1 <= m; ++r) {
      std::vector<GradedMap> maps;
      maps.reserve(m);
      for (int a = 0; a < r; ++a) maps.push_back(id);
      maps.push_back(h_);
      for (int a = r + 1; a < m; ++a) maps.push_back(ip_);
      TensorLin t = koszul_tensor_apply(maps, w);
      for (const auto& [y, c] : t) elem_add(out, y, c);
    }
    return out;
  }

private:
  GradedMap h_, ip_;
};

}  // namespace

CoalgPtr coalg_identity(SpacePtr base, int cap) {
  return std::make_shared<CoalgIdentity>(std::move(base), cap);
}

CoalgPtr coalg_zero(SpacePtr src, SpacePtr dst, int degree, int cap) {
  return std::make_shared<CoalgZero>(std::move(src), std::move(dst), degree, cap);
}

CoalgPtr coalg_sum(std::vector<std::pair<int, CoalgPtr>> terms) {
  if (terms.empty()) fail(ErrorKind::ArityMismatch, "empty coalgebra-map sum");
  const CoalgPtr& first = terms[0].second;
  int drop = first->weight_drop();
  for (const auto& [c, op] : terms) {
    (void)c;
    if (op->source_base() != first->source_base() ||
        op->target_base() != first->target_base() || op->degree() != first->degree())
      fail(ErrorKind::SpaceMismatch, "summed coalgebra maps of different shapes");
    drop = std::min(drop, op->weight_drop());
  }
  SpacePtr src = first->source_base(), dst = first->target_base();
  int degree = first->degree(), cap = first->cap();
  return std::make_shared<CoalgSum>(std::move(terms), std::move(src), std::move(dst),
                                    degree, cap, drop);
}

CoalgPtr coalg_scale(int c, CoalgPtr op) { return coalg_sum({{c, std::move(op)}}); }

CoalgPtr coalg_compose(CoalgPtr outer, CoalgPtr inner) {
  if (inner->target_base() != outer->source_base())
    fail(ErrorKind::SpaceMismatch, "coalgebra map composition mismatch");
  return std::make_shared<CoalgCompose>(std::move(outer), std::move(inner));
}

CoalgPtr lift_to_coderivation(SpacePtr base, std::map<int, OpPtr> comps, int cap) {
  int degree = -1;
  bool first = true;
  int drop = cap + 1;
  for (const auto& [k, op] : comps) {
    if (op->arity_in() != k || op->arity_out() != 1 ||
        op->source() != base || op->target() != base)
      fail(ErrorKind::SpaceMismatch, "coderivation component of wrong shape");
    if (first) {
      degree = op->degree();
      first = false;
    } else if (op->degree() != degree) {
      fail(ErrorKind::DegreeMismatch, "coderivation components of mixed degree");
    }
    drop = std::min(drop, k - 1);
  }
  return std::make_shared<CoderLift>(std::move(base), std::move(comps),
                                     first ? -1 : degree, cap, drop);
}

CoalgPtr lift_to_morphism(SpacePtr src, SpacePtr dst, std::map<int, OpPtr> comps,
                          int cap) {
  int degree = 0;
  bool first = true;
  for (const auto& [k, op] : comps) {
    if (k < 1) fail(ErrorKind::UnitViolation, "morphism component on the unit");
    if (op->arity_in() != k || op->arity_out() != 1 ||
        op->source() != src || op->target() != dst)
      fail(ErrorKind::SpaceMismatch, "morphism component of wrong shape");
    if (first) {
      degree = op->degree();
      first = false;
    } else if (op->degree() != degree) {
      fail(ErrorKind::DegreeMismatch, "morphism components of mixed degree");
    }
  }
  return std::make_shared<MorphLift>(std::move(src), std::move(dst), std::move(comps),
                                     first ? 0 : degree, cap);
}

CoalgPtr homotopy_lift(const GradedMap& h, const GradedMap& ip, int cap) {
  if (h.degree() != 1 || ip.degree() != 0 || h.source() != ip.source())
    fail(ErrorKind::SpaceMismatch, "homotopy lift expects (h: +1, ip: 0) on one space");
  return std::make_shared<HomotopyLift>(h, ip, cap);
}

namespace {

class ComponentOp final : public TensorOp {
public:
  ComponentOp(CoalgPtr op, int in_weight)
      : TensorOp(op->source_base(), op->target_base(), in_weight, 1, op->degree()),
        op_(std::move(op)) {}

protected:
  TensorLin compute(const TensorIndex& x) const override {
    CoalgElem e = op_->eval(x);
    TensorLin out;
    for (const auto& [w, c] : e)
      if (w.size() == 1) out.emplace(w, c);
    return out;
  }

private:
  CoalgPtr op_;
};

}  // namespace

OpPtr coalg_component(CoalgPtr op, int in_weight) {
  return std::make_shared<ComponentOp>(std::move(op), in_weight);
}

PerturbationResult perturb(const CoalgPtr& P, const CoalgPtr& I, const CoalgPtr& H,
                           const CoalgPtr& d_tilde, const CoalgPtr& t, int cap) {
  if (t->weight_drop() < 1)
    fail(ErrorKind::NotWeightDecreasing, "perturbation must strictly decrease weight");

  // H_t = sum_k (-1)^k (Ht)^k H; the series stops at the cap because every t
  // application loses at least one weight.
  std::vector<std::pair<int, CoalgPtr>> ht_terms;
  CoalgPtr s = H;
  for (int k = 0; k <= cap; ++k) {
    ht_terms.push_back({(k % 2 == 0) ? 1 : -1, s});
    if (k < cap) s = coalg_compose(H, coalg_compose(t, s));
  }
  CoalgPtr H_t = coalg_sum(std::move(ht_terms));

  CoalgPtr D = coalg_sum({{1, d_tilde}, {1, t}});
  CoalgPtr I_t = coalg_sum({{1, I}, {-1, coalg_compose(H_t, coalg_compose(D, I))}});
  CoalgPtr P_t = coalg_sum({{1, P}, {-1, coalg_compose(P, coalg_compose(D, H_t))}});

  // d_inf = sum_k (-1)^k P (tH)^k t I.
  std::vector<std::pair<int, CoalgPtr>> dterms;
  CoalgPtr w = coalg_compose(t, I);
  for (int k = 0; k <= cap; ++k) {
    dterms.push_back({(k % 2 == 0) ? 1 : -1, coalg_compose(P, w)});
    if (k < cap) w = coalg_compose(t, coalg_compose(H, w));
  }
  CoalgPtr d_inf = coalg_sum(std::move(dterms));
  return {H_t, I_t, P_t, d_inf};
}

TransferResult oracle_transfer(const AInftyAlgebra& alg,
                               const DeformationRetract& retract, int cap) {
  retract.verify();
  const SpacePtr& A = alg.space;
  const SpacePtr& H = retract.small;
  SpacePtr sA = suspend(A);
  SpacePtr sH = suspend(H);
  GradedMap sa = suspension_map(A, sA), sa_inv = suspension_inverse(A, sA);
  GradedMap sh = suspension_map(H, sH), sh_inv = suspension_inverse(H, sH);

  // b_n = s m_n (s^{-1})^{x n}.
  auto suspend_component = [&](const MultilinearOp& mn) {
    std::vector<OpPtr> blocks(mn.arity(), op_linear(sa_inv));
    return op_compose(op_linear(sa),
                      op_compose(mn.as_op(), op_tensor(std::move(blocks))));
  };
  std::map<int, OpPtr> b1, bhi;
  if (!alg.op(1).is_zero()) b1.emplace(1, suspend_component(alg.op(1)));
  for (int n = 2; n <= cap; ++n)
    if (!alg.op(n).is_zero()) bhi.emplace(n, suspend_component(alg.op(n)));

  CoalgPtr d_tilde = lift_to_coderivation(sA, b1, cap);
  CoalgPtr t = lift_to_coderivation(sA, bhi, cap);

  GradedMap i_s = sa.compose_after(retract.i).compose_after(sh_inv);   // sH -> sA
  GradedMap p_s = sh.compose_after(retract.p).compose_after(sa_inv);   // sA -> sH
  GradedMap h_s = sa.compose_after(retract.h).compose_after(sa_inv);   // sA -> sA
  GradedMap ip_s = i_s.compose_after(p_s);

  CoalgPtr I = lift_to_morphism(sH, sA, {{1, op_linear(i_s)}}, cap);
  CoalgPtr P = lift_to_morphism(sA, sH, {{1, op_linear(p_s)}}, cap);
  CoalgPtr Hlift = homotopy_lift(h_s, ip_s, cap);

  PerturbationResult pr = perturb(P, I, Hlift, d_tilde, t, cap);

  // Unsuspension bridge: f_n = alpha_n s^{-1} F_n s^{x n}.
  auto unsuspend_component = [&](const CoalgPtr& op, int n, const GradedMap& s_in,
                                 const GradedMap& s_out_inv) {
    std::vector<OpPtr> blocks(n, op_linear(s_in));
    OpPtr chain = op_compose(op_linear(s_out_inv),
                             op_compose(coalg_component(op, n), op_tensor(std::move(blocks))));
    return materialize(op_scale(alpha_sign(n), chain));
  };

  TransferResult out;
  out.ambient = alg;
  out.minimal = AInftyAlgebra::empty(H, cap);
  for (int n = 1; n <= cap; ++n)
    out.minimal.op(n) = unsuspend_component(pr.d_inf, n, sh, sh_inv);

  out.inclusion = AInftyMorphism::empty(out.minimal, alg);
  for (int n = 1; n <= cap; ++n)
    out.inclusion.comp(n) = unsuspend_component(pr.I_t, n, sh, sa_inv);

  out.projection = AInftyMorphism::empty(alg, out.minimal);
  for (int n = 1; n <= cap; ++n)
    out.projection.comp(n) = unsuspend_component(pr.P_t, n, sa, sh_inv);
  return out;
}

}  // namespace ainfty
