#include "ainfty/tensor_op.hpp"

namespace ainfty {

TensorLin TensorOp::eval(const TensorIndex& x) const {
  if (static_cast<int>(x.size()) != arity_in_)
    fail(ErrorKind::ArityMismatch, "operator expects arity " + std::to_string(arity_in_) +
                                       ", got tuple of length " + std::to_string(x.size()));
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(x);
    if (it != memo_.end()) return it->second;
  }
  TensorLin result = compute(x);
  std::lock_guard<std::mutex> lock(mu_);
  return memo_.emplace(x, std::move(result)).first->second;
}

namespace {

class TableOp final : public TensorOp {
public:
  TableOp(SpacePtr src, SpacePtr dst, int ain, int aout, int degree,
          std::map<TensorIndex, TensorLin> table)
      : TensorOp(std::move(src), std::move(dst), ain, aout, degree),
        table_(std::move(table)) {}

protected:
  TensorLin compute(const TensorIndex& x) const override {
    auto it = table_.find(x);
    return it == table_.end() ? TensorLin{} : it->second;
  }

private:
  std::map<TensorIndex, TensorLin> table_;
};

class IdentityOp final : public TensorOp {
public:
  IdentityOp(SpacePtr space, int k) : TensorOp(space, space, k, k, 0) {}

protected:
  TensorLin compute(const TensorIndex& x) const override {
    TensorLin out;
    out.emplace(x, Scalar::one(src_->field()));
    return out;
  }
};

class TensorProdOp final : public TensorOp {
public:
  explicit TensorProdOp(std::vector<OpPtr> blocks, SpacePtr src, SpacePtr dst,
                        int ain, int aout, int degree)
      : TensorOp(std::move(src), std::move(dst), ain, aout, degree),
        blocks_(std::move(blocks)) {}

protected:
  TensorLin compute(const TensorIndex& x) const override {
    Field field = src_->field();
    TensorLin acc;
    acc.emplace(TensorIndex{}, Scalar::one(field));
    int offset = 0;
    int degree_before = 0;  // total degree of inputs consumed so far
    for (const auto& block : blocks_) {
      TensorIndex slice(x.begin() + offset, x.begin() + offset + block->arity_in());
      int sign_exp = block->degree() * degree_before;
      Scalar sign = Scalar::from_int(field, (sign_exp % 2 == 0) ? 1 : -1);
      TensorLin image = block->eval(slice);
      TensorLin next;
      for (const auto& [prefix, c] : acc) {
        for (const auto& [t, a] : image) {
          TensorIndex joined = prefix;
          joined.insert(joined.end(), t.begin(), t.end());
          tensor_add(next, joined, c * a * sign);
        }
      }
      acc = std::move(next);
      degree_before += tensor_degree(*src_, slice);
      offset += block->arity_in();
    }
    return acc;
  }

private:
  std::vector<OpPtr> blocks_;
};

class ComposeOp final : public TensorOp {
public:
  ComposeOp(OpPtr outer, OpPtr inner)
      : TensorOp(inner->source(), outer->target(), inner->arity_in(),
                 outer->arity_out(), inner->degree() + outer->degree()),
        outer_(std::move(outer)), inner_(std::move(inner)) {}

protected:
  TensorLin compute(const TensorIndex& x) const override {
    TensorLin mid = inner_->eval(x);
    TensorLin out;
    for (const auto& [t, c] : mid) tensor_add_scaled(out, outer_->eval(t), c);
    return out;
  }

private:
  OpPtr outer_, inner_;
};

class SumOp final : public TensorOp {
public:
  SumOp(std::vector<std::pair<int, OpPtr>> terms, SpacePtr src, SpacePtr dst,
        int ain, int aout, int degree)
      : TensorOp(std::move(src), std::move(dst), ain, aout, degree),
        terms_(std::move(terms)) {}

protected:
  TensorLin compute(const TensorIndex& x) const override {
    TensorLin out;
    for (const auto& [coeff, op] : terms_)
      tensor_add_scaled(out, op->eval(x), Scalar::from_int(src_->field(), coeff));
    return out;
  }

private:
  std::vector<std::pair<int, OpPtr>> terms_;
};

class ZeroOp final : public TensorOp {
public:
  ZeroOp(SpacePtr src, SpacePtr dst, int ain, int aout, int degree)
      : TensorOp(std::move(src), std::move(dst), ain, aout, degree) {}

protected:
  TensorLin compute(const TensorIndex&) const override { return {}; }
};

}  // namespace

OpPtr op_table(SpacePtr src, SpacePtr dst, int arity_in, int arity_out,
               int degree, std::map<TensorIndex, TensorLin> table) {
  for (const auto& [in, out] : table) {
    if (static_cast<int>(in.size()) != arity_in)
      fail(ErrorKind::ArityMismatch, "table key of wrong length");
    int din = tensor_degree(*src, in);
    for (const auto& [t, c] : out) {
      if (static_cast<int>(t.size()) != arity_out)
        fail(ErrorKind::ArityMismatch, "table value of wrong length");
      if (!c.is_zero() && tensor_degree(*dst, t) != din + degree)
        fail(ErrorKind::DegreeMismatch, "table entry violates operator degree");
    }
  }
  return std::make_shared<TableOp>(std::move(src), std::move(dst), arity_in,
                                   arity_out, degree, std::move(table));
}

OpPtr op_linear(const GradedMap& f) {
  std::map<TensorIndex, TensorLin> table;
  for (int i = 0; i < f.source()->dim(); ++i) {
    const LinComb& col = f.apply_basis(i);
    if (col.empty()) continue;
    TensorLin out;
    for (const auto& [j, c] : col) out.emplace(TensorIndex{j}, c);
    table.emplace(TensorIndex{i}, std::move(out));
  }
  return op_table(f.source(), f.target(), 1, 1, f.degree(), std::move(table));
}

OpPtr op_identity(SpacePtr space, int k) {
  return std::make_shared<IdentityOp>(std::move(space), k);
}

OpPtr op_zero(SpacePtr src, SpacePtr dst, int arity_in, int arity_out, int degree) {
  return std::make_shared<ZeroOp>(std::move(src), std::move(dst), arity_in,
                                  arity_out, degree);
}

OpPtr op_tensor(std::vector<OpPtr> blocks) {
  if (blocks.empty()) fail(ErrorKind::ArityMismatch, "empty tensor product");
  if (blocks.size() == 1) return blocks[0];
  SpacePtr src = blocks[0]->source(), dst = blocks[0]->target();
  int ain = 0, aout = 0, degree = 0;
  for (const auto& b : blocks) {
    if (b->source() != src || b->target() != dst)
      fail(ErrorKind::SpaceMismatch, "tensor blocks over different spaces");
    ain += b->arity_in();
    aout += b->arity_out();
    degree += b->degree();
  }
  return std::make_shared<TensorProdOp>(std::move(blocks), std::move(src),
                                        std::move(dst), ain, aout, degree);
}

OpPtr op_compose(OpPtr outer, OpPtr inner) {
  if (inner->target() != outer->source() || inner->arity_out() != outer->arity_in())
    fail(ErrorKind::SpaceMismatch, "operator composition shape mismatch");
  return std::make_shared<ComposeOp>(std::move(outer), std::move(inner));
}

OpPtr op_sum(std::vector<std::pair<int, OpPtr>> terms) {
  if (terms.empty()) fail(ErrorKind::ArityMismatch, "empty operator sum");
  const OpPtr& first = terms[0].second;
  for (const auto& [c, op] : terms) {
    (void)c;
    if (op->source() != first->source() || op->target() != first->target() ||
        op->arity_in() != first->arity_in() || op->arity_out() != first->arity_out() ||
        op->degree() != first->degree())
      fail(ErrorKind::SpaceMismatch, "summed operators of different shapes");
  }
  SpacePtr src = first->source(), dst = first->target();
  int ain = first->arity_in(), aout = first->arity_out(), degree = first->degree();
  return std::make_shared<SumOp>(std::move(terms), std::move(src), std::move(dst),
                                 ain, aout, degree);
}

OpPtr op_scale(int c, OpPtr op) { return op_sum({{c, std::move(op)}}); }

}  // namespace ainfty
