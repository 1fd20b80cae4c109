#include "ainfty/graded.hpp"

#include <algorithm>
#include <sstream>

namespace ainfty {

GradedVectorSpace::GradedVectorSpace(Field field, std::vector<BasisElement> basis)
    : field_(field), basis_(std::move(basis)) {
  for (int i = 0; i < static_cast<int>(basis_.size()); ++i) {
    auto [it, inserted] = index_.emplace(basis_[i].name, i);
    if (!inserted) fail(ErrorKind::SemanticError, "duplicate basis name " + basis_[i].name);
    if (i == 0) {
      min_degree_ = max_degree_ = basis_[i].degree;
    } else {
      min_degree_ = std::min(min_degree_, basis_[i].degree);
      max_degree_ = std::max(max_degree_, basis_[i].degree);
    }
  }
}

int GradedVectorSpace::index_of(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

bool GradedVectorSpace::has_degree(int d) const {
  for (const auto& b : basis_)
    if (b.degree == d) return true;
  return false;
}

std::vector<int> GradedVectorSpace::indices_of_degree(int d) const {
  std::vector<int> out;
  for (int i = 0; i < dim(); ++i)
    if (basis_[i].degree == d) out.push_back(i);
  return out;
}

SpacePtr make_space(Field field, std::vector<BasisElement> basis) {
  return std::make_shared<const GradedVectorSpace>(field, std::move(basis));
}

int lincomb_degree(const GradedVectorSpace& space, const LinComb& v) {
  bool seen = false;
  int deg = 0;
  for (const auto& [i, c] : v) {
    if (c.is_zero()) continue;
    if (!seen) {
      deg = space.degree(i);
      seen = true;
    } else if (space.degree(i) != deg) {
      fail(ErrorKind::DegreeMismatch, "inhomogeneous linear combination");
    }
  }
  return deg;
}

std::string lincomb_to_string(const GradedVectorSpace& space, const LinComb& v) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, c] : v) {
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    os << c.to_string() << "*" << space.name(i);
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

GradedMap::GradedMap(SpacePtr src, SpacePtr dst, int degree)
    : src_(std::move(src)), dst_(std::move(dst)), degree_(degree),
      columns_(src_->dim()) {
  if (!(src_->field() == dst_->field()))
    fail(ErrorKind::FieldMismatch, "graded map between different fields");
}

GradedMap GradedMap::identity(SpacePtr space) {
  GradedMap f(space, space, 0);
  for (int i = 0; i < space->dim(); ++i)
    f.set_entry(i, i, Scalar::one(space->field()));
  return f;
}

GradedMap GradedMap::zero(SpacePtr src, SpacePtr dst, int degree) {
  return GradedMap(std::move(src), std::move(dst), degree);
}

void GradedMap::set_entry(int src_index, int dst_index, const Scalar& c) {
  if (src_index < 0 || src_index >= src_->dim() || dst_index < 0 || dst_index >= dst_->dim())
    fail(ErrorKind::SemanticError, "basis index out of range");
  if (!c.is_zero() && dst_->degree(dst_index) != src_->degree(src_index) + degree_)
    fail(ErrorKind::DegreeMismatch,
         "entry " + src_->name(src_index) + " -> " + dst_->name(dst_index) +
             " violates degree " + std::to_string(degree_));
  if (c.is_zero())
    columns_[src_index].erase(dst_index);
  else
    columns_[src_index][dst_index] = c;
}

void GradedMap::set_column(int src_index, const LinComb& v) {
  columns_[src_index].clear();
  for (const auto& [j, c] : v) set_entry(src_index, j, c);
}

LinComb GradedMap::apply(const LinComb& v) const {
  LinComb out;
  for (const auto& [i, c] : v) {
    if (i < 0 || i >= src_->dim())
      fail(ErrorKind::SemanticError, "vector index out of range");
    vec_add_scaled(out, columns_[i], c);
  }
  return out;
}

bool GradedMap::is_zero() const {
  for (const auto& col : columns_)
    for (const auto& [j, c] : col)
      if (!c.is_zero()) return false;
  return true;
}

bool GradedMap::operator==(const GradedMap& o) const {
  if (src_ != o.src_ && !(src_->dim() == o.src_->dim())) return false;
  if (degree_ != o.degree_) return false;
  return (*this - o).is_zero();
}

GradedMap GradedMap::operator+(const GradedMap& o) const {
  if (src_->dim() != o.src_->dim() || dst_->dim() != o.dst_->dim() || degree_ != o.degree_)
    fail(ErrorKind::SpaceMismatch, "sum of incompatible graded maps");
  GradedMap out(src_, dst_, degree_);
  for (int i = 0; i < src_->dim(); ++i) {
    LinComb col = columns_[i];
    vec_add_scaled(col, o.columns_[i], Scalar::one(src_->field()));
    out.set_column(i, col);
  }
  return out;
}

GradedMap GradedMap::operator-(const GradedMap& o) const {
  return *this + o.scaled(-1);
}

GradedMap GradedMap::scaled(const Scalar& c) const {
  GradedMap out(src_, dst_, degree_);
  for (int i = 0; i < src_->dim(); ++i) {
    LinComb col;
    vec_add_scaled(col, columns_[i], c);
    out.set_column(i, col);
  }
  return out;
}

GradedMap GradedMap::scaled(int c) const {
  return scaled(Scalar::from_int(src_->field(), c));
}

SparseMatrix GradedMap::matrix() const {
  SparseMatrix m(dst_->dim(), src_->dim(), src_->field());
  for (int i = 0; i < src_->dim(); ++i) m.set_column(i, columns_[i]);
  return m;
}

GradedMap GradedMap::compose_after(const GradedMap& o) const {
  if (o.dst_->dim() != src_->dim())
    fail(ErrorKind::SpaceMismatch, "composition of incompatible graded maps");
  GradedMap out(o.src_, dst_, degree_ + o.degree_);
  for (int i = 0; i < o.src_->dim(); ++i) out.set_column(i, apply(o.columns_[i]));
  return out;
}

GradedMap GradedMap::inverse() const {
  if (degree_ != 0 || src_->dim() != dst_->dim())
    fail(ErrorKind::NotInvertible, "only square degree-0 maps can be inverted");
  SparseMatrix m = matrix();
  SparseMatrix aug(src_->dim(), 2 * src_->dim(), src_->field());
  for (int i = 0; i < src_->dim(); ++i) {
    aug.set_column(i, m.column(i));
    aug.set(i, src_->dim() + i, Scalar::one(src_->field()));
  }
  RrefResult r = rref(aug);
  int left_rank = 0;
  for (int c : r.pivot_cols)
    if (c < src_->dim()) ++left_rank;
  if (left_rank < src_->dim()) fail(ErrorKind::NotInvertible, "singular graded map");
  GradedMap out(dst_, src_, 0);
  for (int i = 0; i < src_->dim(); ++i)
    out.set_column(i, r.reduced.column(src_->dim() + i));
  return out;
}

int tensor_degree(const GradedVectorSpace& space, const TensorIndex& t) {
  int d = 0;
  for (int i : t) d += space.degree(i);
  return d;
}

void tensor_add(TensorLin& dst, const TensorIndex& t, const Scalar& c) {
  auto it = dst.find(t);
  if (it == dst.end()) {
    if (!c.is_zero()) dst.emplace(t, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) dst.erase(it);
}

void tensor_add_scaled(TensorLin& dst, const TensorLin& src, const Scalar& c) {
  if (c.is_zero()) return;
  for (const auto& [t, a] : src) tensor_add(dst, t, a * c);
}

std::string tensor_to_string(const GradedVectorSpace& space, const TensorIndex& t) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) os << ",";
    os << space.name(t[i]);
  }
  os << ")";
  return os.str();
}

TensorLin koszul_tensor_apply(const std::vector<GradedMap>& maps,
                              const TensorIndex& element) {
  if (maps.size() != element.size())
    fail(ErrorKind::ArityMismatch, "tensor map arity vs element length");
  const int k = static_cast<int>(maps.size());
  if (k == 0) fail(ErrorKind::ArityMismatch, "empty tensor product of maps");
  Field field = maps[0].source()->field();

  // Running accumulation: partial tensors over the first j factors.
  TensorLin acc;
  acc.emplace(TensorIndex{}, Scalar::one(field));
  for (int j = 0; j < k; ++j) {
    const GradedMap& f = maps[j];
    if (element[j] < 0 || element[j] >= f.source()->dim())
      fail(ErrorKind::SpaceMismatch, "element index outside map source");
    // Sign: f_j (degree |f_j|) moves past x_0..x_{j-1}.
    int crossed = 0;
    for (int i = 0; i < j; ++i) crossed += maps[i].source()->degree(element[i]);
    int sign_exp = crossed * f.degree();
    Scalar sign = Scalar::from_int(field, (sign_exp % 2 == 0) ? 1 : -1);
    const LinComb& image = f.apply_basis(element[j]);
    TensorLin next;
    for (const auto& [prefix, c] : acc) {
      for (const auto& [b, a] : image) {
        TensorIndex t = prefix;
        t.push_back(b);
        tensor_add(next, t, c * a * sign);
      }
    }
    acc = std::move(next);
  }
  return acc;
}

std::pair<int, std::vector<GradedMap>> koszul_compose_tensors(
    const std::vector<GradedMap>& first, const std::vector<GradedMap>& second) {
  if (first.size() != second.size())
    fail(ErrorKind::ArityMismatch, "tensor composition arity mismatch");
  int exp = 0;
  const int k = static_cast<int>(first.size());
  // (f_1 x..x f_k)(g_1 x..x g_k): f_b crosses g_a for a < b.
  for (int b = 0; b < k; ++b)
    for (int a = 0; a < b; ++a) exp += first[b].degree() * second[a].degree();
  std::vector<GradedMap> comps;
  comps.reserve(k);
  for (int j = 0; j < k; ++j) comps.push_back(first[j].compose_after(second[j]));
  return {(exp % 2 == 0) ? 1 : -1, std::move(comps)};
}

int alpha_sign(int n) {
  return ((n * (n - 1) / 2) % 2 == 0) ? 1 : -1;
}

SpacePtr suspend(const SpacePtr& space) {
  std::vector<BasisElement> basis;
  basis.reserve(space->dim());
  for (int i = 0; i < space->dim(); ++i)
    basis.push_back({space->name(i), space->degree(i) + 1});
  return make_space(space->field(), std::move(basis));
}

GradedMap suspension_map(const SpacePtr& space, const SpacePtr& suspended) {
  GradedMap s(space, suspended, 1);
  for (int i = 0; i < space->dim(); ++i)
    s.set_entry(i, i, Scalar::one(space->field()));
  return s;
}

GradedMap suspension_inverse(const SpacePtr& space, const SpacePtr& suspended) {
  GradedMap s(suspended, space, -1);
  for (int i = 0; i < space->dim(); ++i)
    s.set_entry(i, i, Scalar::one(space->field()));
  return s;
}

}  // namespace ainfty
