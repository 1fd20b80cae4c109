#include "ainfty/retract.hpp"

#include <cassert>
#include <functional>

namespace ainfty {

namespace {

void require(bool ok, ErrorKind kind, const char* msg) {
  if (!ok) fail(kind, msg);
}

void check_differential(const SpacePtr& A, const GradedMap& d) {
  require(d.degree() == -1, ErrorKind::NotADifferential, "differential must have degree -1");
  require(d.source() == A && d.target() == A, ErrorKind::NotADifferential,
          "differential must be an endomorphism of A");
  require(d.compose_after(d).is_zero(), ErrorKind::NotADifferential, "d^2 != 0");
}

// Per-degree data of the three-way splitting.
struct DegreeSplit {
  std::vector<int> pos;                // A-indices of this degree, processing order
  std::vector<SparseVec> boundaries;   // B_n, local coords
  std::vector<SparseVec> reps;         // C_n (echelonized, reduced against B_n)
  std::vector<SparseVec> preimages;    // in degree n+1 local coords: d(u_j) = b_j
};

SparseVec to_local(const LinComb& global, const std::map<int, int>& local_of) {
  SparseVec out;
  for (const auto& [i, c] : global) {
    auto it = local_of.find(i);
    if (it == local_of.end()) fail(ErrorKind::DegreeMismatch, "vector leaves its degree");
    out[it->second] = c;
  }
  return out;
}

// Reduces v against echelonized columns (each with a unit pivot entry).
void reduce_against(SparseVec& v, const std::vector<SparseVec>& echelon,
                    const std::vector<int>& pivot_rows, Field field) {
  for (size_t j = 0; j < echelon.size(); ++j) {
    auto it = v.find(pivot_rows[j]);
    if (it == v.end()) continue;
    Scalar c = it->second;
    vec_add_scaled(v, echelon[j], Scalar::zero(field) - c);
  }
}

}  // namespace

void DeformationRetract::verify() const {
  GradedMap idA = GradedMap::identity(big);
  GradedMap idH = GradedMap::identity(small);
  require(p.compose_after(i) == idH, ErrorKind::NotARetract, "pi != id");
  GradedMap lhs = idA - i.compose_after(p);
  GradedMap rhs = d.compose_after(h) + h.compose_after(d);
  require(lhs == rhs, ErrorKind::NotARetract, "id - ip != dh + hd");
  require(h.compose_after(h).is_zero(), ErrorKind::NotARetract, "h^2 != 0");
  require(p.compose_after(h).is_zero(), ErrorKind::NotARetract, "ph != 0");
  require(h.compose_after(i).is_zero(), ErrorKind::NotARetract, "hi != 0");
  require(d.compose_after(i).is_zero(), ErrorKind::NotARetract, "di != 0");
  require(p.compose_after(d).is_zero(), ErrorKind::NotARetract, "pd != 0");
}

HomologyResult homology(const SpacePtr& A, const GradedMap& d) {
  DeformationRetract r = build_retract(A, d);
  HomologyResult out;
  out.space = r.small;
  out.reps.reserve(r.small->dim());
  for (int j = 0; j < r.small->dim(); ++j) out.reps.push_back(r.i.apply_basis(j));
  return out;
}

DeformationRetract build_retract(const SpacePtr& A, const GradedMap& d) {
  std::vector<int> order(A->dim());
  for (int i = 0; i < A->dim(); ++i) order[i] = i;
  return build_retract_permuted(A, d, order);
}

DeformationRetract build_retract_permuted(const SpacePtr& A, const GradedMap& d,
                                          const std::vector<int>& order) {
  check_differential(A, d);
  require(static_cast<int>(order.size()) == A->dim(), ErrorKind::SemanticError,
          "order must be a permutation of the basis");
  const Field field = A->field();

  std::map<int, DegreeSplit> split;
  for (int idx : order) split[A->degree(idx)].pos.push_back(idx);

  // Local differential matrices D_n : A_n -> A_{n-1}.
  std::map<int, SparseMatrix> D;
  std::map<int, std::map<int, int>> local_of;  // degree -> global idx -> local
  for (auto& [n, s] : split) {
    auto& m = local_of[n];
    for (size_t k = 0; k < s.pos.size(); ++k) m[s.pos[k]] = static_cast<int>(k);
  }
  for (auto& [n, s] : split) {
    auto below = split.find(n - 1);
    int rows = below == split.end() ? 0 : static_cast<int>(below->second.pos.size());
    SparseMatrix Dn(rows, static_cast<int>(s.pos.size()), field);
    for (size_t k = 0; k < s.pos.size(); ++k) {
      const LinComb& col = d.apply_basis(s.pos[k]);
      if (col.empty()) continue;
      Dn.set_column(static_cast<int>(k), to_local(col, local_of[n - 1]));
    }
    D.emplace(n, std::move(Dn));
  }

  for (auto& [n, s] : split) {
    const SparseMatrix& Dn = D.at(n);
    std::vector<SparseVec> cycles = kernel_basis(Dn);

    // Boundaries B_n = image of D_{n+1}, echelonized.
    auto above = D.find(n + 1);
    std::vector<SparseVec> bnd;
    if (above != D.end()) bnd = image_basis(above->second);
    int nb = static_cast<int>(bnd.size());
    std::vector<SparseVec> bnd_echelon;
    std::vector<int> bnd_pivots;
    {
      // Echelonize the boundary set as a row space to get canonical pivots.
      SparseMatrix rowspace(nb, static_cast<int>(s.pos.size()), field);
      for (int j = 0; j < nb; ++j)
        for (const auto& [r, c] : bnd[j]) rowspace.set(j, r, c);
      RrefResult re = rref(rowspace);
      for (int rr = 0; rr < re.rank; ++rr) {
        SparseVec v = re.reduced.row(rr);
        bnd_echelon.push_back(v);
        bnd_pivots.push_back(re.pivot_cols[rr]);
      }
    }
    s.boundaries = bnd_echelon;

    // Homology representatives: cycles independent modulo boundaries.
    SparseMatrix combined(static_cast<int>(s.pos.size()),
                          nb + static_cast<int>(cycles.size()), field);
    for (int j = 0; j < nb; ++j) combined.set_column(j, bnd[j]);
    for (size_t j = 0; j < cycles.size(); ++j)
      combined.set_column(nb + static_cast<int>(j), cycles[j]);
    RrefResult comb = rref(combined);
    std::vector<SparseVec> reps;
    for (int pc : comb.pivot_cols) {
      if (pc < nb) continue;
      SparseVec v = cycles[pc - nb];
      reduce_against(v, bnd_echelon, bnd_pivots, field);
      reps.push_back(std::move(v));
    }
    // Echelonize the representatives for canonical leading terms.
    if (!reps.empty()) {
      SparseMatrix rep_rows(static_cast<int>(reps.size()),
                            static_cast<int>(s.pos.size()), field);
      for (size_t j = 0; j < reps.size(); ++j)
        for (const auto& [r, c] : reps[j]) rep_rows.set(static_cast<int>(j), r, c);
      RrefResult re = rref(rep_rows);
      reps.clear();
      for (int rr = 0; rr < re.rank; ++rr) reps.push_back(re.reduced.row(rr));
    }
    s.reps = std::move(reps);
  }

  // Preimages: for B_{n-1} echelon vectors b_j, solve D_n u = b_j. Store with
  // degree n (they live in A_n).
  for (auto& [n, s] : split) {
    auto below = split.find(n - 1);
    if (below == split.end()) continue;
    const SparseMatrix& Dn = D.at(n);
    for (const SparseVec& b : below->second.boundaries) {
      auto u = solve(Dn, b);
      require(u.has_value(), ErrorKind::SemanticError, "boundary without preimage");
      s.preimages.push_back(*u);
    }
  }

  // Assemble H.
  std::vector<BasisElement> hbasis;
  std::vector<LinComb> hreps;
  for (auto& [n, s] : split) {
    for (const SparseVec& rep : s.reps) {
      int lead = rep.begin()->first;  // pivot row of the echelonized rep
      hbasis.push_back({"[" + A->name(s.pos[lead]) + "]", n});
      LinComb global;
      for (const auto& [r, c] : rep) global[s.pos[r]] = c;
      hreps.push_back(std::move(global));
    }
  }
  SpacePtr H = make_space(field, hbasis);

  DeformationRetract out{A, d, H,
                         GradedMap(A, H, 0), GradedMap(H, A, 0), GradedMap(A, A, 1)};
  for (size_t j = 0; j < hreps.size(); ++j)
    out.i.set_column(static_cast<int>(j), hreps[j]);

  // p and h need coordinates in the basis [B_n | C_n | U_n] per degree.
  int hoffset = 0;
  std::map<int, int> h_index_base;  // degree -> first H index of that degree
  for (auto& [n, s] : split) {
    h_index_base[n] = hoffset;
    hoffset += static_cast<int>(s.reps.size());
  }
  for (auto& [n, s] : split) {
    const int dim_n = static_cast<int>(s.pos.size());
    const int nb = static_cast<int>(s.boundaries.size());
    const int nc = static_cast<int>(s.reps.size());
    const int nu = static_cast<int>(s.preimages.size());
    require(nb + nc + nu == dim_n, ErrorKind::SemanticError, "splitting dimension mismatch");

    SparseMatrix M(dim_n, dim_n + dim_n, field);
    for (int j = 0; j < nb; ++j) M.set_column(j, s.boundaries[j]);
    for (int j = 0; j < nc; ++j) M.set_column(nb + j, s.reps[j]);
    for (int j = 0; j < nu; ++j) M.set_column(nb + nc + j, s.preimages[j]);
    for (int j = 0; j < dim_n; ++j) M.set(j, dim_n + j, Scalar::one(field));
    RrefResult inv = rref(M);
    require(inv.rank == dim_n, ErrorKind::SemanticError, "splitting basis not invertible");

    // Column k of the inverse = coordinates of local basis vector e_k.
    auto upper = split.find(n + 1);
    for (int k = 0; k < dim_n; ++k) {
      SparseVec coords = inv.reduced.column(dim_n + k);
      LinComb pcol, hcol;
      for (const auto& [row, c] : coords) {
        if (row >= nb && row < nb + nc) {
          pcol[h_index_base[n] + (row - nb)] = c;
        } else if (row < nb && upper != split.end()) {
          // h sends the boundary component to its chosen preimage upstairs.
          const SparseVec& u = upper->second.preimages[row];
          for (const auto& [r, uc] : u) {
            int gi = upper->second.pos[r];
            Scalar add = uc * c;
            auto it = hcol.find(gi);
            if (it == hcol.end())
              hcol[gi] = add;
            else {
              it->second = it->second + add;
              if (it->second.is_zero()) hcol.erase(it);
            }
          }
        }
      }
      out.p.set_column(s.pos[k], pcol);
      out.h.set_column(s.pos[k], hcol);
    }
  }

  out.verify();
  return out;
}

DeformationRetract normalize_side_conditions(const SpacePtr& A, const GradedMap& d,
                                             const SpacePtr& H, const GradedMap& p,
                                             const GradedMap& i, const GradedMap& h) {
  check_differential(A, d);
  GradedMap idA = GradedMap::identity(A);
  GradedMap idH = GradedMap::identity(H);
  require(p.compose_after(i) == idH, ErrorKind::NotARetract, "pi != id");
  require(idA - i.compose_after(p) ==
              d.compose_after(h) + h.compose_after(d),
          ErrorKind::NotARetract, "id - ip != dh + hd");
  require(d.compose_after(i).is_zero(), ErrorKind::NotARetract, "di != 0");
  require(p.compose_after(d).is_zero(), ErrorKind::NotARetract, "pd != 0");

  GradedMap proj = idA - i.compose_after(p);
  GradedMap h1 = proj.compose_after(h).compose_after(proj);
  GradedMap h2 = h1.compose_after(d).compose_after(h1);

  DeformationRetract out{A, d, H, p, i, h2};
  out.verify();
  return out;
}

}  // namespace ainfty
