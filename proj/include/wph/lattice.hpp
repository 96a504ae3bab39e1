#pragma once

// Lattice arithmetic over a Euclidean domain R: bases, intersections, and
// the quotient engine L_Z / L_B that presents every homology group in this
// artifact. Quotient-ring coefficients R/(m) are handled by lifting to full
// preimage lattices in R^c (span plus m times the standard basis), so all
// transforms stay over the domain where they are invertible.

#include <cstddef>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "wph/matrix.hpp"
#include "wph/module.hpp"
#include "wph/ring.hpp"
#include "wph/snf.hpp"

namespace wph {

// Basis of the column lattice of G: the columns d_i * (Uinv e_i), i < rank.
template <class R>
Matrix<R> lattice_basis(const Matrix<R>& G) {
  SNFResult<R> s = smith_normal_form(G);
  Matrix<R> B(G.rows(), s.rank);
  for (std::size_t j = 0; j < s.rank; ++j)
    for (std::size_t i = 0; i < G.rows(); ++i)
      B.at(i, j) = s.Uinv.at(i, j) * s.D.at(j, j);
  return B;
}

// Generators of L_A intersect L_B: for each kernel basis vector (a; b) of
// [A | B], the point A*a lies in both lattices, and these points generate
// the intersection.
template <class R>
Matrix<R> lattice_intersection(const Matrix<R>& A, const Matrix<R>& B) {
  if (A.rows() != B.rows()) throw SemanticError("lattice_intersection: ambient mismatch");
  Matrix<R> K = kernel_basis(hstack(A, B));
  Matrix<R> out(A.rows(), K.cols());
  for (std::size_t j = 0; j < K.cols(); ++j) {
    std::vector<R> a(A.cols());
    for (std::size_t i = 0; i < A.cols(); ++i) a[i] = K.at(i, j);
    out.set_col(j, A.apply(a));
  }
  return out;
}

// Presentation of L_Z / L_B with coordinates, representatives, and class
// vectors. Coordinate order: free coordinates first, then torsion
// coordinates with ascending invariant factors — matching the canonical
// module form and the printed decomposition.
template <class R>
struct QuotientPresentation {
  std::size_t ambient = 0;
  Matrix<R> KZ;                    // ambient x rz basis of L_Z
  SNFResult<R> rel;                // SNF of the relation matrix (rz x #relations)
  std::vector<std::size_t> coord_rows;  // rows of rel.U kept as coordinates
  std::vector<R> orders;                // per coordinate: 0 = free, else invariant factor
  PresentationModule<R> module;

  std::size_t coord_count() const { return coord_rows.size(); }

  // Representative of the i-th coordinate generator, as a vector in R^ambient.
  std::vector<R> generator(std::size_t i) const {
    std::vector<R> e(rel.U.rows(), ring_traits<R>::zero());
    e[coord_rows[i]] = ring_traits<R>::one();
    // KZ * (Uinv e_i)
    return KZ.apply(rel.Uinv.apply(e));
  }

  std::vector<std::vector<R>> generators() const {
    std::vector<std::vector<R>> out;
    for (std::size_t i = 0; i < coord_count(); ++i) out.push_back(generator(i));
    return out;
  }

  // Class vector of v in R^ambient: nullopt when v is not in L_Z; otherwise
  // coordinates aligned with `orders` (torsion entries reduced canonically).
  std::optional<std::vector<R>> class_of(const std::vector<R>& v) const {
    using T = ring_traits<R>;
    if (v.size() != ambient) throw SemanticError("class_of: ambient mismatch");
    std::optional<std::vector<R>> alpha = solver_->solve(v);
    if (!alpha) return std::nullopt;
    std::vector<R> beta = rel.U.apply(*alpha);
    std::vector<R> out(coord_count());
    for (std::size_t i = 0; i < coord_count(); ++i) {
      const R& o = orders[i];
      out[i] = T::is_zero(o) ? beta[coord_rows[i]] : T::mod_canonical(beta[coord_rows[i]], o);
    }
    return out;
  }

  bool class_is_zero(const std::vector<R>& v) const {
    auto c = class_of(v);
    if (!c) throw SemanticError("class_is_zero: vector not in the cycle lattice");
    return vec_is_zero(*c);
  }

  // Shared-pointer solver keeps the type copyable (stored inside homology
  // results that get copied around freely).
  std::shared_ptr<HermiteSolver<R>> solver_;
};

// Quotient L_Z / L_B of column lattices in R^ambient. When intersect_first
// is set, L_B is replaced by L_B intersect L_Z (persistence); otherwise the
// generators of L_B must already lie in L_Z (a violated assumption throws).
template <class R>
QuotientPresentation<R> lattice_quotient(std::size_t ambient, const Matrix<R>& Zgens,
                                         const Matrix<R>& Bgens, bool intersect_first = false) {
  using T = ring_traits<R>;
  if (Zgens.rows() != ambient || Bgens.rows() != ambient)
    throw SemanticError("lattice_quotient: ambient mismatch");

  QuotientPresentation<R> qp;
  qp.ambient = ambient;
  qp.KZ = lattice_basis(Zgens);
  const std::size_t rz = qp.KZ.cols();
  qp.solver_ = std::make_shared<HermiteSolver<R>>(qp.KZ);

  Matrix<R> B = intersect_first ? lattice_intersection(Bgens, Zgens) : Bgens;

  // Relation matrix: each generator of L_B expressed in the L_Z basis.
  Matrix<R> Arel(rz, B.cols());
  for (std::size_t j = 0; j < B.cols(); ++j) {
    std::optional<std::vector<R>> alpha = qp.solver_->solve(B.col(j));
    if (!alpha)
      throw SemanticError("lattice_quotient: boundary generator outside the cycle lattice");
    Arel.set_col(j, *alpha);
  }

  qp.rel = smith_normal_form(Arel);
  // Free coordinates first (rows past the relation rank), then torsion rows
  // with non-unit invariant factors, ascending along the divisibility chain.
  for (std::size_t i = qp.rel.rank; i < rz; ++i) {
    qp.coord_rows.push_back(i);
    qp.orders.push_back(T::zero());
  }
  qp.module.free_rank = rz - qp.rel.rank;
  for (std::size_t i = 0; i < qp.rel.rank; ++i) {
    const R& d = qp.rel.D.at(i, i);
    if (!T::is_unit(d)) {
      qp.coord_rows.push_back(i);
      qp.orders.push_back(d);
      qp.module.invariant_factors.push_back(d);
    }
  }
  return qp;
}

template <class R>
PresentationModule<R> module_from_cyclic_orders(const std::vector<R>& orders,
                                                std::size_t extra_free) {
  Matrix<R> D(orders.size(), orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) D.at(i, i) = orders[i];
  PresentationModule<R> m = cokernel(D, orders.size());
  m.free_rank += extra_free;
  return m;
}

}  // namespace wph
