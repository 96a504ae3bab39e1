#pragma once

// Mayer-Vietoris: the long exact sequence of a two-piece cover K = K0 u K1
// of a weighted complex, with A = K0 n K1. Homology is computed for all four
// complexes in every degree; the three maps are stored as matrices in the
// computed generators, and exactness is verified afterwards from the stored
// data alone — over a field by rank counting, over the ring or a quotient of
// it by a two-sided lattice membership test. The chain-level inclusions are
// exposed separately so the short exact sequence of chain complexes can be
// checked as well.

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wph/boundary.hpp"
#include "wph/complex.hpp"
#include "wph/homology.hpp"
#include "wph/lattice.hpp"
#include "wph/matrix.hpp"
#include "wph/module.hpp"
#include "wph/ring.hpp"
#include "wph/snf.hpp"

namespace wph {

// The subcomplex of K spanned by the listed simplices, weights inherited.
// The list must be closed under faces.
template <class W>
WeightedComplex<W> cover_piece(const WeightedComplex<W>& K,
                               const std::vector<VertexList>& simplices) {
  WeightedComplex<W> piece;
  piece.vertex_labels = K.vertex_labels;
  piece.variables = K.variables;
  for (const VertexList& raw : simplices) {
    VertexList s = sorted_simplex(raw);
    if (!K.contains(s))
      throw SemanticError("cover piece lists a simplex outside the complex: " +
                          simplex_to_string(s, K.vertex_labels));
    piece.simplices[s] = K.weight(s);
  }
  ValidationReport rep = validate(piece);
  if (!rep.face_violations.empty())
    throw SemanticError("cover piece is not closed under faces: " + rep.face_violations.front());
  return piece;
}

// Intersection of two subcomplexes of a common complex (weights must agree).
template <class W>
WeightedComplex<W> complex_intersection(const WeightedComplex<W>& a,
                                        const WeightedComplex<W>& b) {
  WeightedComplex<W> out;
  out.vertex_labels = a.vertex_labels;
  out.variables = a.variables;
  for (const auto& [s, w] : a.simplices) {
    if (!b.contains(s)) continue;
    if (!(b.weight(s) == w))
      throw SemanticError("cover pieces disagree on the weight of " +
                          simplex_to_string(s, a.vertex_labels));
    out.simplices[s] = w;
  }
  return out;
}

// K0 and K1 (already verified subcomplexes) must exhaust K.
template <class W>
void require_cover(const WeightedComplex<W>& K, const WeightedComplex<W>& K0,
                   const WeightedComplex<W>& K1) {
  for (const auto& [s, w] : K.simplices) {
    (void)w;
    if (!K0.contains(s) && !K1.contains(s))
      throw SemanticError("cover misses the simplex " + simplex_to_string(s, K.vertex_labels));
  }
}

// One long exact sequence, all degrees at once. Degree p occupies slots
//   H_{p+1}(K) --del[p+1]--> H_p(A) --phi[p]--> H_p(K0) + H_p(K1)
//              --psi[p]--> H_p(K) --del[p]--> H_{p-1}(A)
// with phi = (restriction, -restriction), psi = sum of inclusions. The
// middle group's coordinates are those of H_p(K0) followed by H_p(K1).
// del[0] is the empty map (H_{-1} = 0).
template <class R>
struct MVSequence {
  Coeff<R> coeff;
  int top_degree = -1;  // dim K; -1 for the empty complex
  std::vector<HomologyGroup<R>> HA, H0, H1, HK;  // index = degree, 0..top_degree
  std::vector<Matrix<R>> phi, psi, del;          // del[p] maps HK[p] to HA[p-1]

  std::vector<R> middle_orders(int p) const {
    std::vector<R> orders = H0[p].pres.orders;
    orders.insert(orders.end(), H1[p].pres.orders.begin(), H1[p].pres.orders.end());
    return orders;
  }

  PresentationModule<R> middle_module(int p) const {
    std::vector<R> orders = middle_orders(p);
    std::size_t free_count = 0;
    std::vector<R> torsion;
    for (const R& o : orders)
      ring_traits<R>::is_zero(o) ? void(++free_count) : torsion.push_back(o);
    return module_from_cyclic_orders(torsion, free_count);
  }
};

namespace detail {

template <class R>
std::vector<R> vec_neg(std::vector<R> v) {
  for (R& x : v) x = R(-x);
  return v;
}

// Relation columns (order_t * e_t per torsion coordinate) for a raw orders
// vector, mirroring relation_columns() for presentations.
template <class R>
Matrix<R> relation_cols_of(const std::vector<R>& orders) {
  std::vector<std::vector<R>> cols;
  for (std::size_t t = 0; t < orders.size(); ++t) {
    if (ring_traits<R>::is_zero(orders[t])) continue;
    std::vector<R> v(orders.size(), ring_traits<R>::zero());
    v[t] = orders[t];
    cols.push_back(v);
  }
  return Matrix<R>::from_cols(orders.size(), cols);
}

template <class R, class W, class BM>
MVSequence<R> build_mv_impl(const WeightedComplex<W>& K, const WeightedComplex<W>& K0,
                            const WeightedComplex<W>& K1, const WeightedComplex<W>& A,
                            const Coeff<R>& coeff, BM bmat) {
  using T = ring_traits<R>;
  MVSequence<R> seq;
  seq.coeff = coeff;
  seq.top_degree = K.dim();

  for (int p = 0; p <= seq.top_degree; ++p) {
    seq.HA.push_back(homology_impl(A, p, coeff, bmat));
    seq.H0.push_back(homology_impl(K0, p, coeff, bmat));
    seq.H1.push_back(homology_impl(K1, p, coeff, bmat));
    seq.HK.push_back(homology_impl(K, p, coeff, bmat));
  }

  for (int p = 0; p <= seq.top_degree; ++p) {
    const HomologyGroup<R>& GA = seq.HA[p];
    const HomologyGroup<R>& G0 = seq.H0[p];
    const HomologyGroup<R>& G1 = seq.H1[p];
    const HomologyGroup<R>& GK = seq.HK[p];

    // phi: [a] -> ([a in K0], -[a in K1]).
    Matrix<R> i0 = inclusion_matrix<R>(A, K0, p);
    Matrix<R> i1 = inclusion_matrix<R>(A, K1, p);
    std::vector<std::vector<R>> phi_cols;
    for (std::size_t j = 0; j < GA.pres.coord_count(); ++j) {
      std::vector<R> g = GA.pres.generator(j);
      std::optional<std::vector<R>> c0 = G0.pres.class_of(i0.apply(g));
      std::optional<std::vector<R>> c1 = G1.pres.class_of(vec_neg(i1.apply(g)));
      if (!c0 || !c1) throw std::logic_error("restriction of a cycle is not a cycle");
      std::vector<R> col = *c0;
      col.insert(col.end(), c1->begin(), c1->end());
      phi_cols.push_back(col);
    }
    seq.phi.push_back(Matrix<R>::from_cols(G0.pres.coord_count() + G1.pres.coord_count(),
                                           phi_cols));

    // psi: ([d], [e]) -> [d in K] + [e in K].
    Matrix<R> j0 = inclusion_matrix<R>(K0, K, p);
    Matrix<R> j1 = inclusion_matrix<R>(K1, K, p);
    std::vector<std::vector<R>> psi_cols;
    for (std::size_t j = 0; j < G0.pres.coord_count(); ++j) {
      std::optional<std::vector<R>> c = GK.pres.class_of(j0.apply(G0.pres.generator(j)));
      if (!c) throw std::logic_error("inclusion of a cycle is not a cycle");
      psi_cols.push_back(*c);
    }
    for (std::size_t j = 0; j < G1.pres.coord_count(); ++j) {
      std::optional<std::vector<R>> c = GK.pres.class_of(j1.apply(G1.pres.generator(j)));
      if (!c) throw std::logic_error("inclusion of a cycle is not a cycle");
      psi_cols.push_back(*c);
    }
    seq.psi.push_back(Matrix<R>::from_cols(GK.pres.coord_count(), psi_cols));

    // del: split a cycle z of K as z0 + z1 with z0 carrying the terms lying
    // in K0; the boundary of z0 is supported on A up to multiples of the
    // modulus, and its class in H_{p-1}(A) is the connecting image.
    std::size_t rows_prev = p >= 1 ? seq.HA[p - 1].pres.coord_count() : 0;
    if (p == 0) {
      seq.del.push_back(Matrix<R>(0, GK.pres.coord_count()));
    } else {
      std::vector<VertexList> basisK = chain_basis(K, p);
      std::vector<VertexList> basis0 = chain_basis(K0, p);
      std::vector<VertexList> basis0m1 = chain_basis(K0, p - 1);
      std::vector<VertexList> basisAm1 = chain_basis(A, p - 1);
      std::map<VertexList, std::size_t> index0;
      for (std::size_t i = 0; i < basis0.size(); ++i) index0[basis0[i]] = i;
      std::map<VertexList, std::size_t> indexAm1;
      for (std::size_t i = 0; i < basisAm1.size(); ++i) indexAm1[basisAm1[i]] = i;
      Matrix<R> d0 = bmat(K0, p);

      std::vector<std::vector<R>> del_cols;
      for (std::size_t j = 0; j < GK.pres.coord_count(); ++j) {
        std::vector<R> z = GK.pres.generator(j);
        std::vector<R> z0(basis0.size(), T::zero());
        for (std::size_t i = 0; i < basisK.size(); ++i) {
          auto it = index0.find(basisK[i]);
          if (it != index0.end()) z0[it->second] = z[i];
        }
        std::vector<R> w = d0.apply(z0);
        std::vector<R> restricted(basisAm1.size(), T::zero());
        for (std::size_t i = 0; i < basis0m1.size(); ++i) {
          auto it = indexAm1.find(basis0m1[i]);
          if (it != indexAm1.end()) {
            restricted[it->second] = w[i];
          } else {
            bool vanishes = coeff.modular() ? T::divides(coeff.modulus, w[i]) : T::is_zero(w[i]);
            if (!vanishes)
              throw std::logic_error("connecting map leaked outside the intersection");
          }
        }
        std::optional<std::vector<R>> c = seq.HA[p - 1].pres.class_of(restricted);
        if (!c) throw std::logic_error("connecting image is not a cycle of the intersection");
        del_cols.push_back(*c);
      }
      seq.del.push_back(Matrix<R>::from_cols(rows_prev, del_cols));
    }
  }
  return seq;
}

// Does the composite of two stored maps vanish into a group with the given
// coordinate orders? Free coordinates must be exactly zero, torsion ones
// zero modulo their order.
template <class R>
bool composite_vanishes(const Matrix<R>& G, const Matrix<R>& F, const std::vector<R>& orders_N) {
  using T = ring_traits<R>;
  Matrix<R> C = G * F;
  for (std::size_t i = 0; i < C.rows(); ++i)
    for (std::size_t j = 0; j < C.cols(); ++j) {
      const R& o = orders_N[i];
      if (T::is_zero(o) ? !T::is_zero(C.at(i, j)) : !T::divides(o, C.at(i, j)))
        return false;
    }
  return true;
}

// Exactness of X --F--> M --G--> N at M, from coordinate matrices and the
// coordinate orders of the three groups.
template <class R>
bool position_exact(const Matrix<R>& F, const Matrix<R>& G, const std::vector<R>& orders_X,
                    const std::vector<R>& orders_M, const std::vector<R>& orders_N,
                    const Coeff<R>& coeff) {
  using T = ring_traits<R>;
  switch (coeff.kind) {
    case CoeffKind::Fraction: {
      // Only free coordinates carry fraction-field dimension.
      std::vector<std::size_t> fx, fm, fn;
      for (std::size_t i = 0; i < orders_X.size(); ++i)
        if (T::is_zero(orders_X[i])) fx.push_back(i);
      for (std::size_t i = 0; i < orders_M.size(); ++i)
        if (T::is_zero(orders_M[i])) fm.push_back(i);
      for (std::size_t i = 0; i < orders_N.size(); ++i)
        if (T::is_zero(orders_N[i])) fn.push_back(i);
      Matrix<R> Ff(fm.size(), fx.size());
      for (std::size_t i = 0; i < fm.size(); ++i)
        for (std::size_t j = 0; j < fx.size(); ++j) Ff.at(i, j) = F.at(fm[i], fx[j]);
      Matrix<R> Gf(fn.size(), fm.size());
      for (std::size_t i = 0; i < fn.size(); ++i)
        for (std::size_t j = 0; j < fm.size(); ++j) Gf.at(i, j) = G.at(fn[i], fm[j]);
      return rank_fraction_field(Ff) + rank_fraction_field(Gf) == fm.size();
    }
    case CoeffKind::PrimeField:
      return rank_mod_prime(F, coeff.modulus) + rank_mod_prime(G, coeff.modulus) ==
             orders_M.size();
    case CoeffKind::Integral:
    case CoeffKind::Quotient: {
      // ker(G) in M's coordinates is the set of vectors G maps into N's
      // relation lattice; im(F) is spanned by F's columns. Both are compared
      // after adjoining M's own relations, by mutual lattice membership.
      Matrix<R> RM = relation_cols_of(orders_M);
      Matrix<R> RN = relation_cols_of(orders_N);
      Matrix<R> ker_block =
          kernel_basis(hstack(G, RN)).row_block(0, orders_M.size());
      Matrix<R> ker_full = hstack(ker_block, RM);
      Matrix<R> im_full = hstack(F, RM);
      HermiteSolver<R> im_solver(im_full);
      for (std::size_t j = 0; j < ker_full.cols(); ++j)
        if (!im_solver.solve(ker_full.col(j))) return false;
      HermiteSolver<R> ker_solver(ker_full);
      for (std::size_t j = 0; j < im_full.cols(); ++j)
        if (!ker_solver.solve(im_full.col(j))) return false;
      return true;
    }
  }
  return false;
}

}  // namespace detail

struct MVPosition {
  int degree = 0;
  std::string slot;  // "A", "K0+K1", or "K"
  bool composite_zero = false;
  bool exact = false;
  bool ok() const { return composite_zero && exact; }
};

struct MVExactnessReport {
  std::vector<MVPosition> positions;
  bool all_ok() const {
    for (const MVPosition& p : positions)
      if (!p.ok()) return false;
    return true;
  }
};

// Verify the long exact sequence from the stored matrices alone. Group
// slots beyond the top degree are zero, so the incoming map at the top
// intersection slot and the outgoing map at the degree-zero union slot are
// empty matrices.
template <class R>
MVExactnessReport verify_exactness(const MVSequence<R>& seq) {
  MVExactnessReport report;
  std::vector<R> none;
  for (int p = seq.top_degree; p >= 0; --p) {
    std::vector<R> oA = seq.HA[p].pres.orders;
    std::vector<R> oM = seq.middle_orders(p);
    std::vector<R> oK = seq.HK[p].pres.orders;

    Matrix<R> in_A = p + 1 <= seq.top_degree
                         ? seq.del[p + 1]
                         : Matrix<R>(seq.HA[p].pres.coord_count(), 0);
    std::vector<R> oKup = p + 1 <= seq.top_degree ? seq.HK[p + 1].pres.orders : none;
    std::vector<R> oAdown = p >= 1 ? seq.HA[p - 1].pres.orders : none;

    MVPosition atA{p, "A", detail::composite_vanishes(seq.phi[p], in_A, oM),
                   detail::position_exact(in_A, seq.phi[p], oKup, oA, oM, seq.coeff)};
    MVPosition atM{p, "K0+K1", detail::composite_vanishes(seq.psi[p], seq.phi[p], oK),
                   detail::position_exact(seq.phi[p], seq.psi[p], oA, oM, oK, seq.coeff)};
    MVPosition atK{p, "K", detail::composite_vanishes(seq.del[p], seq.psi[p], oAdown),
                   detail::position_exact(seq.psi[p], seq.del[p], oM, oK, oAdown, seq.coeff)};
    report.positions.push_back(atA);
    report.positions.push_back(atM);
    report.positions.push_back(atK);
  }
  return report;
}

// Chain-level verification of the short exact sequence
// 0 -> C(A) -> C(K0) + C(K1) -> C(K) -> 0 for a cover: the first map is
// injective, the second surjective, and their composite is zero.
struct MVChainReport {
  bool phi_injective = true;
  bool psi_surjective = true;
  bool composite_zero = true;
  bool ok() const { return phi_injective && psi_surjective && composite_zero; }
};

template <class R, class W>
MVChainReport mv_chain_checks(const WeightedComplex<W>& K, const WeightedComplex<W>& K0,
                              const WeightedComplex<W>& K1, const WeightedComplex<W>& A) {
  MVChainReport rep;
  for (int p = 0; p <= K.dim(); ++p) {
    Matrix<R> i0 = inclusion_matrix<R>(A, K0, p);
    Matrix<R> i1 = inclusion_matrix<R>(A, K1, p);
    Matrix<R> j0 = inclusion_matrix<R>(K0, K, p);
    Matrix<R> j1 = inclusion_matrix<R>(K1, K, p);

    Matrix<R> phi(i0.rows() + i1.rows(), i0.cols());
    for (std::size_t c = 0; c < i0.cols(); ++c) {
      for (std::size_t r = 0; r < i0.rows(); ++r) phi.at(r, c) = i0.at(r, c);
      for (std::size_t r = 0; r < i1.rows(); ++r) phi.at(i0.rows() + r, c) = R(-i1.at(r, c));
    }
    Matrix<R> psi = hstack(j0, j1);

    if (rank_fraction_field(phi) != phi.cols()) rep.phi_injective = false;
    if (!cokernel(psi, psi.rows()).is_zero()) rep.psi_surjective = false;
    Matrix<R> comp = j0 * i0;
    Matrix<R> comp1 = j1 * i1;
    for (std::size_t r = 0; r < comp.rows(); ++r)
      for (std::size_t c = 0; c < comp.cols(); ++c)
        if (!(comp.at(r, c) == comp1.at(r, c))) rep.composite_zero = false;
  }
  return rep;
}

// Build the sequence from a cover presented as two simplex lists.
inline MVSequence<Int> build_mv(const WeightedComplex<Int>& K, const WeightedComplex<Int>& K0,
                                const WeightedComplex<Int>& K1, const Coeff<Int>& coeff) {
  require_cover(K, K0, K1);
  WeightedComplex<Int> A = complex_intersection(K0, K1);
  return detail::build_mv_impl(K, K0, K1, A, coeff,
                               [](const WeightedComplex<Int>& C, int d) { return boundary_matrix(C, d); });
}

inline MVSequence<Poly> build_mv(const WeightedComplex<Poly>& K, const WeightedComplex<Poly>& K0,
                                 const WeightedComplex<Poly>& K1, const Coeff<Poly>& coeff) {
  require_cover(K, K0, K1);
  WeightedComplex<Poly> A = complex_intersection(K0, K1);
  return detail::build_mv_impl(K, K0, K1, A, coeff,
                               [](const WeightedComplex<Poly>& C, int d) { return boundary_matrix(C, d); });
}

}  // namespace wph
