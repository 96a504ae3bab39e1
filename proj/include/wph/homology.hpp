#pragma once

// Homology of weighted complexes over four coefficient systems — the ring R
// itself, its fraction field, a residue field R/(p), and a quotient ring
// R/(m) — all through one integral engine. Quotient coefficients lift to
// preimage lattices in R^c: cycles mod m become {x : d_n x in m R^{c'}},
// boundaries gain m times the standard basis, and the third isomorphism
// theorem turns the group into a quotient of lattices over R, where Smith
// normal form applies.

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wph/boundary.hpp"
#include "wph/complex.hpp"
#include "wph/lattice.hpp"
#include "wph/matrix.hpp"
#include "wph/module.hpp"
#include "wph/ring.hpp"
#include "wph/snf.hpp"

namespace wph {

enum class CoeffKind { Integral, Fraction, PrimeField, Quotient };

// A coefficient system over the weight ring R. `modulus` is zero for
// Integral and Fraction, the (normalized) prime p for PrimeField, and the
// (normalized) modulus m for Quotient.
template <class R>
struct Coeff {
  CoeffKind kind = CoeffKind::Integral;
  R modulus = ring_traits<R>::zero();

  static Coeff integral() { return {CoeffKind::Integral, ring_traits<R>::zero()}; }
  static Coeff fraction_field() { return {CoeffKind::Fraction, ring_traits<R>::zero()}; }
  static Coeff prime_field(const R& p) {
    using T = ring_traits<R>;
    R q = p * T::normalizing_unit(p);
    if (!T::is_prime(q)) throw SemanticError("prime-field modulus is not prime");
    return {CoeffKind::PrimeField, q};
  }
  static Coeff quotient(const R& m) {
    using T = ring_traits<R>;
    if (T::is_zero(m) || T::is_unit(m)) throw SemanticError("quotient modulus must be a nonzero non-unit");
    return {CoeffKind::Quotient, R(m * T::normalizing_unit(m))};
  }

  bool modular() const { return !ring_traits<R>::is_zero(modulus); }

  friend bool operator==(const Coeff& a, const Coeff& b) {
    return a.kind == b.kind && a.modulus == b.modulus;
  }
};

// A computed homology group: its canonical module plus the coordinate
// presentation (generators as chains, class vectors of cycles). For
// Fraction coefficients the presentation is the integral one; its free
// coordinates (listed first) are the basis over the fraction field.
template <class R>
struct HomologyGroup {
  int degree = 0;
  Coeff<R> coeff;
  std::size_t chain_rank = 0;  // rank of the ambient chain group
  PresentationModule<R> module;
  QuotientPresentation<R> pres;
  std::vector<VertexList> basis;         // ambient chain basis (when known)
  std::vector<std::string> labels;       // vertex labels (when known)
};

namespace detail {

template <class R>
Matrix<R> scaled_identity(std::size_t n, const R& c) {
  Matrix<R> m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = c;
  return m;
}

// Basis of the lift {x : M x = 0 mod m} in R^cols — the x-block of the
// kernel of [M | m*I]. For m = 0 this is the plain kernel.
template <class R>
Matrix<R> kernel_mod(const Matrix<R>& M, const R& m) {
  if (ring_traits<R>::is_zero(m)) return kernel_basis(M);
  return kernel_basis(hstack(M, scaled_identity(M.rows(), m))).row_block(0, M.cols());
}

template <class R>
void check_group_invariants(const PresentationModule<R>& mod, const Coeff<R>& coeff) {
  using T = ring_traits<R>;
  if (!coeff.modular()) return;
  if (mod.free_rank != 0)
    throw std::logic_error("modular homology group came out with free rank");
  for (const R& f : mod.invariant_factors) {
    if (!T::divides(f, coeff.modulus))
      throw std::logic_error("invariant factor does not divide the modulus");
    if (coeff.kind == CoeffKind::PrimeField && !(f == coeff.modulus))
      throw std::logic_error("prime-field homology has a non-prime invariant factor");
  }
}

}  // namespace detail

// H_n from the two adjacent boundary matrices (dn: C_n -> C_{n-1},
// dn1: C_{n+1} -> C_n).
template <class R>
HomologyGroup<R> homology_from_matrices(int degree, const Matrix<R>& dn, const Matrix<R>& dn1,
                                        const Coeff<R>& coeff) {
  const std::size_t c = dn.cols();
  if (dn1.rows() != c) throw SemanticError("boundary matrices have mismatched shapes");

  HomologyGroup<R> H;
  H.degree = degree;
  H.coeff = coeff;
  H.chain_rank = c;

  const R& m = coeff.modulus;
  Matrix<R> Z = detail::kernel_mod(dn, m);
  Matrix<R> B = coeff.modular() ? hstack(dn1, detail::scaled_identity<R>(c, m)) : dn1;
  H.pres = lattice_quotient(c, Z, B);
  H.module = H.pres.module;
  if (coeff.kind == CoeffKind::Fraction) H.module.invariant_factors.clear();
  detail::check_group_invariants(H.module, coeff);
  return H;
}

// The image of H_k(step i) -> H_k(step i+q) induced by an inclusion of
// chain complexes, from three matrices: the degree-k boundary of the small
// complex, the chain-level embedding C_k(small) -> C_k(large), and the
// degree-(k+1) boundary of the large complex. The image is presented in the
// large complex's chain coordinates: lift the small cycles, embed them, add
// m times the ambient basis, and divide by the intersection with the large
// boundary lattice.
template <class R>
HomologyGroup<R> persistence_from_matrices(int degree, const Matrix<R>& dk_small,
                                           const Matrix<R>& embed, const Matrix<R>& dk1_large,
                                           const Coeff<R>& coeff) {
  if (embed.cols() != dk_small.cols())
    throw SemanticError("embedding does not match the small chain group");
  const std::size_t c = embed.rows();
  if (dk1_large.rows() != c) throw SemanticError("embedding does not match the large chain group");

  HomologyGroup<R> H;
  H.degree = degree;
  H.coeff = coeff;
  H.chain_rank = c;

  const R& m = coeff.modulus;
  Matrix<R> Z = embed * detail::kernel_mod(dk_small, m);
  Matrix<R> B = dk1_large;
  if (coeff.modular()) {
    Matrix<R> ambient = detail::scaled_identity<R>(c, m);
    Z = hstack(Z, ambient);
    B = hstack(B, ambient);
  }
  H.pres = lattice_quotient(c, Z, B, /*intersect_first=*/true);
  H.module = H.pres.module;
  if (coeff.kind == CoeffKind::Fraction) H.module.invariant_factors.clear();
  detail::check_group_invariants(H.module, coeff);
  return H;
}

// Universal-coefficient prediction of H_n(- ; R/m) from the integral groups
// in degrees n and n-1: (H_n tensor R/m) + Tor(H_{n-1}, R/m), with
// R/(d) tensor R/(m) = Tor(R/(d), R/(m)) = R/(gcd(d, m)).
template <class R>
PresentationModule<R> uct_prediction(const PresentationModule<R>& Hn,
                                     const PresentationModule<R>& Hn_1, const R& m) {
  using T = ring_traits<R>;
  std::vector<R> orders(Hn.free_rank, m);
  for (const R& d : Hn.invariant_factors) orders.push_back(T::gcd(d, m));
  for (const R& d : Hn_1.invariant_factors) orders.push_back(T::gcd(d, m));
  return module_from_cyclic_orders(orders, 0);
}

// Chain-level inclusion C_n(sub) -> C_n(super): a 0/1 column-selection
// matrix. Shared simplices must carry identical weights, otherwise the
// inclusion is not a chain map for the weighted boundaries.
template <class R, class W>
Matrix<R> inclusion_matrix(const WeightedComplex<W>& sub, const WeightedComplex<W>& super,
                           int n) {
  std::vector<VertexList> rows = chain_basis(super, n);
  std::vector<VertexList> cols = chain_basis(sub, n);
  std::map<VertexList, std::size_t> row_index;
  for (std::size_t i = 0; i < rows.size(); ++i) row_index[rows[i]] = i;
  Matrix<R> M(rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    auto it = row_index.find(cols[j]);
    if (it == row_index.end())
      throw SemanticError("inclusion target misses simplex " +
                          simplex_to_string(cols[j], sub.vertex_labels));
    if (!(sub.weight(cols[j]) == super.weight(cols[j])))
      throw SemanticError("inclusion changes the weight of " +
                          simplex_to_string(cols[j], sub.vertex_labels));
    M.at(it->second, j) = ring_traits<R>::one();
  }
  return M;
}

namespace detail {

// Shared complex-level driver: boundary matrices are supplied by a functor
// so the integer, univariate, and cast paths reuse the same logic.
template <class R, class W, class BM>
HomologyGroup<R> homology_impl(const WeightedComplex<W>& K, int n, const Coeff<R>& coeff,
                               BM bmat) {
  Matrix<R> dn = bmat(K, n);
  Matrix<R> dn1 = bmat(K, n + 1);
  HomologyGroup<R> H = homology_from_matrices(n, dn, dn1, coeff);
  if (coeff.modular()) {
    // Cross-check the quotient-ring result against the universal-coefficient
    // prediction from the integral groups.
    Coeff<R> zc = Coeff<R>::integral();
    PresentationModule<R> Hn = homology_from_matrices(n, dn, dn1, zc).module;
    PresentationModule<R> Hn_1 =
        n >= 1 ? homology_from_matrices(n - 1, bmat(K, n - 1), dn, zc).module
               : PresentationModule<R>{};
    if (!(uct_prediction(Hn, Hn_1, coeff.modulus) == H.module))
      throw std::logic_error("quotient-ring homology disagrees with the universal-coefficient prediction");
  }
  H.basis = chain_basis(K, n);
  H.labels = K.vertex_labels;
  return H;
}

template <class R, class W, class BM>
HomologyGroup<R> persistent_impl(const FilteredComplex<W>& F, int k, int i, int q,
                                 const Coeff<R>& coeff, BM bmat) {
  if (q < 0) throw SemanticError("persistence offset must be nonnegative");
  WeightedComplex<W> Ki = step_complex(F, i);
  WeightedComplex<W> Kiq = step_complex(F, i + q);
  Matrix<R> dk = bmat(Ki, k);
  Matrix<R> embed = inclusion_matrix<R>(Ki, Kiq, k);
  Matrix<R> dk1 = bmat(Kiq, k + 1);
  HomologyGroup<R> H = persistence_from_matrices(k, dk, embed, dk1, coeff);
  H.basis = chain_basis(Kiq, k);
  H.labels = F.complex.vertex_labels;
  return H;
}

}  // namespace detail

inline HomologyGroup<Int> homology(const WeightedComplex<Int>& K, int n,
                                   const Coeff<Int>& coeff) {
  return detail::homology_impl(K, n, coeff,
                               [](const WeightedComplex<Int>& C, int d) { return boundary_matrix(C, d); });
}

inline HomologyGroup<Poly> homology(const WeightedComplex<Poly>& K, int n,
                                    const Coeff<Poly>& coeff) {
  return detail::homology_impl(K, n, coeff,
                               [](const WeightedComplex<Poly>& C, int d) { return boundary_matrix(C, d); });
}

// Multivariate weights, after decide_cast() picked the computational ring.
inline HomologyGroup<Int> homology_cast_int(const WeightedComplex<MPoly>& K, int n,
                                            const Coeff<Int>& coeff) {
  return detail::homology_impl(K, n, coeff, [](const WeightedComplex<MPoly>& C, int d) {
    return boundary_matrix_cast_int(C, d);
  });
}

inline HomologyGroup<Poly> homology_cast_poly(const WeightedComplex<MPoly>& K, int n,
                                              std::size_t var, const Coeff<Poly>& coeff) {
  return detail::homology_impl(K, n, coeff, [var](const WeightedComplex<MPoly>& C, int d) {
    return boundary_matrix_cast_poly(C, d, var);
  });
}

// Classical (unweighted) homology: every boundary ratio is 1.
template <class R, class W>
HomologyGroup<R> unweighted_homology(const WeightedComplex<W>& K, int n, const Coeff<R>& coeff) {
  return detail::homology_impl(K, n, coeff, [](const WeightedComplex<W>& C, int d) {
    return weighted_boundary_matrix<R, W>(
        C, d, [](const W&, const W&) { return ring_traits<R>::one(); });
  });
}

inline HomologyGroup<Int> persistent_homology(const FilteredComplex<Int>& F, int k, int i, int q,
                                              const Coeff<Int>& coeff) {
  return detail::persistent_impl(F, k, i, q, coeff,
                                 [](const WeightedComplex<Int>& C, int d) { return boundary_matrix(C, d); });
}

inline HomologyGroup<Poly> persistent_homology(const FilteredComplex<Poly>& F, int k, int i,
                                               int q, const Coeff<Poly>& coeff) {
  return detail::persistent_impl(F, k, i, q, coeff,
                                 [](const WeightedComplex<Poly>& C, int d) { return boundary_matrix(C, d); });
}

inline HomologyGroup<Int> persistent_homology_cast_int(const FilteredComplex<MPoly>& F, int k,
                                                       int i, int q, const Coeff<Int>& coeff) {
  return detail::persistent_impl(F, k, i, q, coeff, [](const WeightedComplex<MPoly>& C, int d) {
    return boundary_matrix_cast_int(C, d);
  });
}

inline HomologyGroup<Poly> persistent_homology_cast_poly(const FilteredComplex<MPoly>& F, int k,
                                                         int i, int q, std::size_t var,
                                                         const Coeff<Poly>& coeff) {
  return detail::persistent_impl(F, k, i, q, coeff, [var](const WeightedComplex<MPoly>& C, int d) {
    return boundary_matrix_cast_poly(C, d, var);
  });
}

// Relation columns of a presentation in its own coordinate space: order_t *
// e_t for every torsion coordinate (free coordinates contribute none).
template <class R>
Matrix<R> relation_columns(const QuotientPresentation<R>& pres) {
  std::vector<std::vector<R>> cols;
  for (std::size_t t = 0; t < pres.coord_count(); ++t) {
    if (ring_traits<R>::is_zero(pres.orders[t])) continue;
    std::vector<R> v(pres.coord_count(), ring_traits<R>::zero());
    v[t] = pres.orders[t];
    cols.push_back(v);
  }
  return Matrix<R>::from_cols(pres.coord_count(), cols);
}

// A homomorphism between computed homology groups, induced by a chain-level
// map (codomain chain coordinates x domain chain coordinates). The matrix
// columns are the class vectors of the images of the domain generators; the
// image submodule and the injective/surjective flags are derived per
// coefficient kind.
template <class R>
struct InducedMap {
  Matrix<R> matrix;  // codomain coords x domain coords
  PresentationModule<R> image;
  bool injective = false;
  bool surjective = false;
};

template <class R>
InducedMap<R> induced_map(const HomologyGroup<R>& dom, const HomologyGroup<R>& cod,
                          const Matrix<R>& chain_map) {
  if (!(dom.coeff == cod.coeff)) throw SemanticError("induced_map: coefficient mismatch");
  if (chain_map.cols() != dom.chain_rank || chain_map.rows() != cod.chain_rank)
    throw SemanticError("induced_map: chain map shape mismatch");

  InducedMap<R> f;
  std::vector<std::vector<R>> cols;
  for (std::size_t j = 0; j < dom.pres.coord_count(); ++j) {
    std::vector<R> v = chain_map.apply(dom.pres.generator(j));
    std::optional<std::vector<R>> c = cod.pres.class_of(v);
    if (!c) throw SemanticError("induced_map: image of a cycle is not a cycle");
    cols.push_back(*c);
  }
  f.matrix = Matrix<R>::from_cols(cod.pres.coord_count(), cols);

  switch (dom.coeff.kind) {
    case CoeffKind::Fraction: {
      // Only free coordinates survive over the fraction field; both
      // presentations list them first.
      Matrix<R> block(cod.module.free_rank, dom.module.free_rank);
      for (std::size_t i = 0; i < cod.module.free_rank; ++i)
        for (std::size_t j = 0; j < dom.module.free_rank; ++j) block.at(i, j) = f.matrix.at(i, j);
      std::size_t r = rank_fraction_field(block);
      f.image = PresentationModule<R>{r, {}};
      f.injective = r == dom.module.free_rank;
      f.surjective = r == cod.module.free_rank;
      break;
    }
    case CoeffKind::PrimeField: {
      std::size_t r = rank_mod_prime(f.matrix, dom.coeff.modulus);
      f.image = module_from_cyclic_orders(std::vector<R>(r, dom.coeff.modulus), 0);
      f.injective = r == dom.module.invariant_factors.size();
      f.surjective = r == cod.module.invariant_factors.size();
      break;
    }
    case CoeffKind::Integral:
    case CoeffKind::Quotient: {
      const std::size_t Tn = cod.pres.coord_count();
      Matrix<R> RN = relation_columns(cod.pres);
      f.image = lattice_quotient(Tn, hstack(f.matrix, RN), RN).module;
      if (dom.coeff.kind == CoeffKind::Quotient) {
        // Finite modules: compare element counts.
        R im = *f.image.order();
        f.injective = im == *dom.module.order();
        f.surjective = im == *cod.module.order();
      } else {
        // Finitely generated modules over the domain are Hopfian, so an
        // abstract isomorphism image = domain certifies injectivity.
        f.injective = f.image == dom.module;
        f.surjective = lattice_quotient(Tn, Matrix<R>::identity(Tn), hstack(f.matrix, RN))
                           .module.is_zero();
      }
      break;
    }
  }
  return f;
}

// The inclusion-induced map on homology between two filtration steps,
// together with its image — the persistent group seen as a submodule of the
// later step's homology.
template <class R, class W, class BM>
InducedMap<R> inclusion_induced_map(const FilteredComplex<W>& F, int k, int i, int q,
                                    const Coeff<R>& coeff, BM bmat) {
  WeightedComplex<W> Ki = step_complex(F, i);
  WeightedComplex<W> Kiq = step_complex(F, i + q);
  HomologyGroup<R> dom = detail::homology_impl(Ki, k, coeff, bmat);
  HomologyGroup<R> cod = detail::homology_impl(Kiq, k, coeff, bmat);
  return induced_map(dom, cod, inclusion_matrix<R>(Ki, Kiq, k));
}

}  // namespace wph
