#pragma once

// The Bockstein spectral sequence of a weighted complex at a prime p of the
// weight ring, and its generalized version over any PID weight ring (for
// Q[x], p is an irreducible polynomial). Page dimensions and differential
// ranks are computed along two independent routes that must agree: a closed
// form from the integral invariant factors, and the image route through
// homology with R/(p^r) coefficients. The first differential is also
// realized at chain level ([c] -> [(1/p) dc]), integral homology is
// reassembled from the tables of all relevant primes, and the persistence
// comparison maps theta (mod p^r) and epsilon (mod p^{2r}) power the
// two-condition criterion for lifting a persistent isomorphism from R/(p^r)
// to R/(p^{2r}) coefficients.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "wph/boundary.hpp"
#include "wph/complex.hpp"
#include "wph/homology.hpp"
#include "wph/matrix.hpp"
#include "wph/module.hpp"
#include "wph/poly.hpp"
#include "wph/ring.hpp"

namespace wph {

// One prime's spectral sequence, tabulated per page and degree. Degrees run
// 0..max_degree where max_degree = dim K + 1: the slot above the top
// dimension still carries first-page classes through the torsion of the top
// integral group. Pages run 1..pages with pages >= r_stab, and
// E^{r_stab} = E^infinity.
template <class R>
struct BocksteinTable {
  R prime = ring_traits<R>::zero();
  int max_degree = 0;
  unsigned r_stab = 1;
  unsigned pages = 1;
  std::vector<std::vector<std::size_t>> dim;     // dim[r-1][n] = dim E^r_n over R/(p)
  std::vector<std::vector<std::size_t>> rank_d;  // rank_d[r-1][n] = rank of d^r: E^r_n -> E^r_{n-1}
  std::vector<std::size_t> einf;                 // limit dimensions = free ranks

  std::size_t dim_at(unsigned r, int n) const {
    if (n < 0 || n > max_degree || r < 1) throw SemanticError("page index out of range");
    if (r > pages) return einf[static_cast<std::size_t>(n)];
    return dim[r - 1][static_cast<std::size_t>(n)];
  }
};

// First-page data realized on chains: the groups H_n(K, w; R/p) with their
// generators, and the matrices of the first differential, column j of
// beta[n] being the class of (1/p) d(g_j) in degree n-1.
template <class R>
struct BocksteinChain {
  R prime = ring_traits<R>::zero();
  std::vector<HomologyGroup<R>> groups;  // degree 0..max_degree
  std::vector<Matrix<R>> beta;           // beta[n]: groups[n] -> groups[n-1]; beta[0] empty
};

namespace detail {

template <class R>
R ring_pow(const R& b, unsigned e) {
  R r = ring_traits<R>::one();
  for (unsigned i = 0; i < e; ++i) r = R(r * b);
  return r;
}

// Integral homology in degrees 0..N from precomputed boundary matrices.
template <class R>
std::vector<PresentationModule<R>> integral_modules(const std::vector<Matrix<R>>& d, int N) {
  std::vector<PresentationModule<R>> H;
  for (int n = 0; n <= N; ++n)
    H.push_back(homology_from_matrices(n, d[static_cast<std::size_t>(n)],
                                       d[static_cast<std::size_t>(n) + 1],
                                       Coeff<R>::integral())
                    .module);
  return H;
}

template <class R, class W, class BM>
std::vector<Matrix<R>> boundary_stack(const WeightedComplex<W>& K, int N, BM bmat) {
  std::vector<Matrix<R>> d;
  for (int n = 0; n <= N + 1; ++n) d.push_back(bmat(K, n));
  return d;
}

template <class R, class W, class BM>
BocksteinTable<R> bockstein_pages_impl(const WeightedComplex<W>& K, const R& p, unsigned max_r,
                                       BM bmat) {
  using T = ring_traits<R>;
  R pn = R(p * T::normalizing_unit(p));
  if (!T::is_prime(pn)) throw SemanticError("Bockstein prime is not prime");

  BocksteinTable<R> table;
  table.prime = pn;
  const int D = K.dim();
  const int N = D + 1;  // top degree with possibly nonzero first page
  table.max_degree = N;

  std::vector<Matrix<R>> d = boundary_stack<R>(K, N, bmat);
  std::vector<PresentationModule<R>> H = integral_modules(d, N);

  // Closed form. With t_n(r) = #{p-exponents >= r in H_n}:
  //   dim E^r_n  = rank H_n + t_n(r) + t_{n-1}(r)
  //   rank d^r_n = #{p-exponents exactly r in H_{n-1}}.
  std::vector<std::vector<unsigned>> exps(static_cast<std::size_t>(N) + 1);
  unsigned max_exp = 0;
  for (int n = 0; n <= N; ++n) {
    exps[static_cast<std::size_t>(n)] = p_primary_exponents(H[static_cast<std::size_t>(n)], pn);
    for (unsigned e : exps[static_cast<std::size_t>(n)]) max_exp = std::max(max_exp, e);
  }
  table.r_stab = max_exp + 1;
  table.pages = std::max(max_r, table.r_stab);

  auto count_ge = [&exps](int n, unsigned r) {
    if (n < 0 || static_cast<std::size_t>(n) >= exps.size()) return std::size_t{0};
    std::size_t c = 0;
    for (unsigned e : exps[static_cast<std::size_t>(n)])
      if (e >= r) ++c;
    return c;
  };
  auto count_eq = [&exps](int n, unsigned r) {
    if (n < 0 || static_cast<std::size_t>(n) >= exps.size()) return std::size_t{0};
    std::size_t c = 0;
    for (unsigned e : exps[static_cast<std::size_t>(n)])
      if (e == r) ++c;
    return c;
  };

  // One page beyond the tabulated range feeds the image-route recursion.
  const unsigned last = table.pages + 1;
  std::vector<std::vector<std::size_t>> dim_closed(last), rank_closed(last);
  for (unsigned r = 1; r <= last; ++r) {
    for (int n = 0; n <= N; ++n) {
      dim_closed[r - 1].push_back(H[static_cast<std::size_t>(n)].free_rank + count_ge(n, r) +
                                  count_ge(n - 1, r));
      rank_closed[r - 1].push_back(count_eq(n - 1, r));
    }
  }

  // Image route: E^r_n is the image of multiplication by p^{r-1} on
  // H_n(;R/p^r), whose dimension over R/(p) is the number of invariant
  // factors of H_n(;R/p^r) with p-valuation exactly r. Differential ranks
  // then follow from the page dimensions, peeling degrees downward.
  std::vector<std::vector<std::size_t>> dim_image(last);
  for (unsigned r = 1; r <= last; ++r) {
    Coeff<R> c = Coeff<R>::quotient(ring_pow(pn, r));
    for (int n = 0; n <= N; ++n) {
      PresentationModule<R> M =
          homology_from_matrices(n, d[static_cast<std::size_t>(n)],
                                 d[static_cast<std::size_t>(n) + 1], c)
              .module;
      std::size_t count = 0;
      for (const R& f : M.invariant_factors)
        if (valuation(f, pn) == r) ++count;
      dim_image[r - 1].push_back(count);
    }
  }
  for (unsigned r = 1; r <= last; ++r)
    if (dim_image[r - 1] != dim_closed[r - 1])
      throw std::logic_error("spectral sequence page dimensions disagree between routes");

  std::vector<std::vector<std::size_t>> rank_image(table.pages);
  for (unsigned r = 1; r <= table.pages; ++r) {
    rank_image[r - 1].assign(static_cast<std::size_t>(N) + 1, 0);
    std::size_t into_above = 0;  // rank of d^r out of degree n+1
    for (int n = N; n >= 0; --n) {
      std::size_t here = dim_image[r - 1][static_cast<std::size_t>(n)] -
                         dim_image[r][static_cast<std::size_t>(n)] - into_above;
      rank_image[r - 1][static_cast<std::size_t>(n)] = here;
      into_above = here;
    }
  }
  for (unsigned r = 1; r <= table.pages; ++r)
    if (rank_image[r - 1] != rank_closed[r - 1])
      throw std::logic_error("spectral sequence differential ranks disagree between routes");

  dim_closed.resize(table.pages);
  table.dim = dim_closed;
  table.rank_d = rank_closed;
  table.rank_d.resize(table.pages);
  for (int n = 0; n <= N; ++n) table.einf.push_back(H[static_cast<std::size_t>(n)].free_rank);
  return table;
}

template <class R, class W, class BM>
BocksteinChain<R> bockstein_chain_impl(const WeightedComplex<W>& K, const R& p, BM bmat) {
  using T = ring_traits<R>;
  Coeff<R> c = Coeff<R>::prime_field(p);
  BocksteinChain<R> chain;
  chain.prime = c.modulus;
  const int N = K.dim() + 1;
  std::vector<Matrix<R>> d = boundary_stack<R>(K, N, bmat);
  for (int n = 0; n <= N; ++n)
    chain.groups.push_back(homology_from_matrices(n, d[static_cast<std::size_t>(n)],
                                                  d[static_cast<std::size_t>(n) + 1], c));
  for (int n = 0; n <= N; ++n) {
    const QuotientPresentation<R>& pres = chain.groups[static_cast<std::size_t>(n)].pres;
    std::size_t rows = n >= 1 ? chain.groups[static_cast<std::size_t>(n) - 1].pres.coord_count() : 0;
    std::vector<std::vector<R>> cols;
    for (std::size_t j = 0; j < pres.coord_count(); ++j) {
      std::vector<R> g = pres.generator(j);
      std::vector<R> w = d[static_cast<std::size_t>(n)].apply(g);
      for (R& x : w) {
        if (!T::divides(chain.prime, x))
          throw std::logic_error("mod-p cycle has a boundary not divisible by p");
        x = T::exact_div(x, chain.prime);
      }
      if (n == 0) {
        cols.push_back({});
        continue;
      }
      std::optional<std::vector<R>> cls =
          chain.groups[static_cast<std::size_t>(n) - 1].pres.class_of(w);
      if (!cls) throw std::logic_error("Bockstein image is not a cycle");
      cols.push_back(*cls);
    }
    chain.beta.push_back(Matrix<R>::from_cols(rows, cols));
  }
  return chain;
}

}  // namespace detail

inline BocksteinTable<Int> bockstein_pages(const WeightedComplex<Int>& K, const Int& p,
                                           unsigned max_r = 0) {
  return detail::bockstein_pages_impl(K, p, max_r, [](const WeightedComplex<Int>& C, int n) {
    return boundary_matrix(C, n);
  });
}

inline BocksteinTable<Poly> bockstein_pages(const WeightedComplex<Poly>& K, const Poly& pi,
                                            unsigned max_r = 0) {
  return detail::bockstein_pages_impl(K, pi, max_r, [](const WeightedComplex<Poly>& C, int n) {
    return boundary_matrix(C, n);
  });
}

inline BocksteinChain<Int> bockstein_chain(const WeightedComplex<Int>& K, const Int& p) {
  return detail::bockstein_chain_impl(K, p, [](const WeightedComplex<Int>& C, int n) {
    return boundary_matrix(C, n);
  });
}

inline BocksteinChain<Poly> bockstein_chain(const WeightedComplex<Poly>& K, const Poly& pi) {
  return detail::bockstein_chain_impl(K, pi, [](const WeightedComplex<Poly>& C, int n) {
    return boundary_matrix(C, n);
  });
}

// The primes at which the integral homology of (K, w) has torsion, i.e. the
// prime divisors of all invariant factors across degrees.
inline std::vector<Int> relevant_primes(const WeightedComplex<Int>& K) {
  std::set<Int> primes;
  for (int n = 0; n <= K.dim(); ++n)
    for (const Int& f : homology(K, n, Coeff<Int>::integral()).module.invariant_factors)
      for (const auto& [p, e] : factorize(f)) {
        (void)e;
        primes.insert(p);
      }
  return std::vector<Int>(primes.begin(), primes.end());
}

inline std::vector<Poly> relevant_primes(const WeightedComplex<Poly>& K) {
  std::set<Poly> primes;
  for (int n = 0; n <= K.dim(); ++n)
    for (const Poly& f : homology(K, n, Coeff<Poly>::integral()).module.invariant_factors)
      for (const Poly& p : poly_prime_support(f)) primes.insert(p);
  return std::vector<Poly>(primes.begin(), primes.end());
}

// Reassemble the integral homology from the spectral sequence tables of a
// set of primes: free ranks are the limit dimensions (which every table
// must agree on), and each table contributes one R/(p^r) summand in degree
// n per unit of rank of d^r out of degree n+1. The prime set must cover all
// torsion primes for the result to be the true integral homology.
template <class R>
std::vector<PresentationModule<R>> recover_integral(const std::vector<BocksteinTable<R>>& tables) {
  if (tables.empty()) throw SemanticError("integral recovery needs at least one prime table");
  const int N = tables.front().max_degree;
  for (const BocksteinTable<R>& t : tables) {
    if (t.max_degree != N)
      throw SemanticError("prime tables disagree on the degree range");
    if (t.einf != tables.front().einf)
      throw SemanticError("prime tables disagree on the limit page; a torsion prime is missing");
  }
  std::vector<PresentationModule<R>> out;
  for (int n = 0; n <= N; ++n) {
    std::vector<R> orders;
    for (const BocksteinTable<R>& t : tables) {
      for (unsigned r = 1; r <= t.pages; ++r) {
        std::size_t mult =
            n + 1 <= N ? t.rank_d[r - 1][static_cast<std::size_t>(n) + 1] : std::size_t{0};
        for (std::size_t i = 0; i < mult; ++i) orders.push_back(detail::ring_pow(t.prime, r));
      }
    }
    out.push_back(module_from_cyclic_orders(orders, tables.front().einf[static_cast<std::size_t>(n)]));
  }
  return out;
}

// Tables at every relevant prime (or at 2 alone when there is no torsion,
// to carry the free ranks).
inline std::vector<BocksteinTable<Int>> bockstein_all_tables(const WeightedComplex<Int>& K,
                                                             unsigned max_r = 0) {
  std::vector<Int> primes = relevant_primes(K);
  if (primes.empty()) primes.push_back(Int(2));
  std::vector<BocksteinTable<Int>> tables;
  for (const Int& p : primes) tables.push_back(bockstein_pages(K, p, max_r));
  return tables;
}

inline std::vector<BocksteinTable<Poly>> bockstein_all_tables(const WeightedComplex<Poly>& K,
                                                              unsigned max_r = 0) {
  std::vector<Poly> primes = relevant_primes(K);
  if (primes.empty()) primes.push_back(Poly::x());
  std::vector<BocksteinTable<Poly>> tables;
  for (const Poly& pi : primes) tables.push_back(bockstein_pages(K, pi, max_r));
  return tables;
}

// The two-condition lifting criterion for a persistence step: whether the
// isomorphisms
//   (a) H_{k-1}^{i,q}(;R/p^r) = H_{k-1}^i(;R/p^r)
//   (b) H_k^{i,q}(;R/p^r)    = H_k^{i+q}(;R/p^r)
// hold, and whether the conclusion
//   H_k^{i,q}(;R/p^{2r})     = H_k^{i+q}(;R/p^{2r})
// holds, together with the comparison maps theta (two degrees, mod p^r) and
// epsilon (mod p^{2r}) whose images realize the persistent groups.
template <class R>
struct Ptop2Report {
  int k = 0, i = 0, q = 0;
  R prime = ring_traits<R>::zero();
  unsigned r = 1;

  InducedMap<R> theta_low;   // H_{k-1}^i -> H_{k-1}^{i+q} over R/(p^r)
  InducedMap<R> theta_high;  // H_k^i     -> H_k^{i+q}     over R/(p^r)
  InducedMap<R> epsilon;     // H_k^i     -> H_k^{i+q}     over R/(p^{2r})

  PresentationModule<R> persistent_low, step_low;    // degree k-1, mod p^r
  PresentationModule<R> persistent_high, step_high;  // degree k,   mod p^r
  PresentationModule<R> persistent_sq, step_sq;      // degree k,   mod p^{2r}

  bool hyp_low = false;
  bool hyp_high = false;
  bool conclusion = false;
};

namespace detail {

template <class R, class W, class BM>
Ptop2Report<R> ptop2_impl(const FilteredComplex<W>& F, int k, int i, int q, const R& p,
                          unsigned r, BM bmat) {
  using T = ring_traits<R>;
  if (r < 1) throw SemanticError("the power r must be at least 1");
  R pn = R(p * T::normalizing_unit(p));
  Coeff<R> low = r == 1 ? Coeff<R>::prime_field(pn) : Coeff<R>::quotient(ring_pow(pn, r));
  Coeff<R> sq = Coeff<R>::quotient(ring_pow(pn, 2 * r));

  Ptop2Report<R> rep;
  rep.k = k;
  rep.i = i;
  rep.q = q;
  rep.prime = pn;
  rep.r = r;

  WeightedComplex<W> Ki = step_complex(F, i);
  WeightedComplex<W> Kiq = step_complex(F, i + q);

  rep.persistent_low = persistent_impl(F, k - 1, i, q, low, bmat).module;
  rep.step_low = homology_impl(Ki, k - 1, low, bmat).module;
  rep.persistent_high = persistent_impl(F, k, i, q, low, bmat).module;
  rep.step_high = homology_impl(Kiq, k, low, bmat).module;
  rep.persistent_sq = persistent_impl(F, k, i, q, sq, bmat).module;
  rep.step_sq = homology_impl(Kiq, k, sq, bmat).module;

  rep.theta_low = inclusion_induced_map(F, k - 1, i, q, low, bmat);
  rep.theta_high = inclusion_induced_map(F, k, i, q, low, bmat);
  rep.epsilon = inclusion_induced_map(F, k, i, q, sq, bmat);

  // The image of each comparison map must realize the persistent group.
  if (!(rep.theta_low.image == rep.persistent_low) ||
      !(rep.theta_high.image == rep.persistent_high) ||
      !(rep.epsilon.image == rep.persistent_sq))
    throw std::logic_error("comparison map image disagrees with the persistent group");

  rep.hyp_low = rep.persistent_low == rep.step_low;
  rep.hyp_high = rep.persistent_high == rep.step_high;
  rep.conclusion = rep.persistent_sq == rep.step_sq;

  // For finite coefficient modules the two hypotheses are exactly
  // injectivity below and surjectivity in degree k.
  if (rep.hyp_low != rep.theta_low.injective || rep.hyp_high != rep.theta_high.surjective)
    throw std::logic_error("hypothesis verdicts disagree with the comparison map flags");
  return rep;
}

}  // namespace detail

inline Ptop2Report<Int> ptop2_check(const FilteredComplex<Int>& F, int k, int i, int q,
                                    const Int& p, unsigned r = 1) {
  return detail::ptop2_impl(F, k, i, q, p, r, [](const WeightedComplex<Int>& C, int n) {
    return boundary_matrix(C, n);
  });
}

inline Ptop2Report<Poly> ptop2_check(const FilteredComplex<Poly>& F, int k, int i, int q,
                                     const Poly& pi, unsigned r = 1) {
  return detail::ptop2_impl(F, k, i, q, pi, r, [](const WeightedComplex<Poly>& C, int n) {
    return boundary_matrix(C, n);
  });
}

}  // namespace wph
