#pragma once

// Smith normal form over a Euclidean domain with full transform tracking,
// plus the derived operations every homology computation consumes: exact
// linear solving over the ring (lattice membership), kernel bases, and
// cokernel presentations.

#include <cstddef>
#include <optional>
#include <vector>

#include "wph/matrix.hpp"
#include "wph/module.hpp"
#include "wph/ring.hpp"

namespace wph {

// U * M * V = D with U, V unimodular (det a unit); D diagonal with
// d_1 | d_2 | ... | d_rank, unit-normalized, zeros afterwards. Uinv and Vinv
// are accumulated during elimination so no inversion is ever needed.
template <class R>
struct SNFResult {
  Matrix<R> D, U, V, Uinv, Vinv;
  std::size_t rank = 0;

  std::vector<R> diagonal() const {
    std::vector<R> d;
    for (std::size_t i = 0; i < rank; ++i) d.push_back(D.at(i, i));
    return d;
  }
};

template <class R>
SNFResult<R> smith_normal_form(const Matrix<R>& M) {
  using T = ring_traits<R>;
  const std::size_t m = M.rows(), n = M.cols();
  SNFResult<R> res;
  res.D = M;
  res.U = Matrix<R>::identity(m);
  res.Uinv = Matrix<R>::identity(m);
  res.V = Matrix<R>::identity(n);
  res.Vinv = Matrix<R>::identity(n);
  Matrix<R>&A = res.D, &U = res.U, &Ui = res.Uinv, &V = res.V, &Vi = res.Vinv;

  auto swap_rows = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < n; ++j) std::swap(A.at(a, j), A.at(b, j));
    for (std::size_t j = 0; j < m; ++j) std::swap(U.at(a, j), U.at(b, j));
    for (std::size_t i = 0; i < m; ++i) std::swap(Ui.at(i, a), Ui.at(i, b));
  };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m; ++i) std::swap(A.at(i, a), A.at(i, b));
    for (std::size_t i = 0; i < n; ++i) std::swap(V.at(i, a), V.at(i, b));
    for (std::size_t j = 0; j < n; ++j) std::swap(Vi.at(a, j), Vi.at(b, j));
  };
  // row_i += c * row_j  (on A and U); Uinv: col_j -= c * col_i.
  auto row_addmul = [&](std::size_t i, std::size_t j, const R& c) {
    if (T::is_zero(c)) return;
    for (std::size_t k = 0; k < n; ++k) A.at(i, k) += c * A.at(j, k);
    for (std::size_t k = 0; k < m; ++k) U.at(i, k) += c * U.at(j, k);
    for (std::size_t k = 0; k < m; ++k) Ui.at(k, j) -= c * Ui.at(k, i);
  };
  // col_j += c * col_k  (on A and V); Vinv: row_k -= c * row_j.
  auto col_addmul = [&](std::size_t j, std::size_t k, const R& c) {
    if (T::is_zero(c)) return;
    for (std::size_t i = 0; i < m; ++i) A.at(i, j) += c * A.at(i, k);
    for (std::size_t i = 0; i < n; ++i) V.at(i, j) += c * V.at(i, k);
    for (std::size_t i = 0; i < n; ++i) Vi.at(k, i) -= c * Vi.at(j, i);
  };
  // row_i *= u for a unit u; Uinv: col_i *= u^-1.
  auto scale_row = [&](std::size_t i, const R& u) {
    const R ui = T::unit_inverse(u);
    for (std::size_t k = 0; k < n; ++k) A.at(i, k) = A.at(i, k) * u;
    for (std::size_t k = 0; k < m; ++k) U.at(i, k) = U.at(i, k) * u;
    for (std::size_t k = 0; k < m; ++k) Ui.at(k, i) = Ui.at(k, i) * ui;
  };

  std::size_t t = 0;
  const std::size_t steps = std::min(m, n);
  while (t < steps) {
    // Deterministic pivot: smallest Euclidean norm in the trailing block,
    // ties broken by row-major position.
    bool found = false;
    std::size_t pi = t, pj = t;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        const R& x = A.at(i, j);
        if (T::is_zero(x)) continue;
        if (!found || T::norm_less(x, A.at(pi, pj))) {
          found = true;
          pi = i;
          pj = j;
        }
      }
    if (!found) break;
    swap_rows(t, pi);
    swap_cols(t, pj);

    for (bool stable = false; !stable;) {
      stable = true;
      // Clear the pivot column; a nonzero remainder has smaller norm than
      // the pivot, so swapping it up strictly descends.
      for (std::size_t i = t + 1; i < m && stable; ++i) {
        if (T::is_zero(A.at(i, t))) continue;
        R q, r;
        T::divmod(A.at(i, t), A.at(t, t), q, r);
        row_addmul(i, t, R(-q));
        if (!T::is_zero(A.at(i, t))) {
          swap_rows(t, i);
          stable = false;
        }
      }
      if (!stable) continue;
      for (std::size_t j = t + 1; j < n && stable; ++j) {
        if (T::is_zero(A.at(t, j))) continue;
        R q, r;
        T::divmod(A.at(t, j), A.at(t, t), q, r);
        col_addmul(j, t, R(-q));
        if (!T::is_zero(A.at(t, j))) {
          swap_cols(t, j);
          stable = false;
        }
      }
      if (!stable) continue;
      // Enforce the divisibility chain: fold a non-divisible entry into the
      // pivot row; the next column pass shrinks the pivot.
      for (std::size_t i = t + 1; i < m && stable; ++i)
        for (std::size_t j = t + 1; j < n && stable; ++j)
          if (!T::divides(A.at(t, t), A.at(i, j))) {
            row_addmul(t, i, T::one());
            stable = false;
          }
    }

    const R u = T::normalizing_unit(A.at(t, t));
    if (!(u == T::one())) scale_row(t, u);
    ++t;
  }
  res.rank = t;
  return res;
}

// Solves M*x = b exactly over the ring (lattice membership in the column
// lattice of M); nullopt when b is not in the lattice. Precomputes one SNF
// and can be reused across right-hand sides.
template <class R>
class HermiteSolver {
 public:
  explicit HermiteSolver(const Matrix<R>& M) : snf_(smith_normal_form(M)) {}
  explicit HermiteSolver(SNFResult<R> s) : snf_(std::move(s)) {}

  const SNFResult<R>& snf() const { return snf_; }

  std::optional<std::vector<R>> solve(const std::vector<R>& b) const {
    using T = ring_traits<R>;
    const std::size_t m = snf_.U.rows(), n = snf_.V.rows();
    if (b.size() != m) throw SemanticError("hermite_solve: dimension mismatch");
    std::vector<R> y = snf_.U.apply(b);
    std::vector<R> xp(n, T::zero());
    for (std::size_t i = 0; i < snf_.rank; ++i) {
      if (!T::divides(snf_.D.at(i, i), y[i])) return std::nullopt;
      xp[i] = T::exact_div(y[i], snf_.D.at(i, i));
    }
    for (std::size_t i = snf_.rank; i < m; ++i)
      if (!T::is_zero(y[i])) return std::nullopt;
    return snf_.V.apply(xp);
  }

 private:
  SNFResult<R> snf_;
};

template <class R>
std::optional<std::vector<R>> hermite_solve(const Matrix<R>& M, const std::vector<R>& b) {
  return HermiteSolver<R>(M).solve(b);
}

// Free basis of ker(M) as a sublattice of R^cols: the trailing columns of V.
// Returned as a cols x (cols - rank) matrix whose columns are the basis.
template <class R>
Matrix<R> kernel_basis(const Matrix<R>& M) {
  SNFResult<R> s = smith_normal_form(M);
  const std::size_t n = M.cols();
  Matrix<R> K(n, n - s.rank);
  for (std::size_t j = s.rank; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) K.at(i, j - s.rank) = s.V.at(i, j);
  return K;
}

// R^ambient / column-span(M) in canonical form.
template <class R>
PresentationModule<R> cokernel(const Matrix<R>& M, std::size_t ambient_rank) {
  if (M.rows() != ambient_rank) throw SemanticError("cokernel: ambient rank mismatch");
  SNFResult<R> s = smith_normal_form(M);
  PresentationModule<R> mod;
  mod.free_rank = ambient_rank - s.rank;
  for (std::size_t i = 0; i < s.rank; ++i)
    if (!ring_traits<R>::is_unit(s.D.at(i, i))) mod.invariant_factors.push_back(s.D.at(i, i));
  return mod;
}

// Rank over the fraction field (= SNF rank over the domain).
template <class R>
std::size_t rank_fraction_field(const Matrix<R>& M) {
  return smith_normal_form(M).rank;
}

// Rank over the residue field R/(p): diagonal entries staying nonzero mod p.
template <class R>
std::size_t rank_mod_prime(const Matrix<R>& M, const R& p) {
  SNFResult<R> s = smith_normal_form(M);
  std::size_t r = 0;
  for (std::size_t i = 0; i < s.rank; ++i)
    if (!ring_traits<R>::divides(p, s.D.at(i, i))) ++r;
  return r;
}

}  // namespace wph
