#pragma once

// Weighted boundary matrices. The boundary of a simplex scales each face
// term by the exact weight ratio w(sigma)/w(face), so every entry lives in
// the weight ring; a failed division is a semantic error in the input.

#include <cstddef>
#include <functional>
#include <map>
#include <vector>

#include "wph/complex.hpp"
#include "wph/matrix.hpp"
#include "wph/monomial.hpp"
#include "wph/poly.hpp"
#include "wph/ring.hpp"

namespace wph {

// Simplices of dimension n in map (lexicographic) order; this fixed order
// is the basis of the chain group C_n.
template <class W>
std::vector<VertexList> chain_basis(const WeightedComplex<W>& K, int n) {
  std::vector<VertexList> out;
  for (const auto& [s, w] : K.simplices)
    if (static_cast<int>(s.size()) == n + 1) out.push_back(s);
  return out;
}

namespace detail {

inline Int weight_ratio(const Int& num, const Int& den) {
  if (ring_traits<Int>::is_zero(den) || !ring_traits<Int>::divides(den, num))
    throw SemanticError("face weight does not divide simplex weight");
  return ring_traits<Int>::exact_div(num, den);
}

inline Poly weight_ratio(const Poly& num, const Poly& den) {
  if (den.is_zero() || !ring_traits<Poly>::divides(den, num))
    throw SemanticError("face weight does not divide simplex weight");
  return ring_traits<Poly>::exact_div(num, den);
}

inline MPoly weight_ratio(const MPoly& num, const MPoly& den) {
  MPoly q(den.nvars);
  if (den.is_zero() || !mpoly_try_div(num, den, q))
    throw SemanticError("face weight does not divide simplex weight");
  return q;
}

}  // namespace detail

// The matrix of the weighted boundary map C_n -> C_{n-1}: column sigma has
// entry (-1)^i * w(sigma)/w(d_i sigma) in the row of its i-th face.
template <class R, class W>
Matrix<R> weighted_boundary_matrix(const WeightedComplex<W>& K, int n,
                                   const std::function<R(const W&, const W&)>& ratio) {
  std::vector<VertexList> rows = chain_basis(K, n - 1);
  std::vector<VertexList> cols = chain_basis(K, n);
  std::map<VertexList, std::size_t> row_index;
  for (std::size_t i = 0; i < rows.size(); ++i) row_index[rows[i]] = i;
  Matrix<R> M(rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const VertexList& s = cols[j];
    if (s.size() < 2) continue;  // vertices map to the zero chain group below
    const W& ws = K.weight(s);
    for (std::size_t i = 0; i < s.size(); ++i) {
      VertexList f = face_of(s, i);
      R r = ratio(ws, K.weight(f));
      if (i % 2) r = -r;
      M.at(row_index.at(f), j) = M.at(row_index.at(f), j) + r;
    }
  }
  return M;
}

inline Matrix<Int> boundary_matrix(const WeightedComplex<Int>& K, int n) {
  return weighted_boundary_matrix<Int, Int>(
      K, n, [](const Int& a, const Int& b) { return detail::weight_ratio(a, b); });
}

inline Matrix<Poly> boundary_matrix(const WeightedComplex<Poly>& K, int n) {
  return weighted_boundary_matrix<Poly, Poly>(
      K, n, [](const Poly& a, const Poly& b) { return detail::weight_ratio(a, b); });
}

// Multivariate weights: every boundary ratio is computed exactly; the full
// grid of ratios then decides which computational ring suffices.
//   - all ratios constant             -> integer matrices (constants must be integers)
//   - ratios use at most one variable -> univariate matrices in that variable
//   - otherwise                       -> unsupported (genuinely multivariate ratios)
enum class CastRing { Integer, Univariate, None };

struct CastDecision {
  CastRing ring = CastRing::Integer;
  std::size_t variable = 0;  // meaningful when ring == Univariate
};

inline CastDecision decide_cast(const WeightedComplex<MPoly>& K) {
  CastDecision d;
  bool have_var = false;
  int top = K.dim();
  for (int n = 1; n <= top; ++n) {
    for (const VertexList& s : chain_basis(K, n)) {
      const MPoly& ws = K.weight(s);
      for (std::size_t i = 0; i < s.size(); ++i) {
        MPoly r = detail::weight_ratio(ws, K.weight(face_of(s, i)));
        for (std::size_t v : mpoly_used_vars(r)) {
          if (!have_var) {
            have_var = true;
            d.ring = CastRing::Univariate;
            d.variable = v;
          } else if (d.ring == CastRing::Univariate && v != d.variable) {
            d.ring = CastRing::None;
            return d;
          }
        }
      }
    }
  }
  if (d.ring == CastRing::Integer) {
    // Constants must be integers for the integral engine.
    for (int n = 1; n <= top; ++n) {
      for (const VertexList& s : chain_basis(K, n)) {
        const MPoly& ws = K.weight(s);
        for (std::size_t i = 0; i < s.size(); ++i) {
          MPoly r = detail::weight_ratio(ws, K.weight(face_of(s, i)));
          Rat c = r.constant_value();
          if (c.get_den() != 1)
            throw SemanticError("boundary ratio is a non-integer constant");
        }
      }
    }
  }
  return d;
}

inline Matrix<Int> boundary_matrix_cast_int(const WeightedComplex<MPoly>& K, int n) {
  return weighted_boundary_matrix<Int, MPoly>(K, n, [](const MPoly& a, const MPoly& b) {
    MPoly q(b.nvars);
    if (!mpoly_try_div(a, b, q))
      throw SemanticError("face weight does not divide simplex weight");
    Rat c = q.constant_value();
    if (c.get_den() != 1) throw SemanticError("boundary ratio is a non-integer constant");
    return Int(c.get_num());
  });
}

inline Matrix<Poly> boundary_matrix_cast_poly(const WeightedComplex<MPoly>& K, int n,
                                              std::size_t var) {
  return weighted_boundary_matrix<Poly, MPoly>(K, n, [var](const MPoly& a, const MPoly& b) {
    MPoly q(b.nvars);
    if (!mpoly_try_div(a, b, q))
      throw SemanticError("face weight does not divide simplex weight");
    return mpoly_to_poly(q, var);
  });
}

}  // namespace wph
