#pragma once

// Deterministic random generation of test corpora: weighted complexes whose
// weights are divisor-closed (so the divisibility condition holds by
// construction), filtrations, covers, graphs, and matrices. All draws go
// through rng() % n on a std::mt19937_64, never through distribution
// objects, so a fixed seed yields identical corpora on every platform.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wph/builders.hpp"
#include "wph/complex.hpp"
#include "wph/matrix.hpp"
#include "wph/monomial.hpp"
#include "wph/poly.hpp"
#include "wph/ring.hpp"

namespace wph {

using Rng = std::mt19937_64;

namespace detail {

inline std::size_t pick(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

template <class T>
const T& pick_from(Rng& rng, const std::vector<T>& v) {
  return v[pick(rng, v.size())];
}

inline std::vector<Int> divisors_of(const Int& m) {
  std::vector<Int> out;
  for (Int d = 1; d <= m; d = d + 1)
    if (ring_traits<Int>::divides(d, m)) out.push_back(d);
  return out;
}

}  // namespace detail

struct ComplexGenOptions {
  int max_vertices = 7;
  int max_dim = 3;
  std::size_t max_simplices = 40;
  Int weight_modulus = 12;  // weights are divisors of this
};

// A random simplicial complex with weight 1 everywhere: random facets,
// closed downward, capped in size.
inline WeightedComplex<Int> random_complex_shape(Rng& rng, const ComplexGenOptions& opt) {
  int n = 1 + static_cast<int>(detail::pick(rng, static_cast<std::size_t>(opt.max_vertices)));
  WeightedComplex<Int> K;
  for (int v = 0; v < n; ++v) K.vertex_labels.push_back("v" + std::to_string(v));
  std::set<VertexList> have;
  auto close_down = [&](const VertexList& s) {
    std::vector<VertexList> work = {s};
    std::set<VertexList> added;
    while (!work.empty()) {
      VertexList t = work.back();
      work.pop_back();
      if (have.count(t) || added.count(t)) continue;
      added.insert(t);
      if (t.size() >= 2)
        for (std::size_t i = 0; i < t.size(); ++i) work.push_back(face_of(t, i));
    }
    return added;
  };
  // Always include every vertex so the labels are honest.
  for (int v = 0; v < n; ++v) have.insert({v});
  std::size_t facets = n >= 2 ? 1 + detail::pick(rng, static_cast<std::size_t>(2 * n)) : 0;
  for (std::size_t f = 0; f < facets; ++f) {
    std::size_t size =
        2 + detail::pick(rng, static_cast<std::size_t>(std::min(opt.max_dim, n - 1)));
    std::set<int> verts;
    while (verts.size() < size) verts.insert(static_cast<int>(detail::pick(rng, n)));
    VertexList s(verts.begin(), verts.end());
    std::set<VertexList> add = close_down(s);
    if (have.size() + add.size() > opt.max_simplices) continue;
    have.insert(add.begin(), add.end());
  }
  for (const VertexList& s : have) K.simplices[s] = Int(1);
  return K;
}

// Reweight in place: each simplex gets a random divisor of the modulus that
// is a multiple of the lcm of its facet weights. Divisor sets are closed
// under lcm, so a candidate always exists and divisibility holds exactly.
inline void assign_divisor_weights(Rng& rng, WeightedComplex<Int>& K, const Int& modulus) {
  std::vector<Int> divs = detail::divisors_of(modulus);
  std::vector<VertexList> order;
  for (const auto& [s, w] : K.simplices) order.push_back(s);
  std::sort(order.begin(), order.end(), [](const VertexList& a, const VertexList& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  for (const VertexList& s : order) {
    Int need(1);
    if (s.size() >= 2)
      for (std::size_t i = 0; i < s.size(); ++i) {
        Int g, l = K.weight(face_of(s, i));
        mpz_gcd(g.get_mpz_t(), need.get_mpz_t(), l.get_mpz_t());
        need = need / g * l;  // lcm
      }
    std::vector<Int> ok;
    for (const Int& d : divs)
      if (ring_traits<Int>::divides(need, d)) ok.push_back(d);
    K.simplices[s] = detail::pick_from(rng, ok);
  }
}

inline WeightedComplex<Int> random_weighted_complex(Rng& rng, const ComplexGenOptions& opt) {
  WeightedComplex<Int> K = random_complex_shape(rng, opt);
  assign_divisor_weights(rng, K, opt.weight_modulus);
  return K;
}

// Polynomial analogue: weights x^a * (x+1)^b with exponents drawn so that
// faces divide cofaces (componentwise max over faces, plus a random bump).
inline WeightedComplex<MPoly> random_poly_complex(Rng& rng, const ComplexGenOptions& opt,
                                                  unsigned max_exp = 2) {
  WeightedComplex<Int> shape = random_complex_shape(rng, opt);
  WeightedComplex<MPoly> K;
  K.vertex_labels = shape.vertex_labels;
  K.variables = {"x"};
  Monomial mx(1);
  mx.e[0] = 1;
  MPoly x = MPoly::monomial(mx, Rat(1));
  MPoly xp1 = x + MPoly::constant(Rat(1), 1);
  std::map<VertexList, std::pair<unsigned, unsigned>> exps;
  std::vector<VertexList> order;
  for (const auto& [s, w] : shape.simplices) order.push_back(s);
  std::sort(order.begin(), order.end(), [](const VertexList& a, const VertexList& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  for (const VertexList& s : order) {
    unsigned a = 0, b = 0;
    if (s.size() >= 2)
      for (std::size_t i = 0; i < s.size(); ++i) {
        auto [fa, fb] = exps.at(face_of(s, i));
        a = std::max(a, fa);
        b = std::max(b, fb);
      }
    a = std::min(max_exp, a + static_cast<unsigned>(detail::pick(rng, 2)));
    b = std::min(max_exp, b + static_cast<unsigned>(detail::pick(rng, 2)));
    exps[s] = {a, b};
    MPoly w = MPoly::constant(Rat(1), 1);
    for (unsigned i = 0; i < a; ++i) w = w * x;
    for (unsigned i = 0; i < b; ++i) w = w * xp1;
    K.simplices[s] = w;
  }
  return K;
}

// A random filtration of K: birth = max(face births, random step).
template <class W>
FilteredComplex<W> random_filtration(Rng& rng, const WeightedComplex<W>& K, int steps) {
  FilteredComplex<W> F;
  F.complex = K;
  F.steps = steps;
  std::vector<VertexList> order;
  for (const auto& [s, w] : K.simplices) order.push_back(s);
  std::sort(order.begin(), order.end(), [](const VertexList& a, const VertexList& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  for (const VertexList& s : order) {
    int b = static_cast<int>(detail::pick(rng, static_cast<std::size_t>(steps)));
    if (s.size() >= 2)
      for (std::size_t i = 0; i < s.size(); ++i)
        b = std::max(b, F.birth.at(face_of(s, i)));
    F.birth[s] = b;
  }
  F.check();
  return F;
}

// A random cover K = K0 ∪ K1: every facet goes to one side or both, then
// both sides are closed downward. Guaranteed to cover; the intersection is
// whatever the closures share.
inline std::pair<std::vector<VertexList>, std::vector<VertexList>> random_cover_parts(
    Rng& rng, const WeightedComplex<Int>& K) {
  // Facets: simplices not properly contained in another simplex.
  std::vector<VertexList> facets;
  for (const auto& [s, w] : K.simplices) {
    bool maximal = true;
    for (const auto& [t, wt] : K.simplices) {
      if (t.size() <= s.size()) continue;
      if (std::includes(t.begin(), t.end(), s.begin(), s.end())) {
        maximal = false;
        break;
      }
    }
    if (maximal) facets.push_back(s);
  }
  std::set<VertexList> side0, side1;
  auto close_into = [](std::set<VertexList>& side, const VertexList& s) {
    std::vector<VertexList> work = {s};
    while (!work.empty()) {
      VertexList t = work.back();
      work.pop_back();
      if (!side.insert(t).second) continue;
      if (t.size() >= 2)
        for (std::size_t i = 0; i < t.size(); ++i) work.push_back(face_of(t, i));
    }
  };
  for (const VertexList& f : facets) {
    switch (detail::pick(rng, 3)) {
      case 0:
        close_into(side0, f);
        break;
      case 1:
        close_into(side1, f);
        break;
      default:
        close_into(side0, f);
        close_into(side1, f);
    }
  }
  if (side0.empty()) side0 = side1;
  if (side1.empty()) side1 = side0;
  return {std::vector<VertexList>(side0.begin(), side0.end()),
          std::vector<VertexList>(side1.begin(), side1.end())};
}

// A random simple graph on up to max_vertices vertices with positive
// rational weights; duplicate weights are deliberately likely so that rank
// ties get exercised.
inline WeightedGraph random_graph(Rng& rng, int max_vertices = 12) {
  int n = 2 + static_cast<int>(detail::pick(rng, static_cast<std::size_t>(max_vertices - 1)));
  WeightedGraph G;
  for (int v = 0; v < n; ++v) G.labels.push_back("v" + std::to_string(v));
  std::vector<Rat> pool = {Rat(1), Rat(2), Rat(3), Rat(5), Rat(1, 2), Rat(3, 2), Rat(5, 4),
                           Rat(2), Rat(3)};  // repeats raise tie probability
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (detail::pick(rng, 100) < 55) G.edges.push_back({u, v, detail::pick_from(rng, pool)});
  if (G.edges.empty()) G.edges.push_back({0, 1, detail::pick_from(rng, pool)});
  G.descending = detail::pick(rng, 2) == 0;
  return G;
}

// Random matrices for algebra property tests.
inline Matrix<Int> random_int_matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound) {
  Matrix<Int> M(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      M.at(i, j) = Int(static_cast<long>(detail::pick(rng, 2 * bound + 1)) - bound);
  return M;
}

inline Poly random_poly(Rng& rng, unsigned max_deg, long bound) {
  std::vector<Rat> c(1 + detail::pick(rng, max_deg + 1));
  for (Rat& q : c) q = Rat(static_cast<long>(detail::pick(rng, 2 * bound + 1)) - bound);
  return Poly::from_coeffs(c);
}

inline Matrix<Poly> random_poly_matrix(Rng& rng, std::size_t rows, std::size_t cols,
                                       unsigned max_deg, long bound) {
  Matrix<Poly> M(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) M.at(i, j) = random_poly(rng, max_deg, bound);
  return M;
}

inline std::vector<Int> random_int_vector(Rng& rng, std::size_t n, long bound) {
  std::vector<Int> v(n);
  for (Int& x : v) x = Int(static_cast<long>(detail::pick(rng, 2 * bound + 1)) - bound);
  return v;
}

}  // namespace wph
