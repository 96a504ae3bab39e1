#pragma once

// Weighted simplicial complexes: vertex-sorted simplices carrying ring
// weights with the divisibility condition (a face's weight divides every
// coface's weight), validation, subcomplexes, clique complexes, and
// filtrations as birth-indexed complexes.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "wph/monomial.hpp"
#include "wph/poly.hpp"
#include "wph/ring.hpp"

namespace wph {

// A simplex is its strictly increasing vertex-id list; dimension = size - 1.
using VertexList = std::vector<int>;

inline VertexList sorted_simplex(VertexList v) {
  std::sort(v.begin(), v.end());
  if (std::adjacent_find(v.begin(), v.end()) != v.end())
    throw SemanticError("simplex with repeated vertices");
  if (v.empty()) throw SemanticError("empty simplex");
  return v;
}

// The i-th face: delete the i-th vertex of the sorted list.
inline VertexList face_of(const VertexList& s, std::size_t i) {
  VertexList f;
  f.reserve(s.size() - 1);
  for (std::size_t k = 0; k < s.size(); ++k)
    if (k != i) f.push_back(s[k]);
  return f;
}

inline std::string simplex_to_string(const VertexList& s,
                                     const std::vector<std::string>& labels) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += (s[i] >= 0 && static_cast<std::size_t>(s[i]) < labels.size())
               ? labels[s[i]]
               : std::to_string(s[i]);
  }
  return out + "]";
}

// Weight divisibility predicate per weight ring.
inline bool weight_divides(const Int& a, const Int& b) { return ring_traits<Int>::divides(a, b); }
inline bool weight_divides(const Poly& a, const Poly& b) { return ring_traits<Poly>::divides(a, b); }
inline bool weight_divides(const MPoly& a, const MPoly& b) { return mpoly_divides(a, b); }
inline bool weight_is_zero(const Int& a) { return ring_traits<Int>::is_zero(a); }
inline bool weight_is_zero(const Poly& a) { return a.is_zero(); }
inline bool weight_is_zero(const MPoly& a) { return a.is_zero(); }

template <class W>
struct WeightedComplex {
  using weight_type = W;

  std::vector<std::string> vertex_labels;        // vertex id = index
  std::map<VertexList, W> simplices;             // face-closed; key order is the chain order
  std::vector<std::string> variables;            // declared variables (polynomial weights)
  static constexpr std::size_t kMaxSimplices = 100000;  // finiteness cap

  bool contains(const VertexList& s) const { return simplices.count(s) != 0; }
  const W& weight(const VertexList& s) const {
    auto it = simplices.find(s);
    if (it == simplices.end())
      throw SemanticError("unknown simplex " + simplex_to_string(s, vertex_labels));
    return it->second;
  }
  int dim() const {
    int d = -1;
    for (const auto& [s, w] : simplices) d = std::max<int>(d, static_cast<int>(s.size()) - 1);
    return d;
  }
  std::size_t size() const { return simplices.size(); }

  void insert(const VertexList& s, const W& w) {
    if (simplices.size() >= kMaxSimplices) throw SemanticError("complex exceeds the size cap");
    simplices[sorted_simplex(s)] = w;
  }

  // Add all missing faces with weight 1 (permitted since 1 divides
  // everything); opt-in convenience for data entry.
  void close_with_unit_faces(const W& one) {
    std::vector<VertexList> work;
    for (const auto& [s, w] : simplices) work.push_back(s);
    for (std::size_t k = 0; k < work.size(); ++k) {
      const VertexList s = work[k];
      if (s.size() < 2) continue;
      for (std::size_t i = 0; i < s.size(); ++i) {
        VertexList f = face_of(s, i);
        if (!contains(f)) {
          insert(f, one);
          work.push_back(f);
        }
      }
    }
  }
};

struct ValidationReport {
  std::vector<std::string> face_violations;
  std::vector<std::string> divisibility_violations;
  std::vector<std::string> zero_weight_warnings;  // warnings, not errors
  bool valid() const { return face_violations.empty() && divisibility_violations.empty(); }
};

// Diagnostic pass: facet-level checks certify the whole complex because
// face containment and weight divisibility are both transitive.
template <class W>
ValidationReport validate(const WeightedComplex<W>& K) {
  ValidationReport rep;
  for (const auto& [s, w] : K.simplices) {
    if (weight_is_zero(w))
      rep.zero_weight_warnings.push_back("zero weight on " +
                                         simplex_to_string(s, K.vertex_labels));
    if (s.size() < 2) continue;
    for (std::size_t i = 0; i < s.size(); ++i) {
      VertexList f = face_of(s, i);
      auto it = K.simplices.find(f);
      if (it == K.simplices.end()) {
        rep.face_violations.push_back("missing face " + simplex_to_string(f, K.vertex_labels) +
                                      " of " + simplex_to_string(s, K.vertex_labels));
      } else if (!weight_divides(it->second, w)) {
        rep.divisibility_violations.push_back(
            "weight of " + simplex_to_string(f, K.vertex_labels) + " does not divide weight of " +
            simplex_to_string(s, K.vertex_labels));
      }
    }
  }
  return rep;
}

// {sigma in K : w(sigma) not in I} for a predicate in_ideal; face-closed by
// the ideal property of the excluded set (re-validated defensively).
template <class W>
WeightedComplex<W> subcomplex_where(const WeightedComplex<W>& K,
                                    const std::function<bool(const W&)>& in_ideal) {
  WeightedComplex<W> out;
  out.vertex_labels = K.vertex_labels;
  out.variables = K.variables;
  for (const auto& [s, w] : K.simplices)
    if (!in_ideal(w)) out.simplices.emplace(s, w);
  ValidationReport rep = validate(out);
  if (!rep.face_violations.empty())
    throw SemanticError("ideal exclusion produced a non-closed set: " + rep.face_violations[0]);
  return out;
}

// Integer principal ideal (g), generator lists collapsed by gcd; g = 0 is
// the zero ideal, g a unit is the whole ring.
inline WeightedComplex<Int> subcomplex_excluding_ideal(const WeightedComplex<Int>& K,
                                                       const std::vector<Int>& ideal_gens) {
  Int g(0);
  for (const Int& x : ideal_gens) g = ring_traits<Int>::gcd(g, x);
  return subcomplex_where<Int>(K, [g](const Int& w) {
    if (ring_traits<Int>::is_zero(g)) return ring_traits<Int>::is_zero(w);
    return ring_traits<Int>::divides(g, w);
  });
}

// Monomial-ideal variant (generator lists are kept, not collapsed).
inline WeightedComplex<MPoly> subcomplex_excluding_ideal(const WeightedComplex<MPoly>& K,
                                                         const std::vector<Monomial>& gens) {
  return subcomplex_where<MPoly>(
      K, [&gens](const MPoly& w) { return monomial_ideal_contains(gens, w); });
}

// Build counter for clique complexes: exposed so pipelines can assert the
// expensive enumeration runs exactly once per input graph.
inline std::atomic<unsigned long> clique_build_counter{0};

// All cliques of the simple graph as simplices, up to dimension max_dim.
inline std::vector<VertexList> clique_complex(int n_vertices,
                                              const std::vector<std::pair<int, int>>& edges,
                                              int max_dim) {
  clique_build_counter.fetch_add(1, std::memory_order_relaxed);
  std::set<std::pair<int, int>> eset;
  std::vector<std::vector<char>> adj(n_vertices, std::vector<char>(n_vertices, 0));
  for (auto [u, v] : edges) {
    if (u == v) throw SemanticError("self-loop in graph");
    if (u < 0 || v < 0 || u >= n_vertices || v >= n_vertices)
      throw SemanticError("edge endpoint out of range");
    auto key = std::minmax(u, v);
    if (!eset.insert(key).second) throw SemanticError("duplicate edge in graph");
    adj[u][v] = adj[v][u] = 1;
  }
  std::vector<VertexList> out, frontier;
  for (int v = 0; v < n_vertices; ++v) frontier.push_back({v});
  while (!frontier.empty()) {
    for (const VertexList& c : frontier) out.push_back(c);
    if (static_cast<int>(frontier.front().size()) > max_dim) break;
    std::vector<VertexList> next;
    for (const VertexList& c : frontier) {
      if (static_cast<int>(c.size()) == max_dim + 1) continue;
      for (int v = c.back() + 1; v < n_vertices; ++v) {
        bool all = true;
        for (int u : c)
          if (!adj[u][v]) {
            all = false;
            break;
          }
        if (all) {
          VertexList cc = c;
          cc.push_back(v);
          next.push_back(cc);
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// A filtration: the final complex plus a birth step per simplex. Step i is
// the face-closed subcomplex of simplices born at or before i.
template <class W>
struct FilteredComplex {
  WeightedComplex<W> complex;
  std::map<VertexList, int> birth;
  int steps = 0;

  void check() const {
    for (const auto& [s, w] : complex.simplices) {
      auto it = birth.find(s);
      if (it == birth.end()) throw SemanticError("simplex without a birth index");
      if (it->second < 0 || it->second >= steps) throw SemanticError("birth index out of range");
      if (s.size() >= 2) {
        for (std::size_t i = 0; i < s.size(); ++i) {
          auto fit = birth.find(face_of(s, i));
          if (fit == birth.end() || fit->second > it->second)
            throw SemanticError("face born after its coface");
        }
      }
    }
  }
};

template <class W>
WeightedComplex<W> step_complex(const FilteredComplex<W>& F, int i) {
  if (i < 0 || i >= F.steps) throw SemanticError("filtration step out of range");
  WeightedComplex<W> out;
  out.vertex_labels = F.complex.vertex_labels;
  out.variables = F.complex.variables;
  for (const auto& [s, w] : F.complex.simplices)
    if (F.birth.at(s) <= i) out.simplices.emplace(s, w);
  return out;
}

}  // namespace wph
