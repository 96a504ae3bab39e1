#pragma once

// The three filtration constructions: ideal-chain (remove simplices whose
// weights fall into a descending chain of ideals), weight-rank thresholding
// on integer weights, and the Stanley-Reisner iteration on multivariate
// polynomial weights. Plus the graph pipeline that turns a positively
// weighted simple graph into a power-of-two weighted clique complex whose
// two filtration constructions provably coincide.

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wph/complex.hpp"
#include "wph/monomial.hpp"
#include "wph/ring.hpp"

namespace wph {

namespace detail {

// Assemble a FilteredComplex from a nested list of step complexes whose
// last entry is the full complex; birth = first step containing the simplex.
template <class W>
FilteredComplex<W> filtered_from_steps(const WeightedComplex<W>& K,
                                       const std::vector<WeightedComplex<W>>& steps) {
  FilteredComplex<W> F;
  F.complex = K;
  F.steps = static_cast<int>(steps.size());
  for (const auto& [s, w] : K.simplices) {
    int b = -1;
    for (std::size_t t = 0; t < steps.size(); ++t) {
      if (steps[t].contains(s)) {
        b = static_cast<int>(t);
        break;
      }
    }
    if (b < 0) throw SemanticError("simplex missing from the final filtration step");
    F.birth[s] = b;
  }
  F.check();
  return F;
}

}  // namespace detail

// Filtration from a descending chain of principal integer ideals
// (g_1) >= (g_2) >= ... (so g_t | g_{t+1}); the whole ring is prepended and
// the zero ideal appended, making the first step empty and the last step K.
// Step t keeps the simplices whose weights avoid I_t.
inline FilteredComplex<Int> ideal_chain_filtration(const WeightedComplex<Int>& K,
                                                   const std::vector<Int>& chain) {
  using T = ring_traits<Int>;
  for (const auto& [s, w] : K.simplices)
    if (T::is_zero(w))
      throw SemanticError("ideal-chain filtration requires nonzero weights");
  for (std::size_t t = 0; t + 1 < chain.size(); ++t) {
    // (g) >= (h) over the integers means g | h; 0 generates the smallest ideal.
    if (T::is_zero(chain[t]) && !T::is_zero(chain[t + 1]))
      throw SemanticError("ideal chain is not descending");
    if (!T::is_zero(chain[t]) && !T::divides(chain[t], chain[t + 1]))
      throw SemanticError("ideal chain is not descending");
  }

  std::vector<WeightedComplex<Int>> steps;
  WeightedComplex<Int> empty;
  empty.vertex_labels = K.vertex_labels;
  empty.variables = K.variables;
  steps.push_back(empty);  // I_0 = R removes everything
  for (const Int& g : chain) {
    steps.push_back(subcomplex_where<Int>(K, [&g](const Int& w) {
      if (T::is_zero(g)) return T::is_zero(w);
      return T::divides(g, w);
    }));
  }
  steps.push_back(K);  // the zero ideal removes nothing
  return detail::filtered_from_steps(K, steps);
}

// Monomial-ideal variant for the polynomial path: each chain entry is a
// generator list; containment must be descending (every generator of the
// next ideal lies in the previous one).
inline FilteredComplex<MPoly> ideal_chain_filtration(
    const WeightedComplex<MPoly>& K, const std::vector<std::vector<Monomial>>& chain) {
  for (const auto& [s, w] : K.simplices)
    if (w.is_zero()) throw SemanticError("ideal-chain filtration requires nonzero weights");
  for (std::size_t t = 0; t + 1 < chain.size(); ++t)
    for (const Monomial& g : chain[t + 1])
      if (!monomial_ideal_contains(chain[t], MPoly::monomial(g, Rat(1))))
        throw SemanticError("ideal chain is not descending");

  std::vector<WeightedComplex<MPoly>> steps;
  WeightedComplex<MPoly> empty;
  empty.vertex_labels = K.vertex_labels;
  empty.variables = K.variables;
  steps.push_back(empty);
  for (const auto& gens : chain) {
    steps.push_back(subcomplex_where<MPoly>(
        K, [&gens](const MPoly& w) { return monomial_ideal_contains(gens, w); }));
  }
  steps.push_back(K);
  return detail::filtered_from_steps(K, steps);
}

// Weight-rank filtration on positive integer weights: thresholds are the
// sorted distinct weights; step t keeps weights strictly below the (t+1)-th
// threshold, and the final step is the whole complex. The first step is
// always empty (nothing is below the minimum weight).
inline FilteredComplex<Int> wrs_filtration(const WeightedComplex<Int>& K) {
  std::set<Int> distinct;
  for (const auto& [s, w] : K.simplices) {
    if (w <= 0) throw SemanticError("weight-rank filtration requires positive weights");
    distinct.insert(w);
  }
  std::vector<Int> eps(distinct.begin(), distinct.end());

  std::vector<WeightedComplex<Int>> steps;
  for (const Int& e : eps)
    steps.push_back(subcomplex_where<Int>(K, [&e](const Int& w) { return !(w < e); }));
  steps.push_back(K);
  return detail::filtered_from_steps(K, steps);
}

// Checks the equivalence of the two constructions on a complex whose
// distinct weights form a divisibility chain w_1 | w_2 | ...: thresholding
// must produce the same birth map as the ideal chain (w_2) >= (w_3) >= ...
// (the first weight's ideal is dropped because the prepended whole ring
// already provides the empty step).
inline bool check_ideal_equivalence(const WeightedComplex<Int>& K) {
  std::set<Int> distinct;
  for (const auto& [s, w] : K.simplices) {
    if (w <= 0) throw SemanticError("equivalence check requires positive weights");
    distinct.insert(w);
  }
  std::vector<Int> ws(distinct.begin(), distinct.end());
  for (std::size_t i = 0; i + 1 < ws.size(); ++i)
    if (!ring_traits<Int>::divides(ws[i], ws[i + 1]))
      throw SemanticError("weights are not totally ordered by divisibility");

  FilteredComplex<Int> a = wrs_filtration(K);
  std::vector<Int> tail(ws.begin() + (ws.empty() ? 0 : 1), ws.end());
  FilteredComplex<Int> b = ideal_chain_filtration(K, tail);
  return a.steps == b.steps && a.birth == b.birth;
}

// A simple graph with strictly positive rational edge weights and a rank
// direction: descending means the heaviest weight gets rank 1.
struct WeightedGraph {
  std::vector<std::string> labels;
  struct Edge {
    int u = 0, v = 0;
    Rat weight;
  };
  std::vector<Edge> edges;
  bool descending = true;

  int order() const { return static_cast<int>(labels.size()); }
};

// Graph pipeline: build the clique complex once, then weight it with powers
// of two — vertices get exponent 0, each edge the 1-based rank of its graph
// weight among the distinct weights (equal weights share a rank), and every
// higher simplex the sum of the exponents of its edges. The divisibility
// condition holds by construction since a face's exponent never exceeds a
// coface's.
inline WeightedComplex<Int> graph_to_weighted_clique(const WeightedGraph& G, int max_dim) {
  std::set<Rat> distinct;
  std::vector<std::pair<int, int>> plain;
  for (const auto& e : G.edges) {
    if (e.weight <= 0) throw SemanticError("graph weights must be strictly positive");
    distinct.insert(e.weight);
    plain.emplace_back(e.u, e.v);
  }
  std::vector<Rat> order(distinct.begin(), distinct.end());
  if (G.descending) std::reverse(order.begin(), order.end());
  std::map<Rat, unsigned long> rank;
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i + 1;

  std::map<std::pair<int, int>, unsigned long> edge_exp;
  for (const auto& e : G.edges) edge_exp[std::minmax(e.u, e.v)] = rank.at(e.weight);

  std::vector<VertexList> cliques = clique_complex(G.order(), plain, max_dim);

  WeightedComplex<Int> K;
  K.vertex_labels = G.labels;
  for (const VertexList& s : cliques) {
    unsigned long exp = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j) exp += edge_exp.at({s[i], s[j]});
    K.insert(s, int_pow(Int(2), exp));
  }
  return K;
}

// Stanley-Reisner machinery. Vertex i corresponds to variable i; a complex
// covered by these routines must declare exactly one variable per vertex.

// Minimal generators of the Stanley-Reisner ideal of K inside the ambient
// variable ring: one singleton monomial per absent vertex, plus the minimal
// non-faces of size >= 2 among present vertices (every proper subset one
// element smaller is a face).
inline std::vector<Monomial> stanley_reisner_generators(const WeightedComplex<MPoly>& K) {
  const std::size_t nv = K.vertex_labels.size();
  std::vector<Monomial> gens;
  std::vector<int> present;
  for (std::size_t v = 0; v < nv; ++v) {
    if (K.contains({static_cast<int>(v)})) {
      present.push_back(static_cast<int>(v));
    } else {
      Monomial m(nv);
      m.e[v] = 1;
      gens.push_back(m);
    }
  }
  // Breadth-first over subset sizes; supersets of a found non-face are never
  // minimal, and requiring all (k-1)-subsets to be faces prunes them cheaply.
  std::vector<VertexList> current;
  for (int v : present) current.push_back({v});
  while (!current.empty()) {
    std::vector<VertexList> next;
    std::set<VertexList> seen;
    for (const VertexList& f : current) {
      for (int v : present) {
        if (v <= f.back()) continue;
        VertexList g = f;
        g.push_back(v);
        if (!seen.insert(g).second) continue;
        bool subsets_are_faces = true;
        for (std::size_t i = 0; i < g.size() && subsets_are_faces; ++i)
          if (!K.contains(face_of(g, i))) subsets_are_faces = false;
        if (!subsets_are_faces) continue;
        if (K.contains(g)) {
          next.push_back(g);
        } else {
          Monomial m(nv);
          for (int u : g) m.e[u] = 1;
          gens.push_back(m);
        }
      }
    }
    current = std::move(next);
  }
  std::sort(gens.begin(), gens.end());
  return gens;
}

// The Stanley-Reisner filtration: iterate "remove every simplex whose weight
// lies in the Stanley-Reisner ideal of the current complex" until the
// complex stabilizes, then re-index the descending sequence ascending (the
// stabilized complex is step 0 and the input is the final step). The ideal
// generator lists are reported per ascending step.
struct StanleyReisnerResult {
  FilteredComplex<MPoly> filtration;
  std::vector<std::vector<Monomial>> step_generators;  // aligned with ascending steps
};

inline StanleyReisnerResult stanley_reisner_filtration(const WeightedComplex<MPoly>& K) {
  const std::size_t nv = K.vertex_labels.size();
  if (K.variables.size() != nv)
    throw SemanticError("Stanley-Reisner weights need exactly one variable per vertex");
  for (const auto& [s, w] : K.simplices) {
    if (w.nvars != nv) throw SemanticError("weight uses an undeclared variable");
  }

  std::vector<WeightedComplex<MPoly>> descending{K};
  std::vector<std::vector<Monomial>> descending_gens;
  for (;;) {
    const WeightedComplex<MPoly>& cur = descending.back();
    std::vector<Monomial> gens = stanley_reisner_generators(cur);
    descending_gens.push_back(gens);
    WeightedComplex<MPoly> next = subcomplex_where<MPoly>(
        cur, [&gens](const MPoly& w) { return monomial_ideal_contains(gens, w); });
    if (next.simplices == cur.simplices) break;
    descending.push_back(std::move(next));
    if (descending.size() > K.simplices.size() + 2)
      throw std::logic_error("Stanley-Reisner iteration failed to stabilize");
  }

  StanleyReisnerResult out;
  std::vector<WeightedComplex<MPoly>> ascending(descending.rbegin(), descending.rend());
  out.filtration = detail::filtered_from_steps(K, ascending);
  for (std::size_t j = 0; j < ascending.size(); ++j)
    out.step_generators.push_back(descending_gens[descending.size() - 1 - j]);
  return out;
}

}  // namespace wph
