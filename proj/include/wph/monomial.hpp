#pragma once

// Monomials over a fixed variable list and multivariate polynomials with
// rational coefficients. Scope is deliberately narrow: exact arithmetic,
// exact division, and monomial-ideal membership (a polynomial lies in a
// monomial ideal iff every term is divisible by some generator).

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "wph/poly.hpp"
#include "wph/ring.hpp"

namespace wph {

// Exponent vector over a fixed variable list (index = variable).
struct Monomial {
  std::vector<unsigned> e;

  explicit Monomial(std::size_t nvars = 0) : e(nvars, 0) {}
  std::size_t nvars() const { return e.size(); }
  unsigned total_degree() const {
    unsigned t = 0;
    for (unsigned x : e) t += x;
    return t;
  }
  bool is_one() const { return total_degree() == 0; }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
  // Fixed term order: graded, then lexicographic (descending use is up to the caller).
  friend bool operator<(const Monomial& a, const Monomial& b) {
    if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
    return a.e < b.e;
  }
  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r(a.e.size());
    for (std::size_t i = 0; i < a.e.size(); ++i) r.e[i] = a.e[i] + b.e[i];
    return r;
  }
};

inline bool monomial_divides(const Monomial& m1, const Monomial& m2) {  // m1 | m2
  if (m1.e.size() != m2.e.size()) throw SemanticError("monomial variable-count mismatch");
  for (std::size_t i = 0; i < m1.e.size(); ++i)
    if (m1.e[i] > m2.e[i]) return false;
  return true;
}

inline Monomial monomial_div(const Monomial& m2, const Monomial& m1) {  // m2 / m1
  if (!monomial_divides(m1, m2)) throw SemanticError("inexact monomial division");
  Monomial r(m1.e.size());
  for (std::size_t i = 0; i < m1.e.size(); ++i) r.e[i] = m2.e[i] - m1.e[i];
  return r;
}

// Terms sorted by descending monomial order, no zero coefficients, no
// duplicate monomials; the zero polynomial is the empty list.
struct MPoly {
  std::vector<std::pair<Monomial, Rat>> terms;
  std::size_t nvars = 0;

  explicit MPoly(std::size_t nv = 0) : nvars(nv) {}
  static MPoly constant(const Rat& c, std::size_t nv) {
    MPoly p(nv);
    if (c != 0) p.terms.emplace_back(Monomial(nv), c);
    return p;
  }
  static MPoly monomial(const Monomial& m, const Rat& c) {
    MPoly p(m.nvars());
    if (c != 0) p.terms.emplace_back(m, c);
    return p;
  }

  bool is_zero() const { return terms.empty(); }
  bool is_constant() const { return terms.empty() || (terms.size() == 1 && terms[0].first.is_one()); }
  Rat constant_value() const { return terms.empty() ? Rat(0) : terms[0].second; }

  void normalize() {
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return b.first < a.first; });
    std::vector<std::pair<Monomial, Rat>> out;
    for (auto& t : terms) {
      if (!out.empty() && out.back().first == t.first) {
        out.back().second += t.second;
      } else {
        out.push_back(t);
      }
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const auto& t) { return t.second == 0; }),
              out.end());
    terms = std::move(out);
  }

  friend bool operator==(const MPoly& a, const MPoly& b) {
    return a.nvars == b.nvars && a.terms == b.terms;
  }
  friend MPoly operator+(const MPoly& a, const MPoly& b) {
    MPoly r(std::max(a.nvars, b.nvars));
    r.terms = a.terms;
    r.terms.insert(r.terms.end(), b.terms.begin(), b.terms.end());
    r.normalize();
    return r;
  }
  friend MPoly operator-(const MPoly& a, const MPoly& b) {
    MPoly nb = b;
    for (auto& t : nb.terms) t.second = -t.second;
    return a + nb;
  }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly r(std::max(a.nvars, b.nvars));
    for (const auto& ta : a.terms)
      for (const auto& tb : b.terms)
        r.terms.emplace_back(ta.first * tb.first, ta.second * tb.second);
    r.normalize();
    return r;
  }
};

// Exact division a / b; returns false if b does not divide a. Leading-term
// peeling in the fixed order: correct for a single divisor because term
// orders are multiplicative.
inline bool mpoly_try_div(const MPoly& a, const MPoly& b, MPoly& q) {
  if (b.is_zero()) throw SemanticError("division by zero polynomial");
  q = MPoly(a.nvars);
  MPoly r = a;
  while (!r.is_zero()) {
    const auto& lt_r = r.terms.front();
    const auto& lt_b = b.terms.front();
    if (!monomial_divides(lt_b.first, lt_r.first)) return false;
    MPoly t = MPoly::monomial(monomial_div(lt_r.first, lt_b.first), lt_r.second / lt_b.second);
    q = q + t;
    r = r - t * b;
  }
  return true;
}

inline bool mpoly_divides(const MPoly& a, const MPoly& b) {  // a | b
  if (a.is_zero()) return b.is_zero();
  MPoly q;
  return mpoly_try_div(b, a, q);
}

inline MPoly mpoly_exact_div(const MPoly& a, const MPoly& b) {
  MPoly q;
  if (!mpoly_try_div(a, b, q)) throw SemanticError("inexact polynomial division");
  return q;
}

// Membership in the monomial ideal generated by gens: every term of f must
// be divisible by some generator. The zero polynomial is in every ideal; the
// empty generator list is the zero ideal.
inline bool monomial_ideal_contains(const std::vector<Monomial>& gens, const MPoly& f) {
  if (f.is_zero()) return true;
  if (gens.empty()) return false;
  for (const auto& t : f.terms) {
    bool hit = false;
    for (const Monomial& g : gens) {
      if (monomial_divides(g, t.first)) {
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return true;
}

// Variables actually used (nonzero exponent in some term).
inline std::vector<std::size_t> mpoly_used_vars(const MPoly& p) {
  std::vector<std::size_t> used;
  for (std::size_t v = 0; v < p.nvars; ++v) {
    for (const auto& t : p.terms) {
      if (t.first.e[v] != 0) {
        used.push_back(v);
        break;
      }
    }
  }
  return used;
}

// Cast to a univariate polynomial in variable `var`; requires every term to
// use only that variable.
inline Poly mpoly_to_poly(const MPoly& p, std::size_t var) {
  std::vector<Rat> c;
  for (const auto& t : p.terms) {
    for (std::size_t v = 0; v < t.first.e.size(); ++v) {
      if (v != var && t.first.e[v] != 0)
        throw SemanticError("polynomial is not univariate");
    }
    unsigned d = var < t.first.e.size() ? t.first.e[var] : 0;
    if (c.size() < d + 1) c.resize(d + 1, Rat(0));
    c[d] += t.second;
  }
  return Poly::from_coeffs(std::move(c));
}

inline std::string mpoly_to_string(const MPoly& p, const std::vector<std::string>& vars) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [m, coeff] : p.terms) {
    bool neg = coeff < 0;
    Rat mag = neg ? Rat(-coeff) : coeff;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    std::string mono;
    for (std::size_t v = 0; v < m.e.size(); ++v) {
      if (m.e[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars.at(v);
      if (m.e[v] > 1) mono += "^" + std::to_string(m.e[v]);
    }
    if (mono.empty()) {
      out += rat_to_string(mag);
    } else if (mag == 1) {
      out += mono;
    } else {
      out += rat_to_string(mag) + "*" + mono;
    }
  }
  return out;
}

}  // namespace wph
