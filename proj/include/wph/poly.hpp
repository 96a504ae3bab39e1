#pragma once

// Dense univariate polynomials over the rationals: the second Euclidean
// domain of the artifact. Coefficient index = degree; the leading
// coefficient is nonzero unless the polynomial is zero (empty vector).

#include <algorithm>
#include <string>
#include <vector>

#include "wph/ring.hpp"

namespace wph {

struct Poly {
  std::vector<Rat> c;

  Poly() = default;
  explicit Poly(const Rat& r) {
    if (r != 0) c.push_back(r);
  }
  explicit Poly(long n) : Poly(Rat(n)) {}
  static Poly x(unsigned degree = 1, const Rat& coeff = Rat(1)) {
    Poly p;
    if (coeff != 0) {
      p.c.assign(degree + 1, Rat(0));
      p.c[degree] = coeff;
    }
    return p;
  }
  static Poly from_coeffs(std::vector<Rat> v) {
    Poly p;
    p.c = std::move(v);
    p.trim();
    return p;
  }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c.empty(); }
  Rat lc() const { return c.empty() ? Rat(0) : c.back(); }
  Rat coeff(std::size_t i) const { return i < c.size() ? c[i] : Rat(0); }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
  // Total order for use as map keys: by degree, then coefficients.
  friend bool operator<(const Poly& a, const Poly& b) {
    if (a.c.size() != b.c.size()) return a.c.size() < b.c.size();
    for (std::size_t i = a.c.size(); i-- > 0;)
      if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
    return false;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), Rat(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    r.trim();
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), Rat(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
    r.trim();
    return r;
  }
  friend Poly operator-(const Poly& a) {
    Poly r = a;
    for (auto& x : r.c) x = -x;
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    Poly r;
    r.c.assign(a.c.size() + b.c.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.trim();
    return r;
  }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly derivative() const {
    Poly r;
    for (std::size_t i = 1; i < c.size(); ++i) r.c.push_back(Rat(static_cast<long>(i)) * c[i]);
    r.trim();
    return r;
  }

  Rat eval(const Rat& v) const {
    Rat acc(0);
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * v + c[i];
    return acc;
  }
};

inline void poly_divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  if (b.is_zero()) throw SemanticError("division by zero polynomial");
  q = Poly();
  r = a;
  if (a.degree() >= b.degree()) q.c.assign(a.degree() - b.degree() + 1, Rat(0));
  while (!r.is_zero() && r.degree() >= b.degree()) {
    std::size_t shift = r.degree() - b.degree();
    Rat f = r.lc() / b.lc();
    q.c[shift] += f;
    // r -= f * x^shift * b
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i + shift] -= f * b.c[i];
    r.trim();
  }
  q.trim();
}

template <>
struct ring_traits<Poly> {
  static Poly zero() { return Poly(); }
  static Poly one() { return Poly(Rat(1)); }
  static bool is_zero(const Poly& a) { return a.is_zero(); }
  static bool is_unit(const Poly& a) { return a.degree() == 0; }

  static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) { poly_divmod(a, b, q, r); }

  static Poly mod_canonical(const Poly& a, const Poly& b) {
    Poly q, r;
    poly_divmod(a, b, q, r);
    return r;
  }

  static bool divides(const Poly& a, const Poly& b) {  // a | b
    if (a.is_zero()) return b.is_zero();
    Poly q, r;
    poly_divmod(b, a, q, r);
    return r.is_zero();
  }

  static Poly exact_div(const Poly& a, const Poly& b) {
    Poly q, r;
    poly_divmod(a, b, q, r);
    if (!r.is_zero()) throw SemanticError("inexact polynomial division");
    return q;
  }

  static bool norm_less(const Poly& a, const Poly& b) { return a.degree() < b.degree(); }

  // Unit u (a constant) such that a*u is monic.
  static Poly normalizing_unit(const Poly& a) {
    if (a.is_zero()) return one();
    return Poly(Rat(1) / a.lc());
  }
  static Poly unit_inverse(const Poly& u) { return Poly(Rat(1) / u.c.at(0)); }

  static Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
      Poly q, r;
      poly_divmod(a, b, q, r);
      a = b;
      b = r;
    }
    if (!a.is_zero()) a = a * normalizing_unit(a);  // monic gcd
    return a;
  }

  // Probabilistically meaningless for polynomials; irreducibility is decided
  // by poly_irreducible below where callers need it.
  static bool is_prime(const Poly& p);

  static std::string to_string(const Poly& a);  // defined after poly_to_string
};

// Canonical rendering, descending powers: "x^2 - 1/2*x + 3".
inline std::string poly_to_string(const Poly& p, const std::string& var = "x") {
  if (p.is_zero()) return "0";
  std::string out;
  for (int d = p.degree(); d >= 0; --d) {
    Rat a = p.coeff(d);
    if (a == 0) continue;
    bool neg = a < 0;
    Rat mag = neg ? Rat(-a) : a;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    std::string term;
    if (d == 0) {
      term = rat_to_string(mag);
    } else {
      std::string xs = d == 1 ? var : var + "^" + std::to_string(d);
      term = (mag == 1) ? xs : rat_to_string(mag) + "*" + xs;
    }
    out += term;
  }
  return out;
}

inline std::string ring_traits<Poly>::to_string(const Poly& a) { return poly_to_string(a); }

// Rational roots of p (exact): candidates +-(num divisors)/(den divisors) of
// the primitive integer form, each verified by evaluation.
inline std::vector<Rat> rational_roots(const Poly& p) {
  std::vector<Rat> roots;
  if (p.is_zero() || p.degree() == 0) return roots;
  // Clear denominators to an integer polynomial.
  Int den(1);
  for (const Rat& a : p.c) den = int_lcm(den, a.get_den());
  std::vector<Int> ic;
  for (const Rat& a : p.c) ic.push_back(Int(Rat(a * den).get_num()));
  if (!ic.empty() && ic.front() == 0) {
    roots.push_back(Rat(0));
    while (!ic.empty() && ic.front() == 0) ic.erase(ic.begin());
  }
  if (ic.size() < 2) return roots;
  auto divisors = [](const Int& n) {
    std::vector<Int> ds{Int(1)};
    for (auto& [p_, e] : factorize(n)) {
      std::vector<Int> next;
      Int pk(1);
      for (unsigned k = 0; k <= e; ++k) {
        for (const Int& d : ds) next.push_back(d * pk);
        pk *= p_;
      }
      ds = std::move(next);
    }
    std::sort(ds.begin(), ds.end());
    return ds;
  };
  for (const Int& a : divisors(ic.front())) {
    for (const Int& b : divisors(ic.back())) {
      for (int s : {1, -1}) {
        Rat cand(s * a, b);
        cand.canonicalize();
        if (p.eval(cand) == 0) roots.push_back(cand);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

// Irreducibility over Q, decidable here up to degree 3 (no rational root
// implies irreducible for degrees 2 and 3); degree >= 4 throws unless a root
// certifies reducibility first.
inline bool poly_irreducible(const Poly& p) {
  int d = p.degree();
  if (d <= 0) return false;
  if (d == 1) return true;
  if (!rational_roots(p).empty()) return false;
  if (d <= 3) return true;
  throw SemanticError("cannot decide irreducibility of degree-" + std::to_string(d) +
                      " polynomial");
}

inline bool ring_traits<Poly>::is_prime(const Poly& p) { return poly_irreducible(p); }

// Monic irreducible factors (support only, no multiplicities): squarefree
// part via gcd with the derivative, then rational-root extraction; leftover
// squarefree factors of degree 2-3 are irreducible. Degree >= 4 leftovers
// raise an error: callers that need deeper factorization pass primes in.
inline std::vector<Poly> poly_prime_support(const Poly& f) {
  std::vector<Poly> out;
  if (f.is_zero() || f.degree() <= 0) return out;
  Poly g = ring_traits<Poly>::gcd(f, f.derivative());
  Poly sf = ring_traits<Poly>::exact_div(f, g);  // squarefree part, same support
  sf = sf * ring_traits<Poly>::normalizing_unit(sf);
  for (const Rat& r : rational_roots(sf)) {
    Poly lin = Poly::x(1) - Poly(r);
    out.push_back(lin);
    while (ring_traits<Poly>::divides(lin, sf)) sf = ring_traits<Poly>::exact_div(sf, lin);
  }
  if (sf.degree() >= 4) {
    throw SemanticError("cannot factor polynomial of degree " + std::to_string(sf.degree()));
  }
  if (sf.degree() >= 2) out.push_back(sf * ring_traits<Poly>::normalizing_unit(sf));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace wph
