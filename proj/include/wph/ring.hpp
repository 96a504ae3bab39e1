#pragma once

// Exact scalar types and the Euclidean-domain interface used by the linear
// algebra layer. Two rings are supported end to end: unbounded integers and
// univariate rational polynomials (see poly.hpp).

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace wph {

using Int = mpz_class;
using Rat = mpq_class;

// Error taxonomy: ParseError for malformed input text/files (CLI exit 2),
// SemanticError for well-formed input that violates a mathematical
// precondition (CLI exit 1).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SemanticError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class R>
struct ring_traits;  // specialized for Int (here) and Poly (poly.hpp)

template <>
struct ring_traits<Int> {
  static Int zero() { return Int(0); }
  static Int one() { return Int(1); }
  static bool is_zero(const Int& a) { return sgn(a) == 0; }
  static bool is_unit(const Int& a) { return a == 1 || a == -1; }

  // Euclidean division with |r| <= |b|/2 (nearest quotient): fastest norm
  // descent during elimination and a canonical residue for reporting.
  static void divmod(const Int& a, const Int& b, Int& q, Int& r) {
    if (is_zero(b)) throw SemanticError("division by zero");
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Int ab = abs(b);
    if (Int(2 * abs(r)) > ab) {
      if ((sgn(r) > 0) == (sgn(b) > 0)) {
        q += 1;
        r -= b;
      } else {
        q -= 1;
        r += b;
      }
    }
  }

  // Canonical nonnegative residue in [0, |b|), for printing class vectors.
  static Int mod_canonical(const Int& a, const Int& b) {
    Int r, ab = abs(b);
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), ab.get_mpz_t());
    return r;
  }

  static bool divides(const Int& a, const Int& b) {  // a | b
    return mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0;
  }

  static Int exact_div(const Int& a, const Int& b) {  // a / b, exact
    if (is_zero(b) || !divides(b, a)) throw SemanticError("inexact division");
    Int q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
  }

  // Strict well-founded order on Euclidean norms (|a|), for pivot selection.
  static bool norm_less(const Int& a, const Int& b) { return abs(a) < abs(b); }

  // Unit u such that a*u is canonical (nonnegative).
  static Int normalizing_unit(const Int& a) { return sgn(a) < 0 ? Int(-1) : Int(1); }
  static Int unit_inverse(const Int& u) { return u; }  // u = +-1

  static Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
  }

  static bool is_prime(const Int& p) {
    Int ap = abs(p);
    if (ap < 2) return false;
    return mpz_probab_prime_p(ap.get_mpz_t(), 40) != 0;
  }

  static std::string to_string(const Int& a) { return a.get_str(); }
};

inline Int int_pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Int int_lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// Deterministic integer factorization: trial division for small factors,
// then Brent's cycle-finding rho with Miller-Rabin certification. Inputs in
// this artifact are invariant factors of desk-scale matrices, so the
// composite cores are small; rho handles anything trial division misses.
namespace detail {

inline Int pollard_rho(const Int& n) {
  // n odd composite, not a prime power of interest; returns a nontrivial factor.
  for (Int c(1); ; c += 1) {
    Int x(2), y(2), d(1);
    Int count = 0;
    while (d == 1) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      d = ring_traits<Int>::gcd(abs(x - y), n);
      if (++count > 1000000) break;  // pathological cycle: retry with new c
    }
    if (d != n && d != 1) return d;
  }
}

inline void factor_into(Int n, std::map<Int, unsigned>& out) {
  if (n < 0) n = -n;
  if (n <= 1) return;
  for (Int p : {Int(2), Int(3), Int(5), Int(7), Int(11), Int(13)}) {
    while (ring_traits<Int>::divides(p, n)) {
      out[p] += 1;
      n = ring_traits<Int>::exact_div(n, p);
    }
  }
  for (Int p(17); p * p <= n && p < 10000; p += 2) {
    while (ring_traits<Int>::divides(p, n)) {
      out[p] += 1;
      n = ring_traits<Int>::exact_div(n, p);
    }
  }
  if (n == 1) return;
  if (ring_traits<Int>::is_prime(n)) {
    out[n] += 1;
    return;
  }
  Int d = pollard_rho(n);
  factor_into(d, out);
  factor_into(ring_traits<Int>::exact_div(n, d), out);
}

}  // namespace detail

// Prime factorization |n| = prod p^e as an ordered map.
inline std::map<Int, unsigned> factorize(const Int& n) {
  std::map<Int, unsigned> out;
  detail::factor_into(n, out);
  return out;
}

// p-adic valuation of a (a != 0, p a prime/irreducible of the ring).
template <class R>
unsigned valuation(R a, const R& p) {
  using T = ring_traits<R>;
  if (T::is_zero(a)) throw SemanticError("valuation of zero");
  unsigned v = 0;
  while (T::divides(p, a)) {
    a = T::exact_div(a, p);
    ++v;
  }
  return v;
}

// Exact rational from a decimal string like "0.5", "12", "3/4", "-1.25".
inline Rat rat_from_decimal(const std::string& s) {
  if (s.empty()) throw ParseError("empty number");
  std::string t = s;
  auto slash = t.find('/');
  try {
    if (slash != std::string::npos) {
      Rat r(Int(t.substr(0, slash)), Int(t.substr(slash + 1)));
      r.canonicalize();
      return r;
    }
    auto dot = t.find('.');
    if (dot == std::string::npos) {
      return Rat(Int(t));
    }
    std::string digits = t.substr(0, dot) + t.substr(dot + 1);
    std::size_t frac_len = t.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+") throw ParseError("bad number: " + s);
    Rat r(Int(digits), int_pow(Int(10), frac_len));
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw ParseError("bad number: " + s);
  }
}

inline std::string rat_to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace wph
