#pragma once

// Finitely generated modules over a Euclidean domain in canonical form:
// free rank plus invariant factors f_1 | f_2 | ... (non-unit, nonzero,
// unit-normalized), so equality of values is isomorphism of modules.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wph/ring.hpp"

namespace wph {

template <class R>
struct PresentationModule {
  std::size_t free_rank = 0;
  std::vector<R> invariant_factors;

  bool is_zero() const { return free_rank == 0 && invariant_factors.empty(); }

  // Module order: count of elements when finite, nullopt when infinite.
  std::optional<R> order() const {
    if (free_rank > 0) return std::nullopt;
    R o = ring_traits<R>::one();
    for (const R& f : invariant_factors) o = o * f;
    return o;
  }

  friend bool operator==(const PresentationModule& a, const PresentationModule& b) {
    return a.free_rank == b.free_rank && a.invariant_factors == b.invariant_factors;
  }
  friend bool operator!=(const PresentationModule& a, const PresentationModule& b) {
    return !(a == b);
  }
};

// Multiset of p-adic valuations of the invariant factors, zeros omitted
// (the exponents r of the R/(p^r) summands in the p-primary part).
template <class R>
std::vector<unsigned> p_primary_exponents(const PresentationModule<R>& mod, const R& p) {
  if (!ring_traits<R>::is_prime(p)) throw SemanticError("p_primary_exponents: p is not prime");
  std::vector<unsigned> out;
  for (const R& f : mod.invariant_factors) {
    unsigned v = valuation(f, p);
    if (v > 0) out.push_back(v);
  }
  return out;
}

// Canonical module from an arbitrary multiset of cyclic orders: the
// invariant factors of diag(orders). Declared here, defined in lattice.hpp
// (needs SNF).
template <class R>
PresentationModule<R> module_from_cyclic_orders(const std::vector<R>& orders,
                                                std::size_t extra_free = 0);

// "Z^r (+) Z/f1 (+) ..." with the free part first and factors ascending;
// ring_name is "Z" or "Q[x]"; zero module prints "0".
template <class R>
std::string module_to_string(const PresentationModule<R>& m, const std::string& ring_name) {
  std::string out;
  auto append = [&out](const std::string& piece) {
    if (!out.empty()) out += " \xE2\x8A\x95 ";  // UTF-8 circled plus
    out += piece;
  };
  if (m.free_rank == 1) {
    append(ring_name);
  } else if (m.free_rank > 1) {
    append(ring_name + "^" + std::to_string(m.free_rank));
  }
  for (const R& f : m.invariant_factors) {
    std::string fs = ring_traits<R>::to_string(f);
    // Polynomial-ring quotients always show the ideal parenthesized.
    if (ring_name.find('[') != std::string::npos ||
        fs.find_first_of("+- */^") != std::string::npos) {
      fs = "(" + fs + ")";
    }
    append(ring_name + "/" + fs);
  }
  if (out.empty()) out = "0";
  return out;
}

}  // namespace wph
