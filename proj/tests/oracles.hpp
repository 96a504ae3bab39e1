#pragma once

// Independent oracles for the test suite. Everything here recomputes results
// by a different method than the library under test: determinants by Laplace
// expansion, invariant factors by minor gcds, ranks by classical elimination
// over an explicit fraction field, linear solvability by bounded brute-force
// search, finite homology by direct enumeration of chains modulo m, and the
// universal-coefficient prediction assembled from scratch. Oracles only
// touch elementary ring helpers (gcd, divmod), never the SNF/lattice code.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "wph/matrix.hpp"
#include "wph/module.hpp"
#include "wph/monomial.hpp"
#include "wph/poly.hpp"
#include "wph/ring.hpp"

namespace oracle {

using wph::Int;
using wph::Matrix;
using wph::Poly;
using wph::Rat;

// --------------------------------------------------------------- determinant

template <class R>
R det_laplace(const Matrix<R>& M) {
  std::size_t n = M.rows();
  if (n != M.cols()) throw wph::SemanticError("det of non-square matrix");
  if (n == 0) return wph::ring_traits<R>::one();
  if (n == 1) return M.at(0, 0);
  R d = wph::ring_traits<R>::zero();
  for (std::size_t j = 0; j < n; ++j) {
    if (wph::ring_traits<R>::is_zero(M.at(0, j))) continue;
    Matrix<R> sub(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t cc = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == j) continue;
        sub.at(i - 1, cc++) = M.at(i, c);
      }
    }
    R term = M.at(0, j) * det_laplace(sub);
    d = (j % 2 == 0) ? d + term : d - term;
  }
  return d;
}

// ------------------------------------------------- invariant factors (minors)

namespace detail {

inline void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> cur(k);
  auto rec = [&](auto&& self, std::size_t start, std::size_t depth) -> void {
    if (depth == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i + (k - depth) <= n; ++i) {
      cur[depth] = i;
      self(self, i + 1, depth + 1);
    }
  };
  rec(rec, 0, 0);
}

template <class R>
R normalized(const R& a) {
  return a * wph::ring_traits<R>::normalizing_unit(a);
}

}  // namespace detail

// d_k = gcd(k-minors) / gcd((k-1)-minors), the classical determinantal
// description of the Smith form. Returns the nonzero invariant factors,
// unit-normalized, including leading 1s.
template <class R>
std::vector<R> minor_gcd_invariants(const Matrix<R>& M) {
  using T = wph::ring_traits<R>;
  std::size_t r = M.rows(), c = M.cols();
  std::vector<R> d_prev_factors;
  R prev = T::one();
  std::vector<R> out;
  for (std::size_t k = 1; k <= std::min(r, c); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    detail::subsets(r, k, rs);
    detail::subsets(c, k, cs);
    R g = T::zero();
    for (const auto& ri : rs)
      for (const auto& ci : cs) {
        Matrix<R> sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub.at(i, j) = M.at(ri[i], ci[j]);
        g = T::gcd(g, det_laplace(sub));
      }
    if (T::is_zero(g)) break;  // all higher minors vanish too
    out.push_back(detail::normalized<R>(T::exact_div(g, prev)));
    prev = g;
  }
  return out;
}

// --------------------------------------------------- rank by field elimination

// Exact fraction field of Q[x], just enough for Gaussian elimination.
struct PolyFrac {
  Poly num, den;

  PolyFrac() : num(), den(Rat(1)) {}
  explicit PolyFrac(const Poly& p) : num(p), den(Rat(1)) {}
  PolyFrac(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) { reduce(); }

  void reduce() {
    if (num.is_zero()) {
      den = Poly(Rat(1));
      return;
    }
    Poly g = wph::ring_traits<Poly>::gcd(num, den);
    num = wph::ring_traits<Poly>::exact_div(num, g);
    den = wph::ring_traits<Poly>::exact_div(den, g);
    Poly u = wph::ring_traits<Poly>::normalizing_unit(den);
    num = num * u;
    den = den * u;
  }
  bool is_zero() const { return num.is_zero(); }
  friend PolyFrac operator+(const PolyFrac& a, const PolyFrac& b) {
    return {a.num * b.den + b.num * a.den, a.den * b.den};
  }
  friend PolyFrac operator-(const PolyFrac& a, const PolyFrac& b) {
    return {a.num * b.den - b.num * a.den, a.den * b.den};
  }
  friend PolyFrac operator*(const PolyFrac& a, const PolyFrac& b) {
    return {a.num * b.num, a.den * b.den};
  }
  friend PolyFrac operator/(const PolyFrac& a, const PolyFrac& b) {
    if (b.is_zero()) throw wph::SemanticError("PolyFrac division by zero");
    return {a.num * b.den, a.den * b.num};
  }
};

inline bool field_is_zero(const Rat& a) { return a == 0; }
inline bool field_is_zero(const PolyFrac& a) { return a.is_zero(); }

template <class F>
std::size_t rank_eliminate(std::vector<std::vector<F>> m) {
  std::size_t rank = 0;
  std::size_t rows = m.size();
  std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && field_is_zero(m[piv][col])) ++piv;
    if (piv == rows) continue;
    std::swap(m[rank], m[piv]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      if (field_is_zero(m[i][col])) continue;
      F f = m[i][col] / m[rank][col];
      for (std::size_t j = col; j < cols; ++j) m[i][j] = m[i][j] - f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

inline std::size_t rank_over_q(const Matrix<Int>& M) {
  std::vector<std::vector<Rat>> m(M.rows(), std::vector<Rat>(M.cols()));
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) m[i][j] = Rat(M.at(i, j));
  return rank_eliminate(m);
}

inline std::size_t rank_over_qx(const Matrix<Poly>& M) {
  std::vector<std::vector<PolyFrac>> m(M.rows(), std::vector<PolyFrac>(M.cols()));
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) m[i][j] = PolyFrac(M.at(i, j));
  return rank_eliminate(m);
}

// Rank of an integer matrix over F_p by elimination on residues.
inline std::size_t rank_over_fp(const Matrix<Int>& M, long p) {
  auto norm = [p](long a) { return ((a % p) + p) % p; };
  std::vector<std::vector<long>> m(M.rows(), std::vector<long>(M.cols()));
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) {
      Int r = M.at(i, j) % Int(p);
      m[i][j] = norm(r.get_si());
    }
  std::size_t rank = 0;
  std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  auto inv = [p, norm](long a) {
    for (long x = 1; x < p; ++x)
      if (norm(a * x) == 1) return x;
    throw wph::SemanticError("not invertible mod p");
  };
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[rank], m[piv]);
    long f0 = inv(m[rank][col]);
    for (std::size_t j = 0; j < cols; ++j) m[rank][j] = norm(m[rank][j] * f0);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      long f = m[i][col];
      if (f == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = norm(m[i][j] - f * m[rank][j]);
    }
    ++rank;
  }
  return rank;
}

// --------------------------------------------- brute-force linear solvability

// Does M x = b admit an integer solution with |x_i| <= bound?
inline std::optional<std::vector<Int>> solve_small(const Matrix<Int>& M, const std::vector<Int>& b,
                                                   long bound) {
  std::size_t n = M.cols();
  std::vector<long> x(n, -bound);
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i < M.rows() && ok; ++i) {
      Int acc(0);
      for (std::size_t j = 0; j < n; ++j) acc += M.at(i, j) * Int(x[j]);
      if (acc != b[i]) ok = false;
    }
    if (ok) {
      std::vector<Int> out(n);
      for (std::size_t j = 0; j < n; ++j) out[j] = Int(x[j]);
      return out;
    }
    std::size_t k = 0;
    while (k < n && x[k] == bound) x[k++] = -bound;
    if (k == n) return std::nullopt;
    ++x[k];
  }
}

// ------------------------------------- finite homology by direct enumeration

// Element-order statistics of ker(dn mod m)/im(dn1 mod m): for each divisor
// d of m, the number of classes killed by d. Order statistics determine a
// finite abelian m-torsion group up to isomorphism. Exponential in the chain
// dimension; fixtures must stay tiny.
inline std::map<long, long> mod_homology_stats(const Matrix<Int>& dn, const Matrix<Int>& dn1,
                                               long m) {
  std::size_t N = dn.cols();
  if (dn1.rows() != N) throw wph::SemanticError("chain dimension mismatch");
  double cost = 1;
  for (std::size_t i = 0; i < N; ++i) cost *= static_cast<double>(m);
  if (cost > 2e6) throw wph::SemanticError("fixture too large for enumeration oracle");
  auto norm = [m](long a) { return ((a % m) + m) % m; };

  std::vector<std::vector<long>> kernel;
  std::vector<long> v(N, 0);
  auto in_kernel = [&](const std::vector<long>& x) {
    for (std::size_t i = 0; i < dn.rows(); ++i) {
      Int acc(0);
      for (std::size_t j = 0; j < N; ++j) acc += dn.at(i, j) * Int(x[j]);
      if (acc % Int(m) != 0) return false;
    }
    return true;
  };
  while (true) {
    if (in_kernel(v)) kernel.push_back(v);
    std::size_t k = 0;
    while (k < N && v[k] == m - 1) v[k++] = 0;
    if (k == N) break;
    ++v[k];
  }

  std::set<std::vector<long>> image;
  {
    std::vector<std::vector<long>> gens;
    for (std::size_t j = 0; j < dn1.cols(); ++j) {
      std::vector<long> g(N);
      for (std::size_t i = 0; i < N; ++i) {
        Int r = dn1.at(i, j) % Int(m);
        g[i] = norm(r.get_si());
      }
      gens.push_back(g);
    }
    std::vector<std::vector<long>> frontier = {std::vector<long>(N, 0)};
    image.insert(frontier[0]);
    while (!frontier.empty()) {
      std::vector<long> cur = frontier.back();
      frontier.pop_back();
      for (const auto& g : gens) {
        std::vector<long> nxt(N);
        for (std::size_t i = 0; i < N; ++i) nxt[i] = norm(cur[i] + g[i]);
        if (image.insert(nxt).second) frontier.push_back(nxt);
      }
    }
  }

  std::map<long, long> stats;
  for (long d = 1; d <= m; ++d) {
    if (m % d != 0) continue;
    long killed = 0;
    for (const auto& z : kernel) {
      std::vector<long> dz(N);
      for (std::size_t i = 0; i < N; ++i) dz[i] = norm(d * z[i]);
      if (image.count(dz)) ++killed;
    }
    stats[d] = killed / static_cast<long>(image.size());
  }
  return stats;
}

// Same statistics predicted from a list of cyclic orders (all dividing m).
inline std::map<long, long> stats_from_orders(const std::vector<Int>& orders, long m) {
  std::map<long, long> stats;
  for (long d = 1; d <= m; ++d) {
    if (m % d != 0) continue;
    Int count(1);
    for (const Int& f : orders) count *= wph::ring_traits<Int>::gcd(Int(d), f);
    stats[d] = static_cast<long>(count.get_si());
  }
  return stats;
}

// --------------------------------------------------------------- UCT oracle

inline std::map<long, unsigned> factor_trial(Int n) {
  std::map<long, unsigned> out;
  if (n < 0) n = -n;
  for (long p = 2; Int(p) * Int(p) <= n; ++p)
    while (n % Int(p) == 0) {
      ++out[p];
      n /= Int(p);
    }
  if (n > 1) ++out[n.get_si()];
  return out;
}

// Canonical invariant factors (ascending divisibility) of a direct sum of
// cyclic groups of the given orders.
inline std::vector<Int> invariants_from_orders(const std::vector<Int>& orders) {
  std::map<long, std::vector<unsigned>> buckets;
  std::size_t slots = 0;
  for (const Int& o : orders)
    for (auto [p, e] : factor_trial(o)) buckets[p].push_back(e);
  for (auto& [p, es] : buckets) {
    std::sort(es.begin(), es.end(), std::greater<unsigned>());
    slots = std::max(slots, es.size());
  }
  std::vector<Int> desc;
  for (std::size_t i = 0; i < slots; ++i) {
    Int f(1);
    for (const auto& [p, es] : buckets)
      if (i < es.size())
        for (unsigned k = 0; k < es[i]; ++k) f *= Int(p);
    if (f != 1) desc.push_back(f);
  }
  return std::vector<Int>(desc.rbegin(), desc.rend());
}

// H_n(C tensor Z/m) = H_n tensor Z/m + Tor(H_{n-1}, Z/m), assembled into
// canonical invariant factors. free ranks of the inputs contribute Z/m
// copies to the tensor part; torsion f contributes Z/gcd(f, m) to both.
inline std::vector<Int> uct_mod_m(const wph::PresentationModule<Int>& hn,
                                  const wph::PresentationModule<Int>& hn_minus_1, long m) {
  std::vector<Int> orders;
  for (std::size_t i = 0; i < hn.free_rank; ++i) orders.push_back(Int(m));
  for (const Int& f : hn.invariant_factors) orders.push_back(wph::ring_traits<Int>::gcd(f, Int(m)));
  for (const Int& f : hn_minus_1.invariant_factors)
    orders.push_back(wph::ring_traits<Int>::gcd(f, Int(m)));
  std::vector<Int> kept;
  for (const Int& o : orders)
    if (o != 1) kept.push_back(o);
  return invariants_from_orders(kept);
}

// ------------------------------------------------- monomial ideal membership

// A polynomial lies in a monomial ideal iff every term is divisible by some
// generator (componentwise exponent dominance).
inline bool monomial_member(const wph::MPoly& f, const std::vector<wph::Monomial>& gens) {
  for (const auto& [mono, coeff] : f.terms) {
    bool covered = false;
    for (const wph::Monomial& g : gens) {
      if (g.nvars() != mono.nvars()) throw wph::SemanticError("variable count mismatch");
      bool dom = true;
      for (std::size_t i = 0; i < g.e.size(); ++i)
        if (g.e[i] > mono.e[i]) {
          dom = false;
          break;
        }
      if (dom) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

}  // namespace oracle
