// Independent reference computations and fixtures shared by the unit tests and the
// acceptance driver. Nothing here calls the composition enumerator of the library.
#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "muord/arith.hpp"
#include "muord/curve.hpp"
#include "muord/field.hpp"
#include "muord/hasse_witt.hpp"
#include "muord/monodromy.hpp"
#include "muord/poly.hpp"

namespace muord::oracle {

// Polynomial in x whose coefficients are polynomials in x_1..x_r; index = degree in x.
struct XPoly {
  int low = 0;  // degree of coeffs[0]
  std::vector<SparsePoly> coeffs;

  int high() const { return low + static_cast<int>(coeffs.size()) - 1; }
  SparsePoly at(int d, unsigned vars, u64 p) const {
    if (d < low || d > high()) return SparsePoly(vars, p);
    return coeffs[static_cast<std::size_t>(d - low)];
  }
};

inline XPoly xpoly_one(unsigned vars, u64 p) { return {0, {SparsePoly::constant(vars, p, 1)}}; }

// a * (x - x_k), schoolbook.
inline XPoly times_linear(const XPoly& a, unsigned k, unsigned vars, u64 p) {
  XPoly out;
  out.low = a.low;
  out.coeffs.assign(a.coeffs.size() + 1, SparsePoly(vars, p));
  const SparsePoly xk = SparsePoly::variable(vars, p, k);
  for (std::size_t d = 0; d < a.coeffs.size(); ++d) {
    out.coeffs[d + 1] = out.coeffs[d + 1] + a.coeffs[d];
    out.coeffs[d] = out.coeffs[d] - a.coeffs[d] * xk;
  }
  return out;
}

// Product of a and b keeping only x-degrees in [lo, hi].
inline XPoly times_window(const XPoly& a, const XPoly& b, int lo, int hi, unsigned vars, u64 p) {
  XPoly out;
  out.low = std::max(lo, a.low + b.low);
  const int top = std::min(hi, a.high() + b.high());
  if (top < out.low) return {out.low, {}};
  out.coeffs.assign(static_cast<std::size_t>(top - out.low + 1), SparsePoly(vars, p));
  for (int da = a.low; da <= a.high(); ++da) {
    const SparsePoly& ca = a.coeffs[static_cast<std::size_t>(da - a.low)];
    if (ca.is_zero()) continue;
    for (int db = b.low; db <= b.high(); ++db) {
      const int d = da + db;
      if (d < out.low || d > top) continue;
      const SparsePoly& cb = b.coeffs[static_cast<std::size_t>(db - b.low)];
      if (cb.is_zero()) continue;
      out.coeffs[static_cast<std::size_t>(d - out.low)] = out.coeffs[static_cast<std::size_t>(d - out.low)] + ca * cb;
    }
  }
  return out;
}

// x-degrees lo..hi of prod_k (x - x_k)^{e_k}, each power built by repeated multiplication.
inline XPoly expand_window(const std::vector<int>& e, u64 p, int lo, int hi) {
  const unsigned vars = static_cast<unsigned>(e.size());
  int remaining = std::accumulate(e.begin(), e.end(), 0);
  XPoly acc = xpoly_one(vars, p);
  for (unsigned k = 0; k < vars; ++k) {
    XPoly factor = xpoly_one(vars, p);
    for (int t = 0; t < e[k]; ++t) factor = times_linear(factor, k, vars, p);
    remaining -= e[k];
    acc = times_window(acc, factor, lo - remaining, hi, vars, p);
  }
  return acc;
}

// [x^{pj - j'}] prod (x - x_k)^{e_k}.
inline SparsePoly phi_oracle(const CyclicDatum& d, u64 p, int i, int jp, int j) {
  const std::vector<int> e = branch_exponents(d, p, i);
  const int deg = static_cast<int>(p) * j - jp;
  return expand_window(e, p, deg, deg).at(deg, static_cast<unsigned>(d.r()), p);
}

struct PsiOracle {
  SparsePoly value;
  bool tail_vanishes = true;  // coefficients of x^r and x^{r+1} in the form are zero
};

// Exterior derivative route. With h = [prod (x - x_k)^{e_k} / x^{pj}]_{>= 0} and
// L = prod (x - x_k), d(h v_{pi}) = G(x) dx / v_{pi*} where
// G = L h' - h sum_k e_k L / (x - x_k); the answer is [x^{j'-1}] G.
inline PsiOracle psi_oracle(const CyclicDatum& d, u64 p, int i, int jp, int j) {
  const unsigned vars = static_cast<unsigned>(d.r());
  const std::vector<int> e = branch_exponents(d, p, i);
  const int shift = static_cast<int>(p) * j;
  const int top = std::max(jp, static_cast<int>(vars) + 2);  // highest h-degree needed
  const XPoly big = expand_window(e, p, shift, shift + top);
  std::vector<SparsePoly> h(static_cast<std::size_t>(top + 1), SparsePoly(vars, p));
  for (int t = 0; t <= top; ++t) h[static_cast<std::size_t>(t)] = big.at(shift + t, vars, p);

  XPoly lin = xpoly_one(vars, p);
  for (unsigned k = 0; k < vars; ++k) lin = times_linear(lin, k, vars, p);
  std::vector<XPoly> lk;
  for (unsigned k = 0; k < vars; ++k) {
    XPoly q = xpoly_one(vars, p);
    for (unsigned l = 0; l < vars; ++l) {
      if (l != k) q = times_linear(q, l, vars, p);
    }
    lk.push_back(q);
  }
  auto g_coeff = [&](int t) {
    SparsePoly acc(vars, p);
    // L h'
    for (int u = 0; u <= lin.high(); ++u) {
      const int dh = t - u + 1;
      if (dh < 1 || dh > top) continue;
      acc = acc + lin.at(u, vars, p) * h[static_cast<std::size_t>(dh)].scaled(dh);
    }
    for (unsigned k = 0; k < vars; ++k) {
      if (e[k] == 0) continue;
      for (int u = 0; u <= lk[k].high(); ++u) {
        const int dh = t - u;
        if (dh < 0 || dh > top) continue;
        acc = acc - (lk[k].at(u, vars, p) * h[static_cast<std::size_t>(dh)]).scaled(e[k]);
      }
    }
    return acc;
  };
  PsiOracle out;
  out.value = g_coeff(jp - 1);
  out.tail_vanishes = g_coeff(static_cast<int>(vars)).is_zero() && g_coeff(static_cast<int>(vars) + 1).is_zero();
  return out;
}

inline u64 uniform_int(std::mt19937_64& rng, u64 n) { return uniform_below(rng, n); }

// Number of capped compositions of n into parts bounded by caps; cost estimate only.
inline u64 capped_compositions(const std::vector<int>& caps, int n) {
  if (n < 0) return 0;
  std::vector<u64> ways(static_cast<std::size_t>(n + 1), 0);
  ways[0] = 1;
  for (int c : caps) {
    std::vector<u64> next(ways.size(), 0);
    for (int t = 0; t <= n; ++t) {
      for (int a = 0; a <= std::min(c, t); ++a) next[static_cast<std::size_t>(t)] += ways[static_cast<std::size_t>(t - a)];
    }
    ways = std::move(next);
  }
  return ways[static_cast<std::size_t>(n)];
}

// Uniform valid cyclic datum with the given m and r (entries in 1..m-1, sum 0 mod m, gcd 1).
// For m = 2 an odd r has no datum and is raised by one.
inline CyclicDatum random_cyclic_datum(std::mt19937_64& rng, int m, int r) {
  if (m == 2) r += r % 2;
  for (;;) {
    CyclicDatum d{m, {}};
    for (int k = 0; k < r - 1; ++k) d.a.push_back(1 + static_cast<int>(uniform_below(rng, static_cast<u64>(m - 1))));
    const int last = static_cast<int>(pos_mod(-std::accumulate(d.a.begin(), d.a.end(), 0), m));
    if (last == 0) continue;
    d.a.push_back(last);
    if (validate(d).empty()) return d;
  }
}

inline BranchPoints random_points(const Field& field, std::size_t r, std::mt19937_64& rng) {
  for (;;) {
    std::vector<FieldElem> x;
    for (std::size_t k = 0; k < r; ++k) x.push_back(random_element(field, rng));
    std::vector<FieldElem> sorted = x;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) return make_branch_points(field, x);
  }
}

struct SuiteEntry {
  const char* datum;
  u64 p;
};

// r in {4, 5}, m <= 9, p the smallest prime above m(r-2) not dividing m.
inline const std::vector<SuiteEntry>& witness_suite() {
  static const std::vector<SuiteEntry> suite = {
      {"m=5 r=4 a=1,1,1,2", 11},    {"m=5 r=4 a=1,1,1,2", 13},    {"m=7 r=5 a=1,1,1,2,2", 23},
      {"m=3 r=4 a=1,1,2,2", 7},     {"m=4 r=4 a=1,1,1,1", 11},    {"m=6 r=4 a=1,1,5,5", 13},
      {"m=7 r=4 a=1,2,5,6", 17},    {"m=8 r=4 a=1,3,5,7", 17},    {"m=9 r=4 a=1,1,1,6", 19},
      {"m=3 r=5 a=1,1,1,1,2", 11},  {"m=4 r=5 a=1,1,1,2,3", 13},  {"m=5 r=5 a=1,1,1,1,1", 17},
      {"m=9 r=5 a=1,1,2,2,3", 29},  {"m=6 r=5 a=1,1,1,1,2", 19},  {"m=8 r=5 a=1,1,2,5,7", 29},
  };
  return suite;
}

}  // namespace muord::oracle
