// Symbolic Hasse-Witt blocks phi and extended blocks psi' of a cyclic cover
// y^m = prod (x - x_k)^{a_k}, as polynomials over F_p in the branch points.
#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "muord/monodromy.hpp"
#include "muord/poly.hpp"

namespace muord {

// e_k = floor(p <i a_k / m>) for k = 1..r.
std::vector<int> branch_exponents(const CyclicDatum& d, u64 p, int i);

struct CombinatorialFrame {
  int i = 0;
  u64 p = 0;
  std::vector<int> e;
  int s = 0;  // sum of e

  // (c, C) with c 1-based; 0 <= N < s.
  std::pair<int, int> c_and_C(int N) const;
  Exponents x_of_N(int N) const;
};

CombinatorialFrame frame(const CyclicDatum& d, u64 p, int i);

struct BlockDims {
  int phi_rows = 0;  // f(tau*_{pi})
  int psi_rows = 0;  // f(tau_{pi})
  int cols = 0;      // f(tau*_i)
};

BlockDims block_dims(const CyclicDatum& d, u64 p, int i);

// Entry (j', j) of phi_{tau_i}; throws std::out_of_range outside the block.
SparsePoly phi_entry(const CyclicDatum& d, u64 p, int i, int jp, int j);
// Entry (j', j) of psi'_{tau_i}; needs gcd(i, m) = 1, else std::invalid_argument.
SparsePoly psi_prime_entry(const CyclicDatum& d, u64 p, int i, int jp, int j);
// One coefficient of psi'_{tau_i}(j', j), without expanding the entry.
u32 psi_prime_coefficient(const CyclicDatum& d, u64 p, int i, int jp, int j, const Exponents& mono);

using PolyMatrix = std::vector<std::vector<SparsePoly>>;  // [row j'-1][col j-1]

struct HWSymbolic {
  CyclicDatum datum;
  u64 p = 0;
  std::map<int, PolyMatrix> phi;  // every i with a nonempty block
  std::map<int, PolyMatrix> psi;  // new i only

  // One "<phi|psi> i=.. (j',j): poly" line per entry.
  std::string to_string() const;
};

HWSymbolic hw_symbolic(const CyclicDatum& d, u64 p);

struct Psi11Certificate {
  enum class Status { certified, declined, failed };
  Status status = Status::declined;
  std::string reason;
  int i = 0;
  int c = 0;
  int C = 0;
  Exponents monomial{};
  u32 extracted = 0;
  u32 closed_form = 0;
};

std::string to_string(Psi11Certificate::Status s);

// Declines when gcd(i, m) != 1, p <= m(r-2), or the (1,1) entry lies outside the block.
Psi11Certificate psi11_certificate(const CyclicDatum& d, u64 p, int i);

struct SeparationReport {
  bool applicable = false;
  std::string reason;
  std::size_t tau = 0;            // representative with f(tau*) = 1
  std::size_t paths = 0;          // |J|
  std::size_t nonzero_paths = 0;  // paths with R_J != 0
  bool distinct = false;          // all nonzero T_J pairwise distinct
  bool vacuous = false;
  int max_valuation = 0;          // over every nonzero A_i entry's max monomial
  bool valuation_ok = false;      // max_valuation <= p - 1
  std::vector<int> a;             // a(0..l)
  std::vector<int> cases;         // case 1..4 of each A_i
};

// Needs {0, 1} contained in F(O) and p > m(r-2); otherwise not applicable.
SeparationReport monomial_separation(const CyclicDatum& d, u64 p, const FrobeniusOrbit& orbit);

// f(p tau_i*) = 0 or f(tau_i*) = g(tau_i).
bool valid_extension_applicable(const Signature& sig, int m, int i, u64 p);

}  // namespace muord
