// Sparse multivariate polynomials over F_p in lex order x_1 > x_2 > ... .
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "muord/arith.hpp"
#include "muord/field.hpp"

namespace muord {

inline constexpr unsigned kMaxVars = 8;

using Exponents = std::array<std::uint16_t, kMaxVars>;

struct Term {
  Exponents exp{};
  u32 coeff = 0;
};

class SparsePoly {
 public:
  SparsePoly() = default;
  SparsePoly(unsigned num_vars, u64 p);

  // Sorts and combines; drops zero coefficients. Coefficients are reduced mod p.
  static SparsePoly from_terms(unsigned num_vars, u64 p, std::vector<Term> terms);
  // Terms must already be strictly decreasing in lex order with nonzero coefficients.
  static SparsePoly from_sorted_terms(unsigned num_vars, u64 p, std::vector<Term> terms);
  static SparsePoly constant(unsigned num_vars, u64 p, i64 c);
  // x_k, 0-based k.
  static SparsePoly variable(unsigned num_vars, u64 p, unsigned k);
  static SparsePoly monomial(unsigned num_vars, u64 p, const Exponents& exp, i64 c);

  unsigned num_vars() const { return num_vars_; }
  u64 p() const { return p_; }
  // Strictly decreasing lex order, all coefficients nonzero.
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  u32 coefficient(const Exponents& exp) const;
  // Total degree if all terms share it; -1 for the zero polynomial, -2 otherwise.
  int homogeneous_degree() const;

  SparsePoly operator+(const SparsePoly& o) const;
  SparsePoly operator-(const SparsePoly& o) const;
  SparsePoly operator*(const SparsePoly& o) const;
  SparsePoly scaled(i64 c) const;
  bool operator==(const SparsePoly& o) const;
  bool operator!=(const SparsePoly& o) const { return !(*this == o); }

  // "c * x1^e1 x2^e2 + ..." in lex order; "0" for zero.
  std::string to_string() const;

 private:
  unsigned num_vars_ = 0;
  u64 p_ = 2;
  std::vector<Term> terms_;
};

// Strict lex comparison on the first n variables.
bool lex_greater(const Exponents& a, const Exponents& b);

SparsePoly poly_mul(const SparsePoly& a, const SparsePoly& b);
SparsePoly poly_pow(const SparsePoly& a, u64 e);
// point.size() == num_vars; coefficients embed through F_p.
FieldElem poly_eval(const SparsePoly& a, const std::vector<FieldElem>& point);
// Lex-largest term; throws std::domain_error("zero polynomial") on zero.
Term max_monomial(const SparsePoly& a);

std::string monomial_to_string(const Exponents& exp, unsigned num_vars);
int exponent_degree(const Exponents& exp);

}  // namespace muord
