#include "muord/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace muord {

bool lex_greater(const Exponents& a, const Exponents& b) { return b < a; }

int exponent_degree(const Exponents& exp) {
  int d = 0;
  for (auto e : exp) d += e;
  return d;
}

SparsePoly::SparsePoly(unsigned num_vars, u64 p) : num_vars_(num_vars), p_(p) {
  if (num_vars > kMaxVars) throw std::invalid_argument("SparsePoly: too many variables");
}

SparsePoly SparsePoly::from_terms(unsigned num_vars, u64 p, std::vector<Term> terms) {
  SparsePoly out(num_vars, p);
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return lex_greater(a.exp, b.exp); });
  for (const Term& t : terms) {
    if (!out.terms_.empty() && out.terms_.back().exp == t.exp) {
      out.terms_.back().coeff = static_cast<u32>((out.terms_.back().coeff + static_cast<u64>(t.coeff)) % p);
    } else {
      if (!out.terms_.empty() && out.terms_.back().coeff == 0) out.terms_.pop_back();
      out.terms_.push_back({t.exp, static_cast<u32>(t.coeff % p)});
    }
  }
  if (!out.terms_.empty() && out.terms_.back().coeff == 0) out.terms_.pop_back();
  return out;
}

SparsePoly SparsePoly::from_sorted_terms(unsigned num_vars, u64 p, std::vector<Term> terms) {
  SparsePoly out(num_vars, p);
  out.terms_ = std::move(terms);
  return out;
}

SparsePoly SparsePoly::constant(unsigned num_vars, u64 p, i64 c) {
  return monomial(num_vars, p, Exponents{}, c);
}

SparsePoly SparsePoly::variable(unsigned num_vars, u64 p, unsigned k) {
  if (k >= num_vars) throw std::invalid_argument("SparsePoly: variable index out of range");
  Exponents e{};
  e[k] = 1;
  return monomial(num_vars, p, e, 1);
}

SparsePoly SparsePoly::monomial(unsigned num_vars, u64 p, const Exponents& exp, i64 c) {
  SparsePoly out(num_vars, p);
  const u64 cc = mod_reduce(c, p);
  if (cc != 0) out.terms_.push_back({exp, static_cast<u32>(cc)});
  return out;
}

u32 SparsePoly::coefficient(const Exponents& exp) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), exp,
                             [](const Term& t, const Exponents& e) { return lex_greater(t.exp, e); });
  if (it != terms_.end() && it->exp == exp) return it->coeff;
  return 0;
}

int SparsePoly::homogeneous_degree() const {
  if (terms_.empty()) return -1;
  const int d = exponent_degree(terms_.front().exp);
  for (const Term& t : terms_) {
    if (exponent_degree(t.exp) != d) return -2;
  }
  return d;
}

SparsePoly SparsePoly::operator+(const SparsePoly& o) const {
  SparsePoly out(num_vars_, p_);
  out.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && lex_greater(terms_[i].exp, o.terms_[j].exp))) {
      out.terms_.push_back(terms_[i++]);
    } else if (i == terms_.size() || lex_greater(o.terms_[j].exp, terms_[i].exp)) {
      out.terms_.push_back(o.terms_[j++]);
    } else {
      const u64 c = (static_cast<u64>(terms_[i].coeff) + o.terms_[j].coeff) % p_;
      if (c != 0) out.terms_.push_back({terms_[i].exp, static_cast<u32>(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

SparsePoly SparsePoly::scaled(i64 c) const {
  SparsePoly out(num_vars_, p_);
  const u64 cc = mod_reduce(c, p_);
  if (cc == 0) return out;
  out.terms_.reserve(terms_.size());
  for (const Term& t : terms_) out.terms_.push_back({t.exp, static_cast<u32>((t.coeff * cc) % p_)});
  return out;
}

SparsePoly SparsePoly::operator-(const SparsePoly& o) const { return *this + o.scaled(-1); }

SparsePoly SparsePoly::operator*(const SparsePoly& o) const { return poly_mul(*this, o); }

bool SparsePoly::operator==(const SparsePoly& o) const {
  if (num_vars_ != o.num_vars_ || p_ != o.p_ || terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].exp != o.terms_[i].exp || terms_[i].coeff != o.terms_[i].coeff) return false;
  }
  return true;
}

std::string monomial_to_string(const Exponents& exp, unsigned num_vars) {
  std::string out;
  for (unsigned k = 0; k < num_vars; ++k) {
    if (exp[k] == 0) continue;
    if (!out.empty()) out += ' ';
    out += "x" + std::to_string(k + 1);
    if (exp[k] != 1) out += "^" + std::to_string(exp[k]);
  }
  return out.empty() ? "1" : out;
}

std::string SparsePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const Term& t : terms_) {
    if (!out.empty()) out += " + ";
    out += std::to_string(t.coeff);
    if (exponent_degree(t.exp) > 0) out += " * " + monomial_to_string(t.exp, num_vars_);
  }
  return out;
}

SparsePoly poly_mul(const SparsePoly& a, const SparsePoly& b) {
  if (a.num_vars() != b.num_vars() || a.p() != b.p()) throw std::invalid_argument("poly_mul: incompatible polynomials");
  const u64 p = a.p();
  std::vector<Term> prod;
  prod.reserve(a.size() * b.size());
  for (const Term& s : a.terms()) {
    for (const Term& t : b.terms()) {
      Term u;
      for (unsigned k = 0; k < kMaxVars; ++k) {
        const unsigned e = static_cast<unsigned>(s.exp[k]) + t.exp[k];
        if (e > 0xFFFFU) throw std::overflow_error("poly_mul: exponent overflow");
        u.exp[k] = static_cast<std::uint16_t>(e);
      }
      u.coeff = static_cast<u32>((static_cast<u64>(s.coeff) * t.coeff) % p);
      prod.push_back(u);
    }
  }
  return SparsePoly::from_terms(a.num_vars(), p, std::move(prod));
}

SparsePoly poly_pow(const SparsePoly& a, u64 e) {
  SparsePoly result = SparsePoly::constant(a.num_vars(), a.p(), 1);
  SparsePoly base = a;
  while (e > 0) {
    if (e & 1U) result = poly_mul(result, base);
    e >>= 1U;
    if (e > 0) base = poly_mul(base, base);
  }
  return result;
}

FieldElem poly_eval(const SparsePoly& a, const std::vector<FieldElem>& point) {
  if (point.size() != a.num_vars()) throw std::invalid_argument("poly_eval: point has wrong length");
  if (point.empty()) {
    throw std::invalid_argument("poly_eval: needs at least one coordinate to fix the field");
  }
  const Field& field = point.front().field();
  std::vector<unsigned> max_exp(a.num_vars(), 0);
  for (const Term& t : a.terms()) {
    for (unsigned k = 0; k < a.num_vars(); ++k) max_exp[k] = std::max<unsigned>(max_exp[k], t.exp[k]);
  }
  std::vector<std::vector<FieldElem>> powers(a.num_vars());
  for (unsigned k = 0; k < a.num_vars(); ++k) {
    powers[k].reserve(max_exp[k] + 1);
    powers[k].emplace_back(field, 1);
    for (unsigned e = 1; e <= max_exp[k]; ++e) powers[k].push_back(powers[k].back() * point[k]);
  }
  FieldElem acc(field);
  for (const Term& t : a.terms()) {
    FieldElem v(field, static_cast<i64>(t.coeff));
    for (unsigned k = 0; k < a.num_vars(); ++k) {
      if (t.exp[k] != 0) v *= powers[k][t.exp[k]];
    }
    acc += v;
  }
  return acc;
}

Term max_monomial(const SparsePoly& a) {
  if (a.is_zero()) throw std::domain_error("zero polynomial");
  return a.terms().front();
}

}  // namespace muord
