#include "muord/field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace muord {

namespace {

using Poly = std::vector<u64>;  // dense, low to high, trimmed

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, u64 p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const u64 lead_inv = mod_inv(m.back(), p);
  while (a.size() > dm) {
    const u64 c = mod_mul(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t j = 0; j <= dm; ++j) {
      a[shift + j] = (a[shift + j] + p - mod_mul(c, m[j], p)) % p;
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = (out[i + j] + mod_mul(a[i], b[j], p)) % p;
    }
  }
  return poly_mod(std::move(out), m, p);
}

Poly poly_powmod(Poly base, u64 e, const Poly& m, u64 p) {
  Poly result{1};
  base = poly_mod(std::move(base), m, p);
  while (e > 0) {
    if (e & 1U) result = poly_mulmod(result, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1U;
  }
  return result;
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly sub(Poly a, const Poly& b, u64 p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

}  // namespace

bool is_irreducible(const std::vector<u32>& poly, u64 p) {
  Poly f(poly.begin(), poly.end());
  trim(f);
  if (f.size() < 2) return false;
  const u64 s = f.size() - 1;
  if (s == 1) return true;
  const Poly x{0, 1};
  // Rabin: x^{p^s} = x mod f, and gcd(x^{p^{s/q}} - x, f) = 1 for primes q | s.
  auto x_pow_pk = [&](u64 k) {
    Poly cur = x;
    for (u64 t = 0; t < k; ++t) cur = poly_powmod(cur, p, f, p);
    return cur;
  };
  if (!sub(x_pow_pk(s), x, p).empty()) return false;
  for (u64 q : prime_factors(s)) {
    Poly g = poly_gcd(f, sub(x_pow_pk(s / q), x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

std::vector<u32> first_irreducible(u64 p, unsigned s) {
  std::vector<u32> poly(s + 1, 0);
  poly[s] = 1;
  if (s == 1) return poly;
  // Odometer over (c_{s-1}, ..., c_0), c_0 varying fastest.
  while (true) {
    if (poly[0] != 0 && is_irreducible(poly, p)) return poly;
    unsigned i = 0;
    while (i < s) {
      if (++poly[i] < p) break;
      poly[i] = 0;
      ++i;
    }
    if (i == s) throw std::logic_error("first_irreducible: search exhausted");
  }
}

Field::Field(u64 p, unsigned s) : p_(p), s_(s), modulus_(first_irreducible(p, s)) {
  Poly m(modulus_.begin(), modulus_.end());
  frob_.assign(s, std::vector<u32>(static_cast<std::size_t>(s) * s, 0));
  std::vector<Poly> images(s);
  Poly cur{1};
  for (unsigned j = 0; j < s; ++j) {
    images[j] = cur;
    cur = poly_mulmod(cur, Poly{0, 1}, m, p);
  }
  for (unsigned k = 0; k < s; ++k) {
    for (unsigned j = 0; j < s; ++j) {
      for (unsigned i = 0; i < images[j].size(); ++i) {
        frob_[k][i * s + j] = static_cast<u32>(images[j][i]);
      }
    }
    // images[j] <- (images[j])^p
    for (unsigned j = 0; j < s; ++j) images[j] = poly_powmod(images[j], p, m, p);
  }
}

const Field& Field::get(u64 p, unsigned s) {
  if (!is_prime(p)) throw std::invalid_argument("Field: characteristic must be prime");
  if (p >= kMaxCharacteristic) throw std::invalid_argument("Field: characteristic too large");
  if (s == 0 || s > kMaxExtensionDegree) throw std::invalid_argument("Field: unsupported extension degree");
  static std::mutex mutex;
  static std::map<std::pair<u64, unsigned>, std::unique_ptr<Field>> registry;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = registry[{p, s}];
  if (!slot) slot.reset(new Field(p, s));
  return *slot;
}

std::string Field::describe() const {
  std::ostringstream os;
  os << "F_" << p_;
  if (s_ > 1) {
    os << "^" << s_ << " mod [";
    for (unsigned k = 0; k <= s_; ++k) os << (k ? "," : "") << modulus_[k];
    os << "]";
  }
  return os.str();
}

void Field::mul(const Coords& a, const Coords& b, Coords& out) const {
  if (s_ == 1) {
    out[0] = static_cast<u32>((static_cast<u64>(a[0]) * b[0]) % p_);
    return;
  }
  std::array<u64, 2 * kMaxExtensionDegree> prod{};
  for (unsigned i = 0; i < s_; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; j < s_; ++j) prod[i + j] += static_cast<u64>(a[i]) * b[j];
  }
  for (unsigned k = 0; k < 2 * s_ - 1; ++k) prod[k] %= p_;
  for (unsigned k = 2 * s_ - 2; k >= s_; --k) {
    const u64 c = prod[k];
    if (c == 0) continue;
    const u64 neg = p_ - c;
    for (unsigned j = 0; j < s_; ++j) {
      prod[k - s_ + j] = (prod[k - s_ + j] + neg * modulus_[j]) % p_;
    }
  }
  for (unsigned k = 0; k < s_; ++k) out[k] = static_cast<u32>(prod[k]);
}

void Field::frobenius(const Coords& a, unsigned k, Coords& out) const {
  if (s_ == 1 || k == 0) {
    out = a;
    return;
  }
  const auto& mat = frob_[k];
  Coords res{};
  for (unsigned i = 0; i < s_; ++i) {
    u64 acc = 0;
    for (unsigned j = 0; j < s_; ++j) acc += static_cast<u64>(mat[i * s_ + j]) * a[j];
    res[i] = static_cast<u32>(acc % p_);
  }
  out = res;
}

FieldElem::FieldElem(const Field& field, i64 value) : field_(&field) {
  c_[0] = static_cast<u32>(mod_reduce(value, field.p()));
}

FieldElem::FieldElem(const Field& field, const std::vector<u32>& coords) : field_(&field) {
  if (coords.size() > field.s()) throw std::invalid_argument("FieldElem: too many coordinates");
  for (std::size_t i = 0; i < coords.size(); ++i) c_[i] = static_cast<u32>(coords[i] % field.p());
}

bool FieldElem::is_zero() const {
  for (unsigned i = 0; i < field_->s(); ++i) {
    if (c_[i] != 0) return false;
  }
  return true;
}

bool FieldElem::is_one() const {
  if (c_[0] != 1) return false;
  for (unsigned i = 1; i < field_->s(); ++i) {
    if (c_[i] != 0) return false;
  }
  return true;
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  FieldElem r = *this;
  r += o;
  return r;
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
  FieldElem r = *this;
  r -= o;
  return r;
}

FieldElem FieldElem::operator-() const {
  FieldElem r(*field_);
  const u64 p = field_->p();
  for (unsigned i = 0; i < field_->s(); ++i) r.c_[i] = c_[i] == 0 ? 0 : static_cast<u32>(p - c_[i]);
  return r;
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
  FieldElem r(*field_);
  field_->mul(c_, o.c_, r.c_);
  return r;
}

FieldElem& FieldElem::operator+=(const FieldElem& o) {
  const u64 p = field_->p();
  for (unsigned i = 0; i < field_->s(); ++i) {
    u64 v = static_cast<u64>(c_[i]) + o.c_[i];
    c_[i] = static_cast<u32>(v >= p ? v - p : v);
  }
  return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& o) {
  const u64 p = field_->p();
  for (unsigned i = 0; i < field_->s(); ++i) {
    u64 v = static_cast<u64>(c_[i]) + p - o.c_[i];
    c_[i] = static_cast<u32>(v >= p ? v - p : v);
  }
  return *this;
}

FieldElem& FieldElem::operator*=(const FieldElem& o) {
  field_->mul(c_, o.c_, c_);
  return *this;
}

FieldElem FieldElem::scaled(u64 c) const {
  FieldElem r(*field_);
  const u64 p = field_->p();
  c %= p;
  for (unsigned i = 0; i < field_->s(); ++i) r.c_[i] = static_cast<u32>((c_[i] * c) % p);
  return r;
}

FieldElem FieldElem::pow(u64 e) const {
  FieldElem result(*field_, 1);
  FieldElem base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    base *= base;
    e >>= 1U;
  }
  return result;
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) throw std::domain_error("FieldElem: inverse of zero");
  const u64 p = field_->p();
  const unsigned s = field_->s();
  if (s == 1) return FieldElem(*field_, static_cast<i64>(mod_inv(c_[0], p)));
  // Extended Euclid in F_p[t] against the modulus.
  using Poly = std::vector<u64>;
  Poly r0(field_->modulus().begin(), field_->modulus().end());
  Poly r1(c_.begin(), c_.begin() + s);
  trim(r1);
  Poly t0{}, t1{1};
  while (!r1.empty()) {
    Poly q;
    Poly rem = r0;
    const u64 lead_inv = mod_inv(r1.back(), p);
    if (rem.size() >= r1.size()) q.assign(rem.size() - r1.size() + 1, 0);
    while (rem.size() >= r1.size() && !rem.empty()) {
      const u64 c = mod_mul(rem.back(), lead_inv, p);
      const std::size_t shift = rem.size() - r1.size();
      q[shift] = c;
      for (std::size_t j = 0; j < r1.size(); ++j) {
        rem[shift + j] = (rem[shift + j] + p - mod_mul(c, r1[j], p)) % p;
      }
      trim(rem);
    }
    // t2 = t0 - q * t1
    Poly qt(q.size() + t1.size(), 0);
    for (std::size_t i = 0; i < q.size(); ++i) {
      for (std::size_t j = 0; j < t1.size(); ++j) qt[i + j] = (qt[i + j] + mod_mul(q[i], t1[j], p)) % p;
    }
    Poly t2 = sub(t0, qt, p);
    r0 = std::move(r1);
    r1 = std::move(rem);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  // r0 is a nonzero constant.
  const u64 c_inv = mod_inv(r0[0], p);
  FieldElem out(*field_);
  for (std::size_t i = 0; i < t0.size() && i < s; ++i) out.c_[i] = static_cast<u32>(mod_mul(t0[i], c_inv, p));
  return out;
}

bool FieldElem::operator==(const FieldElem& o) const {
  if (field_ != o.field_) return false;
  for (unsigned i = 0; i < field_->s(); ++i) {
    if (c_[i] != o.c_[i]) return false;
  }
  return true;
}

bool FieldElem::operator<(const FieldElem& o) const {
  for (unsigned i = 0; i < field_->s(); ++i) {
    if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
  }
  return false;
}

std::string FieldElem::to_string() const {
  std::string out;
  for (unsigned i = 0; i < field_->s(); ++i) {
    if (i > 0) out += ':';
    out += std::to_string(c_[i]);
  }
  return out;
}

FieldElem FieldElem::parse(const Field& field, const std::string& text) {
  std::vector<u32> coords;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ':')) {
    if (part.empty()) throw std::invalid_argument("FieldElem: empty coordinate in '" + text + "'");
    std::size_t used = 0;
    unsigned long v = std::stoul(part, &used);
    if (used != part.size() || v >= field.p()) {
      throw std::invalid_argument("FieldElem: bad coordinate '" + part + "'");
    }
    coords.push_back(static_cast<u32>(v));
  }
  if (coords.size() != field.s()) throw std::invalid_argument("FieldElem: expected " + std::to_string(field.s()) + " coordinates in '" + text + "'");
  return FieldElem(field, coords);
}

FieldElem random_element(const Field& field, std::mt19937_64& rng) {
  std::vector<u32> coords(field.s());
  for (auto& c : coords) c = static_cast<u32>(uniform_below(rng, field.p()));
  return FieldElem(field, coords);
}

FieldElem frobenius(const FieldElem& x, i64 k) {
  const Field& f = x.field();
  const unsigned kk = static_cast<unsigned>(pos_mod(k, static_cast<i64>(f.s())));
  Coords out{};
  f.frobenius(x.coords(), kk, out);
  return FieldElem(f, std::vector<u32>(out.begin(), out.begin() + f.s()));
}

}  // namespace muord
