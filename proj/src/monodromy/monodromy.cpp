#include "muord/monodromy.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace muord {

namespace {

std::string join(const std::vector<int>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + std::to_string(v[i]);
  return out;
}

int parse_int(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("expected an integer, got '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("expected an integer, got '" + s + "'");
  return v;
}

std::vector<int> parse_int_list(const std::string& s, char sep) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) out.push_back(parse_int(part));
  if (out.empty()) throw std::invalid_argument("empty list '" + s + "'");
  return out;
}

}  // namespace

std::string CyclicDatum::to_string() const { return "(" + std::to_string(m) + "," + std::to_string(r()) + ",(" + join(a, ",") + "))"; }

std::string CyclicDatum::to_text() const {
  return "m=" + std::to_string(m) + " r=" + std::to_string(r()) + " a=" + join(a, ",");
}

std::string AbelianDatum::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < invariant_factors.size(); ++i) out += (i ? "xZ/" : "Z/") + std::to_string(invariant_factors[i]);
  out += "," + std::to_string(r()) + ",(";
  for (std::size_t k = 0; k < elements.size(); ++k) out += (k ? ",(" : "(") + join(elements[k], ",") + ")";
  return out + "))";
}

std::string AbelianDatum::to_text() const {
  std::string out = "G=" + join(invariant_factors, "x") + " r=" + std::to_string(r()) + " a=";
  for (std::size_t k = 0; k < elements.size(); ++k) out += (k ? ";(" : "(") + join(elements[k], ",") + ")";
  return out;
}

AbelianDatum as_abelian(const CyclicDatum& d) {
  AbelianDatum out;
  out.invariant_factors = {d.m};
  for (int x : d.a) out.elements.push_back({x});
  return out;
}

std::string datum_to_string(const Datum& d) {
  return std::visit([](const auto& x) { return x.to_string(); }, d);
}

std::string datum_to_text(const Datum& d) {
  return std::visit([](const auto& x) { return x.to_text(); }, d);
}

int datum_r(const Datum& d) {
  return std::visit([](const auto& x) { return x.r(); }, d);
}

int group_order(const Datum& d) {
  if (const auto* c = std::get_if<CyclicDatum>(&d)) return c->m;
  const auto& ab = std::get<AbelianDatum>(d);
  int n = 1;
  for (int f : ab.invariant_factors) n *= f;
  return n;
}

Datum parse_datum(const std::string& text) {
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  }
  static const std::regex kv(R"(([A-Za-z]+)=(.*?)(?=[A-Za-z]+=|$))");
  std::map<std::string, std::string> fields;
  std::size_t consumed = 0;
  for (auto it = std::sregex_iterator(compact.begin(), compact.end(), kv); it != std::sregex_iterator(); ++it) {
    if (static_cast<std::size_t>(it->position()) != consumed) {
      throw std::invalid_argument("unparsed text '" + compact.substr(consumed, it->position() - consumed) + "'");
    }
    consumed += it->length();
    const std::string key = (*it)[1];
    if (key != "m" && key != "r" && key != "a" && key != "G") throw std::invalid_argument("unknown datum key '" + key + "'");
    if (fields.count(key)) throw std::invalid_argument("duplicate datum key '" + key + "'");
    fields[key] = (*it)[2];
  }
  if (consumed != compact.size()) throw std::invalid_argument("unparsed text '" + compact.substr(consumed) + "'");
  if (!fields.count("a") || !fields.count("r")) throw std::invalid_argument("datum needs r= and a=");
  const int r = parse_int(fields["r"]);
  if (fields.count("m") == fields.count("G")) throw std::invalid_argument("datum needs exactly one of m= or G=");
  if (fields.count("m")) {
    CyclicDatum d{parse_int(fields["m"]), parse_int_list(fields["a"], ',')};
    if (d.r() != r) throw std::invalid_argument("r=" + std::to_string(r) + " but a has " + std::to_string(d.r()) + " entries");
    return d;
  }
  AbelianDatum d;
  d.invariant_factors = parse_int_list(fields["G"], 'x');
  std::stringstream ss(fields["a"]);
  std::string part;
  while (std::getline(ss, part, ';')) {
    if (part.size() < 2 || part.front() != '(' || part.back() != ')') throw std::invalid_argument("group element must be parenthesised: '" + part + "'");
    auto el = parse_int_list(part.substr(1, part.size() - 2), ',');
    if (el.size() != d.invariant_factors.size()) throw std::invalid_argument("group element '" + part + "' has wrong length");
    d.elements.push_back(std::move(el));
  }
  if (d.r() != r) throw std::invalid_argument("r=" + std::to_string(r) + " but a has " + std::to_string(d.r()) + " entries");
  return d;
}

std::vector<std::string> validate(const CyclicDatum& d) {
  std::vector<std::string> out;
  if (d.m < 2) out.push_back("m must be at least 2");
  if (d.r() < 3) out.push_back("r must be at least 3");
  if (d.m < 2) return out;
  for (int k = 0; k < d.r(); ++k) {
    if (d.a[k] < 1 || d.a[k] > d.m - 1) out.push_back("a_" + std::to_string(k + 1) + " = " + std::to_string(d.a[k]) + " not in [1, m-1]");
  }
  long sum = std::accumulate(d.a.begin(), d.a.end(), 0L);
  if (sum % d.m != 0) out.push_back("sum of a is " + std::to_string(sum) + ", not 0 mod " + std::to_string(d.m));
  int g = d.m;
  for (int x : d.a) g = std::gcd(g, x);
  if (g != 1) out.push_back("gcd(a_1,...,a_r,m) = " + std::to_string(g) + ", not 1");
  return out;
}

std::vector<std::string> validate(const AbelianDatum& d) {
  std::vector<std::string> out;
  if (d.invariant_factors.empty()) out.push_back("G has no factors");
  for (int f : d.invariant_factors) {
    if (f < 2) out.push_back("invariant factor " + std::to_string(f) + " must be at least 2");
  }
  if (d.r() < 3) out.push_back("r must be at least 3");
  if (!out.empty()) return out;
  const std::size_t n = d.invariant_factors.size();
  std::vector<int> sum(n, 0);
  bool ranges_ok = true;
  for (int k = 0; k < d.r(); ++k) {
    const auto& el = d.elements[k];
    bool zero = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (el[i] < 0 || el[i] >= d.invariant_factors[i]) {
        out.push_back("a_" + std::to_string(k + 1) + " coordinate " + std::to_string(i + 1) + " out of range");
        ranges_ok = false;
      }
      if (el[i] % d.invariant_factors[i] != 0) zero = false;
      sum[i] += el[i];
    }
    if (zero) out.push_back("a_" + std::to_string(k + 1) + " is zero in G");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (sum[i] % d.invariant_factors[i] != 0) {
      out.push_back("sum of a is nonzero in coordinate " + std::to_string(i + 1));
    }
  }
  if (!ranges_ok) return out;
  // Closure of the subgroup generated by the a_k.
  CharacterGroup shape(d.invariant_factors);  // same mixed-radix labels for elements
  std::vector<bool> seen(shape.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    auto cur = shape.tuple(stack.back());
    stack.pop_back();
    for (const auto& el : d.elements) {
      std::vector<int> next(n);
      for (std::size_t i = 0; i < n; ++i) next[i] = (cur[i] + el[i]) % d.invariant_factors[i];
      const std::size_t lbl = shape.label(next);
      if (!seen[lbl]) {
        seen[lbl] = true;
        ++count;
        stack.push_back(lbl);
      }
    }
  }
  if (count != shape.size()) out.push_back("a_1,...,a_r do not generate G");
  return out;
}

std::vector<std::string> validate(const Datum& d) {
  return std::visit([](const auto& x) { return validate(x); }, d);
}

int genus(const CyclicDatum& d) {
  int s = 0;
  for (int x : d.a) s += std::gcd(x, d.m);
  return 1 + (d.m * (d.r() - 2) - s) / 2;
}

int genus(const AbelianDatum& d) {
  CharacterGroup shape(d.invariant_factors);
  const int n = static_cast<int>(shape.size());
  int s = 0;
  for (const auto& el : d.elements) {
    int ord = 1;
    for (std::size_t i = 0; i < el.size(); ++i) {
      const int di = d.invariant_factors[i];
      ord = std::lcm(ord, di / std::gcd(static_cast<int>(pos_mod(el[i], di)), di));
    }
    s += n / ord;
  }
  return 1 + (n * (d.r() - 2) - s) / 2;
}

int genus(const Datum& d) {
  return std::visit([](const auto& x) { return genus(x); }, d);
}

CyclicDatum extend_datum(const CyclicDatum& d, int c) {
  if (pos_mod(c, d.m) == 0) throw std::invalid_argument("extend_datum: c must be nonzero mod m");
  const int cc = static_cast<int>(pos_mod(c, d.m));
  CyclicDatum out{d.m, {cc, d.m - cc}};
  out.a.insert(out.a.end(), d.a.begin(), d.a.end());
  return out;
}

CharacterGroup::CharacterGroup(std::vector<int> moduli) : moduli_(std::move(moduli)) {
  for (int d : moduli_) {
    if (d < 1) throw std::invalid_argument("CharacterGroup: moduli must be positive");
    size_ *= static_cast<std::size_t>(d);
    exponent_ = std::lcm(exponent_, d);
  }
}

std::vector<int> CharacterGroup::tuple(std::size_t label) const {
  std::vector<int> t(moduli_.size());
  for (std::size_t i = moduli_.size(); i-- > 0;) {
    t[i] = static_cast<int>(label % moduli_[i]);
    label /= moduli_[i];
  }
  return t;
}

std::size_t CharacterGroup::label(const std::vector<int>& t) const {
  std::size_t lbl = 0;
  for (std::size_t i = 0; i < moduli_.size(); ++i) lbl = lbl * moduli_[i] + static_cast<std::size_t>(pos_mod(t[i], moduli_[i]));
  return lbl;
}

std::size_t CharacterGroup::power(std::size_t lbl, i64 k) const {
  auto t = tuple(lbl);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<int>(pos_mod(static_cast<i64>(t[i]) * pos_mod(k, moduli_[i]), moduli_[i]));
  return label(t);
}

int CharacterGroup::order(std::size_t lbl) const {
  const auto t = tuple(lbl);
  int ord = 1;
  for (std::size_t i = 0; i < t.size(); ++i) ord = std::lcm(ord, moduli_[i] / std::gcd(t[i] == 0 ? moduli_[i] : t[i], moduli_[i]));
  return ord;
}

int CharacterGroup::pairing(std::size_t lbl, const std::vector<int>& element) const {
  const auto t = tuple(lbl);
  i64 v = 0;
  for (std::size_t i = 0; i < t.size(); ++i) v += static_cast<i64>(t[i]) * element[i] * (exponent_ / moduli_[i]);
  return static_cast<int>(pos_mod(v, exponent_));
}

std::string CharacterGroup::name(std::size_t lbl) const {
  if (moduli_.size() == 1) return "tau_" + std::to_string(lbl);
  return "chi_(" + join(tuple(lbl), ",") + ")";
}

CharacterGroup character_group(const Datum& d) {
  if (const auto* c = std::get_if<CyclicDatum>(&d)) return CharacterGroup({c->m});
  return CharacterGroup(std::get<AbelianDatum>(d).invariant_factors);
}

Signature signature(const AbelianDatum& d) {
  CharacterGroup group(d.invariant_factors);
  const int e = group.exponent();
  Signature sig;
  sig.f.assign(group.size(), 0);
  for (std::size_t lbl = 1; lbl < group.size(); ++lbl) {
    i64 total = 0;
    for (const auto& el : d.elements) total += pos_mod(-group.pairing(lbl, el), e);
    if (total % e != 0) throw std::logic_error("signature: non-integral value (invalid datum?)");
    sig.f[lbl] = static_cast<int>(total / e - 1);
  }
  return sig;
}

Signature signature(const CyclicDatum& d) { return signature(as_abelian(d)); }

Signature signature(const Datum& d) {
  return std::visit([](const auto& x) { return signature(x); }, d);
}

bool FrobeniusOrbit::contains(std::size_t lbl) const {
  return std::find(members.begin(), members.end(), lbl) != members.end();
}

std::size_t FrobeniusOrbit::position(std::size_t lbl) const {
  auto it = std::find(members.begin(), members.end(), lbl);
  if (it == members.end()) throw std::out_of_range("FrobeniusOrbit: character not in orbit");
  return static_cast<std::size_t>(it - members.begin());
}

std::vector<FrobeniusOrbit> frobenius_orbits(const CharacterGroup& group, u64 p) {
  if (std::gcd(static_cast<u64>(group.exponent()), p) != 1) throw std::invalid_argument("bad prime");
  std::vector<bool> seen(group.size(), false);
  std::vector<FrobeniusOrbit> out;
  for (std::size_t start = 1; start < group.size(); ++start) {
    if (seen[start]) continue;
    FrobeniusOrbit orbit;
    std::size_t cur = start;
    do {
      seen[cur] = true;
      orbit.members.push_back(cur);
      cur = group.power(cur, static_cast<i64>(p % static_cast<u64>(group.exponent())));
    } while (cur != start);
    out.push_back(std::move(orbit));
  }
  return out;
}

std::vector<FrobeniusOrbit> frobenius_orbits(int m, u64 p) { return frobenius_orbits(CharacterGroup({m}), p); }

std::size_t conjugate_orbit(const std::vector<FrobeniusOrbit>& orbits, std::size_t index, const CharacterGroup& group) {
  const std::size_t target = group.conjugate(orbits.at(index).first());
  for (std::size_t k = 0; k < orbits.size(); ++k) {
    if (orbits[k].contains(target)) return k;
  }
  throw std::logic_error("conjugate_orbit: conjugate not found");
}

OrbitProfile orbit_profile(const FrobeniusOrbit& orbit, const CharacterGroup& group, const Signature& sig) {
  OrbitProfile prof;
  const std::size_t t0 = orbit.first();
  prof.g = sig(t0) + sig(group.conjugate(t0));
  std::map<int, std::size_t> rep;
  for (std::size_t t : orbit.members) {
    const int v = sig(group.conjugate(t));
    auto it = rep.find(v);
    if (it == rep.end() || t < it->second) rep[v] = t;
  }
  for (const auto& [v, t] : rep) {
    prof.values.push_back(v);
    prof.reps.push_back(t);
  }
  return prof;
}

std::vector<std::vector<std::size_t>> galois_orbits(const CharacterGroup& group) {
  const int e = group.exponent();
  std::vector<bool> seen(group.size(), false);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t start = 0; start < group.size(); ++start) {
    if (seen[start]) continue;
    std::set<std::size_t> orbit;
    for (int u = 1; u <= e; ++u) {
      if (std::gcd(u, e) == 1) orbit.insert(group.power(start, u));
    }
    for (auto t : orbit) seen[t] = true;
    out.emplace_back(orbit.begin(), orbit.end());
  }
  return out;
}

std::vector<CyclicQuotient> cyclic_quotients(const Datum& d) {
  const AbelianDatum ab = std::holds_alternative<CyclicDatum>(d) ? as_abelian(std::get<CyclicDatum>(d)) : std::get<AbelianDatum>(d);
  const CharacterGroup group(ab.invariant_factors);
  const int e = group.exponent();
  std::vector<CyclicQuotient> out;
  for (const auto& orbit : galois_orbits(group)) {
    const std::size_t rho = orbit.front();
    if (rho == 0) continue;
    CyclicQuotient q;
    q.generator = rho;
    q.kernel = "ker " + group.name(rho);
    const int deg = group.order(rho);
    q.quotient.m = deg;
    for (std::size_t k = 0; k < ab.elements.size(); ++k) {
      const int b = group.pairing(rho, ab.elements[k]) / (e / deg);
      if (b != 0) {
        q.quotient.a.push_back(b);
        q.branch_indices.push_back(k);
      }
    }
    for (int j = 0; j < deg; ++j) q.character_map.push_back(group.power(rho, j));
    q.trivial = q.quotient.r() <= 2;
    out.push_back(std::move(q));
  }
  return out;
}

}  // namespace muord
