#include "muord/newton.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace muord {

std::vector<std::size_t> OrbitShape::labels() const {
  std::vector<std::size_t> out = orbit.members;
  if (!self_conjugate()) out.insert(out.end(), dual.members.begin(), dual.members.end());
  return out;
}

std::size_t OrbitShape::next(std::size_t label) const {
  const auto& o = orbit.contains(label) ? orbit : dual;
  return o.members[(o.position(label) + 1) % o.length()];
}

std::size_t OrbitShape::prev(std::size_t label) const {
  const auto& o = orbit.contains(label) ? orbit : dual;
  return o.members[(o.position(label) + o.length() - 1) % o.length()];
}

OrbitShape orbit_shape(const FrobeniusOrbit& orbit, const CharacterGroup& group, const Signature& sig) {
  OrbitShape s;
  s.orbit = orbit;
  for (std::size_t t : orbit.members) s.dual.members.push_back(group.conjugate(t));
  for (std::size_t t : s.labels()) {
    s.conj[t] = group.conjugate(t);
    s.f[t] = sig(t);
  }
  s.g = sig(orbit.first()) + sig(group.conjugate(orbit.first()));
  return s;
}

OrbitShape synthetic_shape(const std::vector<int>& f_on_orbit, int g, bool self_conjugate) {
  const std::size_t l = f_on_orbit.size();
  if (l == 0) throw std::invalid_argument("synthetic_shape: empty orbit");
  OrbitShape s;
  s.g = g;
  for (std::size_t k = 0; k < l; ++k) s.orbit.members.push_back(k);
  if (self_conjugate) {
    if (l % 2 != 0) throw std::invalid_argument("synthetic_shape: self-conjugate orbit needs even length");
    for (std::size_t k = 0; k < l; ++k) {
      const std::size_t c = (k + l / 2) % l;
      if (f_on_orbit[c] != g - f_on_orbit[k]) throw std::invalid_argument("synthetic_shape: f not compatible with conjugation");
      s.dual.members.push_back(c);
      s.conj[k] = c;
      s.f[k] = f_on_orbit[k];
    }
    return s;
  }
  for (std::size_t k = 0; k < l; ++k) {
    s.dual.members.push_back(l + k);
    s.conj[k] = l + k;
    s.conj[l + k] = k;
    s.f[k] = f_on_orbit[k];
    s.f[l + k] = g - f_on_orbit[k];
  }
  return s;
}

void NewtonPolygon::add(i64 num, i64 den, i64 mult) {
  if (den <= 0 || mult <= 0) throw std::invalid_argument("NewtonPolygon: bad slope");
  const i64 d = std::gcd(num, den);
  num /= d;
  den /= d;
  for (auto& s : slopes_) {
    if (s.num == num && s.den == den) {
      s.mult += mult;
      return;
    }
  }
  slopes_.push_back({num, den, mult});
  std::sort(slopes_.begin(), slopes_.end(), [](const Slope& a, const Slope& b) { return a.num * b.den < b.num * a.den; });
}

void NewtonPolygon::merge(const NewtonPolygon& other) {
  for (const auto& s : other.slopes_) add(s.num, s.den, s.mult);
}

i64 NewtonPolygon::height() const {
  i64 h = 0;
  for (const auto& s : slopes_) h += s.mult;
  return h;
}

bool NewtonPolygon::is_symmetric() const {
  for (const auto& s : slopes_) {
    const i64 cnum = s.den - s.num;
    auto it = std::find_if(slopes_.begin(), slopes_.end(), [&](const Slope& t) { return t.num == cnum && t.den == s.den; });
    if (it == slopes_.end() || it->mult != s.mult) return false;
  }
  return true;
}

std::pair<i64, i64> NewtonPolygon::weight() const {
  i64 num = 0, den = 1;
  for (const auto& s : slopes_) {
    const i64 l = std::lcm(den, s.den);
    num = num * (l / den) + s.num * s.mult * (l / s.den);
    den = l;
    const i64 g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  return {num, den};
}

std::string NewtonPolygon::to_string() const {
  std::string out;
  for (const auto& s : slopes_) {
    out += "slope " + std::to_string(s.num) + "/" + std::to_string(s.den) + " x " + std::to_string(s.mult) + "\n";
  }
  return out;
}

bool NewtonPolygon::operator==(const NewtonPolygon& o) const {
  if (slopes_.size() != o.slopes_.size()) return false;
  for (std::size_t i = 0; i < slopes_.size(); ++i) {
    if (slopes_[i].num != o.slopes_[i].num || slopes_[i].den != o.slopes_[i].den || slopes_[i].mult != o.slopes_[i].mult) return false;
  }
  return true;
}

NewtonPolygon mu_ordinary_orbit(const OrbitShape& shape) {
  NewtonPolygon np;
  const i64 l = static_cast<i64>(shape.length());
  for (int j = 1; j <= shape.g; ++j) {
    i64 count = 0;
    for (std::size_t t : shape.orbit.members) count += shape.f_of(t) >= j ? 1 : 0;
    np.add(count, l, l);
  }
  return np;
}

NewtonPolygon mu_ordinary_orbit(const FrobeniusOrbit& orbit, const CharacterGroup& group, const Signature& sig) {
  return mu_ordinary_orbit(orbit_shape(orbit, group, sig));
}

std::vector<NewOrbit> new_orbits(const std::vector<CyclicQuotient>& quotients, u64 p) {
  std::vector<NewOrbit> out;
  for (std::size_t q = 0; q < quotients.size(); ++q) {
    if (quotients[q].trivial) continue;
    const int d = quotients[q].quotient.m;
    for (auto& o : frobenius_orbits(d, p)) {
      if (std::gcd(static_cast<int>(o.first()), d) == 1) out.push_back({q, std::move(o)});
    }
  }
  return out;
}

NewtonPolygon mu_ordinary_total(const Datum& datum, u64 p) {
  const auto quotients = cyclic_quotients(datum);
  NewtonPolygon total;
  for (const auto& no : new_orbits(quotients, p)) {
    const auto& q = quotients[no.quotient_index].quotient;
    total.merge(mu_ordinary_orbit(no.orbit, CharacterGroup({q.m}), signature(q)));
  }
  return total;
}

}  // namespace muord
