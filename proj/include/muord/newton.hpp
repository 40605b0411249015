// mu-ordinary Newton polygons and the orbit shapes they are computed from.
#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "muord/monodromy.hpp"

namespace muord {

// A Frobenius orbit O with its conjugate O*, carrying the signature values on both.
// dual.members[k] = conj(orbit.members[k]), so Frobenius acts on both lists by shifting.
struct OrbitShape {
  FrobeniusOrbit orbit;
  FrobeniusOrbit dual;
  std::map<std::size_t, std::size_t> conj;
  std::map<std::size_t, int> f;
  int g = 0;

  bool self_conjugate() const { return orbit.contains(dual.first()); }
  std::size_t length() const { return orbit.length(); }
  // Members of O followed by the members of O* not in O.
  std::vector<std::size_t> labels() const;
  std::size_t next(std::size_t label) const;
  std::size_t prev(std::size_t label) const;
  int f_of(std::size_t label) const { return f.at(label); }
  int f_dual(std::size_t label) const { return f.at(conj.at(label)); }
};

OrbitShape orbit_shape(const FrobeniusOrbit& orbit, const CharacterGroup& group, const Signature& sig);
// Labels 0..l-1 on O; O* is 0..l-1 shifted by l/2 when self-conjugate, otherwise l..2l-1.
// f_on_orbit[k] = f(p^k tau); a self-conjugate shape needs f[k + l/2] = g - f[k].
OrbitShape synthetic_shape(const std::vector<int>& f_on_orbit, int g, bool self_conjugate);

struct Slope {
  i64 num = 0;
  i64 den = 1;
  i64 mult = 0;
};

class NewtonPolygon {
 public:
  void add(i64 num, i64 den, i64 mult);
  void merge(const NewtonPolygon& other);

  // Sorted by slope, lowest terms, one entry per distinct slope.
  const std::vector<Slope>& slopes() const { return slopes_; }
  i64 height() const;
  bool is_symmetric() const;
  // Sum of slope * multiplicity as a reduced fraction (num, den).
  std::pair<i64, i64> weight() const;
  // One "slope num/den x mult" line per slope.
  std::string to_string() const;
  bool operator==(const NewtonPolygon& o) const;

 private:
  std::vector<Slope> slopes_;
};

NewtonPolygon mu_ordinary_orbit(const OrbitShape& shape);
NewtonPolygon mu_ordinary_orbit(const FrobeniusOrbit& orbit, const CharacterGroup& group, const Signature& sig);

struct NewOrbit {
  std::size_t quotient_index = 0;  // into cyclic_quotients(datum)
  FrobeniusOrbit orbit;            // labels are quotient character indices
};

// New-character orbits of every nontrivial cyclic quotient.
std::vector<NewOrbit> new_orbits(const std::vector<CyclicQuotient>& quotients, u64 p);

NewtonPolygon mu_ordinary_total(const Datum& datum, u64 p);

}  // namespace muord
