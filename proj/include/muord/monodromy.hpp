// Monodromy data, characters, signatures, Frobenius orbits and cyclic quotients.
#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "muord/arith.hpp"

namespace muord {

struct CyclicDatum {
  int m = 0;
  std::vector<int> a;

  int r() const { return static_cast<int>(a.size()); }
  // "(m,r,(a_1,...,a_r))"
  std::string to_string() const;
  // "m=.. r=.. a=.." grammar.
  std::string to_text() const;
  bool operator==(const CyclicDatum&) const = default;
};

struct AbelianDatum {
  std::vector<int> invariant_factors;
  std::vector<std::vector<int>> elements;

  int r() const { return static_cast<int>(elements.size()); }
  std::string to_string() const;
  std::string to_text() const;
  bool operator==(const AbelianDatum&) const = default;
};

using Datum = std::variant<CyclicDatum, AbelianDatum>;

AbelianDatum as_abelian(const CyclicDatum& d);
std::string datum_to_string(const Datum& d);
std::string datum_to_text(const Datum& d);
int datum_r(const Datum& d);
// |G|.
int group_order(const Datum& d);

// Accepts both grammars; throws std::invalid_argument with a message on syntax errors.
Datum parse_datum(const std::string& text);

std::vector<std::string> validate(const CyclicDatum& d);
std::vector<std::string> validate(const AbelianDatum& d);
std::vector<std::string> validate(const Datum& d);

int genus(const CyclicDatum& d);
int genus(const AbelianDatum& d);
int genus(const Datum& d);

CyclicDatum extend_datum(const CyclicDatum& d, int c);

// Characters of G = (+) Z/d_i as exponent tuples, labelled in mixed radix with
// the first component most significant. Label 0 is the trivial character.
class CharacterGroup {
 public:
  explicit CharacterGroup(std::vector<int> moduli);

  const std::vector<int>& moduli() const { return moduli_; }
  std::size_t size() const { return size_; }
  int exponent() const { return exponent_; }

  std::vector<int> tuple(std::size_t label) const;
  std::size_t label(const std::vector<int>& tuple) const;
  // chi -> chi^k.
  std::size_t power(std::size_t label, i64 k) const;
  std::size_t conjugate(std::size_t label) const { return power(label, -1); }
  int order(std::size_t label) const;
  // chi(g) = exp(2 pi i * value / exponent); returns value in [0, exponent).
  int pairing(std::size_t label, const std::vector<int>& element) const;
  std::string name(std::size_t label) const;

 private:
  std::vector<int> moduli_;
  std::size_t size_ = 1;
  int exponent_ = 1;
};

CharacterGroup character_group(const Datum& d);

struct Signature {
  std::vector<int> f;  // indexed by character label

  int operator()(std::size_t label) const { return f.at(label); }
};

Signature signature(const CyclicDatum& d);
Signature signature(const AbelianDatum& d);
Signature signature(const Datum& d);

struct FrobeniusOrbit {
  std::vector<std::size_t> members;  // tau, p tau, p^2 tau, ...; members[0] is the smallest label

  std::size_t length() const { return members.size(); }
  std::size_t first() const { return members.front(); }
  bool contains(std::size_t label) const;
  // Position of label in members; throws if absent.
  std::size_t position(std::size_t label) const;
  bool operator==(const FrobeniusOrbit&) const = default;
};

// Orbits of the nontrivial characters under chi -> chi^p, sorted by first member.
// Throws std::invalid_argument("bad prime") when p divides |G|.
std::vector<FrobeniusOrbit> frobenius_orbits(const CharacterGroup& group, u64 p);
std::vector<FrobeniusOrbit> frobenius_orbits(int m, u64 p);
// Index of O* in the orbit list.
std::size_t conjugate_orbit(const std::vector<FrobeniusOrbit>& orbits, std::size_t index,
                            const CharacterGroup& group);

struct OrbitProfile {
  int g = 0;                          // f(tau) + f(tau*)
  std::vector<int> values;            // F(O), sorted distinct f(tau*)
  std::vector<std::size_t> reps;      // reps[u]: smallest label with f(tau*) = values[u]
  std::size_t s() const { return values.size(); }
};

OrbitProfile orbit_profile(const FrobeniusOrbit& orbit, const CharacterGroup& group, const Signature& sig);

// Galois orbits chi -> chi^u, u a unit mod the exponent; sorted by smallest label.
std::vector<std::vector<std::size_t>> galois_orbits(const CharacterGroup& group);

struct CyclicQuotient {
  std::size_t generator = 0;                 // character label rho with ker rho = H
  std::string kernel;                        // "ker chi_(...)"
  CyclicDatum quotient;                      // zero inertia entries dropped; r' may be <= 2
  std::vector<std::size_t> branch_indices;   // positions of the kept branch points
  std::vector<std::size_t> character_map;    // quotient index j -> label of rho^j
  bool trivial = false;                      // r' <= 2: genus 0, skipped downstream
};

// One entry per nontrivial Galois orbit of characters (equivalently per H with G/H cyclic, H != G).
std::vector<CyclicQuotient> cyclic_quotients(const Datum& d);

}  // namespace muord
