// Finite fields F_{p^s} = F_p[t]/(pi(t)) with absolute Frobenius.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "muord/arith.hpp"

namespace muord {

inline constexpr unsigned kMaxExtensionDegree = 24;
// Keeps s products of residues inside 64 bits.
inline constexpr u64 kMaxCharacteristic = (u64{1} << 28);

using Coords = std::array<u32, kMaxExtensionDegree>;

class Field {
 public:
  // Field models are interned: the same (p, s) always yields the same object.
  static const Field& get(u64 p, unsigned s);

  u64 p() const { return p_; }
  unsigned s() const { return s_; }
  // Monic defining polynomial, coefficients low to high, length s + 1.
  const std::vector<u32>& modulus() const { return modulus_; }
  std::string describe() const;

  void mul(const Coords& a, const Coords& b, Coords& out) const;
  // Applies x -> x^{p^k} for 0 <= k < s.
  void frobenius(const Coords& a, unsigned k, Coords& out) const;

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

 private:
  Field(u64 p, unsigned s);

  u64 p_;
  unsigned s_;
  std::vector<u32> modulus_;
  // frob_[k][i * s + j]: coordinate i of (t^j)^{p^k}.
  std::vector<std::vector<u32>> frob_;
};

// Lexicographically first monic irreducible of degree s over F_p, comparing
// coefficient vectors from the top coefficient down.
std::vector<u32> first_irreducible(u64 p, unsigned s);

bool is_irreducible(const std::vector<u32>& poly, u64 p);

class FieldElem {
 public:
  FieldElem() = default;
  explicit FieldElem(const Field& field) : field_(&field) {}
  FieldElem(const Field& field, i64 value);
  FieldElem(const Field& field, const std::vector<u32>& coords);

  const Field& field() const { return *field_; }
  bool has_field() const { return field_ != nullptr; }
  const Coords& coords() const { return c_; }
  u32 coord(unsigned i) const { return c_[i]; }

  bool is_zero() const;
  bool is_one() const;

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator-() const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem& operator+=(const FieldElem& o);
  FieldElem& operator-=(const FieldElem& o);
  FieldElem& operator*=(const FieldElem& o);
  FieldElem scaled(u64 c) const;

  FieldElem inverse() const;
  FieldElem pow(u64 e) const;

  bool operator==(const FieldElem& o) const;
  bool operator!=(const FieldElem& o) const { return !(*this == o); }
  // Total order on coordinates, for sorting and dedup.
  bool operator<(const FieldElem& o) const;

  // Coordinate form c0:c1:...:c_{s-1}; a bare residue when s = 1.
  std::string to_string() const;
  static FieldElem parse(const Field& field, const std::string& text);

 private:
  const Field* field_ = nullptr;
  Coords c_{};
};

FieldElem random_element(const Field& field, std::mt19937_64& rng);

// x^{p^k}; k may be negative and is taken mod s.
FieldElem frobenius(const FieldElem& x, i64 k);

}  // namespace muord
