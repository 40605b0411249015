// Ekedahl-Oort words, concrete mod-p Dieudonne modules on an orbit pair, the
// ordinary template, and the canonical filtration.
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "muord/linalg.hpp"
#include "muord/newton.hpp"

namespace muord {

// Permutations are stored 1-based: w[j - 1] = w(j).
using Word = std::vector<int>;

Word maximal_word(int f, int g);
// Jump positions j_1 < j_2 < ... get 1, 2, ...; the others get f + 1, f + 2, ...
Word word_from_jumps(const std::vector<int>& jumps, int g);
int word_length(const Word& w, int f);
bool is_maximal(const Word& w, int f);
bool satisfies_word_property(const Word& w, int f);
int inversions(const Word& w);
std::string word_to_string(const Word& w);

struct CharacterWord {
  std::size_t label = 0;
  int f = 0;
  int g = 0;
  Word w;
  std::vector<int> jumps;   // j_{tau,k}
  std::vector<int> others;  // i_{tau,k}
};

struct EOWord {
  std::map<std::size_t, CharacterWord> words;

  const CharacterWord& at(std::size_t label) const { return words.at(label); }
  bool all_maximal() const;
};

// Mod-p Dieudonne data on the characters of an orbit pair O u O*.
struct DieudonneModule {
  const Field* field = nullptr;
  OrbitShape shape;
  std::map<std::size_t, SemilinearMap> F;       // M_tau -> M_{p tau}, twist +1
  std::map<std::size_t, SemilinearMap> V;       // M_tau -> M_{tau/p}, twist -1
  std::map<std::size_t, Matrix> pairing;        // Gram matrix of b on M_tau x M_{tau*}
  std::map<std::size_t, SemilinearMap> Vprime;  // M_tau -> M_{p tau}, twist +1; empty for templates
  std::map<std::size_t, std::size_t> q_dim;     // dim Q_tau; coordinates of Q_tau come first

  std::size_t dim() const { return static_cast<std::size_t>(shape.g); }
};

DieudonneModule build_ordinary_module(const OrbitShape& shape, const Field& field);

struct AxiomReport {
  bool dims = true;
  bool ker_f_is_im_v = true;
  bool ker_v_is_im_f = true;
  bool pairing_compatible = true;
  bool alternating = true;
  bool ker_vprime_is_q = true;
  bool im_f_meets_im_vprime_trivially = true;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

// Checks the module axioms; the V' conditions only when Vprime is populated.
AxiomReport check_axioms(const DieudonneModule& m, std::mt19937_64& rng, int vector_pairs = 50);

// b(x, y) for x in M_tau, y in M_{tau*}.
FieldElem pairing_value(const DieudonneModule& m, std::size_t tau, const Vec& x, const Vec& y);

// Canonical filtration and the resulting word at every character of the module.
// Throws std::runtime_error on malformed input.
EOWord eo_word_from_module(const DieudonneModule& m);

}  // namespace muord
