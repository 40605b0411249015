// Concrete curves: branch points over F_{p^s}, specialized Hasse-Witt triples,
// the Dieudonne module they define, the H-chain rank criterion, and witness search.
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "muord/eo.hpp"
#include "muord/hasse_witt.hpp"
#include "muord/linalg.hpp"
#include "muord/monodromy.hpp"
#include "muord/newton.hpp"

namespace muord {

struct BranchPoints {
  const Field* field = nullptr;
  std::vector<FieldElem> x;

  std::size_t size() const { return x.size(); }
  // Comma-separated coordinate forms.
  std::string to_string() const;
};

// Throws std::invalid_argument on repeated points or mixed fields.
BranchPoints make_branch_points(const Field& field, std::vector<FieldElem> x);
BranchPoints parse_branch_points(const Field& field, const std::string& text);
BranchPoints subset(const BranchPoints& pts, const std::vector<std::size_t>& indices);

struct CharacterTriple {
  Matrix phi;        // f(p tau*) x f(tau*), twist +1
  Matrix psi_prime;  // f(p tau) x f(tau*), twist +1
  Matrix psi;        // valid extension of psi restricted to ker phi
  bool psi_prime_valid = false;
};

struct TripleAt {
  const Field* field = nullptr;
  std::map<std::size_t, CharacterTriple> chars;  // keyed by character label
};

// Complement of ker phi used to extend psi by zero.
enum class Complement { pivot_columns, trailing_columns };

// psi' when it is already a valid extension, otherwise psi' o (projection onto ker phi
// along the span of the chosen coordinate vectors).
Matrix extend_psi(const CharacterTriple& t, Complement c = Complement::pivot_columns);
Matrix extend_psi(const TripleAt& triple, std::size_t i, Complement c = Complement::pivot_columns);

// Evaluates the symbolic blocks at the points; new characters only.
TripleAt specialize(const HWSymbolic& hw, const BranchPoints& pts, Complement c = Complement::pivot_columns);
// Same matrices computed from univariate expansions at the points.
TripleAt specialize_direct(const CyclicDatum& d, u64 p, const BranchPoints& pts,
                           Complement c = Complement::pivot_columns);

// Ordinary template on a shape: phi the identity on the leading block, psi anti-diagonal
// on the rest.
TripleAt triple_from_ordinary(const OrbitShape& shape, const Field& field);

// M_tau = Q_tau (+) Q_{tau*}^dual with q coordinates first; F, V, V' and the pairing.
DieudonneModule build_dieudonne(const TripleAt& triple, const OrbitShape& shape);

// dim pi_tau(H_{tau,l-1} ... H_{tau,0}(M_tau)).
int h_chain_rank(const DieudonneModule& d, std::size_t tau);

struct OrbitChain {
  std::vector<int> values;         // F(O)
  std::vector<std::size_t> reps;   // tau_u
  std::vector<int> ranks;          // h_chain_rank(tau_u), computed while the prefix passes
  int covered_up_to = -1;          // largest f_u of the passing prefix
  bool ordinary() const { return ranks.size() == values.size() && ranks == values; }
};

OrbitChain orbit_chain(const DieudonneModule& d);
bool check_orbit_ordinary(const DieudonneModule& d);

struct OrbitVerdict {
  FrobeniusOrbit orbit;
  OrbitChain chain;
  // Every tau in O has f(tau*) within this chain's coverage or f(tau) within O*'s.
  bool covered = false;
  bool eo_maximal = false;  // canonical filtration of the concrete module
};

struct QuotientVerdict {
  CyclicQuotient quotient;
  std::vector<OrbitVerdict> orbits;
  bool ok = true;
};

struct CurveVerdict {
  std::vector<QuotientVerdict> quotients;
  bool ordinary = true;
};

struct CheckOptions {
  bool eo_cross_check = false;
  bool stop_early = false;  // return at the first uncovered orbit
};

CurveVerdict check_curve_ordinary(const Datum& datum, u64 p, const BranchPoints& pts, const CheckOptions& opts = {});

struct WitnessRecord {
  Datum datum;
  u64 p = 0;
  u64 seed = 0;
  unsigned s = 1;
  u64 trial = 0;
  std::string points;

  // "<datum text> p=.. seed=.. s=.. trial=.. points=..".
  std::string to_string() const;
  static WitnessRecord parse(const std::string& line);
};

struct WitnessResult {
  bool found = false;
  std::optional<WitnessRecord> record;
  std::vector<u64> trials_per_s;  // index s-1
  u64 total_trials = 0;
  u64 rejected_fields = 0;  // extension degrees with fewer than r elements
};

// Samples distinct r-tuples over F_{p^s}, s = 1..max_ext, `trials` per degree, from one
// mt19937_64 stream seeded with `seed`.
WitnessResult witness_search(const Datum& datum, u64 p, u64 seed, unsigned max_ext, u64 trials);

// Rebuilds the recorded points and re-runs the certificate.
bool replay_witness(const WitnessRecord& rec);

}  // namespace muord
