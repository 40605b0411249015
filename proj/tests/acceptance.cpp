// Acceptance driver: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "muord/curve.hpp"
#include "muord/eo.hpp"
#include "muord/hasse_witt.hpp"
#include "muord/monodromy.hpp"
#include "muord/newton.hpp"
#include "support.hpp"

using namespace muord;
namespace mt = muord::oracle;

#ifndef MUORD_TEST_DATA_DIR
#define MUORD_TEST_DATA_DIR "tests/data"
#endif

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

std::string slope_text(const Slope& s) { return std::to_string(s.num) + "/" + std::to_string(s.den) + "x" + std::to_string(s.mult); }

// Modules assembled in criteria 5 and 6, re-checked in 7.
std::vector<DieudonneModule> g_built_modules;
std::vector<std::string> g_built_labels;

Outcome criterion1() {
  const Datum d = parse_datum("m=23 r=5 a=1,1,1,2,18");
  const NewtonPolygon np = mu_ordinary_total(d, 97);
  std::string got;
  for (const Slope& s : np.slopes()) got += (got.empty() ? "" : " ") + slope_text(s);
  const bool ok = genus(d) == 33 && got == "2/11x22 1/2x22 9/11x22" && np.height() == 66;
  return {ok, "genus " + std::to_string(genus(d)) + ", polygon " + got + ", height " + std::to_string(np.height())};
}

Outcome criterion2() {
  const Datum d = parse_datum("G=2x6 r=4 a=(1,0);(1,1);(0,2);(0,3)");
  if (!validate(d).empty()) return {false, "datum rejected"};
  const std::size_t classes = galois_orbits(character_group(d)).size();
  const auto qs = cyclic_quotients(d);
  const Signature sig = signature(d);
  std::string quotient = "missing";
  std::vector<int> inflated;
  for (const auto& q : qs) {
    if (q.kernel != "ker chi_(1,2)") continue;
    quotient = q.quotient.to_string();
    for (std::size_t label : q.character_map) inflated.push_back(sig(label));
  }
  std::sort(inflated.begin(), inflated.end());
  const bool ok = classes == 8 && quotient == "(6,3,(3,5,4))" && inflated == std::vector<int>{0, 0, 0, 0, 0, 1};
  std::string inf;
  for (int v : inflated) inf += std::to_string(v);
  return {ok, std::to_string(classes) + " classes, ker chi_(1,2) quotient " + quotient + ", inflated signature " + inf};
}

// Entries whose expansion exceeds this many compositions are redrawn.
constexpr u64 kOracleBudget = 400000;

Outcome criterion3() {
  std::mt19937_64 rng(2024);
  int phi_n = 0, psi_n = 0, phi_bad = 0, psi_bad = 0, redrawn = 0;
  while (phi_n < 200 || psi_n < 200) {
    const int m = 2 + static_cast<int>(mt::uniform_int(rng, 9));
    const int r = 3 + static_cast<int>(mt::uniform_int(rng, 3));
    const CyclicDatum d = mt::random_cyclic_datum(rng, m, r);
    u64 p = 2 + mt::uniform_int(rng, 49);
    while (!is_prime(p) || m % static_cast<int>(p) == 0) ++p;
    if (p > 50) continue;
    const int i = 1 + static_cast<int>(mt::uniform_int(rng, static_cast<u64>(m - 1)));
    const BlockDims dims = block_dims(d, p, i);
    if (dims.cols == 0) continue;
    const int j = 1 + static_cast<int>(mt::uniform_int(rng, static_cast<u64>(dims.cols)));
    const CombinatorialFrame fr = frame(d, p, i);
    const int pj = static_cast<int>(p) * j;
    if (phi_n < 200 && dims.phi_rows > 0) {
      const int jp = 1 + static_cast<int>(mt::uniform_int(rng, static_cast<u64>(dims.phi_rows)));
      if (mt::capped_compositions(fr.e, fr.s - pj + jp) > kOracleBudget) {
        ++redrawn;
      } else {
        ++phi_n;
        if (phi_entry(d, p, i, jp, j) != mt::phi_oracle(d, p, i, jp, j)) ++phi_bad;
      }
    }
    if (psi_n < 200 && dims.psi_rows > 0 && std::gcd(i, m) == 1) {
      const int jp = 1 + static_cast<int>(mt::uniform_int(rng, static_cast<u64>(dims.psi_rows)));
      if (mt::capped_compositions(fr.e, fr.s - pj) > kOracleBudget / 8) {
        ++redrawn;
      } else {
        ++psi_n;
        const mt::PsiOracle want = mt::psi_oracle(d, p, i, jp, j);
        if (psi_prime_entry(d, p, i, jp, j) != want.value || !want.tail_vanishes) ++psi_bad;
      }
    }
  }
  return {phi_bad == 0 && psi_bad == 0, std::to_string(phi_n) + " phi / " + std::to_string(psi_n) + " psi' entries, " +
                                           std::to_string(phi_bad + psi_bad) + " mismatches, " + std::to_string(redrawn) +
                                           " draws over the expansion budget"};
}

// Every a in [1, m-1]^r with sum 0 mod m generating Z/m.
void for_each_datum(int m, int r, const std::function<void(const CyclicDatum&)>& fn) {
  std::vector<int> a(static_cast<std::size_t>(r), 1);
  for (;;) {
    const CyclicDatum d{m, a};
    if (std::accumulate(a.begin(), a.end(), 0) % m == 0 && validate(d).empty()) fn(d);
    std::size_t k = 0;
    while (k < a.size() && a[k] == m - 1) a[k++] = 1;
    if (k == a.size()) return;
    ++a[k];
  }
}

Outcome criterion4() {
  u64 data = 0, certified = 0, failed = 0, skipped_empty = 0;
  std::string first_failure;
  for (int m = 2; m <= 12; ++m) {
    for (int r = 4; r <= 5; ++r) {
      std::vector<u64> primes;
      for (u64 p = static_cast<u64>(m * (r - 2)); primes.size() < 3;) primes.push_back(p = next_prime(p));
      for_each_datum(m, r, [&](const CyclicDatum& d) {
        ++data;
        for (u64 p : primes) {
          for (int i = 1; i < m; ++i) {
            if (std::gcd(i, m) != 1) continue;
            const Psi11Certificate c = psi11_certificate(d, p, i);
            if (c.status == Psi11Certificate::Status::declined) {
              ++skipped_empty;
              continue;
            }
            if (c.status == Psi11Certificate::Status::certified && c.extracted != 0 && c.extracted == c.closed_form) {
              ++certified;
            } else {
              if (failed++ == 0) first_failure = d.to_string() + " p=" + std::to_string(p) + " i=" + std::to_string(i);
            }
          }
        }
      });
    }
  }
  std::string detail = std::to_string(data) + " data, " + std::to_string(certified) + " certificates, " +
                       std::to_string(failed) + " failures, " + std::to_string(skipped_empty) + " empty (1,1) blocks";
  if (failed) detail += "; first " + first_failure;
  return {failed == 0 && certified > 0, detail};
}

unsigned max_ext_for(const Datum& d, u64 p) {
  u64 l = 1;
  for (const auto& q : cyclic_quotients(d)) {
    if (!q.trivial) l = std::lcm(l, multiplicative_order(p % static_cast<u64>(q.quotient.m), static_cast<u64>(q.quotient.m)));
  }
  return static_cast<unsigned>(2 * l);
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#') out.push_back(line);
  }
  return out;
}

std::vector<WitnessRecord> g_witnesses;

Outcome criterion5() {
  const std::vector<std::string> stored = read_lines(std::string(MUORD_TEST_DATA_DIR) + "/witnesses.txt");
  int found = 0, replayed = 0, matches = 0;
  std::string missing;
  for (std::size_t k = 0; k < mt::witness_suite().size(); ++k) {
    const auto& [text, p] = mt::witness_suite()[k];
    const Datum d = parse_datum(text);
    const WitnessResult res = witness_search(d, p, 1, max_ext_for(d, p), 500);
    if (!res.found) {
      missing += std::string(missing.empty() ? "" : ", ") + text + " p=" + std::to_string(p);
      continue;
    }
    ++found;
    g_witnesses.push_back(*res.record);
    if (k < stored.size() && stored[k] == res.record->to_string()) ++matches;
    if (k < stored.size() && replay_witness(WitnessRecord::parse(stored[k]))) ++replayed;
  }
  const int n = static_cast<int>(mt::witness_suite().size());
  std::string detail = std::to_string(found) + "/" + std::to_string(n) + " witnesses found, " + std::to_string(matches) +
                       " identical to stored records, " + std::to_string(replayed) + " stored records replayed";
  if (!missing.empty()) detail += "; exhausted: " + missing;
  return {found == n && matches == n && replayed == n, detail};
}

OrbitShape random_shape(std::mt19937_64& rng) {
  const int g = 1 + static_cast<int>(mt::uniform_int(rng, 4));
  const int l = 1 + static_cast<int>(mt::uniform_int(rng, 6));
  const bool self_conj = l % 2 == 0 && mt::uniform_int(rng, 2) == 1;
  std::vector<int> f(static_cast<std::size_t>(l));
  for (int& v : f) v = static_cast<int>(mt::uniform_int(rng, static_cast<u64>(g + 1)));
  if (self_conj) {
    for (int k = 0; k < l / 2; ++k) f[static_cast<std::size_t>(k + l / 2)] = g - f[static_cast<std::size_t>(k)];
  }
  return synthetic_shape(f, g, self_conj);
}

Outcome criterion6() {
  std::mt19937_64 rng(6);
  const Field& field = Field::get(5, 1);
  int bad_word = 0, bad_chain = 0;
  for (int t = 0; t < 100; ++t) {
    const OrbitShape shape = random_shape(rng);
    const EOWord w = eo_word_from_module(build_ordinary_module(shape, field));
    for (std::size_t tau : shape.labels()) {
      if (w.at(tau).w != maximal_word(shape.f_of(tau), shape.g)) {
        ++bad_word;
        break;
      }
    }
    DieudonneModule mod = build_dieudonne(triple_from_ordinary(shape, field), shape);
    if (!check_orbit_ordinary(mod)) ++bad_chain;
    g_built_modules.push_back(std::move(mod));
    g_built_labels.push_back("template shape " + std::to_string(t));
  }
  return {bad_word == 0 && bad_chain == 0,
          "100 shapes, " + std::to_string(bad_word) + " non-maximal words, " + std::to_string(bad_chain) + " chain failures"};
}

Outcome criterion7() {
  // Modules at every suite-5 witness, plus the suite-6 templates collected above.
  for (const WitnessRecord& rec : g_witnesses) {
    const Field& field = Field::get(rec.p, rec.s);
    const BranchPoints pts = parse_branch_points(field, rec.points);
    for (const auto& q : cyclic_quotients(rec.datum)) {
      if (q.trivial) continue;
      const TripleAt t = specialize_direct(q.quotient, rec.p, subset(pts, q.branch_indices));
      const CharacterGroup group({q.quotient.m});
      for (const auto& o : frobenius_orbits(q.quotient.m, rec.p)) {
        if (std::gcd(static_cast<int>(o.first()), q.quotient.m) != 1) continue;
        g_built_modules.push_back(build_dieudonne(t, orbit_shape(o, group, signature(q.quotient))));
        g_built_labels.push_back(rec.to_string());
      }
    }
  }
  std::mt19937_64 rng(7);
  int failures = 0;
  std::string first;
  for (std::size_t k = 0; k < g_built_modules.size(); ++k) {
    const AxiomReport rep = check_axioms(g_built_modules[k], rng, 50);
    if (!rep.ok() && failures++ == 0) first = g_built_labels[k] + ": " + rep.failures.front();
  }
  std::string detail = std::to_string(g_built_modules.size()) + " modules, " + std::to_string(failures) + " failures";
  if (failures) detail += "; first " + first;
  return {failures == 0 && !g_witnesses.empty(), detail};
}

Outcome criterion8() {
  int orbits = 0, failures = 0;
  std::string first;
  for (const auto& [text, p] : mt::witness_suite()) {
    const CyclicDatum d = std::get<CyclicDatum>(parse_datum(text));
    const CharacterGroup group({d.m});
    const Signature sig = signature(d);
    for (const auto& o : frobenius_orbits(d.m, p)) {
      if (std::gcd(static_cast<int>(o.first()), d.m) != 1) continue;
      const OrbitProfile prof = orbit_profile(o, group, sig);
      const bool has01 = std::count(prof.values.begin(), prof.values.end(), 0) && std::count(prof.values.begin(), prof.values.end(), 1);
      if (!has01) continue;
      ++orbits;
      const SeparationReport rep = monomial_separation(d, p, o);
      if (!(rep.applicable && rep.distinct && rep.valuation_ok) && failures++ == 0) {
        first = d.to_string() + " p=" + std::to_string(p) + " orbit of " + std::to_string(o.first()) +
                (rep.applicable ? "" : " (" + rep.reason + ")");
      }
    }
  }
  std::string detail = std::to_string(orbits) + " orbits with {0,1} in F(O), " + std::to_string(failures) + " failures";
  if (failures) detail += "; first " + first;
  return {failures == 0 && orbits > 0, detail};
}

Outcome criterion9() {
  std::mt19937_64 rng(9);
  int checks = 0, failures = 0;
  for (int t = 0; t < 100; ++t) {
    const auto& [text, p] = mt::witness_suite()[static_cast<std::size_t>(t) % mt::witness_suite().size()];
    const CyclicDatum d = std::get<CyclicDatum>(parse_datum(text));
    const Field& field = Field::get(p, 1 + static_cast<unsigned>(mt::uniform_int(rng, 2)));
    const TripleAt tr = specialize_direct(d, p, mt::random_points(field, static_cast<std::size_t>(d.r()), rng));
    for (const auto& [i, ct] : tr.chars) {
      ++checks;
      if (ct.phi.cols() > 0 && rank(ct.phi.stacked(ct.psi_prime)) != ct.phi.cols()) ++failures;
    }
  }
  return {failures == 0, "100 tuples, " + std::to_string(checks) + " new characters, " + std::to_string(failures) + " failures"};
}

}  // namespace

int main(int argc, char** argv) {
  // --write-witnesses regenerates the stored records from the current search.
  const bool write = argc > 1 && std::string(argv[1]) == "--write-witnesses";
  const std::vector<Criterion> criteria = {
      {1, "genus-33 polygon", 1, criterion1},   {2, "abelian quotient", 1, criterion2},
      {3, "oracle equivalence", 60, criterion3}, {4, "certificate suite", 120, criterion4},
      {5, "witness suite", 600, criterion5},     {6, "template round trip", 60, criterion6},
      {7, "module axioms", 120, criterion7},     {8, "monomial separation", 120, criterion8},
      {9, "injectivity", 60, criterion9},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = out.pass && in_time;
    failed += pass ? 0 : 1;
    std::printf("criterion %d %-20s %s  %.2fs (budget %.0fs)%s  %s\n", c.id, c.name, pass ? "PASS" : "FAIL", secs, c.budget_s,
                in_time ? "" : " OVER BUDGET", out.detail.c_str());
    std::fflush(stdout);
    if (write && c.id == 5) {
      std::ofstream outf(std::string(MUORD_TEST_DATA_DIR) + "/witnesses.txt");
      outf << "# seed=1, 500 trials per extension degree, max_ext = 2 * lcm of orbit lengths\n";
      for (const WitnessRecord& rec : g_witnesses) outf << rec.to_string() << "\n";
    }
  }
  return failed == 0 ? 0 : 1;
}
