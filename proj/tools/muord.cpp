// Command-line front end.
#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "muord/curve.hpp"
#include "muord/eo.hpp"
#include "muord/hasse_witt.hpp"
#include "muord/monodromy.hpp"
#include "muord/newton.hpp"

using json = nlohmann::ordered_json;
using namespace muord;

namespace {

constexpr const char* kSchema = "muord.report/1";

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNegative = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  bool json = false;
  bool quiet = false;
  u64 seed = 1;
  unsigned max_ext = 0;  // 0: 2 * lcm of orbit lengths
  u64 trials = 500;
  std::vector<std::string> args;
};

// Positional arguments: key=value tokens; datum keys are collected into the datum text.
struct Parsed {
  std::string datum_text;
  std::map<std::string, std::string> extra;
  std::vector<std::string> words;  // tokens without '='
};

Parsed split_args(const std::vector<std::string>& args) {
  Parsed out;
  for (const std::string& tok : args) {
    const std::size_t eq = tok.find('=');
    if (eq == std::string::npos) {
      out.words.push_back(tok);
      continue;
    }
    const std::string key = tok.substr(0, eq);
    if (key == "m" || key == "r" || key == "a" || key == "G") {
      out.datum_text += (out.datum_text.empty() ? "" : " ") + tok;
    } else {
      out.extra[key] = tok.substr(eq + 1);
    }
  }
  return out;
}

u64 parse_u64(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const u64 v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw InputError("bad value for " + key + ": " + text);
  }
}

struct Context {
  Datum datum;
  u64 p = 0;
  Parsed parsed;
  std::vector<std::string> warnings;
};

Context load(const Options& opt, bool need_prime = true) {
  Context ctx;
  ctx.parsed = split_args(opt.args);
  if (ctx.parsed.datum_text.empty()) throw InputError("missing datum (m=.. r=.. a=.. or G=.. r=.. a=..)");
  try {
    ctx.datum = parse_datum(ctx.parsed.datum_text);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  const auto violations = validate(ctx.datum);
  if (!violations.empty()) {
    std::string msg = "invalid datum:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw InputError(msg);
  }
  if (need_prime) {
    const auto it = ctx.parsed.extra.find("p");
    if (it == ctx.parsed.extra.end()) throw InputError("missing p=");
    ctx.p = parse_u64("p", it->second);
    if (!is_prime(ctx.p)) throw InputError("p is not prime");
    if (ctx.p > kMaxCharacteristic) throw InputError("p too large");
    if (group_order(ctx.datum) % static_cast<i64>(ctx.p) == 0) throw InputError("bad prime: p divides |G|");
  }
  return ctx;
}

json polygon_json(const NewtonPolygon& np) {
  json arr = json::array();
  for (const Slope& s : np.slopes()) arr.push_back({{"slope", std::to_string(s.num) + "/" + std::to_string(s.den)}, {"mult", s.mult}});
  return arr;
}

std::string members_string(const std::vector<std::size_t>& v) {
  std::string out = "(";
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? "," : "") + std::to_string(v[k]);
  return out + ")";
}

std::string names_string(const std::vector<std::size_t>& v, const CharacterGroup& group) {
  std::string out = "(";
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? "," : "") + group.name(v[k]);
  return out + ")";
}

json ints(const std::vector<int>& v) { return json(v); }

json labels_json(const std::vector<std::size_t>& v) { return json(v); }

unsigned default_max_ext(const Datum& datum, u64 p) {
  u64 l = 1;
  for (const auto& q : cyclic_quotients(datum)) {
    if (q.trivial) continue;
    for (const auto& o : frobenius_orbits(q.quotient.m, p)) l = std::lcm(l, static_cast<u64>(o.length()));
  }
  return static_cast<unsigned>(std::min<u64>(2 * l, kMaxExtensionDegree));
}

void emit(const Options& opt, const json& report, const std::string& human) {
  if (opt.json) {
    std::cout << report.dump(2) << "\n";
  } else if (!opt.quiet) {
    std::cout << human;
  }
}

json header(const std::string& command, const Options& opt, const Context& ctx) {
  json r;
  r["schema"] = kSchema;
  json echo = json::array({command});
  for (const auto& a : opt.args) echo.push_back(a);
  r["command"] = echo;
  r["datum"] = datum_to_text(ctx.datum);
  if (ctx.p != 0) r["p"] = ctx.p;
  return r;
}

void add_warnings(json& r, std::ostringstream& h, const std::vector<std::string>& w) {
  r["warnings"] = w;
  for (const auto& s : w) h << "warning: " << s << "\n";
}

// analyze ------------------------------------------------------------------

int cmd_analyze(const Options& opt) {
  const Context ctx = load(opt);
  const Datum& d = ctx.datum;
  const CharacterGroup group = character_group(d);
  const Signature sig = signature(d);
  json r = header("analyze", opt, ctx);
  std::ostringstream h;
  h << "datum " << datum_to_string(d) << "  p=" << ctx.p << "\n";
  r["valid"] = true;
  r["genus"] = genus(d);
  h << "genus " << genus(d) << "\n";

  json sigs = json::array();
  h << "signature\n";
  for (std::size_t t = 0; t < group.size(); ++t) {
    sigs.push_back({{"label", t}, {"character", group.name(t)}, {"f", sig(t)}});
    h << "  " << group.name(t) << "  f=" << sig(t) << "\n";
  }
  r["signature"] = sigs;

  const auto orbits = frobenius_orbits(group, ctx.p);
  json jorb = json::array();
  h << "frobenius orbits\n";
  for (std::size_t k = 0; k < orbits.size(); ++k) {
    const OrbitProfile prof = orbit_profile(orbits[k], group, sig);
    const std::size_t dual = conjugate_orbit(orbits, k, group);
    jorb.push_back({{"members", labels_json(orbits[k].members)},
                    {"length", orbits[k].length()},
                    {"conjugate", dual},
                    {"g", prof.g},
                    {"F", ints(prof.values)},
                    {"s", prof.s()},
                    {"representatives", labels_json(prof.reps)}});
    h << "  O" << k << " " << names_string(orbits[k].members, group) << " l=" << orbits[k].length() << " O*=O" << dual
      << " g=" << prof.g << " F=" << json(prof.values).dump() << "\n";
  }
  r["orbits"] = jorb;

  const auto gal = galois_orbits(group);
  json jgal = json::array();
  for (const auto& o : gal) jgal.push_back(labels_json(o));
  r["galois_orbits"] = jgal;
  h << "galois orbits " << gal.size() << "\n";
  for (const auto& o : gal) h << "  " << names_string(o, group) << "\n";

  const auto quotients = cyclic_quotients(d);
  json jq = json::array();
  h << "cyclic quotients\n";
  for (const auto& q : quotients) {
    jq.push_back({{"kernel", q.kernel},
                  {"quotient", q.quotient.to_string()},
                  {"branch_indices", labels_json(q.branch_indices)},
                  {"character_map", labels_json(q.character_map)},
                  {"trivial", q.trivial},
                  {"genus", q.trivial ? 0 : genus(q.quotient)}});
    h << "  " << q.kernel << " -> " << q.quotient.to_string() << (q.trivial ? "  (genus 0, skipped)" : "") << "\n";
  }
  r["quotients"] = jq;

  json jpoly = json::array();
  h << "mu-ordinary polygon by new orbit\n";
  for (const auto& no : new_orbits(quotients, ctx.p)) {
    const CyclicDatum& qd = quotients[no.quotient_index].quotient;
    const NewtonPolygon np = mu_ordinary_orbit(no.orbit, CharacterGroup({qd.m}), signature(qd));
    jpoly.push_back({{"quotient", qd.to_string()}, {"orbit", labels_json(no.orbit.members)}, {"slopes", polygon_json(np)}});
    h << "  " << qd.to_string() << " " << members_string(no.orbit.members) << "\n";
    std::istringstream lines(np.to_string());
    for (std::string line; std::getline(lines, line);) h << "    " << line << "\n";
  }
  r["orbit_polygons"] = jpoly;
  const NewtonPolygon total = mu_ordinary_total(d, ctx.p);
  r["polygon"] = {{"slopes", polygon_json(total)}, {"height", total.height()}, {"symmetric", total.is_symmetric()}};
  h << "mu-ordinary polygon (height " << total.height() << ")\n";
  std::istringstream lines(total.to_string());
  for (std::string line; std::getline(lines, line);) h << "  " << line << "\n";
  emit(opt, r, h.str());
  return kExitOk;
}

// hw ----------------------------------------------------------------------

int cmd_hw(const Options& opt) {
  const Context ctx = load(opt);
  const auto* cd = std::get_if<CyclicDatum>(&ctx.datum);
  if (cd == nullptr) throw InputError("hw needs a cyclic datum");
  if (ctx.parsed.words.size() != 1 || (ctx.parsed.words[0] != "phi" && ctx.parsed.words[0] != "psi")) {
    throw InputError("hw needs exactly one of: phi, psi");
  }
  const std::string which = ctx.parsed.words[0];
  const auto get = [&](const std::string& key) {
    const auto it = ctx.parsed.extra.find(key);
    if (it == ctx.parsed.extra.end()) throw InputError("missing " + key + "=");
    return it->second;
  };
  const int i = static_cast<int>(parse_u64("i", get("i")));
  const std::string e = get("e");
  const std::size_t comma = e.find(',');
  if (comma == std::string::npos) throw InputError("e= expects j',j");
  const int jp = static_cast<int>(parse_u64("e", e.substr(0, comma)));
  const int j = static_cast<int>(parse_u64("e", e.substr(comma + 1)));
  if (i < 1 || i >= cd->m) throw InputError("i out of range");
  SparsePoly poly;
  try {
    poly = which == "phi" ? phi_entry(*cd, ctx.p, i, jp, j) : psi_prime_entry(*cd, ctx.p, i, jp, j);
  } catch (const std::out_of_range& ex) {
    throw InputError(ex.what());
  } catch (const std::invalid_argument& ex) {
    throw InputError(ex.what());
  }
  json r = header("hw", opt, ctx);
  r["entry"] = {{"block", which}, {"i", i}, {"row", jp}, {"col", j}};
  r["terms"] = poly.size();
  r["degree"] = poly.homogeneous_degree();
  r["polynomial"] = poly.to_string();
  std::ostringstream h;
  h << which << "_{tau_" << i << "}(" << jp << "," << j << ")  terms=" << poly.size() << " degree=" << poly.homogeneous_degree()
    << "\n"
    << poly.to_string() << "\n";
  emit(opt, r, h.str());
  return kExitOk;
}

// certify -----------------------------------------------------------------

int cmd_certify(const Options& opt) {
  const Context ctx = load(opt);
  json r = header("certify", opt, ctx);
  std::ostringstream h;
  std::vector<std::string> warn;
  json jq = json::array();
  bool all_ok = true;
  for (const auto& q : cyclic_quotients(ctx.datum)) {
    if (q.trivial) continue;
    const CyclicDatum& cd = q.quotient;
    if (static_cast<i64>(ctx.p) <= static_cast<i64>(cd.m) * (cd.r() - 2)) {
      warn.push_back(cd.to_string() + ": p <= m(r-2), certificates declined");
    }
    json certs = json::array();
    h << cd.to_string() << "\n";
    for (int i = 1; i < cd.m; ++i) {
      if (std::gcd(i, cd.m) != 1) continue;
      const Psi11Certificate c = psi11_certificate(cd, ctx.p, i);
      json jc = {{"i", i}, {"status", to_string(c.status)}};
      if (c.status == Psi11Certificate::Status::declined) {
        jc["reason"] = c.reason;
        h << "  i=" << i << " declined (" << c.reason << ")\n";
      } else {
        const std::string mono = monomial_to_string(c.monomial, static_cast<unsigned>(cd.r()));
        jc["c"] = c.c;
        jc["C"] = c.C;
        jc["monomial"] = mono;
        jc["extracted"] = c.extracted;
        jc["closed_form"] = c.closed_form;
        h << "  i=" << i << " " << to_string(c.status) << " coefficient of " << mono << " = " << c.extracted
          << " (closed form " << c.closed_form << ")\n";
        all_ok = all_ok && c.status == Psi11Certificate::Status::certified;
      }
      certs.push_back(jc);
    }
    jq.push_back({{"quotient", cd.to_string()}, {"certificates", certs}});
  }
  r["quotients"] = jq;
  r["ok"] = all_ok;
  add_warnings(r, h, warn);
  emit(opt, r, h.str());
  return all_ok ? kExitOk : kExitNegative;
}

// separation --------------------------------------------------------------

int cmd_separation(const Options& opt) {
  const Context ctx = load(opt);
  json r = header("separation", opt, ctx);
  std::ostringstream h;
  json jo = json::array();
  bool all_ok = true;
  const auto quotients = cyclic_quotients(ctx.datum);
  for (const auto& no : new_orbits(quotients, ctx.p)) {
    const CyclicDatum& cd = quotients[no.quotient_index].quotient;
    const SeparationReport rep = monomial_separation(cd, ctx.p, no.orbit);
    json j = {{"quotient", cd.to_string()}, {"orbit", labels_json(no.orbit.members)}, {"applicable", rep.applicable}};
    h << cd.to_string() << " " << members_string(no.orbit.members) << ": ";
    if (!rep.applicable) {
      j["reason"] = rep.reason;
      h << "not applicable (" << rep.reason << ")\n";
    } else {
      j["tau"] = rep.tau;
      j["a"] = ints(rep.a);
      j["cases"] = ints(rep.cases);
      j["paths"] = rep.paths;
      j["nonzero_paths"] = rep.nonzero_paths;
      j["distinct"] = rep.distinct;
      j["vacuous"] = rep.vacuous;
      j["max_valuation"] = rep.max_valuation;
      j["valuation_ok"] = rep.valuation_ok;
      h << (rep.distinct ? "separated" : "COLLISION") << " paths=" << rep.paths << " nonzero=" << rep.nonzero_paths
        << " max valuation " << rep.max_valuation << (rep.valuation_ok ? " <= p-1" : " > p-1") << "\n";
      all_ok = all_ok && rep.distinct && rep.valuation_ok;
    }
    jo.push_back(j);
  }
  r["orbits"] = jo;
  r["ok"] = all_ok;
  emit(opt, r, h.str());
  return all_ok ? kExitOk : kExitNegative;
}

// witness / verify --------------------------------------------------------

json witness_json(const WitnessResult& res, unsigned max_ext, u64 trials) {
  json j = {{"found", res.found}, {"max_ext", max_ext}, {"trials", trials}, {"total_trials", res.total_trials},
            {"trials_per_s", res.trials_per_s}, {"rejected_fields", res.rejected_fields}};
  if (res.record) j["record"] = res.record->to_string();
  return j;
}

int run_witness(const std::string& name, const Options& opt, bool verify) {
  Context ctx = load(opt);
  Options eff = opt;
  if (const auto it = ctx.parsed.extra.find("seed"); it != ctx.parsed.extra.end()) eff.seed = parse_u64("seed", it->second);
  const unsigned max_ext = eff.max_ext ? eff.max_ext : default_max_ext(ctx.datum, ctx.p);
  if (max_ext > kMaxExtensionDegree) throw InputError("--max-ext exceeds " + std::to_string(kMaxExtensionDegree));
  json r = header(name, opt, ctx);
  std::ostringstream h;
  std::vector<std::string> warn;
  const int rr = datum_r(ctx.datum);
  const i64 bound = static_cast<i64>(group_order(ctx.datum)) * (rr - 2);
  if (verify) {
    if (rr > 5) warn.push_back("r > 5: no existence guarantee");
    if (static_cast<i64>(ctx.p) <= bound) warn.push_back("p <= |G|(r-2): no existence guarantee");
  }
  r["seed"] = eff.seed;
  const WitnessResult res = witness_search(ctx.datum, ctx.p, eff.seed, max_ext, eff.trials);
  r["witness"] = witness_json(res, max_ext, eff.trials);
  if (res.found) {
    h << "witness " << res.record->to_string() << "\n";
  } else {
    h << "exhausted after " << res.total_trials << " trials (s = 1.." << max_ext << "); no claim is made\n";
  }
  if (verify) {
    r["verdict"] = res.found ? "generically (G,f)-ordinary" : "undecided";
    h << "verdict: " << r["verdict"].get<std::string>() << "\n";
  }
  add_warnings(r, h, warn);
  emit(opt, r, h.str());
  return res.found ? kExitOk : kExitNegative;
}

// eo-word -----------------------------------------------------------------

int cmd_eo_word(const Options& opt) {
  const Context ctx = load(opt);
  std::optional<BranchPoints> pts;
  unsigned s = 1;
  if (const auto it = ctx.parsed.extra.find("s"); it != ctx.parsed.extra.end()) s = static_cast<unsigned>(parse_u64("s", it->second));
  if (s == 0 || s > kMaxExtensionDegree) throw InputError("s out of range");
  const Field& field = Field::get(ctx.p, s);
  if (const auto it = ctx.parsed.extra.find("points"); it != ctx.parsed.extra.end()) {
    try {
      pts = parse_branch_points(field, it->second);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
    if (static_cast<int>(pts->size()) != datum_r(ctx.datum)) throw InputError("points: expected r values");
  }
  json r = header("eo-word", opt, ctx);
  r["source"] = pts ? "points" : "mu-ordinary template";
  std::ostringstream h;
  json jo = json::array();
  bool all_max = true;
  const auto quotients = cyclic_quotients(ctx.datum);
  for (const auto& no : new_orbits(quotients, ctx.p)) {
    const CyclicQuotient& q = quotients[no.quotient_index];
    const CyclicDatum& cd = q.quotient;
    const OrbitShape shape = orbit_shape(no.orbit, CharacterGroup({cd.m}), signature(cd));
    const DieudonneModule mod = pts ? build_dieudonne(specialize_direct(cd, ctx.p, subset(*pts, q.branch_indices)), shape)
                                    : build_ordinary_module(shape, field);
    json words = json::array();
    h << cd.to_string() << " " << members_string(no.orbit.members) << "\n";
    try {
      const EOWord w = eo_word_from_module(mod);
      for (std::size_t t : no.orbit.members) {
        const CharacterWord& cw = w.at(t);
        const bool mx = is_maximal(cw.w, cw.f);
        all_max = all_max && mx;
        words.push_back({{"label", t}, {"f", cw.f}, {"word", word_to_string(cw.w)}, {"length", word_length(cw.w, cw.f)}, {"maximal", mx}});
        h << "  tau_" << t << " f=" << cw.f << " w=" << word_to_string(cw.w) << " length=" << word_length(cw.w, cw.f)
          << (mx ? " maximal" : "") << "\n";
      }
    } catch (const std::runtime_error& e) {
      all_max = false;
      words.push_back({{"error", e.what()}});
      h << "  error: " << e.what() << "\n";
    }
    jo.push_back({{"quotient", cd.to_string()}, {"orbit", labels_json(no.orbit.members)}, {"words", words}});
  }
  r["orbits"] = jo;
  r["all_maximal"] = all_max;
  emit(opt, r, h.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mu-ordinary Hasse-Witt toolkit for abelian covers of the projective line"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--json", opt.json, "emit one JSON document");
  app.add_flag("--quiet", opt.quiet, "suppress human-readable output");
  app.add_option("--seed", opt.seed, "PRNG seed for witness search");
  app.add_option("--max-ext", opt.max_ext, "largest extension degree to sample (default 2 * lcm of orbit lengths)");
  app.add_option("--trials", opt.trials, "trials per extension degree");

  struct Sub {
    const char* name;
    const char* help;
    std::function<int(const Options&)> run;
  };
  const std::vector<Sub> subs = {
      {"analyze", "validation, genus, signature, orbits, quotients, mu-ordinary polygon", cmd_analyze},
      {"hw", "one symbolic entry: hw phi|psi <datum> p=.. i=.. e=j',j", cmd_hw},
      {"certify", "psi'(1,1) monomial certificates for every new character", cmd_certify},
      {"separation", "monomial separation on orbits with {0,1} in F(O)", cmd_separation},
      {"witness", "randomized search for a certified (G,f)-ordinary point", [](const Options& o) { return run_witness("witness", o, false); }},
      {"verify", "witness search with the theorem's hypotheses checked", [](const Options& o) { return run_witness("verify", o, true); }},
      {"eo-word", "Ekedahl-Oort words of the template or of the curve at points=..", cmd_eo_word},
  };
  std::vector<CLI::App*> handles;
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->fallthrough();
    sub->add_option("args", opt.args, "datum and key=value arguments")->required();
    handles.push_back(sub);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInput;
  }
  try {
    for (std::size_t k = 0; k < subs.size(); ++k) {
      if (handles[k]->parsed()) return subs[k].run(opt);
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
