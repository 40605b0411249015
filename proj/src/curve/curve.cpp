#include "muord/curve.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace muord {

namespace {

Matrix inverse(const Matrix& a) {
  const std::size_t n = a.rows();
  Matrix aug(a.field(), n, 2 * n);
  aug.set_block(0, 0, a);
  aug.set_block(0, n, Matrix::identity(a.field(), n));
  std::vector<std::size_t> piv;
  const Matrix red = rref(aug, &piv);
  if (piv.size() < n || piv[n - 1] >= n) throw std::domain_error("inverse: singular matrix");
  return red.block(0, n, n, n);
}

void place(Matrix& target, std::size_t r0, std::size_t c0, const Matrix& b) {
  if (b.rows() > 0 && b.cols() > 0) target.set_block(r0, c0, b);
}

// Coefficients (low to high) of prod (x - x_k)^{e_k}.
std::vector<FieldElem> expand_product(const Field& field, const std::vector<FieldElem>& roots, const std::vector<int>& e) {
  std::vector<FieldElem> poly{FieldElem(field, 1)};
  for (std::size_t k = 0; k < roots.size(); ++k) {
    const FieldElem neg = -roots[k];
    for (int t = 0; t < e[k]; ++t) {
      poly.emplace_back(field);
      for (std::size_t d = poly.size() - 1; d > 0; --d) poly[d] = poly[d - 1] + neg * poly[d];
      poly[0] = neg * poly[0];
    }
  }
  return poly;
}

// Quotient of an exact division by (x - a).
std::vector<FieldElem> divide_linear(const std::vector<FieldElem>& poly, const FieldElem& a) {
  const std::size_t n = poly.size() - 1;
  std::vector<FieldElem> q(n, FieldElem(a.field()));
  q[n - 1] = poly[n];
  for (std::size_t d = n - 1; d > 0; --d) q[d - 1] = poly[d] + a * q[d];
  return q;
}

FieldElem coeff_at(const std::vector<FieldElem>& poly, i64 d, const Field& field) {
  return (d < 0 || d >= static_cast<i64>(poly.size())) ? FieldElem(field) : poly[static_cast<std::size_t>(d)];
}

bool is_new(int i, int m) { return std::gcd(i, m) == 1; }

}  // namespace

std::string BranchPoints::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < x.size(); ++k) out += (k ? "," : "") + x[k].to_string();
  return out;
}

BranchPoints make_branch_points(const Field& field, std::vector<FieldElem> x) {
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (&x[a].field() != &field) throw std::invalid_argument("branch points: mixed fields");
    for (std::size_t b = 0; b < a; ++b) {
      if (x[a] == x[b]) throw std::invalid_argument("branch points: repeated point");
    }
  }
  return {&field, std::move(x)};
}

BranchPoints parse_branch_points(const Field& field, const std::string& text) {
  std::vector<FieldElem> x;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) x.push_back(FieldElem::parse(field, item));
  return make_branch_points(field, std::move(x));
}

BranchPoints subset(const BranchPoints& pts, const std::vector<std::size_t>& indices) {
  BranchPoints out{pts.field, {}};
  for (std::size_t k : indices) out.x.push_back(pts.x.at(k));
  return out;
}

Matrix extend_psi(const CharacterTriple& t, Complement c) {
  if (t.psi_prime_valid) return t.psi_prime;
  const std::size_t n = t.phi.cols();
  std::vector<std::size_t> piv;
  const Matrix red = rref(t.phi, &piv);
  const std::size_t rk = piv.size();
  if (rk == 0 || n == 0) return t.psi_prime;
  std::vector<std::size_t> cols = piv;
  if (c == Complement::trailing_columns) {
    Matrix rev(t.phi.field(), t.phi.rows(), n);
    for (std::size_t a = 0; a < t.phi.rows(); ++a) {
      for (std::size_t b = 0; b < n; ++b) rev.at(a, b) = t.phi.at(a, n - 1 - b);
    }
    std::vector<std::size_t> rpiv;
    rref(rev, &rpiv);
    cols.clear();
    for (std::size_t q : rpiv) cols.push_back(n - 1 - q);
    std::sort(cols.begin(), cols.end());
  }
  const Field& field = t.phi.field();
  const Matrix rows = red.block(0, 0, rk, n);
  Matrix rc(field, rk, rk);
  for (std::size_t a = 0; a < rk; ++a) {
    for (std::size_t b = 0; b < rk; ++b) rc.at(a, b) = rows.at(a, cols[b]);
  }
  Matrix ec(field, n, rk);
  for (std::size_t b = 0; b < rk; ++b) ec.at(cols[b], b) = FieldElem(field, 1);
  // Identity on ker phi, zero on the chosen coordinate vectors.
  const Matrix proj = Matrix::identity(field, n) - ec * inverse(rc) * rows;
  return t.psi_prime * proj;
}

Matrix extend_psi(const TripleAt& triple, std::size_t i, Complement c) { return extend_psi(triple.chars.at(i), c); }

TripleAt specialize(const HWSymbolic& hw, const BranchPoints& pts, Complement c) {
  const CyclicDatum& d = hw.datum;
  if (static_cast<int>(pts.size()) != d.r()) throw std::invalid_argument("specialize: point count differs from r");
  make_branch_points(*pts.field, pts.x);
  const Field& field = *pts.field;
  const Signature sig = signature(d);
  TripleAt out;
  out.field = &field;
  auto eval_block = [&](const std::map<int, PolyMatrix>& blocks, int i, int rows, int cols) {
    Matrix mat(field, static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    const auto it = blocks.find(i);
    if (it == blocks.end()) return mat;
    for (int a = 0; a < rows; ++a) {
      for (int b = 0; b < cols; ++b) mat.at(a, b) = poly_eval(it->second[a][b], pts.x);
    }
    return mat;
  };
  for (int i = 1; i < d.m; ++i) {
    if (!is_new(i, d.m)) continue;
    const BlockDims dims = block_dims(d, hw.p, i);
    CharacterTriple t;
    t.phi = eval_block(hw.phi, i, dims.phi_rows, dims.cols);
    t.psi_prime = eval_block(hw.psi, i, dims.psi_rows, dims.cols);
    t.psi_prime_valid = valid_extension_applicable(sig, d.m, i, hw.p);
    t.psi = extend_psi(t, c);
    out.chars[static_cast<std::size_t>(i)] = std::move(t);
  }
  return out;
}

TripleAt specialize_direct(const CyclicDatum& d, u64 p, const BranchPoints& pts, Complement c) {
  if (static_cast<int>(pts.size()) != d.r()) throw std::invalid_argument("specialize: point count differs from r");
  make_branch_points(*pts.field, pts.x);
  const Field& field = *pts.field;
  const Signature sig = signature(d);
  const int r = d.r();
  const i64 pp = static_cast<i64>(p);
  TripleAt out;
  out.field = &field;
  for (int i = 1; i < d.m; ++i) {
    if (!is_new(i, d.m)) continue;
    const BlockDims dims = block_dims(d, p, i);
    const std::vector<int> e = branch_exponents(d, p, i);
    CharacterTriple t;
    t.phi = Matrix(field, dims.phi_rows, dims.cols);
    t.psi_prime = Matrix(field, dims.psi_rows, dims.cols);
    if (dims.cols > 0) {
      const std::vector<FieldElem> big = expand_product(field, pts.x, e);
      // phi(j', j) = [x^{pj - j'}] prod (x - x_k)^{e_k}.
      for (int a = 1; a <= dims.phi_rows; ++a) {
        for (int b = 1; b <= dims.cols; ++b) t.phi.at(a - 1, b - 1) = coeff_at(big, pp * b - a, field);
      }
      if (dims.psi_rows > 0) {
        for (int k = 0; k < r; ++k) {
          if (e[k] == 0) continue;
          // r_{i,j,k} = [x^{pj-1}] of the product with e_k lowered; q = [x^{j'-1}] prod_{l != k}(x - x_l).
          const std::vector<FieldElem> pk = divide_linear(big, pts.x[k]);
          std::vector<FieldElem> others;
          std::vector<int> unit;
          for (int l = 0; l < r; ++l) {
            if (l == k) continue;
            others.push_back(pts.x[l]);
            unit.push_back(1);
          }
          const std::vector<FieldElem> qk = expand_product(field, others, unit);
          const FieldElem weight = FieldElem(field, -static_cast<i64>(e[k]));
          for (int a = 1; a <= dims.psi_rows; ++a) {
            const FieldElem q = coeff_at(qk, a - 1, field);
            for (int b = 1; b <= dims.cols; ++b) {
              t.psi_prime.at(a - 1, b - 1) += weight * coeff_at(pk, pp * b - 1, field) * q;
            }
          }
        }
      }
    }
    t.psi_prime_valid = valid_extension_applicable(sig, d.m, i, p);
    t.psi = extend_psi(t, c);
    out.chars[static_cast<std::size_t>(i)] = std::move(t);
  }
  return out;
}

TripleAt triple_from_ordinary(const OrbitShape& shape, const Field& field) {
  TripleAt out;
  out.field = &field;
  const int g = shape.g;
  for (std::size_t tau : shape.labels()) {
    const std::size_t next = shape.next(tau);
    const int fd = shape.f_dual(tau), fdn = shape.f_dual(next), fn = shape.f_of(next);
    CharacterTriple t;
    t.phi = Matrix(field, fdn, fd);
    for (int j = 1; j <= std::min(fd, fdn); ++j) t.phi.at(j - 1, j - 1) = FieldElem(field, 1);
    t.psi_prime = Matrix(field, fn, fd);
    for (int j = fdn + 1; j <= fd; ++j) t.psi_prime.at(g - j, j - 1) = FieldElem(field, 1);
    t.psi_prime_valid = true;
    t.psi = t.psi_prime;
    out.chars[tau] = std::move(t);
  }
  return out;
}

DieudonneModule build_dieudonne(const TripleAt& triple, const OrbitShape& shape) {
  const Field& field = *triple.field;
  const std::size_t g = static_cast<std::size_t>(shape.g);
  DieudonneModule m;
  m.field = &field;
  m.shape = shape;
  for (std::size_t tau : shape.labels()) {
    const std::size_t next = shape.next(tau);
    const std::size_t fd = shape.f_dual(tau), f = shape.f_of(tau);
    const std::size_t fdn = shape.f_dual(next), fn = shape.f_of(next);
    const CharacterTriple& t = triple.chars.at(tau);
    const CharacterTriple& td = triple.chars.at(shape.conj.at(tau));
    if (t.phi.rows() != fdn || t.phi.cols() != fd || t.psi.rows() != fn || t.psi.cols() != fd) {
      throw std::invalid_argument("build_dieudonne: block dimensions disagree with the signature at " + std::to_string(tau));
    }
    Matrix fm(field, g, g);
    place(fm, 0, 0, t.phi);
    place(fm, fdn, 0, t.psi);
    m.F[tau] = {fm, 1};

    Matrix vp(field, g, g);
    place(vp, 0, fd, td.psi);
    place(vp, fdn, fd, td.phi);
    m.Vprime[tau] = {vp, 1};

    // b((q, l), (q', l')) = q.l' - l.q'
    Matrix gram(field, g, g);
    for (std::size_t a = 0; a < fd; ++a) gram.at(a, f + a) = FieldElem(field, 1);
    for (std::size_t b = 0; b < f; ++b) gram.at(fd + b, b) = FieldElem(field, -1);
    m.pairing[tau] = gram;
    m.q_dim[tau] = fd;

    // V: M_{p tau*} -> M_{tau*}, solved from b(Fx, y) = b(x, Vy)^p.
    const std::size_t src = shape.next(shape.conj.at(tau));
    const std::size_t f_tau_dual_target = f;  // q-dimension of M_{tau*}
    Matrix vm(field, g, g);
    if (fd > 0) {
      place(vm, f_tau_dual_target, 0, -t.psi.transpose());
      place(vm, f_tau_dual_target, fn, t.phi.transpose());
    }
    m.V[src] = {vm.frobenius(-1), -1};
  }
  return m;
}

int h_chain_rank(const DieudonneModule& d, std::size_t tau) {
  const OrbitShape& s = d.shape;
  const int target = s.f_dual(tau);
  if (target == 0) return 0;
  Matrix w = full_space(*d.field, d.dim());
  std::size_t t = tau;
  for (std::size_t i = 0; i < s.length(); ++i) {
    const SemilinearMap& f = d.F.at(t);
    w = s.f_dual(t) >= target ? image_of_subspace(f, w) : image_of_subspace(add(f, d.Vprime.at(t)), w);
    t = s.next(t);
  }
  if (w.rows() == 0) return 0;
  return static_cast<int>(rank(w.block(0, 0, w.rows(), static_cast<std::size_t>(target))));
}

OrbitChain orbit_chain(const DieudonneModule& d) {
  const OrbitShape& s = d.shape;
  OrbitChain ch;
  for (std::size_t t : s.orbit.members) {
    const int v = s.f_dual(t);
    const auto pos = std::lower_bound(ch.values.begin(), ch.values.end(), v);
    const std::size_t idx = static_cast<std::size_t>(pos - ch.values.begin());
    if (pos != ch.values.end() && *pos == v) {
      ch.reps[idx] = std::min(ch.reps[idx], t);
    } else {
      ch.values.insert(pos, v);
      ch.reps.insert(ch.reps.begin() + static_cast<std::ptrdiff_t>(idx), t);
    }
  }
  for (std::size_t u = 0; u < ch.values.size(); ++u) {
    const int rk = h_chain_rank(d, ch.reps[u]);
    ch.ranks.push_back(rk);
    if (rk != ch.values[u]) break;
    ch.covered_up_to = ch.values[u];
  }
  return ch;
}

bool check_orbit_ordinary(const DieudonneModule& d) { return orbit_chain(d).ordinary(); }

CurveVerdict check_curve_ordinary(const Datum& datum, u64 p, const BranchPoints& pts, const CheckOptions& opts) {
  if (static_cast<int>(pts.size()) != datum_r(datum)) throw std::invalid_argument("check_curve_ordinary: point count differs from r");
  CurveVerdict out;
  for (const CyclicQuotient& q : cyclic_quotients(datum)) {
    QuotientVerdict qv;
    qv.quotient = q;
    if (q.trivial) {
      out.quotients.push_back(std::move(qv));
      continue;
    }
    const CyclicDatum& cd = q.quotient;
    const TripleAt triple = specialize_direct(cd, p, subset(pts, q.branch_indices));
    const CharacterGroup group({cd.m});
    const Signature sig = signature(cd);
    std::vector<FrobeniusOrbit> orbits;
    for (auto& o : frobenius_orbits(cd.m, p)) {
      if (is_new(static_cast<int>(o.first()), cd.m)) orbits.push_back(std::move(o));
    }
    for (const FrobeniusOrbit& o : orbits) {
      OrbitVerdict ov;
      ov.orbit = o;
      const DieudonneModule mod = build_dieudonne(triple, orbit_shape(o, group, sig));
      ov.chain = orbit_chain(mod);
      if (opts.eo_cross_check) {
        try {
          ov.eo_maximal = eo_word_from_module(mod).all_maximal();
        } catch (const std::runtime_error&) {
          ov.eo_maximal = false;
        }
      }
      qv.orbits.push_back(std::move(ov));
    }
    // w_tau is maximal iff w_{tau*} is, so O* can certify members of O.
    for (OrbitVerdict& ov : qv.orbits) {
      const std::size_t dual_first = group.conjugate(ov.orbit.first());
      const auto dual = std::find_if(qv.orbits.begin(), qv.orbits.end(),
                                     [&](const OrbitVerdict& x) { return x.orbit.contains(dual_first); });
      ov.covered = true;
      for (std::size_t t : ov.orbit.members) {
        const bool own = sig(group.conjugate(t)) <= ov.chain.covered_up_to;
        const bool via_dual = sig(t) <= dual->chain.covered_up_to;
        if (!own && !via_dual) ov.covered = false;
      }
      qv.ok = qv.ok && ov.covered;
    }
    out.ordinary = out.ordinary && qv.ok;
    out.quotients.push_back(std::move(qv));
    if (opts.stop_early && !out.ordinary) return out;
  }
  return out;
}

std::string WitnessRecord::to_string() const {
  return datum_to_text(datum) + " p=" + std::to_string(p) + " seed=" + std::to_string(seed) + " s=" + std::to_string(s) +
         " trial=" + std::to_string(trial) + " points=" + points;
}

WitnessRecord WitnessRecord::parse(const std::string& line) {
  const std::size_t cut = line.find(" p=");
  if (cut == std::string::npos) throw std::invalid_argument("witness record: missing p=");
  WitnessRecord rec;
  rec.datum = parse_datum(line.substr(0, cut));
  std::stringstream ss(line.substr(cut + 1));
  std::string tok;
  bool have_points = false;
  while (ss >> tok) {
    const std::size_t eq = tok.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("witness record: bad token " + tok);
    const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (key == "p") {
      rec.p = std::stoull(val);
    } else if (key == "seed") {
      rec.seed = std::stoull(val);
    } else if (key == "s") {
      rec.s = static_cast<unsigned>(std::stoul(val));
    } else if (key == "trial") {
      rec.trial = std::stoull(val);
    } else if (key == "points") {
      rec.points = val;
      have_points = true;
    } else {
      throw std::invalid_argument("witness record: unknown key " + key);
    }
  }
  if (!have_points || rec.p == 0) throw std::invalid_argument("witness record: incomplete");
  return rec;
}

WitnessResult witness_search(const Datum& datum, u64 p, u64 seed, unsigned max_ext, u64 trials) {
  const auto violations = validate(datum);
  if (!violations.empty()) throw std::invalid_argument("invalid datum: " + violations.front());
  if (!is_prime(p) || group_order(datum) % static_cast<i64>(p) == 0) throw std::invalid_argument("bad prime");
  const std::size_t r = static_cast<std::size_t>(datum_r(datum));
  std::mt19937_64 rng(seed);
  WitnessResult res;
  for (unsigned s = 1; s <= max_ext; ++s) {
    res.trials_per_s.push_back(0);
    u64 size = 1;
    for (unsigned k = 0; k < s && size < r; ++k) size *= p;
    if (size < r) {
      ++res.rejected_fields;
      continue;
    }
    const Field& field = Field::get(p, s);
    for (u64 trial = 0; trial < trials; ++trial) {
      std::vector<FieldElem> x;
      while (x.size() < r) {
        FieldElem c = random_element(field, rng);
        if (std::find(x.begin(), x.end(), c) == x.end()) x.push_back(std::move(c));
      }
      ++res.trials_per_s.back();
      ++res.total_trials;
      const BranchPoints pts = make_branch_points(field, std::move(x));
      if (check_curve_ordinary(datum, p, pts, {false, true}).ordinary) {
        res.found = true;
        res.record = WitnessRecord{datum, p, seed, s, trial, pts.to_string()};
        return res;
      }
    }
  }
  return res;
}

bool replay_witness(const WitnessRecord& rec) {
  const Field& field = Field::get(rec.p, rec.s);
  return check_curve_ordinary(rec.datum, rec.p, parse_branch_points(field, rec.points)).ordinary;
}

}  // namespace muord
