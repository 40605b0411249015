#include "muord/hasse_witt.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <algorithm>
#include <bit>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>

namespace muord {

namespace {

using boost::multiprecision::cpp_int;

int label_mod(i64 v, int m) { return static_cast<int>(pos_mod(v, m)); }

void require_symbolic_prime(const CyclicDatum& d, u64 p) {
  if (d.r() > static_cast<int>(kMaxVars)) throw std::invalid_argument("too many branch points");
  if (p >= (u64{1} << 16)) throw std::invalid_argument("prime too large for symbolic entries");
  if (!is_prime(p) || d.m % static_cast<i64>(p) == 0) throw std::invalid_argument("bad prime");
}

u32 sign_mod(i64 exponent, u64 p) { return exponent % 2 == 0 ? 1 % p : static_cast<u32>(p - 1); }

// All n with sum N and n_k <= caps[k], in lex-descending order, with coefficient
// scale * prod C(caps_k, n_k) mod p. Every such coefficient is nonzero since caps < p.
class CompositionEnumerator {
 public:
  CompositionEnumerator(const std::vector<int>& caps, u64 p) : caps_(caps), p_(p), tail_(caps.size() + 1, 0) {
    for (std::size_t k = caps.size(); k-- > 0;) tail_[k] = tail_[k + 1] + caps[k];
    binom_.resize(caps.size());
    for (std::size_t k = 0; k < caps.size(); ++k) {
      for (int n = 0; n <= caps[k]; ++n) binom_[k].push_back(static_cast<u32>(lucas_binomial(caps[k], n, p)));
    }
  }

  std::vector<Term> run(int N, u32 scale) {
    out_.clear();
    if (N < 0 || N > tail_[0]) return {};
    Term t;
    descend(0, N, scale, t);
    return std::move(out_);
  }

 private:
  void descend(std::size_t k, int rest, u64 coeff, Term& t) {
    if (k == caps_.size()) {
      t.coeff = static_cast<u32>(coeff);
      out_.push_back(t);
      return;
    }
    const int hi = std::min(caps_[k], rest);
    const int lo = std::max(0, rest - tail_[k + 1]);
    for (int n = hi; n >= lo; --n) {
      t.exp[k] = static_cast<std::uint16_t>(n);
      descend(k + 1, rest - n, mod_mul(coeff, binom_[k][n], p_), t);
    }
    t.exp[k] = 0;
  }

  std::vector<int> caps_;
  u64 p_;
  std::vector<int> tail_;
  std::vector<std::vector<u32>> binom_;
  std::vector<Term> out_;
};

// Subsets of {0..r-1} \ {skip} of the given size, as bit masks.
std::vector<unsigned> subsets(int r, int skip, int size) {
  std::vector<unsigned> out;
  for (unsigned mask = 0; mask < (1U << r); ++mask) {
    if ((mask >> skip) & 1U) continue;
    if (std::popcount(mask) == size) out.push_back(mask);
  }
  return out;
}

void check_block(const BlockDims& dims, int rows, int i, int jp, int j) {
  if (jp < 1 || jp > rows || j < 1 || j > dims.cols) {
    throw std::out_of_range("block index (" + std::to_string(jp) + "," + std::to_string(j) + ") outside block of tau_" +
                            std::to_string(i));
  }
}

}  // namespace

std::vector<int> branch_exponents(const CyclicDatum& d, u64 p, int i) {
  std::vector<int> e;
  e.reserve(d.a.size());
  for (int ak : d.a) {
    const i64 frac = pos_mod(static_cast<i64>(i) * ak, d.m);
    e.push_back(static_cast<int>((static_cast<i64>(p) * frac) / d.m));
  }
  return e;
}

std::pair<int, int> CombinatorialFrame::c_and_C(int N) const {
  if (N < 0 || N >= s) throw std::out_of_range("frame: N outside [0, s_i)");
  int acc = 0;
  for (std::size_t c = 0; c < e.size(); ++c) {
    if (acc + e[c] > N) return {static_cast<int>(c) + 1, N - acc};
    acc += e[c];
  }
  throw std::logic_error("frame: unreachable");
}

Exponents CombinatorialFrame::x_of_N(int N) const {
  const auto [c, C] = c_and_C(N);
  Exponents x{};
  for (int k = 0; k + 1 < c; ++k) x[k] = static_cast<std::uint16_t>(e[k]);
  x[c - 1] = static_cast<std::uint16_t>(C);
  return x;
}

CombinatorialFrame frame(const CyclicDatum& d, u64 p, int i) {
  CombinatorialFrame fr;
  fr.i = i;
  fr.p = p;
  fr.e = branch_exponents(d, p, i);
  fr.s = std::accumulate(fr.e.begin(), fr.e.end(), 0);
  return fr;
}

BlockDims block_dims(const CyclicDatum& d, u64 p, int i) {
  const Signature sig = signature(d);
  const int m = d.m;
  const int pi = label_mod(static_cast<i64>(p % m) * i, m);
  BlockDims b;
  b.phi_rows = sig(label_mod(-pi, m));
  b.psi_rows = sig(pi);
  b.cols = sig(label_mod(-i, m));
  return b;
}

SparsePoly phi_entry(const CyclicDatum& d, u64 p, int i, int jp, int j) {
  require_symbolic_prime(d, p);
  const BlockDims dims = block_dims(d, p, i);
  check_block(dims, dims.phi_rows, i, jp, j);
  const unsigned r = static_cast<unsigned>(d.r());
  const CombinatorialFrame fr = frame(d, p, i);
  const int N = fr.s - (j * static_cast<int>(p) - jp);
  if (N < 0) return SparsePoly(r, p);
  CompositionEnumerator en(fr.e, p);
  return SparsePoly::from_sorted_terms(r, p, en.run(N, sign_mod(N, p)));
}

SparsePoly psi_prime_entry(const CyclicDatum& d, u64 p, int i, int jp, int j) {
  require_symbolic_prime(d, p);
  if (std::gcd(i, d.m) != 1) throw std::invalid_argument("non-new character: pass to quotient");
  const BlockDims dims = block_dims(d, p, i);
  check_block(dims, dims.psi_rows, i, jp, j);
  const int r = d.r();
  const CombinatorialFrame fr = frame(d, p, i);
  SparsePoly out(static_cast<unsigned>(r), p);
  const int Nr = fr.s - static_cast<int>(p) * j;
  if (Nr < 0) return out;
  const int q_size = r - jp;
  const u64 sign = mod_mul(sign_mod(Nr, p), sign_mod(q_size, p), p);
  for (int k = 0; k < r; ++k) {
    if (fr.e[k] == 0) continue;
    std::vector<int> caps = fr.e;
    caps[k] -= 1;
    CompositionEnumerator en(caps, p);
    // -e_k * (-1)^{Nr} * (-1)^{r-j'} folded into every r-term.
    const u32 scale = static_cast<u32>(mod_mul(sign, p - static_cast<u64>(fr.e[k]) % p, p));
    const std::vector<Term> base = en.run(Nr, scale);
    if (base.empty()) continue;
    for (unsigned mask : subsets(r, k, q_size)) {
      std::vector<Term> shifted = base;
      for (Term& t : shifted) {
        for (int l = 0; l < r; ++l) t.exp[l] = static_cast<std::uint16_t>(t.exp[l] + ((mask >> l) & 1U));
      }
      out = out + SparsePoly::from_sorted_terms(static_cast<unsigned>(r), p, std::move(shifted));
    }
  }
  return out;
}

u32 psi_prime_coefficient(const CyclicDatum& d, u64 p, int i, int jp, int j, const Exponents& mono) {
  require_symbolic_prime(d, p);
  if (std::gcd(i, d.m) != 1) throw std::invalid_argument("non-new character: pass to quotient");
  const BlockDims dims = block_dims(d, p, i);
  check_block(dims, dims.psi_rows, i, jp, j);
  const int r = d.r();
  const CombinatorialFrame fr = frame(d, p, i);
  const int Nr = fr.s - static_cast<int>(p) * j;
  const int q_size = r - jp;
  if (Nr < 0 || exponent_degree(mono) != Nr + q_size) return 0;
  const u64 sign = mod_mul(sign_mod(Nr, p), sign_mod(q_size, p), p);
  u64 acc = 0;
  for (int k = 0; k < r; ++k) {
    if (fr.e[k] == 0) continue;
    for (unsigned mask : subsets(r, k, q_size)) {
      u64 term = 1;
      for (int l = 0; l < r && term != 0; ++l) {
        const int n = static_cast<int>(mono[l]) - static_cast<int>((mask >> l) & 1U);
        const int cap = fr.e[l] - (l == k ? 1 : 0);
        term = (n < 0 || n > cap) ? 0 : mod_mul(term, lucas_binomial(cap, n, p), p);
      }
      acc = (acc + mod_mul(term, static_cast<u64>(fr.e[k]) % p, p)) % p;
    }
  }
  return static_cast<u32>(mod_mul((p - acc) % p, sign, p));
}

std::string HWSymbolic::to_string() const {
  std::string out;
  auto emit = [&](const char* kind, const std::map<int, PolyMatrix>& blocks) {
    for (const auto& [i, mat] : blocks) {
      for (std::size_t a = 0; a < mat.size(); ++a) {
        for (std::size_t b = 0; b < mat[a].size(); ++b) {
          out += std::string(kind) + " i=" + std::to_string(i) + " (" + std::to_string(a + 1) + "," + std::to_string(b + 1) +
                 "): " + mat[a][b].to_string() + "\n";
        }
      }
    }
  };
  emit("phi", phi);
  emit("psi", psi);
  return out;
}

HWSymbolic hw_symbolic(const CyclicDatum& d, u64 p) {
  HWSymbolic hw;
  hw.datum = d;
  hw.p = p;
  for (int i = 1; i < d.m; ++i) {
    const BlockDims dims = block_dims(d, p, i);
    if (dims.cols == 0) continue;
    if (dims.phi_rows > 0) {
      PolyMatrix mat(dims.phi_rows);
      for (int a = 1; a <= dims.phi_rows; ++a) {
        for (int b = 1; b <= dims.cols; ++b) mat[a - 1].push_back(phi_entry(d, p, i, a, b));
      }
      hw.phi[i] = std::move(mat);
    }
    if (dims.psi_rows > 0 && std::gcd(i, d.m) == 1) {
      PolyMatrix mat(dims.psi_rows);
      for (int a = 1; a <= dims.psi_rows; ++a) {
        for (int b = 1; b <= dims.cols; ++b) mat[a - 1].push_back(psi_prime_entry(d, p, i, a, b));
      }
      hw.psi[i] = std::move(mat);
    }
  }
  return hw;
}

std::string to_string(Psi11Certificate::Status s) {
  switch (s) {
    case Psi11Certificate::Status::certified:
      return "certified";
    case Psi11Certificate::Status::declined:
      return "declined";
    case Psi11Certificate::Status::failed:
      return "failed";
  }
  return "?";
}

Psi11Certificate psi11_certificate(const CyclicDatum& d, u64 p, int i) {
  Psi11Certificate cert;
  cert.i = i;
  const int r = d.r();
  if (std::gcd(i, d.m) != 1) {
    cert.reason = "gcd(i,m) != 1";
    return cert;
  }
  if (static_cast<i64>(p) <= static_cast<i64>(d.m) * (r - 2)) {
    cert.reason = "p <= m(r-2)";
    return cert;
  }
  const BlockDims dims = block_dims(d, p, i);
  if (dims.cols < 1 || dims.psi_rows < 1) {
    cert.reason = "empty (1,1) block";
    return cert;
  }
  const CombinatorialFrame fr = frame(d, p, i);
  const int N = fr.s - static_cast<int>(p);
  std::tie(cert.c, cert.C) = fr.c_and_C(N);
  cert.monomial = fr.x_of_N(N);
  for (int k = 0; k + 1 < r; ++k) cert.monomial[k] = static_cast<std::uint16_t>(cert.monomial[k] + 1);
  cert.extracted = psi_prime_coefficient(d, p, i, 1, 1, cert.monomial);
  const u64 binom = lucas_binomial(fr.e[cert.c - 1], cert.C, p);
  const u64 mag = mod_mul(binom, static_cast<u64>(fr.e[r - 1]) % p, p);
  // -(-1)^{r-1+s-p} = (-1)^{r+s-p}
  cert.closed_form = static_cast<u32>(mod_mul(mag, sign_mod(r + N, p), p));
  if (cert.extracted != cert.closed_form) {
    cert.status = Psi11Certificate::Status::failed;
    cert.reason = "extracted coefficient differs from closed form";
  } else if (cert.extracted == 0) {
    cert.status = Psi11Certificate::Status::failed;
    cert.reason = "zero coefficient";
  } else {
    cert.status = Psi11Certificate::Status::certified;
  }
  return cert;
}

SeparationReport monomial_separation(const CyclicDatum& d, u64 p, const FrobeniusOrbit& orbit) {
  SeparationReport rep;
  const int m = d.m;
  const int r = d.r();
  if (static_cast<i64>(p) <= static_cast<i64>(m) * (r - 2)) {
    rep.reason = "p <= m(r-2)";
    return rep;
  }
  const Signature sig = signature(d);
  auto f_dual = [&](int t) { return sig(label_mod(-t, m)); };
  bool has0 = false, has1 = false;
  std::optional<int> tau;
  for (std::size_t t : orbit.members) {
    if (std::gcd(static_cast<int>(t), m) != 1) {
      rep.reason = "non-new orbit: pass to quotient";
      return rep;
    }
    const int fd = f_dual(static_cast<int>(t));
    has0 = has0 || fd == 0;
    if (fd == 1) {
      has1 = true;
      if (!tau || static_cast<int>(t) < *tau) tau = static_cast<int>(t);
    }
  }
  if (!has0 || !has1) {
    rep.reason = "F(O) does not contain {0,1}";
    return rep;
  }
  rep.applicable = true;
  rep.tau = static_cast<std::size_t>(*tau);
  const std::size_t l = orbit.length();
  const int pm = static_cast<int>(p % m);
  std::vector<int> t(l + 1);
  t[0] = *tau;
  for (std::size_t i = 1; i <= l; ++i) t[i] = label_mod(static_cast<i64>(t[i - 1]) * pm, m);
  rep.a.resize(l + 1);
  for (std::size_t i = 0; i <= l; ++i) rep.a[i] = f_dual(t[i]) >= 1 ? f_dual(t[i]) : sig(t[i]);

  // entry[i][(j'-1) * a(i) + (j-1)]: max monomial of A_i(j', j), empty when zero.
  std::vector<std::vector<std::optional<Exponents>>> entry(l);
  rep.max_valuation = 0;
  for (std::size_t i = 0; i < l; ++i) {
    const bool here = f_dual(t[i]) >= 1, there = f_dual(t[i + 1]) >= 1;
    const int kase = here && there ? 1 : (!here && !there ? 2 : (here ? 3 : 4));
    rep.cases.push_back(kase);
    const int label = (kase == 1 || kase == 3) ? t[i] : label_mod(-t[i], m);
    for (int jp = 1; jp <= rep.a[i + 1]; ++jp) {
      for (int j = 1; j <= rep.a[i]; ++j) {
        const SparsePoly e = kase <= 2 ? phi_entry(d, p, label, jp, j) : psi_prime_entry(d, p, label, jp, j);
        if (e.is_zero()) {
          entry[i].push_back(std::nullopt);
          continue;
        }
        const Exponents x = max_monomial(e).exp;
        for (int s = 0; s < r; ++s) rep.max_valuation = std::max(rep.max_valuation, static_cast<int>(x[s]));
        entry[i].push_back(x);
      }
    }
  }
  rep.valuation_ok = rep.max_valuation <= static_cast<int>(p) - 1;

  for (std::size_t i = 1; i < l; ++i) {
    if (rep.a[i] == 0) {
      rep.vacuous = true;
      rep.distinct = true;
      return rep;
    }
  }
  std::vector<cpp_int> weight(l);
  for (std::size_t i = 0; i < l; ++i) weight[i] = boost::multiprecision::pow(cpp_int(p), static_cast<unsigned>(l - 1 - i));

  std::set<std::vector<cpp_int>> seen;
  rep.distinct = true;
  std::vector<int> J(l + 1, 1);
  while (true) {
    ++rep.paths;
    std::vector<cpp_int> T(static_cast<std::size_t>(r));
    bool nonzero = true;
    for (std::size_t i = 0; i < l && nonzero; ++i) {
      const auto& x = entry[i][static_cast<std::size_t>((J[i + 1] - 1) * rep.a[i] + (J[i] - 1))];
      if (!x) {
        nonzero = false;
        break;
      }
      for (int s = 0; s < r; ++s) T[s] += weight[i] * (*x)[s];
    }
    if (nonzero) {
      ++rep.nonzero_paths;
      if (!seen.insert(std::move(T)).second) rep.distinct = false;
    }
    // Odometer over J(1..l-1).
    std::size_t k = 1;
    while (k < l && J[k] == rep.a[k]) J[k++] = 1;
    if (k >= l) break;
    ++J[k];
  }
  return rep;
}

bool valid_extension_applicable(const Signature& sig, int m, int i, u64 p) {
  const int pi = label_mod(static_cast<i64>(p % m) * i, m);
  const int g = sig(label_mod(i, m)) + sig(label_mod(-i, m));
  return sig(label_mod(-pi, m)) == 0 || sig(label_mod(-i, m)) == g;
}

}  // namespace muord
