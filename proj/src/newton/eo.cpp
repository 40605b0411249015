#include "muord/eo.hpp"

#include <algorithm>
#include <stdexcept>

namespace muord {

Word maximal_word(int f, int g) {
  const int fd = g - f;
  Word w(static_cast<std::size_t>(g));
  for (int k = 1; k <= g; ++k) w[k - 1] = k <= fd ? f + k : k - fd;
  return w;
}

Word word_from_jumps(const std::vector<int>& jumps, int g) {
  const int f = static_cast<int>(jumps.size());
  Word w(static_cast<std::size_t>(g), 0);
  int k = 0, other = 0;
  for (int j = 1; j <= g; ++j) {
    if (k < f && jumps[k] == j) {
      w[j - 1] = ++k;
    } else {
      w[j - 1] = f + (++other);
    }
  }
  return w;
}

int word_length(const Word& w, int f) {
  int len = 0;
  for (int j = 1; j <= static_cast<int>(w.size()); ++j) {
    if (w[j - 1] <= f) len += j - w[j - 1];
  }
  return len;
}

bool is_maximal(const Word& w, int f) { return w == maximal_word(f, static_cast<int>(w.size())); }

bool satisfies_word_property(const Word& w, int f) {
  for (std::size_t j = 0; j < w.size(); ++j) {
    for (std::size_t jp = 0; jp < j; ++jp) {
      if (w[jp] > w[j] && !(w[j] <= f && f < w[jp])) return false;
    }
  }
  return true;
}

int inversions(const Word& w) {
  int n = 0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    for (std::size_t jp = 0; jp < j; ++jp) n += w[jp] > w[j] ? 1 : 0;
  }
  return n;
}

std::string word_to_string(const Word& w) {
  std::string out = "[";
  for (std::size_t j = 0; j < w.size(); ++j) out += (j ? "," : "") + std::to_string(w[j]);
  return out + "]";
}

bool EOWord::all_maximal() const {
  for (const auto& [label, cw] : words) {
    if (!is_maximal(cw.w, cw.f)) return false;
  }
  return true;
}

namespace {

// Sign of the template pairing at (tau, j): antisymmetric under (tau, j) <-> (tau*, g+1-j).
int template_sign(const OrbitShape& s, std::size_t tau, int j) {
  const std::size_t dual = s.conj.at(tau);
  const int dj = s.g + 1 - j;
  return (tau < dual || (tau == dual && j < dj)) ? 1 : -1;
}

}  // namespace

DieudonneModule build_ordinary_module(const OrbitShape& shape, const Field& field) {
  DieudonneModule m;
  m.field = &field;
  m.shape = shape;
  const int g = shape.g;
  for (std::size_t tau : shape.labels()) {
    const int fd = shape.f_dual(tau);
    Matrix f_mat(field, g, g);
    for (int j = 1; j <= fd; ++j) f_mat.at(j - 1, j - 1) = FieldElem(field, 1);
    m.F[tau] = {f_mat, 1};

    Matrix gram(field, g, g);
    for (int j = 1; j <= g; ++j) gram.at(j - 1, g - j) = FieldElem(field, template_sign(shape, tau, j));
    m.pairing[tau] = gram;

    // V on M_tau = M_{p sigma}: e_{tau,j1} -> c e_{sigma,j1} for j1 > f(sigma*), sigma = tau/p.
    const std::size_t sigma = shape.prev(tau);
    const std::size_t sigma_dual = shape.conj.at(sigma);
    const std::size_t p_sigma_dual = shape.next(sigma_dual);
    Matrix v_mat(field, g, g);
    for (int j1 = shape.f_dual(sigma) + 1; j1 <= g; ++j1) {
      const int c = template_sign(shape, p_sigma_dual, g + 1 - j1) * template_sign(shape, sigma_dual, g + 1 - j1);
      v_mat.at(j1 - 1, j1 - 1) = FieldElem(field, c);
    }
    m.V[tau] = {v_mat, -1};
  }
  return m;
}

FieldElem pairing_value(const DieudonneModule& m, std::size_t tau, const Vec& x, const Vec& y) {
  const Vec gy = m.pairing.at(tau) * y;
  FieldElem acc(*m.field);
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * gy[i];
  return acc;
}

namespace {

Vec random_vector(const Field& field, std::size_t n, std::mt19937_64& rng) {
  Vec v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v.push_back(random_element(field, rng));
  return v;
}

Matrix kernel_of(const SemilinearMap& a) { return preimage_of_subspace(a, zero_space(a.matrix.field(), a.n_out())); }

Matrix image_of(const SemilinearMap& a) { return image_of_subspace(a, full_space(a.matrix.field(), a.n_in())); }

}  // namespace

AxiomReport check_axioms(const DieudonneModule& m, std::mt19937_64& rng, int vector_pairs) {
  AxiomReport rep;
  const Field& field = *m.field;
  const std::size_t g = m.dim();
  auto fail = [&](bool& flag, const std::string& what) {
    flag = false;
    rep.failures.push_back(what);
  };
  const auto labels = m.shape.labels();
  for (std::size_t tau : labels) {
    const std::string at = " at " + std::to_string(tau);
    if (m.F.at(tau).matrix.rows() != g || m.F.at(tau).matrix.cols() != g || m.V.at(tau).matrix.rows() != g ||
        m.pairing.at(tau).rows() != g) {
      fail(rep.dims, "block dimension" + at);
      continue;
    }
    const std::size_t next = m.shape.next(tau);
    // ker F_tau = Im V_{p tau}; ker V_{p tau} = Im F_tau.
    if (kernel_of(m.F.at(tau)) != image_of(m.V.at(next))) fail(rep.ker_f_is_im_v, "ker F != Im V" + at);
    if (kernel_of(m.V.at(next)) != image_of(m.F.at(tau))) fail(rep.ker_v_is_im_f, "ker V != Im F" + at);

    const std::size_t dual = m.shape.conj.at(tau);
    const Matrix& gram = m.pairing.at(tau);
    if (gram != -m.pairing.at(dual).transpose()) fail(rep.alternating, "pairing not alternating" + at);

    // b(Fx, y) = b(x, Vy)^p with x in M_tau, y in M_{(p tau)*}.
    const std::size_t y_label = m.shape.conj.at(next);
    for (int t = 0; t < vector_pairs; ++t) {
      const Vec x = random_vector(field, g, rng);
      const Vec y = random_vector(field, g, rng);
      const FieldElem lhs = pairing_value(m, next, m.F.at(tau).apply(x), y);
      const FieldElem rhs = frobenius(pairing_value(m, tau, x, m.V.at(y_label).apply(y)), 1);
      if (lhs != rhs) {
        fail(rep.pairing_compatible, "b(Fx,y) != b(x,Vy)^p" + at);
        break;
      }
    }

    if (!m.Vprime.empty()) {
      const SemilinearMap& vp = m.Vprime.at(tau);
      const std::size_t q = m.q_dim.at(tau);
      Matrix q_space(field, q, g);
      for (std::size_t i = 0; i < q; ++i) q_space.at(i, i) = FieldElem(field, 1);
      if (kernel_of(vp) != q_space) fail(rep.ker_vprime_is_q, "ker V' != Q" + at);
      if (subspace_intersection(image_of(m.F.at(tau)), image_of(vp)).rows() != 0) {
        fail(rep.im_f_meets_im_vprime_trivially, "Im F meets Im V'" + at);
      }
    }
  }
  // b(x, x) = 0 on the total module.
  for (int t = 0; t < vector_pairs; ++t) {
    std::map<std::size_t, Vec> x;
    for (std::size_t tau : labels) x[tau] = random_vector(field, g, rng);
    FieldElem acc(field);
    for (std::size_t tau : labels) acc += pairing_value(m, tau, x[tau], x[m.shape.conj.at(tau)]);
    if (!acc.is_zero()) {
      fail(rep.alternating, "b(x,x) != 0");
      break;
    }
  }
  return rep;
}

namespace {

using Graded = std::map<std::size_t, Matrix>;

std::size_t total_dim(const Graded& w) {
  std::size_t d = 0;
  for (const auto& [k, v] : w) d += v.rows();
  return d;
}

bool graded_contains(const Graded& big, const Graded& small) {
  for (const auto& [k, v] : small) {
    if (!subspace_contains(big.at(k), v)) return false;
  }
  return true;
}

}  // namespace

EOWord eo_word_from_module(const DieudonneModule& m) {
  const Field& field = *m.field;
  const std::size_t g = m.dim();
  const auto labels = m.shape.labels();

  Graded zero, full;
  for (std::size_t tau : labels) {
    zero[tau] = zero_space(field, g);
    full[tau] = full_space(field, g);
  }
  std::vector<Graded> members{zero, full};
  const std::size_t bound = 4 * g * labels.size() + 4;
  for (std::size_t idx = 0; idx < members.size(); ++idx) {
    if (members.size() > bound) throw std::runtime_error("eo_word_from_module: filtration does not stabilise");
    const Graded w = members[idx];
    Graded img, pre;
    for (std::size_t tau : labels) {
      img[m.shape.next(tau)] = image_of_subspace(m.F.at(tau), w.at(tau));
      // V maps M_tau to M_{tau/p}.
      pre[tau] = preimage_of_subspace(m.V.at(tau), w.at(m.shape.prev(tau)));
    }
    for (Graded* cand : {&img, &pre}) {
      if (std::find(members.begin(), members.end(), *cand) == members.end()) members.push_back(*cand);
    }
  }
  std::sort(members.begin(), members.end(), [](const Graded& a, const Graded& b) { return total_dim(a) < total_dim(b); });
  for (std::size_t k = 1; k < members.size(); ++k) {
    if (!graded_contains(members[k], members[k - 1])) throw std::runtime_error("eo_word_from_module: filtration is not a chain");
  }

  EOWord out;
  for (std::size_t tau : labels) {
    std::vector<Matrix> chain;
    for (const auto& w : members) {
      if (chain.empty() || chain.back() != w.at(tau)) chain.push_back(w.at(tau));
    }
    CharacterWord cw;
    cw.label = tau;
    cw.g = static_cast<int>(g);
    for (std::size_t k = 1; k < chain.size(); ++k) {
      const std::size_t lo = chain[k - 1].rows(), hi = chain[k].rows();
      const std::size_t df = image_of_subspace(m.F.at(tau), chain[k]).rows() - image_of_subspace(m.F.at(tau), chain[k - 1]).rows();
      if (df == 0) {
        for (std::size_t j = lo + 1; j <= hi; ++j) cw.jumps.push_back(static_cast<int>(j));
      } else if (df == hi - lo) {
        for (std::size_t j = lo + 1; j <= hi; ++j) cw.others.push_back(static_cast<int>(j));
      } else {
        throw std::runtime_error("eo_word_from_module: F is neither injective nor zero on a filtration step");
      }
    }
    cw.f = static_cast<int>(cw.jumps.size());
    if (cw.f != m.shape.f_of(tau)) throw std::runtime_error("eo_word_from_module: dim ker F differs from the signature");
    cw.w = word_from_jumps(cw.jumps, cw.g);
    out.words[tau] = std::move(cw);
  }
  return out;
}

}  // namespace muord
