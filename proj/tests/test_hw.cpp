#include <gtest/gtest.h>

#include <random>

#include "muord/hasse_witt.hpp"
#include "muord/monodromy.hpp"
#include "support.hpp"

using namespace muord;
using muord::oracle::phi_oracle;
using muord::oracle::psi_oracle;

TEST(HasseWitt, BranchExponentsBelowP) {
  const CyclicDatum d{5, {1, 1, 1, 2}};
  EXPECT_EQ(branch_exponents(d, 13, 2), (std::vector<int>{5, 5, 5, 10}));
  const CombinatorialFrame fr = frame(d, 13, 2);
  EXPECT_EQ(fr.s, 25);
  EXPECT_THROW(fr.c_and_C(25), std::out_of_range);
}

TEST(HasseWitt, CAndCAgreeWithLexMaximalComposition) {
  // X_i(N) is the lex-largest exponent vector of total degree N under the caps e.
  const CombinatorialFrame fr = frame(CyclicDatum{7, {1, 1, 1, 2, 2}}, 23, 3);
  for (int n = 0; n < fr.s; ++n) {
    const auto [c, C] = fr.c_and_C(n);
    const Exponents x = fr.x_of_N(n);
    int left = n;
    for (std::size_t k = 0; k < fr.e.size(); ++k) {
      const int take = std::min(left, fr.e[k]);
      EXPECT_EQ(x[k], take);
      left -= take;
    }
    EXPECT_EQ(x[static_cast<std::size_t>(c - 1)], C);
    EXPECT_LT(C, fr.e[static_cast<std::size_t>(c - 1)]);
  }
}

TEST(HasseWitt, PhiExampleTermCount) {
  // N = 6 over caps (4, 4, 4): C(8,2) = 28 compositions, the 9 with a part above 4 drop out.
  const SparsePoly e = phi_entry(CyclicDatum{3, {1, 1, 1}}, 7, 2, 1, 1);
  EXPECT_EQ(e.size(), 19u);
  EXPECT_EQ(e.homogeneous_degree(), 6);
  EXPECT_EQ(e, phi_oracle(CyclicDatum{3, {1, 1, 1}}, 7, 2, 1, 1));
}

TEST(HasseWitt, BlockIndexErrors) {
  const CyclicDatum d{5, {1, 1, 1, 2}};
  EXPECT_THROW(phi_entry(d, 13, 1, 1, 1), std::out_of_range);
  EXPECT_THROW(psi_prime_entry(CyclicDatum{6, {1, 1, 5, 5}}, 13, 2, 1, 1), std::invalid_argument);
}

TEST(HasseWitt, EntriesMatchOracles) {
  std::mt19937_64 rng(17);
  int phi_checked = 0, psi_checked = 0;
  while (phi_checked < 40 || psi_checked < 40) {
    const int m = 2 + static_cast<int>(rng() % 7), r = 3 + static_cast<int>(rng() % 2);
    const CyclicDatum d = oracle::random_cyclic_datum(rng, m, r);
    u64 p = 3 + rng() % 20;
    while (!is_prime(p) || m % static_cast<int>(p) == 0) ++p;
    const int i = 1 + static_cast<int>(rng() % (m - 1));
    const BlockDims dims = block_dims(d, p, i);
    if (dims.cols == 0) continue;
    const int j = 1 + static_cast<int>(rng() % dims.cols);
    if (dims.phi_rows > 0) {
      const int jp = 1 + static_cast<int>(rng() % dims.phi_rows);
      const SparsePoly got = phi_entry(d, p, i, jp, j);
      EXPECT_EQ(got, phi_oracle(d, p, i, jp, j)) << d.to_string() << " p=" << p << " i=" << i;
      if (!got.is_zero()) {
        EXPECT_GE(got.homogeneous_degree(), 0);
      }
      ++phi_checked;
    }
    if (dims.psi_rows > 0 && std::gcd(i, m) == 1) {
      const int jp = 1 + static_cast<int>(rng() % dims.psi_rows);
      const SparsePoly got = psi_prime_entry(d, p, i, jp, j);
      const oracle::PsiOracle want = psi_oracle(d, p, i, jp, j);
      EXPECT_EQ(got, want.value) << d.to_string() << " p=" << p << " i=" << i;
      EXPECT_TRUE(want.tail_vanishes);
      if (!got.is_zero()) {
        EXPECT_EQ(got.homogeneous_degree(), frame(d, p, i).s - static_cast<int>(p) * j + d.r() - jp);
      }
      ++psi_checked;
    }
  }
}

TEST(HasseWitt, PsiCoefficientAgreesWithEntry) {
  const CyclicDatum d{5, {1, 1, 1, 2}};
  const SparsePoly e = psi_prime_entry(d, 13, 2, 1, 1);
  for (const Term& t : e.terms()) EXPECT_EQ(psi_prime_coefficient(d, 13, 2, 1, 1, t.exp), t.coeff);
}

TEST(HasseWitt, CertificateExample) {
  const Psi11Certificate c = psi11_certificate(CyclicDatum{5, {1, 1, 1, 2}}, 13, 2);
  ASSERT_EQ(c.status, Psi11Certificate::Status::certified);
  EXPECT_EQ(c.c, 3);
  EXPECT_EQ(c.C, 2);
  EXPECT_EQ(c.extracted, 9u);
  EXPECT_EQ(c.closed_form, 9u);
  // The certified monomial is the lex-largest term of the entry.
  EXPECT_EQ(max_monomial(psi_prime_entry(CyclicDatum{5, {1, 1, 1, 2}}, 13, 2, 1, 1)).exp, c.monomial);
}

TEST(HasseWitt, CertificateDeclinesOutsideHypotheses) {
  EXPECT_EQ(psi11_certificate(CyclicDatum{5, {1, 1, 1, 2}}, 7, 2).status, Psi11Certificate::Status::declined);
  EXPECT_EQ(psi11_certificate(CyclicDatum{6, {1, 1, 5, 5}}, 13, 2).status, Psi11Certificate::Status::declined);
}

TEST(HasseWitt, SymbolicMatricesHaveBlockShapes) {
  const CyclicDatum d{7, {1, 1, 1, 2, 2}};
  const HWSymbolic hw = hw_symbolic(d, 23);
  for (const auto& [i, mat] : hw.phi) {
    const BlockDims dims = block_dims(d, 23, i);
    ASSERT_EQ(static_cast<int>(mat.size()), dims.phi_rows);
    for (const auto& row : mat) EXPECT_EQ(static_cast<int>(row.size()), dims.cols);
  }
  for (const auto& [i, mat] : hw.psi) {
    EXPECT_EQ(std::gcd(i, d.m), 1);
    EXPECT_EQ(static_cast<int>(mat.size()), block_dims(d, 23, i).psi_rows);
  }
}

TEST(HasseWitt, ValidExtensionConditions) {
  const CyclicDatum d{5, {1, 1, 1, 2}};
  const Signature sig = signature(d);
  for (int i = 1; i < 5; ++i) {
    const int pi_star = static_cast<int>(pos_mod(-13 * i, 5));
    const int i_star = static_cast<int>(pos_mod(-i, 5));
    const bool want = sig(static_cast<std::size_t>(pi_star)) == 0 ||
                      sig(static_cast<std::size_t>(i_star)) == sig(static_cast<std::size_t>(i)) + sig(static_cast<std::size_t>(i_star));
    EXPECT_EQ(valid_extension_applicable(sig, 5, i, 13), want);
  }
}

TEST(HasseWitt, SeparationOnFirstExample) {
  const CyclicDatum d{5, {1, 1, 1, 2}};
  const auto orbits = frobenius_orbits(5, 13);
  const SeparationReport rep = monomial_separation(d, 13, orbits[0]);
  ASSERT_TRUE(rep.applicable);
  EXPECT_TRUE(rep.distinct);
  EXPECT_TRUE(rep.valuation_ok);
  EXPECT_LE(rep.max_valuation, 12);
}
