#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <random>

#include "muord/arith.hpp"
#include "muord/field.hpp"
#include "muord/linalg.hpp"
#include "muord/poly.hpp"

using namespace muord;
using boost::multiprecision::cpp_int;

namespace {

cpp_int exact_binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  cpp_int acc = 1;
  for (unsigned t = 1; t <= k; ++t) acc = acc * (n - k + t) / t;
  return acc;
}

}  // namespace

TEST(Arith, PrimesAndOrders) {
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(97));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(91));
  EXPECT_EQ(next_prime(10), 11u);
  EXPECT_EQ(next_prime(13), 17u);
  EXPECT_EQ(multiplicative_order(97, 23), 22u);
  EXPECT_EQ(multiplicative_order(13, 5), 4u);
  EXPECT_EQ(prime_factors(360), (std::vector<u64>{2, 3, 5}));
}

TEST(Arith, InverseAndPower) {
  for (u64 p : {2u, 3u, 13u, 97u, 65521u}) {
    for (u64 a = 1; a < std::min<u64>(p, 200); ++a) EXPECT_EQ(mod_mul(a, mod_inv(a, p), p), 1u);
    EXPECT_EQ(mod_pow(2, p - 1, p), p == 2 ? 0u : 1u);
  }
}

TEST(Arith, LucasMatchesExactBinomials) {
  for (u64 p : {2u, 3u, 5u, 7u, 13u, 47u}) {
    for (unsigned n = 0; n <= 120; n += 7) {
      for (unsigned k = 0; k <= n + 2; ++k) {
        const cpp_int exact = exact_binomial(n, k) % p;
        EXPECT_EQ(lucas_binomial(n, k, p), exact.convert_to<u64>()) << n << " " << k << " " << p;
      }
    }
  }
}

TEST(Arith, UniformBelowIsReproducible) {
  std::mt19937_64 a(7), b(7);
  for (int t = 0; t < 100; ++t) {
    const u64 v = uniform_below(a, 13);
    EXPECT_LT(v, 13u);
    EXPECT_EQ(v, uniform_below(b, 13));
  }
}

TEST(Field, AxiomsOnRandomElements) {
  std::mt19937_64 rng(3);
  for (auto [p, s] : std::vector<std::pair<u64, unsigned>>{{2, 1}, {2, 8}, {3, 5}, {13, 3}, {101, 2}, {7, 12}}) {
    const Field& f = Field::get(p, s);
    EXPECT_TRUE(is_irreducible(f.modulus(), p));
    for (int t = 0; t < 40; ++t) {
      const FieldElem a = random_element(f, rng), b = random_element(f, rng), c = random_element(f, rng);
      EXPECT_EQ((a + b) * c, a * c + b * c);
      EXPECT_EQ(a * (b * c), (a * b) * c);
      if (!a.is_zero()) {
        EXPECT_TRUE((a * a.inverse()).is_one());
      }
      // Frobenius is additive and multiplicative, and has order s.
      EXPECT_EQ(frobenius(a + b, 1), frobenius(a, 1) + frobenius(b, 1));
      EXPECT_EQ(frobenius(a * b, 1), frobenius(a, 1) * frobenius(b, 1));
      EXPECT_EQ(frobenius(a, 1), a.pow(p));
      EXPECT_EQ(frobenius(frobenius(a, 1), -1), a);
      EXPECT_EQ(frobenius(a, static_cast<i64>(s)), a);
      EXPECT_EQ(FieldElem::parse(f, a.to_string()), a);
    }
  }
}

TEST(Field, InterningAndGroupOrder) {
  EXPECT_EQ(&Field::get(5, 3), &Field::get(5, 3));
  std::mt19937_64 rng(1);
  const Field& f = Field::get(5, 3);
  for (int t = 0; t < 20; ++t) {
    const FieldElem a = random_element(f, rng);
    if (!a.is_zero()) {
      EXPECT_TRUE(a.pow(124).is_one());
    }
  }
}

TEST(Poly, ArithmeticAndEvaluation) {
  const u64 p = 7;
  const SparsePoly x = SparsePoly::variable(3, p, 0), y = SparsePoly::variable(3, p, 1), z = SparsePoly::variable(3, p, 2);
  const SparsePoly a = x + y.scaled(2) - z, b = x * y + z * z;
  const SparsePoly prod = a * b;
  EXPECT_EQ(prod.homogeneous_degree(), 3);
  EXPECT_EQ(poly_pow(x + y, 7), poly_pow(x, 7) + poly_pow(y, 7));
  std::mt19937_64 rng(5);
  const Field& f = Field::get(p, 4);
  for (int t = 0; t < 20; ++t) {
    std::vector<FieldElem> pt{random_element(f, rng), random_element(f, rng), random_element(f, rng)};
    EXPECT_EQ(poly_eval(prod, pt), poly_eval(a, pt) * poly_eval(b, pt));
  }
  Exponents e{};
  e[0] = 1;
  e[1] = 2;
  EXPECT_EQ(prod.coefficient(e), 2u);
  EXPECT_EQ(max_monomial(prod).exp[0], 2);
  EXPECT_THROW(max_monomial(SparsePoly(3, p)), std::domain_error);
  EXPECT_EQ(SparsePoly(3, p).homogeneous_degree(), -1);
  EXPECT_EQ((x + SparsePoly::constant(3, p, 1)).homogeneous_degree(), -2);
}

TEST(Linalg, RankNullityAndSubspaces) {
  std::mt19937_64 rng(11);
  const Field& f = Field::get(5, 2);
  for (int t = 0; t < 30; ++t) {
    const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (rng() % 3) m.at(i, j) = random_element(f, rng);
    const Matrix k = kernel_basis(m);
    EXPECT_EQ(rank(m) + k.rows(), c);
    for (std::size_t i = 0; i < k.rows(); ++i) {
      for (const FieldElem& v : m * k.row(i)) EXPECT_TRUE(v.is_zero());
    }
    const Matrix rs = row_space(m);
    EXPECT_TRUE(subspace_contains(rs, row_space(rref(m))));
    EXPECT_EQ(subspace_sum(rs, zero_space(f, c)), rs);
    EXPECT_EQ(subspace_intersection(rs, full_space(f, c)), rs);
  }
}

TEST(Linalg, SemilinearComposition) {
  std::mt19937_64 rng(2);
  const Field& f = Field::get(3, 5);
  for (int t = 0; t < 20; ++t) {
    Matrix a(f, 3, 3), b(f, 3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        a.at(i, j) = random_element(f, rng);
        b.at(i, j) = random_element(f, rng);
      }
    const SemilinearMap A{a, 1}, B{b, -2};
    const Vec v{random_element(f, rng), random_element(f, rng), random_element(f, rng)};
    EXPECT_EQ(compose(A, B).apply(v), A.apply(B.apply(v)));
    const Matrix img = image_of_subspace(A, full_space(f, 3));
    EXPECT_EQ(img.rows(), rank(a));
    const Matrix pre = preimage_of_subspace(A, zero_space(f, 3));
    EXPECT_EQ(pre.rows(), 3 - rank(a));
  }
}
