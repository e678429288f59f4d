#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "rmaps/algebra.hpp"
#include "rmaps/errors.hpp"

using namespace rmaps;

namespace {

IntMatrix mat(std::size_t r, std::size_t c, std::initializer_list<long> xs) {
  std::vector<BigInt> e;
  for (long x : xs) e.emplace_back(x);
  return IntMatrix(r, c, std::move(e));
}

std::vector<BigInt> big(std::initializer_list<long> xs) {
  std::vector<BigInt> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

TEST(PPart, Examples) {
  EXPECT_EQ(p_part(std::uint64_t{720}, 2), 16u);
  EXPECT_EQ(p_part(std::uint64_t{720}, 3), 9u);
  EXPECT_EQ(p_part(std::uint64_t{7}, 3), 1u);
  EXPECT_EQ(p_part(big_pow(3, 40) * 14, 3), big_pow(3, 40));
  EXPECT_EQ(valuation(BigInt(720), 2), 4u);
}

TEST(PPart, RejectsCompositeP) { EXPECT_THROW(p_part(std::uint64_t{12}, 4), ParameterError); }

TEST(PPart, MultiplicativeOnRandomPairs) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t a = 1 + rng() % 100000, b = 1 + rng() % 100000;
    for (std::uint64_t p : {2, 3, 5, 7}) {
      std::uint64_t ref = 1, x = a * b;
      while (x % p == 0) {
        x /= p;
        ref *= p;
      }
      ASSERT_EQ(p_part(a * b, p), ref);
      ASSERT_EQ(p_part(a * b, p), p_part(a, p) * p_part(b, p));
    }
  }
}

TEST(PrimePowers, Examples) {
  auto pp = as_prime_power(BigNat(49));
  ASSERT_TRUE(pp);
  EXPECT_EQ(pp->first, 7);
  EXPECT_EQ(pp->second, 2u);
  EXPECT_FALSE(as_prime_power(BigNat(60)));
  pp = as_prime_power(BigNat(2187));
  ASSERT_TRUE(pp);
  EXPECT_EQ(pp->first, 3);
  EXPECT_EQ(pp->second, 7u);
  EXPECT_THROW(as_prime_power(BigNat(1)), ParameterError);
}

TEST(PrimePowers, LargePowersAndNearMisses) {
  std::mt19937_64 rng(2);
  const std::uint64_t primes[] = {3, 5, 7, 11, 13, 101, 1009};
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t p = primes[rng() % 7];
    const unsigned e = 1 + static_cast<unsigned>(rng() % 60);
    const BigInt q = big_pow(p, e);
    auto pp = as_prime_power(q);
    ASSERT_TRUE(pp);
    EXPECT_EQ(pp->first, p);
    EXPECT_EQ(pp->second, e);
    EXPECT_FALSE(as_prime_power(q * 2));
    EXPECT_FALSE(as_prime_power(q * (p == 3 ? 5 : 3)));
  }
  EXPECT_EQ(big_pow(7, 200), big_pow(BigInt(49), 100));
}

TEST(Epsilon, Examples) {
  EXPECT_EQ(epsilon(PrimePower::of(3, 2), 3), 2u);
  EXPECT_EQ(epsilon(PrimePower::of(3, 2), 7), 3u);
  EXPECT_EQ(epsilon(PrimePower::of(13, 1), 7), 6u);
  EXPECT_EQ(epsilon(PrimePower::of(13, 1), 13), 2u);
  EXPECT_THROW(epsilon(PrimePower::of(3, 1), 5), ParameterError);
  EXPECT_THROW(epsilon(PrimePower::of(2, 3), 3), ParameterError);
}

TEST(Factorize, AgreesWithTrialDivision) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t n = 2 + rng() % 1000000000;
    BigInt back = 1;
    BigInt prev = 1;
    for (const auto& [p, e] : factorize(BigInt(static_cast<unsigned long>(n)))) {
      ASSERT_TRUE(oracle::trial_prime(p.get_ui()));
      ASSERT_GT(p, prev);
      prev = p;
      back *= big_pow(p, e);
    }
    ASSERT_EQ(back, n);
  }
}

TEST(Factorize, LargeSemiprime) {
  const BigInt p("1000000007"), q("998244353");
  auto f = factorize(p * q * q);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0].first, q);
  EXPECT_EQ(f[0].second, 2u);
  EXPECT_EQ(f[1].first, p);
}

TEST(Divisors, AgreeWithBruteForce) {
  for (std::uint64_t n = 1; n <= 3000; ++n) {
    std::vector<BigInt> ref;
    for (std::uint64_t d = 1; d <= n; ++d)
      if (n % d == 0) ref.emplace_back(static_cast<unsigned long>(d));
    ASSERT_EQ(divisors(BigInt(static_cast<unsigned long>(n))), ref) << n;
  }
}

TEST(Snf, Examples) {
  SnfResult s = smith_normal_form(mat(2, 2, {2, 4, 6, 8}));
  EXPECT_EQ(s.invariant_factors, big({2, 4}));
  EXPECT_EQ(s.free_rank, 0u);

  s = smith_normal_form(IntMatrix(2, 3));
  EXPECT_TRUE(s.invariant_factors.empty());
  EXPECT_EQ(s.free_rank, 3u);

  s = smith_normal_form(IntMatrix::identity(3));
  EXPECT_EQ(s.invariant_factors, big({1, 1, 1}));
  EXPECT_EQ(s.free_rank, 0u);
  EXPECT_TRUE(s.torsion().empty());

  s = smith_normal_form(IntMatrix());
  EXPECT_EQ(s.rank(), 0u);
}

TEST(Snf, SparseMatchesDense) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 300; ++i) {
    const std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
    std::vector<BigInt> e;
    for (std::size_t k = 0; k < r * c; ++k) e.emplace_back(rng() % 3 ? 0L : static_cast<long>(rng() % 9) - 4);
    const IntMatrix m(r, c, e);
    const SnfResult d = smith_normal_form(m), s = smith_normal_form(SparseIntMatrix::from_dense(m));
    ASSERT_EQ(d.invariant_factors, s.invariant_factors);
    ASSERT_EQ(d.free_rank, s.free_rank);
    ASSERT_EQ(mod_p_rank(m, 3), mod_p_rank(SparseIntMatrix::from_dense(m), 3));
  }
}

TEST(ModPRank, Examples) {
  const IntMatrix m = mat(2, 2, {2, 4, 6, 8});
  EXPECT_EQ(mod_p_rank(m, 2), 0u);
  EXPECT_EQ(mod_p_rank(m, 3), 2u);
  for (std::uint64_t p : {2, 5, 101}) EXPECT_EQ(mod_p_rank(IntMatrix::identity(6), p), 6u);
}

TEST(IntMatrixParse, ReadsAndRejects) {
  const IntMatrix m = IntMatrix::parse("2 3\n1 2 3\n-4 5 60000000000000000000\n");
  EXPECT_EQ(m.rows(), 2u);
  EXPECT_EQ(m.at(1, 2), BigInt("60000000000000000000"));
  EXPECT_THROW(IntMatrix::parse("2 2\n1 2 3"), ParseError);
  EXPECT_THROW(IntMatrix::parse("1 1\n1 2"), ParseError);
  EXPECT_THROW(IntMatrix::parse("1 1\nx"), ParseError);
  EXPECT_THROW(IntMatrix(2, 2, big({1, 2, 3})), ParameterError);
}

}  // namespace
