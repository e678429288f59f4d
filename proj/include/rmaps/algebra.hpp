#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace rmaps {

using BigInt = mpz_class;
// Non-negative by contract; same carrier as BigInt.
using BigNat = mpz_class;

BigInt big_pow(const BigInt& base, unsigned long exp);
BigInt big_pow(unsigned long base, unsigned long exp);
std::string to_string(const BigInt& v);
BigInt parse_bigint(const std::string& text);
// Converts to uint64, throwing ResourceError when the value does not fit.
std::uint64_t to_u64(const BigInt& v);

bool is_prime(std::uint64_t n);
bool is_prime(const BigInt& n);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
// lcm, throwing ResourceError on overflow.
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);

// Distinct prime divisors in increasing order (trial division).
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);
std::vector<std::uint64_t> prime_divisors(const BigInt& n);

// Prime factorization with multiplicities, primes increasing (Pollard-Brent rho beyond trial division).
std::vector<std::pair<BigInt, unsigned>> factorize(const BigInt& n);
// All positive divisors in increasing order.
std::vector<BigInt> divisors(const BigInt& n);

std::uint64_t p_part(std::uint64_t n, std::uint64_t p);
BigInt p_part(const BigInt& n, std::uint64_t p);
// Exponent of p in n.
unsigned valuation(const BigInt& n, std::uint64_t p);

struct PrimePower {
  std::uint64_t p = 0;
  unsigned e = 0;
  BigNat q;

  static PrimePower of(std::uint64_t p, unsigned e);
  static PrimePower from_value(const BigNat& q);
};

std::optional<std::pair<BigInt, unsigned>> as_prime_power(const BigNat& n);

std::uint64_t epsilon(const PrimePower& q, std::uint64_t r);

class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<BigInt> entries);
  static IntMatrix identity(std::size_t n);
  // "rows cols" header followed by rows of decimal integers.
  static IntMatrix parse(const std::string& text);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const BigInt& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  BigInt& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const std::vector<BigInt>& entries() const { return entries_; }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> entries_;
};

// Row-sparse integer matrix; the relation matrices of kernel presentations are built this way.
struct SparseIntMatrix {
  using Row = std::vector<std::pair<std::uint32_t, std::int64_t>>;
  std::size_t cols = 0;
  std::vector<Row> rows;

  static SparseIntMatrix from_dense(const IntMatrix& m);
  // Sorts each row by column, merges duplicates and drops zeros.
  void normalize();
};

struct SnfResult {
  std::vector<BigInt> invariant_factors;
  std::size_t free_rank = 0;

  std::size_t rank() const { return invariant_factors.size(); }
  // Factors different from 1.
  std::vector<BigInt> torsion() const;
};

SnfResult smith_normal_form(const IntMatrix& m);
SnfResult smith_normal_form(const SparseIntMatrix& m);

std::size_t mod_p_rank(const IntMatrix& m, std::uint64_t p);
std::size_t mod_p_rank(const SparseIntMatrix& m, std::uint64_t p);

}  // namespace rmaps
