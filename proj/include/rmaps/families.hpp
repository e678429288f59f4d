#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rmaps/algebra.hpp"
#include "rmaps/config.hpp"

namespace rmaps {

enum class RowId { A1, A2, A3, A4, B1, B2, B3, B4, B5, B6, B7, C1, C2, C3, C4, C5, C6, C7 };

std::string to_string(RowId id);
// Throws ParameterError for an unknown name.
RowId parse_row_id(const std::string& name);
std::vector<RowId> all_rows();

// Parameter names: O, N (group orders), l, p, r, s, i, j, k, alpha, beta.
struct FamilyRow {
  RowId id = RowId::A1;
  std::map<std::string, BigInt> params;
};

struct RowEvaluation {
  BigNat minus_chi;
  BigNat order;
  BigNat m, n;
  BigNat r;
};

// Evaluates the row's closed form for -chi and checks it against the Euler formula for the
// implied order and type; a disagreement raises InternalError.
RowEvaluation row_chi(const FamilyRow& row);

// Smallest documented instance of every row (two for C1).
std::vector<FamilyRow> minimal_instances();

struct TableCheck {
  FamilyRow row;
  RowEvaluation value;
  bool prime_power = false;
  bool pass = false;
  std::string error;
};

std::vector<TableCheck> verify_tables();

// ------------------------------------------------------------ searches

struct DihedralHit {
  RowId row = RowId::C1;
  unsigned i = 0;
  BigInt ell, m, n;
  // -chi / |N| as a fraction, 3^(i-1).
  BigInt chi_num, chi_den;
  bool needs_nine = false;
};

std::vector<DihedralHit> search_c1_c2(unsigned max_i);

struct ProductHit {
  BigInt j, k;
  BigInt m, n;
};

// Factorizations r^d + 1 = (j - 1)(k - 1) with j <= k odd, coprime and at least 3.
std::vector<ProductHit> search_c3(std::uint64_t r, unsigned d);

struct Window {
  std::uint64_t lo = 0, hi = 0;
};

struct C4Hit {
  unsigned i = 0, alpha = 0, beta = 0;
  BigInt j, k;
  BigInt m, n;
  bool i_plus_beta_odd = false;
  // Smallest admissible |N|: r^(alpha+1) when alpha >= 1, otherwise 1.
  BigNat min_n;
};

std::vector<C4Hit> search_c4(std::uint64_t r, Window i, Window alpha, Window beta, const Budgets& budgets = {});

struct C67Hit {
  RowId row = RowId::C6;
  unsigned alpha = 0, beta = 0, delta = 0, gamma = 0;
  BigInt ell;
};

std::vector<C67Hit> search_c6_c7(std::uint64_t r, Window alpha, Window beta, Window delta);

struct CongruenceCheck {
  RowId row = RowId::B3;
  Window window;
  std::uint64_t modulus = 1;
  std::vector<std::uint64_t> derived, stated;
  bool pass = false;
};

// Rows B3, B4, B5, B6, B7 and C7; the window must span at least 100 values and four periods.
CongruenceCheck verify_congruence_row(RowId row, Window window);
// Default window for a row: [1, max(200, 4 * modulus)].
Window default_congruence_window(RowId row);

struct PglHit {
  std::uint64_t q = 0;
  std::uint64_t m = 0, n = 0;
  BigInt r;
  unsigned d = 0;
  std::string shape;
};

std::vector<PglHit> scan_pgl_cases(std::uint64_t q_bound);

// ------------------------------------------------------------ corollary table

struct CorollaryRow {
  std::string family;
  std::string group;
  std::uint64_t m = 0, n = 0;
  BigNat minus_chi;
  std::string census;
  std::string evidence;  // "constructed" or "numerology"
  BigNat order;
  bool pass = false;
  std::string detail;
};

// Rows whose group order exceeds construct_cap are checked by numerology only.
std::vector<CorollaryRow> verify_corollary_table(const Budgets& budgets = {}, std::uint64_t construct_cap = 3000);

}  // namespace rmaps
