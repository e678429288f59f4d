#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

#include "oracle.hpp"
#include "rmaps/errors.hpp"
#include "rmaps/families.hpp"

using namespace rmaps;

namespace {

BigInt big(std::uint64_t v) { return BigInt(static_cast<unsigned long>(v)); }

// -chi from the Euler formula, |G| (mn - 2m - 2n) / (4mn).
mpq_class euler_minus_chi(const BigInt& order, const BigInt& m, const BigInt& n) {
  mpq_class q(order * (m * n - 2 * m - 2 * n), 4 * m * n);
  q.canonicalize();
  return q;
}

TEST(Tables, MinimalInstancesArePrimePowers) {
  const auto checks = verify_tables();
  ASSERT_EQ(checks.size(), minimal_instances().size());
  std::map<std::string, BigInt> first;
  for (const TableCheck& c : checks) {
    EXPECT_TRUE(c.pass) << to_string(c.row.id) << " " << c.error;
    EXPECT_TRUE(c.error.empty());
    first.emplace(to_string(c.row.id), c.value.minus_chi);
  }
  EXPECT_EQ(first["A1"], 3);
  EXPECT_EQ(first["A2"], big_pow(3ul, 7));
  EXPECT_EQ(first["A3"], 49);
  EXPECT_EQ(first["A4"], 13);
  EXPECT_EQ(first["B1"], 5);
  EXPECT_EQ(first["B2"], big_pow(5ul, 5));
  EXPECT_EQ(first["B3"], 7);
  EXPECT_EQ(first["B6"], 3);
  EXPECT_EQ(first["C3"], 7);
}

TEST(Tables, RowNames) {
  EXPECT_EQ(all_rows().size(), 18u);
  for (RowId id : all_rows()) EXPECT_EQ(parse_row_id(to_string(id)), id);
  EXPECT_THROW(parse_row_id("D1"), ParameterError);
}

TEST(Tables, RejectsInvalidParameters) {
  EXPECT_THROW(row_chi(FamilyRow{RowId::A1, {{"O", 5}}}), ParameterError);
  EXPECT_THROW(row_chi(FamilyRow{RowId::C3, {{"r", 5}, {"j", 3}, {"k", 5}}}), ParameterError);
  EXPECT_THROW(row_chi(FamilyRow{RowId::C3, {{"r", 7}, {"j", 3}, {"k", 9}}}), ParameterError);
  EXPECT_THROW(row_chi(FamilyRow{RowId::C4, {{"r", 3}, {"j", 1}, {"k", 1}, {"alpha", 1}, {"beta", 1}, {"N", 3}}}),
               ParameterError);
  EXPECT_THROW(row_chi(FamilyRow{RowId::B3, {{"N", 7}, {"l", 7}}}), ParameterError);
  EXPECT_THROW(row_chi(FamilyRow{RowId::B5, {{"p", 13}, {"N", 3}, {"s", 1}}}), ParameterError);
  EXPECT_THROW(row_chi(FamilyRow{RowId::C6, {{"l", 5}, {"alpha", 1}, {"beta", 0}, {"N", 9}}}), ParameterError);
  EXPECT_THROW(row_chi(FamilyRow{RowId::C1, {{"N", 9}}}), ParameterError);
}

// Random valid rows: the closed form, the group order and the Euler formula must agree.
TEST(Tables, ClosedFormsMatchEulerOnRandomInstances) {
  std::mt19937_64 rng(2024);
  auto pick = [&](std::uint64_t lo, std::uint64_t hi) { return lo + rng() % (hi - lo + 1); };
  auto coprime_to = [&](std::uint64_t c, std::uint64_t avoid) {
    for (;;) {
      const std::uint64_t l = pick(1, 2000);
      if (std::gcd(l, c) == 1 && l % avoid != 0) return l;
    }
  };
  int cases = 0;
  for (int it = 0; it < 1400; ++it) {
    FamilyRow row;
    BigInt order, m, n;
    switch (it % 14) {
      case 0: {
        const unsigned k = static_cast<unsigned>(pick(0, 3));
        const long q[] = {5, 5, 13, 13}, r[] = {3, 3, 7, 13}, mm[] = {5, 3, 3, 3}, nn[] = {5, 15, 13, 7};
        const BigInt o = big_pow(big(r[k]), pick(0, 8));
        row = {static_cast<RowId>(k), {{"O", o}}};
        order = BigInt(q[k] * (q[k] * q[k] - 1) / 2) * o, m = mm[k], n = nn[k];
        break;
      }
      case 1: {
        const bool b1 = rng() % 2;
        const BigInt o = big_pow(5ul, pick(0, 8));
        row = {b1 ? RowId::B1 : RowId::B2, {{"O", o}}};
        order = 120 * o, m = b1 ? 4 : 20, n = b1 ? 6 : 30;
        break;
      }
      case 2:
      case 3: {
        const bool b3 = it % 14 == 2;
        const unsigned long r = b3 ? 7 : 3;
        const std::uint64_t e = pick(0, 6), s = pick(0, e), l = coprime_to(b3 ? 168 : 360, r);
        const BigInt rs = big_pow(r, s), nn = big_pow(r, e);
        row = {b3 ? RowId::B3 : RowId::B4, {{"N", nn}, {"s", big(s)}, {"l", big(l)}}};
        order = BigInt(b3 ? 336 : 720) * l * nn, m = BigInt(b3 ? 3 : 5) * l * rs, n = 8 * rs;
        break;
      }
      case 4:
      case 5:
      case 6: {
        // (p, r): (p-1)/2 = r^t for B5, (p+1)/2 = r^t for B6 and B7.
        const int which = it % 14 - 4;
        const std::uint64_t p = which == 0 ? (rng() % 2 ? 7 : 11) : (rng() % 2 ? 5 : 17);
        const unsigned long r = p == 11 ? 5 : 3;
        const std::uint64_t l = coprime_to(p * (p * p - 1) / 2, r);
        std::uint64_t s = 0, e = 0;
        if (which == 0) s = pick(1, 4), e = s + pick(0, 3);
        if (which == 2) e = pick(1, 5), s = pick(0, e);
        const BigInt rs = big_pow(r, s), nn = big_pow(r, e);
        const RowId id = which == 0 ? RowId::B5 : which == 1 ? RowId::B6 : RowId::B7;
        row = {id, {{"p", big(p)}, {"l", big(l)}, {"N", nn}, {"s", big(s)}}};
        order = big(p * (p * p - 1)) * l * nn, m = big(l * p) * rs, n = (which == 0 ? big(p + 1) : big(p - 1)) * rs;
        break;
      }
      case 7:
      case 8: {
        const bool c1 = it % 14 == 7;
        const std::uint64_t i = pick(0, 10);
        const BigInt nn = big_pow(3ul, pick(2, 8)), t = big_pow(3ul, i);
        row = {c1 ? RowId::C1 : RowId::C2, {{"i", big(i)}, {"N", nn}}};
        const BigInt ell = c1 ? BigInt(3 + t) : BigInt(1 + t);
        order = 2 * ell * nn, m = 6, n = c1 ? ell : BigInt(3 * ell);
        break;
      }
      case 9:
      case 10: {
        const std::uint64_t rs[] = {3, 7, 11, 19, 23};
        const unsigned long r = rs[rng() % 5];
        std::uint64_t j, k;
        do {
          j = 2 * pick(0, 40) + 1, k = 2 * pick(0, 40) + 1;
        } while (std::gcd(j, k) != 1);
        const bool c3 = it % 14 == 9;
        const std::uint64_t alpha = c3 ? 0 : pick(1, 3), beta = c3 ? 0 : pick(0, alpha);
        const BigInt nn = big_pow(r, (c3 ? 0 : alpha + 1) + pick(0, 3));
        row = {c3 ? RowId::C3 : RowId::C4, {{"r", big(r)}, {"j", big(j)}, {"k", big(k)}, {"N", nn}}};
        if (!c3) row.params["alpha"] = big(alpha), row.params["beta"] = big(beta);
        order = 4 * big(j * k) * nn, m = 2 * j * big_pow(r, alpha), n = 2 * k * big_pow(r, beta);
        break;
      }
      default: {
        const int which = it % 14 - 11;
        const unsigned long r = which == 1 ? 3 : (rng() % 2 ? 5 : 11);
        const std::uint64_t ell = 6 * pick(1, 300) + 3;
        const std::uint64_t alpha = which == 0 ? 0 : pick(1, 3), beta = which == 0 ? 0 : pick(0, alpha);
        const BigInt nn = big_pow(r, (which == 0 ? 0 : alpha + 1) + pick(0, 3));
        const RowId id = which == 0 ? RowId::C5 : which == 1 ? RowId::C6 : RowId::C7;
        row = {id, {{"r", big(r)}, {"l", big(ell)}, {"N", nn}}};
        if (which) row.params["alpha"] = big(alpha), row.params["beta"] = big(beta);
        order = 8 * big(ell) * nn;
        m = which == 0 ? BigInt(4) : BigInt(4 * big_pow(r, alpha));
        n = big(ell) * big_pow(r, beta);
        break;
      }
    }
    const RowEvaluation ev = row_chi(row);
    ASSERT_EQ(ev.order, order) << to_string(row.id);
    ASSERT_EQ(ev.m, m) << to_string(row.id);
    ASSERT_EQ(ev.n, n) << to_string(row.id);
    ASSERT_EQ(mpq_class(ev.minus_chi), euler_minus_chi(order, m, n)) << to_string(row.id);
    ++cases;
  }
  EXPECT_GE(cases, 1000);
}

// Independent membership test: ell = (base^e + add) / div integral and coprime to c.
bool oracle_hit(std::uint64_t base, std::uint64_t e, std::uint64_t add, std::uint64_t div, std::uint64_t c) {
  const std::uint64_t mod = div * c;
  const std::uint64_t x = (oracle::pow_mod(base, e, mod) + add) % mod;
  if (x % div != 0) return false;
  return std::gcd(x / div, c) == 1;
}

std::vector<std::uint64_t> oracle_set(RowId row, Window w) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t v = w.lo; v <= w.hi; ++v) {
    bool hit = false;
    switch (row) {
      case RowId::B3:
        hit = v >= 1 && oracle_hit(7, v - 1, 8, 9, 42);
        break;
      case RowId::B4:
        hit = oracle_hit(3, v, 8, 55, 30);
        break;
      case RowId::B5:
        hit = oracle_hit(3, v, 8, 77, 42);
        break;
      case RowId::B6:
        hit = oracle_hit(3, v, 4, 5, 30);
        break;
      case RowId::B7:
        hit = oracle_hit(3, v, 4, 25, 30);
        break;
      case RowId::C7: {
        const std::uint64_t x = (oracle::pow_mod(5, v, 54) + 4) % 54;
        hit = x % 9 == 0 && (x / 9) % 6 == 3;
        break;
      }
      default:
        break;
    }
    if (hit) out.push_back(v);
  }
  return out;
}

TEST(Congruence, DerivedSetsMatchOracle) {
  for (RowId row : {RowId::B3, RowId::B4, RowId::B5, RowId::B6, RowId::B7, RowId::C7}) {
    const Window w = default_congruence_window(row);
    const CongruenceCheck c = verify_congruence_row(row, w);
    EXPECT_EQ(c.derived, oracle_set(row, w)) << to_string(row);
    EXPECT_FALSE(c.derived.empty());
  }
}

TEST(Congruence, StatedClassesHoldExceptB6) {
  for (RowId row : {RowId::B3, RowId::B4, RowId::B5, RowId::B7, RowId::C7})
    EXPECT_TRUE(verify_congruence_row(row, default_congruence_window(row)).pass) << to_string(row);
}

TEST(Congruence, B6StatedClassDisagrees) {
  const CongruenceCheck c = verify_congruence_row(RowId::B6, default_congruence_window(RowId::B6));
  EXPECT_FALSE(c.pass);
  std::vector<std::uint64_t> expect;
  for (std::uint64_t j = c.window.lo; j <= c.window.hi; ++j)
    if (j % 4 == 0 && j % 20 != 16) expect.push_back(j);
  EXPECT_EQ(c.derived, expect);
}

TEST(Congruence, ShiftedWindowsAndRejects) {
  const CongruenceCheck c = verify_congruence_row(RowId::B4, Window{1000, 1199});
  EXPECT_TRUE(c.pass);
  EXPECT_EQ(c.derived, oracle_set(RowId::B4, Window{1000, 1199}));
  EXPECT_THROW(verify_congruence_row(RowId::B4, Window{1, 50}), ParameterError);
  EXPECT_THROW(verify_congruence_row(RowId::B5, Window{1, 500}), ParameterError);
  EXPECT_THROW(verify_congruence_row(RowId::C3, Window{1, 500}), ParameterError);
}

TEST(Searches, DihedralRows) {
  const auto hits = search_c1_c2(6);
  ASSERT_EQ(hits.size(), 14u);
  for (const DihedralHit& h : hits) {
    const BigInt t = big_pow(3ul, h.i);
    EXPECT_EQ(h.ell, h.row == RowId::C1 ? BigInt(3 + t) : BigInt(1 + t));
    mpq_class f(h.chi_num, h.chi_den);
    EXPECT_EQ(f, mpq_class(t) / 3);
    EXPECT_EQ(h.needs_nine, h.row == RowId::C2 || h.i == 0);
    // 2 ell |N| vertices and faces give -chi = |N| 3^(i-1).
    const BigInt nn = h.needs_nine ? 9 : 3;
    EXPECT_EQ(euler_minus_chi(2 * h.ell * nn, h.m, h.n), f * nn);
  }
}

TEST(Searches, C3Factorizations) {
  const auto hits = search_c3(7, 1);
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(hits[0].j, 3);
  EXPECT_EQ(hits[0].k, 5);
  EXPECT_TRUE(search_c3(3, 1).empty());
  EXPECT_TRUE(search_c3(3, 3).empty());
  EXPECT_THROW(search_c3(5, 1), ParameterError);
  EXPECT_THROW(search_c3(7, 2), ParameterError);
  for (std::uint64_t r : {3u, 7u, 11u, 19u, 23u, 31u})
    for (unsigned d = 1; d <= 9; d += 2)
      for (const ProductHit& h : search_c3(r, d)) {
        EXPECT_EQ((h.j - 1) * (h.k - 1), big_pow(big(r), d) + 1);
        EXPECT_EQ(euler_minus_chi(4 * h.j * h.k, h.m, h.n), mpq_class(big_pow(big(r), d)));
      }
}

TEST(Searches, C4Example) {
  const auto hits = search_c4(11, Window{9, 9}, Window{1, 3}, Window{0, 3});
  bool found = false;
  for (const C4Hit& h : hits) {
    if (h.alpha == 1 && h.beta == 0 && h.j == 5) {
      found = true;
      EXPECT_EQ(h.k, 43665699);
      EXPECT_TRUE(h.i_plus_beta_odd);
      EXPECT_EQ(h.min_n, 121);
    }
    // -chi = |N| r^(i - alpha) at |N| = r^(alpha + 1).
    const BigInt nn = big_pow(11ul, h.alpha + 1);
    EXPECT_EQ(euler_minus_chi(4 * h.j * h.k * nn, h.m, h.n), mpq_class(big_pow(11ul, h.i + 1)));
  }
  EXPECT_TRUE(found);
  EXPECT_THROW(search_c4(13, Window{1, 2}, Window{0, 1}, Window{0, 1}), ParameterError);
}

TEST(Searches, C7DeltasMatchTheCongruenceRow) {
  std::set<std::uint64_t> deltas;
  for (const C67Hit& h : search_c6_c7(5, Window{1, 1}, Window{1, 1}, Window{1, 72})) {
    EXPECT_EQ(h.row, RowId::C7);
    deltas.insert(h.delta);
  }
  std::set<std::uint64_t> expect;
  for (std::uint64_t v : oracle_set(RowId::C7, Window{1, 72})) expect.insert(v);
  EXPECT_EQ(deltas, expect);
  EXPECT_TRUE(deltas.count(13));
}

TEST(Searches, C6SmallestCases) {
  const auto hits = search_c6_c7(3, Window{0, 2}, Window{0, 2}, Window{0, 12});
  ASSERT_FALSE(hits.empty());
  for (const C67Hit& h : hits) {
    EXPECT_EQ(h.row, RowId::C6);
    EXPECT_EQ(h.ell % 6, 3);
  }
  EXPECT_EQ(hits.front().ell, 3);
  EXPECT_TRUE(search_c6_c7(7, Window{0, 2}, Window{0, 2}, Window{0, 12}).empty());
}

TEST(Searches, PglScan) {
  for (std::uint64_t bound : {121u, 1000u}) {
    const auto hits = scan_pgl_cases(bound);
    ASSERT_EQ(hits.size(), 3u);
    for (const PglHit& h : hits) {
      const mpq_class v = oracle::euler_half_form(h.q * (h.q * h.q - 1), h.m, h.n);
      ASSERT_EQ(v.get_den(), 1);
      EXPECT_EQ(v.get_num(), big_pow(h.r, h.d));
      EXPECT_TRUE(oracle::trial_prime(to_u64(h.r)));
    }
    EXPECT_EQ(hits[0].q, 5u);
    EXPECT_EQ(hits[2].q, 7u);
    EXPECT_EQ(hits[2].m, 3u);
    EXPECT_EQ(hits[2].n, 8u);
  }
  EXPECT_THROW(scan_pgl_cases(3), ParameterError);
}

TEST(Corollary, TableRowsPass) {
  const auto rows = verify_corollary_table();
  int constructed = 0;
  for (const CorollaryRow& r : rows) {
    EXPECT_TRUE(r.pass) << r.family << " " << r.group << ": " << r.detail;
    if (r.evidence == "constructed") ++constructed;
  }
  EXPECT_GE(constructed, 12);
}

TEST(Corollary, SmallCapFallsBackToNumerology) {
  const auto rows = verify_corollary_table({}, 100);
  for (const CorollaryRow& r : rows) {
    if (r.order > 100) EXPECT_EQ(r.evidence, "numerology");
    EXPECT_TRUE(r.pass) << r.group;
  }
}

}  // namespace
