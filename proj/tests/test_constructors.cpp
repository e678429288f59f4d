#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "properties.hpp"
#include "rmaps/constructors.hpp"

using namespace rmaps;

namespace {

BigNat nat(unsigned long x) { return BigNat(x); }

// Restriction of a permutation to its last `deg` points, relabelled from 0.
Perm tail(const Perm& p, std::size_t deg) {
  const std::size_t off = p.degree() - deg;
  std::vector<Point> img(deg);
  for (std::size_t i = 0; i < deg; ++i) img[i] = static_cast<Point>(p[static_cast<Point>(off + i)] - off);
  return Perm(img);
}

std::uint64_t exponent(const PermGroup& g) {
  std::uint64_t e = 1;
  for (const Perm& x : oracle::closure(g.degree(), g.generators())) e = std::lcm(e, oracle::perm_order(x));
  return e;
}

TEST(Field, Examples) {
  const FieldCtx f5 = make_field(5, 1);
  EXPECT_EQ(f5.q(), 5u);
  const FieldCtx f9 = make_field(3, 2);
  ASSERT_EQ(f9.q(), 9u);
  for (std::uint32_t x = 1; x < 9; ++x) EXPECT_EQ(f9.pow(x, 8), 1u);
  const FieldCtx f13 = make_field(13, 1);
  std::set<std::uint32_t> squares;
  for (std::uint32_t x = 1; x < 13; ++x) squares.insert(f13.mul(x, x));
  EXPECT_EQ(squares.size(), 6u);
  for (std::uint32_t x = 1; x < 13; ++x) EXPECT_EQ(f13.is_square(x), squares.count(x) == 1);
  EXPECT_THROW(make_field(2, 1), ParameterError);
  EXPECT_THROW(make_field(9, 1), ParameterError);
  EXPECT_THROW(make_field(3, 5), ParameterError);
}

TEST(Field, AxiomsAndPrimitiveElement) {
  std::mt19937_64 rng(31);
  for (auto [p, e] : std::vector<std::pair<std::uint32_t, unsigned>>{{3, 2}, {3, 3}, {5, 2}, {7, 2}, {3, 4}, {97, 1}}) {
    const FieldCtx f = make_field(p, e);
    const std::uint32_t q = f.q();
    for (int i = 0; i < 1000; ++i) {
      const std::uint32_t x = rng() % q, y = rng() % q, z = rng() % q;
      ASSERT_EQ(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
      ASSERT_EQ(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
      ASSERT_EQ(f.add(x, f.neg(x)), 0u);
      if (x) ASSERT_EQ(f.mul(x, f.inv(x)), 1u);
    }
    std::set<std::uint32_t> powers;
    for (std::uint32_t k = 0; k + 1 < q; ++k) powers.insert(f.pow(f.primitive(), k));
    EXPECT_EQ(powers.size(), q - 1);
    EXPECT_EQ(f.modulus().size(), e + 1);
    EXPECT_EQ(f.modulus().back(), 1u);
  }
}

TEST(Pgl2, Orders) {
  EXPECT_EQ(make_pgl2(5, PglKind::pgl).order(), 120);
  EXPECT_EQ(make_pgl2(5, PglKind::pgl).degree(), 6u);
  EXPECT_EQ(make_pgl2(13, PglKind::psl).order(), 1092);
  EXPECT_EQ(make_pgl2(13, PglKind::psl).degree(), 14u);
  EXPECT_EQ(make_pgl2(9, PglKind::pgl).order(), 720);
  EXPECT_EQ(make_pgl2(9, PglKind::pgl).degree(), 10u);
  EXPECT_THROW(make_pgl2(3, PglKind::pgl), ParameterError);
}

TEST(Pgl2, PslIsNormalOfIndexTwoAndUnipotentsHaveOrderP) {
  for (std::uint32_t q : {5u, 7u, 9u, 11u, 13u, 25u, 27u}) {
    const PermGroup pgl = make_pgl2(q, PglKind::pgl), psl = make_pgl2(q, PglKind::psl);
    const unsigned long qq = q;
    EXPECT_EQ(pgl.order(), nat(qq * (qq * qq - 1)));
    EXPECT_EQ(psl.order() * 2, pgl.order());
    EXPECT_NO_THROW(as_normal_subgroup(pgl, psl.generators()));
    const FieldCtx f = make_field(static_cast<std::uint32_t>(as_prime_power(nat(q))->first.get_ui()),
                                  as_prime_power(nat(q))->second);
    const ProjectiveLine line(f);
    for (std::uint32_t b = 1; b < q; ++b) {
      const Perm u = line.mobius(1, b, 0, 1);
      EXPECT_EQ(u.order(), f.p());
      EXPECT_TRUE(psl.contains(u));
    }
  }
}

TEST(FindTriples, Examples) {
  const PermGroup pgl5 = make_pgl2(5, PglKind::pgl);
  auto s = find_triples(pgl5, 4, 6, 1);
  ASSERT_EQ(s.triples.size(), 1u);
  EXPECT_EQ(s.triples[0].chi, -5);
  s = find_triples(pgl5, 4, 5, 1);
  ASSERT_EQ(s.triples.size(), 1u);
  EXPECT_EQ(s.triples[0].chi, -3);
  s = find_triples(make_pgl2(7, PglKind::psl), 7, 3, 100);
  EXPECT_TRUE(s.triples.empty());
  EXPECT_TRUE(s.exhaustive);
  Budgets b;
  b.search_cap = 100;
  try {
    find_triples(pgl5, 4, 5, 1, b);
    ADD_FAILURE() << "budget not enforced";
  } catch (const ResourceError& e) {
    EXPECT_TRUE(e.partial());
  }
}

TEST(H1, Examples) {
  const MapTriple t = build_h1(4);
  EXPECT_EQ(t.order(), 8);
  EXPECT_EQ(t.m, 2u);
  EXPECT_EQ(t.n, 4u);
  EXPECT_EQ(t.chi, 1);
  EXPECT_EQ(build_h1(6).order(), 12);
  EXPECT_EQ(build_h1(6).chi, 1);
  EXPECT_THROW(build_h1(3), ParameterError);
  for (std::uint64_t l = 2; l <= 30; l += 2) {
    const MapTriple h = build_h1(l);
    EXPECT_TRUE((h.a * (h.b * h.c).pow(static_cast<std::int64_t>(l / 2))).is_identity());
    EXPECT_TRUE((h.a * h.b).pow(2).is_identity());
  }
}

TEST(H2, Examples) {
  MapTriple t = build_h2(3, 5);
  EXPECT_EQ(t.order(), 60);
  EXPECT_EQ(t.m, 6u);
  EXPECT_EQ(t.n, 10u);
  EXPECT_EQ(t.chi, -7);
  t = build_h2(5, 49);
  EXPECT_EQ(t.order(), 980);
  EXPECT_EQ(t.m, 10u);
  EXPECT_EQ(t.n, 98u);
  EXPECT_EQ(t.chi, -191);
  EXPECT_THROW(build_h2(3, 3), ParameterError);
  EXPECT_THROW(build_h2(3, 4), ParameterError);
}

TEST(H2, DefiningRelatorHolds) {
  for (std::uint64_t j = 3; j <= 15; j += 2)
    for (std::uint64_t k = 3; k <= 15; k += 2) {
      if (gcd_u64(j, k) != 1) continue;
      const MapTriple t = build_h2(j, k);
      const Perm r = t.b * (t.a * t.b).pow(static_cast<std::int64_t>(j)) * (t.b * t.c).pow(static_cast<std::int64_t>(k));
      EXPECT_TRUE(r.is_identity()) << j << "," << k;
      EXPECT_EQ(t.chi, -static_cast<long>(j * k - j - k));
      EXPECT_EQ(PermGroup(t.group.degree(), t.group.generators()).order(), 4 * j * k);
    }
}

TEST(H3, Examples) {
  MapTriple t = build_h3(15);
  EXPECT_EQ(t.order(), 120);
  EXPECT_EQ(t.m, 4u);
  EXPECT_EQ(t.n, 15u);
  EXPECT_EQ(t.chi, -11);
  t = build_h3(3);
  EXPECT_EQ(t.order(), 24);
  EXPECT_EQ(t.chi, 1);
  t = build_h3(9);
  EXPECT_EQ(t.order(), 72);
  EXPECT_EQ(t.chi, -5);
  EXPECT_THROW(build_h3(5), ParameterError);
  for (std::uint64_t l = 3; l <= 63; l += 6) {
    const MapTriple h = build_h3(l);
    EXPECT_TRUE((h.c * h.b * h.a * h.b * h.c * (h.a * h.b).pow(2)).is_identity());
    EXPECT_EQ(PermGroup(h.group.degree(), h.group.generators()).order(), 8 * l);
  }
}

TEST(SmallGroups, Heisenberg) {
  const PermGroup he = build_heisenberg();
  EXPECT_EQ(he.order(), 27);
  EXPECT_EQ(exponent(he), 3u);
  std::size_t center = 0;
  for (const Perm& x : oracle::closure(he.degree(), he.generators())) {
    bool central = true;
    for (const Perm& g : he.generators()) central = central && x * g == g * x;
    center += central;
  }
  EXPECT_EQ(center, 3u);
}

TEST(SmallGroups, WreathC3) {
  const PermGroup w = build_wreath_c3();
  EXPECT_EQ(w.order(), 81);
  EXPECT_EQ(exponent(w), 9u);
  std::vector<Perm> comms;
  for (const Perm& x : w.generators())
    for (const Perm& y : w.generators()) comms.push_back(commutator(x, y));
  EXPECT_EQ(normal_closure(w, comms).order(), 9);
}

TEST(ModuleExtensions, D4CarriesType64) {
  const auto t = props::e9_d4_triple();
  ASSERT_TRUE(t);
  EXPECT_EQ(t->order(), 72);
  EXPECT_EQ(t->chi, -3);
}

TEST(ModuleExtensions, D2CarriesType66) {
  const PermGroup d2 = dihedral_group(2);
  bool found = false;
  for (const ModuleExtensionSpec& s : search_module_actions(d2, 3, 2))
    if (auto t = props::first_triple(build_module_extension(d2, s), 6, 6)) {
      found = true;
      EXPECT_EQ(t->order(), 36);
      EXPECT_EQ(t->chi, -3);
    }
  EXPECT_TRUE(found);
}

TEST(ModuleExtensions, D10CarriesType630) {
  const PermGroup d10 = dihedral_group(10);
  bool found = false;
  for (const ModuleExtensionSpec& s : search_module_actions(d10, 3, 2))
    if (auto t = props::first_triple(build_module_extension(d10, s), 6, 30)) {
      found = true;
      EXPECT_EQ(t->order(), 180);
      EXPECT_EQ(t->chi, -27);
    }
  EXPECT_TRUE(found);
}

TEST(ModuleExtensions, TrivialCases) {
  const PermGroup d4 = dihedral_group(4);
  const PermGroup same = build_module_extension(d4, ModuleExtensionSpec{0, 3, {}});
  EXPECT_EQ(same.order(), 8);
  const auto acts = search_module_actions(PermGroup(1, {}), 3, 2);
  ASSERT_EQ(acts.size(), 1u);
  EXPECT_TRUE(acts[0].matrices.empty());
  // A unipotent matrix of order 3 cannot be the image of a reflection.
  const ModuleExtensionSpec bad{2, 3, {{1, 1, 0, 1}, {1, 0, 0, 1}}};
  EXPECT_THROW(build_module_extension(d4, bad), ContractError);
}

TEST(AutomorphismActions, He3D4CarriesType46) {
  const auto t = props::he3_d4_triple();
  ASSERT_TRUE(t);
  EXPECT_EQ(t->order(), 216);
  EXPECT_EQ(t->chi, -9);
  EXPECT_EQ(odd_core(t->group).order(), 27);
}

class Cells : public ::testing::Test {
protected:
  static MapTriple base(std::uint32_t q, std::uint64_t m, std::uint64_t n) {
    auto b = find_cell_base(make_pgl2(q, PglKind::pgl), make_pgl2(q, PglKind::psl), m, n);
    if (!b) throw std::runtime_error("no cell base");
    return *b;
  }
};

TEST_F(Cells, Pgl27With13073) {
  const MapTriple b = base(7, 3, 8);
  const SemidirectCell c = build_semidirect_cell(SemidirectSpec{b, make_pgl2(7, PglKind::psl), 13073});
  EXPECT_EQ(c.order, nat(336UL * 13073));
  EXPECT_EQ(c.m, 3u * 13073);
  EXPECT_EQ(c.n, 8u);
  EXPECT_EQ(c.chi, -big_pow(7, 7));
  ASSERT_TRUE(c.triple);
  EXPECT_EQ(tail(c.triple->a, 8), b.a);
  EXPECT_EQ(tail(c.triple->b, 8), b.b);
  EXPECT_EQ(tail(c.triple->c, 8), b.c);
}

TEST_F(Cells, IdentityAndSmallCell) {
  const MapTriple b = base(7, 3, 8);
  const PermGroup psl7 = make_pgl2(7, PglKind::psl);
  const SemidirectCell one = build_semidirect_cell(SemidirectSpec{b, psl7, 1});
  EXPECT_EQ(one.chi, -7);
  EXPECT_EQ(one.triple->a, b.a);

  const SemidirectCell c = build_semidirect_cell(SemidirectSpec{b, psl7, 5});
  EXPECT_EQ(c.order, 336 * 5);
  EXPECT_EQ(c.m, 15u);
  EXPECT_EQ(c.n, 8u);
  EXPECT_EQ(c.chi, euler_characteristic(nat(1680), 15, 8));
  ASSERT_TRUE(c.triple);
  const MapTriple v = verify_star_group(c.triple->group, c.triple->a, c.triple->b, c.triple->c);
  EXPECT_EQ(v.chi, c.chi);
  EXPECT_EQ(PermGroup(v.group.degree(), v.group.generators()).order(), 1680);
  const NormalSubgroupHandle o = odd_core(v.group);
  EXPECT_EQ(o.order(), 5);
  // G / C_ell is the base group again: (H_0 x C_ell).2 has order |H_0| ell 2.
  EXPECT_EQ(quotient_group(v.group, o).group.order(), 336);
}

TEST_F(Cells, Pgl25HasNoBaseOfType54) {
  // Every (2,5,4)* triple of PGL2(5) has a and b inside PSL2(5), so no b can carry the twist.
  const PermGroup pgl5 = make_pgl2(5, PglKind::pgl), psl5 = make_pgl2(5, PglKind::psl);
  for (const MapTriple& t : find_triples(pgl5, 5, 4, SIZE_MAX).triples) {
    EXPECT_TRUE(psl5.contains(t.a));
    EXPECT_TRUE(psl5.contains(t.b));
    EXPECT_FALSE(psl5.contains(t.c));
  }
  EXPECT_FALSE(find_cell_base(pgl5, psl5, 5, 4));
  EXPECT_FALSE(find_cell_base(pgl5, psl5, 4, 5));
}

TEST_F(Cells, RejectsBadParameters) {
  const MapTriple b = base(7, 3, 8);
  const PermGroup psl7 = make_pgl2(7, PglKind::psl);
  EXPECT_THROW(build_semidirect_cell(SemidirectSpec{b, psl7, 4}), ParameterError);
  EXPECT_THROW(build_semidirect_cell(SemidirectSpec{b, psl7, 7}), ParameterError);
  EXPECT_THROW(build_semidirect_cell(SemidirectSpec{b, psl7, (std::uint64_t{1} << 41) + 1}), ParameterError);
  const MapTriple wrong = *props::first_triple(make_pgl2(5, PglKind::pgl), 4, 6);
  EXPECT_THROW(build_semidirect_cell(SemidirectSpec{wrong, make_pgl2(5, PglKind::psl), 7}), ContractError);
}

TEST(Constructors, OutputsAreAcceptedAndCensused) {
  for (const props::NamedGroup& ng : props::constructor_groups()) {
    if (ng.built.empty() || ng.group.order() > 250) continue;
    const CensusResult c = classify_maps_for_group(ng.group);
    for (const MapTriple& t : ng.built) {
      const MapTriple v = verify_star_group(t.group, t.a, t.b, t.c);
      EXPECT_EQ(v.chi, t.chi) << ng.name;
      EXPECT_GE(c.count(t.m, t.n), 1u) << ng.name;
    }
  }
}

}  // namespace
