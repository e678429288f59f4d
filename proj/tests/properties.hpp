#pragma once

// Randomized property suites shared by the gtest runner and the acceptance binary.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "rmaps/algebra.hpp"
#include "rmaps/constructors.hpp"
#include "rmaps/mapcore.hpp"
#include "rmaps/permgroup.hpp"

namespace props {

using namespace rmaps;

struct PropertyResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
  bool ok(std::size_t min_cases = 1000) const { return failures == 0 && cases >= min_cases; }
};

inline const Perm& random_element(const PermGroup& g, std::mt19937_64& rng) {
  const ElementTable& t = g.elements();
  return t[static_cast<std::uint32_t>(rng() % t.size())];
}

inline std::optional<MapTriple> first_triple(const PermGroup& g, std::uint64_t m, std::uint64_t n) {
  auto s = find_triples(g, m, n, 1);
  if (s.triples.empty()) return std::nullopt;
  return s.triples.front();
}

// E9 x| D4 with a (2,6,4)* triple, from the first module action that carries one.
inline std::optional<MapTriple> e9_d4_triple() {
  const PermGroup d4 = dihedral_group(4);
  for (const ModuleExtensionSpec& s : search_module_actions(d4, 3, 2))
    if (auto t = first_triple(build_module_extension(d4, s), 6, 4)) return t;
  return std::nullopt;
}

// He3 x| D4 with a (2,4,6)* triple.
inline std::optional<MapTriple> he3_d4_triple() {
  const PermGroup d4 = dihedral_group(4), he = build_heisenberg();
  for (const auto& action : search_automorphism_actions(d4, he))
    if (auto t = first_triple(build_split_extension(he, d4, action), 4, 6)) return t;
  return std::nullopt;
}

// Accepted triples with odd characteristic over many distinct groups.
inline std::vector<MapTriple> odd_chi_pool() {
  std::vector<MapTriple> pool;
  auto add = [&](std::optional<MapTriple> t) {
    if (t && t->chi % 2 != 0) pool.push_back(std::move(*t));
  };
  for (std::uint64_t j = 3; j <= 15; j += 2)
    for (std::uint64_t k = j + 2; j * k <= 200; k += 2)
      if (gcd_u64(j, k) == 1) add(build_h2(j, k));
  for (std::uint64_t l = 3; l <= 75; l += 6) add(build_h3(l));
  for (std::uint64_t l = 2; l <= 40; l += 2) add(build_h1(l));
  const PermGroup psl5 = make_pgl2(5, PglKind::psl), pgl5 = make_pgl2(5, PglKind::pgl);
  const PermGroup pgl7 = make_pgl2(7, PglKind::pgl), psl13 = make_pgl2(13, PglKind::psl);
  add(first_triple(psl5, 5, 5));
  add(first_triple(pgl5, 4, 5));
  add(first_triple(pgl5, 4, 6));
  add(first_triple(pgl7, 3, 8));
  add(first_triple(pgl7, 7, 8));
  add(first_triple(psl13, 3, 7));
  add(first_triple(psl13, 3, 13));
  add(e9_d4_triple());
  add(he3_d4_triple());
  const PermGroup psl7 = make_pgl2(7, PglKind::psl);
  if (auto base = find_cell_base(pgl7, psl7, 3, 8))
    for (std::uint64_t l : {5, 11, 13})
      add(build_semidirect_cell(SemidirectSpec{*base, psl7, l}).triple);
  return pool;
}

// Conjugating a triple and swapping its outer involutions preserves the characteristic.
inline PropertyResult duality_invariance(std::size_t cases, std::uint64_t seed) {
  PropertyResult res{"duality invariance of chi"};
  const std::vector<MapTriple> pool = odd_chi_pool();
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < cases; ++i) {
    const MapTriple& t = pool[rng() % pool.size()];
    const Perm& x = random_element(t.group, rng);
    const Perm a = conjugate(t.a, x), b = conjugate(t.b, x), c = conjugate(t.c, x);
    ++res.cases;
    try {
      const MapTriple fwd = verify_star_group(t.group, a, b, c);
      const MapTriple bwd = verify_star_group(t.group, c, b, a);
      const MapCertificate cf = map_counts(fwd), cb = map_counts(bwd);
      const MapTriple d = fwd.dual();
      if (fwd.chi != t.chi || bwd.chi != fwd.chi || bwd.m != fwd.n || bwd.n != fwd.m || d.m != bwd.m ||
          d.chi != bwd.chi || cf.vertices != cb.faces || cf.faces != cb.vertices || cf.edges != cb.edges ||
          cf.vertices - cf.edges + cf.faces != fwd.chi) {
        std::ostringstream os;
        os << "type (" << t.m << "," << t.n << ") order " << t.order() << ": chi " << fwd.chi << " vs " << bwd.chi;
        res.fail(os.str());
      }
    } catch (const Error& e) {
      res.fail(e.what());
    }
  }
  return res;
}

// The library's characteristic against both exact closed forms.
inline PropertyResult two_form_equality(std::size_t cases, std::uint64_t seed) {
  PropertyResult res{"two-form Euler equality"};
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < cases; ++i) {
    const std::uint64_t m = 2 + rng() % 80, n = 2 + rng() % 80;
    const std::uint64_t unit = std::lcm(std::lcm<std::uint64_t>(4, 2 * m), 2 * n);
    const std::uint64_t order = unit * (1 + rng() % 40);
    ++res.cases;
    const mpq_class h = oracle::euler_half_form(order, m, n), p = oracle::euler_product_form(order, m, n);
    const BigInt lib = euler_characteristic(BigNat(static_cast<unsigned long>(order)), m, n);
    if (h != p || h.get_den() != 1 || -h.get_num() != lib) {
      std::ostringstream os;
      os << "order " << order << " type (" << m << "," << n << "): " << lib << " vs " << h;
      res.fail(os.str());
    }
  }
  return res;
}

inline std::vector<PermGroup> odd_core_pool() {
  std::vector<PermGroup> g{make_pgl2(5, PglKind::pgl),
                           make_pgl2(7, PglKind::psl),
                           make_pgl2(7, PglKind::pgl),
                           dihedral_group(15),
                           dihedral_group(45),
                           build_h2(3, 5).group,
                           build_h2(5, 7).group,
                           build_h3(15).group,
                           direct_product(dihedral_group(9), dihedral_group(5)),
                           direct_product(cyclic_group(9), make_pgl2(5, PglKind::psl)),
                           build_wreath_c3()};
  if (auto t = e9_d4_triple()) g.push_back(t->group);
  if (auto t = he3_d4_triple()) g.push_back(t->group);
  return g;
}

// O(G) has odd order, is normal, agrees with a brute-force closure on small groups, and the
// quotient by it has trivial odd core.
inline PropertyResult odd_core_idempotence(std::size_t cases, std::uint64_t seed, std::size_t brute_runs = 150) {
  PropertyResult res{"odd core idempotence"};
  const std::vector<PermGroup> pool = odd_core_pool();
  std::mt19937_64 rng(seed);
  std::size_t brute = 0;
  for (std::size_t i = 0; i < cases; ++i) {
    const PermGroup& ambient = pool[rng() % pool.size()];
    std::vector<Perm> gens;
    const std::size_t k = 1 + rng() % 3;
    for (std::size_t j = 0; j < k; ++j) gens.push_back(random_element(ambient, rng));
    const PermGroup h(ambient.degree(), gens);
    ++res.cases;
    try {
      const NormalSubgroupHandle o = odd_core(h);
      bool ok = o.order() % 2 == 1;
      for (const Perm& x : o.generators())
        for (const Perm& y : h.generators()) ok = ok && o.subgroup.contains(conjugate(x, y));
      const Quotient q = quotient_group(h, o);
      ok = ok && q.group.order() * o.order() == h.order() && odd_core(q.group).order() == 1;
      if (ok && h.order() <= 120 && brute < brute_runs) {
        ++brute;
        ok = BigNat(static_cast<unsigned long>(oracle::odd_core_order(h.degree(), gens))) == o.order();
      }
      if (!ok) res.fail("subgroup of order " + to_string(h.order()) + ": odd core " + to_string(o.order()));
    } catch (const Error& e) {
      res.fail(e.what());
    }
  }
  return res;
}

// Every accepted triple with odd characteristic lives in a group with Klein or dihedral Sylow 2-subgroup.
inline PropertyResult sylow_klein_or_dihedral(std::size_t cases, std::uint64_t seed) {
  PropertyResult res{"Sylow 2-subgroup Klein or dihedral"};
  const std::vector<MapTriple> pool = odd_chi_pool();
  std::vector<std::optional<Sylow2Info>> info(pool.size());
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < cases; ++i) {
    const std::size_t idx = rng() % pool.size();
    const MapTriple& t = pool[idx];
    const Perm& x = random_element(t.group, rng);
    ++res.cases;
    try {
      const MapTriple u = verify_star_group(t.group, conjugate(t.a, x), conjugate(t.b, x), conjugate(t.c, x));
      if (u.chi % 2 == 0) {
        res.fail("pool triple with even chi");
        continue;
      }
      if (!info[idx]) info[idx] = sylow2(u.group);
      const Sylow2Info& s = *info[idx];
      const bool shape_ok = s.shape == Sylow2Shape::klein || s.shape == Sylow2Shape::dihedral;
      if (!shape_ok || BigNat(static_cast<unsigned long>(s.order)) != p_part(u.order(), 2))
        res.fail("order " + to_string(u.order()) + " type (" + std::to_string(u.m) + "," + std::to_string(u.n) +
                 "): Sylow 2-subgroup " + to_string(s.shape));
    } catch (const Error& e) {
      res.fail(e.what());
    }
  }
  return res;
}

// Invariant factors form a divisibility chain whose product is the determinantal divisor, the rank
// matches rational elimination, and mod-p ranks match both elimination mod p and the factor count.
inline PropertyResult snf_chain_and_det(std::size_t cases, std::uint64_t seed) {
  PropertyResult res{"SNF divisibility chain and determinant"};
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < cases; ++i) {
    const std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
    oracle::Dense d(rows, std::vector<mpz_class>(cols));
    std::vector<BigInt> flat;
    for (auto& row : d)
      for (auto& x : row) x = static_cast<long>(rng() % 25) - 12;
    if (rows > 1 && rng() % 3 == 0) {
      const long f = static_cast<long>(rng() % 5) - 2;
      for (std::size_t c = 0; c < cols; ++c) d[rows - 1][c] = d[0][c] * f + d[rows > 2 ? 1 : 0][c];
    }
    if (rng() % 4 == 0)
      for (auto& row : d)
        for (auto& x : row) x *= 6;
    for (const auto& row : d)
      for (const auto& x : row) flat.push_back(x);
    const IntMatrix m(rows, cols, flat);
    ++res.cases;
    const SnfResult s = smith_normal_form(m);
    bool ok = s.rank() == oracle::rational_rank(d) && s.free_rank == cols - s.rank();
    BigInt prod = 1;
    for (std::size_t k = 0; k < s.rank(); ++k) {
      ok = ok && s.invariant_factors[k] > 0;
      if (k + 1 < s.rank()) ok = ok && s.invariant_factors[k + 1] % s.invariant_factors[k] == 0;
      prod *= s.invariant_factors[k];
    }
    ok = ok && prod == oracle::determinantal_divisor(d, s.rank());
    if (rows == cols) {
      mpz_class det = oracle::bareiss_det(d);
      det = abs(det);
      ok = ok && (s.rank() == rows ? prod == det : det == 0);
    }
    for (std::uint64_t p : {2, 3, 5, 7}) {
      std::size_t units = 0;
      for (const BigInt& f : s.invariant_factors) units += f % static_cast<unsigned long>(p) != 0;
      const std::size_t r = mod_p_rank(m, p);
      ok = ok && r == units && r == oracle::rank_mod_p(d, p);
    }
    if (!ok) res.fail(std::to_string(rows) + "x" + std::to_string(cols) + " matrix case " + std::to_string(i));
  }
  return res;
}

// Groups of order at most 500 built by the constructors, each with its constructor triples.
struct NamedGroup {
  std::string name;
  PermGroup group;
  std::vector<MapTriple> built;
};

inline std::vector<NamedGroup> constructor_groups() {
  std::vector<NamedGroup> out;
  auto with = [&](std::string name, const MapTriple& t) { out.push_back({std::move(name), t.group, {t}}); };
  for (std::uint64_t j = 3; j <= 11; j += 2)
    for (std::uint64_t k = j + 2; 4 * j * k <= 500; k += 2)
      if (gcd_u64(j, k) == 1) with("h2:" + std::to_string(j) + "," + std::to_string(k), build_h2(j, k));
  for (std::uint64_t l = 3; 8 * l <= 500; l += 6) with("h3:" + std::to_string(l), build_h3(l));
  for (std::uint64_t l : {2, 4, 6, 10, 16, 30}) with("h1:" + std::to_string(l), build_h1(l));
  for (std::uint32_t q : {5u, 7u}) {
    out.push_back({"psl2:" + std::to_string(q), make_pgl2(q, PglKind::psl), {}});
    out.push_back({"pgl2:" + std::to_string(q), make_pgl2(q, PglKind::pgl), {}});
  }
  out.push_back({"psl2:9", make_pgl2(9, PglKind::psl), {}});
  if (auto t = e9_d4_triple()) with("E9:D4", *t);
  if (auto t = he3_d4_triple()) with("He3:D4", *t);
  out.push_back({"D3xD5", direct_product(dihedral_group(3), dihedral_group(5)), {}});
  return out;
}

// Every triple found by search or produced by a constructor lies in exactly one census class of
// its type, with the class's characteristic; every census class is reachable by search.
inline PropertyResult census_equivalence(std::size_t min_cases) {
  PropertyResult res{"constructor and census agreement"};
  for (const NamedGroup& ng : constructor_groups()) {
    const PermGroup& g = ng.group;
    try {
      const CensusResult census = classify_maps_for_group(g);
      const ElementTable& table = g.elements();
      std::vector<CayleyWalk> walks;
      for (const MapClass& c : census.classes)
        walks.emplace_back(table,
                           std::vector<Perm>{c.representative.a, c.representative.b, c.representative.c});
      std::vector<MapTriple> triples = find_triples(g, 0, 0, SIZE_MAX).triples;
      triples.insert(triples.end(), ng.built.begin(), ng.built.end());
      std::vector<bool> reached(census.classes.size());
      for (const MapTriple& t : triples) {
        ++res.cases;
        std::size_t hits = 0;
        for (std::size_t k = 0; k < census.classes.size(); ++k) {
          const MapClass& c = census.classes[k];
          if (c.m != t.m || c.n != t.n) continue;
          if (extends_to_automorphism(walks[k], table, {t.a, t.b, t.c})) {
            ++hits;
            reached[k] = true;
            if (c.chi != t.chi) res.fail(ng.name + ": characteristic differs from its class");
          }
        }
        if (hits != 1)
          res.fail(ng.name + ": triple of type (" + std::to_string(t.m) + "," + std::to_string(t.n) + ") lies in " +
                   std::to_string(hits) + " classes");
      }
      for (std::size_t k = 0; k < reached.size(); ++k)
        if (!reached[k]) res.fail(ng.name + ": census class not reached by search");
    } catch (const Error& e) {
      res.fail(ng.name + ": " + e.what());
    }
  }
  if (res.cases < min_cases) res.fail("only " + std::to_string(res.cases) + " triples examined");
  return res;
}

}  // namespace props
