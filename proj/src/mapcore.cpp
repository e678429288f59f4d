#include "rmaps/mapcore.hpp"

#include <algorithm>
#include <map>

#include "rmaps/parallel.hpp"

namespace rmaps {

std::string to_string(StarFailure f) {
  switch (f) {
    case StarFailure::degree_mismatch: return "degree_mismatch";
    case StarFailure::not_involution: return "not_involution";
    case StarFailure::ac_relation: return "ac_relation";
    case StarFailure::degenerate: return "degenerate";
    case StarFailure::not_generating: return "not_generating";
    case StarFailure::orientable: return "orientable";
  }
  return "unknown";
}

MapTriple MapTriple::dual() const {
  MapTriple d = *this;
  std::swap(d.a, d.c);
  std::swap(d.m, d.n);
  return d;
}

BigInt euler_characteristic(const BigNat& order, std::uint64_t m, std::uint64_t n) {
  if (m < 2 || n < 2) throw ContractError("euler_characteristic needs m, n >= 2");
  if (sgn(order) <= 0) throw ContractError("group order must be positive");
  const BigInt bm(static_cast<unsigned long>(m)), bn(static_cast<unsigned long>(n));
  if (!mpz_divisible_p(order.get_mpz_t(), BigInt(2 * lcm(bm, bn)).get_mpz_t()))
    throw ContractError("group order " + to_string(order) + " is not divisible by 2 lcm(" + std::to_string(m) + "," +
                        std::to_string(n) + ")");
  const BigInt num = -order * (bm * bn - 2 * bm - 2 * bn);
  const BigInt den = 4 * bm * bn;
  if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
    throw ContractError("Euler characteristic is not an integer for order " + to_string(order));
  const BigInt chi = num / den;
  mpq_class alt = -mpq_class(order, 2) * (mpq_class(1, 2) - mpq_class(1, bm) - mpq_class(1, bn));
  alt.canonicalize();
  if (alt != mpq_class(chi)) throw InternalError("the two Euler formulas disagree");
  return chi;
}

MapCertificate map_counts(const MapTriple& t) {
  MapCertificate c;
  c.order = t.order();
  c.m = t.m;
  c.n = t.n;
  c.chi = euler_characteristic(c.order, t.m, t.n);
  c.non_orientable = true;
  c.degenerate = t.m <= 2 || t.n <= 2;
  c.vertices = c.order / (2 * static_cast<unsigned long>(t.n));
  c.edges = c.order / 4;
  c.faces = c.order / (2 * static_cast<unsigned long>(t.m));
  if (c.vertices - c.edges + c.faces != c.chi) throw InternalError("V - E + F differs from chi");
  if (c.chi < -1) c.chi_prime_power = as_prime_power(BigNat(-c.chi));
  return c;
}

MapTriple verify_star_group(const PermGroup& g, const Perm& a, const Perm& b, const Perm& c) {
  const std::size_t d = g.degree();
  if (a.degree() != d || b.degree() != d || c.degree() != d)
    throw StarGroupError(StarFailure::degree_mismatch, "triple degree differs from group degree");
  for (const Perm* x : {&a, &b, &c})
    if (x->order() != 2) throw StarGroupError(StarFailure::not_involution, x->cycle_string() + " is not an involution");
  if (!(a * c).pow(2).is_identity()) throw StarGroupError(StarFailure::ac_relation, "(ac)^2 is not the identity");
  MapTriple t;
  t.a = a;
  t.b = b;
  t.c = c;
  t.m = (a * b).order();
  t.n = (b * c).order();
  if (t.m < 2 || t.n < 2) throw StarGroupError(StarFailure::degenerate, "a = b or b = c");
  const BigNat full = g.order();
  const PermGroup abc = g.subgroup({a, b, c});
  if (!g.contains(a) || !g.contains(b) || !g.contains(c) || abc.order() != full)
    throw StarGroupError(StarFailure::not_generating, "a, b, c do not generate the group");
  const PermGroup rot = g.subgroup({a * b, b * c});
  if (rot.order() != full) throw StarGroupError(StarFailure::orientable, "<ab, bc> has index 2: orientable");
  t.group = g;
  t.chi = euler_characteristic(full, t.m, t.n);
  return t;
}

namespace {

std::uint64_t coset_order(const Perm& x, const PermGroup& n) {
  const std::uint64_t o = x.order();
  if (n.is_trivial()) return o;
  for (std::uint64_t k = 1; k <= o; ++k)
    if (o % k == 0 && n.contains(x.pow(static_cast<std::int64_t>(k)))) return k;
  return o;
}

}  // namespace

QuotientData quotient_data(const MapTriple& t, const NormalSubgroupHandle& n, const Budgets& budgets) {
  const NormalSubgroupHandle o = odd_core(t.group, budgets);
  QuotientData q;
  const Perm x = t.a * t.b, y = t.b * t.c;
  q.m_bar = coset_order(x, o.subgroup);
  q.n_bar = coset_order(y, o.subgroup);
  q.m_star = coset_order(x, n.subgroup);
  q.n_star = coset_order(y, n.subgroup);
  q.m_o = t.m / q.m_bar;
  q.n_o = t.n / q.n_bar;
  q.m_1 = t.m / q.m_star;
  q.n_1 = t.n / q.n_star;
  return q;
}

bool StructuralReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const LemmaCheck& c) { return c.pass; });
}

StructuralReport verify_structural_lemmas(const MapTriple& t, const std::optional<BigInt>& chi_override,
                                          const Budgets& budgets) {
  StructuralReport rep;
  rep.chi = chi_override ? *chi_override : t.chi;
  if (mpz_even_p(rep.chi.get_mpz_t())) throw ContractError("structural lemmas need odd chi");
  const PermGroup& g = t.group;
  const BigNat order = g.order();
  const ElementTable& tab = g.elements(budgets.order_cap);

  {
    LemmaCheck c{"sylow2_dihedral", true, true, ""};
    const Sylow2Shape s = sylow2_shape(g, budgets);
    c.pass = s == Sylow2Shape::klein || s == Sylow2Shape::dihedral;
    c.witness = to_string(s) + " of order " + to_string(p_part(order, 2));
    rep.checks.push_back(c);
  }
  {
    LemmaCheck c{"odd_sylow_cyclic", true, true, ""};
    for (std::uint64_t p : prime_divisors(order)) {
      if (p == 2 || mpz_divisible_ui_p(rep.chi.get_mpz_t(), p)) continue;
      const std::uint64_t full = to_u64(p_part(order, p));
      bool cyclic = false;
      for (std::uint32_t i = 0; i < tab.size() && !cyclic; ++i) cyclic = p_part(tab.order(i), p) == full;
      c.witness += (c.witness.empty() ? "" : ",") + std::to_string(p) + (cyclic ? ":cyclic" : ":noncyclic");
      if (!cyclic) c.pass = false;
    }
    rep.checks.push_back(c);
  }

  const NormalSubgroupHandle o = odd_core(g, budgets);
  const Perm x = t.a * t.b, y = t.b * t.c;
  const std::uint64_t m_bar = coset_order(x, o.subgroup), n_bar = coset_order(y, o.subgroup);
  const BigNat bar_order = order / o.order();
  {
    LemmaCheck c{"two_part_bound", true, false, ""};
    const BigNat lhs = p_part(bar_order, 2);
    const BigNat rhs = 2 * BigNat(static_cast<unsigned long>(p_part(m_bar, 2) * p_part(n_bar, 2)));
    if (lhs > rhs) {
      c.applicable = true;
      c.pass = p_part(order, 2) == 4 && t.m % 2 == 1 && t.n % 2 == 1;
    }
    c.witness = "|Gbar|_2=" + to_string(lhs) + " 2|mbar|_2|nbar|_2=" + to_string(rhs);
    rep.checks.push_back(c);
  }
  {
    LemmaCheck c{"odd_prime_is_r", true, false, ""};
    if (rep.chi < -1) {
      if (auto pe = as_prime_power(BigNat(-rep.chi)); pe && pe->first != 2) {
        c.applicable = true;
        for (std::uint64_t p : prime_divisors(bar_order)) {
          if (p == 2) continue;
          if (p_part(bar_order, p) > BigNat(static_cast<unsigned long>(p_part(m_bar, p) * p_part(n_bar, p))) &&
              BigInt(static_cast<unsigned long>(p)) != pe->first) {
            c.pass = false;
            c.witness += (c.witness.empty() ? "" : ",") + std::to_string(p);
          }
        }
        if (c.pass) c.witness = "r=" + to_string(pe->first);
      }
    }
    rep.checks.push_back(c);
  }
  {
    LemmaCheck c{"soluble_quotient_shape", true, false, ""};
    // Derived series down to a fixed point.
    PermGroup cur = g;
    for (;;) {
      std::vector<Perm> comms;
      const auto& gs = cur.generators();
      for (std::size_t i = 0; i < gs.size(); ++i)
        for (std::size_t j = i + 1; j < gs.size(); ++j) comms.push_back(commutator(gs[i], gs[j]));
      PermGroup next = normal_closure(cur, comms).subgroup;
      if (next.order() == cur.order()) break;
      cur = next;
    }
    if (cur.is_trivial()) {
      c.applicable = true;
      const Quotient q = quotient_group(g, o, budgets);
      const BigNat qo = q.group.order();
      if (valuation(qo, 2) > 0 && p_part(qo, 2) == qo) {
        c.witness = "2-group of order " + to_string(qo);
      } else if (qo == 24) {
        std::map<std::uint64_t, int> profile;
        const ElementTable& qt = q.group.elements(budgets.order_cap);
        for (std::uint32_t i = 0; i < qt.size(); ++i) ++profile[qt.order(i)];
        const std::map<std::uint64_t, int> s4{{1, 1}, {2, 9}, {3, 8}, {4, 6}};
        c.pass = profile == s4;
        c.witness = c.pass ? "S4 profile" : "order 24 without the S4 profile";
      } else {
        c.pass = qo == 1;
        c.witness = "quotient order " + to_string(qo);
      }
    }
    rep.checks.push_back(c);
  }
  return rep;
}

std::size_t CensusResult::count(std::uint64_t m, std::uint64_t n) const {
  return static_cast<std::size_t>(
      std::count_if(classes.begin(), classes.end(), [&](const MapClass& c) { return c.m == m && c.n == n; }));
}

std::vector<SliceTriple> star_triples_with_a(const PermGroup& g, std::uint32_t a, std::uint64_t m, std::uint64_t n,
                                             const Budgets& budgets) {
  const ElementTable& t = g.elements(budgets.order_cap);
  const BigNat full = g.order();
  if (t.order(a) != 2) throw ParameterError("first triple entry must be an involution");
  std::vector<std::uint32_t> inv, commuting;
  for (std::uint32_t x = 0; x < t.size(); ++x) {
    if (t.order(x) != 2) continue;
    inv.push_back(x);
    if (t[a] * t[x] == t[x] * t[a]) commuting.push_back(x);
  }
  std::vector<std::vector<SliceTriple>> per_b(inv.size());
  parallel_for(inv.size(), budgets.threads, [&](std::size_t bi) {
    const std::uint32_t b = inv[bi];
    if (b == a) return;
    const Perm ab = t[a] * t[b];
    const std::uint64_t mm = ab.order();
    if (m && mm != m) return;
    for (std::uint32_t c : commuting) {
      if (c == b) continue;
      const Perm bc = t[b] * t[c];
      const std::uint64_t nn = bc.order();
      if (n && nn != n) continue;
      const BigInt l2 = 2 * lcm(BigInt(static_cast<unsigned long>(mm)), BigInt(static_cast<unsigned long>(nn)));
      if (!mpz_divisible_p(full.get_mpz_t(), l2.get_mpz_t())) continue;
      if (g.subgroup({ab, bc}).order() == full) {
        per_b[bi].push_back(SliceTriple{a, b, c, mm, nn, false});
      } else if (g.subgroup({t[a], t[b], t[c]}).order() == full) {
        per_b[bi].push_back(SliceTriple{a, b, c, mm, nn, true});
      }
    }
  });
  std::vector<SliceTriple> out;
  for (auto& v : per_b) out.insert(out.end(), v.begin(), v.end());
  return out;
}

CensusResult classify_maps_for_group(const PermGroup& g, const Budgets& budgets) {
  if (g.order() > budgets.census_cap)
    throw ResourceError("group order " + to_string(g.order()) + " exceeds the census budget " +
                        std::to_string(budgets.census_cap));
  Budgets inner = budgets;
  inner.aut_cap = std::max(budgets.aut_cap, budgets.census_cap);
  const ElementTable& t = g.elements(inner.order_cap);
  const ConjugacyClasses& cc = g.classes(inner.order_cap);

  CensusResult res;
  res.group_order = g.order();
  using Type = std::pair<std::uint64_t, std::uint64_t>;
  std::map<Type, BigNat> totals, rejected;
  struct Rep {
    std::size_t class_index;
    CayleyWalk walk;
  };
  std::map<Type, std::vector<Rep>> reps;
  std::vector<MapClass> classes;
  std::optional<BigNat> aut;

  for (std::size_t k = 0; k < cc.reps.size(); ++k) {
    const std::uint32_t a = cc.reps[k];
    if (t.order(a) != 2) continue;
    const BigNat weight(static_cast<unsigned long>(cc.sizes[k]));
    for (const SliceTriple& s : star_triples_with_a(g, a, 0, 0, inner)) {
      const Type ty{s.m, s.n};
      if (s.orientable) {
        rejected[ty] += weight;
        continue;
      }
      totals[ty] += weight;
      const std::vector<Perm> images{t[s.a], t[s.b], t[s.c]};
      bool known = false;
      for (const Rep& r : reps[ty])
        if (extends_to_automorphism(r.walk, t, images)) {
          known = true;
          break;
        }
      if (known) continue;
      if (!aut) aut = count_automorphisms(g, images, inner);
      MapClass mc;
      mc.representative = verify_star_group(g, t[s.a], t[s.b], t[s.c]);
      mc.m = s.m;
      mc.n = s.n;
      mc.chi = mc.representative.chi;
      mc.hyperbolic = sgn(mc.chi) < 0;
      reps[ty].push_back(Rep{classes.size(), CayleyWalk(t, images)});
      classes.push_back(std::move(mc));
    }
  }
  for (auto& [ty, list] : reps) {
    for (const Rep& r : list) {
      MapClass& mc = classes[r.class_index];
      mc.triple_count = totals[ty];
      if (ty.first == ty.second) {
        const auto& rt = mc.representative;
        mc.self_dual = extends_to_automorphism(r.walk, t, {rt.c, rt.b, rt.a});
      }
    }
    // Free action of Aut(G) on generating triples: orbits times |Aut| must equal the count.
    if (aut && BigNat(static_cast<unsigned long>(list.size())) * *aut != totals[ty])
      throw InternalError("census orbit count disagrees with the triple count for type (" +
                          std::to_string(ty.first) + "," + std::to_string(ty.second) + ")");
  }
  res.automorphism_count = aut ? *aut : BigNat(0);
  std::stable_sort(classes.begin(), classes.end(),
                   [](const MapClass& x, const MapClass& y) { return std::pair(x.m, x.n) < std::pair(y.m, y.n); });
  res.classes = std::move(classes);
  for (auto& [ty, cnt] : rejected) res.orientable_rejected.emplace_back(ty, cnt);
  return res;
}

}  // namespace rmaps
