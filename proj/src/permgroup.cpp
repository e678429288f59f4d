#include "rmaps/permgroup.hpp"

#include <algorithm>
#include <deque>
#include <mutex>

#include "rmaps/errors.hpp"

namespace rmaps {

// ------------------------------------------------------------ element table

ElementTable::ElementTable(std::size_t degree, const std::vector<Perm>& generators, std::uint64_t cap) {
  std::size_t slots = 64;
  while (slots < 2 * std::min<std::uint64_t>(cap, 1u << 20)) slots <<= 1;
  slots_.assign(slots, UINT32_MAX);
  mask_ = slots - 1;
  insert(Perm::identity(degree));
  std::vector<Point> buf;
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    for (const Perm& s : generators) {
      compose_into(elems_[i], s, buf);
      Perm y(buf);
      if (find(y)) continue;
      if (elems_.size() >= cap) throw ResourceError("group has more than " + std::to_string(cap) + " elements");
      insert(std::move(y));
    }
  }
}

void ElementTable::insert(Perm p) {
  if (2 * (elems_.size() + 1) > slots_.size()) {
    std::vector<std::uint32_t> old;
    old.swap(slots_);
    slots_.assign(old.size() * 2, UINT32_MAX);
    mask_ = slots_.size() - 1;
    for (std::uint32_t idx : old) {
      if (idx == UINT32_MAX) continue;
      std::size_t h = PermHash{}(elems_[idx]) & mask_;
      while (slots_[h] != UINT32_MAX) h = (h + 1) & mask_;
      slots_[h] = idx;
    }
  }
  std::size_t h = PermHash{}(p)&mask_;
  while (slots_[h] != UINT32_MAX) h = (h + 1) & mask_;
  slots_[h] = static_cast<std::uint32_t>(elems_.size());
  orders_.push_back(p.order());
  elems_.push_back(std::move(p));
}

std::optional<std::uint32_t> ElementTable::find(const Perm& p) const {
  std::size_t h = PermHash{}(p)&mask_;
  while (slots_[h] != UINT32_MAX) {
    if (elems_[slots_[h]] == p) return slots_[h];
    h = (h + 1) & mask_;
  }
  return std::nullopt;
}

std::uint32_t ElementTable::index(const Perm& p) const {
  auto i = find(p);
  if (!i) throw ContractError("permutation " + p.cycle_string() + " is not in the group");
  return *i;
}

std::uint32_t ElementTable::mul(std::uint32_t i, std::uint32_t j) const { return index(elems_[i] * elems_[j]); }

std::uint32_t ElementTable::inv(std::uint32_t i) const { return index(elems_[i].inverse()); }

// ------------------------------------------------------------ stabilizer chain

struct StabChain {
  struct Level {
    Point base = 0;
    std::vector<Perm> gens;
    std::vector<std::int32_t> where;
    std::vector<Point> orbit;
    std::vector<Perm> u, uinv;
  };
  std::size_t degree = 0;
  std::vector<Level> levels;
  BigNat order = 1;

  void rebuild_orbit(Level& lv) const {
    lv.where.assign(degree, -1);
    lv.orbit.assign(1, lv.base);
    lv.u.assign(1, Perm::identity(degree));
    lv.uinv.assign(1, Perm::identity(degree));
    lv.where[lv.base] = 0;
    for (std::size_t i = 0; i < lv.orbit.size(); ++i) {
      for (const Perm& s : lv.gens) {
        const Point y = s[lv.orbit[i]];
        if (lv.where[y] >= 0) continue;
        lv.where[y] = static_cast<std::int32_t>(lv.orbit.size());
        lv.orbit.push_back(y);
        lv.u.push_back(lv.u[i] * s);
        lv.uinv.push_back(lv.u.back().inverse());
      }
    }
  }

  // Sifts g from level `start`; returns the residue and the level where sifting stopped.
  std::pair<Perm, std::size_t> strip(Perm g, std::size_t start) const {
    std::vector<Point> buf;
    for (std::size_t l = start; l < levels.size(); ++l) {
      const Point b = g[levels[l].base];
      const std::int32_t w = levels[l].where[b];
      if (w < 0) return {std::move(g), l};
      compose_into(g, levels[l].uinv[static_cast<std::size_t>(w)], buf);
      g = Perm(buf);
    }
    return {std::move(g), levels.size()};
  }

  static Point first_moved(const Perm& g) {
    for (Point i = 0; i < g.degree(); ++i)
      if (g[i] != i) return i;
    return 0;
  }

  void build(const std::vector<Perm>& gens) {
    static constexpr std::uint64_t kMemoryCap = 60000000;
    std::vector<Perm> live;
    for (const Perm& g : gens)
      if (!g.is_identity()) live.push_back(g);
    for (const Perm& g : live) {
      bool fixes_all = true;
      for (const auto& lv : levels)
        if (g[lv.base] != lv.base) fixes_all = false;
      if (fixes_all) {
        levels.emplace_back();
        levels.back().base = first_moved(g);
      }
    }
    for (const Perm& g : live) {
      for (auto& lv : levels) {
        lv.gens.push_back(g);
        if (g[lv.base] != lv.base) break;
      }
    }
    for (auto& lv : levels) rebuild_orbit(lv);

    auto memory = [&] {
      std::uint64_t total = 0;
      for (const auto& lv : levels) total += lv.orbit.size() * degree;
      return total;
    };
    std::vector<Point> buf;
    std::int64_t i = static_cast<std::int64_t>(levels.size()) - 1;
    while (i >= 0) {
      bool extended = false;
      Level& lv = levels[static_cast<std::size_t>(i)];
      for (std::size_t j = 0; !extended && j < lv.orbit.size(); ++j) {
        for (std::size_t s = 0; !extended && s < lv.gens.size(); ++s) {
          const Point y = lv.gens[s][lv.orbit[j]];
          compose_into(lv.u[j], lv.gens[s], buf);
          Perm h = Perm(buf) * lv.uinv[static_cast<std::size_t>(lv.where[y])];
          if (h.is_identity()) continue;
          auto [res, d] = strip(std::move(h), static_cast<std::size_t>(i) + 1);
          if (res.is_identity()) continue;
          if (d == levels.size()) {
            levels.emplace_back();
            levels.back().base = first_moved(res);
          }
          for (std::size_t l = static_cast<std::size_t>(i) + 1; l <= d; ++l) {
            levels[l].gens.push_back(res);
            rebuild_orbit(levels[l]);
          }
          if (memory() > kMemoryCap) throw ResourceError("stabilizer chain exceeds its memory budget");
          i = static_cast<std::int64_t>(d);
          extended = true;
        }
      }
      if (!extended) --i;
    }
    order = 1;
    for (const auto& lv : levels) order *= static_cast<unsigned long>(lv.orbit.size());
  }
};

struct PermGroup::Cache {
  std::once_flag chain_once;
  std::unique_ptr<StabChain> chain;
  std::optional<BigNat> seeded_order;
  std::mutex lock;
  std::unique_ptr<ElementTable> table;
  std::unique_ptr<ConjugacyClasses> classes;
};

PermGroup::PermGroup() : degree_(1), cache_(std::make_shared<Cache>()) {}

PermGroup::PermGroup(std::size_t degree, std::vector<Perm> generators)
    : degree_(degree), gens_(std::move(generators)), cache_(std::make_shared<Cache>()) {
  if (degree_ < 1) throw ParameterError("permutation group needs degree >= 1");
  for (const Perm& g : gens_)
    if (g.degree() != degree_) throw ParameterError("generator degree differs from group degree");
}

PermGroup PermGroup::with_order(std::size_t degree, std::vector<Perm> generators, BigNat order) {
  PermGroup g(degree, std::move(generators));
  g.cache_->seeded_order = std::move(order);
  return g;
}

const StabChain& PermGroup::chain() const {
  std::call_once(cache_->chain_once, [this] {
    auto c = std::make_unique<StabChain>();
    c->degree = degree_;
    c->build(gens_);
    cache_->chain = std::move(c);
  });
  return *cache_->chain;
}

BigNat PermGroup::order() const {
  if (cache_->seeded_order) return *cache_->seeded_order;
  return chain().order;
}

bool PermGroup::contains(const Perm& p) const {
  if (p.degree() != degree_) return false;
  return chain().strip(p, 0).first.is_identity();
}

std::vector<Point> PermGroup::base() const {
  std::vector<Point> out;
  for (const auto& lv : chain().levels) out.push_back(lv.base);
  return out;
}

const ElementTable& PermGroup::elements(std::uint64_t cap) const {
  std::lock_guard<std::mutex> g(cache_->lock);
  if (!cache_->table) {
    if (order() > cap)
      throw ResourceError("group order " + to_string(order()) + " exceeds the element budget " + std::to_string(cap));
    cache_->table = std::make_unique<ElementTable>(degree_, gens_, cap);
  }
  return *cache_->table;
}

const ConjugacyClasses& PermGroup::classes(std::uint64_t cap) const {
  const ElementTable& t = elements(cap);
  std::lock_guard<std::mutex> g(cache_->lock);
  if (!cache_->classes) {
    auto cc = std::make_unique<ConjugacyClasses>();
    cc->class_of.assign(t.size(), UINT32_MAX);
    std::vector<Perm> inv;
    for (const Perm& s : gens_) inv.push_back(s.inverse());
    for (std::uint32_t x = 0; x < t.size(); ++x) {
      if (cc->class_of[x] != UINT32_MAX) continue;
      const auto id = static_cast<std::uint32_t>(cc->reps.size());
      cc->reps.push_back(x);
      std::vector<std::uint32_t> todo{x};
      cc->class_of[x] = id;
      std::uint64_t size = 0;
      while (!todo.empty()) {
        const std::uint32_t y = todo.back();
        todo.pop_back();
        ++size;
        for (std::size_t s = 0; s < gens_.size(); ++s) {
          const std::uint32_t z = t.index(inv[s] * t[y] * gens_[s]);
          if (cc->class_of[z] == UINT32_MAX) {
            cc->class_of[z] = id;
            todo.push_back(z);
          }
        }
      }
      cc->sizes.push_back(size);
    }
    cache_->classes = std::move(cc);
  }
  return *cache_->classes;
}

PermGroup PermGroup::subgroup(std::vector<Perm> generators) const { return PermGroup(degree_, std::move(generators)); }

std::uint64_t element_order(const PermGroup& g, const Perm& x) {
  if (x.degree() != g.degree()) throw ParameterError("element degree differs from group degree");
  return x.order();
}

// ------------------------------------------------------------ normal subgroups

NormalSubgroupHandle normal_closure(const PermGroup& g, const std::vector<Perm>& seeds) {
  std::vector<Perm> gens;
  for (const Perm& s : seeds) {
    if (s.degree() != g.degree()) throw ParameterError("seed degree differs from group degree");
    if (!s.is_identity()) gens.push_back(s);
  }
  PermGroup n = g.subgroup(gens);
  std::deque<Perm> todo(gens.begin(), gens.end());
  while (!todo.empty()) {
    Perm x = todo.front();
    todo.pop_front();
    for (const Perm& s : g.generators()) {
      Perm c = conjugate(x, s);
      if (n.contains(c)) continue;
      gens.push_back(c);
      n = g.subgroup(gens);
      todo.push_back(std::move(c));
    }
  }
  return NormalSubgroupHandle{g, n};
}

NormalSubgroupHandle as_normal_subgroup(const PermGroup& g, const std::vector<Perm>& gens) {
  PermGroup n = g.subgroup(gens);
  for (const Perm& x : gens) {
    if (!g.contains(x)) throw ContractError("subgroup generator is not in the ambient group");
    for (const Perm& s : g.generators())
      if (!n.contains(conjugate(x, s))) throw ContractError("subgroup is not normal");
  }
  return NormalSubgroupHandle{g, n};
}

NormalSubgroupHandle odd_core(const PermGroup& g, const Budgets& budgets) {
  const ElementTable& t = g.elements(budgets.order_cap);
  const ConjugacyClasses& cc = g.classes(budgets.order_cap);
  std::vector<Perm> kept;
  PermGroup current = g.subgroup({});
  for (std::uint32_t rep : cc.reps) {
    if (t.order(rep) % 2 == 0 || t.order(rep) == 1) continue;
    if (current.contains(t[rep])) continue;
    NormalSubgroupHandle c = normal_closure(g, {t[rep]});
    if (mpz_odd_p(c.order().get_mpz_t())) {
      kept.push_back(t[rep]);
      current = g.subgroup(kept);
    }
  }
  return normal_closure(g, kept);
}

std::string to_string(Sylow2Shape s) {
  switch (s) {
    case Sylow2Shape::trivial: return "trivial";
    case Sylow2Shape::cyclic: return "cyclic";
    case Sylow2Shape::klein: return "klein";
    case Sylow2Shape::dihedral: return "dihedral";
    case Sylow2Shape::other: return "other";
  }
  return "other";
}

namespace {

bool is_power_of(const BigNat& n, std::uint64_t p) {
  BigNat r = n;
  while (r > 1) {
    if (!mpz_divisible_ui_p(r.get_mpz_t(), p)) return false;
    mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), p);
  }
  return r == 1;
}

Sylow2Shape classify_2group(const PermGroup& p) {
  const std::uint64_t n = p.order_u64();
  if (n == 1) return Sylow2Shape::trivial;
  const ElementTable& t = p.elements();
  std::vector<std::uint32_t> involutions;
  for (std::uint32_t i = 0; i < t.size(); ++i) {
    if (t.order(i) == n) return Sylow2Shape::cyclic;
    if (t.order(i) == 2) involutions.push_back(i);
  }
  if (n == 4) return Sylow2Shape::klein;
  for (std::size_t i = 0; i < involutions.size(); ++i)
    for (std::size_t j = i + 1; j < involutions.size(); ++j)
      if ((t[involutions[i]] * t[involutions[j]]).order() == n / 2) return Sylow2Shape::dihedral;
  return Sylow2Shape::other;
}

}  // namespace

Sylow2Info sylow2(const PermGroup& g, const Budgets& budgets) {
  const BigNat target = p_part(g.order(), 2);
  const ElementTable& t = g.elements(budgets.order_cap);
  std::vector<Perm> gens;
  PermGroup p = g.subgroup({});
  for (std::uint32_t i = 0; i < t.size() && p.order() < target; ++i) {
    const std::uint64_t o = t.order(i);
    if (o == 1 || (o & (o - 1)) != 0) continue;
    if (p.contains(t[i])) continue;
    gens.push_back(t[i]);
    PermGroup q = g.subgroup(gens);
    // A rejected element stays rejected as the candidate grows, so one pass suffices.
    if (is_power_of(q.order(), 2))
      p = q;
    else
      gens.pop_back();
  }
  if (p.order() != target) throw InternalError("Sylow 2-subgroup construction fell short");
  Sylow2Info info;
  info.order = p.order_u64();
  info.shape = classify_2group(p);
  info.subgroup = p;
  return info;
}

Sylow2Shape sylow2_shape(const PermGroup& g, const Budgets& budgets) { return sylow2(g, budgets).shape; }

bool is_almost_sylow_cyclic(const PermGroup& g, const Budgets& budgets) {
  const BigNat n = g.order();
  const ElementTable& t = g.elements(budgets.order_cap);
  for (std::uint64_t p : prime_divisors(n)) {
    const std::uint64_t full = to_u64(p_part(n, p));
    std::uint64_t best = 1;
    for (std::uint32_t i = 0; i < t.size(); ++i) best = std::max(best, p_part(t.order(i), p));
    if (p == 2) {
      if (full > 2 && 2 * best < full) return false;
    } else if (best != full) {
      return false;
    }
  }
  return true;
}

// ------------------------------------------------------------ quotients

Perm Quotient::project(const Perm& x) const {
  const ElementTable& t = ambient.elements();
  std::vector<Point> img(group.degree());
  std::vector<char> seen(group.degree(), 0);
  for (std::uint32_t e = 0; e < t.size(); ++e) {
    const std::uint32_t c = coset_of[e];
    if (seen[c]) continue;
    seen[c] = 1;
    img[c] = coset_of[t.index(t[e] * x)];
  }
  return Perm(std::move(img));
}

Quotient quotient_group(const PermGroup& g, const NormalSubgroupHandle& n, const Budgets& budgets) {
  for (const Perm& x : n.generators()) {
    if (!g.contains(x)) throw ContractError("quotient: subgroup is not inside the group");
    for (const Perm& s : g.generators())
      if (!n.subgroup.contains(conjugate(x, s))) throw ContractError("quotient: subgroup is not normal");
  }
  const ElementTable& t = g.elements(budgets.order_cap);
  Quotient q;
  q.ambient = g;
  q.coset_of.assign(t.size(), UINT32_MAX);
  std::uint32_t ncosets = 0;
  if (n.subgroup.is_trivial()) {
    for (std::uint32_t e = 0; e < t.size(); ++e) q.coset_of[e] = e;
    ncosets = static_cast<std::uint32_t>(t.size());
  } else {
    const ElementTable& nt = n.subgroup.elements(budgets.order_cap);
    for (std::uint32_t e = 0; e < t.size(); ++e) {
      if (q.coset_of[e] != UINT32_MAX) continue;
      for (const Perm& m : nt.elements()) q.coset_of[t.index(m * t[e])] = ncosets;
      ++ncosets;
    }
  }
  std::vector<std::uint32_t> rep(ncosets, UINT32_MAX);
  for (std::uint32_t e = 0; e < t.size(); ++e)
    if (rep[q.coset_of[e]] == UINT32_MAX) rep[q.coset_of[e]] = e;
  std::vector<Perm> gens;
  for (const Perm& s : g.generators()) {
    std::vector<Point> img(ncosets);
    for (std::uint32_t c = 0; c < ncosets; ++c) img[c] = q.coset_of[t.index(t[rep[c]] * s)];
    gens.emplace_back(std::move(img));
  }
  q.group = PermGroup::with_order(std::max<std::uint32_t>(ncosets, 1), std::move(gens), g.order() / n.order());
  return q;
}

// ------------------------------------------------------------ p-groups

NormalSubgroupHandle frattini_of_pgroup(const PermGroup& g, std::uint64_t p) {
  if (!is_prime(p)) throw ParameterError("frattini: p must be prime");
  if (!is_power_of(g.order(), p)) throw ContractError("frattini: group is not a p-group");
  std::vector<Perm> seeds;
  const auto& gs = g.generators();
  for (std::size_t i = 0; i < gs.size(); ++i) {
    seeds.push_back(gs[i].pow(static_cast<std::int64_t>(p)));
    for (std::size_t j = i + 1; j < gs.size(); ++j) seeds.push_back(commutator(gs[i], gs[j]));
  }
  return normal_closure(g, seeds);
}

unsigned frattini_rank(const PermGroup& l, std::uint64_t p) {
  const NormalSubgroupHandle phi = frattini_of_pgroup(l, p);
  return valuation(l.order() / phi.order(), p);
}

bool check_order_bound(const PermGroup& g, const NormalSubgroupHandle& l, std::uint64_t p, const Budgets& budgets) {
  if (!is_power_of(l.order(), p)) throw ContractError("order bound: subgroup is not a p-group");
  for (const Perm& x : l.generators()) {
    if (!g.contains(x)) throw ContractError("order bound: subgroup is not inside the group");
    for (const Perm& s : g.generators())
      if (!l.subgroup.contains(conjugate(x, s))) throw ContractError("order bound: subgroup is not normal");
  }
  const BigNat gp = p_part(g.order(), p);
  const unsigned j = l.subgroup.is_trivial() ? 1 : frattini_rank(l.subgroup, p);
  const BigNat scale = big_pow(p, j - 1);
  const ElementTable& t = g.elements(budgets.order_cap);
  const ConjugacyClasses& cc = g.classes(budgets.order_cap);
  for (std::uint32_t rep : cc.reps)
    if (BigNat(static_cast<unsigned long>(p_part(t.order(rep), p))) * scale > gp) return false;
  return true;
}

// ------------------------------------------------------------ homomorphisms

CayleyWalk::CayleyWalk(const ElementTable& table, std::vector<Perm> gens) : gens_(std::move(gens)) {
  const std::size_t n = table.size();
  next_.assign(gens_.size(), std::vector<std::uint32_t>(n));
  for (std::size_t s = 0; s < gens_.size(); ++s)
    for (std::uint32_t x = 0; x < n; ++x) next_[s][x] = table.index(table[x] * gens_[s]);
  parent_.assign(n, UINT32_MAX);
  parent_gen_.assign(n, UINT32_MAX);
  const std::uint32_t root = table.index(Perm::identity(table[0].degree()));
  parent_[root] = root;
  order_.push_back(root);
  for (std::size_t i = 0; i < order_.size(); ++i) {
    const std::uint32_t x = order_[i];
    for (std::uint32_t s = 0; s < gens_.size(); ++s) {
      const std::uint32_t y = next_[s][x];
      if (parent_[y] != UINT32_MAX) continue;
      parent_[y] = x;
      parent_gen_[y] = s;
      order_.push_back(y);
    }
  }
  if (order_.size() != n) throw ContractError("tuple does not generate the group");
}

std::vector<std::uint32_t> extend_homomorphism(const CayleyWalk& walk, const ElementTable& target,
                                               const std::vector<Perm>& images) {
  if (images.size() != walk.arity()) throw ParameterError("image tuple has the wrong length");
  const auto& order = walk.visit_order();
  std::vector<std::uint32_t> img(walk.size(), UINT32_MAX);
  img[order[0]] = target.index(Perm::identity(target[0].degree()));
  std::vector<Point> buf;
  auto step = [&](std::uint32_t from, std::uint32_t s) -> std::optional<std::uint32_t> {
    compose_into(target[from], images[s], buf);
    return target.find(Perm(buf));
  };
  for (std::size_t i = 1; i < order.size(); ++i) {
    const std::uint32_t x = order[i];
    auto y = step(img[walk.parent(x)], walk.parent_gen(x));
    if (!y) return {};
    img[x] = *y;
  }
  for (std::uint32_t x : order)
    for (std::uint32_t s = 0; s < walk.arity(); ++s) {
      const std::uint32_t nx = walk.next(s, x);
      if (walk.parent(nx) == x && walk.parent_gen(nx) == s) continue;
      auto y = step(img[x], s);
      if (!y || *y != img[nx]) return {};
    }
  return img;
}

bool extends_to_automorphism(const CayleyWalk& walk, const ElementTable& table, const std::vector<Perm>& images) {
  std::vector<std::uint32_t> img = extend_homomorphism(walk, table, images);
  if (img.empty()) return false;
  std::vector<char> hit(table.size(), 0);
  for (std::uint32_t y : img) {
    if (hit[y]) return false;
    hit[y] = 1;
  }
  return true;
}

BigNat count_automorphisms(const PermGroup& g, const std::array<Perm, 3>& triple, const Budgets& budgets) {
  return count_automorphisms(g, std::vector<Perm>(triple.begin(), triple.end()), budgets);
}

BigNat count_automorphisms(const PermGroup& g, const std::vector<Perm>& tuple, const Budgets& budgets) {
  if (tuple.empty()) throw ParameterError("automorphism count needs a generating tuple");
  if (g.order() > budgets.aut_cap)
    throw ResourceError("group order exceeds the automorphism budget " + std::to_string(budgets.aut_cap));
  const ElementTable& t = g.elements(budgets.aut_cap);
  const ConjugacyClasses& cc = g.classes(budgets.aut_cap);
  const CayleyWalk walk(t, tuple);
  const std::size_t k = tuple.size();
  std::vector<std::uint64_t> ord(k);
  std::vector<std::vector<std::uint64_t>> pair_ord(k, std::vector<std::uint64_t>(k));
  for (std::size_t i = 0; i < k; ++i) {
    ord[i] = tuple[i].order();
    for (std::size_t j = 0; j < i; ++j) pair_ord[j][i] = (tuple[j] * tuple[i]).order();
  }
  std::vector<std::vector<std::uint32_t>> by_order(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::uint32_t x = 0; x < t.size(); ++x)
      if (t.order(x) == ord[i]) by_order[i].push_back(x);

  BigNat total = 0;
  std::vector<Perm> images(k);
  std::uint64_t hits = 0;
  // Inner automorphisms act freely, so fixing the first image to a class representative
  // and weighting by the class size counts every automorphism exactly once.
  auto recurse = [&](auto&& self, std::size_t pos) -> void {
    if (pos == k) {
      if (extends_to_automorphism(walk, t, images)) ++hits;
      return;
    }
    for (std::uint32_t x : by_order[pos]) {
      bool ok = true;
      for (std::size_t j = 0; j < pos && ok; ++j) ok = (images[j] * t[x]).order() == pair_ord[j][pos];
      if (!ok) continue;
      images[pos] = t[x];
      self(self, pos + 1);
    }
  };
  for (std::size_t c = 0; c < cc.reps.size(); ++c) {
    const std::uint32_t rep = cc.reps[c];
    if (t.order(rep) != ord[0]) continue;
    images[0] = t[rep];
    hits = 0;
    recurse(recurse, 1);
    total += BigNat(static_cast<unsigned long>(hits)) * static_cast<unsigned long>(cc.sizes[c]);
  }
  return total;
}

}  // namespace rmaps
