#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rmaps/algebra.hpp"
#include "rmaps/config.hpp"
#include "rmaps/perm.hpp"

namespace rmaps {

// Explicit list of all elements of a small group, with O(1) lookup of an element's index.
class ElementTable {
public:
  ElementTable(std::size_t degree, const std::vector<Perm>& generators, std::uint64_t cap);

  std::size_t size() const { return elems_.size(); }
  const Perm& operator[](std::uint32_t i) const { return elems_[i]; }
  const std::vector<Perm>& elements() const { return elems_; }
  std::optional<std::uint32_t> find(const Perm& p) const;
  // Throws ContractError when p is not in the group.
  std::uint32_t index(const Perm& p) const;
  std::uint32_t mul(std::uint32_t i, std::uint32_t j) const;
  std::uint32_t inv(std::uint32_t i) const;
  std::uint64_t order(std::uint32_t i) const { return orders_[i]; }

private:
  void insert(Perm p);
  std::vector<Perm> elems_;
  std::vector<std::uint64_t> orders_;
  std::vector<std::uint32_t> slots_;
  std::size_t mask_ = 0;
};

struct ConjugacyClasses {
  std::vector<std::uint32_t> class_of;  // element index -> class number
  std::vector<std::uint32_t> reps;      // first element of each class in table order
  std::vector<std::uint64_t> sizes;
};

struct StabChain;

class PermGroup {
public:
  PermGroup();
  PermGroup(std::size_t degree, std::vector<Perm> generators);
  // The order is known by construction and is not recomputed.
  static PermGroup with_order(std::size_t degree, std::vector<Perm> generators, BigNat order);

  std::size_t degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }
  Perm identity() const { return Perm::identity(degree_); }

  BigNat order() const;
  std::uint64_t order_u64() const { return to_u64(order()); }
  bool is_trivial() const { return order() == 1; }
  bool contains(const Perm& p) const;
  // Base points of the stabilizer chain.
  std::vector<Point> base() const;

  const ElementTable& elements(std::uint64_t cap = Budgets{}.order_cap) const;
  const ConjugacyClasses& classes(std::uint64_t cap = Budgets{}.order_cap) const;

  PermGroup subgroup(std::vector<Perm> generators) const;

private:
  struct Cache;
  const StabChain& chain() const;
  std::size_t degree_ = 1;
  std::vector<Perm> gens_;
  std::shared_ptr<Cache> cache_;
};

std::uint64_t element_order(const PermGroup& g, const Perm& x);

struct NormalSubgroupHandle {
  PermGroup ambient;
  PermGroup subgroup;
  const std::vector<Perm>& generators() const { return subgroup.generators(); }
  BigNat order() const { return subgroup.order(); }
};

NormalSubgroupHandle normal_closure(const PermGroup& g, const std::vector<Perm>& seeds);
// Throws ContractError unless the subgroup generated by gens is normal in g.
NormalSubgroupHandle as_normal_subgroup(const PermGroup& g, const std::vector<Perm>& gens);

NormalSubgroupHandle odd_core(const PermGroup& g, const Budgets& budgets = {});

enum class Sylow2Shape { trivial, cyclic, klein, dihedral, other };
std::string to_string(Sylow2Shape s);

struct Sylow2Info {
  Sylow2Shape shape = Sylow2Shape::trivial;
  std::uint64_t order = 1;
  PermGroup subgroup;
};

Sylow2Info sylow2(const PermGroup& g, const Budgets& budgets = {});
Sylow2Shape sylow2_shape(const PermGroup& g, const Budgets& budgets = {});

bool is_almost_sylow_cyclic(const PermGroup& g, const Budgets& budgets = {});

struct Quotient {
  PermGroup group;
  // Element index of the ambient table -> coset number.
  std::vector<std::uint32_t> coset_of;
  PermGroup ambient;
  // Image of an ambient element in the quotient.
  Perm project(const Perm& x) const;
};

Quotient quotient_group(const PermGroup& g, const NormalSubgroupHandle& n, const Budgets& budgets = {});

NormalSubgroupHandle frattini_of_pgroup(const PermGroup& g, std::uint64_t p);
// Rank of l / Phi(l) for a p-group l.
unsigned frattini_rank(const PermGroup& l, std::uint64_t p);

bool check_order_bound(const PermGroup& g, const NormalSubgroupHandle& l, std::uint64_t p,
                       const Budgets& budgets = {});

// Breadth-first spanning tree of a group's Cayley graph for a chosen generating tuple.
class CayleyWalk {
public:
  CayleyWalk(const ElementTable& table, std::vector<Perm> gens);

  std::size_t size() const { return order_.size(); }
  std::size_t arity() const { return gens_.size(); }
  const std::vector<Perm>& gens() const { return gens_; }
  // Visit order of element indexes; entry 0 is the identity.
  const std::vector<std::uint32_t>& visit_order() const { return order_; }
  std::uint32_t parent(std::uint32_t x) const { return parent_[x]; }
  std::uint32_t parent_gen(std::uint32_t x) const { return parent_gen_[x]; }
  // Index of element x multiplied on the right by generator s.
  std::uint32_t next(std::uint32_t s, std::uint32_t x) const { return next_[s][x]; }

private:
  std::vector<Perm> gens_;
  std::vector<std::uint32_t> order_, parent_, parent_gen_;
  std::vector<std::vector<std::uint32_t>> next_;
};

// Images of every element under the map sending walk generators to `images`, or empty when
// that map is not a well-defined homomorphism into the table's group.
std::vector<std::uint32_t> extend_homomorphism(const CayleyWalk& walk, const ElementTable& target,
                                               const std::vector<Perm>& images);
bool extends_to_automorphism(const CayleyWalk& walk, const ElementTable& table, const std::vector<Perm>& images);

BigNat count_automorphisms(const PermGroup& g, const std::array<Perm, 3>& triple, const Budgets& budgets = {});
BigNat count_automorphisms(const PermGroup& g, const std::vector<Perm>& generating_tuple,
                           const Budgets& budgets = {});

}  // namespace rmaps
