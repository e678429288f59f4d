#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rmaps/algebra.hpp"
#include "rmaps/config.hpp"
#include "rmaps/errors.hpp"
#include "rmaps/permgroup.hpp"

namespace rmaps {

// Reasons a candidate triple is not a non-orientable (2,m,n)* generating triple.
enum class StarFailure { degree_mismatch, not_involution, ac_relation, degenerate, not_generating, orientable };
std::string to_string(StarFailure f);

class StarGroupError : public ContractError {
public:
  StarGroupError(StarFailure reason, const std::string& what) : ContractError(what), reason_(reason) {}
  StarFailure reason() const noexcept { return reason_; }

private:
  StarFailure reason_;
};

struct MapTriple {
  PermGroup group;
  Perm a, b, c;
  std::uint64_t m = 0;
  std::uint64_t n = 0;
  BigInt chi;

  BigNat order() const { return group.order(); }
  // Swaps a and c, exchanging the roles of m and n.
  MapTriple dual() const;
};

struct MapCertificate {
  BigNat order;
  std::uint64_t m = 0, n = 0;
  BigInt chi;
  bool non_orientable = true;
  bool degenerate = false;
  BigNat vertices, edges, faces;
  std::optional<std::pair<BigInt, unsigned>> chi_prime_power;
  std::string census_label;
};

struct QuotientData {
  std::uint64_t m_bar = 0, n_bar = 0, m_star = 0, n_star = 0;
  std::uint64_t m_o = 0, n_o = 0, m_1 = 0, n_1 = 0;
};

BigInt euler_characteristic(const BigNat& order, std::uint64_t m, std::uint64_t n);

MapCertificate map_counts(const MapTriple& t);

MapTriple verify_star_group(const PermGroup& g, const Perm& a, const Perm& b, const Perm& c);

// Orders of abN and bcN in G/O(G) and G/N.
QuotientData quotient_data(const MapTriple& t, const NormalSubgroupHandle& n, const Budgets& budgets = {});

struct LemmaCheck {
  std::string name;
  bool pass = true;
  bool applicable = true;
  std::string witness;
};

struct StructuralReport {
  BigInt chi;
  std::vector<LemmaCheck> checks;
  bool all_pass() const;
};

// chi_override replaces the triple's own characteristic (negative controls).
StructuralReport verify_structural_lemmas(const MapTriple& t, const std::optional<BigInt>& chi_override = std::nullopt,
                                          const Budgets& budgets = {});

struct MapClass {
  MapTriple representative;
  std::uint64_t m = 0, n = 0;
  BigInt chi;
  bool hyperbolic = false;
  bool self_dual = false;
  // Ordered generating triples of this type in the whole group.
  BigNat triple_count;
};

struct CensusResult {
  BigNat group_order;
  BigNat automorphism_count;
  // Aut(G)-orbits of ordered triples, one entry per orbit, sorted by (m, n) then discovery order.
  std::vector<MapClass> classes;
  // Ordered types (m, n) whose generating triples were rejected as orientable, with triple counts.
  std::vector<std::pair<std::pair<std::uint64_t, std::uint64_t>, BigNat>> orientable_rejected;

  // Number of classes of the ordered type (m, n).
  std::size_t count(std::uint64_t m, std::uint64_t n) const;
};

CensusResult classify_maps_for_group(const PermGroup& g, const Budgets& budgets = {});

// One candidate (a, b, c) given as element-table indexes, with a fixed by the caller.
struct SliceTriple {
  std::uint32_t a = 0, b = 0, c = 0;
  std::uint64_t m = 0, n = 0;
  bool orientable = false;
};

// All triples with first entry `a` that generate g; orientable ones are flagged, not dropped.
// Zero m or n means "any".
std::vector<SliceTriple> star_triples_with_a(const PermGroup& g, std::uint32_t a, std::uint64_t m, std::uint64_t n,
                                             const Budgets& budgets = {});

}  // namespace rmaps
