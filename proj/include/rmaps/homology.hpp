#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "rmaps/algebra.hpp"
#include "rmaps/config.hpp"
#include "rmaps/mapcore.hpp"

namespace rmaps {

// Epimorphism from the extended triangle group with exponents (2, M, N) onto the triple's group,
// sending the reflections A, B, C to a, b, c.
struct TriangleTarget {
  MapTriple triple;
  std::uint64_t M = 0, N = 0;
};

// Cayley action of the group on itself through A, B, C (generator 0, 1, 2).
struct CosetTable {
  std::size_t index = 0;
  std::array<std::vector<std::uint32_t>, 3> actions;
  // Breadth-first spanning tree rooted at coset 0; the root's parent is itself.
  std::vector<std::uint32_t> parent;
  std::vector<std::uint8_t> parent_gen;
};

// scan_order fixes the order in which generators are tried during the tree search.
CosetTable cayley_coset_table(const TriangleTarget& t, const Budgets& budgets = {},
                              std::array<int, 3> scan_order = {0, 1, 2});

struct KernelPresentation {
  std::size_t n_generators = 0;
  SparseIntMatrix relation_matrix;
  // Genus 2 - chi of the smooth quotient surface and number of branch points.
  std::uint64_t genus_g = 0;
  std::uint64_t branch_u = 0;
};

KernelPresentation reidemeister_schreier(const CosetTable& table, std::uint64_t M, std::uint64_t N);
// Variant filling genus and branch data from the target.
KernelPresentation reidemeister_schreier(const CosetTable& table, const TriangleTarget& t);

SnfResult kernel_abelianization(const KernelPresentation& pres, const Budgets& budgets = {});

struct RankCheck {
  std::uint64_t expected = 0;
  // g - 1 + u computed from the map's counts, which must agree with `expected`.
  std::uint64_t expected_from_signature = 0;
  std::uint64_t computed = 0;
  std::size_t matrix_rows = 0, matrix_cols = 0;
  bool pass = false;
};

RankCheck branched_rank_check(const MapTriple& base, std::uint64_t r, const Budgets& budgets = {});

// K / K'K^r for the kernel K of the target epimorphism, as a module for the conjugation action.
struct KernelModule {
  std::uint64_t r = 0;
  std::size_t dim = 0;
  // Action of A, B, C on row vectors, each dim x dim row-major.
  std::array<std::vector<std::uint32_t>, 3> action;
  // Image in K / K'K^r of the Schreier generator of edge (coset, generator), at index 3 * coset + generator.
  std::vector<std::vector<std::uint32_t>> edge_image;
  CosetTable table;
};

KernelModule kernel_module(const TriangleTarget& t, std::uint64_t r, const Budgets& budgets = {});

// Quotients of the extended triangle group by K'K^r W for invariant subspaces W of codimension
// quotient_dim, realized as permutation groups on |G| r^quotient_dim points. Only codimension
// at most 2 or W = 0 is supported.
std::vector<MapTriple> elementary_covers(const TriangleTarget& t, std::uint64_t r, std::size_t quotient_dim,
                                         std::size_t limit, const Budgets& budgets = {});

// s^(1 - chi) chi.
BigInt cover_characteristic(const BigInt& chi, std::uint64_t s);
// alpha (1 + r^d) + d.
BigNat cover_exponent(std::uint64_t r, std::uint64_t d, std::uint64_t alpha);

}  // namespace rmaps
