#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rmaps/config.hpp"
#include "rmaps/field.hpp"
#include "rmaps/mapcore.hpp"
#include "rmaps/permgroup.hpp"

namespace rmaps {

// ------------------------------------------------------------ PSL2 / PGL2

enum class PglKind { psl, pgl };

// Points of P^1(F_q): index 0 is infinity = (1:0), index x+1 is (x:1).
class ProjectiveLine {
public:
  explicit ProjectiveLine(FieldCtx ctx) : ctx_(std::move(ctx)) {}
  const FieldCtx& ctx() const { return ctx_; }
  std::size_t size() const { return ctx_.q() + 1; }
  // Permutation induced by z -> (az + b)/(cz + d); the matrix must be invertible.
  Perm mobius(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) const;

private:
  FieldCtx ctx_;
};

PermGroup make_pgl2(const FieldCtx& ctx, PglKind kind);
PermGroup make_pgl2(std::uint32_t q, PglKind kind);

// ------------------------------------------------------------ triple search

struct TripleSearch {
  std::vector<MapTriple> triples;
  // True when every candidate was examined, so an empty list proves nonexistence.
  bool exhaustive = true;
};

TripleSearch find_triples(const PermGroup& g, std::uint64_t m, std::uint64_t n, std::size_t limit,
                          const Budgets& budgets = {});

// ------------------------------------------------------------ soluble families

// D_ell of order 2 ell, generated by two reflections whose product is a rotation of order ell.
PermGroup dihedral_group(std::uint64_t ell);

MapTriple build_h1(std::uint64_t ell);
MapTriple build_h2(std::uint64_t j, std::uint64_t k);
MapTriple build_h3(std::uint64_t ell);

PermGroup build_heisenberg();
PermGroup build_wreath_c3();
PermGroup cyclic_group(std::uint64_t n);
// Regular action of (C_p)^k on p^k points.
PermGroup elementary_abelian(std::uint32_t p, unsigned k);
PermGroup direct_product(const PermGroup& x, const PermGroup& y);

// ------------------------------------------------------------ split extensions

// k x k matrix over F_p in row-major order; vectors are rows and act by v -> v M.
using Matrix = std::vector<std::uint32_t>;

struct ModuleExtensionSpec {
  unsigned k = 0;
  std::uint32_t p = 3;
  // Images of the acting group's generators.
  std::vector<Matrix> matrices;
};

// N x| H with H acting through `action`, the images of H's generators as permutations of
// N's element-table indexes (each an automorphism of N).
PermGroup build_split_extension(const PermGroup& n, const PermGroup& acting, const std::vector<Perm>& action);

PermGroup build_module_extension(const PermGroup& acting, const ModuleExtensionSpec& spec);

std::vector<ModuleExtensionSpec> search_module_actions(const PermGroup& acting, std::uint32_t p, unsigned k,
                                                       const Budgets& budgets = {});

// Aut(N) as permutations of N's element-table indexes.
std::vector<Perm> automorphism_list(const PermGroup& n, const Budgets& budgets = {});

// Homomorphisms from `acting` into Aut(N), one per Aut(N)-conjugacy class.
std::vector<std::vector<Perm>> search_automorphism_actions(const PermGroup& acting, const PermGroup& n,
                                                           const Budgets& budgets = {});

// ------------------------------------------------------------ semidirect cells

struct SemidirectSpec {
  MapTriple base;
  // Index-2 subgroup H_0 of the base group.
  PermGroup h0;
  std::uint64_t ell = 1;
};

struct SemidirectCell {
  BigNat order;
  std::uint64_t m = 0, n = 0;
  BigInt chi;
  // True when ell multiplies n rather than m.
  bool dual_pattern = false;
  // Explicit permutations on ell + deg(H) points, present when ell is small enough to list.
  std::optional<MapTriple> triple;
};

// Largest ell for which the cell is materialized as permutations.
inline constexpr std::uint64_t kCellMaterializeCap = 1u << 22;
inline constexpr std::uint64_t kCellEllCap = std::uint64_t{1} << 40;

SemidirectCell build_semidirect_cell(const SemidirectSpec& spec);

// C_ell x| H with H \ H_0 inverting C_ell, on ell + deg(H) points; generator 0 is the ell-cycle.
PermGroup semidirect_cell_group(const PermGroup& h, const PermGroup& h0, std::uint64_t ell);

// A base triple of type (m, n) in h whose H_0 pattern supports a cell, or nothing.
std::optional<MapTriple> find_cell_base(const PermGroup& h, const PermGroup& h0, std::uint64_t m, std::uint64_t n,
                                        const Budgets& budgets = {});

}  // namespace rmaps
