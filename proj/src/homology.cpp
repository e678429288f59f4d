#include "rmaps/homology.hpp"

#include <algorithm>
#include <set>

#include "rmaps/errors.hpp"

namespace rmaps {

CosetTable cayley_coset_table(const TriangleTarget& t, const Budgets& budgets, std::array<int, 3> scan_order) {
  const PermGroup& g = t.triple.group;
  if (g.order() > budgets.homology_cap)
    throw ResourceError("group order " + to_string(g.order()) + " exceeds the homology budget " +
                        std::to_string(budgets.homology_cap));
  if (t.M == 0 || t.N == 0 || t.M % t.triple.m || t.N % t.triple.n)
    throw ContractError("triangle exponents must be multiples of the triple's orders");
  std::array<int, 3> seen{};
  for (int s : scan_order) {
    if (s < 0 || s > 2 || seen[s]) throw ParameterError("scan order must permute 0, 1, 2");
    seen[s] = 1;
  }
  const ElementTable& et = g.elements(budgets.homology_cap);
  CosetTable ct;
  ct.index = et.size();
  const std::array<const Perm*, 3> gens{&t.triple.a, &t.triple.b, &t.triple.c};
  const std::uint32_t id = et.index(g.identity());
  // Renumber so that the identity is coset 0 and the rest follow the tree search.
  std::vector<std::uint32_t> coset(ct.index, UINT32_MAX), elem;
  coset[id] = 0;
  elem.push_back(id);
  ct.parent.assign(ct.index, 0);
  ct.parent_gen.assign(ct.index, 0);
  std::vector<Point> buf;
  std::array<std::vector<std::uint32_t>, 3> by_elem;
  for (auto& v : by_elem) v.assign(ct.index, 0);
  for (std::size_t h = 0; h < elem.size(); ++h) {
    const std::uint32_t x = elem[h];
    for (int s : scan_order) {
      compose_into(et[x], *gens[s], buf);
      const std::uint32_t y = et.index(Perm(buf));
      by_elem[s][x] = y;
      if (coset[y] == UINT32_MAX) {
        coset[y] = static_cast<std::uint32_t>(elem.size());
        ct.parent[coset[y]] = static_cast<std::uint32_t>(h);
        ct.parent_gen[coset[y]] = static_cast<std::uint8_t>(s);
        elem.push_back(y);
      }
    }
  }
  if (elem.size() != ct.index) throw ContractError("a, b, c do not generate the group");
  for (int s = 0; s < 3; ++s) {
    ct.actions[s].assign(ct.index, 0);
    for (std::uint32_t x = 0; x < ct.index; ++x) ct.actions[s][coset[x]] = coset[by_elem[s][x]];
  }
  return ct;
}

KernelPresentation reidemeister_schreier(const CosetTable& table, std::uint64_t M, std::uint64_t N) {
  const std::size_t n = table.index;
  if (n == 0 || table.parent.size() != n || table.parent_gen.size() != n)
    throw ContractError("inconsistent coset table");
  for (const auto& act : table.actions)
    if (act.size() != n) throw ContractError("inconsistent coset table");
  for (std::uint32_t x = 1; x < n; ++x)
    if (table.actions[table.parent_gen[x]][table.parent[x]] != x) throw ContractError("spanning tree disagrees with the table");

  // Column of each non-tree edge (coset, generator); tree edges map to UINT32_MAX.
  std::array<std::vector<std::uint32_t>, 3> column;
  for (auto& c : column) c.assign(n, 0);
  for (std::uint32_t x = 1; x < n; ++x) column[table.parent_gen[x]][table.parent[x]] = UINT32_MAX;
  std::uint32_t cols = 0;
  for (std::uint32_t x = 0; x < n; ++x)
    for (int s = 0; s < 3; ++s)
      if (column[s][x] != UINT32_MAX) column[s][x] = cols++;

  KernelPresentation pres;
  pres.n_generators = cols;
  pres.relation_matrix.cols = cols;
  const std::vector<std::pair<std::vector<int>, std::uint64_t>> relators{
      {{0}, 2}, {{1}, 2}, {{2}, 2}, {{0, 2}, 2}, {{0, 1}, M}, {{1, 2}, N}};
  pres.relation_matrix.rows.reserve(relators.size() * n);
  for (const auto& [word, power] : relators)
    for (std::uint32_t start = 0; start < n; ++start) {
      SparseIntMatrix::Row row;
      std::uint32_t y = start;
      for (std::uint64_t rep = 0; rep < power; ++rep)
        for (int s : word) {
          if (column[s][y] != UINT32_MAX) row.emplace_back(column[s][y], 1);
          y = table.actions[s][y];
        }
      if (y != start) throw ContractError("relator does not close up in the coset table");
      pres.relation_matrix.rows.push_back(std::move(row));
    }
  pres.relation_matrix.normalize();
  return pres;
}

KernelPresentation reidemeister_schreier(const CosetTable& table, const TriangleTarget& t) {
  KernelPresentation pres = reidemeister_schreier(table, t.M, t.N);
  const BigInt chi = t.triple.chi;
  pres.genus_g = to_u64(BigInt(2 - chi));
  const std::uint64_t order = table.index;
  std::uint64_t u = 0;
  if (t.M != t.triple.m) u += order / (2 * t.triple.m);
  if (t.N != t.triple.n) u += order / (2 * t.triple.n);
  pres.branch_u = u;
  return pres;
}

SnfResult kernel_abelianization(const KernelPresentation& pres, const Budgets& budgets) {
  std::size_t nnz = 0;
  for (const auto& r : pres.relation_matrix.rows) nnz += r.size();
  if (static_cast<double>(pres.relation_matrix.rows.size()) * static_cast<double>(pres.relation_matrix.cols) >
          budgets.matrix_cap &&
      nnz > budgets.matrix_cap)
    throw ResourceError("relation matrix exceeds the matrix budget");
  return smith_normal_form(pres.relation_matrix);
}

RankCheck branched_rank_check(const MapTriple& base, std::uint64_t r, const Budgets& budgets) {
  if (r < 3 || !is_prime(r)) throw ParameterError("branch order must be an odd prime");
  if (sgn(base.chi) >= 0) throw ParameterError("branched rank check needs a base with negative characteristic");
  const TriangleTarget target{base, r * base.m, r * base.n};
  const CosetTable table = cayley_coset_table(target, budgets);
  const KernelPresentation pres = reidemeister_schreier(table, target);
  RankCheck out;
  const std::uint64_t order = table.index;
  out.expected = 1 + order / 4;
  out.expected_from_signature = pres.genus_g - 1 + pres.branch_u;
  out.matrix_rows = pres.relation_matrix.rows.size();
  out.matrix_cols = pres.relation_matrix.cols;
  out.computed = pres.relation_matrix.cols - mod_p_rank(pres.relation_matrix, r);
  out.pass = out.computed == out.expected && out.expected_from_signature == out.expected;
  return out;
}

namespace {

using Vec = std::vector<std::uint32_t>;

std::uint32_t inv_mod(std::uint32_t x, std::uint32_t p) {
  std::uint64_t acc = 1, base = x;
  for (std::uint64_t e = p - 2; e; e >>= 1, base = base * base % p)
    if (e & 1) acc = acc * base % p;
  return static_cast<std::uint32_t>(acc);
}

// Reduced row echelon basis of a subspace given by spanning vectors; returns the rows.
std::vector<Vec> echelon(std::vector<Vec> rows, std::uint32_t p) {
  std::vector<Vec> out;
  if (rows.empty()) return out;
  const std::size_t n = rows[0].size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    const std::uint64_t iv = inv_mod(rows[rank][col], p);
    for (auto& x : rows[rank]) x = static_cast<std::uint32_t>(x * iv % p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][col] == 0) continue;
      const std::uint64_t f = rows[i][col];
      for (std::size_t j = 0; j < n; ++j)
        if (rows[rank][j]) rows[i][j] = static_cast<std::uint32_t>((rows[i][j] + (p - f) * rows[rank][j]) % p);
    }
    ++rank;
  }
  rows.resize(rank);
  return rows;
}

// M u for a column vector u.
Vec apply_column(const std::vector<std::uint32_t>& m, const Vec& u, std::uint32_t p) {
  const std::size_t n = u.size();
  Vec out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t acc = 0;
    for (std::size_t j = 0; j < n; ++j) acc += static_cast<std::uint64_t>(m[i * n + j]) * u[j];
    out[i] = static_cast<std::uint32_t>(acc % p);
  }
  return out;
}

std::vector<Vec> spin(const Vec& u, const std::array<std::vector<std::uint32_t>, 3>& action, std::uint32_t p,
                      std::size_t max_dim) {
  std::vector<Vec> basis = echelon({u}, p);
  std::vector<Vec> queue{u};
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (const auto& m : action) {
      Vec w = apply_column(m, queue[h], p);
      std::vector<Vec> grown = basis;
      grown.push_back(w);
      grown = echelon(std::move(grown), p);
      if (grown.size() > basis.size()) {
        basis = std::move(grown);
        if (basis.size() > max_dim) return basis;
        queue.push_back(std::move(w));
      }
    }
  return basis;
}

}  // namespace

KernelModule kernel_module(const TriangleTarget& t, std::uint64_t r, const Budgets& budgets) {
  if (r < 3 || r > 65521 || !is_prime(r)) throw ParameterError("module prime must be an odd prime below 2^16");
  const auto p = static_cast<std::uint32_t>(r);
  KernelModule km;
  km.r = r;
  km.table = cayley_coset_table(t, budgets);
  const CosetTable& ct = km.table;
  const KernelPresentation pres = reidemeister_schreier(ct, t.M, t.N);
  const std::size_t cols = pres.n_generators;
  if (static_cast<double>(pres.relation_matrix.rows.size()) * static_cast<double>(cols) > budgets.matrix_cap)
    throw ResourceError("relation matrix exceeds the matrix budget");

  std::set<SparseIntMatrix::Row> distinct(pres.relation_matrix.rows.begin(), pres.relation_matrix.rows.end());
  std::vector<Vec> dense;
  for (const auto& row : distinct) {
    Vec v(cols, 0);
    for (const auto& [c, x] : row) v[c] = static_cast<std::uint32_t>(((x % static_cast<std::int64_t>(p)) + p) % p);
    dense.push_back(std::move(v));
  }
  const std::vector<Vec> rref = echelon(std::move(dense), p);
  std::vector<std::size_t> pivot_row(cols, SIZE_MAX);
  for (std::size_t i = 0; i < rref.size(); ++i)
    for (std::size_t c = 0; c < cols; ++c)
      if (rref[i][c]) {
        pivot_row[c] = i;
        break;
      }
  std::vector<std::size_t> free_index(cols, SIZE_MAX);
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < cols; ++c)
    if (pivot_row[c] == SIZE_MAX) {
      free_index[c] = free_cols.size();
      free_cols.push_back(c);
    }
  km.dim = free_cols.size();
  // Image of each Schreier generator column in the quotient basis.
  std::vector<Vec> col_image(cols, Vec(km.dim, 0));
  for (std::size_t c = 0; c < cols; ++c) {
    if (free_index[c] != SIZE_MAX) {
      col_image[c][free_index[c]] = 1;
      continue;
    }
    const Vec& row = rref[pivot_row[c]];
    for (std::size_t f = 0; f < km.dim; ++f) {
      const std::uint32_t x = row[free_cols[f]];
      col_image[c][f] = x ? p - x : 0;
    }
  }

  const std::size_t n = ct.index;
  // Column number of each non-tree edge, mirroring reidemeister_schreier.
  std::vector<std::uint32_t> column(3 * n, 0);
  for (std::uint32_t x = 1; x < n; ++x) column[3 * ct.parent[x] + ct.parent_gen[x]] = UINT32_MAX;
  std::vector<std::pair<std::uint32_t, int>> edge_of_col;
  for (std::uint32_t x = 0; x < n; ++x)
    for (int s = 0; s < 3; ++s)
      if (column[3 * x + s] != UINT32_MAX) {
        column[3 * x + s] = static_cast<std::uint32_t>(edge_of_col.size());
        edge_of_col.emplace_back(x, s);
      }
  km.edge_image.assign(3 * n, Vec(km.dim, 0));
  for (std::size_t e = 0; e < 3 * n; ++e)
    if (column[e] != UINT32_MAX) km.edge_image[e] = col_image[column[e]];

  auto path = [&](std::uint32_t x) {
    std::vector<int> w;
    while (x != 0) {
      w.push_back(ct.parent_gen[x]);
      x = ct.parent[x];
    }
    std::reverse(w.begin(), w.end());
    return w;
  };
  // Rewrites a word of involutive letters starting at coset 0 into the quotient.
  auto rewrite = [&](const std::vector<int>& word) {
    Vec acc(km.dim, 0);
    std::uint32_t y = 0;
    for (int s : word) {
      const Vec& im = km.edge_image[3 * y + s];
      for (std::size_t i = 0; i < km.dim; ++i) acc[i] = (acc[i] + im[i]) % p;
      y = ct.actions[s][y];
    }
    if (y != 0) throw InternalError("conjugated Schreier generator left the kernel");
    return acc;
  };
  for (int s = 0; s < 3; ++s) {
    km.action[s].assign(km.dim * km.dim, 0);
    for (std::size_t f = 0; f < km.dim; ++f) {
      const auto [x, g] = edge_of_col[free_cols[f]];
      std::vector<int> word{s};
      for (int l : path(x)) word.push_back(l);
      word.push_back(g);
      const auto back = path(ct.actions[g][x]);
      word.insert(word.end(), back.rbegin(), back.rend());
      word.push_back(s);
      const Vec img = rewrite(word);
      for (std::size_t j = 0; j < km.dim; ++j) km.action[s][f * km.dim + j] = img[j];
    }
  }
  return km;
}

std::vector<MapTriple> elementary_covers(const TriangleTarget& t, std::uint64_t r, std::size_t quotient_dim,
                                         std::size_t limit, const Budgets& budgets) {
  const KernelModule km = kernel_module(t, r, budgets);
  const auto p = static_cast<std::uint32_t>(r);
  const std::size_t dim = km.dim;
  if (quotient_dim > dim) return {};
  const std::size_t n = km.table.index;
  const BigNat degree = BigNat(static_cast<unsigned long>(n)) * big_pow(static_cast<unsigned long>(r), quotient_dim);
  if (degree > budgets.order_cap) throw ResourceError("cover degree " + to_string(degree) + " exceeds the order budget");

  // Column action u -> M u on the dual; invariant subspaces there are annihilators of invariant W.
  std::vector<std::vector<Vec>> duals;
  if (quotient_dim == dim) {
    std::vector<Vec> basis;
    for (std::size_t i = 0; i < dim; ++i) {
      Vec e(dim, 0);
      e[i] = 1;
      basis.push_back(std::move(e));
    }
    duals.push_back(std::move(basis));
  } else if (quotient_dim >= 1 && quotient_dim <= 2) {
    const BigNat space = big_pow(static_cast<unsigned long>(r), dim);
    if (space > 4000000) throw ResourceError("module too large for subspace enumeration");
    const std::uint64_t total = to_u64(space);
    std::set<std::vector<Vec>> seen;
    std::vector<Vec> lines;
    for (std::uint64_t code = 1; code < total; ++code) {
      Vec u(dim);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < dim; ++i) {
        u[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      std::size_t lead = 0;
      while (u[lead] == 0) ++lead;
      if (u[lead] != 1) continue;
      const std::vector<Vec> sub = spin(u, km.action, p, quotient_dim);
      if (sub.size() > quotient_dim) continue;
      if (sub.size() == 1 && seen.insert(sub).second) lines.push_back(sub[0]);
      if (sub.size() == quotient_dim) seen.insert(sub);
    }
    for (std::size_t i = 0; quotient_dim == 2 && i < lines.size(); ++i)
      for (std::size_t j = i + 1; j < lines.size(); ++j) seen.insert(echelon({lines[i], lines[j]}, p));
    for (const auto& sub : seen)
      if (sub.size() == quotient_dim) duals.push_back(sub);
  } else {
    throw ParameterError("cover quotient dimension must be 1, 2 or the full module dimension");
  }

  const std::size_t deg = to_u64(degree);
  const std::size_t fibre = deg / n;
  std::vector<MapTriple> out;
  for (const auto& u : duals) {
    if (out.size() >= limit) break;
    std::array<std::vector<Point>, 3> img;
    for (int s = 0; s < 3; ++s) {
      img[s].resize(deg);
      for (std::uint32_t x = 0; x < n; ++x) {
        const Vec& gamma = km.edge_image[3 * x + s];
        std::vector<std::uint32_t> shift(quotient_dim, 0);
        for (std::size_t i = 0; i < quotient_dim; ++i) {
          std::uint64_t acc = 0;
          for (std::size_t j = 0; j < dim; ++j) acc += static_cast<std::uint64_t>(gamma[j]) * u[i][j];
          shift[i] = static_cast<std::uint32_t>(acc % p);
        }
        const std::uint32_t y = km.table.actions[s][x];
        for (std::size_t q = 0; q < fibre; ++q) {
          std::size_t code = q, outcode = 0, scale = 1;
          for (std::size_t i = 0; i < quotient_dim; ++i) {
            outcode += ((code % p + shift[i]) % p) * scale;
            code /= p;
            scale *= p;
          }
          img[s][x * fibre + q] = static_cast<Point>(y * fibre + outcode);
        }
      }
    }
    const Perm a(img[0]), b(img[1]), c(img[2]);
    const PermGroup g(deg, {a, b, c});
    if (g.order() != degree) throw InternalError("cover group has unexpected order " + to_string(g.order()));
    try {
      out.push_back(verify_star_group(g, a, b, c));
    } catch (const StarGroupError&) {
    }
  }
  return out;
}

BigInt cover_characteristic(const BigInt& chi, std::uint64_t s) {
  if (sgn(chi) >= 0) throw ParameterError("cover characteristic needs chi < 0");
  if (s == 0 || s % 2 == 0) throw ParameterError("cover degree parameter s must be odd and positive");
  const BigInt e = 1 - chi;
  if (e > 50000000) throw ResourceError("cover characteristic exponent too large to expand");
  return big_pow(BigInt(static_cast<unsigned long>(s)), to_u64(e)) * chi;
}

BigNat cover_exponent(std::uint64_t r, std::uint64_t d, std::uint64_t alpha) {
  return BigNat(static_cast<unsigned long>(alpha)) * (1 + big_pow(BigInt(static_cast<unsigned long>(r)), d)) +
         BigNat(static_cast<unsigned long>(d));
}

}  // namespace rmaps
