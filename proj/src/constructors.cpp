#include "rmaps/constructors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_map>

#include "rmaps/algebra.hpp"
#include "rmaps/errors.hpp"

namespace rmaps {

// ------------------------------------------------------------ PSL2 / PGL2

Perm ProjectiveLine::mobius(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) const {
  const FieldCtx& f = ctx_;
  if (f.sub(f.mul(a, d), f.mul(b, c)) == 0) throw ParameterError("singular matrix has no projective action");
  std::vector<Point> img(size());
  img[0] = c == 0 ? 0 : f.mul(a, f.inv(c)) + 1;
  for (std::uint32_t z = 0; z < f.q(); ++z) {
    const std::uint32_t den = f.add(f.mul(c, z), d);
    const std::uint32_t num = f.add(f.mul(a, z), b);
    img[z + 1] = den == 0 ? 0 : f.mul(num, f.inv(den)) + 1;
  }
  return Perm(std::move(img));
}

PermGroup make_pgl2(const FieldCtx& ctx, PglKind kind) {
  if (ctx.q() < 5) throw ParameterError("PSL2/PGL2 constructor needs q >= 5");
  const ProjectiveLine line(ctx);
  const std::uint32_t w = ctx.primitive();
  const std::uint32_t one = 1, zero = 0, minus_one = ctx.neg(1);
  std::vector<Perm> gens;
  gens.push_back(line.mobius(one, one, zero, one));
  if (kind == PglKind::pgl) {
    gens.push_back(line.mobius(w, zero, zero, one));
    gens.push_back(line.mobius(zero, one, one, zero));
  } else {
    gens.push_back(line.mobius(ctx.mul(w, w), zero, zero, one));
    gens.push_back(line.mobius(zero, minus_one, one, zero));
  }
  const std::uint64_t q = ctx.q();
  BigNat order = BigNat(static_cast<unsigned long>(q)) * (q * q - 1);
  if (kind == PglKind::psl) order /= 2;
  PermGroup g(line.size(), std::move(gens));
  if (g.order() != order) throw InternalError("projective group has unexpected order " + to_string(g.order()));
  return g;
}

PermGroup make_pgl2(std::uint32_t q, PglKind kind) {
  const auto pp = as_prime_power(BigNat(static_cast<unsigned long>(q)));
  if (!pp || pp->first == 2) throw ParameterError("q must be an odd prime power");
  return make_pgl2(FieldCtx(static_cast<std::uint32_t>(to_u64(pp->first)), pp->second), kind);
}

// ------------------------------------------------------------ triple search

TripleSearch find_triples(const PermGroup& g, std::uint64_t m, std::uint64_t n, std::size_t limit,
                          const Budgets& budgets) {
  if (g.order() > budgets.search_cap)
    throw ResourceError("group order " + to_string(g.order()) + " exceeds the search budget " +
                            std::to_string(budgets.search_cap),
                        true);
  const ElementTable& t = g.elements(budgets.order_cap);
  const ConjugacyClasses& cc = g.classes(budgets.order_cap);
  TripleSearch out;
  for (std::uint32_t a : cc.reps) {
    if (t.order(a) != 2) continue;
    for (const SliceTriple& s : star_triples_with_a(g, a, m, n, budgets)) {
      if (s.orientable) continue;
      if (out.triples.size() >= limit) {
        out.exhaustive = false;
        return out;
      }
      MapTriple tr;
      tr.group = g;
      tr.a = t[s.a];
      tr.b = t[s.b];
      tr.c = t[s.c];
      tr.m = s.m;
      tr.n = s.n;
      tr.chi = euler_characteristic(g.order(), s.m, s.n);
      out.triples.push_back(std::move(tr));
    }
  }
  return out;
}

// ------------------------------------------------------------ soluble families

namespace {

// Reflections i -> -i and i -> 1 - i on ell points (or the Klein four-group for ell = 2).
std::pair<Perm, Perm> dihedral_reflections(std::uint64_t ell) {
  if (ell == 1) {
    const Perm s = Perm::from_cycles(2, {{0, 1}});
    return {s, s};
  }
  if (ell == 2) return {Perm::from_cycles(4, {{0, 1}, {2, 3}}), Perm::from_cycles(4, {{0, 2}, {1, 3}})};
  if (ell > kCellMaterializeCap) throw ResourceError("dihedral degree too large to list");
  std::vector<Point> s0(ell), s1(ell);
  for (std::uint64_t i = 0; i < ell; ++i) {
    s0[i] = static_cast<Point>((ell - i) % ell);
    s1[i] = static_cast<Point>((ell + 1 - i) % ell);
  }
  return {Perm(std::move(s0)), Perm(std::move(s1))};
}

}  // namespace

PermGroup dihedral_group(std::uint64_t ell) {
  if (ell == 0) throw ParameterError("dihedral group needs ell >= 1");
  auto [s0, s1] = dihedral_reflections(ell);
  const std::size_t deg = s0.degree();
  return PermGroup::with_order(deg, {s0, s1}, BigNat(static_cast<unsigned long>(2 * ell)));
}

MapTriple build_h1(std::uint64_t ell) {
  if (ell < 2 || ell % 2) throw ParameterError("H1 needs an even ell >= 2");
  const PermGroup g = dihedral_group(ell);
  const Perm& b = g.generators()[0];
  const Perm& c = g.generators()[1];
  const Perm a = (b * c).pow(static_cast<std::int64_t>(ell / 2));
  return verify_star_group(g, a, b, c);
}

MapTriple build_h2(std::uint64_t j, std::uint64_t k) {
  if (j < 3 || k < 3 || j % 2 == 0 || k % 2 == 0) throw ParameterError("H2 needs odd j, k >= 3");
  if (gcd_u64(j, k) != 1) throw ParameterError("H2 needs coprime j and k");
  auto [sj0, sj1] = dihedral_reflections(j);
  auto [sk0, sk1] = dihedral_reflections(k);
  const Perm ij = Perm::identity(j), ik = Perm::identity(k);
  const Perm a = direct_sum(sj0, ik);
  const Perm b = direct_sum(sj1, sk0);
  const Perm c = direct_sum(ij, sk1);
  const PermGroup g = PermGroup::with_order(j + k, {a, b, c}, BigNat(static_cast<unsigned long>(4 * j * k)));
  return verify_star_group(g, a, b, c);
}

MapTriple build_h3(std::uint64_t ell) {
  if (ell % 6 != 3) throw ParameterError("H3 needs ell = 3 mod 6");
  auto [s0, s1] = dihedral_reflections(ell);
  // F_2^2 with vectors 0..3 under xor; v = 1, M_c swaps 2 and 3, M_b swaps 1 and 2.
  const Perm tv = Perm::from_cycles(4, {{0, 1}, {2, 3}});
  const Perm mc = Perm::from_cycles(4, {{2, 3}});
  const Perm mb = Perm::from_cycles(4, {{1, 2}});
  const Perm a = direct_sum(Perm::identity(ell), tv);
  const Perm b = direct_sum(s0, mb);
  const Perm c = direct_sum(s1, mc);
  const PermGroup g = PermGroup::with_order(ell + 4, {a, b, c}, BigNat(static_cast<unsigned long>(8 * ell)));
  return verify_star_group(g, a, b, c);
}

PermGroup build_heisenberg() {
  // (x, y, z)(x', y', z') = (x + x', y + y', z + z' + x y'), point index 9x + 3y + z.
  auto mul = [](int e, int f) {
    const int x = e / 9, y = e / 3 % 3, z = e % 3;
    const int x2 = f / 9, y2 = f / 3 % 3, z2 = f % 3;
    return ((x + x2) % 3) * 9 + ((y + y2) % 3) * 3 + (z + z2 + x * y2) % 3;
  };
  std::vector<Perm> gens;
  for (int g : {9, 3}) {
    std::vector<Point> img(27);
    for (int p = 0; p < 27; ++p) img[p] = static_cast<Point>(mul(p, g));
    gens.emplace_back(std::move(img));
  }
  return PermGroup::with_order(27, std::move(gens), BigNat(27));
}

PermGroup build_wreath_c3() {
  return PermGroup::with_order(
      9, {Perm::from_cycles(9, {{0, 1, 2}}), Perm::from_cycles(9, {{0, 3, 6}, {1, 4, 7}, {2, 5, 8}})}, BigNat(81));
}

PermGroup cyclic_group(std::uint64_t n) {
  if (n == 0 || n > kCellMaterializeCap) throw ParameterError("cyclic group order out of range");
  std::vector<Point> img(n);
  for (std::uint64_t i = 0; i < n; ++i) img[i] = static_cast<Point>((i + 1) % n);
  return PermGroup::with_order(n, {Perm(std::move(img))}, BigNat(static_cast<unsigned long>(n)));
}

PermGroup elementary_abelian(std::uint32_t p, unsigned k) {
  if (!is_prime(static_cast<std::uint64_t>(p))) throw ParameterError("elementary abelian group needs a prime");
  const std::uint64_t size = to_u64(big_pow(static_cast<unsigned long>(p), k));
  if (size > kCellMaterializeCap) throw ResourceError("elementary abelian group too large to list");
  std::vector<Perm> gens;
  std::uint64_t scale = 1;
  for (unsigned i = 0; i < k; ++i, scale *= p) {
    std::vector<Point> img(size);
    for (std::uint64_t v = 0; v < size; ++v) {
      const std::uint64_t digit = v / scale % p;
      img[v] = static_cast<Point>(v - digit * scale + (digit + 1) % p * scale);
    }
    gens.emplace_back(std::move(img));
  }
  if (gens.empty()) gens.push_back(Perm::identity(1));
  return PermGroup::with_order(std::max<std::uint64_t>(size, 1), std::move(gens),
                               BigNat(static_cast<unsigned long>(size)));
}

PermGroup direct_product(const PermGroup& x, const PermGroup& y) {
  std::vector<Perm> gens;
  const Perm ix = x.identity(), iy = y.identity();
  for (const Perm& g : x.generators()) gens.push_back(direct_sum(g, iy));
  for (const Perm& g : y.generators()) gens.push_back(direct_sum(ix, g));
  return PermGroup::with_order(x.degree() + y.degree(), std::move(gens), x.order() * y.order());
}

// ------------------------------------------------------------ split extensions

namespace {

// Images of every element of the walk's group under generators -> images, indexed by element
// table index; empty when the assignment does not extend to a homomorphism.
std::vector<Perm> represent(const CayleyWalk& walk, const std::vector<Perm>& images, std::size_t degree) {
  const auto& order = walk.visit_order();
  std::vector<Perm> rep(walk.size());
  rep[order[0]] = Perm::identity(degree);
  for (std::size_t i = 1; i < order.size(); ++i) {
    const std::uint32_t x = order[i];
    rep[x] = rep[walk.parent(x)] * images[walk.parent_gen(x)];
  }
  std::vector<Point> buf;
  for (std::uint32_t x : order)
    for (std::uint32_t s = 0; s < walk.arity(); ++s) {
      const std::uint32_t nx = walk.next(s, x);
      if (walk.parent(nx) == x && walk.parent_gen(nx) == s) continue;
      compose_into(rep[x], images[s], buf);
      if (buf != rep[nx].images()) return {};
    }
  return rep;
}

// N x| H on the points of X (where N acts regularly through `translations` and H through
// `action`), with H's own domain appended when the action has a kernel.
PermGroup assemble_extension(std::size_t x_size, const std::vector<Perm>& translations, const BigNat& n_order,
                             const PermGroup& acting, const std::vector<Perm>& action) {
  if (action.size() != acting.generators().size())
    throw ContractError("action needs one image per generator of the acting group");
  const ElementTable& ht = acting.elements();
  const CayleyWalk walk(ht, acting.generators());
  const std::vector<Perm> rep = represent(walk, action, x_size);
  if (rep.empty()) throw ContractError("action images do not satisfy the acting group's relations");
  bool faithful = true;
  for (std::uint32_t x = 0; x < rep.size(); ++x)
    if (rep[x].is_identity() && !ht[x].is_identity()) faithful = false;
  const std::size_t extra = faithful ? 0 : acting.degree();
  std::vector<Perm> gens;
  for (const Perm& t : translations) gens.push_back(extra ? t.extended(x_size + extra) : t);
  for (std::size_t i = 0; i < action.size(); ++i)
    gens.push_back(extra ? direct_sum(action[i], acting.generators()[i]) : action[i]);
  return PermGroup::with_order(x_size + extra, std::move(gens), n_order * acting.order());
}

std::uint32_t mod_mul(std::uint32_t x, std::uint32_t y, std::uint32_t p) {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(x) * y % p);
}

std::vector<std::uint32_t> to_digits(std::uint64_t v, std::uint32_t p, unsigned k) {
  std::vector<std::uint32_t> d(k);
  for (unsigned i = 0; i < k; ++i) {
    d[i] = static_cast<std::uint32_t>(v % p);
    v /= p;
  }
  return d;
}

std::uint64_t from_digits(const std::vector<std::uint32_t>& d, std::uint32_t p) {
  std::uint64_t v = 0;
  for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
  return v;
}

// v -> v M on the p^k vectors, coordinate i being base-p digit i.
Perm matrix_perm(const Matrix& m, std::uint32_t p, unsigned k) {
  const std::uint64_t size = to_u64(big_pow(static_cast<unsigned long>(p), k));
  std::vector<Point> img(size);
  for (std::uint64_t v = 0; v < size; ++v) {
    const auto d = to_digits(v, p, k);
    std::vector<std::uint32_t> out(k, 0);
    for (unsigned i = 0; i < k; ++i)
      for (unsigned j = 0; j < k; ++j) out[j] = (out[j] + mod_mul(d[i], m[i * k + j], p)) % p;
    img[v] = static_cast<Point>(from_digits(out, p));
  }
  return Perm(std::move(img));
}

Matrix perm_matrix(const Perm& g, std::uint32_t p, unsigned k) {
  Matrix m(k * k);
  std::uint64_t e = 1;
  for (unsigned i = 0; i < k; ++i, e *= p) {
    const auto row = to_digits(g[static_cast<Point>(e)], p, k);
    for (unsigned j = 0; j < k; ++j) m[i * k + j] = row[j];
  }
  return m;
}

bool invertible(Matrix m, std::uint32_t p, unsigned k) {
  for (unsigned col = 0; col < k; ++col) {
    unsigned piv = col;
    while (piv < k && m[piv * k + col] == 0) ++piv;
    if (piv == k) return false;
    for (unsigned j = 0; j < k; ++j) std::swap(m[col * k + j], m[piv * k + j]);
    std::uint32_t inv = 1;
    for (std::uint32_t e = p - 2, base = m[col * k + col]; e; e >>= 1, base = mod_mul(base, base, p))
      if (e & 1) inv = mod_mul(inv, base, p);
    for (unsigned r = col + 1; r < k; ++r) {
      const std::uint32_t f = mod_mul(m[r * k + col], inv, p);
      for (unsigned j = 0; j < k; ++j) m[r * k + j] = (m[r * k + j] + p - mod_mul(f, m[col * k + j], p)) % p;
    }
  }
  return true;
}

// Homomorphisms acting -> <targets>, one per conjugacy class of the target group, as index
// tuples into `targets` (which must list a whole group).
std::vector<std::vector<std::uint32_t>> search_actions(const PermGroup& acting, const std::vector<Perm>& targets,
                                                       const Budgets& budgets) {
  const std::vector<Perm>& hg = acting.generators();
  const std::size_t k = hg.size();
  const ElementTable& ht = acting.elements(budgets.order_cap);
  const CayleyWalk walk(ht, hg);
  std::vector<std::uint64_t> ord(k);
  std::vector<std::vector<std::uint64_t>> pair_ord(k, std::vector<std::uint64_t>(k, 1));
  for (std::size_t i = 0; i < k; ++i) {
    ord[i] = hg[i].order();
    for (std::size_t j = 0; j < i; ++j) pair_ord[j][i] = (hg[j] * hg[i]).order();
  }

  std::unordered_map<Perm, std::uint32_t, PermHash> index;
  for (std::uint32_t i = 0; i < targets.size(); ++i) index.emplace(targets[i], i);
  std::vector<std::uint64_t> tord(targets.size());
  for (std::uint32_t i = 0; i < targets.size(); ++i) tord[i] = targets[i].order();

  // Small generating set of the target group, then its conjugacy classes.
  const std::size_t deg = targets.front().degree();
  std::vector<Perm> tgens;
  PermGroup span(deg, {Perm::identity(deg)});
  for (const Perm& x : targets)
    if (!span.contains(x)) {
      tgens.push_back(x);
      span = PermGroup(deg, tgens);
      if (span.order() == targets.size()) break;
    }
  std::vector<std::uint32_t> class_of(targets.size(), UINT32_MAX);
  std::vector<std::uint32_t> class_reps;
  for (std::uint32_t i = 0; i < targets.size(); ++i) {
    if (class_of[i] != UINT32_MAX) continue;
    const auto cls = static_cast<std::uint32_t>(class_reps.size());
    class_reps.push_back(i);
    class_of[i] = cls;
    std::vector<std::uint32_t> queue{i};
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (const Perm& g : tgens) {
        const std::uint32_t y = index.at(conjugate(targets[queue[h]], g));
        if (class_of[y] == UINT32_MAX) {
          class_of[y] = cls;
          queue.push_back(y);
        }
      }
  }

  std::vector<std::vector<std::uint32_t>> cand(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& pool = i == 0 ? class_reps : std::vector<std::uint32_t>{};
    if (i == 0) {
      for (std::uint32_t x : pool)
        if (ord[0] % tord[x] == 0) cand[0].push_back(x);
    } else {
      for (std::uint32_t x = 0; x < targets.size(); ++x)
        if (ord[i] % tord[x] == 0) cand[i].push_back(x);
    }
  }

  std::vector<std::vector<std::uint32_t>> found;
  std::set<std::vector<std::uint32_t>> seen;
  std::vector<std::uint32_t> tuple(k);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == k) {
      if (seen.count(tuple)) return;
      std::vector<Perm> images;
      for (std::uint32_t x : tuple) images.push_back(targets[x]);
      if (represent(walk, images, deg).empty()) return;
      found.push_back(tuple);
      if (k == 0) return;
      for (const Perm& g : targets) {
        std::vector<std::uint32_t> conj(k);
        for (std::size_t s = 0; s < k; ++s) conj[s] = index.at(conjugate(targets[tuple[s]], g));
        if (conj[0] == tuple[0]) seen.insert(std::move(conj));
      }
      return;
    }
    for (std::uint32_t x : cand[i]) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        ok = pair_ord[j][i] % (targets[tuple[j]] * targets[x]).order() == 0;
      if (!ok) continue;
      tuple[i] = x;
      rec(i + 1);
    }
  };
  rec(0);
  return found;
}

}  // namespace

PermGroup build_split_extension(const PermGroup& n, const PermGroup& acting, const std::vector<Perm>& action) {
  const ElementTable& nt = n.elements();
  const std::size_t size = nt.size();
  for (const Perm& phi : action) {
    if (phi.degree() != size) throw ContractError("action image has the wrong degree");
    for (std::uint32_t x = 0; x < size; ++x)
      for (const Perm& g : n.generators()) {
        const std::uint32_t gi = nt.index(g);
        if (phi[nt.mul(x, gi)] != nt.mul(phi[x], phi[gi]))
          throw ContractError("action image is not an automorphism");
      }
  }
  std::vector<Perm> translations;
  for (const Perm& g : n.generators()) {
    const std::uint32_t gi = nt.index(g);
    std::vector<Point> img(size);
    for (std::uint32_t x = 0; x < size; ++x) img[x] = nt.mul(x, gi);
    translations.emplace_back(std::move(img));
  }
  return assemble_extension(size, translations, n.order(), acting, action);
}

PermGroup build_module_extension(const PermGroup& acting, const ModuleExtensionSpec& spec) {
  if (spec.k == 0) return acting;
  if (!is_prime(static_cast<std::uint64_t>(spec.p))) throw ParameterError("module prime is not prime");
  if (spec.matrices.size() != acting.generators().size())
    throw ContractError("module spec needs one matrix per generator");
  std::vector<Perm> action;
  for (const Matrix& m : spec.matrices) {
    if (m.size() != spec.k * spec.k) throw ContractError("matrix has the wrong shape");
    for (std::uint32_t x : m)
      if (x >= spec.p) throw ContractError("matrix entry out of range");
    if (!invertible(m, spec.p, spec.k)) throw ContractError("matrix is singular");
    action.push_back(matrix_perm(m, spec.p, spec.k));
  }
  const PermGroup v = elementary_abelian(spec.p, spec.k);
  return assemble_extension(v.degree(), v.generators(), v.order(), acting, action);
}

std::vector<ModuleExtensionSpec> search_module_actions(const PermGroup& acting, std::uint32_t p, unsigned k,
                                                       const Budgets& budgets) {
  if (!is_prime(static_cast<std::uint64_t>(p))) throw ParameterError("module prime is not prime");
  if (k == 0) return {ModuleExtensionSpec{0, p, std::vector<Matrix>(acting.generators().size())}};
  if (k > 4) throw ResourceError("module rank too large");
  BigNat gl = 1;
  const BigNat pk = big_pow(static_cast<unsigned long>(p), k);
  for (unsigned i = 0; i < k; ++i) gl *= pk - big_pow(static_cast<unsigned long>(p), i);
  if (gl > 200000) throw ResourceError("|GL_k(p)| = " + to_string(gl) + " exceeds the enumeration budget");
  std::vector<Perm> targets;
  const std::uint64_t codes = to_u64(big_pow(static_cast<unsigned long>(p), k * k));
  for (std::uint64_t code = 0; code < codes; ++code) {
    Matrix m = to_digits(code, p, k * k);
    if (invertible(m, p, k)) targets.push_back(matrix_perm(m, p, k));
  }
  std::vector<ModuleExtensionSpec> out;
  for (const auto& tuple : search_actions(acting, targets, budgets)) {
    ModuleExtensionSpec s{k, p, {}};
    for (std::uint32_t x : tuple) s.matrices.push_back(perm_matrix(targets[x], p, k));
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Perm> automorphism_list(const PermGroup& n, const Budgets& budgets) {
  const ElementTable& t = n.elements(budgets.order_cap);
  const std::vector<Perm>& gens = n.generators();
  const std::size_t k = gens.size();
  const CayleyWalk walk(t, gens);
  std::vector<std::vector<std::uint32_t>> cand(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::uint32_t x = 0; x < t.size(); ++x)
      if (t.order(x) == gens[i].order()) cand[i].push_back(x);
  std::vector<Perm> out;
  std::vector<Perm> images(k);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == k) {
      const auto img = extend_homomorphism(walk, t, images);
      if (img.empty()) return;
      std::vector<char> hit(t.size(), 0);
      for (std::uint32_t y : img) {
        if (hit[y]) return;
        hit[y] = 1;
      }
      out.emplace_back(img);
      if (out.size() > 200000) throw ResourceError("automorphism group exceeds the enumeration budget", true);
      return;
    }
    for (std::uint32_t x : cand[i]) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = (images[j] * t[x]).order() == (gens[j] * gens[i]).order();
      if (!ok) continue;
      images[i] = t[x];
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

std::vector<std::vector<Perm>> search_automorphism_actions(const PermGroup& acting, const PermGroup& n,
                                                           const Budgets& budgets) {
  const std::vector<Perm> auts = automorphism_list(n, budgets);
  std::vector<std::vector<Perm>> out;
  for (const auto& tuple : search_actions(acting, auts, budgets)) {
    std::vector<Perm> action;
    for (std::uint32_t x : tuple) action.push_back(auts[x]);
    out.push_back(std::move(action));
  }
  return out;
}

// ------------------------------------------------------------ semidirect cells

PermGroup semidirect_cell_group(const PermGroup& h, const PermGroup& h0, std::uint64_t ell) {
  if (ell == 0 || ell % 2 == 0) throw ParameterError("cell parameter ell must be odd");
  if (ell > kCellMaterializeCap) throw ResourceError("cell parameter ell too large to materialize");
  if (ell == 1) return h;
  const Perm s0 = dihedral_reflections(ell).first;
  std::vector<Point> zi(ell);
  for (std::uint64_t i = 0; i < ell; ++i) zi[i] = static_cast<Point>((i + 1) % ell);
  const Perm one = Perm::identity(ell);
  std::vector<Perm> gens{Perm(std::move(zi)).extended(ell + h.degree())};
  for (const Perm& g : h.generators()) gens.push_back(direct_sum(h0.contains(g) ? one : s0, g));
  return PermGroup::with_order(ell + h.degree(), std::move(gens), h.order() * BigNat(static_cast<unsigned long>(ell)));
}

SemidirectCell build_semidirect_cell(const SemidirectSpec& spec) {
  const MapTriple& base = spec.base;
  const std::uint64_t ell = spec.ell;
  if (ell == 0 || ell % 2 == 0) throw ParameterError("cell parameter ell must be odd");
  if (ell > kCellEllCap) throw ParameterError("cell parameter ell exceeds 2^40");
  const BigNat h = base.group.order();
  if (gcd(h, BigNat(static_cast<unsigned long>(ell))) != 1) throw ParameterError("ell must be coprime to |H|");
  if (spec.h0.degree() != base.group.degree() || spec.h0.order() * 2 != h)
    throw ContractError("H_0 is not an index-2 subgroup of the base group");
  for (const Perm& x : spec.h0.generators())
    if (!base.group.contains(x)) throw ContractError("H_0 is not contained in the base group");

  const bool out_a = !spec.h0.contains(base.a);
  const bool out_b = !spec.h0.contains(base.b);
  const bool out_c = !spec.h0.contains(base.c);
  if (!out_b || out_a == out_c)
    throw ContractError("base triple lacks the H_0 membership pattern (b outside, exactly one of a, c outside)");

  SemidirectCell cell;
  cell.dual_pattern = !out_a;
  cell.order = h * BigNat(static_cast<unsigned long>(ell));
  // zb inverts z; the product with the element of H_0 has order ell times its H-order.
  cell.m = cell.dual_pattern ? base.m : base.m * ell;
  cell.n = cell.dual_pattern ? base.n * ell : base.n;
  cell.chi = euler_characteristic(cell.order, cell.m, cell.n);

  if (ell == 1) {
    cell.triple = base;
  } else if (ell <= kCellMaterializeCap) {
    const Perm s0 = dihedral_reflections(ell).first;
    const Perm one = Perm::identity(ell);
    auto lift = [&](const Perm& x) { return direct_sum(spec.h0.contains(x) ? one : s0, x); };
    MapTriple t;
    t.group = semidirect_cell_group(base.group, spec.h0, ell);
    const Perm& z = t.group.generators()[0];
    t.a = lift(base.a);
    t.b = z * lift(base.b);
    t.c = lift(base.c);
    t.m = (t.a * t.b).order();
    t.n = (t.b * t.c).order();
    if (t.m != cell.m || t.n != cell.n) throw InternalError("materialized cell orders disagree with the analytic ones");
    t.chi = cell.chi;
    cell.triple = std::move(t);
  }
  return cell;
}

std::optional<MapTriple> find_cell_base(const PermGroup& h, const PermGroup& h0, std::uint64_t m, std::uint64_t n,
                                        const Budgets& budgets) {
  for (MapTriple& t : find_triples(h, m, n, SIZE_MAX, budgets).triples) {
    const bool out_a = !h0.contains(t.a), out_b = !h0.contains(t.b), out_c = !h0.contains(t.c);
    if (out_b && out_a != out_c) return std::move(t);
  }
  return std::nullopt;
}

}  // namespace rmaps
