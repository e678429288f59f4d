#include "rmaps/algebra.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "rmaps/errors.hpp"

namespace rmaps {

BigInt big_pow(const BigInt& base, unsigned long exp) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

BigInt big_pow(unsigned long base, unsigned long exp) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exp);
  return out;
}

std::string to_string(const BigInt& v) { return v.get_str(10); }

BigInt parse_bigint(const std::string& text) {
  BigInt v;
  if (text.empty() || v.set_str(text, 10) != 0) throw ParseError("not a decimal integer: '" + text + "'");
  return v;
}

std::uint64_t to_u64(const BigInt& v) {
  if (sgn(v) < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 64)
    throw ResourceError("value " + to_string(v) + " exceeds 64-bit range");
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, v.get_mpz_t());
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2u, 3u, 5u, 7u, 11u, 13u}) {
    if (n % d == 0) return n == d;
  }
  if (n < 1000000) {
    for (std::uint64_t d = 17; d * d <= n; d += 2)
      if (n % d == 0) return false;
    return true;
  }
  BigInt b;
  mpz_import(b.get_mpz_t(), 1, -1, sizeof(n), 0, 0, &n);
  return is_prime(b);
}

bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  // Below 2^64 GMP's test is BPSW, which has no known pseudoprimes there.
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  std::uint64_t g = std::gcd(a, b);
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a / g, b, &out)) throw ResourceError("lcm overflows 64 bits");
  return out;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<std::uint64_t> prime_divisors(const BigInt& n) {
  if (sgn(n) <= 0) throw ParameterError("prime_divisors needs a positive integer");
  if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 63) return prime_divisors(to_u64(n));
  BigInt rest = n;
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d < 10000000; d += (d == 2 ? 1 : 2)) {
    if (mpz_divisible_ui_p(rest.get_mpz_t(), d)) {
      out.push_back(d);
      while (mpz_divisible_ui_p(rest.get_mpz_t(), d)) rest /= d;
    }
    if (rest == 1) return out;
    if (BigInt(d) * d > rest) break;
  }
  if (rest == 1) return out;
  if (is_prime(rest) && mpz_sizeinbase(rest.get_mpz_t(), 2) <= 64) {
    out.push_back(to_u64(rest));
    return out;
  }
  throw ResourceError("cannot factor " + to_string(n) + " by trial division");
}

namespace {

BigInt rho_factor(const BigInt& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1; c < 200; ++c) {
    BigInt x = 2, y = 2, d = 1, q = 1, ys;
    const std::size_t m = 128;
    std::size_t r = 1;
    auto f = [&](const BigInt& v) {
      BigInt w = v * v + c;
      mpz_mod(w.get_mpz_t(), w.get_mpz_t(), n.get_mpz_t());
      return w;
    };
    do {
      x = y;
      for (std::size_t i = 0; i < r; ++i) y = f(y);
      std::size_t k = 0;
      do {
        ys = y;
        for (std::size_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = q * abs(x - y) % n;
        }
        mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && d == 1);
      r *= 2;
      if (r > (std::size_t{1} << 26)) throw ResourceError("factorization of " + to_string(n) + " did not finish");
    } while (d == 1);
    if (d == n) {
      do {
        ys = f(ys);
        BigInt diff = abs(x - ys);
        mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (d == 1);
    }
    if (d != n) return d;
  }
  throw ResourceError("factorization of " + to_string(n) + " did not finish");
}

void factor_into(BigInt n, std::vector<BigInt>& primes) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  const BigInt d = rho_factor(n);
  factor_into(d, primes);
  factor_into(n / d, primes);
}

}  // namespace

std::vector<std::pair<BigInt, unsigned>> factorize(const BigInt& n) {
  if (sgn(n) <= 0) throw ParameterError("factorize needs a positive integer");
  BigInt rest = n;
  std::vector<BigInt> primes;
  for (unsigned long d = 2; d < 10000 && rest > 1; ++d)
    while (mpz_divisible_ui_p(rest.get_mpz_t(), d)) {
      primes.emplace_back(d);
      rest /= d;
    }
  factor_into(rest, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<BigInt, unsigned>> out;
  for (const BigInt& p : primes) {
    if (!out.empty() && out.back().first == p)
      ++out.back().second;
    else
      out.emplace_back(p, 1);
  }
  return out;
}

std::vector<BigInt> divisors(const BigInt& n) {
  std::vector<BigInt> out{1};
  for (const auto& [p, e] : factorize(n)) {
    const std::size_t base = out.size();
    BigInt pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t p_part(std::uint64_t n, std::uint64_t p) {
  if (!is_prime(p)) throw ParameterError("p_part: " + std::to_string(p) + " is not prime");
  if (n == 0) throw ParameterError("p_part: n must be positive");
  std::uint64_t out = 1;
  while (n % p == 0) {
    n /= p;
    out *= p;
  }
  return out;
}

BigInt p_part(const BigInt& n, std::uint64_t p) {
  if (!is_prime(p)) throw ParameterError("p_part: " + std::to_string(p) + " is not prime");
  if (sgn(n) <= 0) throw ParameterError("p_part: n must be positive");
  return big_pow(p, valuation(n, p));
}

unsigned valuation(const BigInt& n, std::uint64_t p) {
  if (sgn(n) == 0) throw ParameterError("valuation of zero");
  BigInt rest = abs(n);
  unsigned v = 0;
  while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
    mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
    ++v;
  }
  return v;
}

PrimePower PrimePower::of(std::uint64_t p, unsigned e) {
  if (!is_prime(p) || p < 3) throw ParameterError("prime power needs an odd prime base");
  if (e < 1) throw ParameterError("prime power needs exponent >= 1");
  return PrimePower{p, e, big_pow(p, e)};
}

PrimePower PrimePower::from_value(const BigNat& q) {
  auto pe = as_prime_power(q);
  if (!pe) throw ParameterError(to_string(q) + " is not a prime power");
  return of(to_u64(pe->first), pe->second);
}

std::optional<std::pair<BigInt, unsigned>> as_prime_power(const BigNat& n) {
  if (n < 2) throw ParameterError("as_prime_power needs n >= 2");
  const unsigned bits = static_cast<unsigned>(mpz_sizeinbase(n.get_mpz_t(), 2));
  for (unsigned e = bits; e >= 1; --e) {
    BigInt root;
    if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), e) == 0) continue;
    // The largest exact root is the only candidate for a prime base.
    if (is_prime(root)) return std::make_pair(root, e);
    return std::nullopt;
  }
  return std::nullopt;
}

std::uint64_t epsilon(const PrimePower& q, std::uint64_t r) {
  if (q.p == 2 || q.q < 5) throw ParameterError("epsilon needs odd q >= 5");
  if (r < 3 || !is_prime(r)) throw ParameterError("epsilon needs an odd prime r");
  if (r == q.p) return 2;
  if (q.q == 9) return 3;
  return to_u64((q.q - 1) / 2);
}

// ---------------------------------------------------------------- matrices

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<BigInt> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) throw ParameterError("matrix entry count does not match its shape");
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::parse(const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  auto next = [&](const char* what) {
    if (!(in >> tok)) throw ParseError(std::string("matrix text ended while reading ") + what);
    return parse_bigint(tok);
  };
  BigInt r = next("row count");
  BigInt c = next("column count");
  if (sgn(r) < 0 || sgn(c) < 0) throw ParseError("matrix dimensions must be non-negative");
  const std::size_t rows = to_u64(r), cols = to_u64(c);
  std::vector<BigInt> entries;
  entries.reserve(rows * cols);
  for (std::size_t i = 0; i < rows * cols; ++i) entries.push_back(next("entries"));
  if (in >> tok) throw ParseError("trailing data after matrix entries: '" + tok + "'");
  return IntMatrix(rows, cols, std::move(entries));
}

SparseIntMatrix SparseIntMatrix::from_dense(const IntMatrix& m) {
  SparseIntMatrix s;
  s.cols = m.cols();
  s.rows.resize(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const BigInt& v = m.at(i, j);
      if (sgn(v) == 0) continue;
      if (!v.fits_slong_p()) throw ResourceError("entry too large for the sparse int64 form");
      s.rows[i].emplace_back(static_cast<std::uint32_t>(j), v.get_si());
    }
  return s;
}

void SparseIntMatrix::normalize() {
  for (auto& row : rows) {
    std::sort(row.begin(), row.end());
    Row merged;
    for (const auto& [c, v] : row) {
      if (!merged.empty() && merged.back().first == c)
        merged.back().second += v;
      else
        merged.emplace_back(c, v);
    }
    std::erase_if(merged, [](const auto& e) { return e.second == 0; });
    row = std::move(merged);
  }
}

std::vector<BigInt> SnfResult::torsion() const {
  std::vector<BigInt> out;
  for (const auto& f : invariant_factors)
    if (f != 1) out.push_back(f);
  return out;
}

namespace {

using BigRow = std::vector<std::pair<std::uint32_t, BigInt>>;

int cmpabs(const BigInt& a, const BigInt& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

// dst -= k * src, both sorted by column.
void axpy(BigRow& dst, const BigInt& k, const BigRow& src) {
  BigRow out;
  out.reserve(dst.size() + src.size());
  std::size_t i = 0, j = 0;
  while (i < dst.size() || j < src.size()) {
    if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
      out.push_back(std::move(dst[i++]));
    } else if (i == dst.size() || src[j].first < dst[i].first) {
      out.emplace_back(src[j].first, -k * src[j].second);
      ++j;
    } else {
      BigInt v = dst[i].second - k * src[j].second;
      if (sgn(v) != 0) out.emplace_back(dst[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  dst = std::move(out);
}

const BigInt* find_entry(const BigRow& row, std::uint32_t c) {
  auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, std::uint32_t x) { return e.first < x; });
  return (it != row.end() && it->first == c) ? &it->second : nullptr;
}

// Dense SNF of a small residual block; returns the nonzero diagonal.
std::vector<BigInt> dense_diagonal(std::vector<std::vector<BigInt>> a, std::size_t ncols) {
  const std::size_t nrows = a.size();
  std::vector<BigInt> diag;
  std::size_t t = 0;
  auto min_pivot = [&](std::size_t& pi, std::size_t& pj) {
    bool found = false;
    for (std::size_t i = t; i < nrows; ++i)
      for (std::size_t j = t; j < ncols; ++j) {
        if (sgn(a[i][j]) == 0) continue;
        if (!found || cmpabs(a[i][j], a[pi][pj]) < 0) {
          pi = i;
          pj = j;
          found = true;
          if (a[i][j] == 1 || a[i][j] == -1) return true;
        }
      }
    return found;
  };
  while (t < nrows && t < ncols) {
    std::size_t pi = t, pj = t;
    if (!min_pivot(pi, pj)) break;
    for (;;) {
      std::swap(a[t], a[pi]);
      if (pj != t)
        for (std::size_t i = t; i < nrows; ++i) std::swap(a[i][t], a[i][pj]);
      bool clean = true;
      BigInt q;
      for (std::size_t i = t + 1; i < nrows; ++i) {
        if (sgn(a[i][t]) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        if (sgn(q) != 0)
          for (std::size_t j = t; j < ncols; ++j)
            if (sgn(a[t][j]) != 0) a[i][j] -= q * a[t][j];
        if (sgn(a[i][t]) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < ncols; ++j) {
        if (sgn(a[t][j]) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        if (sgn(q) != 0)
          for (std::size_t i = t; i < nrows; ++i)
            if (sgn(a[i][t]) != 0) a[i][j] -= q * a[i][t];
        if (sgn(a[t][j]) != 0) clean = false;
      }
      if (clean) break;
      // Remainders are smaller than the pivot; move the smallest into place.
      pi = t;
      pj = t;
      for (std::size_t i = t + 1; i < nrows; ++i)
        if (sgn(a[i][t]) != 0 && cmpabs(a[i][t], a[pi][pj]) < 0) {
          pi = i;
          pj = t;
        }
      for (std::size_t j = t + 1; j < ncols; ++j)
        if (sgn(a[t][j]) != 0 && cmpabs(a[t][j], a[pi][pj]) < 0) {
          pi = t;
          pj = j;
        }
    }
    diag.push_back(abs(a[t][t]));
    ++t;
  }
  // Pairwise gcd/lcm replacement turns any diagonal into a divisibility chain.
  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      BigInt g = gcd(diag[i], diag[j]);
      if (g == diag[i]) continue;
      BigInt l = diag[i] / g * diag[j];
      diag[i] = g;
      diag[j] = l;
    }
  return diag;
}

SnfResult snf_rows(std::vector<BigRow> rows, std::size_t cols) {
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  std::erase_if(rows, [](const BigRow& r) { return r.empty(); });

  std::vector<std::vector<std::uint32_t>> col_rows(cols);
  for (std::uint32_t i = 0; i < rows.size(); ++i)
    for (const auto& e : rows[i]) col_rows[e.first].push_back(i);
  std::vector<char> row_alive(rows.size(), 1), col_alive(cols, 1);
  std::size_t units = 0;

  // Eliminate unit pivots; each one contributes a factor 1 and removes a row and a column.
  bool progress = true;
  while (progress) {
    progress = false;
    std::vector<std::uint32_t> order;
    for (std::uint32_t i = 0; i < rows.size(); ++i)
      if (row_alive[i] && !rows[i].empty()) order.push_back(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t x, std::uint32_t y) { return rows[x].size() < rows[y].size(); });
    for (std::uint32_t r : order) {
      if (!row_alive[r] || rows[r].empty()) continue;
      std::int64_t best = -1;
      std::size_t best_count = 0;
      for (const auto& [c, v] : rows[r]) {
        if (v != 1 && v != -1) continue;
        if (best < 0 || col_rows[c].size() < best_count) {
          best = c;
          best_count = col_rows[c].size();
        }
      }
      if (best < 0) continue;
      const auto c = static_cast<std::uint32_t>(best);
      const BigInt u = *find_entry(rows[r], c);
      const BigRow pivot_row = rows[r];
      for (std::uint32_t i : col_rows[c]) {
        if (i == r || !row_alive[i]) continue;
        const BigInt* v = find_entry(rows[i], c);
        if (!v) continue;
        const BigInt k = (*v) * u;
        axpy(rows[i], k, pivot_row);
        // Fill-in can only appear in the pivot row's columns.
        for (const auto& e : pivot_row)
          if (e.first != c) col_rows[e.first].push_back(i);
      }
      row_alive[r] = 0;
      col_alive[c] = 0;
      col_rows[c].clear();
      ++units;
      progress = true;
    }
    // Compact column indexes so that stale entries do not accumulate.
    for (std::uint32_t c = 0; c < cols; ++c) {
      auto& lst = col_rows[c];
      std::sort(lst.begin(), lst.end());
      lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
      std::erase_if(lst, [&](std::uint32_t i) { return !row_alive[i] || !find_entry(rows[i], c); });
    }
  }

  std::vector<std::uint32_t> live_cols;
  std::vector<std::int64_t> col_pos(cols, -1);
  for (std::uint32_t c = 0; c < cols; ++c)
    if (col_alive[c]) {
      col_pos[c] = static_cast<std::int64_t>(live_cols.size());
      live_cols.push_back(c);
    }
  std::vector<std::vector<BigInt>> dense;
  for (std::uint32_t i = 0; i < rows.size(); ++i) {
    if (!row_alive[i] || rows[i].empty()) continue;
    std::vector<BigInt> row(live_cols.size());
    for (const auto& [c, v] : rows[i]) row[static_cast<std::size_t>(col_pos[c])] = v;
    dense.push_back(std::move(row));
  }
  std::vector<BigInt> diag = dense_diagonal(std::move(dense), live_cols.size());

  SnfResult out;
  out.invariant_factors.assign(units, BigInt(1));
  out.invariant_factors.insert(out.invariant_factors.end(), diag.begin(), diag.end());
  out.free_rank = live_cols.size() - diag.size();
  return out;
}

}  // namespace

SnfResult smith_normal_form(const IntMatrix& m) {
  std::vector<BigRow> rows(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (sgn(m.at(i, j)) != 0) rows[i].emplace_back(static_cast<std::uint32_t>(j), m.at(i, j));
  return snf_rows(std::move(rows), m.cols());
}

SnfResult smith_normal_form(const SparseIntMatrix& m) {
  SparseIntMatrix s = m;
  s.normalize();
  std::vector<BigRow> rows(s.rows.size());
  for (std::size_t i = 0; i < s.rows.size(); ++i)
    for (const auto& [c, v] : s.rows[i]) {
      if (c >= s.cols) throw ContractError("sparse entry column out of range");
      rows[i].emplace_back(c, BigInt(static_cast<long>(v)));
    }
  return snf_rows(std::move(rows), s.cols);
}

namespace {

using ModRow = std::vector<std::pair<std::uint32_t, std::uint64_t>>;

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  unsigned __int128 acc = 1, base = b % p;
  while (e) {
    if (e & 1) acc = acc * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(acc);
}

std::size_t rank_rows(std::vector<ModRow> rows, std::size_t cols, std::uint64_t p) {
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  std::erase_if(rows, [](const ModRow& r) { return r.empty(); });
  std::vector<std::vector<std::uint32_t>> col_rows(cols);
  for (std::uint32_t i = 0; i < rows.size(); ++i)
    for (const auto& e : rows[i]) col_rows[e.first].push_back(i);
  std::vector<char> alive(rows.size(), 1);
  auto entry = [](const ModRow& row, std::uint32_t c) -> std::uint64_t {
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, std::uint32_t x) { return e.first < x; });
    return (it != row.end() && it->first == c) ? it->second : 0;
  };
  // Rows keyed by current length: always pivot on a shortest remaining row.
  std::set<std::pair<std::size_t, std::uint32_t>> queue;
  for (std::uint32_t i = 0; i < rows.size(); ++i) queue.emplace(rows[i].size(), i);
  std::size_t rank = 0;
  while (!queue.empty()) {
    auto [len, r] = *queue.begin();
    queue.erase(queue.begin());
    if (!alive[r]) continue;
    if (rows[r].empty()) {
      alive[r] = 0;
      continue;
    }
    std::uint32_t c = rows[r].front().first;
    std::size_t best = SIZE_MAX;
    for (const auto& e : rows[r])
      if (col_rows[e.first].size() < best) {
        best = col_rows[e.first].size();
        c = e.first;
      }
    const std::uint64_t inv = pow_mod(entry(rows[r], c), p - 2, p);
    const ModRow pivot = rows[r];
    alive[r] = 0;
    ++rank;
    auto targets = std::move(col_rows[c]);
    col_rows[c].clear();
    for (std::uint32_t i : targets) {
      if (!alive[i]) continue;
      const std::uint64_t v = entry(rows[i], c);
      if (v == 0) continue;
      const std::uint64_t k = static_cast<std::uint64_t>(static_cast<unsigned __int128>(v) * inv % p);
      queue.erase({rows[i].size(), i});
      ModRow out;
      out.reserve(rows[i].size() + pivot.size());
      std::size_t a = 0, b = 0;
      const ModRow& d = rows[i];
      while (a < d.size() || b < pivot.size()) {
        if (b == pivot.size() || (a < d.size() && d[a].first < pivot[b].first)) {
          out.push_back(d[a++]);
        } else {
          const std::uint64_t sub = static_cast<std::uint64_t>(static_cast<unsigned __int128>(k) * pivot[b].second % p);
          if (a == d.size() || pivot[b].first < d[a].first) {
            out.emplace_back(pivot[b].first, (p - sub) % p);
            col_rows[pivot[b].first].push_back(i);
          } else {
            const std::uint64_t val = (d[a].second + p - sub) % p;
            if (val) out.emplace_back(d[a].first, val);
            ++a;
          }
          ++b;
        }
      }
      rows[i] = std::move(out);
      queue.emplace(rows[i].size(), i);
    }
  }
  return rank;
}

}  // namespace

std::size_t mod_p_rank(const IntMatrix& m, std::uint64_t p) {
  if (!is_prime(p)) throw ParameterError("mod_p_rank needs a prime modulus");
  std::vector<ModRow> rows(m.rows());
  BigInt r;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      mpz_fdiv_r_ui(r.get_mpz_t(), m.at(i, j).get_mpz_t(), p);
      if (sgn(r) != 0) rows[i].emplace_back(static_cast<std::uint32_t>(j), r.get_ui());
    }
  return rank_rows(std::move(rows), m.cols(), p);
}

std::size_t mod_p_rank(const SparseIntMatrix& m, std::uint64_t p) {
  if (!is_prime(p)) throw ParameterError("mod_p_rank needs a prime modulus");
  SparseIntMatrix s = m;
  s.normalize();
  std::vector<ModRow> rows(s.rows.size());
  const auto sp = static_cast<std::int64_t>(p);
  for (std::size_t i = 0; i < s.rows.size(); ++i)
    for (const auto& [c, v] : s.rows[i]) {
      const std::int64_t r = ((v % sp) + sp) % sp;
      if (r) rows[i].emplace_back(c, static_cast<std::uint64_t>(r));
    }
  return rank_rows(std::move(rows), s.cols, p);
}

}  // namespace rmaps
