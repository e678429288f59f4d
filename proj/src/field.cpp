#include "rmaps/field.hpp"

#include "rmaps/algebra.hpp"
#include "rmaps/errors.hpp"

namespace rmaps {

namespace {

using Poly = std::vector<std::uint32_t>;

Poly digits(std::uint64_t v, std::uint32_t p, unsigned len) {
  Poly out(len);
  for (unsigned i = 0; i < len; ++i) {
    out[i] = static_cast<std::uint32_t>(v % p);
    v /= p;
  }
  return out;
}

// Remainder of a modulo the monic polynomial m, over GF(p).
Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    if (lead)
      for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - lead) * m[i]) % p);
    a.pop_back();
  }
  return a;
}

bool irreducible(const Poly& f, std::uint32_t p) {
  const unsigned deg = static_cast<unsigned>(f.size() - 1);
  for (unsigned d = 1; 2 * d <= deg; ++d) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    for (std::uint64_t v = 0; v < count; ++v) {
      Poly g = digits(v, p, d);
      g.push_back(1);
      Poly r = poly_mod(f, g, p);
      bool zero = true;
      for (auto c : r) zero = zero && c == 0;
      if (zero) return false;
    }
  }
  return true;
}

}  // namespace

FieldCtx::FieldCtx(std::uint32_t p, unsigned e) : p_(p), e_(e) {
  if (p < 3 || p > 97 || !is_prime(static_cast<std::uint64_t>(p))) throw ParameterError("field needs an odd prime p <= 97");
  if (e < 1 || e > 4) throw ParameterError("field exponent must be between 1 and 4");
  q_ = 1;
  for (unsigned i = 0; i < e; ++i) q_ *= p;
  // Least monic irreducible in the order of its encoded lower coefficients.
  for (std::uint64_t v = 0;; ++v) {
    Poly f = digits(v, p, e);
    f.push_back(1);
    if (irreducible(f, p)) {
      modulus_ = f;
      break;
    }
  }
  const auto divs = prime_divisors(static_cast<std::uint64_t>(q_ - 1));
  for (std::uint32_t cand = 2; cand < q_; ++cand) {
    bool ok = true;
    for (std::uint64_t l : divs) ok = ok && pow(cand, (q_ - 1) / l) != 1;
    if (ok) {
      primitive_ = cand;
      break;
    }
  }
  if (q_ <= (1u << 20)) {
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    std::uint32_t x = 1;
    for (std::uint32_t k = 0; k < q_ - 1; ++k) {
      exp_[k] = x;
      log_[x] = k;
      x = mul(x, primitive_);
    }
  }
}

std::uint32_t FieldCtx::add(std::uint32_t x, std::uint32_t y) const {
  std::uint32_t out = 0, scale = 1;
  for (unsigned i = 0; i < e_; ++i) {
    out += ((x % p_ + y % p_) % p_) * scale;
    x /= p_;
    y /= p_;
    scale *= p_;
  }
  return out;
}

std::uint32_t FieldCtx::neg(std::uint32_t x) const {
  std::uint32_t out = 0, scale = 1;
  for (unsigned i = 0; i < e_; ++i) {
    out += ((p_ - x % p_) % p_) * scale;
    x /= p_;
    scale *= p_;
  }
  return out;
}

std::uint32_t FieldCtx::mul(std::uint32_t x, std::uint32_t y) const {
  if (e_ == 1) return static_cast<std::uint32_t>(static_cast<std::uint64_t>(x) * y % p_);
  const Poly a = digits(x, p_, e_), b = digits(y, p_, e_);
  Poly prod(2 * e_ - 1, 0);
  for (unsigned i = 0; i < e_; ++i)
    for (unsigned j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p_;
  const Poly r = poly_mod(prod, modulus_, p_);
  std::uint32_t out = 0, scale = 1;
  for (unsigned i = 0; i < e_; ++i) {
    out += (i < r.size() ? r[i] : 0) * scale;
    scale *= p_;
  }
  return out;
}

std::uint32_t FieldCtx::pow(std::uint32_t x, std::uint64_t k) const {
  std::uint32_t acc = 1;
  while (k) {
    if (k & 1) acc = mul(acc, x);
    x = mul(x, x);
    k >>= 1;
  }
  return acc;
}

std::uint32_t FieldCtx::inv(std::uint32_t x) const {
  if (x == 0) throw ParameterError("inverse of zero");
  if (log_.empty()) return pow(x, q_ - 2);
  return exp_[(q_ - 1 - log_[x]) % (q_ - 1)];
}

bool FieldCtx::is_square(std::uint32_t x) const {
  if (x == 0) return true;
  if (log_.empty()) return pow(x, (q_ - 1) / 2) == 1;
  return log_[x] % 2 == 0;
}

FieldCtx make_field(std::uint32_t p, unsigned e) { return FieldCtx(p, e); }

}  // namespace rmaps
