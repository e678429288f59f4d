#pragma once

#include <cstdint>
#include <vector>

namespace rmaps {

// GF(p^e) with elements encoded as integers 0..q-1 (base-p digits are polynomial coefficients,
// least significant first).
class FieldCtx {
public:
  FieldCtx(std::uint32_t p, unsigned e);

  std::uint32_t p() const { return p_; }
  unsigned e() const { return e_; }
  std::uint32_t q() const { return q_; }
  // Monic modulus, coefficients from x^0 up to x^e.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  std::uint32_t add(std::uint32_t x, std::uint32_t y) const;
  std::uint32_t neg(std::uint32_t x) const;
  std::uint32_t sub(std::uint32_t x, std::uint32_t y) const { return add(x, neg(y)); }
  std::uint32_t mul(std::uint32_t x, std::uint32_t y) const;
  std::uint32_t inv(std::uint32_t x) const;
  std::uint32_t pow(std::uint32_t x, std::uint64_t k) const;
  // Smallest encoded element generating the multiplicative group.
  std::uint32_t primitive() const { return primitive_; }
  bool is_square(std::uint32_t x) const;

private:
  std::uint32_t p_;
  unsigned e_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> log_, exp_;
  std::uint32_t primitive_ = 1;
};

FieldCtx make_field(std::uint32_t p, unsigned e);

}  // namespace rmaps
