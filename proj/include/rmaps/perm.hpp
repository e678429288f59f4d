#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rmaps/algebra.hpp"

namespace rmaps {

using Point = std::uint32_t;

// A permutation of {0, ..., degree-1}. Products act on the right: in p * q, p is applied first.
class Perm {
public:
  Perm() = default;
  explicit Perm(std::vector<Point> images);
  static Perm identity(std::size_t degree);
  static Perm from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles);

  std::size_t degree() const { return img_.size(); }
  Point operator[](Point x) const { return img_[x]; }
  const std::vector<Point>& images() const { return img_; }

  bool is_identity() const;
  Perm inverse() const;
  Perm pow(std::int64_t k) const;
  // Lcm of the cycle lengths.
  std::uint64_t order() const;
  BigInt order_big() const;
  // Same permutation on a larger point set, fixing the new points.
  Perm extended(std::size_t degree) const;
  // Cycle notation with 0-based points, "()" for the identity.
  std::string cycle_string() const;

  friend Perm operator*(const Perm& p, const Perm& q);
  friend bool operator==(const Perm& p, const Perm& q) { return p.img_ == q.img_; }
  friend bool operator!=(const Perm& p, const Perm& q) { return p.img_ != q.img_; }
  friend bool operator<(const Perm& p, const Perm& q) { return p.img_ < q.img_; }

private:
  std::vector<Point> img_;
};

// Writes p * q into out without allocating when out already has the right size.
void compose_into(const Perm& p, const Perm& q, std::vector<Point>& out);

// Commutator p^-1 q^-1 p q.
Perm commutator(const Perm& p, const Perm& q);
// q^-1 p q.
Perm conjugate(const Perm& p, const Perm& q);

// p on the first block of points, q on the following block.
Perm direct_sum(const Perm& p, const Perm& q);

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept;
};

}  // namespace rmaps
