#include "rmaps/perm.hpp"

#include <sstream>

#include "rmaps/errors.hpp"

namespace rmaps {

Perm::Perm(std::vector<Point> images) : img_(std::move(images)) {
  std::vector<char> seen(img_.size(), 0);
  for (Point x : img_) {
    if (x >= img_.size() || seen[x]) throw ParameterError("image list is not a permutation");
    seen[x] = 1;
  }
}

Perm Perm::identity(std::size_t degree) {
  Perm p;
  p.img_.resize(degree);
  for (std::size_t i = 0; i < degree; ++i) p.img_[i] = static_cast<Point>(i);
  return p;
}

Perm Perm::from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles) {
  std::vector<Point> img(degree);
  for (std::size_t i = 0; i < degree; ++i) img[i] = static_cast<Point>(i);
  std::vector<char> used(degree, 0);
  for (const auto& cyc : cycles) {
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      Point x = cyc[i];
      if (x >= degree || used[x]) throw ParameterError("bad cycle list");
      used[x] = 1;
      img[x] = cyc[(i + 1) % cyc.size()];
    }
  }
  return Perm(std::move(img));
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != i) return false;
  return true;
}

Perm Perm::inverse() const {
  Perm out;
  out.img_.resize(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) out.img_[img_[i]] = static_cast<Point>(i);
  return out;
}

Perm Perm::pow(std::int64_t k) const {
  const std::size_t n = img_.size();
  Perm out;
  out.img_.resize(n);
  std::vector<char> seen(n, 0);
  std::vector<Point> cyc;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    cyc.clear();
    for (Point x = static_cast<Point>(s); !seen[x]; x = img_[x]) {
      seen[x] = 1;
      cyc.push_back(x);
    }
    const auto len = static_cast<std::int64_t>(cyc.size());
    const std::int64_t shift = ((k % len) + len) % len;
    for (std::int64_t i = 0; i < len; ++i) out.img_[cyc[i]] = cyc[(i + shift) % len];
  }
  return out;
}

std::uint64_t Perm::order() const {
  const std::size_t n = img_.size();
  std::vector<char> seen(n, 0);
  std::uint64_t ord = 1;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::uint64_t len = 0;
    for (Point x = static_cast<Point>(s); !seen[x]; x = img_[x]) {
      seen[x] = 1;
      ++len;
    }
    ord = lcm_u64(ord, len);
  }
  return ord;
}

BigInt Perm::order_big() const {
  const std::size_t n = img_.size();
  std::vector<char> seen(n, 0);
  BigInt ord = 1;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    unsigned long len = 0;
    for (Point x = static_cast<Point>(s); !seen[x]; x = img_[x]) {
      seen[x] = 1;
      ++len;
    }
    ord = lcm(ord, BigInt(len));
  }
  return ord;
}

Perm Perm::extended(std::size_t degree) const {
  if (degree < img_.size()) throw ParameterError("cannot shrink a permutation");
  Perm out = *this;
  for (std::size_t i = img_.size(); i < degree; ++i) out.img_.push_back(static_cast<Point>(i));
  return out;
}

std::string Perm::cycle_string() const {
  std::ostringstream os;
  std::vector<char> seen(img_.size(), 0);
  bool any = false;
  for (std::size_t s = 0; s < img_.size(); ++s) {
    if (seen[s] || img_[s] == s) continue;
    any = true;
    os << '(';
    bool first = true;
    for (Point x = static_cast<Point>(s); !seen[x]; x = img_[x]) {
      seen[x] = 1;
      if (!first) os << ',';
      os << x;
      first = false;
    }
    os << ')';
  }
  if (!any) os << "()";
  return os.str();
}

Perm operator*(const Perm& p, const Perm& q) {
  if (p.degree() != q.degree()) throw ContractError("multiplying permutations of different degrees");
  Perm out;
  out.img_.resize(p.degree());
  for (std::size_t i = 0; i < p.degree(); ++i) out.img_[i] = q.img_[p.img_[i]];
  return out;
}

void compose_into(const Perm& p, const Perm& q, std::vector<Point>& out) {
  const auto& a = p.images();
  const auto& b = q.images();
  out.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = b[a[i]];
}

Perm commutator(const Perm& p, const Perm& q) { return p.inverse() * q.inverse() * p * q; }

Perm conjugate(const Perm& p, const Perm& q) { return q.inverse() * p * q; }

Perm direct_sum(const Perm& p, const Perm& q) {
  std::vector<Point> img(p.images());
  const auto shift = static_cast<Point>(p.degree());
  for (Point x : q.images()) img.push_back(x + shift);
  return Perm(std::move(img));
}

std::size_t PermHash::operator()(const Perm& p) const noexcept {
  // FNV-1a over the image words.
  std::uint64_t h = 1469598103934665603ull;
  for (Point x : p.images()) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace rmaps
