#pragma once

#include <cstdint>

namespace rmaps {

struct Budgets {
  // Largest group whose elements may be listed explicitly.
  std::uint64_t order_cap = 1000000;
  std::uint64_t census_cap = 2000;
  std::uint64_t search_cap = 50000;
  std::uint64_t aut_cap = 1500;
  std::uint64_t homology_cap = 2000;
  // rows * cols of any relation matrix.
  std::uint64_t matrix_cap = 50000000;
  // Worker threads; 0 means hardware concurrency.
  unsigned threads = 0;
};

}  // namespace rmaps
