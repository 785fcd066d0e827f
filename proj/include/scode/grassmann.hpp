#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <vector>

#include "scode/gf2.hpp"

namespace scode {

using BigInt = boost::multiprecision::cpp_int;

// Number of k-subspaces of F_q^v.
BigInt gaussian_binomial(int v, int k, const BigInt& q);

// Same for q = 2, as a machine word. Throws if the count does not fit.
std::uint64_t subspace_count(int v, int k);
std::uint64_t subspace_count_all(int v);  // sum over k = 0..v

// Streams every k-subspace of F_2^v exactly once, ordered by pivot vector
// (as an integer, ascending), then by the row masks lexicographically.
class GrassmannIter {
 public:
  GrassmannIter(int v, int k);
  std::optional<Subspace> next();

 private:
  bool advance_profile();
  Subspace current() const;

  int v_ = 0;
  int k_ = 0;
  bool done_ = false;
  Row pivots_ = 0;
  std::vector<int> pivot_bits_;                 // descending, one per row
  std::vector<std::pair<int, int>> cells_;      // (row, bit), significance order
  std::uint64_t fill_ = 0;
  std::uint64_t fill_count_ = 1;
};

std::vector<Subspace> grassmannian(int v, int k);
// All subspaces of F_2^v in canonical order (dimension-major).
std::vector<Subspace> all_subspaces(int v);

// Containment of the lower-dimensional space in the other (equal dims: equality).
bool incident(const Subspace& a, const Subspace& b);

// { U : d_S(U, center) <= r }, canonical order.
std::vector<Subspace> ball(const Subspace& center, int r);

}  // namespace scode
