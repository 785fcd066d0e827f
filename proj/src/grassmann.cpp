#include "scode/grassmann.hpp"

#include <stdexcept>

namespace scode {

BigInt gaussian_binomial(int v, int k, const BigInt& q) {
  if (k < 0 || v < 0 || k > v) {
    throw std::invalid_argument("gaussian_binomial requires 0 <= k <= v");
  }
  if (q < 2) throw std::invalid_argument("gaussian_binomial requires q >= 2");
  BigInt result = 1;
  // Partial products are Gaussian binomials themselves, so every division
  // below is exact.
  for (int i = 1; i <= k; ++i) {
    BigInt num = pow(q, static_cast<unsigned>(v - k + i)) - 1;
    BigInt den = pow(q, static_cast<unsigned>(i)) - 1;
    result = result * num / den;
  }
  return result;
}

std::uint64_t subspace_count(int v, int k) {
  BigInt n = gaussian_binomial(v, k, 2);
  if (n > BigInt(UINT64_MAX)) {
    throw std::overflow_error("subspace count exceeds 64 bits");
  }
  return n.convert_to<std::uint64_t>();
}

std::uint64_t subspace_count_all(int v) {
  std::uint64_t total = 0;
  for (int k = 0; k <= v; ++k) total += subspace_count(v, k);
  return total;
}

GrassmannIter::GrassmannIter(int v, int k) : v_(v), k_(k) {
  if (v < 0 || v > kMaxAmbient || k < 0 || k > v) {
    throw std::invalid_argument("GrassmannIter requires 0 <= k <= v <= 16");
  }
  if (k_ == 0) {
    pivots_ = 0;
    fill_count_ = 1;
    return;
  }
  pivots_ = static_cast<Row>((1u << k_) - 1);
  pivot_bits_.resize(static_cast<std::size_t>(k_));
  if (!advance_profile()) done_ = true;
}

// Prepares the free-cell layout for pivots_; returns false when pivots_ no
// longer fits in v bits.
bool GrassmannIter::advance_profile() {
  if (pivots_ >= (1u << v_)) return false;
  int idx = 0;
  for (int bit = v_ - 1; bit >= 0; --bit) {
    if (pivots_ >> bit & 1) pivot_bits_[static_cast<std::size_t>(idx++)] = bit;
  }
  cells_.clear();
  for (int row = 0; row < k_; ++row) {
    for (int bit = pivot_bits_[static_cast<std::size_t>(row)] - 1; bit >= 0;
         --bit) {
      if ((pivots_ >> bit & 1) == 0) cells_.emplace_back(row, bit);
    }
  }
  if (cells_.size() >= 63) {
    throw std::overflow_error("Grassmannian too large to enumerate");
  }
  fill_ = 0;
  fill_count_ = 1ull << cells_.size();
  return true;
}

Subspace GrassmannIter::current() const {
  std::vector<Row> rows(static_cast<std::size_t>(k_));
  for (int row = 0; row < k_; ++row) {
    rows[static_cast<std::size_t>(row)] =
        static_cast<Row>(1u << pivot_bits_[static_cast<std::size_t>(row)]);
  }
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (fill_ >> (cells_.size() - 1 - i) & 1) {
      auto [row, bit] = cells_[i];
      rows[static_cast<std::size_t>(row)] =
          static_cast<Row>(rows[static_cast<std::size_t>(row)] | (1u << bit));
    }
  }
  // Rows built this way are already in rref.
  Subspace s = Subspace::from_rows(v_, std::move(rows));
  return s;
}

std::optional<Subspace> GrassmannIter::next() {
  if (done_) return std::nullopt;
  if (k_ == 0) {
    done_ = true;
    return Subspace::zero(v_);
  }
  Subspace out = current();
  if (++fill_ == fill_count_) {
    // Gosper's hack: next mask with the same popcount.
    Row x = pivots_;
    Row u = static_cast<Row>(x & (~x + 1));
    Row t = static_cast<Row>(x + u);
    pivots_ = static_cast<Row>(t | ((static_cast<unsigned>(x ^ t) / u) >> 2));
    if (!advance_profile()) done_ = true;
  }
  return out;
}

std::vector<Subspace> grassmannian(int v, int k) {
  std::vector<Subspace> out;
  out.reserve(static_cast<std::size_t>(subspace_count(v, k)));
  GrassmannIter it(v, k);
  while (auto s = it.next()) out.push_back(std::move(*s));
  return out;
}

std::vector<Subspace> all_subspaces(int v) {
  std::vector<Subspace> out;
  out.reserve(static_cast<std::size_t>(subspace_count_all(v)));
  for (int k = 0; k <= v; ++k) {
    GrassmannIter it(v, k);
    while (auto s = it.next()) out.push_back(std::move(*s));
  }
  return out;
}

bool incident(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) return false;
  return a.dim() <= b.dim() ? b.contains(a) : a.contains(b);
}

std::vector<Subspace> ball(const Subspace& center, int r) {
  if (r < 0) throw std::invalid_argument("ball radius must be non-negative");
  const int v = center.ambient();
  std::vector<Subspace> out;
  for (int k = std::max(0, center.dim() - r); k <= std::min(v, center.dim() + r);
       ++k) {
    GrassmannIter it(v, k);
    while (auto s = it.next()) {
      if (subspace_distance(*s, center) <= r) out.push_back(std::move(*s));
    }
  }
  return out;
}

}  // namespace scode
