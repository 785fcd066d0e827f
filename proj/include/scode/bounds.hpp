#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scode/grassmann.hpp"

namespace scode {

struct BoundEntry {
  BigInt q = 2;
  int v = 0;
  int d = 0;
  std::vector<int> dims;  // restricted dimension set; empty = unrestricted
  BigInt lower = 0;
  BigInt upper = 0;
  bool exact = false;
  std::string provenance;
  std::optional<std::uint64_t> isomorphism_types;
};

// Closed forms for d in {1, 2, v-2, v-1, v}. Throws for parameter ranges the
// formulas do not cover (e.g. d = v-1 at odd v < 5, or d = v-2 beyond the
// known cases).
BoundEntry a_closed_form(const BigInt& q, int v, int d);

// Singleton-like bound q^{max(m,n)(min(m,n)-delta+1)} for rank-metric codes.
BigInt mrd_bound(const BigInt& q, int m, int n, int delta);

enum class CombineRule {
  UnionDims,         // A(T u T') <= A(T) + A(T'), lower = max of the lowers
  MonotoneDistance,  // transfer bounds to another distance (needs target_d)
  DualDims,          // A(v,d;T) = A(v,d;v-T)
};

BoundEntry combine(const std::vector<BoundEntry>& entries, CombineRule rule,
                   int target_d = -1);

// The 36 cells of the q = 2, v <= 8 overview table, best published bounds.
std::vector<BoundEntry> table_ledger();
std::optional<BoundEntry> table_lookup(int v, int d);

struct CdcBound {
  std::uint64_t upper = 0;
  bool exact = false;
  std::string provenance;
};

// Best known upper bound on the constant-dimension number A_2(v,d;k) for
// v <= 8; exact wherever the value is settled.
CdcBound cdc_upper_bound(int v, int d, int k);

}  // namespace scode
