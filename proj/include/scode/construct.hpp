#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "scode/code.hpp"
#include "scode/gf2.hpp"

namespace scode {

struct GabidulinSpec {
  int v = 0;
  int k = 0;
  int delta = 0;
  // Modulus of F_{2^(v-k)}; defaults to the smallest irreducible polynomial.
  std::optional<unsigned> modulus;
};

// The k x n matrices { f restricted to W } of the Gabidulin MRD code with
// minimum rank distance delta, in coefficient-tuple order (a_0 fastest).
// W is spanned by the first k power-basis elements of F_{2^n}; the field
// element sum_t c_t alpha^t occupies the low n bits of each row, so the last
// matrix column holds the alpha^0 coordinate.
std::vector<BitMatrix> gabidulin_matrices(const GabidulinSpec& spec);

// Lifted Gabidulin code G_{v,k,delta} with parameters
// (v, 2^{(k-delta+1)(v-k)}, 2 delta; k).
SubspaceCode gabidulin(const GabidulinSpec& spec);
inline SubspaceCode gabidulin(int v, int k, int delta) {
  return gabidulin(GabidulinSpec{v, k, delta, std::nullopt});
}

// The special subspace S = {0} x F_{2^n} = rowspace(0 | I_{v-k}).
Subspace special_subspace(int v, int k);

// rowspace(I_k | M) in ambient dimension k + n.
Subspace lift_matrix(const BitMatrix& m);

// Lifts a set of k x n matrices. Throws on duplicates; when
// check_min_rank_distance > 0 the pairwise rank distance is verified.
SubspaceCode lift(const std::vector<BitMatrix>& matrices,
                  int check_min_rank_distance = 0);

// For every t-subspace disjoint from S: how many codewords contain it.
// Key = cover multiplicity, value = number of such t-subspaces.
std::map<std::uint64_t, std::uint64_t> cover_count(const SubspaceCode& lmrd,
                                                   const Subspace& S, int t);

// The Segre spread of F_2^v, v = 2m: 2^m + 1 pairwise disjoint m-subspaces.
SubspaceCode spread(int v);

struct PivotProfile {
  int v = 0;
  Row pivots = 0;
  std::uint64_t target = 0;  // requested sub-code cardinality
};

struct EchelonFerrersResult {
  SubspaceCode code;
  std::vector<std::uint64_t> achieved;  // per profile, <= target
};

// Union of lifted Ferrers-diagram rank-metric codes over pivot vectors with
// pairwise Hamming distance >= d. Full-rectangle profiles are filled from the
// Gabidulin code; all others by depth-first search with rank-distance
// pruning, reporting the best size reached if the target is not met.
EchelonFerrersResult echelon_ferrers(const std::vector<PivotProfile>& profiles,
                                     int d);

// Inclusion-maximal deterministic extension: candidates with dimension in
// `dims` are scanned in canonical order and added whenever the distance to
// every current codeword stays >= d.
SubspaceCode extend_greedy(const SubspaceCode& c, int d,
                           const std::vector<int>& dims);

}  // namespace scode
