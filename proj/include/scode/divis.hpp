#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "scode/code.hpp"
#include "scode/gf2.hpp"

namespace scode {

// Multiset of points of PG(v-1, F_2); a point is a nonzero vector mask.
class PointMultiset {
 public:
  PointMultiset() = default;
  explicit PointMultiset(int ambient);

  int ambient() const { return v_; }
  std::uint64_t multiplicity(Row p) const;
  void set_multiplicity(Row p, std::uint64_t m);
  void add(Row p, std::uint64_t m = 1);
  std::uint64_t cardinality() const;
  std::uint64_t max_multiplicity() const;
  std::vector<Row> support() const;  // points with positive multiplicity

  bool operator==(const PointMultiset&) const = default;

 private:
  void check_point(Row p) const;
  int v_ = 0;
  std::vector<std::uint64_t> chi_;  // indexed by point mask, entry 0 unused
};

// chi(P) = weight * (number of codewords containing P).
PointMultiset points_of_code(const SubspaceCode& c, std::uint64_t weight = 1);

// True iff every hyperplane sum is congruent to the cardinality mod 2^r.
bool is_divisible(const PointMultiset& p, int r);

// Lambda-complement; throws when some multiplicity exceeds lambda.
PointMultiset complement(const PointMultiset& p, std::uint64_t lambda);

// For a 2^r-divisible multiset of cardinality 2^{r+1}-1: the unique
// (r+1)-subspace whose point set it is. nullopt when the cardinality or
// divisibility precondition fails.
std::optional<Subspace> recognize_subspace(const PointMultiset& p, int r);

// Completion of a set of 254 or 255 solids of F_2^8 (pairwise distance >= 6,
// all disjoint from S) to a lifted MRD code: one missing solid for 255
// codewords, the unique pair for 254.
std::vector<Subspace> lmrd_extend(const SubspaceCode& c, const Subspace& S);

// Solids at subspace distance >= d from every codeword.
std::uint64_t count_extending_solids(const SubspaceCode& c, int d = 6);

struct TheoremExtensionReport {
  struct Item {
    Subspace extension;
    int min_distance = 0;  // minimum distance to the 256 codewords
    bool distance_ok = false;
    int dim_meet_s = 0;
    bool inside_s = false;
    bool contains_s = false;
  };
  std::vector<Item> items;
  bool all_ok = false;
};

// Checks the eight extension subspaces of the classification of the optimal
// (8, 257, 6) codes against the lifted Gabidulin code.
TheoremExtensionReport verify_theorem_extensions();

// File format: one line per point, "point-binary-string multiplicity".
PointMultiset read_multiset(std::istream& in);
PointMultiset read_multiset_file(const std::string& path);
void write_multiset(const PointMultiset& p, std::ostream& out);
void write_multiset_file(const PointMultiset& p, const std::string& path);

}  // namespace scode
