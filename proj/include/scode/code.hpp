#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "scode/gf2.hpp"

namespace scode {

// Duplicate-free set of subspaces of F_2^v, kept in canonical order.
class SubspaceCode {
 public:
  SubspaceCode() = default;
  explicit SubspaceCode(int ambient);
  SubspaceCode(int ambient, std::vector<Subspace> words);

  int ambient() const { return v_; }
  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  const std::vector<Subspace>& words() const { return words_; }

  bool contains(const Subspace& s) const;
  bool insert(const Subspace& s);  // false if already present
  bool erase(const Subspace& s);

  // delta_0 .. delta_v
  std::vector<std::uint64_t> dimension_distribution() const;

  bool operator==(const SubspaceCode&) const = default;

 private:
  int v_ = 0;
  std::vector<Subspace> words_;
};

// Minimum distance with the infinite sentinel for |C| <= 1. The sentinel
// compares greater than every finite value.
struct MinDistance {
  bool infinite = true;
  int value = 0;

  bool at_least(int d) const { return infinite || value >= d; }
  friend bool operator==(const MinDistance&, const MinDistance&) = default;
};

MinDistance min_distance(const SubspaceCode& c);
std::map<int, std::uint64_t> distance_distribution(const SubspaceCode& c);

struct VerifyReport {
  static constexpr std::size_t kMaxListed = 16;
  std::uint64_t close_pair_count = 0;  // pairs at distance < d
  std::vector<std::pair<Subspace, Subspace>> close_pairs;  // first few
  std::vector<Subspace> dim_violations;                    // dims outside T
  bool ok() const { return close_pair_count == 0 && dim_violations.empty(); }
};

VerifyReport verify(const SubspaceCode& c, int d, const std::vector<int>& dims);

// GL(v,2)-invariant data of a code. Equal fingerprints are necessary but not
// sufficient for isomorphism.
struct Fingerprint {
  int v = 0;
  std::uint64_t size = 0;
  std::vector<std::uint64_t> dim_distribution;
  std::map<int, std::uint64_t> distance_histogram;
  std::vector<std::uint64_t> point_degrees;       // sorted multiset
  std::vector<std::uint64_t> hyperplane_degrees;  // sorted multiset

  bool operator==(const Fingerprint&) const = default;
  std::string to_string() const;
};

Fingerprint fingerprint(const SubspaceCode& c);

SubspaceCode apply(const SubspaceCode& c, const BitMatrix& g);
SubspaceCode dual_code(const SubspaceCode& c);

// Exhaustive GL(v,2) search, v <= 4 only. With allow_dual the duality map
// pi is admitted as an isometry as well.
bool is_isomorphic_bruteforce(const SubspaceCode& a, const SubspaceCode& b,
                              bool allow_dual = false);

struct ReadResult {
  SubspaceCode code;
  bool normalized = false;          // some rows were not in rref
  bool duplicates_removed = false;
  std::vector<std::string> warnings;
};

// Text format: header "v=<int> q=2"; one subspace per line, rows joined by
// ';' ("-" for the zero space); '#' starts a comment.
ReadResult read_code(std::istream& in);
ReadResult read_code_file(const std::string& path);
void write_code(const SubspaceCode& c, std::ostream& out);
void write_code_file(const SubspaceCode& c, const std::string& path);

}  // namespace scode
