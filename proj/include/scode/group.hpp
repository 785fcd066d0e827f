#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "scode/code.hpp"
#include "scode/gf2.hpp"

namespace scode {

// A finite subgroup of GL(v,2), stored by its full element list.
struct MatrixGroup {
  int v = 0;
  std::vector<BitMatrix> generators;
  std::vector<BitMatrix> elements;  // closure, sorted by row masks

  std::uint64_t order() const { return elements.size(); }
};

inline constexpr std::size_t kDefaultClosureCap = 1'000'000;

// Smallest group containing the generators; matrices act on row vectors from
// the right. Throws on singular generators or when the cap is exceeded.
MatrixGroup closure(int v, std::vector<BitMatrix> generators,
                    std::size_t cap = kDefaultClosureCap);

struct OrbitDecomposition {
  int k = 0;
  // Each orbit sorted canonically; orbits listed by their representative
  // (= first element), which is the canonical minimum.
  std::vector<std::vector<Subspace>> orbits;
};

OrbitDecomposition orbits(const MatrixGroup& g, int k);
std::vector<Subspace> fixed_subspaces(const MatrixGroup& g, int k);

// Number of supplied elements mapping c onto itself.
std::uint64_t stabilizer_order(const MatrixGroup& g, const SubspaceCode& c);

// Full GL(v,2) for v <= 4, cached.
const MatrixGroup& general_linear_group(int v);

// Generator file: header "v=<int>", then one generator per line, v rows of
// width v joined by ';'.
std::vector<BitMatrix> read_generators(std::istream& in, int& v_out);
std::vector<BitMatrix> read_generators_file(const std::string& path, int& v_out);

}  // namespace scode
