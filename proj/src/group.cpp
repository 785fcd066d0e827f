#include "scode/group.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "scode/grassmann.hpp"

namespace scode {

MatrixGroup closure(int v, std::vector<BitMatrix> generators, std::size_t cap) {
  for (const auto& g : generators) {
    if (g.v != v || g.row_count() != v) {
      throw std::invalid_argument("generator is not a " + std::to_string(v) +
                                  "x" + std::to_string(v) + " matrix");
    }
    if (!g.is_invertible()) {
      throw std::invalid_argument("generator is singular");
    }
  }
  MatrixGroup group;
  group.v = v;
  group.generators = generators;

  std::set<std::vector<Row>> seen;
  std::deque<BitMatrix> work;
  BitMatrix id = BitMatrix::identity(v);
  seen.insert(id.rows);
  work.push_back(id);
  // Finite order of every element makes closure under right products enough.
  while (!work.empty()) {
    BitMatrix m = std::move(work.front());
    work.pop_front();
    for (const auto& g : generators) {
      BitMatrix prod = m.multiplied(g);
      if (seen.insert(prod.rows).second) {
        if (seen.size() > cap) {
          throw std::runtime_error("group closure exceeds cap of " +
                                   std::to_string(cap) + " elements");
        }
        work.push_back(std::move(prod));
      }
    }
  }
  for (const auto& rows : seen) group.elements.emplace_back(v, rows);
  return group;
}

OrbitDecomposition orbits(const MatrixGroup& g, int k) {
  OrbitDecomposition dec;
  dec.k = k;
  std::unordered_set<Subspace, SubspaceHash> visited;
  GrassmannIter it(g.v, k);
  while (auto s = it.next()) {
    if (visited.count(*s)) continue;
    std::set<Subspace> orbit;
    for (const auto& m : g.elements) orbit.insert(transform(*s, m));
    for (const auto& u : orbit) visited.insert(u);
    if (g.order() % orbit.size() != 0) {
      throw std::logic_error("orbit size does not divide the group order");
    }
    dec.orbits.emplace_back(orbit.begin(), orbit.end());
  }
  return dec;
}

std::vector<Subspace> fixed_subspaces(const MatrixGroup& g, int k) {
  std::vector<Subspace> fixed;
  GrassmannIter it(g.v, k);
  while (auto s = it.next()) {
    bool ok = true;
    for (const auto& gen : g.generators) {
      if (!(transform(*s, gen) == *s)) {
        ok = false;
        break;
      }
    }
    if (ok) fixed.push_back(std::move(*s));
  }
  return fixed;
}

std::uint64_t stabilizer_order(const MatrixGroup& g, const SubspaceCode& c) {
  if (g.v != c.ambient()) {
    throw std::invalid_argument("group and code ambient dimensions differ");
  }
  std::uint64_t count = 0;
  for (const auto& m : g.elements) {
    bool maps_onto = true;
    for (const auto& w : c.words()) {
      if (!c.contains(transform(w, m))) {
        maps_onto = false;
        break;
      }
    }
    if (maps_onto) ++count;
  }
  return count;
}

const MatrixGroup& general_linear_group(int v) {
  if (v < 1 || v > 4) {
    throw std::invalid_argument("general_linear_group supports 1 <= v <= 4");
  }
  static std::map<int, MatrixGroup> cache;
  auto it = cache.find(v);
  if (it != cache.end()) return it->second;
  // Row operations r_i += r_j for neighbouring i, j generate the whole group.
  std::vector<BitMatrix> gens;
  for (int i = 0; i + 1 < v; ++i) {
    for (int swap = 0; swap < 2; ++swap) {
      BitMatrix t = BitMatrix::identity(v);
      int a = swap ? i + 1 : i;
      int b = swap ? i : i + 1;
      t.rows[static_cast<std::size_t>(a)] = static_cast<Row>(
          t.rows[static_cast<std::size_t>(a)] | (1u << (v - 1 - b)));
      gens.push_back(std::move(t));
    }
  }
  if (v == 1) gens.push_back(BitMatrix::identity(1));
  return cache.emplace(v, closure(v, std::move(gens))).first->second;
}

std::vector<BitMatrix> read_generators(std::istream& in, int& v_out) {
  std::string line;
  int lineno = 0;
  int v = -1;
  std::vector<BitMatrix> gens;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t' ||
                             line.back() == '\r')) {
      line.pop_back();
    }
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    line.erase(0, start);
    if (v < 0) {
      if (std::sscanf(line.c_str(), "v=%d", &v) != 1 || v < 1 ||
          v > kMaxAmbient) {
        throw std::runtime_error("line " + std::to_string(lineno) +
                                 ": expected header 'v=<int>'");
      }
      continue;
    }
    std::vector<Row> rows;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      std::size_t next = line.find(';', pos);
      std::string part = line.substr(
          pos, next == std::string::npos ? std::string::npos : next - pos);
      rows.push_back(row_from_string(part, v));
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    if (static_cast<int>(rows.size()) != v) {
      throw std::runtime_error("line " + std::to_string(lineno) +
                               ": expected " + std::to_string(v) + " rows");
    }
    gens.emplace_back(v, std::move(rows));
  }
  if (v < 0) throw std::runtime_error("missing header 'v=<int>'");
  v_out = v;
  return gens;
}

std::vector<BitMatrix> read_generators_file(const std::string& path,
                                            int& v_out) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return read_generators(in, v_out);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

}  // namespace scode
