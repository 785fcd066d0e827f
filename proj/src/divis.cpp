#include "scode/divis.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "scode/construct.hpp"
#include "scode/grassmann.hpp"

namespace scode {

PointMultiset::PointMultiset(int ambient) : v_(ambient) {
  if (ambient < 1 || ambient > kMaxAmbient) {
    throw std::invalid_argument("multiset ambient dimension out of range");
  }
  chi_.assign(1ull << ambient, 0);
}

void PointMultiset::check_point(Row p) const {
  if (p == 0 || p >= chi_.size()) {
    throw std::invalid_argument("not a point of the ambient space");
  }
}

std::uint64_t PointMultiset::multiplicity(Row p) const {
  check_point(p);
  return chi_[p];
}

void PointMultiset::set_multiplicity(Row p, std::uint64_t m) {
  check_point(p);
  chi_[p] = m;
}

void PointMultiset::add(Row p, std::uint64_t m) {
  check_point(p);
  chi_[p] += m;
}

std::uint64_t PointMultiset::cardinality() const {
  std::uint64_t total = 0;
  for (std::size_t p = 1; p < chi_.size(); ++p) total += chi_[p];
  return total;
}

std::uint64_t PointMultiset::max_multiplicity() const {
  std::uint64_t best = 0;
  for (std::size_t p = 1; p < chi_.size(); ++p) best = std::max(best, chi_[p]);
  return best;
}

std::vector<Row> PointMultiset::support() const {
  std::vector<Row> out;
  for (std::size_t p = 1; p < chi_.size(); ++p) {
    if (chi_[p] > 0) out.push_back(static_cast<Row>(p));
  }
  return out;
}

PointMultiset points_of_code(const SubspaceCode& c, std::uint64_t weight) {
  PointMultiset p(c.ambient());
  for (const auto& w : c.words()) {
    for (Row pt : w.points()) p.add(pt, weight);
  }
  return p;
}

bool is_divisible(const PointMultiset& p, int r) {
  if (r < 0) throw std::invalid_argument("divisibility order must be >= 0");
  if (r == 0) return true;
  const int v = p.ambient();
  const std::uint64_t mod = 1ull << r;
  const std::uint64_t total = p.cardinality();
  for (Row h = 1; h < (1u << v); ++h) {
    std::uint64_t sum = 0;
    for (Row pt = 1; pt < (1u << v); ++pt) {
      if (!parity_product(pt, h)) sum += p.multiplicity(pt);
    }
    if ((total - sum) % mod != 0) return false;
  }
  return true;
}

PointMultiset complement(const PointMultiset& p, std::uint64_t lambda) {
  PointMultiset out(p.ambient());
  for (Row pt = 1; pt < (1u << p.ambient()); ++pt) {
    std::uint64_t m = p.multiplicity(pt);
    if (m > lambda) {
      throw std::invalid_argument("multiplicity exceeds the complement level");
    }
    out.set_multiplicity(pt, lambda - m);
  }
  return out;
}

std::optional<Subspace> recognize_subspace(const PointMultiset& p, int r) {
  if (r < 1) throw std::invalid_argument("recognize_subspace requires r >= 1");
  if (p.cardinality() != (1ull << (r + 1)) - 1) return std::nullopt;
  if (!is_divisible(p, r)) return std::nullopt;
  // The preconditions force the multiset to be the point set of an
  // (r+1)-subspace; anything else would contradict the classification.
  auto support = p.support();
  for (Row pt : support) {
    if (p.multiplicity(pt) != 1) {
      throw std::logic_error("divisible multiset with a repeated point");
    }
  }
  Subspace s = Subspace::from_rows(p.ambient(), support);
  if (s.dim() != r + 1 || s.points() != support) {
    throw std::logic_error("divisible multiset support is not a subspace");
  }
  return s;
}

namespace {

void check_lmrd_input(const SubspaceCode& c, const Subspace& S) {
  if (c.ambient() != 8 || S.ambient() != 8 || S.dim() != 4) {
    throw std::invalid_argument("lmrd_extend expects solids of F_2^8");
  }
  if (c.size() != 254 && c.size() != 255) {
    throw std::invalid_argument("lmrd_extend expects 254 or 255 codewords");
  }
  for (const auto& w : c.words()) {
    if (w.dim() != 4) {
      throw std::invalid_argument("lmrd_extend expects solids only");
    }
    if (subspace_distance(w, S) != 8) {
      throw std::invalid_argument("codeword is not disjoint from S");
    }
  }
  if (!min_distance(c).at_least(6)) {
    throw std::invalid_argument("codewords violate minimum distance 6");
  }
}

// All solids whose 15 points fit under the multiset.
std::vector<Subspace> solids_under(const PointMultiset& p) {
  auto support = p.support();
  std::set<Subspace> found;
  const std::size_t n = support.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        for (std::size_t d = c + 1; d < n; ++d) {
          Subspace s = Subspace::from_rows(
              p.ambient(), {support[a], support[b], support[c], support[d]});
          if (s.dim() != 4 || found.count(s)) continue;
          bool inside = true;
          for (Row pt : s.points()) {
            if (p.multiplicity(pt) == 0) {
              inside = false;
              break;
            }
          }
          if (inside) found.insert(std::move(s));
        }
      }
    }
  }
  return {found.begin(), found.end()};
}

}  // namespace

std::vector<Subspace> lmrd_extend(const SubspaceCode& c, const Subspace& S) {
  check_lmrd_input(c, S);
  PointMultiset chi = points_of_code(c);
  for (Row pt : S.points()) chi.add(pt, 16);
  PointMultiset missing = complement(chi, 16);

  std::vector<Subspace> out;
  if (c.size() == 255) {
    auto u = recognize_subspace(missing, 3);
    if (!u) throw std::logic_error("255-solid complement is not a solid");
    out.push_back(*u);
  } else {
    std::set<std::pair<Subspace, Subspace>> pairs;
    for (const Subspace& u : solids_under(missing)) {
      PointMultiset rest = missing;
      for (Row pt : u.points()) {
        rest.set_multiplicity(pt, rest.multiplicity(pt) - 1);
      }
      auto u2 = recognize_subspace(rest, 3);
      if (!u2) continue;
      pairs.insert(u < *u2 ? std::make_pair(u, *u2) : std::make_pair(*u2, u));
    }
    if (pairs.size() != 1) {
      throw std::logic_error("254-solid complement is not a pair of solids");
    }
    out.push_back(pairs.begin()->first);
    out.push_back(pairs.begin()->second);
    if (meet(out[0], out[1]).dim() > 1) {
      throw std::logic_error("completing solids intersect in a line");
    }
  }
  for (const auto& u : out) {
    if (meet(u, S).dim() != 0) {
      throw std::logic_error("completing solid meets S");
    }
    for (const auto& w : c.words()) {
      if (subspace_distance(u, w) < 6) {
        throw std::logic_error("completing solid too close to a codeword");
      }
    }
  }
  return out;
}

std::uint64_t count_extending_solids(const SubspaceCode& c, int d) {
  std::uint64_t count = 0;
  GrassmannIter it(c.ambient(), 4);
  while (auto u = it.next()) {
    bool ok = true;
    for (const auto& w : c.words()) {
      if (subspace_distance(*u, w) < d) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
  }
  return count;
}

TheoremExtensionReport verify_theorem_extensions() {
  static const char* kMatrices[] = {
      "00001010;00000101",
      "00000010;00000001",
      "00000100;00000010;00000001",
      "00001000;00000100;00000010;00000001",
      "00010000;00001000;00000100;00000010",
      "00010000;00001000;00000100;00000010;00000001",
      "00100000;00010000;00001000;00000100;00000010;00000001",
      "10010000;01010000;00001000;00000100;00000010;00000001",
  };
  SubspaceCode g = gabidulin(8, 4, 3);
  Subspace s = special_subspace(8, 4);
  TheoremExtensionReport report;
  report.all_ok = true;
  for (const char* spec : kMatrices) {
    TheoremExtensionReport::Item item{Subspace::from_string(8, spec), 0, false,
                                      0, false, false};
    item.min_distance = 2 * 8 + 1;
    for (const auto& w : g.words()) {
      item.min_distance =
          std::min(item.min_distance, subspace_distance(item.extension, w));
    }
    item.distance_ok = item.min_distance >= 6;
    item.dim_meet_s = meet(item.extension, s).dim();
    item.inside_s = s.contains(item.extension);
    item.contains_s = item.extension.contains(s);
    if (!item.distance_ok) report.all_ok = false;
    if (item.extension.dim() <= 3 && !item.inside_s) report.all_ok = false;
    report.items.push_back(std::move(item));
  }
  return report;
}

PointMultiset read_multiset(std::istream& in) {
  std::string line;
  int lineno = 0;
  int v = -1;
  std::vector<std::pair<Row, std::uint64_t>> entries;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string point;
    if (!(ls >> point)) continue;
    std::uint64_t mult = 0;
    if (!(ls >> mult)) {
      throw std::runtime_error("line " + std::to_string(lineno) +
                               ": expected 'point multiplicity'");
    }
    if (v < 0) v = static_cast<int>(point.size());
    entries.emplace_back(row_from_string(point, v), mult);
  }
  if (v < 0) throw std::runtime_error("empty multiset file");
  PointMultiset p(v);
  for (auto [pt, m] : entries) p.set_multiplicity(pt, m);
  return p;
}

PointMultiset read_multiset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return read_multiset(in);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void write_multiset(const PointMultiset& p, std::ostream& out) {
  for (Row pt = 1; pt < (1u << p.ambient()); ++pt) {
    std::uint64_t m = p.multiplicity(pt);
    if (m > 0) out << row_to_string(pt, p.ambient()) << " " << m << "\n";
  }
}

void write_multiset_file(const PointMultiset& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_multiset(p, out);
}

}  // namespace scode
