#include "scode/code.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "scode/grassmann.hpp"
#include "scode/group.hpp"

namespace scode {

SubspaceCode::SubspaceCode(int ambient) : v_(ambient) {
  if (ambient < 0 || ambient > kMaxAmbient) {
    throw std::invalid_argument("code ambient dimension out of range");
  }
}

SubspaceCode::SubspaceCode(int ambient, std::vector<Subspace> words)
    : SubspaceCode(ambient) {
  for (const auto& w : words) {
    if (w.ambient() != ambient) {
      throw std::invalid_argument("codeword ambient dimension mismatch");
    }
  }
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  words_ = std::move(words);
}

bool SubspaceCode::contains(const Subspace& s) const {
  return std::binary_search(words_.begin(), words_.end(), s);
}

bool SubspaceCode::insert(const Subspace& s) {
  if (s.ambient() != v_) {
    throw std::invalid_argument("codeword ambient dimension mismatch");
  }
  auto it = std::lower_bound(words_.begin(), words_.end(), s);
  if (it != words_.end() && *it == s) return false;
  words_.insert(it, s);
  return true;
}

bool SubspaceCode::erase(const Subspace& s) {
  auto it = std::lower_bound(words_.begin(), words_.end(), s);
  if (it == words_.end() || !(*it == s)) return false;
  words_.erase(it);
  return true;
}

std::vector<std::uint64_t> SubspaceCode::dimension_distribution() const {
  std::vector<std::uint64_t> delta(static_cast<std::size_t>(v_) + 1, 0);
  for (const auto& w : words_) ++delta[static_cast<std::size_t>(w.dim())];
  return delta;
}

MinDistance min_distance(const SubspaceCode& c) {
  if (c.size() <= 1) return MinDistance{true, 0};
  int best = 2 * c.ambient() + 1;
  const auto& w = c.words();
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      best = std::min(best, subspace_distance(w[i], w[j]));
      if (best == 1) return MinDistance{false, 1};
    }
  }
  return MinDistance{false, best};
}

std::map<int, std::uint64_t> distance_distribution(const SubspaceCode& c) {
  std::map<int, std::uint64_t> hist;
  const auto& w = c.words();
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      ++hist[subspace_distance(w[i], w[j])];
    }
  }
  return hist;
}

VerifyReport verify(const SubspaceCode& c, int d, const std::vector<int>& dims) {
  VerifyReport report;
  const auto& w = c.words();
  for (const auto& word : w) {
    if (std::find(dims.begin(), dims.end(), word.dim()) == dims.end()) {
      report.dim_violations.push_back(word);
    }
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      if (subspace_distance(w[i], w[j]) < d) {
        ++report.close_pair_count;
        if (report.close_pairs.size() < VerifyReport::kMaxListed) {
          report.close_pairs.emplace_back(w[i], w[j]);
        }
      }
    }
  }
  return report;
}

Fingerprint fingerprint(const SubspaceCode& c) {
  Fingerprint fp;
  fp.v = c.ambient();
  fp.size = c.size();
  fp.dim_distribution = c.dimension_distribution();
  fp.distance_histogram = distance_distribution(c);
  for (Row p = 1; p < (1u << c.ambient()); ++p) {
    std::uint64_t deg = 0;
    for (const auto& w : c.words()) {
      if (w.contains_vector(p)) ++deg;
    }
    fp.point_degrees.push_back(deg);
  }
  std::sort(fp.point_degrees.begin(), fp.point_degrees.end());
  if (c.ambient() >= 1) {
    GrassmannIter hyperplanes(c.ambient(), c.ambient() - 1);
    while (auto h = hyperplanes.next()) {
      std::uint64_t deg = 0;
      for (const auto& w : c.words()) {
        if (h->contains(w)) ++deg;
      }
      fp.hyperplane_degrees.push_back(deg);
    }
    std::sort(fp.hyperplane_degrees.begin(), fp.hyperplane_degrees.end());
  }
  return fp;
}

std::string Fingerprint::to_string() const {
  std::ostringstream out;
  out << "v=" << v << " M=" << size << " dims=(";
  for (std::size_t k = 0; k < dim_distribution.size(); ++k) {
    if (k > 0) out << ',';
    out << dim_distribution[k];
  }
  out << ") distances={";
  bool first = true;
  for (const auto& [d, n] : distance_histogram) {
    if (!first) out << ',';
    first = false;
    out << d << ':' << n;
  }
  out << "}";
  auto degree_summary = [&out](const std::vector<std::uint64_t>& degs) {
    std::map<std::uint64_t, std::uint64_t> freq;
    for (auto d : degs) ++freq[d];
    out << '{';
    bool f = true;
    for (const auto& [deg, n] : freq) {
      if (!f) out << ',';
      f = false;
      out << deg << '^' << n;
    }
    out << '}';
  };
  out << " point-degrees=";
  degree_summary(point_degrees);
  out << " hyperplane-degrees=";
  degree_summary(hyperplane_degrees);
  return out.str();
}

SubspaceCode apply(const SubspaceCode& c, const BitMatrix& g) {
  std::vector<Subspace> words;
  words.reserve(c.size());
  for (const auto& w : c.words()) words.push_back(transform(w, g));
  return SubspaceCode(c.ambient(), std::move(words));
}

SubspaceCode dual_code(const SubspaceCode& c) {
  std::vector<Subspace> words;
  words.reserve(c.size());
  for (const auto& w : c.words()) words.push_back(dual(w));
  return SubspaceCode(c.ambient(), std::move(words));
}

bool is_isomorphic_bruteforce(const SubspaceCode& a, const SubspaceCode& b,
                              bool allow_dual) {
  if (a.ambient() != b.ambient()) return false;
  if (a.ambient() > 4) {
    throw std::invalid_argument(
        "brute-force isomorphism is limited to ambient dimension <= 4");
  }
  if (a.size() != b.size()) return false;
  bool direct_possible = fingerprint(a) == fingerprint(b);
  bool dual_possible =
      allow_dual && fingerprint(dual_code(a)) == fingerprint(b);
  if (!direct_possible && !dual_possible) return false;
  const MatrixGroup& gl = general_linear_group(a.ambient());
  SubspaceCode a_dual = dual_code(a);
  for (const auto& g : gl.elements) {
    if (direct_possible && apply(a, g) == b) return true;
    if (dual_possible && apply(a_dual, g) == b) return true;
  }
  return false;
}

ReadResult read_code(std::istream& in) {
  std::string line;
  int lineno = 0;
  int v = -1;
  auto fail = [&lineno](const std::string& msg) {
    throw std::runtime_error("line " + std::to_string(lineno) + ": " + msg);
  };
  std::vector<Subspace> words;
  ReadResult result;
  std::vector<std::string> row_warnings;
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
      int q = 0;
      if (std::sscanf(line.c_str(), "v=%d q=%d", &v, &q) != 2 || q != 2 ||
          v < 0 || v > kMaxAmbient) {
        fail("expected header 'v=<int> q=2'");
      }
      continue;
    }
    std::vector<Row> rows;
    if (line != "-") {
      std::size_t pos = 0;
      while (pos <= line.size()) {
        std::size_t next = line.find(';', pos);
        std::string part = line.substr(
            pos, next == std::string::npos ? std::string::npos : next - pos);
        try {
          rows.push_back(row_from_string(part, v));
        } catch (const std::exception& e) {
          fail(e.what());
        }
        if (next == std::string::npos) break;
        pos = next + 1;
      }
    }
    std::vector<Row> original = rows;
    Subspace s = Subspace::from_rows(v, std::move(rows));
    if (s.rows() != original) {
      result.normalized = true;
      row_warnings.push_back("line " + std::to_string(lineno) +
                             ": rows were not in rref, normalized");
    }
    words.push_back(std::move(s));
  }
  if (v < 0) throw std::runtime_error("missing header 'v=<int> q=2'");
  std::size_t before = words.size();
  result.code = SubspaceCode(v, std::move(words));
  if (result.code.size() < before) {
    result.duplicates_removed = true;
    result.warnings.push_back(std::to_string(before - result.code.size()) +
                              " duplicate subspace(s) removed");
  }
  result.warnings.insert(result.warnings.end(), row_warnings.begin(),
                         row_warnings.end());
  return result;
}

ReadResult read_code_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return read_code(in);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void write_code(const SubspaceCode& c, std::ostream& out) {
  out << "v=" << c.ambient() << " q=2\n";
  for (const auto& w : c.words()) out << w.to_string() << "\n";
}

void write_code_file(const SubspaceCode& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_code(c, out);
}

}  // namespace scode
