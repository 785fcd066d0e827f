#include "scode/construct.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>

#include "scode/grassmann.hpp"

namespace scode {

namespace {

int rank_of_rows(std::span<const Row> rows) {
  std::array<Row, kMaxAmbient> piv{};
  int rank = 0;
  for (Row r : rows) {
    while (r != 0) {
      int b = top_bit(r);
      if (piv[static_cast<std::size_t>(b)]) {
        r = static_cast<Row>(r ^ piv[static_cast<std::size_t>(b)]);
      } else {
        piv[static_cast<std::size_t>(b)] = r;
        ++rank;
        break;
      }
    }
  }
  return rank;
}

int rank_distance(const BitMatrix& a, const BitMatrix& b) {
  std::array<Row, kMaxAmbient> diff{};
  for (int i = 0; i < a.row_count(); ++i) {
    diff[static_cast<std::size_t>(i)] =
        static_cast<Row>(a.rows[static_cast<std::size_t>(i)] ^
                         b.rows[static_cast<std::size_t>(i)]);
  }
  return rank_of_rows(std::span<const Row>(diff.data(),
                                           static_cast<std::size_t>(a.row_count())));
}

void check_gabidulin_spec(const GabidulinSpec& spec) {
  int n = spec.v - spec.k;
  if (spec.delta < 1 || spec.delta > spec.k || 2 * spec.k > spec.v) {
    throw std::invalid_argument("gabidulin requires 1 <= delta <= k <= v/2");
  }
  if (n < 1 || n > 8) {
    throw std::invalid_argument("gabidulin requires 1 <= v-k <= 8");
  }
}

}  // namespace

std::vector<BitMatrix> gabidulin_matrices(const GabidulinSpec& spec) {
  check_gabidulin_spec(spec);
  const int k = spec.k;
  const int n = spec.v - spec.k;
  ExtField field = spec.modulus ? ExtField(n, *spec.modulus) : ExtField(n);

  const int coeff_count = k - spec.delta + 1;
  const std::uint64_t total = 1ull << (static_cast<unsigned>(n) *
                                       static_cast<unsigned>(coeff_count));
  std::vector<BitMatrix> out;
  out.reserve(total);
  std::vector<unsigned> coeffs(static_cast<std::size_t>(coeff_count), 0);
  for (std::uint64_t tuple = 0; tuple < total; ++tuple) {
    std::uint64_t t = tuple;
    for (int i = 0; i < coeff_count; ++i) {
      coeffs[static_cast<std::size_t>(i)] =
          static_cast<unsigned>(t & (field.size() - 1));
      t >>= n;
    }
    std::vector<Row> rows(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      // W is spanned by alpha^0 .. alpha^{k-1}; k <= n guarantees these are
      // independent over F_2.
      unsigned basis = 1u << i;
      rows[static_cast<std::size_t>(i)] =
          static_cast<Row>(linpoly_eval(field, coeffs, basis));
    }
    out.emplace_back(n, std::move(rows));
  }
  return out;
}

SubspaceCode gabidulin(const GabidulinSpec& spec) {
  return lift(gabidulin_matrices(spec));
}

Subspace special_subspace(int v, int k) {
  int n = v - k;
  std::vector<Row> rows(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    rows[static_cast<std::size_t>(i)] = static_cast<Row>(1u << (n - 1 - i));
  }
  return Subspace::from_rows(v, std::move(rows));
}

Subspace lift_matrix(const BitMatrix& m) {
  const int k = m.row_count();
  const int n = m.v;
  if (k + n > kMaxAmbient) {
    throw std::invalid_argument("lifted ambient dimension exceeds 16");
  }
  std::vector<Row> rows(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    rows[static_cast<std::size_t>(i)] = static_cast<Row>(
        (1u << (k + n - 1 - i)) | m.rows[static_cast<std::size_t>(i)]);
  }
  // Rows of (I_k | M) are already in rref.
  return Subspace::from_rows(k + n, std::move(rows));
}

SubspaceCode lift(const std::vector<BitMatrix>& matrices,
                  int check_min_rank_distance) {
  if (matrices.empty()) {
    throw std::invalid_argument("lift requires at least one matrix");
  }
  const int k = matrices.front().row_count();
  const int n = matrices.front().v;
  std::set<std::vector<Row>> seen;
  for (const auto& m : matrices) {
    if (m.row_count() != k || m.v != n) {
      throw std::invalid_argument("lift requires matrices of equal shape");
    }
    if (!seen.insert(m.rows).second) {
      throw std::invalid_argument("duplicate matrix in lift input");
    }
  }
  if (check_min_rank_distance > 0) {
    for (std::size_t i = 0; i < matrices.size(); ++i) {
      for (std::size_t j = i + 1; j < matrices.size(); ++j) {
        if (rank_distance(matrices[i], matrices[j]) < check_min_rank_distance) {
          throw std::invalid_argument("rank distance below requested minimum");
        }
      }
    }
  }
  std::vector<Subspace> words;
  words.reserve(matrices.size());
  for (const auto& m : matrices) words.push_back(lift_matrix(m));
  return SubspaceCode(k + n, std::move(words));
}

std::map<std::uint64_t, std::uint64_t> cover_count(const SubspaceCode& lmrd,
                                                   const Subspace& S, int t) {
  const int v = lmrd.ambient();
  if (S.ambient() != v) {
    throw std::invalid_argument("special subspace ambient mismatch");
  }
  std::map<std::uint64_t, std::uint64_t> hist;
  GrassmannIter it(v, t);
  while (auto u = it.next()) {
    if (subspace_distance(*u, S) != t + S.dim()) continue;  // not disjoint
    std::uint64_t covered = 0;
    for (const auto& w : lmrd.words()) {
      if (w.contains(*u)) ++covered;
    }
    ++hist[covered];
  }
  return hist;
}

SubspaceCode spread(int v) {
  if (v < 2 || v % 2 != 0) {
    throw std::invalid_argument("spread requires even v >= 2");
  }
  const int m = v / 2;
  SubspaceCode code = gabidulin(v, m, m);
  code.insert(special_subspace(v, m));
  return code;
}

namespace {

std::vector<std::pair<int, int>> profile_cells(int v, Row pivots) {
  std::vector<int> pivot_bits;
  for (int bit = v - 1; bit >= 0; --bit) {
    if (pivots >> bit & 1) pivot_bits.push_back(bit);
  }
  std::vector<std::pair<int, int>> cells;
  for (std::size_t row = 0; row < pivot_bits.size(); ++row) {
    for (int bit = pivot_bits[row] - 1; bit >= 0; --bit) {
      if ((pivots >> bit & 1) == 0) cells.emplace_back(static_cast<int>(row), bit);
    }
  }
  return cells;
}

// Matrices are cell masks; rank distance of two masks is the rank of the
// XOR laid out on the profile's rows.
struct FerrersSearch {
  int v;
  int k;
  std::vector<std::pair<int, int>> cells;
  int delta;
  std::uint64_t target;
  std::vector<std::uint64_t> best;

  int mask_rank(std::uint64_t mask) const {
    std::array<Row, kMaxAmbient> rows{};
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (mask >> i & 1) {
        auto [row, bit] = cells[i];
        rows[static_cast<std::size_t>(row)] = static_cast<Row>(
            rows[static_cast<std::size_t>(row)] | (1u << bit));
      }
    }
    return rank_of_rows(std::span<const Row>(rows.data(),
                                             static_cast<std::size_t>(k)));
  }

  void run() {
    // Translation invariance: a code of maximum size may be assumed to
    // contain the zero matrix.
    std::vector<std::uint64_t> chosen{0};
    std::vector<std::uint64_t> candidates;
    for (std::uint64_t m = 1; m < (1ull << cells.size()); ++m) {
      if (mask_rank(m) >= delta) candidates.push_back(m);
    }
    best = chosen;
    dfs(chosen, candidates);
  }

  void dfs(std::vector<std::uint64_t>& chosen,
           const std::vector<std::uint64_t>& candidates) {
    if (chosen.size() > best.size()) best = chosen;
    if (best.size() >= target) return;
    if (chosen.size() + candidates.size() <= best.size()) return;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (chosen.size() + (candidates.size() - i) <= best.size()) return;
      std::uint64_t next = candidates[i];
      std::vector<std::uint64_t> narrowed;
      for (std::size_t j = i + 1; j < candidates.size(); ++j) {
        if (mask_rank(candidates[j] ^ next) >= delta) {
          narrowed.push_back(candidates[j]);
        }
      }
      chosen.push_back(next);
      dfs(chosen, narrowed);
      chosen.pop_back();
      if (best.size() >= target) return;
    }
  }
};

}  // namespace

EchelonFerrersResult echelon_ferrers(const std::vector<PivotProfile>& profiles,
                                     int d) {
  if (profiles.empty()) {
    throw std::invalid_argument("echelon_ferrers requires at least one profile");
  }
  const int v = profiles.front().v;
  for (const auto& p : profiles) {
    if (p.v != v) throw std::invalid_argument("profile ambient mismatch");
    if (p.target == 0) throw std::invalid_argument("profile target must be >= 1");
  }
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    for (std::size_t j = i + 1; j < profiles.size(); ++j) {
      if (weight(static_cast<Row>(profiles[i].pivots ^ profiles[j].pivots)) < d) {
        throw std::invalid_argument(
            "pivot vectors violate the pairwise Hamming distance bound");
      }
    }
  }

  const int delta = (d + 1) / 2;
  EchelonFerrersResult result;
  result.code = SubspaceCode(v);
  for (const auto& p : profiles) {
    const int k = weight(p.pivots);
    const int n = v - k;
    Row rectangle = k == 0 ? Row(0)
                           : static_cast<Row>(((1u << k) - 1) << n);
    std::vector<std::vector<Row>> fills;  // fill rows, width v, no pivot bits
    if (k == 0) {
      fills.push_back({});
    } else if (p.pivots == rectangle && delta <= k && k <= n) {
      // Full k x n rectangle: take a Gabidulin MRD prefix.
      auto mats = gabidulin_matrices(GabidulinSpec{v, k, delta, std::nullopt});
      std::uint64_t take = std::min<std::uint64_t>(p.target, mats.size());
      for (std::uint64_t i = 0; i < take; ++i) {
        fills.push_back(mats[i].rows);
      }
    } else {
      auto cells = profile_cells(v, p.pivots);
      if (cells.size() > 24) {
        throw std::invalid_argument(
            "profile has too many free cells for exhaustive fill search");
      }
      FerrersSearch search{v, k, cells, delta, p.target, {}};
      search.run();
      for (std::uint64_t mask : search.best) {
        std::vector<Row> rows(static_cast<std::size_t>(k), 0);
        for (std::size_t i = 0; i < cells.size(); ++i) {
          if (mask >> i & 1) {
            auto [row, bit] = cells[i];
            rows[static_cast<std::size_t>(row)] = static_cast<Row>(
                rows[static_cast<std::size_t>(row)] | (1u << bit));
          }
        }
        fills.push_back(std::move(rows));
      }
    }
    result.achieved.push_back(fills.size());

    std::vector<int> pivot_bits;
    for (int bit = v - 1; bit >= 0; --bit) {
      if (p.pivots >> bit & 1) pivot_bits.push_back(bit);
    }
    for (const auto& fill : fills) {
      std::vector<Row> rows(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) {
        rows[static_cast<std::size_t>(i)] = static_cast<Row>(
            (1u << pivot_bits[static_cast<std::size_t>(i)]) |
            fill[static_cast<std::size_t>(i)]);
      }
      if (!result.code.insert(Subspace::from_rows(v, std::move(rows)))) {
        throw std::logic_error("echelon-ferrers produced a duplicate codeword");
      }
    }
  }

  MinDistance md = min_distance(result.code);
  if (!md.at_least(d)) {
    throw std::logic_error("echelon-ferrers output violates the distance bound");
  }
  return result;
}

SubspaceCode extend_greedy(const SubspaceCode& c, int d,
                           const std::vector<int>& dims) {
  SubspaceCode out = c;
  std::vector<int> order = dims;
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());
  for (int k : order) {
    GrassmannIter it(c.ambient(), k);
    while (auto cand = it.next()) {
      bool ok = true;
      for (const auto& w : out.words()) {
        if (subspace_distance(*cand, w) < d) {
          ok = false;
          break;
        }
      }
      if (ok) out.insert(*cand);
    }
  }
  return out;
}

}  // namespace scode
