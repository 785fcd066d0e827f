#include "scode/construct.hpp"

#include <set>

#include "doctest.h"
#include "scode/bounds.hpp"
#include "scode/grassmann.hpp"

using namespace scode;

TEST_CASE("gabidulin parameters and distances") {
  auto g = gabidulin(8, 4, 3);
  CHECK(g.size() == 256);
  CHECK(min_distance(g) == MinDistance{false, 6});
  Subspace s = special_subspace(8, 4);
  for (const auto& w : g.words()) {
    CHECK(w.dim() == 4);
    CHECK(meet(w, s).dim() == 0);
  }
  // Singleton-like bound met with equality.
  CHECK(BigInt(g.size()) == mrd_bound(2, 4, 4, 3));

  auto small = gabidulin(4, 2, 2);
  CHECK(small.size() == 4);
  CHECK(min_distance(small) == MinDistance{false, 4});

  auto mid = gabidulin(6, 3, 2);
  CHECK(mid.size() == 64);
  CHECK(min_distance(mid) == MinDistance{false, 4});
  CHECK(BigInt(mid.size()) == mrd_bound(2, 3, 3, 2));

  CHECK_THROWS(gabidulin(8, 5, 2));  // k > v/2
  CHECK_THROWS(gabidulin(8, 4, 5));  // delta > k
  CHECK_THROWS(gabidulin(8, 4, 0));
}

TEST_CASE("lifting") {
  BitMatrix zero(4, {0, 0, 0, 0});
  Subspace lifted = lift_matrix(zero);
  CHECK(lifted.pivot_vector() == row_from_string("11110000", 8));

  auto mats = gabidulin_matrices(GabidulinSpec{8, 4, 3, std::nullopt});
  CHECK(mats.size() == 256);
  // Lifting turns rank distance into half the subspace distance.
  for (std::size_t i = 0; i < mats.size(); i += 37) {
    for (std::size_t j = i + 1; j < mats.size(); j += 53) {
      BitMatrix diff = mats[i];
      for (int r = 0; r < 4; ++r) {
        diff.rows[static_cast<std::size_t>(r)] = static_cast<Row>(
            diff.rows[static_cast<std::size_t>(r)] ^
            mats[j].rows[static_cast<std::size_t>(r)]);
      }
      CHECK(subspace_distance(lift_matrix(mats[i]), lift_matrix(mats[j])) ==
            2 * diff.rank());
    }
  }
  // The lifted matrix set reproduces the construction.
  CHECK(lift(mats) == gabidulin(8, 4, 3));
  CHECK(lift(mats, 3).size() == 256);  // rank-distance check passes
  CHECK_THROWS(lift({zero, zero}));
  // Coefficient tuple (1,1) gives f(x) = x + x^2 with a 1-dim kernel, so the
  // pair {0, f} sits at rank distance exactly 3.
  CHECK(mats[17].rank() == 3);
  CHECK_THROWS(lift({mats[0], mats[17]}, 4));
}

TEST_CASE("cover counts of lifted MRD codes") {
  auto g = gabidulin(8, 4, 3);
  Subspace s = special_subspace(8, 4);
  auto lines = cover_count(g, s, 2);
  REQUIRE(lines.size() == 1);
  CHECK(lines.begin()->first == 1);  // exact 1-cover
  CHECK(lines.begin()->second == 8960);

  auto points = cover_count(g, s, 1);
  REQUIRE(points.size() == 1);
  CHECK(points.begin()->first == 16);
  CHECK(points.begin()->second == 240);

  auto g632 = gabidulin(6, 3, 2);
  auto p632 = cover_count(g632, special_subspace(6, 3), 1);
  REQUIRE(p632.size() == 1);
  CHECK(p632.begin()->first == 8);
  CHECK(p632.begin()->second == 56);

  // t = k - delta + 1 gives an exact 1-cover for every desk-scale parameter.
  for (auto [v, k, delta] : std::initializer_list<std::array<int, 3>>{
           {4, 2, 2}, {6, 3, 2}, {6, 2, 2}, {8, 4, 3}}) {
    auto code = gabidulin(v, k, delta);
    auto hist = cover_count(code, special_subspace(v, k), k - delta + 1);
    REQUIRE(hist.size() == 1);
    CHECK(hist.begin()->first == 1);
  }
}

TEST_CASE("spreads") {
  auto s4 = spread(4);
  CHECK(s4.size() == 5);
  CHECK(min_distance(s4) == MinDistance{false, 4});
  CHECK(spread(6).size() == 9);
  CHECK(spread(8).size() == 17);
  CHECK_THROWS(spread(5));

  // Partition of the nonzero points.
  SubspaceCode s6 = spread(6);
  std::set<Row> covered;
  for (const auto& w : s6.words()) {
    for (Row p : w.points()) {
      CHECK(covered.insert(p).second);
    }
  }
  CHECK(covered.size() == 63);
}

TEST_CASE("echelon-ferrers") {
  // Two complementary pivot blocks give the spread of F_2^4.
  std::vector<PivotProfile> profiles{
      {4, row_from_string("1100", 4), 4},
      {4, row_from_string("0011", 4), 1},
  };
  auto result = echelon_ferrers(profiles, 4);
  CHECK(result.achieved == std::vector<std::uint64_t>{4, 1});
  CHECK(result.code.size() == 5);
  CHECK(min_distance(result.code).at_least(4));

  // A single full-rectangle profile reduces to the Gabidulin fill.
  std::vector<PivotProfile> rect{{6, row_from_string("111000", 6), 64}};
  auto r = echelon_ferrers(rect, 4);
  CHECK(r.achieved == std::vector<std::uint64_t>{64});
  CHECK(r.code == gabidulin(6, 3, 2));

  // Pivot vectors at Hamming distance 2 violate d = 4.
  std::vector<PivotProfile> bad{
      {4, row_from_string("1100", 4), 1},
      {4, row_from_string("1010", 4), 1},
  };
  CHECK_THROWS(echelon_ferrers(bad, 4));
}

TEST_CASE("echelon-ferrers reports partial fills honestly") {
  // A 1-cell profile cannot reach 4 matrices at rank distance >= 2.
  std::vector<PivotProfile> profiles{{4, row_from_string("0110", 4), 50}};
  auto result = echelon_ferrers(profiles, 3);
  CHECK(result.achieved[0] < 50);
  CHECK(result.achieved[0] >= 1);
}

TEST_CASE("greedy extension") {
  auto s8 = spread(8);
  auto extended = extend_greedy(s8, 8, {0, 8});
  CHECK(extended == s8);  // zero space sits at distance 4 from the solids

  auto g = gabidulin(8, 4, 3);
  auto plus = extend_greedy(g, 6, {4});
  CHECK(plus.size() == 257);
  // The added solid is the canonical-first compatible one.
  Subspace added = Subspace::zero(8);
  for (const auto& w : plus.words()) {
    if (!g.contains(w)) added = w;
  }
  GrassmannIter it(8, 4);
  while (auto cand = it.next()) {
    bool ok = true;
    for (const auto& w : g.words()) {
      if (subspace_distance(*cand, w) < 6) {
        ok = false;
        break;
      }
    }
    if (ok) {
      CHECK(*cand == added);
      break;
    }
  }
  CHECK(verify(plus, 6, {4}).ok());

  auto greedy_spread = extend_greedy(SubspaceCode(4), 4, {2});
  CHECK(greedy_spread.size() >= 4);
  CHECK(verify(greedy_spread, 4, {2}).ok());
}
