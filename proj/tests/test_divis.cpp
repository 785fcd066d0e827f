#include "scode/divis.hpp"

#include <set>
#include <sstream>

#include "doctest.h"
#include "scode/construct.hpp"
#include "scode/grassmann.hpp"

using namespace scode;

TEST_CASE("points of a code") {
  Subspace solid = special_subspace(8, 4);
  PointMultiset p = points_of_code(SubspaceCode(8, {solid}));
  CHECK(p.cardinality() == 15);
  for (Row pt : solid.points()) CHECK(p.multiplicity(pt) == 1);

  PointMultiset spread_points = points_of_code(spread(4));
  CHECK(spread_points.cardinality() == 15);
  for (Row pt = 1; pt < 16; ++pt) CHECK(spread_points.multiplicity(pt) == 1);

  auto g = gabidulin(8, 4, 3);
  Subspace s = special_subspace(8, 4);
  PointMultiset gp = points_of_code(g);
  for (Row pt = 1; pt < 256; ++pt) {
    CHECK(gp.multiplicity(pt) == (s.contains_vector(pt) ? 0u : 16u));
  }
  // Cardinality identity: sum over k of delta_k * [k 1]_2.
  CHECK(gp.cardinality() == 256 * 15);

  CHECK(points_of_code(spread(4), 3).cardinality() == 45);
}

TEST_CASE("divisibility") {
  PointMultiset solid_points =
      points_of_code(SubspaceCode(8, {special_subspace(8, 4)}));
  CHECK(is_divisible(solid_points, 3));
  CHECK(is_divisible(solid_points, 0));
  CHECK(!is_divisible(solid_points, 4));

  PointMultiset single(4);
  single.add(row_from_string("1000", 4));
  CHECK(!is_divisible(single, 1));

  // Codes of constant dimension k give 2^(k-1)-divisible point multisets.
  for (const SubspaceCode& c :
       {spread(4), spread(6), gabidulin(6, 3, 2), gabidulin(6, 2, 2)}) {
    int k = c.words().front().dim();
    CHECK(is_divisible(points_of_code(c), k - 1));
  }
}

TEST_CASE("complement") {
  auto g = gabidulin(8, 4, 3);
  Subspace s = special_subspace(8, 4);
  PointMultiset gp = points_of_code(g);
  PointMultiset comp = complement(gp, 16);
  // Exactly the 16-fold point set of S remains.
  CHECK(comp.cardinality() == 240);
  for (Row pt = 1; pt < 256; ++pt) {
    CHECK(comp.multiplicity(pt) == (s.contains_vector(pt) ? 16u : 0u));
  }
  CHECK(is_divisible(comp, 3));

  // Double complement is the identity; constant multisets vanish.
  CHECK(complement(comp, 16) == gp);
  PointMultiset flat = points_of_code(spread(4));
  CHECK(complement(flat, 1).cardinality() == 0);
  CHECK_THROWS(complement(gp, 15));
}

TEST_CASE("recognize subspace") {
  Subspace plane = Subspace::from_string(4, "1000;0100;0010");
  PointMultiset p = points_of_code(SubspaceCode(4, {plane}));
  auto back = recognize_subspace(p, 2);
  REQUIRE(back.has_value());
  CHECK(*back == plane);

  Subspace solid = special_subspace(8, 4);
  auto back2 = recognize_subspace(points_of_code(SubspaceCode(8, {solid})), 3);
  REQUIRE(back2.has_value());
  CHECK(*back2 == solid);

  PointMultiset wrong(4);
  wrong.add(1, 7);  // cardinality right, divisibility wrong
  CHECK(!recognize_subspace(wrong, 2).has_value());
  PointMultiset small(4);
  small.add(1, 1);
  CHECK(!recognize_subspace(small, 2).has_value());
}

TEST_CASE("exhaustive converse at v = 3, r = 1: 2-divisible 3-point multisets "
          "are lines") {
  // All multisets of cardinality 3 on the 7 points of F_2^3.
  std::set<Subspace> lines;
  std::uint64_t divisible = 0;
  std::vector<std::uint64_t> chi(8, 0);
  auto enumerate = [&](auto&& self, Row point, std::uint64_t left) -> void {
    if (point == 8) {
      if (left != 0) return;
      PointMultiset p(3);
      for (Row q = 1; q < 8; ++q) p.set_multiplicity(q, chi[q]);
      if (is_divisible(p, 1)) {
        ++divisible;
        auto s = recognize_subspace(p, 1);
        REQUIRE(s.has_value());
        CHECK(s->dim() == 2);
        lines.insert(*s);
      }
      return;
    }
    for (std::uint64_t m = 0; m <= left; ++m) {
      chi[point] = m;
      self(self, static_cast<Row>(point + 1), left - m);
    }
    chi[point] = 0;
  };
  enumerate(enumerate, 1, 3);
  CHECK(divisible == 7);
  CHECK(lines.size() == 7);  // every line of F_2^3 appears exactly once
}

TEST_CASE("lmrd extension recovers removed codewords") {
  auto g = gabidulin(8, 4, 3);
  Subspace s = special_subspace(8, 4);

  SubspaceCode minus_one = g;
  minus_one.erase(g.words()[0]);
  auto completions = lmrd_extend(minus_one, s);
  REQUIRE(completions.size() == 1);
  CHECK(completions[0] == g.words()[0]);

  // One removed pair per distance class.
  const Subspace& first = g.words()[0];
  for (int target : {6, 8}) {
    for (std::size_t j = 1; j < g.size(); ++j) {
      if (subspace_distance(first, g.words()[j]) != target) continue;
      SubspaceCode minus_two = g;
      minus_two.erase(first);
      minus_two.erase(g.words()[j]);
      auto pair = lmrd_extend(minus_two, s);
      REQUIRE(pair.size() == 2);
      CHECK(((pair[0] == first && pair[1] == g.words()[j]) ||
             (pair[1] == first && pair[0] == g.words()[j])));
      break;
    }
  }

  CHECK_THROWS(lmrd_extend(g, s));  // 256 codewords violate the precondition
  SubspaceCode touching = minus_one;
  touching.erase(g.words()[1]);
  touching.insert(s);  // not disjoint from itself
  CHECK_THROWS(lmrd_extend(touching, s));
}

TEST_CASE("extension count of the full lifted Gabidulin code") {
  auto g = gabidulin(8, 4, 3);
  CHECK(count_extending_solids(g, 6) == 451);
}

TEST_CASE("theorem extension check") {
  auto report = verify_theorem_extensions();
  CHECK(report.all_ok);
  REQUIRE(report.items.size() == 8);
  std::vector<int> dims;
  for (const auto& item : report.items) {
    dims.push_back(item.extension.dim());
    CHECK(item.distance_ok);
    if (item.extension.dim() <= 3) CHECK(item.inside_s);
  }
  CHECK(dims == std::vector<int>{2, 2, 3, 4, 4, 5, 6, 6});
  // One of the 4-dim extensions is the special solid itself.
  CHECK(report.items[3].extension == special_subspace(8, 4));

  // Negative control: a line outside S hits some codeword.
  auto g = gabidulin(8, 4, 3);
  Subspace s = special_subspace(8, 4);
  GrassmannIter it(8, 2);
  while (auto line = it.next()) {
    if (s.contains(*line)) continue;
    int best = 100;
    for (const auto& w : g.words()) {
      best = std::min(best, subspace_distance(*line, w));
    }
    CHECK(best < 6);
    break;
  }
}

TEST_CASE("multiset file round trip") {
  PointMultiset p(4);
  p.add(row_from_string("1010", 4), 3);
  p.add(row_from_string("0001", 4), 1);
  std::ostringstream out;
  write_multiset(p, out);
  std::istringstream in(out.str());
  PointMultiset q = read_multiset(in);
  CHECK(p == q);

  std::istringstream bad("1010\n");
  CHECK_THROWS(read_multiset(bad));
}
