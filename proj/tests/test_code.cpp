#include "scode/code.hpp"

#include <sstream>

#include "doctest.h"
#include "scode/construct.hpp"
#include "scode/grassmann.hpp"
#include "scode/group.hpp"

using namespace scode;

TEST_CASE("min distance and the infinite sentinel") {
  SubspaceCode empty(4);
  CHECK(min_distance(empty).infinite);
  SubspaceCode single(4, {Subspace::from_string(4, "1000;0100")});
  MinDistance md = min_distance(single);
  CHECK(md.infinite);
  CHECK(md.at_least(1000));  // infinity beats every finite distance

  CHECK(min_distance(spread(4)) == MinDistance{false, 4});

  SubspaceCode everything(3, all_subspaces(3));
  CHECK(everything.size() == 16);
  CHECK(min_distance(everything) == MinDistance{false, 1});
}

TEST_CASE("distance distribution") {
  SubspaceCode two(8, {Subspace::from_string(8, "10000000;01000000;00100000;00010000"),
                       special_subspace(8, 4)});
  std::map<int, std::uint64_t> expected{{8, 1}};
  CHECK(distance_distribution(two) == expected);

  auto g = gabidulin(8, 4, 3);
  auto hist = distance_distribution(g);
  REQUIRE(hist.size() == 2);
  CHECK(hist.begin()->first == 6);
  CHECK(hist.rbegin()->first == 8);
  CHECK(hist[6] + hist[8] == 256ull * 255 / 2);

  CHECK(distance_distribution(SubspaceCode(5)).empty());
}

TEST_CASE("verify") {
  auto g = gabidulin(8, 4, 3);
  CHECK(verify(g, 6, {4}).ok());

  std::vector<Subspace> even;
  for (const auto& s : all_subspaces(4)) {
    if (s.dim() % 2 == 0) even.push_back(s);
  }
  SubspaceCode even_code(4, std::move(even));
  CHECK(even_code.size() == 37);
  CHECK(verify(even_code, 2, {0, 2, 4}).ok());

  auto bad = verify(even_code, 3, {0, 2, 4});
  CHECK(!bad.ok());
  CHECK(bad.close_pair_count > 0);
  CHECK(subspace_distance(bad.close_pairs[0].first,
                          bad.close_pairs[0].second) == 2);

  auto wrong_dims = verify(g, 6, {3});
  CHECK(wrong_dims.dim_violations.size() == 256);
}

TEST_CASE("code container semantics") {
  SubspaceCode c(4);
  Subspace line = Subspace::from_string(4, "1000;0100");
  CHECK(c.insert(line));
  CHECK(!c.insert(line));
  CHECK(c.contains(line));
  CHECK(c.erase(line));
  CHECK(!c.erase(line));
  CHECK_THROWS(c.insert(Subspace::from_string(5, "10000")));

  SubspaceCode dedup(4, {line, line, Subspace::zero(4)});
  CHECK(dedup.size() == 2);
  auto delta = dedup.dimension_distribution();
  CHECK(delta[0] == 1);
  CHECK(delta[2] == 1);
}

TEST_CASE("fingerprint is GL-invariant and dual-aware") {
  SubspaceCode c(4, {Subspace::from_string(4, "1000;0100"),
                     Subspace::from_string(4, "0010"),
                     Subspace::from_string(4, "1000;0110;0001")});
  Fingerprint fp = fingerprint(c);
  const MatrixGroup& gl = general_linear_group(4);
  for (std::size_t i = 0; i < gl.elements.size(); i += 997) {
    CHECK(fingerprint(apply(c, gl.elements[i])) == fp);
  }

  SubspaceCode d = dual_code(c);
  auto delta = c.dimension_distribution();
  auto delta_dual = d.dimension_distribution();
  std::reverse(delta.begin(), delta.end());
  CHECK(delta == delta_dual);
  CHECK(distance_distribution(c) == distance_distribution(d));
}

TEST_CASE("brute-force isomorphism at v <= 4") {
  SubspaceCode spread4 = spread(4);
  CHECK(is_isomorphic_bruteforce(spread4, spread4));

  // A second, set-wise different line spread must exist and be isomorphic
  // (the Segre spread is unique up to isomorphism).
  const MatrixGroup& gl = general_linear_group(4);
  SubspaceCode other = spread4;
  for (const auto& g : gl.elements) {
    SubspaceCode mapped = apply(spread4, g);
    if (!(mapped == spread4)) {
      other = mapped;
      break;
    }
  }
  CHECK(!(other == spread4));
  CHECK(is_isomorphic_bruteforce(spread4, other));

  SubspaceCode a(4, {Subspace::zero(4), Subspace::from_string(4, "1000;0100")});
  SubspaceCode b(4, {Subspace::zero(4), Subspace::from_string(4, "1000")});
  CHECK(!is_isomorphic_bruteforce(a, b));

  SubspaceCode big(5, {Subspace::zero(5)});
  CHECK_THROWS(is_isomorphic_bruteforce(big, big));
}

TEST_CASE("isomorphism with the duality map admitted") {
  SubspaceCode points(4, {Subspace::from_string(4, "1000"),
                          Subspace::from_string(4, "0100")});
  SubspaceCode planes = dual_code(points);
  CHECK(!is_isomorphic_bruteforce(points, planes));
  CHECK(is_isomorphic_bruteforce(points, planes, /*allow_dual=*/true));
}

TEST_CASE("code file round trip") {
  auto g = gabidulin(8, 4, 3);
  std::ostringstream out;
  write_code(g, out);
  std::istringstream in(out.str());
  auto r = read_code(in);
  CHECK(r.code == g);
  CHECK(r.warnings.empty());

  // Byte-identical re-serialization.
  std::ostringstream again;
  write_code(r.code, again);
  CHECK(again.str() == out.str());
}

TEST_CASE("code file warnings and errors") {
  {
    std::istringstream in("v=4 q=2\n1000;0100\n1000;0100\n");
    auto r = read_code(in);
    CHECK(r.code.size() == 1);
    CHECK(r.duplicates_removed);
  }
  {
    // Generator rows not in rref are normalized with a warning.
    std::istringstream in("v=4 q=2\n0100;1100\n");
    auto r = read_code(in);
    CHECK(r.normalized);
    CHECK(r.code.words()[0] == Subspace::from_string(4, "1000;0100"));
  }
  {
    std::istringstream in("v=4 q=2\n# comment\n\n-\n");
    auto r = read_code(in);
    CHECK(r.code.size() == 1);
    CHECK(r.code.words()[0] == Subspace::zero(4));
  }
  {
    std::istringstream in("v=4 q=2\n10001;01000\n");
    CHECK_THROWS_WITH_AS(read_code(in), doctest::Contains("line 2"),
                         std::runtime_error);
  }
  {
    std::istringstream in("q=2\n");
    CHECK_THROWS(read_code(in));
  }
}
