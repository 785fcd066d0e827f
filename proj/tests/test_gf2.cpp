#include "scode/gf2.hpp"

#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "scode/grassmann.hpp"

using namespace scode;

namespace {

// Textbook Gaussian elimination on 0/1 integer grids, kept deliberately
// separate from the bit-packed implementation it checks.
std::vector<std::vector<int>> naive_rref(std::vector<std::vector<int>> m) {
  if (m.empty()) return m;
  std::size_t cols = m[0].size();
  std::size_t lead = 0;
  for (std::size_t col = 0; col < cols && lead < m.size(); ++col) {
    std::size_t pivot = lead;
    while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[lead], m[pivot]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i != lead && m[i][col] == 1) {
        for (std::size_t j = 0; j < cols; ++j) m[i][j] ^= m[lead][j];
      }
    }
    ++lead;
  }
  m.resize(lead);
  return m;
}

std::vector<std::vector<int>> unpack(const std::vector<Row>& rows, int v) {
  std::vector<std::vector<int>> out;
  for (Row r : rows) {
    std::vector<int> bits(static_cast<std::size_t>(v));
    for (int c = 0; c < v; ++c) bits[static_cast<std::size_t>(c)] = r >> (v - 1 - c) & 1;
    out.push_back(bits);
  }
  return out;
}

}  // namespace

TEST_CASE("row string round trip and bit convention") {
  CHECK(row_from_string("1000", 4) == 0b1000);
  CHECK(row_from_string("0001", 4) == 0b0001);
  CHECK(row_to_string(0b1010, 4) == "1010");
  CHECK_THROWS(row_from_string("10", 4));
  CHECK_THROWS(row_from_string("10x0", 4));
}

TEST_CASE("rref identity and zero cases") {
  auto [id, rank_id] = rref(BitMatrix::identity(3));
  CHECK(rank_id == 3);
  CHECK(id == BitMatrix::identity(3));

  BitMatrix z(4, {0, 0});
  auto [zr, rank_z] = rref(z);
  CHECK(rank_z == 0);
  CHECK(zr.rows.empty());
}

TEST_CASE("rref matches hand Gaussian elimination") {
  // rows {011, 110} in F_2^3 reduce to {101, 011}.
  BitMatrix m(3, {row_from_string("011", 3), row_from_string("110", 3)});
  auto [r, rank] = rref(m);
  CHECK(rank == 2);
  REQUIRE(r.rows.size() == 2);
  CHECK(row_to_string(r.rows[0], 3) == "101");
  CHECK(row_to_string(r.rows[1], 3) == "011");
}

TEST_CASE("rref agrees with the naive oracle on random-ish small matrices") {
  int v = 5;
  for (unsigned seed = 1; seed < 400; seed += 7) {
    std::vector<Row> rows;
    unsigned s = seed;
    for (int i = 0; i < 4; ++i) {
      s = s * 1103515245u + 12345u;
      rows.push_back(static_cast<Row>((s >> 8) & ((1u << v) - 1)));
    }
    auto naive = naive_rref(unpack(rows, v));
    std::vector<Row> packed = rows;
    int rank = rref_in_place(packed);
    CHECK(static_cast<std::size_t>(rank) == naive.size());
    CHECK(unpack(packed, v) == naive);
  }
}

TEST_CASE("rref is a canonical form: equal row spaces iff equal rref") {
  // Exhaustive over all pairs of 2-row matrices in F_2^3.
  for (unsigned a1 = 0; a1 < 8; ++a1) {
    for (unsigned a2 = 0; a2 < 8; ++a2) {
      Subspace x = Subspace::from_rows(3, {Row(a1), Row(a2)});
      // Row space membership check against independent span enumeration.
      std::set<Row> span;
      for (unsigned c1 = 0; c1 < 2; ++c1)
        for (unsigned c2 = 0; c2 < 2; ++c2)
          span.insert(static_cast<Row>((c1 ? a1 : 0) ^ (c2 ? a2 : 0)));
      std::set<Row> from_rref{0};
      auto pts = x.points();
      from_rref.insert(pts.begin(), pts.end());
      CHECK(span == from_rref);
    }
  }
}

TEST_CASE("pivot vector weight equals dimension, lifted block case") {
  Subspace s = Subspace::from_string(
      8, "10000011;01000010;00100001;00010110");
  CHECK(s.dim() == 4);
  CHECK(s.pivot_vector() == row_from_string("11110000", 8));

  CHECK(Subspace::zero(8).pivot_vector() == 0);

  for (int k = 0; k <= 4; ++k) {
    GrassmannIter it(4, k);
    while (auto u = it.next()) {
      CHECK(weight(u->pivot_vector()) == u->dim());
    }
  }
}

TEST_CASE("meet and join obey the modular law") {
  Subspace x = Subspace::from_string(4, "1000;0100");
  CHECK(meet(x, x) == x);
  CHECK(join(x, x) == x);

  // Two distinct lines through a common point.
  Subspace a = Subspace::from_string(4, "1000;0100");
  Subspace b = Subspace::from_string(4, "1000;0010");
  Subspace m = meet(a, b);
  Subspace j = join(a, b);
  CHECK(m == Subspace::from_string(4, "1000"));
  CHECK(j.dim() == 3);
  CHECK(j.contains(a));
  CHECK(j.contains(b));

  // Modular law over every pair of subspaces of F_2^4.
  auto all = all_subspaces(4);
  for (std::size_t i = 0; i < all.size(); i += 3) {
    for (std::size_t jdx = 0; jdx < all.size(); jdx += 5) {
      const Subspace& u = all[i];
      const Subspace& w = all[jdx];
      Subspace mw = meet(u, w);
      Subspace jw = join(u, w);
      CHECK(jw.dim() == u.dim() + w.dim() - mw.dim());
      CHECK(u.contains(mw));
      CHECK(w.contains(mw));
      CHECK(jw.contains(u));
      CHECK(jw.contains(w));
    }
  }

  CHECK_THROWS(meet(Subspace::zero(3), Subspace::zero(4)));
}

TEST_CASE("subspace distance formulas agree and give a metric on F_2^4") {
  auto all = all_subspaces(4);
  REQUIRE(all.size() == 67);
  for (const auto& x : all) {
    for (const auto& y : all) {
      int d = subspace_distance(x, y);
      int via_meet = x.dim() + y.dim() - 2 * meet(x, y).dim();
      int via_join = 2 * join(x, y).dim() - x.dim() - y.dim();
      CHECK(d == via_meet);
      CHECK(d == via_join);
      CHECK(d >= 0);
      CHECK((d == 0) == (x == y));
      CHECK(d == subspace_distance(y, x));
    }
  }
  // Triangle inequality on a coarse sample (full cube is 67^3).
  for (std::size_t i = 0; i < all.size(); i += 2)
    for (std::size_t j = 0; j < all.size(); j += 3)
      for (std::size_t k = 0; k < all.size(); k += 5)
        CHECK(subspace_distance(all[i], all[k]) <=
              subspace_distance(all[i], all[j]) +
                  subspace_distance(all[j], all[k]));
}

TEST_CASE("distance special cases") {
  Subspace line = Subspace::from_string(4, "1000;0100");
  Subspace plane = Subspace::from_string(4, "1000;0100;0010");
  CHECK(subspace_distance(line, plane) == 1);
  Subspace s1 = Subspace::from_string(4, "1000;0100");
  Subspace s2 = Subspace::from_string(4, "0010;0001");
  CHECK(subspace_distance(s1, s2) == 4);
}

TEST_CASE("dual is a distance-preserving involution on F_2^4") {
  CHECK(dual(Subspace::full(4)) == Subspace::zero(4));
  CHECK(dual(Subspace::zero(4)) == Subspace::full(4));
  auto all = all_subspaces(4);
  for (const auto& s : all) {
    Subspace d = dual(s);
    CHECK(d.dim() == 4 - s.dim());
    CHECK(dual(d) == s);
    for (Row a : s.rows())
      for (Row b : d.rows()) CHECK(!parity_product(a, b));
  }
  for (std::size_t i = 0; i < all.size(); i += 2) {
    for (std::size_t j = 0; j < all.size(); j += 3) {
      CHECK(subspace_distance(dual(all[i]), dual(all[j])) ==
            subspace_distance(all[i], all[j]));
    }
  }

  Subspace lifted = Subspace::from_string(8, "10000011;01000010;00100001;00010110");
  CHECK(weight(dual(lifted).pivot_vector()) == 4);
}

TEST_CASE("extension field construction and defaults") {
  CHECK(ExtField(1).modulus() == 0b10u);
  CHECK(ExtField(2).modulus() == 0b111u);
  CHECK(ExtField(3).modulus() == 0b1011u);
  CHECK(ExtField(4).modulus() == 0b10011u);
  CHECK_THROWS(ExtField(4, 0b11110u));  // reducible
  CHECK_THROWS(ExtField(9));

  // Multiplicative sanity in F_16: nonzero elements form a group.
  ExtField f(4);
  for (unsigned a = 1; a < 16; ++a) {
    std::set<unsigned> seen;
    for (unsigned b = 1; b < 16; ++b) seen.insert(f.mul(a, b));
    CHECK(seen.size() == 15);
  }
}

TEST_CASE("linearized polynomial evaluation") {
  ExtField f(4);
  // f = x is the identity map.
  for (unsigned x = 0; x < 16; ++x) {
    unsigned c[] = {1};
    CHECK(linpoly_eval(f, c, x) == x);
  }
  // f = x^2 is the Frobenius: additive and bijective.
  std::set<unsigned> image;
  for (unsigned x = 0; x < 16; ++x) {
    unsigned c[] = {0, 1};
    image.insert(linpoly_eval(f, c, x));
  }
  CHECK(image.size() == 16);
  // Additivity of arbitrary linearized polynomials.
  unsigned coeffs[] = {5, 9};
  for (unsigned x = 0; x < 16; ++x) {
    for (unsigned y = 0; y < 16; ++y) {
      CHECK(linpoly_eval(f, coeffs, x ^ y) ==
            (linpoly_eval(f, coeffs, x) ^ linpoly_eval(f, coeffs, y)));
    }
  }
  // Nonzero f with l = 1 has kernel dimension at most 1, exhaustively.
  for (unsigned a0 = 0; a0 < 16; ++a0) {
    for (unsigned a1 = 0; a1 < 16; ++a1) {
      if (a0 == 0 && a1 == 0) continue;
      unsigned c[] = {a0, a1};
      int kernel = 0;
      for (unsigned x = 0; x < 16; ++x) {
        if (linpoly_eval(f, c, x) == 0) ++kernel;
      }
      CHECK((kernel == 1 || kernel == 2));
    }
  }
  unsigned c[] = {1};
  CHECK_THROWS(linpoly_eval(f, c, 16u));
}
