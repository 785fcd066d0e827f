#include "scode/ilp.hpp"

#include <set>
#include <sstream>

#include "doctest.h"
#include "scode/bounds.hpp"
#include "scode/construct.hpp"
#include "scode/grassmann.hpp"

using namespace scode;

namespace {

std::vector<int> full_dims(int v) {
  std::vector<int> dims;
  for (int k = 0; k <= v; ++k) dims.push_back(k);
  return dims;
}

IlpModel model_for(int v, int d) {
  IlpModel m = build_base_model(v, d % 2 ? d : d - 1, full_dims(v));
  if (d % 2 == 0) add_even_d_cuts(m, d);
  return m;
}

MatrixGroup nine_group() {
  auto mk = [](std::initializer_list<const char*> rows) {
    std::vector<Row> r;
    for (const char* s : rows) r.push_back(row_from_string(s, 6));
    return BitMatrix(6, std::move(r));
  };
  return closure(6, {mk({"100000", "010000", "000100", "001100", "000001",
                         "000011"}),
                     mk({"010000", "110000", "001010", "000101", "001000",
                         "000100"})});
}

}  // namespace

TEST_CASE("base model shape") {
  IlpModel m = build_base_model(6, 3, full_dims(6));
  int binary = 0, balls = 0, couplings = 0;
  for (const auto& var : m.vars) {
    if (var.binary) ++binary;
  }
  for (const auto& c : m.cons) {
    if (c.name.rfind("ball_", 0) == 0) ++balls;
    if (c.name.rfind("dim_", 0) == 0) {
      ++couplings;
      CHECK(c.sense == Sense::EQ);
    }
  }
  CHECK(binary == 2825);
  CHECK(balls == 2825);
  CHECK(couplings == 7);
  CHECK(m.objective.size() == 7);

  CHECK_THROWS(build_base_model(6, 4, full_dims(6)));  // even d rejected here

  // Restricted dimension sets pin the other variables to zero.
  IlpModel cdc = build_base_model(4, 3, {2});
  int fixed = 0;
  for (const auto& var : cdc.vars) {
    if (!var.is_delta() && var.fixed()) ++fixed;
  }
  CHECK(fixed == 67 - 35);
}

TEST_CASE("radius-0 balls make d=1 trivial") {
  IlpModel m = build_base_model(3, 1, full_dims(3));
  for (const auto& c : m.cons) {
    if (c.name.rfind("ball_", 0) == 0) CHECK(c.terms.size() == 1);
  }
  auto res = solve_exact(m, 60);
  CHECK(res.value == 16);
  CHECK(res.status == SolveStatus::Optimal);
}

TEST_CASE("exact solver reproduces the small table values") {
  std::vector<std::tuple<int, int, std::int64_t>> expected{
      {3, 1, 16}, {3, 2, 8}, {3, 3, 2},
      {4, 1, 67}, {4, 2, 37}, {4, 3, 5}, {4, 4, 5},
  };
  for (auto [v, d, value] : expected) {
    auto res = solve_exact(model_for(v, d), 60);
    CHECK(res.status == SolveStatus::Optimal);
    CHECK(res.value == value);
    CHECK(verify(res.incumbent, d, full_dims(v)).ok());
  }
}

TEST_CASE("incidence cut families") {
  auto s = default_incidence_cut_set(6, 3);
  std::vector<std::tuple<int, int, std::int64_t>> expected{
      {2, 4, 5}, {2, 5, 9}, {3, 1, 9}, {3, 5, 9}, {4, 1, 9}, {4, 2, 5}};
  CHECK(s == expected);

  IlpModel m = build_base_model(6, 3, full_dims(6));
  std::size_t before = m.cons.size();
  add_incidence_cuts(m);
  std::map<std::string, int> family_counts;
  for (std::size_t i = before; i < m.cons.size(); ++i) {
    std::string name = m.cons[i].name;
    family_counts[name.substr(0, name.rfind('_'))]++;
  }
  CHECK(family_counts.size() == 6);
  CHECK(family_counts["cut_ie_k2_l4"] == 651);
  CHECK(family_counts["cut_ie_k2_l5"] == 63);
  CHECK(family_counts["cut_ie_k3_l1"] == 63);
  CHECK(family_counts["cut_ie_k3_l5"] == 63);
  CHECK(family_counts["cut_ie_k4_l1"] == 63);
  CHECK(family_counts["cut_ie_k4_l2"] == 651);

  // The indicator term: |k-l| < d adds a*x_L, otherwise not.
  for (const auto& c : m.cons) {
    if (c.name.rfind("cut_ie_k2_l4_", 0) == 0) {
      bool has_coef5 = false;
      for (const auto& t : c.terms) has_coef5 |= t.coef == 5;
      CHECK(has_coef5);
    }
    if (c.name.rfind("cut_ie_k2_l5_", 0) == 0) {
      for (const auto& t : c.terms) CHECK(t.coef == 1);
    }
  }

  CHECK_THROWS(add_incidence_cuts(m, {{2, 4, 1}}));  // a < 2 is redundant
  CHECK_THROWS(add_incidence_cuts(m, {{2, 2, 5}}));  // k = l out of range
}

TEST_CASE("cuts do not change the optimum") {
  IlpModel plain = build_base_model(4, 3, full_dims(4));
  IlpModel cut = build_base_model(4, 3, full_dims(4));
  add_incidence_cuts(cut);
  CHECK(solve_exact(plain, 60).value == 5);
  CHECK(solve_exact(cut, 60).value == 5);
}

TEST_CASE("even-distance cut structure") {
  IlpModel m = build_base_model(4, 3, full_dims(4));
  add_even_d_cuts(m, 4);
  CHECK(m.meta.d == 4);
  std::set<std::string> families;
  for (const auto& c : m.cons) {
    if (c.name.rfind("cut_even_", 0) == 0) {
      families.insert(c.name.substr(0, c.name.rfind('_')));
    }
  }
  // Triples with a+b-2i = 3 inside 0 <= i <= a < b <= 4.
  std::set<std::string> expected{"cut_even_a0_b3", "cut_even_a1_b2",
                                 "cut_even_a1_b4", "cut_even_a2_b3",
                                 "cut_even_a3_b4"};
  CHECK(families == expected);
  CHECK_THROWS(add_even_d_cuts(m, 5));

  IlpModel wrong = build_base_model(4, 1, full_dims(4));
  CHECK_THROWS(add_even_d_cuts(wrong, 4));  // base must be built for d-1
}

TEST_CASE("known codes stay feasible in cut models") {
  // The 37-element even-dimension code for (4,2).
  std::vector<Subspace> even;
  for (const auto& s : all_subspaces(4)) {
    if (s.dim() % 2 == 0) even.push_back(s);
  }
  SubspaceCode even_code(4, std::move(even));
  IlpModel m42 = model_for(4, 2);
  CHECK(check_feasible(m42, even_code));

  IlpModel m44 = model_for(4, 4);
  add_incidence_cuts(m44);
  CHECK(check_feasible(m44, spread(4)));
  // A code violating the distance is rejected.
  SubspaceCode bad = spread(4);
  bad.insert(Subspace::from_string(4, "1000"));
  CHECK(!check_feasible(m44, bad));
}

TEST_CASE("kramer-mesner reduction") {
  IlpModel m = build_base_model(6, 3, full_dims(6));
  MatrixGroup g = nine_group();
  IlpModel r = reduce_kramer_mesner(m, g);
  int xvars = 0;
  std::uint64_t expanded = 0;
  for (const auto& var : r.vars) {
    if (var.is_delta()) continue;
    ++xvars;
    expanded += var.orbit_size;
    CHECK(var.orbit_size == var.expansion.size());
    CHECK(9 % var.orbit_size == 0);
  }
  std::uint64_t orbit_count = 0;
  for (int k = 0; k <= 6; ++k) orbit_count += orbits(g, k).orbits.size();
  CHECK(static_cast<std::uint64_t>(xvars) == orbit_count);
  CHECK(expanded == 2825);
  CHECK(r.cons.size() < m.cons.size());

  // Orbit variables carry the orbit size as objective coefficient through
  // the coupling rows.
  for (const auto& c : r.cons) {
    if (c.name.rfind("dim_", 0) != 0) continue;
    for (const auto& t : c.terms) {
      const Variable& var = r.vars[static_cast<std::size_t>(t.var)];
      if (!var.is_delta()) {
        CHECK(t.coef == static_cast<std::int64_t>(var.orbit_size));
      }
    }
  }

  // Reduction by the trivial group is the identity on the model (up to the
  // reduced flag).
  IlpModel small = build_base_model(4, 3, full_dims(4));
  IlpModel same = reduce_kramer_mesner(small, closure(4, {}));
  same.meta.reduced = false;
  CHECK(structurally_equal(small, same));
}

TEST_CASE("kramer-mesner solve expands to an invariant code") {
  BitMatrix t = BitMatrix::identity(4);
  t.rows[2] = row_from_string("0011", 4);
  MatrixGroup g = closure(4, {t});
  CHECK(g.order() == 2);
  IlpModel m = build_base_model(4, 3, full_dims(4));
  IlpModel r = reduce_kramer_mesner(m, g);
  auto res = solve_exact(r, 60);
  CHECK(res.status == SolveStatus::Optimal);
  CHECK(res.value <= 5);
  CHECK(verify(res.incumbent, 3, full_dims(4)).ok());
  for (const auto& el : g.elements) {
    CHECK(apply(res.incumbent, el) == res.incumbent);
  }
}

TEST_CASE("prescription") {
  IlpModel m = model_for(4, 4);
  SubspaceCode partial(4, {spread(4).words()[0], spread(4).words()[1]});
  prescribe(m, partial);
  auto res = solve_exact(m, 60);
  CHECK(res.status == SolveStatus::Optimal);
  CHECK(res.value == 5);
  CHECK(res.incumbent.contains(partial.words()[0]));

  SubspaceCode missing(4, {Subspace::from_string(4, "1000")});
  IlpModel cdc = build_base_model(4, 3, {2});
  CHECK_THROWS(prescribe(cdc, missing));  // fixed-to-zero variable
}

TEST_CASE("lp export and parse round trip") {
  IlpModel m = build_base_model(4, 3, full_dims(4));
  add_incidence_cuts(m);
  std::ostringstream out;
  export_lp(m, out);
  std::string text = out.str();

  // Byte stability.
  std::ostringstream again;
  export_lp(m, again);
  CHECK(text == again.str());

  std::istringstream in(text);
  IlpModel parsed = parse_lp(in);
  CHECK(structurally_equal(m, parsed));

  // Variable tags are recovered from the canonical index.
  int idx = parsed.var_index("x_0");
  REQUIRE(idx >= 0);
  REQUIRE(parsed.vars[static_cast<std::size_t>(idx)].rep.has_value());
  CHECK(*parsed.vars[static_cast<std::size_t>(idx)].rep == Subspace::zero(4));

  // The parsed model solves to the same optimum.
  CHECK(solve_exact(parsed, 60).value == 5);
}

TEST_CASE("lp export of an empty model") {
  IlpModel empty;
  std::ostringstream out;
  export_lp(empty, out);
  std::istringstream in(out.str());
  IlpModel parsed = parse_lp(in);
  CHECK(parsed.vars.empty());
  CHECK(parsed.cons.empty());
}

TEST_CASE("lp relaxation dominates the integer optimum") {
  for (int v : {3, 4}) {
    for (int d = 1; d <= v; ++d) {
      IlpModel m = model_for(v, d);
      auto lp = solve_relaxation(m);
      auto ip = solve_exact(m, 60);
      REQUIRE(lp.feasible);
      CHECK(lp.value >= static_cast<double>(ip.value) - 1e-6);
    }
  }
}

TEST_CASE("max clique agrees with the ilp route on every v <= 4 instance") {
  for (int v = 2; v <= 4; ++v) {
    for (int d = 1; d <= v; ++d) {
      auto clique = max_clique(v, d, full_dims(v), 60);
      auto ilp = solve_exact(model_for(v, d), 60);
      CHECK(clique.status == SolveStatus::Optimal);
      CHECK(clique.value == ilp.value);
    }
  }
  CHECK(max_clique(3, 3, full_dims(3), 60).value == 2);
}

TEST_CASE("hyperplane-trace model (lemma13 form)") {
  // The 16 codewords of the lifted Gabidulin code inside the hyperplane
  // x_8 = 0, and the 240 traces of the remaining codewords.
  auto g = gabidulin(8, 4, 3);
  Subspace h = dual(Subspace::from_rows(8, {1}));  // last coordinate zero
  std::vector<Subspace> inside;
  std::vector<Subspace> traces;
  for (const auto& w : g.words()) {
    if (h.contains(w)) {
      std::vector<Row> rows;
      for (Row r : w.rows()) rows.push_back(static_cast<Row>(r >> 1));
      inside.push_back(Subspace::from_rows(7, rows));
    } else {
      Subspace trace = meet(w, h);
      std::vector<Row> rows;
      for (Row r : trace.rows()) rows.push_back(static_cast<Row>(r >> 1));
      traces.push_back(Subspace::from_rows(7, rows));
    }
  }
  SubspaceCode f(7, std::move(inside));
  REQUIRE(f.size() == 16);
  SubspaceCode trace_code(7, std::move(traces));
  REQUIRE(trace_code.size() == 240);

  IlpModel m = build_hyperplane_model_hyperplane7(f);
  CHECK(m.objective_offset == 16);
  bool has_total = false;
  for (const auto& c : m.cons) {
    if (c.sense == Sense::GE) {
      has_total = true;
      CHECK(c.rhs == 255 - 16);
    }
  }
  CHECK(has_total);
  // The Gabidulin traces witness feasibility of the full constraint system.
  CHECK(check_feasible(m, trace_code));

  CHECK_THROWS(build_hyperplane_model_hyperplane7(SubspaceCode(7)));
}

TEST_CASE("ambient packing model (lemma12 form)") {
  // Empty prescription: the pure constant-dimension packing model.
  IlpModel m = build_hyperplane_model_ambient8(SubspaceCode(7), 17, 17);
  CHECK(m.vars.size() == 200787);
  std::map<std::string, int> families;
  for (const auto& c : m.cons) {
    families[c.name.substr(0, c.name.rfind('_'))]++;
  }
  CHECK(families["cap_point"] == 255);
  CHECK(families["cap_hyperplane"] == 255);
  CHECK(families["pack_line"] == 10795);
  CHECK(families["pack_six"] == 10795);
  int fixed = 0;
  for (const auto& var : m.vars) {
    if (var.fixed()) ++fixed;
  }
  CHECK(fixed == 0);

  // The full lifted Gabidulin code satisfies the model.
  CHECK(check_feasible(m, gabidulin(8, 4, 3)));
}
