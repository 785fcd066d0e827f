#include "scode/ilp.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "scode/bounds.hpp"
#include "scode/grassmann.hpp"

namespace scode {

namespace {

// ---------------------------------------------------------------------------
// Lattice neighbourhood helpers

std::vector<Subspace> subspaces_below(const Subspace& u, int j) {
  const int k = u.dim();
  std::vector<Subspace> out;
  if (j < 0 || j > k) return out;
  GrassmannIter it(k, j);
  while (auto local = it.next()) {
    std::vector<Row> rows;
    rows.reserve(local->rows().size());
    for (Row lr : local->rows()) {
      Row g = 0;
      for (int i = 0; i < k; ++i) {
        if (lr >> (k - 1 - i) & 1) {
          g = static_cast<Row>(g ^ u.rows()[static_cast<std::size_t>(i)]);
        }
      }
      rows.push_back(g);
    }
    out.push_back(Subspace::from_rows(u.ambient(), std::move(rows)));
  }
  return out;
}

std::vector<Subspace> subspaces_above(const Subspace& u, int j) {
  const int v = u.ambient();
  const int k = u.dim();
  std::vector<Subspace> out;
  if (j < k || j > v) return out;
  std::vector<Row> comp;
  Row pivots = u.pivot_vector();
  for (int bit = v - 1; bit >= 0; --bit) {
    if ((pivots >> bit & 1) == 0) comp.push_back(static_cast<Row>(1u << bit));
  }
  const int c = v - k;
  GrassmannIter it(c, j - k);
  while (auto local = it.next()) {
    std::vector<Row> rows = u.rows();
    for (Row lr : local->rows()) {
      Row g = 0;
      for (int i = 0; i < c; ++i) {
        if (lr >> (c - 1 - i) & 1) {
          g = static_cast<Row>(g ^ comp[static_cast<std::size_t>(i)]);
        }
      }
      rows.push_back(g);
    }
    out.push_back(Subspace::from_rows(v, std::move(rows)));
  }
  return out;
}

// Subspace distance equals the cover-graph distance, so a BFS over immediate
// sub- and superspaces enumerates the ball.
std::vector<Subspace> ball_bfs(const Subspace& w, int r) {
  std::set<Subspace> seen{w};
  std::vector<Subspace> frontier{w};
  for (int step = 0; step < r; ++step) {
    std::vector<Subspace> next;
    for (const auto& u : frontier) {
      for (auto& s : subspaces_below(u, u.dim() - 1)) {
        if (seen.insert(s).second) next.push_back(std::move(s));
      }
      for (auto& s : subspaces_above(u, u.dim() + 1)) {
        if (seen.insert(s).second) next.push_back(std::move(s));
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

std::vector<int> normalize_dims(int v, const std::vector<int>& dims) {
  if (dims.empty()) throw std::invalid_argument("dimension set is empty");
  std::vector<int> out = dims;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.front() < 0 || out.back() > v) {
    throw std::invalid_argument("dimension set outside 0..v");
  }
  return out;
}

void sort_terms(Constraint& c) {
  std::sort(c.terms.begin(), c.terms.end(),
            [](const LinearTerm& a, const LinearTerm& b) { return a.var < b.var; });
}

}  // namespace

// ---------------------------------------------------------------------------
// IlpModel basics

int IlpModel::var_index(const std::string& name) const {
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

void IlpModel::rebuild_index() {
  rep_index_.clear();
  for (std::size_t i = 0; i < vars.size(); ++i) {
    for (const auto& s : vars[i].expansion) {
      rep_index_.emplace(s, static_cast<int>(i));
    }
  }
}

int IlpModel::var_index_of(const Subspace& rep) const {
  if (rep_index_.empty() && !vars.empty()) {
    const_cast<IlpModel*>(this)->rebuild_index();
  }
  auto it = rep_index_.find(rep);
  return it == rep_index_.end() ? -1 : it->second;
}

void IlpModel::fix(int var, std::int64_t value) {
  if (var < 0 || var >= static_cast<int>(vars.size())) {
    throw std::invalid_argument("variable index out of range");
  }
  Variable& x = vars[static_cast<std::size_t>(var)];
  if (value < x.lb || value > x.ub) {
    throw std::invalid_argument("fixing outside variable bounds");
  }
  x.lb = x.ub = value;
}

// ---------------------------------------------------------------------------
// Model builders

IlpModel build_base_model(int v, int d, const std::vector<int>& dims) {
  if (v < 1 || v > 8) {
    throw std::invalid_argument("build_base_model supports 1 <= v <= 8");
  }
  if (d < 1 || d > v || d % 2 == 0) {
    throw std::invalid_argument(
        "build_base_model takes odd d; use add_even_d_cuts for even distances");
  }
  IlpModel m;
  m.meta.v = v;
  m.meta.d = d;
  m.meta.dims = normalize_dims(v, dims);
  m.meta.form = "base";

  auto all = all_subspaces(v);
  m.vars.reserve(all.size() + static_cast<std::size_t>(v) + 1);
  for (std::size_t i = 0; i < all.size(); ++i) {
    Variable var;
    var.name = "x_" + std::to_string(i);
    var.rep = all[i];
    var.expansion = {all[i]};
    bool in_t = std::binary_search(m.meta.dims.begin(), m.meta.dims.end(),
                                   all[i].dim());
    if (!in_t) var.lb = var.ub = 0;
    m.vars.push_back(std::move(var));
  }
  std::vector<int> delta_index(static_cast<std::size_t>(v) + 1);
  for (int k = 0; k <= v; ++k) {
    Variable var;
    var.name = "delta_" + std::to_string(k);
    var.binary = false;
    var.lb = 0;
    var.ub = static_cast<std::int64_t>(subspace_count(v, k));
    var.delta_k = k;
    delta_index[static_cast<std::size_t>(k)] = static_cast<int>(m.vars.size());
    m.vars.push_back(std::move(var));
  }
  m.rebuild_index();

  const int radius = (d - 1) / 2;
  for (std::size_t i = 0; i < all.size(); ++i) {
    Constraint c;
    c.name = "ball_" + std::to_string(i);
    c.rhs = 1;
    for (const auto& u : ball_bfs(all[i], radius)) {
      c.terms.push_back({m.var_index_of(u), 1});
    }
    sort_terms(c);
    m.cons.push_back(std::move(c));
  }
  for (int k = 0; k <= v; ++k) {
    Constraint c;
    c.name = "dim_" + std::to_string(k);
    c.sense = Sense::EQ;
    c.rhs = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (all[i].dim() == k) c.terms.push_back({static_cast<int>(i), 1});
    }
    c.terms.push_back({delta_index[static_cast<std::size_t>(k)], -1});
    m.cons.push_back(std::move(c));
  }
  for (int k : m.meta.dims) {
    m.objective.push_back({delta_index[static_cast<std::size_t>(k)], 1});
  }
  return m;
}

std::vector<std::tuple<int, int, std::int64_t>> default_incidence_cut_set(
    int v, int d) {
  std::vector<std::tuple<int, int, std::int64_t>> s;
  for (int k = 1; k <= v - 1; ++k) {
    for (int l = 1; l <= v - 1; ++l) {
      if (k == l) continue;
      std::int64_t a;
      if (k < l) {
        a = static_cast<std::int64_t>(cdc_upper_bound(l, d, k).upper);
      } else {
        a = static_cast<std::int64_t>(cdc_upper_bound(v - l, d, k - l).upper);
      }
      if (a >= 2) s.emplace_back(k, l, a);
    }
  }
  return s;
}

void add_incidence_cuts(IlpModel& m) {
  add_incidence_cuts(m, default_incidence_cut_set(m.meta.v, m.meta.d));
}

void add_incidence_cuts(
    IlpModel& m, const std::vector<std::tuple<int, int, std::int64_t>>& S) {
  const int v = m.meta.v;
  const int d = m.meta.d;
  for (const auto& [k, l, a] : S) {
    if (a < 2) {
      throw std::invalid_argument(
          "incidence cut with a < 2 is redundant and rejected");
    }
    if (k < 1 || k > v - 1 || l < 1 || l > v - 1 || k == l) {
      throw std::invalid_argument("incidence cut (k,l) out of range");
    }
    auto l_spaces = grassmannian(v, l);
    for (std::size_t idx = 0; idx < l_spaces.size(); ++idx) {
      const Subspace& L = l_spaces[idx];
      Constraint c;
      c.name = "cut_ie_k" + std::to_string(k) + "_l" + std::to_string(l) + "_" +
               std::to_string(idx);
      c.rhs = a;
      auto members = k < l ? subspaces_below(L, k) : subspaces_above(L, k);
      for (const auto& u : members) {
        c.terms.push_back({m.var_index_of(u), 1});
      }
      if (std::abs(k - l) < d) {
        c.terms.push_back(
            {m.var_index_of(L), static_cast<std::int32_t>(a)});
      }
      sort_terms(c);
      m.cons.push_back(std::move(c));
    }
  }
  m.meta.cuts_ie = true;
}

void add_even_d_cuts(IlpModel& m, int d) {
  if (d % 2 != 0) throw std::invalid_argument("add_even_d_cuts takes even d");
  if (m.meta.d != d - 1) {
    throw std::invalid_argument(
        "add_even_d_cuts expects the base model built for distance d-1");
  }
  const int v = m.meta.v;
  for (int i = 0; i <= v; ++i) {
    for (int a = i; a <= v; ++a) {
      int b = d - 1 + 2 * i - a;
      if (b <= a || b > v) continue;
      std::int64_t lambda =
          static_cast<std::int64_t>(cdc_upper_bound(v - i, d, b - i).upper);
      auto w_spaces = grassmannian(v, i);
      for (std::size_t idx = 0; idx < w_spaces.size(); ++idx) {
        const Subspace& w = w_spaces[idx];
        Constraint c;
        c.name = "cut_even_a" + std::to_string(a) + "_b" + std::to_string(b) +
                 "_" + std::to_string(idx);
        c.rhs = lambda;
        for (const auto& u : subspaces_above(w, a)) {
          c.terms.push_back(
              {m.var_index_of(u), static_cast<std::int32_t>(lambda)});
        }
        for (const auto& u : subspaces_above(w, b)) {
          c.terms.push_back({m.var_index_of(u), 1});
        }
        sort_terms(c);
        m.cons.push_back(std::move(c));
      }
    }
  }
  m.meta.d = d;
  m.meta.cuts_even = true;
}

IlpModel reduce_kramer_mesner(const IlpModel& m, const MatrixGroup& g) {
  if (g.v != m.meta.v) {
    throw std::invalid_argument("group ambient dimension differs from model");
  }
  IlpModel r;
  r.meta = m.meta;
  r.meta.reduced = true;
  r.objective_offset = m.objective_offset;

  std::unordered_map<Subspace, int, SubspaceHash> orbit_of;
  std::vector<int> old_to_new(m.vars.size(), -1);
  for (std::size_t i = 0; i < m.vars.size(); ++i) {
    const Variable& var = m.vars[i];
    if (var.is_delta()) continue;
    if (!var.rep) {
      throw std::invalid_argument("cannot reduce a model with untagged variables");
    }
    auto it = orbit_of.find(*var.rep);
    if (it == orbit_of.end()) {
      std::set<Subspace> orbit;
      for (const auto& el : g.elements) orbit.insert(transform(*var.rep, el));
      int id = static_cast<int>(r.vars.size());
      for (const auto& u : orbit) {
        if (m.var_index_of(u) < 0) {
          throw std::invalid_argument(
              "group does not preserve the variable set of the model");
        }
        orbit_of.emplace(u, id);
      }
      Variable nv;
      nv.name = var.name;  // canonical scan meets the orbit minimum first
      nv.rep = *orbit.begin();
      nv.expansion.assign(orbit.begin(), orbit.end());
      nv.orbit_size = orbit.size();
      nv.lb = var.lb;
      nv.ub = var.ub;
      r.vars.push_back(std::move(nv));
      it = orbit_of.find(*var.rep);
    }
    old_to_new[i] = it->second;
    Variable& nv = r.vars[static_cast<std::size_t>(it->second)];
    nv.lb = std::max(nv.lb, var.lb);
    nv.ub = std::min(nv.ub, var.ub);
    if (nv.lb > nv.ub) {
      throw std::runtime_error("orbit merges contradictory variable fixings");
    }
  }
  for (std::size_t i = 0; i < m.vars.size(); ++i) {
    if (!m.vars[i].is_delta()) continue;
    old_to_new[i] = static_cast<int>(r.vars.size());
    r.vars.push_back(m.vars[i]);
  }
  r.rebuild_index();

  std::set<std::pair<std::vector<std::pair<int, std::int64_t>>,
                     std::pair<int, std::int64_t>>>
      seen;
  for (const auto& c : m.cons) {
    std::map<int, std::int64_t> acc;
    for (const auto& t : c.terms) {
      acc[old_to_new[static_cast<std::size_t>(t.var)]] += t.coef;
    }
    std::vector<std::pair<int, std::int64_t>> key_terms(acc.begin(), acc.end());
    auto key = std::make_pair(key_terms,
                              std::make_pair(static_cast<int>(c.sense), c.rhs));
    if (!seen.insert(key).second) continue;
    Constraint nc;
    nc.name = c.name;
    nc.sense = c.sense;
    nc.rhs = c.rhs;
    for (const auto& [var, coef] : key_terms) {
      nc.terms.push_back({var, static_cast<std::int32_t>(coef)});
    }
    r.cons.push_back(std::move(nc));
  }
  std::map<int, std::int64_t> obj;
  for (const auto& t : m.objective) {
    obj[old_to_new[static_cast<std::size_t>(t.var)]] += t.coef;
  }
  for (const auto& [var, coef] : obj) {
    r.objective.push_back({var, static_cast<std::int32_t>(coef)});
  }
  return r;
}

IlpModel build_hyperplane_model_ambient8(const SubspaceCode& F,
                                         std::int64_t cap_point,
                                         std::int64_t cap_hyperplane) {
  if (F.ambient() != 7) {
    throw std::invalid_argument(
        "prescribed codewords must live in the 7-dim hyperplane ambient");
  }
  for (const auto& w : F.words()) {
    if (w.dim() != 4) {
      throw std::invalid_argument("prescribed codewords must be solids");
    }
  }
  const int v = 8;
  IlpModel m;
  m.meta.v = v;
  m.meta.d = 6;
  m.meta.dims = {4};
  m.meta.form = "lemma12";

  auto solids = grassmannian(v, 4);
  m.vars.reserve(solids.size());
  // Variable names use the canonical index within all of PG(7, F_2).
  std::uint64_t offset = 0;
  for (int k = 0; k < 4; ++k) offset += subspace_count(v, k);
  for (std::size_t i = 0; i < solids.size(); ++i) {
    Variable var;
    var.name = "x_" + std::to_string(offset + i);
    var.rep = solids[i];
    var.expansion = {solids[i]};
    m.vars.push_back(std::move(var));
  }
  m.rebuild_index();

  for (int w : {1, 7}) {
    auto spaces = grassmannian(v, w);
    std::int64_t cap = w == 1 ? cap_point : cap_hyperplane;
    for (std::size_t j = 0; j < spaces.size(); ++j) {
      Constraint c;
      c.name = (w == 1 ? "cap_point_" : "cap_hyperplane_") + std::to_string(j);
      c.rhs = cap;
      for (std::size_t i = 0; i < solids.size(); ++i) {
        if (incident(spaces[j], solids[i])) {
          c.terms.push_back({static_cast<int>(i), 1});
        }
      }
      m.cons.push_back(std::move(c));
    }
  }
  for (int w : {2, 6}) {
    auto spaces = grassmannian(v, w);
    for (std::size_t j = 0; j < spaces.size(); ++j) {
      Constraint c;
      c.name = (w == 2 ? "pack_line_" : "pack_six_") + std::to_string(j);
      c.rhs = 1;
      auto members = w == 2 ? subspaces_above(spaces[j], 4)
                            : subspaces_below(spaces[j], 4);
      for (const auto& u : members) {
        c.terms.push_back({m.var_index_of(u), 1});
      }
      sort_terms(c);
      m.cons.push_back(std::move(c));
    }
  }
  for (std::size_t i = 0; i < m.vars.size(); ++i) {
    m.objective.push_back({static_cast<int>(i), 1});
  }
  // Embed F into the hyperplane spanned by the last 7 coordinates: width-7
  // row masks are reused unchanged in width 8.
  for (const auto& w : F.words()) {
    Subspace embedded = Subspace::from_rows(8, w.rows());
    int var = m.var_index_of(embedded);
    if (var < 0) throw std::logic_error("embedded codeword missing");
    m.fix(var, 1);
  }
  return m;
}

namespace {

// Exact maximum number of pairwise almost-disjoint planes below W, among the
// admissible planes listed in `members` (intersections of dimension <= 1).
int omega_exact(const std::vector<Subspace>& members) {
  int best = 0;
  std::vector<int> chosen;
  std::vector<std::vector<char>> ok(members.size(),
                                    std::vector<char>(members.size(), 0));
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      bool compatible = subspace_distance(members[i], members[j]) >= 4;
      ok[i][j] = ok[j][i] = compatible ? 1 : 0;
    }
  }
  std::vector<std::size_t> current;
  auto dfs = [&](auto&& self, std::size_t start) -> void {
    best = std::max(best, static_cast<int>(current.size()));
    for (std::size_t i = start; i < members.size(); ++i) {
      if (current.size() + (members.size() - i) <= static_cast<std::size_t>(best)) {
        return;
      }
      bool fits = true;
      for (std::size_t c : current) {
        if (!ok[c][i]) {
          fits = false;
          break;
        }
      }
      if (fits) {
        current.push_back(i);
        self(self, i + 1);
        current.pop_back();
      }
    }
  };
  dfs(dfs, 0);
  (void)chosen;
  return best;
}

}  // namespace

IlpModel build_hyperplane_model_hyperplane7(const SubspaceCode& F) {
  if (F.ambient() != 7) {
    throw std::invalid_argument("hyperplane7 model takes solids of F_2^7");
  }
  if (F.size() != 16 && F.size() != 17) {
    throw std::invalid_argument("hyperplane7 model requires #F in {16,17}");
  }
  for (const auto& w : F.words()) {
    if (w.dim() != 4) {
      throw std::invalid_argument("hyperplane7 model requires solids");
    }
  }
  const int v = 7;
  IlpModel m;
  m.meta.v = v;
  m.meta.d = 6;
  m.meta.dims = {3, 4};
  m.meta.form = "lemma13";
  m.objective_offset = static_cast<std::int64_t>(F.size());

  // Var_7(F): planes meeting every prescribed solid in at most a point.
  auto planes = grassmannian(v, 3);
  std::uint64_t offset = 0;
  for (int k = 0; k < 3; ++k) offset += subspace_count(v, k);
  std::vector<Subspace> admissible;
  for (std::size_t i = 0; i < planes.size(); ++i) {
    bool ok = true;
    for (const auto& s : F.words()) {
      if (subspace_distance(planes[i], s) < 5) {  // intersection dim >= 2
        ok = false;
        break;
      }
    }
    if (ok) {
      Variable var;
      var.name = "x_" + std::to_string(offset + i);
      var.rep = planes[i];
      var.expansion = {planes[i]};
      m.vars.push_back(std::move(var));
      admissible.push_back(planes[i]);
    }
  }
  m.rebuild_index();

  const std::int64_t f_count = static_cast<std::int64_t>(F.size());
  auto incidences_with_f = [&F](const Subspace& w) {
    std::int64_t n = 0;
    for (const auto& s : F.words()) {
      if (incident(s, w)) ++n;
    }
    return n;
  };

  auto points = grassmannian(v, 1);
  for (std::size_t j = 0; j < points.size(); ++j) {
    Constraint c;
    c.name = "pt_" + std::to_string(j);
    c.rhs = f_count - incidences_with_f(points[j]);
    for (std::size_t i = 0; i < admissible.size(); ++i) {
      if (admissible[i].contains(points[j])) {
        c.terms.push_back({static_cast<int>(i), 1});
      }
    }
    m.cons.push_back(std::move(c));
  }
  auto lines = grassmannian(v, 2);
  for (std::size_t j = 0; j < lines.size(); ++j) {
    bool inside_f = false;
    for (const auto& s : F.words()) {
      if (s.contains(lines[j])) {
        inside_f = true;
        break;
      }
    }
    if (inside_f) continue;
    Constraint c;
    c.name = "line_" + std::to_string(j);
    c.rhs = 1;
    for (std::size_t i = 0; i < admissible.size(); ++i) {
      if (admissible[i].contains(lines[j])) {
        c.terms.push_back({static_cast<int>(i), 1});
      }
    }
    m.cons.push_back(std::move(c));
  }
  auto solids = grassmannian(v, 4);
  for (std::size_t j = 0; j < solids.size(); ++j) {
    if (F.contains(solids[j])) continue;
    Constraint c;
    c.name = "solid_" + std::to_string(j);
    c.rhs = 1;
    for (std::size_t i = 0; i < admissible.size(); ++i) {
      if (solids[j].contains(admissible[i])) {
        c.terms.push_back({static_cast<int>(i), 1});
      }
    }
    m.cons.push_back(std::move(c));
  }
  auto fives = grassmannian(v, 5);
  for (std::size_t j = 0; j < fives.size(); ++j) {
    bool contains_f = false;
    for (const auto& s : F.words()) {
      if (fives[j].contains(s)) {
        contains_f = true;
        break;
      }
    }
    if (contains_f) continue;
    Constraint c;
    c.name = "five_" + std::to_string(j);
    std::vector<Subspace> members;
    for (std::size_t i = 0; i < admissible.size(); ++i) {
      if (fives[j].contains(admissible[i])) {
        members.push_back(admissible[i]);
        c.terms.push_back({static_cast<int>(i), 1});
      }
    }
    c.rhs = std::min<std::int64_t>(omega_exact(members), 7);
    m.cons.push_back(std::move(c));
  }
  auto hyperplanes = grassmannian(v, 6);
  for (std::size_t j = 0; j < hyperplanes.size(); ++j) {
    Constraint c;
    c.name = "hyp_" + std::to_string(j);
    c.rhs = 2 * (f_count - incidences_with_f(hyperplanes[j]));
    for (std::size_t i = 0; i < admissible.size(); ++i) {
      if (hyperplanes[j].contains(admissible[i])) {
        c.terms.push_back({static_cast<int>(i), 1});
      }
    }
    m.cons.push_back(std::move(c));
  }
  {
    Constraint c;
    c.name = "total_lb";
    c.sense = Sense::GE;
    c.rhs = 255 - f_count;
    for (std::size_t i = 0; i < m.vars.size(); ++i) {
      c.terms.push_back({static_cast<int>(i), 1});
    }
    m.cons.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < m.vars.size(); ++i) {
    m.objective.push_back({static_cast<int>(i), 1});
  }
  return m;
}

void prescribe(IlpModel& m, const SubspaceCode& c) {
  for (const auto& w : c.words()) {
    int var = m.var_index_of(w);
    if (var < 0) {
      throw std::invalid_argument("prescribed codeword " + w.to_string() +
                                  " has no variable in the model");
    }
    m.fix(var, 1);
  }
}

bool check_feasible(const IlpModel& m, const SubspaceCode& code) {
  std::vector<std::int64_t> val(m.vars.size(), 0);
  std::uint64_t covered = 0;
  auto dist = code.dimension_distribution();
  for (std::size_t i = 0; i < m.vars.size(); ++i) {
    const Variable& var = m.vars[i];
    if (var.is_delta()) {
      val[i] = var.delta_k <= m.meta.v
                   ? static_cast<std::int64_t>(
                         dist[static_cast<std::size_t>(var.delta_k)])
                   : 0;
      continue;
    }
    bool inside = !var.expansion.empty();
    for (const auto& s : var.expansion) {
      if (!code.contains(s)) {
        inside = false;
        break;
      }
    }
    if (inside) {
      val[i] = 1;
      covered += var.orbit_size;
    }
  }
  if (covered != code.size()) return false;  // code not representable
  for (std::size_t i = 0; i < m.vars.size(); ++i) {
    if (m.vars[i].is_delta()) continue;
    if (val[i] < m.vars[i].lb || val[i] > m.vars[i].ub) return false;
  }
  for (const auto& c : m.cons) {
    std::int64_t lhs = 0;
    for (const auto& t : c.terms) {
      lhs += static_cast<std::int64_t>(t.coef) *
             val[static_cast<std::size_t>(t.var)];
    }
    bool ok = c.sense == Sense::LE   ? lhs <= c.rhs
              : c.sense == Sense::GE ? lhs >= c.rhs
                                     : lhs == c.rhs;
    if (!ok) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// LP text format

namespace {

const char* sense_token(Sense s) {
  switch (s) {
    case Sense::LE: return "<=";
    case Sense::GE: return ">=";
    case Sense::EQ: return "=";
  }
  return "<=";
}

void emit_wrapped(std::ostream& out, const std::vector<std::string>& chunks) {
  std::size_t width = 0;
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    if (width > 0 && width + chunks[i].size() > 200) {
      out << "\n ";
      width = 1;
    }
    out << chunks[i];
    width += chunks[i].size();
  }
  out << "\n";
}

std::vector<std::string> expr_chunks(const IlpModel& m,
                                     const std::vector<LinearTerm>& terms) {
  std::vector<std::string> chunks;
  bool first = true;
  for (const auto& t : terms) {
    std::int64_t c = t.coef;
    std::string piece;
    if (first) {
      piece = c < 0 ? "- " : "";
    } else {
      piece = c < 0 ? " - " : " + ";
    }
    std::int64_t mag = c < 0 ? -c : c;
    if (mag != 1) piece += std::to_string(mag) + " ";
    piece += m.vars[static_cast<std::size_t>(t.var)].name;
    chunks.push_back(std::move(piece));
    first = false;
  }
  if (chunks.empty()) chunks.push_back("0");
  return chunks;
}

}  // namespace

void export_lp(const IlpModel& m, std::ostream& out) {
  out << "\\ subspace code model\n";
  out << "\\ meta v=" << m.meta.v << " d=" << m.meta.d << " dims=";
  for (std::size_t i = 0; i < m.meta.dims.size(); ++i) {
    if (i > 0) out << ',';
    out << m.meta.dims[i];
  }
  out << " form=" << m.meta.form << " reduced=" << (m.meta.reduced ? 1 : 0)
      << " cuts_ie=" << (m.meta.cuts_ie ? 1 : 0)
      << " cuts_even=" << (m.meta.cuts_even ? 1 : 0)
      << " offset=" << m.objective_offset << "\n";
  out << "Maximize\n";
  {
    auto chunks = expr_chunks(m, m.objective);
    chunks.insert(chunks.begin(), " obj: ");
    emit_wrapped(out, chunks);
  }
  out << "Subject To\n";
  for (const auto& c : m.cons) {
    auto chunks = expr_chunks(m, c.terms);
    chunks.insert(chunks.begin(), " " + c.name + ": ");
    chunks.push_back(std::string(" ") + sense_token(c.sense) + " " +
                     std::to_string(c.rhs));
    emit_wrapped(out, chunks);
  }
  out << "Bounds\n";
  for (const auto& var : m.vars) {
    if (var.fixed()) {
      out << " " << var.name << " = " << var.lb << "\n";
    } else if (!var.binary) {
      out << " " << var.lb << " <= " << var.name << " <= " << var.ub << "\n";
    }
  }
  out << "Binary\n";
  {
    std::vector<std::string> names;
    bool first = true;
    for (const auto& var : m.vars) {
      if (!var.binary) continue;
      names.push_back(first ? " " + var.name : " " + var.name);
      first = false;
    }
    if (!names.empty()) emit_wrapped(out, names);
  }
  out << "End\n";
}

void export_lp_file(const IlpModel& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  export_lp(m, out);
}

namespace {

struct LpToken {
  std::string text;
};

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

std::vector<std::string> tokenize_lp(std::istream& in, ModelMeta& meta,
                                     std::int64_t& offset) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '\\') {
      if (line.rfind("\\ meta ", 0) == 0) {
        std::istringstream ls(line.substr(7));
        std::string kv;
        while (ls >> kv) {
          auto eq = kv.find('=');
          if (eq == std::string::npos) continue;
          std::string key = kv.substr(0, eq);
          std::string value = kv.substr(eq + 1);
          if (key == "v") meta.v = std::stoi(value);
          else if (key == "d") meta.d = std::stoi(value);
          else if (key == "form") meta.form = value;
          else if (key == "reduced") meta.reduced = value == "1";
          else if (key == "cuts_ie") meta.cuts_ie = value == "1";
          else if (key == "cuts_even") meta.cuts_even = value == "1";
          else if (key == "offset") offset = std::stoll(value);
          else if (key == "dims") {
            meta.dims.clear();
            std::istringstream ds(value);
            std::string part;
            while (std::getline(ds, part, ',')) {
              if (!part.empty()) meta.dims.push_back(std::stoi(part));
            }
          }
        }
      }
      continue;
    }
    std::size_t i = 0;
    while (i < line.size()) {
      char c = line[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      if (c == '<' || c == '>') {
        std::string tok(1, c);
        if (i + 1 < line.size() && line[i + 1] == '=') {
          tok += '=';
          i += 2;
        } else {
          ++i;
        }
        tokens.push_back(tok);
      } else if (c == '=' || c == '+' || c == '-' || c == ':') {
        tokens.push_back(std::string(1, c));
        ++i;
      } else if (is_name_char(c)) {
        std::size_t j = i;
        while (j < line.size() && is_name_char(line[j])) ++j;
        tokens.push_back(line.substr(i, j - i));
        i = j;
      } else {
        throw std::runtime_error("unexpected character in LP file: " +
                                 std::string(1, c));
      }
    }
  }
  return tokens;
}

bool is_number(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

IlpModel parse_lp(std::istream& in) {
  IlpModel m;
  std::int64_t offset = 0;
  auto tokens = tokenize_lp(in, m.meta, offset);
  m.objective_offset = offset;

  std::size_t pos = 0;
  auto peek = [&]() -> std::string {
    return pos < tokens.size() ? tokens[pos] : std::string();
  };
  auto next = [&]() -> std::string {
    if (pos >= tokens.size()) throw std::runtime_error("unexpected end of LP file");
    return tokens[pos++];
  };

  struct ParsedCon {
    std::string name;
    std::vector<std::pair<std::string, std::int64_t>> terms;
    Sense sense;
    std::int64_t rhs;
  };
  std::vector<std::pair<std::string, std::int64_t>> objective;
  std::vector<ParsedCon> parsed;
  std::map<std::string, std::pair<std::int64_t, std::int64_t>> bounds;
  std::vector<std::string> binary_order;
  std::set<std::string> binary_set;

  auto is_section = [](const std::string& t) {
    std::string l = lower(t);
    return l == "maximize" || l == "max" || l == "subject" || l == "st" ||
           l == "bounds" || l == "binary" || l == "bin" || l == "end" ||
           l == "general" || l == "binaries";
  };

  auto parse_expr = [&](std::vector<std::pair<std::string, std::int64_t>>& out) {
    std::int64_t sign = 1;
    bool have_sign = false;
    while (pos < tokens.size()) {
      std::string t = peek();
      if (t == "+" || t == "-") {
        ++pos;
        sign = t == "-" ? (have_sign ? -sign : -1) : (have_sign ? sign : 1);
        have_sign = true;
        continue;
      }
      if (t == "<=" || t == ">=" || t == "=" || is_section(t)) break;
      std::int64_t coef = 1;
      if (is_number(t)) {
        coef = std::stoll(t);
        ++pos;
        t = peek();
        // A bare constant (only "0" is ever emitted) contributes no term.
        if (t.empty() || t == "<=" || t == ">=" || t == "=" || t == "+" ||
            t == "-" || is_section(t)) {
          if (coef != 0) {
            throw std::runtime_error("unexpected constant in LP expression");
          }
          sign = 1;
          have_sign = false;
          continue;
        }
      }
      if (t.empty() || is_number(t) || t == "+" || t == "-" || is_section(t)) {
        throw std::runtime_error("expected variable name in LP expression");
      }
      ++pos;
      out.emplace_back(t, sign * coef);
      sign = 1;
      have_sign = false;
    }
  };

  enum class Section { None, Objective, Constraints, Bounds, Binary };
  Section section = Section::None;
  while (pos < tokens.size()) {
    std::string t = peek();
    std::string l = lower(t);
    if (l == "maximize" || l == "max") {
      ++pos;
      section = Section::Objective;
      continue;
    }
    if (l == "subject") {
      ++pos;
      if (lower(peek()) == "to") ++pos;
      section = Section::Constraints;
      continue;
    }
    if (l == "st") {
      ++pos;
      section = Section::Constraints;
      continue;
    }
    if (l == "bounds") {
      ++pos;
      section = Section::Bounds;
      continue;
    }
    if (l == "binary" || l == "bin" || l == "binaries") {
      ++pos;
      section = Section::Binary;
      continue;
    }
    if (l == "end") {
      ++pos;
      break;
    }
    switch (section) {
      case Section::Objective: {
        std::string name = next();
        if (peek() == ":") {
          ++pos;  // objective label
        } else {
          throw std::runtime_error("expected 'obj:' label");
        }
        parse_expr(objective);
        break;
      }
      case Section::Constraints: {
        ParsedCon con;
        con.name = next();
        if (next() != ":") {
          throw std::runtime_error("expected ':' after constraint name");
        }
        parse_expr(con.terms);
        std::string s = next();
        con.sense = s == "<=" ? Sense::LE : s == ">=" ? Sense::GE : Sense::EQ;
        std::int64_t sign = 1;
        std::string r = next();
        if (r == "-") {
          sign = -1;
          r = next();
        }
        con.rhs = sign * std::stoll(r);
        parsed.push_back(std::move(con));
        break;
      }
      case Section::Bounds: {
        // forms: "name = n"  |  "a <= name <= b"
        std::string first = next();
        if (is_number(first) ||
            (first == "-" && is_number(peek()))) {
          std::int64_t lo_sign = 1;
          if (first == "-") {
            lo_sign = -1;
            first = next();
          }
          std::int64_t lo = lo_sign * std::stoll(first);
          if (next() != "<=") throw std::runtime_error("bad bounds line");
          std::string name = next();
          if (next() != "<=") throw std::runtime_error("bad bounds line");
          std::int64_t hi_sign = 1;
          std::string hi_tok = next();
          if (hi_tok == "-") {
            hi_sign = -1;
            hi_tok = next();
          }
          bounds[name] = {lo, hi_sign * std::stoll(hi_tok)};
        } else {
          std::string name = first;
          std::string op = next();
          if (op != "=") throw std::runtime_error("bad bounds line");
          std::int64_t sign = 1;
          std::string val = next();
          if (val == "-") {
            sign = -1;
            val = next();
          }
          std::int64_t x = sign * std::stoll(val);
          bounds[name] = {x, x};
        }
        break;
      }
      case Section::Binary: {
        std::string name = next();
        if (binary_set.insert(name).second) binary_order.push_back(name);
        break;
      }
      case Section::None:
        throw std::runtime_error("unexpected token before any LP section: " + t);
    }
  }

  // Variables: binary ones in listing order, then the rest in bounds order.
  std::map<std::string, int> index;
  std::vector<Subspace> all;
  if (m.meta.v >= 1) all = all_subspaces(m.meta.v);
  auto add_var = [&](const std::string& name, bool binary) {
    if (index.count(name)) return;
    Variable var;
    var.name = name;
    var.binary = binary;
    if (!binary) {
      var.ub = std::numeric_limits<std::int64_t>::max();
      if (name.rfind("delta_", 0) == 0) {
        var.delta_k = std::stoi(name.substr(6));
      }
    }
    if (name.rfind("x_", 0) == 0 && !all.empty()) {
      std::size_t i = std::stoull(name.substr(2));
      if (i < all.size()) {
        var.rep = all[i];
        var.expansion = {all[i]};
      }
    }
    index[name] = static_cast<int>(m.vars.size());
    m.vars.push_back(std::move(var));
  };
  for (const auto& name : binary_order) add_var(name, true);
  for (const auto& [name, b] : bounds) {
    if (!binary_set.count(name)) add_var(name, false);
  }
  for (const auto& [name, b] : bounds) {
    Variable& var = m.vars[static_cast<std::size_t>(index[name])];
    var.lb = b.first;
    var.ub = b.second;
  }
  auto resolve = [&](const std::string& name) {
    auto it = index.find(name);
    if (it == index.end()) {
      throw std::runtime_error("LP references undeclared variable " + name);
    }
    return it->second;
  };
  for (const auto& [name, coef] : objective) {
    m.objective.push_back({resolve(name), static_cast<std::int32_t>(coef)});
  }
  for (const auto& pc : parsed) {
    Constraint c;
    c.name = pc.name;
    c.sense = pc.sense;
    c.rhs = pc.rhs;
    for (const auto& [name, coef] : pc.terms) {
      c.terms.push_back({resolve(name), static_cast<std::int32_t>(coef)});
    }
    m.cons.push_back(std::move(c));
  }
  m.rebuild_index();
  return m;
}

IlpModel parse_lp_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_lp(in);
}

bool structurally_equal(const IlpModel& a, const IlpModel& b) {
  if (a.vars.size() != b.vars.size() || a.cons.size() != b.cons.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.vars.size(); ++i) {
    const Variable& x = a.vars[i];
    const Variable& y = b.vars[i];
    if (x.name != y.name || x.binary != y.binary || x.lb != y.lb ||
        x.ub != y.ub) {
      return false;
    }
  }
  for (std::size_t i = 0; i < a.cons.size(); ++i) {
    const Constraint& x = a.cons[i];
    const Constraint& y = b.cons[i];
    if (x.name != y.name || x.sense != y.sense || x.rhs != y.rhs ||
        x.terms.size() != y.terms.size()) {
      return false;
    }
    for (std::size_t j = 0; j < x.terms.size(); ++j) {
      if (a.vars[static_cast<std::size_t>(x.terms[j].var)].name !=
              b.vars[static_cast<std::size_t>(y.terms[j].var)].name ||
          x.terms[j].coef != y.terms[j].coef) {
        return false;
      }
    }
  }
  if (a.objective.size() != b.objective.size()) return false;
  for (std::size_t j = 0; j < a.objective.size(); ++j) {
    if (a.vars[static_cast<std::size_t>(a.objective[j].var)].name !=
            b.vars[static_cast<std::size_t>(b.objective[j].var)].name ||
        a.objective[j].coef != b.objective[j].coef) {
      return false;
    }
  }
  return a.objective_offset == b.objective_offset && a.meta.v == b.meta.v &&
         a.meta.d == b.meta.d && a.meta.dims == b.meta.dims &&
         a.meta.form == b.meta.form && a.meta.reduced == b.meta.reduced;
}

// ---------------------------------------------------------------------------
// Exact solver

namespace {

class Bits {
 public:
  Bits() = default;
  explicit Bits(int n) : n_(n), w_(static_cast<std::size_t>((n + 63) / 64), 0) {}
  static Bits all(int n) {
    Bits b(n);
    for (auto& x : b.w_) x = ~0ull;
    if (n & 63) b.w_.back() = (1ull << (n & 63)) - 1;
    return b;
  }
  void set(int i) { w_[static_cast<std::size_t>(i >> 6)] |= 1ull << (i & 63); }
  void reset(int i) {
    w_[static_cast<std::size_t>(i >> 6)] &= ~(1ull << (i & 63));
  }
  bool test(int i) const {
    return w_[static_cast<std::size_t>(i >> 6)] >> (i & 63) & 1;
  }
  bool any() const {
    for (auto x : w_) {
      if (x) return true;
    }
    return false;
  }
  int count() const {
    int n = 0;
    for (auto x : w_) n += std::popcount(x);
    return n;
  }
  int first() const {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      if (w_[i]) {
        return static_cast<int>(i * 64) + std::countr_zero(w_[i]);
      }
    }
    return -1;
  }
  void and_with(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
  }
  void or_with(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
  }
  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      std::uint64_t x = w_[i];
      while (x) {
        int b = std::countr_zero(x);
        x &= x - 1;
        f(static_cast<int>(i * 64) + b);
      }
    }
  }

 private:
  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

struct SearchAbort {};

constexpr int kMaxGroups = 18;

// Per-dimension weight totals of a candidate set; together with the known
// constant-dimension caps this yields a cheap, strong bound.
struct GroupAvail {
  std::array<std::int64_t, kMaxGroups> w{};
};

// A counting row that pairwise conflicts do not fully encode: the search
// tracks its residual and eagerly removes candidates it can no longer admit.
struct CountRow {
  std::vector<std::pair<int, std::int64_t>> terms;  // (variable, coefficient)
  std::int64_t residual = 0;
};

class PackingSearch {
 public:
  int n = 0;
  std::vector<std::int64_t> weight;
  std::vector<Bits> compat;
  std::vector<int> group_of;               // dimension tag per variable
  std::array<std::int64_t, kMaxGroups> group_cap{};
  std::vector<CountRow> rows;
  std::vector<std::vector<std::pair<int, std::int64_t>>> rows_of;  // per var
  std::vector<std::int64_t> suffix_bound;  // c[i]
  std::int64_t best = 0;
  std::vector<int> best_set;
  std::vector<int> stack;
  std::uint64_t nodes = 0;
  std::chrono::steady_clock::time_point deadline;
  bool use_deadline = false;
  bool aborted = false;

  void run() {
    group_sel_.fill(0);
    rows_of.assign(static_cast<std::size_t>(n), {});
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (const auto& [var, coef] : rows[r].terms) {
        rows_of[static_cast<std::size_t>(var)].emplace_back(
            static_cast<int>(r), coef);
      }
    }
    suffix_bound.assign(static_cast<std::size_t>(n) + 1, 0);
    scratch_.assign(static_cast<std::size_t>(n) + 2, Bits(n));
    for (int i = n - 1; i >= 0; --i) {
      Bits& p = scratch_[0];
      p = Bits(n);
      GroupAvail avail;
      std::int64_t sum = 0;
      compat[static_cast<std::size_t>(i)].for_each([&](int j) {
        if (j > i) {
          p.set(j);
          sum += weight[static_cast<std::size_t>(j)];
          avail.w[static_cast<std::size_t>(group_of[static_cast<std::size_t>(j)])] +=
              weight[static_cast<std::size_t>(j)];
        }
      });
      stack.assign(1, i);
      enter(i);
      try {
        expand(weight[static_cast<std::size_t>(i)], sum, avail, 0);
      } catch (const SearchAbort&) {
        aborted = true;
        for (int j = i; j >= 0; --j) {
          suffix_bound[static_cast<std::size_t>(j)] = best;
        }
        return;
      }
      leave(i);
      suffix_bound[static_cast<std::size_t>(i)] = best;
    }
  }

 private:
  std::array<std::int64_t, kMaxGroups> group_sel_{};

  bool fits(int u) const {
    const std::int64_t wu = weight[static_cast<std::size_t>(u)];
    const int gu = group_of[static_cast<std::size_t>(u)];
    if (group_cap[static_cast<std::size_t>(gu)] -
            group_sel_[static_cast<std::size_t>(gu)] <
        wu) {
      return false;
    }
    for (const auto& [r, coef] : rows_of[static_cast<std::size_t>(u)]) {
      if (coef > rows[static_cast<std::size_t>(r)].residual) return false;
    }
    return true;
  }

  void enter(int u) {
    group_sel_[static_cast<std::size_t>(group_of[static_cast<std::size_t>(u)])] +=
        weight[static_cast<std::size_t>(u)];
    for (const auto& [r, coef] : rows_of[static_cast<std::size_t>(u)]) {
      rows[static_cast<std::size_t>(r)].residual -= coef;
    }
  }

  void leave(int u) {
    group_sel_[static_cast<std::size_t>(group_of[static_cast<std::size_t>(u)])] -=
        weight[static_cast<std::size_t>(u)];
    for (const auto& [r, coef] : rows_of[static_cast<std::size_t>(u)]) {
      rows[static_cast<std::size_t>(r)].residual += coef;
    }
  }

  std::int64_t cap_bound(const GroupAvail& avail) const {
    std::int64_t bound = 0;
    for (std::size_t g = 0; g < kMaxGroups; ++g) {
      if (avail.w[g] == 0) continue;
      bound += std::min(avail.w[g], group_cap[g] - group_sel_[g]);
    }
    return bound;
  }

  std::vector<Bits> scratch_;  // per-depth candidate buffers, no reallocation

  // Consumes the candidate set prepared in scratch_[depth].
  void expand(std::int64_t w, std::int64_t sum_p, GroupAvail avail, int depth) {
    if (++nodes % 4096 == 0 && use_deadline &&
        std::chrono::steady_clock::now() > deadline) {
      throw SearchAbort{};
    }
    Bits& p = scratch_[static_cast<std::size_t>(depth)];
    while (true) {
      if (w + sum_p <= best) return;
      if (w + cap_bound(avail) <= best) return;
      int u = p.first();
      if (u < 0) {
        if (w > best) {
          best = w;
          best_set = stack;
        }
        return;
      }
      if (w + suffix_bound[static_cast<std::size_t>(u)] <= best) return;
      const std::int64_t wu = weight[static_cast<std::size_t>(u)];
      const int gu = group_of[static_cast<std::size_t>(u)];
      p.reset(u);
      sum_p -= wu;
      avail.w[static_cast<std::size_t>(gu)] -= wu;
      if (fits(u)) {
        Bits& p2 = scratch_[static_cast<std::size_t>(depth) + 1];
        p2 = p;
        p2.and_with(compat[static_cast<std::size_t>(u)]);
        stack.push_back(u);
        enter(u);
        // Candidates a freshly saturated row can no longer admit drop out.
        for (const auto& [r, coef] : rows_of[static_cast<std::size_t>(u)]) {
          const CountRow& row = rows[static_cast<std::size_t>(r)];
          (void)coef;
          for (const auto& [var, vcoef] : row.terms) {
            if (vcoef > row.residual && p2.test(var)) p2.reset(var);
          }
        }
        std::int64_t sum2 = 0;
        GroupAvail avail2;
        p2.for_each([&](int j) {
          sum2 += weight[static_cast<std::size_t>(j)];
          avail2.w[static_cast<std::size_t>(group_of[static_cast<std::size_t>(j)])] +=
              weight[static_cast<std::size_t>(j)];
        });
        expand(w + wu, sum2, avail2, depth + 1);
        leave(u);
        stack.pop_back();
      }
    }
  }
};

}  // namespace

SolveResult solve_exact(const IlpModel& m, double time_limit_s) {
  auto t0 = std::chrono::steady_clock::now();
  SolveResult result;
  result.incumbent = SubspaceCode(m.meta.v);

  // Objective over x-variables, expanding deltas through their couplings.
  std::vector<std::int64_t> obj_x(m.vars.size(), 0);
  std::vector<int> delta_row(m.vars.size(), -1);
  for (std::size_t ci = 0; ci < m.cons.size(); ++ci) {
    const Constraint& c = m.cons[ci];
    if (c.sense != Sense::EQ) continue;
    for (const auto& t : c.terms) {
      if (m.vars[static_cast<std::size_t>(t.var)].is_delta() && t.coef == -1) {
        delta_row[static_cast<std::size_t>(t.var)] = static_cast<int>(ci);
      }
    }
  }
  for (const auto& t : m.objective) {
    const Variable& var = m.vars[static_cast<std::size_t>(t.var)];
    if (var.is_delta()) {
      int row = delta_row[static_cast<std::size_t>(t.var)];
      if (row < 0) {
        throw std::invalid_argument(
            "objective references a delta variable without a coupling row");
      }
      for (const auto& ct : m.cons[static_cast<std::size_t>(row)].terms) {
        if (ct.var == t.var) continue;
        obj_x[static_cast<std::size_t>(ct.var)] +=
            static_cast<std::int64_t>(t.coef) * ct.coef;
      }
    } else {
      obj_x[static_cast<std::size_t>(t.var)] += t.coef;
    }
  }

  // Fixed assignments and active candidates.
  std::vector<int> fixed_one;
  std::vector<char> active(m.vars.size(), 0);
  for (std::size_t i = 0; i < m.vars.size(); ++i) {
    const Variable& var = m.vars[i];
    if (var.is_delta()) continue;
    if (var.fixed()) {
      if (var.lb == 1) fixed_one.push_back(static_cast<int>(i));
      continue;
    }
    if (obj_x[i] > 0) active[i] = 1;
  }

  // Residuals of <=-rows under the prescribed variables; conflict edges.
  std::vector<std::int64_t> residual(m.cons.size(), 0);
  for (std::size_t ci = 0; ci < m.cons.size(); ++ci) {
    const Constraint& c = m.cons[ci];
    if (c.sense != Sense::LE) continue;
    std::int64_t used = 0;
    for (const auto& t : c.terms) {
      const Variable& var = m.vars[static_cast<std::size_t>(t.var)];
      if (!var.is_delta() && var.fixed() && var.lb == 1) used += t.coef;
    }
    residual[ci] = c.rhs - used;
    if (residual[ci] < 0) {
      result.status = SolveStatus::Infeasible;
      result.note = "prescribed variables violate constraint " + c.name;
      result.seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
      return result;
    }
    for (const auto& t : c.terms) {
      if (active[static_cast<std::size_t>(t.var)] && t.coef > residual[ci]) {
        active[static_cast<std::size_t>(t.var)] = 0;
      }
    }
  }

  // Constant-dimension caps per dimension; prescribed codewords consume them.
  const std::int64_t kNoCap = std::numeric_limits<std::int64_t>::max() / 4;
  std::array<std::int64_t, kMaxGroups> group_cap;
  group_cap.fill(kNoCap);
  bool caps_known = m.meta.v >= 1 && m.meta.v <= 8 && m.meta.d >= 1;
  if (caps_known) {
    for (int k = 0; k <= m.meta.v; ++k) {
      group_cap[static_cast<std::size_t>(k)] = static_cast<std::int64_t>(
          cdc_upper_bound(m.meta.v, m.meta.d, k).upper);
    }
    for (int i : fixed_one) {
      const Variable& var = m.vars[static_cast<std::size_t>(i)];
      if (var.rep) {
        group_cap[static_cast<std::size_t>(var.rep->dim())] -=
            obj_x[static_cast<std::size_t>(i)];
      }
    }
  }
  auto group_of_var = [&](int i) {
    const Variable& var = m.vars[static_cast<std::size_t>(i)];
    return caps_known && var.rep ? var.rep->dim() : kMaxGroups - 1;
  };

  std::vector<int> ids;
  for (std::size_t i = 0; i < m.vars.size(); ++i) {
    if (active[i]) ids.push_back(static_cast<int>(i));
  }
  // Scarce dimensions first: the abundant ones form the search tail, where
  // the suffix bounds meet their own caps and close quickly. Within a cap
  // class the canonical order is kept.
  std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) {
    return group_cap[static_cast<std::size_t>(group_of_var(a))] <
           group_cap[static_cast<std::size_t>(group_of_var(b))];
  });
  std::vector<int> pos(m.vars.size(), -1);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    pos[static_cast<std::size_t>(ids[i])] = static_cast<int>(i);
  }
  const int n = static_cast<int>(ids.size());
  if (n > 30000) {
    throw std::invalid_argument(
        "model too large for the built-in solver; export the LP instead");
  }

  PackingSearch search;
  search.n = n;
  search.weight.resize(static_cast<std::size_t>(n));
  search.group_cap = group_cap;
  search.group_of.assign(static_cast<std::size_t>(n), kMaxGroups - 1);
  for (int i = 0; i < n; ++i) {
    search.weight[static_cast<std::size_t>(i)] =
        obj_x[static_cast<std::size_t>(ids[static_cast<std::size_t>(i)])];
    search.group_of[static_cast<std::size_t>(i)] =
        group_of_var(ids[static_cast<std::size_t>(i)]);
  }
  search.compat.assign(static_cast<std::size_t>(n), Bits::all(n));
  for (int i = 0; i < n; ++i) {
    search.compat[static_cast<std::size_t>(i)].reset(i);
  }
  for (std::size_t ci = 0; ci < m.cons.size(); ++ci) {
    const Constraint& c = m.cons[ci];
    if (c.sense != Sense::LE) continue;
    std::vector<std::pair<int, std::int32_t>> act;
    for (const auto& t : c.terms) {
      if (pos[static_cast<std::size_t>(t.var)] >= 0) {
        act.emplace_back(pos[static_cast<std::size_t>(t.var)], t.coef);
      }
    }
    bool counting = false;
    for (std::size_t a = 0; a < act.size(); ++a) {
      for (std::size_t b = a + 1; b < act.size(); ++b) {
        if (act[a].second + act[b].second > residual[ci]) {
          search.compat[static_cast<std::size_t>(act[a].first)].reset(
              act[b].first);
          search.compat[static_cast<std::size_t>(act[b].first)].reset(
              act[a].first);
        } else {
          counting = true;
        }
      }
    }
    if (counting) {
      CountRow row;
      row.residual = residual[ci];
      for (const auto& [var, coef] : act) row.terms.emplace_back(var, coef);
      search.rows.push_back(std::move(row));
    }
  }
  if (time_limit_s > 0) {
    search.use_deadline = true;
    search.deadline =
        t0 + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                 std::chrono::duration<double>(time_limit_s));
  }
  search.run();

  std::int64_t base = 0;
  std::vector<Subspace> words;
  for (int i : fixed_one) {
    base += obj_x[static_cast<std::size_t>(i)];
    for (const auto& s : m.vars[static_cast<std::size_t>(i)].expansion) {
      words.push_back(s);
    }
  }
  for (int i : search.best_set) {
    for (const auto& s :
         m.vars[static_cast<std::size_t>(ids[static_cast<std::size_t>(i)])]
             .expansion) {
      words.push_back(s);
    }
  }
  result.incumbent = SubspaceCode(m.meta.v, std::move(words));
  result.value = base + search.best + m.objective_offset;
  result.nodes = search.nodes;
  result.status = search.aborted ? SolveStatus::Feasible : SolveStatus::Optimal;

  // The incumbent must satisfy the whole model, not just the pairwise part.
  std::vector<std::int64_t> val(m.vars.size(), 0);
  for (int i : fixed_one) val[static_cast<std::size_t>(i)] = 1;
  for (int i : search.best_set) {
    val[static_cast<std::size_t>(ids[static_cast<std::size_t>(i)])] = 1;
  }
  for (std::size_t ci = 0; ci < m.cons.size(); ++ci) {
    const Constraint& c = m.cons[ci];
    if (c.sense != Sense::LE) continue;
    std::int64_t lhs = 0;
    for (const auto& t : c.terms) {
      lhs += static_cast<std::int64_t>(t.coef) *
             val[static_cast<std::size_t>(t.var)];
    }
    if (lhs > c.rhs) {
      throw std::logic_error(
          "model is outside the supported packing family (constraint " +
          c.name + " not captured by pairwise conflicts)");
    }
  }
  for (const auto& c : m.cons) {
    if (c.sense != Sense::GE) continue;
    std::int64_t lhs = 0;
    for (const auto& t : c.terms) {
      lhs += static_cast<std::int64_t>(t.coef) *
             val[static_cast<std::size_t>(t.var)];
    }
    if (lhs < c.rhs) {
      if (result.status == SolveStatus::Optimal) {
        result.status = SolveStatus::Infeasible;
        result.note = "even the optimum violates covering constraint " + c.name;
      } else {
        result.note = "incumbent violates covering constraint " + c.name;
      }
    }
  }

  if (m.meta.d > 0 && !m.meta.dims.empty() &&
      result.status != SolveStatus::Infeasible) {
    auto report = verify(result.incumbent, m.meta.d, m.meta.dims);
    if (!report.ok()) {
      throw std::logic_error("solver incumbent fails verification");
    }
  }
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return result;
}

SolveResult max_clique(int v, int d, const std::vector<int>& dims,
                       double time_limit_s) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<int> order = normalize_dims(v, dims);
  std::vector<Subspace> verts;
  for (int k : order) {
    GrassmannIter it(v, k);
    while (auto s = it.next()) verts.push_back(std::move(*s));
  }
  const int n = static_cast<int>(verts.size());
  if (n > 30000) {
    throw std::invalid_argument("compatibility graph too large for max_clique");
  }
  std::vector<Bits> adj(static_cast<std::size_t>(n), Bits(n));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (subspace_distance(verts[static_cast<std::size_t>(i)],
                            verts[static_cast<std::size_t>(j)]) >= d) {
        adj[static_cast<std::size_t>(i)].set(j);
        adj[static_cast<std::size_t>(j)].set(i);
      }
    }
  }

  auto deadline =
      t0 + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
               std::chrono::duration<double>(time_limit_s));
  std::vector<int> best_set;
  std::vector<int> stack;
  std::uint64_t nodes = 0;
  bool aborted = false;

  // Tomita-style: candidates sorted by greedy colour, processed from the
  // highest colour down.
  auto expand = [&](auto&& self, std::vector<int>& p) -> void {
    if (++nodes % 4096 == 0 &&
        std::chrono::steady_clock::now() > deadline) {
      aborted = true;
      return;
    }
    if (p.empty()) {
      if (stack.size() > best_set.size()) best_set = stack;
      return;
    }
    std::vector<int> colour(p.size());
    std::vector<Bits> class_members;
    for (std::size_t i = 0; i < p.size(); ++i) {
      std::size_t c = 0;
      for (; c < class_members.size(); ++c) {
        bool clash = false;
        class_members[c].for_each([&](int u) {
          if (adj[static_cast<std::size_t>(u)].test(p[i])) clash = true;
        });
        if (!clash) break;
      }
      if (c == class_members.size()) class_members.emplace_back(n);
      class_members[c].set(p[i]);
      colour[i] = static_cast<int>(c) + 1;
    }
    std::vector<std::size_t> idx(p.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return colour[a] < colour[b];
    });
    std::vector<int> ordered;
    std::vector<int> ordered_colour;
    for (std::size_t i : idx) {
      ordered.push_back(p[i]);
      ordered_colour.push_back(colour[i]);
    }
    for (std::size_t i = ordered.size(); i-- > 0;) {
      if (aborted) return;
      if (stack.size() + static_cast<std::size_t>(ordered_colour[i]) <=
          best_set.size()) {
        return;
      }
      int u = ordered[i];
      std::vector<int> p2;
      for (std::size_t j = 0; j < i; ++j) {
        if (adj[static_cast<std::size_t>(u)].test(ordered[j])) {
          p2.push_back(ordered[j]);
        }
      }
      stack.push_back(u);
      self(self, p2);
      stack.pop_back();
    }
  };
  std::vector<int> p0(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p0[static_cast<std::size_t>(i)] = i;
  expand(expand, p0);

  SolveResult result;
  std::vector<Subspace> words;
  for (int i : best_set) words.push_back(verts[static_cast<std::size_t>(i)]);
  result.incumbent = SubspaceCode(v, std::move(words));
  result.value = static_cast<std::int64_t>(best_set.size());
  result.nodes = nodes;
  result.status = aborted ? SolveStatus::Feasible : SolveStatus::Optimal;
  auto report = verify(result.incumbent, d, order);
  if (!report.ok()) throw std::logic_error("clique incumbent fails verification");
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return result;
}

// ---------------------------------------------------------------------------
// LP relaxation: dense two-phase simplex with Bland's rule.

LpResult solve_relaxation(const IlpModel& m, std::size_t max_tableau_entries) {
  // Translate the objective onto x-variables (deltas are definitional).
  std::vector<double> obj_x(m.vars.size(), 0.0);
  {
    std::vector<int> delta_row(m.vars.size(), -1);
    for (std::size_t ci = 0; ci < m.cons.size(); ++ci) {
      const Constraint& c = m.cons[ci];
      if (c.sense != Sense::EQ) continue;
      for (const auto& t : c.terms) {
        if (m.vars[static_cast<std::size_t>(t.var)].is_delta() &&
            t.coef == -1) {
          delta_row[static_cast<std::size_t>(t.var)] = static_cast<int>(ci);
        }
      }
    }
    for (const auto& t : m.objective) {
      const Variable& var = m.vars[static_cast<std::size_t>(t.var)];
      if (var.is_delta()) {
        int row = delta_row[static_cast<std::size_t>(t.var)];
        if (row < 0) {
          throw std::invalid_argument("objective delta without coupling row");
        }
        for (const auto& ct : m.cons[static_cast<std::size_t>(row)].terms) {
          if (ct.var == t.var) continue;
          obj_x[static_cast<std::size_t>(ct.var)] += double(t.coef) * ct.coef;
        }
      } else {
        obj_x[static_cast<std::size_t>(t.var)] += t.coef;
      }
    }
  }

  std::vector<int> col_of(m.vars.size(), -1);
  std::vector<int> cols;
  double fixed_obj = 0.0;
  for (std::size_t i = 0; i < m.vars.size(); ++i) {
    const Variable& var = m.vars[i];
    if (var.is_delta()) continue;
    if (var.fixed()) {
      fixed_obj += obj_x[i] * static_cast<double>(var.lb);
      continue;
    }
    col_of[i] = static_cast<int>(cols.size());
    cols.push_back(static_cast<int>(i));
  }
  const int n = static_cast<int>(cols.size());

  struct DenseRow {
    std::vector<double> a;
    double b;
    Sense sense;
  };
  std::vector<DenseRow> rows;
  for (const auto& c : m.cons) {
    if (c.sense == Sense::EQ) continue;  // delta couplings
    DenseRow r{std::vector<double>(static_cast<std::size_t>(n), 0.0),
               static_cast<double>(c.rhs), c.sense};
    bool nonzero = false;
    for (const auto& t : c.terms) {
      const Variable& var = m.vars[static_cast<std::size_t>(t.var)];
      if (var.is_delta()) {
        throw std::invalid_argument("delta variable in a non-coupling row");
      }
      if (var.fixed()) {
        r.b -= static_cast<double>(t.coef) * static_cast<double>(var.lb);
      } else {
        r.a[static_cast<std::size_t>(col_of[static_cast<std::size_t>(t.var)])] +=
            t.coef;
        nonzero = true;
      }
    }
    if (nonzero || r.b < 0) rows.push_back(std::move(r));
  }
  for (int j = 0; j < n; ++j) {
    DenseRow r{std::vector<double>(static_cast<std::size_t>(n), 0.0), 1.0,
               Sense::LE};
    r.a[static_cast<std::size_t>(j)] = 1.0;
    rows.push_back(std::move(r));
  }

  const int mrows = static_cast<int>(rows.size());
  // Count artificials to size the tableau.
  int artificials = 0;
  for (auto& r : rows) {
    if (r.b < 0) {
      for (auto& x : r.a) x = -x;
      r.b = -r.b;
      r.sense = r.sense == Sense::LE ? Sense::GE : Sense::LE;
    }
    if (r.sense == Sense::GE) ++artificials;
  }
  std::size_t total_cols =
      static_cast<std::size_t>(n) + static_cast<std::size_t>(mrows) +
      static_cast<std::size_t>(artificials) + 1;
  if (static_cast<std::size_t>(mrows) * total_cols > max_tableau_entries) {
    throw std::invalid_argument(
        "LP relaxation too large for the built-in simplex; export the model");
  }

  std::vector<std::vector<double>> t(
      static_cast<std::size_t>(mrows),
      std::vector<double>(total_cols, 0.0));
  std::vector<int> basis(static_cast<std::size_t>(mrows), -1);
  int art_base = n + mrows;
  int art_used = 0;
  std::vector<int> art_cols;
  for (int i = 0; i < mrows; ++i) {
    auto& row = t[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j) {
      row[static_cast<std::size_t>(j)] = rows[static_cast<std::size_t>(i)].a
          [static_cast<std::size_t>(j)];
    }
    row[total_cols - 1] = rows[static_cast<std::size_t>(i)].b;
    if (rows[static_cast<std::size_t>(i)].sense == Sense::LE) {
      row[static_cast<std::size_t>(n + i)] = 1.0;
      basis[static_cast<std::size_t>(i)] = n + i;
    } else {
      row[static_cast<std::size_t>(n + i)] = -1.0;  // surplus
      int ac = art_base + art_used++;
      row[static_cast<std::size_t>(ac)] = 1.0;
      basis[static_cast<std::size_t>(i)] = ac;
      art_cols.push_back(ac);
    }
  }

  auto pivot = [&](int prow, int pcol) {
    auto& pr = t[static_cast<std::size_t>(prow)];
    double pv = pr[static_cast<std::size_t>(pcol)];
    for (auto& x : pr) x /= pv;
    for (int i = 0; i < mrows; ++i) {
      if (i == prow) continue;
      auto& r = t[static_cast<std::size_t>(i)];
      double f = r[static_cast<std::size_t>(pcol)];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < total_cols; ++j) {
        r[j] -= f * pr[j];
      }
    }
    basis[static_cast<std::size_t>(prow)] = pcol;
  };

  // Runs the simplex on the given objective (maximization), Bland's rule.
  auto optimize = [&](const std::vector<double>& cost, bool forbid_art) {
    const double eps = 1e-9;
    while (true) {
      // reduced costs: z_j - c_j with z from basis costs
      int pcol = -1;
      for (std::size_t j = 0; j + 1 < total_cols; ++j) {
        if (forbid_art && static_cast<int>(j) >= art_base) break;
        double z = 0.0;
        for (int i = 0; i < mrows; ++i) {
          z += cost[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])] *
               t[static_cast<std::size_t>(i)][j];
        }
        if (cost[j] - z > eps) {
          pcol = static_cast<int>(j);
          break;  // Bland: first improving column
        }
      }
      if (pcol < 0) return;
      int prow = -1;
      double best_ratio = 0.0;
      for (int i = 0; i < mrows; ++i) {
        double a = t[static_cast<std::size_t>(i)][static_cast<std::size_t>(pcol)];
        if (a > eps) {
          double ratio = t[static_cast<std::size_t>(i)][total_cols - 1] / a;
          if (prow < 0 || ratio < best_ratio - eps ||
              (ratio < best_ratio + eps &&
               basis[static_cast<std::size_t>(i)] <
                   basis[static_cast<std::size_t>(prow)])) {
            prow = i;
            best_ratio = ratio;
          }
        }
      }
      if (prow < 0) {
        throw std::runtime_error("LP relaxation is unbounded");
      }
      pivot(prow, pcol);
    }
  };

  LpResult out;
  if (art_used > 0) {
    std::vector<double> phase1(total_cols, 0.0);
    for (int ac : art_cols) phase1[static_cast<std::size_t>(ac)] = -1.0;
    optimize(phase1, false);
    double infeas = 0.0;
    for (int i = 0; i < mrows; ++i) {
      if (basis[static_cast<std::size_t>(i)] >= art_base) {
        infeas += t[static_cast<std::size_t>(i)][total_cols - 1];
      }
    }
    if (infeas > 1e-6) {
      out.feasible = false;
      return out;
    }
    // Drive leftover artificials out of the basis where possible.
    for (int i = 0; i < mrows; ++i) {
      if (basis[static_cast<std::size_t>(i)] < art_base) continue;
      for (int j = 0; j < art_base; ++j) {
        if (std::abs(t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) >
            1e-9) {
          pivot(i, j);
          break;
        }
      }
    }
  }
  std::vector<double> phase2(total_cols, 0.0);
  for (int j = 0; j < n; ++j) {
    phase2[static_cast<std::size_t>(j)] =
        obj_x[static_cast<std::size_t>(cols[static_cast<std::size_t>(j)])];
  }
  optimize(phase2, true);
  double value = 0.0;
  for (int i = 0; i < mrows; ++i) {
    value += phase2[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])] *
             t[static_cast<std::size_t>(i)][total_cols - 1];
  }
  out.feasible = true;
  out.value = value + fixed_obj + static_cast<double>(m.objective_offset);
  return out;
}

}  // namespace scode
