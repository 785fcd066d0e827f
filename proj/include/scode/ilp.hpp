#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "scode/code.hpp"
#include "scode/gf2.hpp"
#include "scode/group.hpp"

namespace scode {

enum class Sense { LE, GE, EQ };

struct LinearTerm {
  int var = 0;
  std::int32_t coef = 0;
  friend bool operator==(const LinearTerm&, const LinearTerm&) = default;
};

struct Constraint {
  std::string name;
  std::vector<LinearTerm> terms;  // sorted by variable id
  Sense sense = Sense::LE;
  std::int64_t rhs = 0;
};

struct Variable {
  std::string name;
  bool binary = true;
  std::int64_t lb = 0;
  std::int64_t ub = 1;
  // x-variables carry the subspace (orbit representative) they stand for and
  // the full orbit; delta-variables carry the dimension they count.
  std::optional<Subspace> rep;
  std::vector<Subspace> expansion;
  std::uint64_t orbit_size = 1;
  int delta_k = -1;

  bool is_delta() const { return delta_k >= 0; }
  bool fixed() const { return lb == ub; }
};

struct ModelMeta {
  int v = 0;
  int d = 0;
  std::vector<int> dims;
  std::string form = "base";  // base | lemma12 | lemma13
  bool cuts_ie = false;
  bool cuts_even = false;
  bool reduced = false;
};

class IlpModel {
 public:
  std::vector<Variable> vars;
  std::vector<Constraint> cons;
  std::vector<LinearTerm> objective;
  std::int64_t objective_offset = 0;
  ModelMeta meta;

  int var_index(const std::string& name) const;
  int var_index_of(const Subspace& rep) const;
  void rebuild_index();
  void fix(int var, std::int64_t value);

 private:
  mutable std::unordered_map<Subspace, int, SubspaceHash> rep_index_;
};

// Ball-packing model of the odd-distance formulation: one binary variable per
// subspace (dimensions outside `dims` fixed to 0), one radius-(d-1)/2 ball
// constraint per subspace, and the delta coupling equalities. Objective is
// the sum of delta_k over k in `dims`.
IlpModel build_base_model(int v, int d, const std::vector<int>& dims);

// Incidence cuts of the non-redundant family; the default set is derived from
// the bounds ledger. Entries are (k, l, a) with a >= 2.
std::vector<std::tuple<int, int, std::int64_t>> default_incidence_cut_set(
    int v, int d);
void add_incidence_cuts(IlpModel& m);
void add_incidence_cuts(IlpModel& m,
                        const std::vector<std::tuple<int, int, std::int64_t>>& S);

// Even-distance exclusion cuts on top of the (d-1) base model; sets meta.d=d.
void add_even_d_cuts(IlpModel& m, int d);

// Kramer-Mesner reduction: one variable per orbit, duplicate constraints
// collapsed.
IlpModel reduce_kramer_mesner(const IlpModel& m, const MatrixGroup& g);

// Packing model over all solids of F_2^8 with per-point/per-hyperplane caps
// and prescribed codewords F (given in a 7-dim ambient, embedded into the
// hyperplane spanned by the last 7 coordinates).
IlpModel build_hyperplane_model_ambient8(const SubspaceCode& F,
                                         std::int64_t cap_point,
                                         std::int64_t cap_hyperplane);

// Hyperplane-trace model: F is a set of 16 or 17 solids of F_2^7; variables
// are the planes meeting every member of F in at most a point.
IlpModel build_hyperplane_model_hyperplane7(const SubspaceCode& F);

// Fixes the variables representing the given codewords to 1.
void prescribe(IlpModel& m, const SubspaceCode& c);

// Evaluates all constraints and bounds for the 0/1 assignment induced by the
// code (a variable is 1 iff its whole expansion lies in the code).
bool check_feasible(const IlpModel& m, const SubspaceCode& c);

void export_lp(const IlpModel& m, std::ostream& out);
void export_lp_file(const IlpModel& m, const std::string& path);
IlpModel parse_lp(std::istream& in);
IlpModel parse_lp_file(const std::string& path);
// Same variables, bounds, constraints in order, objective and metadata.
bool structurally_equal(const IlpModel& a, const IlpModel& b);

enum class SolveStatus { Optimal, Feasible, Infeasible };

struct SolveResult {
  SolveStatus status = SolveStatus::Feasible;
  std::int64_t value = 0;
  SubspaceCode incumbent;  // orbit-expanded
  std::uint64_t nodes = 0;
  double seconds = 0.0;
  std::string note;
};

// Exact branch-and-bound for packing-form models (binary x-variables,
// <=-constraints whose conflicts are pairwise, delta equalities, and at most
// an objective-shaped >= row). Deterministic: canonical variable order,
// include-branch first.
SolveResult solve_exact(const IlpModel& m, double time_limit_s = 600.0);

// Independent route: maximum clique in the compatibility graph built
// directly from pairwise subspace distances.
SolveResult max_clique(int v, int d, const std::vector<int>& dims,
                       double time_limit_s = 600.0);

struct LpResult {
  bool feasible = false;
  double value = 0.0;
};

// Dense two-phase simplex on the LP relaxation; intended for desk-scale
// models (guarded by tableau size), larger ones should be exported.
LpResult solve_relaxation(const IlpModel& m,
                          std::size_t max_tableau_entries = 16'000'000);

}  // namespace scode
