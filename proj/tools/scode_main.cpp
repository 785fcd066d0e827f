// Command-line front end: constructions, verification, bounds, models and
// solves for binary subspace codes. Exit codes: 0 success, 1 verification
// failure, 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "scode/bounds.hpp"
#include "scode/code.hpp"
#include "scode/construct.hpp"
#include "scode/divis.hpp"
#include "scode/gf2.hpp"
#include "scode/grassmann.hpp"
#include "scode/group.hpp"
#include "scode/ilp.hpp"

using nlohmann::json;
using namespace scode;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;

std::vector<int> parse_dims(const std::string& spec, int v) {
  std::vector<int> dims;
  if (spec.empty()) {
    for (int k = 0; k <= v; ++k) dims.push_back(k);
    return dims;
  }
  std::istringstream in(spec);
  std::string part;
  while (std::getline(in, part, ',')) {
    auto dash = part.find('-');
    if (dash != std::string::npos && dash > 0) {
      int lo = std::stoi(part.substr(0, dash));
      int hi = std::stoi(part.substr(dash + 1));
      for (int k = lo; k <= hi; ++k) dims.push_back(k);
    } else if (!part.empty()) {
      dims.push_back(std::stoi(part));
    }
  }
  return dims;
}

std::string dims_to_string(const std::vector<int>& dims) {
  std::string out;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(dims[i]);
  }
  return out;
}

void print_warnings(const ReadResult& r) {
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
}

json json_header() { return json{{"schema", 1}}; }

struct IlpFlags {
  int v = 0;
  int d = 0;
  std::string dims;
  std::string cuts;
  std::string group_file;
  std::string prescribe_file;
  std::string form = "base";
  std::int64_t cap_point = -1;
  std::int64_t cap_hyperplane = -1;
  std::string export_path;
  double time_limit = 600.0;
  bool do_solve = false;
  bool do_relax = false;
};

void add_ilp_flags(CLI::App* cmd, IlpFlags& f, bool solver_cmd) {
  cmd->add_option("--v", f.v, "ambient dimension");
  cmd->add_option("--d", f.d, "minimum subspace distance");
  cmd->add_option("--dims", f.dims, "dimension set, e.g. 0-6 or 2,3,4");
  cmd->add_option("--cuts", f.cuts, "comma list: ie_add, even");
  cmd->add_option("--group", f.group_file, "generator file for Kramer-Mesner");
  cmd->add_option("--prescribe", f.prescribe_file, "code file fixed to 1");
  cmd->add_option("--form", f.form, "base | lemma12 | lemma13");
  cmd->add_option("--cap-point", f.cap_point, "per-point cap (lemma12)");
  cmd->add_option("--cap-hyperplane", f.cap_hyperplane,
                  "per-hyperplane cap (lemma12)");
  cmd->add_option("--export", f.export_path, "write the model in LP format");
  if (solver_cmd) {
    cmd->add_option("--time-limit", f.time_limit, "seconds (default 600)");
    cmd->add_flag("--solve", f.do_solve, "run the exact solver");
    cmd->add_flag("--relax", f.do_relax, "solve the LP relaxation");
  }
}

IlpModel build_from_flags(const IlpFlags& f) {
  bool want_even = f.cuts.find("even") != std::string::npos;
  bool want_ie = f.cuts.find("ie_add") != std::string::npos;
  IlpModel m;
  if (f.form == "lemma12" || f.cap_point >= 0 || f.cap_hyperplane >= 0) {
    if (f.prescribe_file.empty()) {
      m = build_hyperplane_model_ambient8(
          SubspaceCode(7), f.cap_point < 0 ? 17 : f.cap_point,
          f.cap_hyperplane < 0 ? 17 : f.cap_hyperplane);
    } else {
      auto r = read_code_file(f.prescribe_file);
      print_warnings(r);
      m = build_hyperplane_model_ambient8(
          r.code, f.cap_point < 0 ? 17 : f.cap_point,
          f.cap_hyperplane < 0 ? 17 : f.cap_hyperplane);
    }
    return m;
  }
  if (f.form == "lemma13") {
    if (f.prescribe_file.empty()) {
      throw CLI::ValidationError("--form lemma13 requires --prescribe");
    }
    auto r = read_code_file(f.prescribe_file);
    print_warnings(r);
    return build_hyperplane_model_hyperplane7(r.code);
  }
  if (f.v < 1 || f.d < 1) {
    throw CLI::ValidationError("ilp: --v and --d are required");
  }
  auto dims = parse_dims(f.dims, f.v);
  if (f.d % 2 == 1) {
    m = build_base_model(f.v, f.d, dims);
  } else {
    m = build_base_model(f.v, f.d - 1, dims);
    add_even_d_cuts(m, f.d);  // even distances need the exclusion cuts
  }
  if (want_even && f.d % 2 == 1) {
    throw CLI::ValidationError("--cuts even requires an even distance");
  }
  if (want_ie) add_incidence_cuts(m);
  if (!f.group_file.empty()) {
    int gv = 0;
    auto gens = read_generators_file(f.group_file, gv);
    if (gv != f.v) throw CLI::ValidationError("group ambient mismatch");
    m = reduce_kramer_mesner(m, closure(gv, gens));
  }
  if (!f.prescribe_file.empty()) {
    auto r = read_code_file(f.prescribe_file);
    print_warnings(r);
    prescribe(m, r.code);
  }
  return m;
}

const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
  }
  return "?";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"binary subspace code toolkit"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output");

  int exit_code = kExitOk;
  std::ostringstream report;

  // ---- distance ----------------------------------------------------------
  auto* cmd_distance = app.add_subcommand("distance", "subspace distance");
  struct {
    int v = 0;
    std::string a, b;
  } dist_opts;
  cmd_distance->add_option("--v", dist_opts.v, "ambient dimension")->required();
  cmd_distance->add_option("--a", dist_opts.a, "rows joined by ';'")->required();
  cmd_distance->add_option("--b", dist_opts.b, "rows joined by ';'")->required();
  cmd_distance->callback([&] {
    Subspace a = Subspace::from_string(dist_opts.v, dist_opts.a);
    Subspace b = Subspace::from_string(dist_opts.v, dist_opts.b);
    int d = subspace_distance(a, b);
    if (as_json) {
      json j = json_header();
      j["distance"] = d;
      j["dim_a"] = a.dim();
      j["dim_b"] = b.dim();
      j["dim_meet"] = meet(a, b).dim();
      report << j.dump() << "\n";
    } else {
      report << "d_S = " << d << "  (dim a = " << a.dim()
             << ", dim b = " << b.dim() << ", dim meet = " << meet(a, b).dim()
             << ")\n";
    }
  });

  // ---- verify ------------------------------------------------------------
  auto* cmd_verify = app.add_subcommand("verify", "check distance and dims");
  struct {
    std::string in;
    int d = 1;
    std::string dims;
  } verify_opts;
  cmd_verify->add_option("--in", verify_opts.in)->required();
  cmd_verify->add_option("--d", verify_opts.d)->required();
  cmd_verify->add_option("--dims", verify_opts.dims);
  cmd_verify->callback([&] {
    auto r = read_code_file(verify_opts.in);
    print_warnings(r);
    auto dims = parse_dims(verify_opts.dims, r.code.ambient());
    auto rep = verify(r.code, verify_opts.d, dims);
    auto md = min_distance(r.code);
    if (as_json) {
      json j = json_header();
      j["M"] = r.code.size();
      j["v"] = r.code.ambient();
      j["min_distance"] = md.infinite ? json("inf") : json(md.value);
      j["pass"] = rep.ok();
      j["close_pairs"] = rep.close_pair_count;
      j["dim_violations"] = rep.dim_violations.size();
      report << j.dump() << "\n";
    } else {
      report << "M=" << r.code.size() << " min_distance=";
      if (md.infinite) {
        report << "inf";
      } else {
        report << md.value;
      }
      report << " pairs_below_d=" << rep.close_pair_count
             << " dim_violations=" << rep.dim_violations.size() << " -> "
             << (rep.ok() ? "PASS" : "FAIL") << "\n";
      for (const auto& [x, y] : rep.close_pairs) {
        report << "  close: " << x.to_string() << " | " << y.to_string()
               << " d=" << subspace_distance(x, y) << "\n";
      }
      for (const auto& w : rep.dim_violations) {
        report << "  bad dim " << w.dim() << ": " << w.to_string() << "\n";
      }
    }
    if (!rep.ok()) exit_code = kExitVerification;
  });

  // ---- fingerprint -------------------------------------------------------
  auto* cmd_fp = app.add_subcommand("fingerprint", "GL-invariant data");
  struct {
    std::string in, against;
    bool exact = false;
  } fp_opts;
  cmd_fp->add_option("--in", fp_opts.in)->required();
  cmd_fp->add_option("--against", fp_opts.against, "second code to compare");
  cmd_fp->add_flag("--exact", fp_opts.exact,
                   "brute-force isomorphism (v <= 4 only)");
  cmd_fp->callback([&] {
    auto r = read_code_file(fp_opts.in);
    print_warnings(r);
    Fingerprint fp = fingerprint(r.code);
    if (fp_opts.against.empty()) {
      if (as_json) {
        json j = json_header();
        j["fingerprint"] = fp.to_string();
        report << j.dump() << "\n";
      } else {
        report << fp.to_string() << "\n";
      }
      return;
    }
    auto other = read_code_file(fp_opts.against);
    print_warnings(other);
    bool fp_equal = fp == fingerprint(other.code);
    std::optional<bool> iso;
    if (fp_opts.exact) {
      iso = is_isomorphic_bruteforce(r.code, other.code);
    }
    if (as_json) {
      json j = json_header();
      j["fingerprint_equal"] = fp_equal;
      if (iso) j["isomorphic"] = *iso;
      report << j.dump() << "\n";
    } else {
      report << "fingerprints " << (fp_equal ? "EQUAL" : "DIFFER")
             << (fp_equal ? " (necessary, not sufficient for isomorphism)"
                          : " (codes are not isomorphic)")
             << "\n";
      if (iso) {
        report << "exhaustive GL(" << r.code.ambient() << ",2) search: "
               << (*iso ? "isomorphic" : "not isomorphic") << "\n";
      }
    }
    if (!fp_equal || (iso && !*iso)) exit_code = kExitVerification;
  });

  // ---- construct ---------------------------------------------------------
  auto* cmd_construct = app.add_subcommand("construct", "code constructions");
  cmd_construct->require_subcommand(1);

  auto* cmd_gab = cmd_construct->add_subcommand("gabidulin", "lifted Gabidulin");
  struct {
    int v = 0, k = 0, delta = 0;
    std::string out;
    unsigned modulus = 0;
  } gab_opts;
  cmd_gab->add_option("--v", gab_opts.v)->required();
  cmd_gab->add_option("--k", gab_opts.k)->required();
  cmd_gab->add_option("--delta", gab_opts.delta)->required();
  cmd_gab->add_option("--out", gab_opts.out, "code file to write");
  cmd_gab->add_option("--modulus", gab_opts.modulus,
                      "field polynomial as bitmask");
  cmd_gab->callback([&] {
    GabidulinSpec spec{gab_opts.v, gab_opts.k, gab_opts.delta, std::nullopt};
    if (gab_opts.modulus != 0) spec.modulus = gab_opts.modulus;
    SubspaceCode c = gabidulin(spec);
    MinDistance md = min_distance(c);
    if (!gab_opts.out.empty()) write_code_file(c, gab_opts.out);
    if (as_json) {
      json j = json_header();
      j["M"] = c.size();
      j["d"] = md.value;
      j["special"] = special_subspace(gab_opts.v, gab_opts.k).to_string();
      report << j.dump() << "\n";
    } else {
      report << "M=" << c.size() << " d=" << md.value << "\n";
    }
  });

  auto* cmd_spread = cmd_construct->add_subcommand("spread", "Segre spread");
  struct {
    int v = 0;
    std::string out;
  } spread_opts;
  cmd_spread->add_option("--v", spread_opts.v)->required();
  cmd_spread->add_option("--out", spread_opts.out);
  cmd_spread->callback([&] {
    SubspaceCode c = spread(spread_opts.v);
    if (!spread_opts.out.empty()) write_code_file(c, spread_opts.out);
    report << "M=" << c.size() << " d=" << min_distance(c).value << "\n";
  });

  auto* cmd_ef = cmd_construct->add_subcommand(
      "echelon-ferrers", "multi-pivot construction");
  struct {
    int v = 0, d = 0;
    std::vector<std::string> profiles;
    std::string out;
  } ef_opts;
  cmd_ef->add_option("--v", ef_opts.v)->required();
  cmd_ef->add_option("--d", ef_opts.d)->required();
  cmd_ef->add_option("--profile", ef_opts.profiles,
                     "PIVOTS:TARGET, e.g. 11110000:256 (repeatable)")
      ->required();
  cmd_ef->add_option("--out", ef_opts.out);
  cmd_ef->callback([&] {
    std::vector<PivotProfile> profiles;
    for (const auto& p : ef_opts.profiles) {
      auto colon = p.find(':');
      if (colon == std::string::npos) {
        throw CLI::ValidationError("--profile expects PIVOTS:TARGET");
      }
      PivotProfile prof;
      prof.v = ef_opts.v;
      prof.pivots = row_from_string(p.substr(0, colon), ef_opts.v);
      prof.target = std::stoull(p.substr(colon + 1));
      profiles.push_back(prof);
    }
    auto result = echelon_ferrers(profiles, ef_opts.d);
    if (!ef_opts.out.empty()) write_code_file(result.code, ef_opts.out);
    report << "M=" << result.code.size()
           << " d=" << min_distance(result.code).value << " per-profile:";
    for (auto a : result.achieved) report << " " << a;
    report << "\n";
    for (std::size_t i = 0; i < profiles.size(); ++i) {
      if (result.achieved[i] < profiles[i].target) {
        report << "profile " << i << " reached " << result.achieved[i]
               << " of target " << profiles[i].target << "\n";
        exit_code = kExitVerification;
      }
    }
  });

  auto* cmd_extend = cmd_construct->add_subcommand("extend", "greedy extension");
  struct {
    std::string in, out, dims;
    int d = 0;
  } ext_opts;
  cmd_extend->add_option("--in", ext_opts.in)->required();
  cmd_extend->add_option("--d", ext_opts.d)->required();
  cmd_extend->add_option("--dims", ext_opts.dims);
  cmd_extend->add_option("--out", ext_opts.out);
  cmd_extend->callback([&] {
    auto r = read_code_file(ext_opts.in);
    print_warnings(r);
    auto dims = parse_dims(ext_opts.dims, r.code.ambient());
    SubspaceCode c = extend_greedy(r.code, ext_opts.d, dims);
    if (!ext_opts.out.empty()) write_code_file(c, ext_opts.out);
    report << "M=" << c.size() << " (added " << c.size() - r.code.size()
           << ")\n";
  });

  // ---- bounds ------------------------------------------------------------
  auto* cmd_bounds = app.add_subcommand("bounds", "tables and closed forms");
  cmd_bounds->require_subcommand(1);

  auto* cmd_table = cmd_bounds->add_subcommand("table", "the v <= 8 ledger");
  bool table_csv = false;
  cmd_table->add_flag("--csv", table_csv);
  cmd_table->callback([&] {
    auto ledger = table_ledger();
    if (table_csv) {
      report << "q,v,d,lower,upper,exact,types\n";
      for (const auto& e : ledger) {
        report << e.q << "," << e.v << "," << e.d << "," << e.lower << ","
               << e.upper << "," << (e.exact ? 1 : 0) << ",";
        if (e.isomorphism_types) report << *e.isomorphism_types;
        report << "\n";
      }
    } else {
      report << "  v\\d";
      for (int d = 1; d <= 8; ++d) report << "          " << d;
      report << "\n";
      for (int v = 1; v <= 8; ++v) {
        std::ostringstream line;
        line << "   " << v << " ";
        for (int d = 1; d <= v; ++d) {
          auto e = table_lookup(v, d);
          std::ostringstream cell;
          if (e->exact) {
            cell << e->lower;
            if (e->isomorphism_types) cell << "(" << *e->isomorphism_types << ")";
          } else {
            cell << e->lower << "-" << e->upper;
          }
          std::string s = cell.str();
          line << std::string(s.size() >= 11 ? 1 : 11 - s.size(), ' ') << s;
        }
        report << line.str() << "\n";
      }
    }
  });

  auto* cmd_lookup = cmd_bounds->add_subcommand("lookup", "single cell");
  struct {
    int v = 0, d = 0;
    std::int64_t q = 2;
  } lk_opts;
  cmd_lookup->add_option("--v", lk_opts.v)->required();
  cmd_lookup->add_option("--d", lk_opts.d)->required();
  cmd_lookup->add_option("--q", lk_opts.q);
  cmd_lookup->callback([&] {
    json j = json_header();
    if (lk_opts.q == 2 && lk_opts.v <= 8) {
      if (auto e = table_lookup(lk_opts.v, lk_opts.d)) {
        j["table"] = {{"lower", e->lower.convert_to<std::uint64_t>()},
                      {"upper", e->upper.convert_to<std::uint64_t>()},
                      {"exact", e->exact}};
        if (e->isomorphism_types) j["table"]["types"] = *e->isomorphism_types;
      }
    }
    try {
      BoundEntry cf = a_closed_form(lk_opts.q, lk_opts.v, lk_opts.d);
      j["closed_form"] = {{"lower", cf.lower.str()},
                          {"upper", cf.upper.str()},
                          {"exact", cf.exact},
                          {"provenance", cf.provenance}};
    } catch (const std::exception& e) {
      j["closed_form"] = e.what();
    }
    if (as_json) {
      report << j.dump() << "\n";
    } else {
      report << "A_" << lk_opts.q << "(" << lk_opts.v << "," << lk_opts.d
             << "): " << j.dump(2) << "\n";
    }
  });

  // ---- group -------------------------------------------------------------
  auto* cmd_group = app.add_subcommand("group", "matrix groups over GF(2)");
  cmd_group->require_subcommand(1);
  struct {
    std::string in;
    int k = -1;
  } grp_opts;
  auto* cmd_closure = cmd_group->add_subcommand("closure", "group order");
  cmd_closure->add_option("--in", grp_opts.in)->required();
  cmd_closure->callback([&] {
    int v = 0;
    auto gens = read_generators_file(grp_opts.in, v);
    auto g = closure(v, gens);
    report << "order=" << g.order() << "\n";
  });
  auto* cmd_orbits = cmd_group->add_subcommand("orbits", "orbit decomposition");
  cmd_orbits->add_option("--in", grp_opts.in)->required();
  cmd_orbits->add_option("--k", grp_opts.k)->required();
  cmd_orbits->callback([&] {
    int v = 0;
    auto gens = read_generators_file(grp_opts.in, v);
    auto g = closure(v, gens);
    auto dec = orbits(g, grp_opts.k);
    std::map<std::size_t, std::size_t> by_size;
    for (const auto& orb : dec.orbits) ++by_size[orb.size()];
    report << "orbits=" << dec.orbits.size() << " sizes:";
    for (auto [size, count] : by_size) report << " " << size << "^" << count;
    report << "\n";
    for (const auto& orb : dec.orbits) {
      report << "  size " << orb.size() << " rep " << orb[0].to_string() << "\n";
    }
  });
  auto* cmd_fixed = cmd_group->add_subcommand("fixed", "fixed subspaces");
  cmd_fixed->add_option("--in", grp_opts.in)->required();
  cmd_fixed->add_option("--k", grp_opts.k)->required();
  cmd_fixed->callback([&] {
    int v = 0;
    auto gens = read_generators_file(grp_opts.in, v);
    auto g = closure(v, gens);
    auto fixed = fixed_subspaces(g, grp_opts.k);
    report << "fixed=" << fixed.size() << "\n";
    for (const auto& s : fixed) report << "  " << s.to_string() << "\n";
  });

  // ---- ilp ----------------------------------------------------------------
  auto* cmd_ilp = app.add_subcommand("ilp", "optimization models");
  cmd_ilp->require_subcommand(1);
  IlpFlags ilp_flags;

  auto* cmd_build = cmd_ilp->add_subcommand("build", "build + export a model");
  add_ilp_flags(cmd_build, ilp_flags, false);
  cmd_build->add_option("--time-limit", ilp_flags.time_limit)
      ->group("");  // accepted for interface parity
  cmd_build->callback([&] {
    IlpModel m = build_from_flags(ilp_flags);
    int binary = 0;
    for (const auto& var : m.vars) {
      if (var.binary) ++binary;
    }
    if (!ilp_flags.export_path.empty()) {
      export_lp_file(m, ilp_flags.export_path);
    }
    report << "variables=" << m.vars.size() << " binary=" << binary
           << " constraints=" << m.cons.size() << "\n";
  });

  auto* cmd_export = cmd_ilp->add_subcommand("export", "alias of build");
  add_ilp_flags(cmd_export, ilp_flags, false);
  cmd_export->callback([&] {
    if (ilp_flags.export_path.empty()) {
      throw CLI::ValidationError("ilp export requires --export <path>");
    }
    IlpModel m = build_from_flags(ilp_flags);
    export_lp_file(m, ilp_flags.export_path);
    report << "wrote " << ilp_flags.export_path << "\n";
  });

  auto* cmd_solve = cmd_ilp->add_subcommand("solve", "built-in exact solver");
  add_ilp_flags(cmd_solve, ilp_flags, true);
  std::string solution_out;
  cmd_solve->add_option("--out", solution_out, "write incumbent code file");
  cmd_solve->callback([&] {
    IlpModel m = build_from_flags(ilp_flags);
    if (!ilp_flags.export_path.empty()) {
      export_lp_file(m, ilp_flags.export_path);
    }
    if (ilp_flags.do_relax) {
      auto lp = solve_relaxation(m);
      report << "relaxation=" << (lp.feasible ? std::to_string(lp.value)
                                              : std::string("infeasible"))
             << "\n";
    }
    if (ilp_flags.do_solve || !ilp_flags.do_relax) {
      auto res = solve_exact(m, ilp_flags.time_limit);
      if (!solution_out.empty()) write_code_file(res.incumbent, solution_out);
      if (as_json) {
        json j = json_header();
        j["optimum"] = res.value;
        j["status"] = status_name(res.status);
        j["nodes"] = res.nodes;
        j["seconds"] = res.seconds;
        if (!res.note.empty()) j["note"] = res.note;
        report << j.dump() << "\n";
      } else {
        report << "optimum=" << res.value << " status="
               << status_name(res.status) << " nodes=" << res.nodes
               << " seconds=" << res.seconds;
        if (!res.note.empty()) report << " note=\"" << res.note << "\"";
        report << "\n";
      }
      if (res.status == SolveStatus::Infeasible) exit_code = kExitVerification;
    }
  });

  auto* cmd_clique = cmd_ilp->add_subcommand("clique", "max-clique route");
  struct {
    int v = 0, d = 0;
    std::string dims;
    double time_limit = 600.0;
  } cq_opts;
  cmd_clique->add_option("--v", cq_opts.v)->required();
  cmd_clique->add_option("--d", cq_opts.d)->required();
  cmd_clique->add_option("--dims", cq_opts.dims);
  cmd_clique->add_option("--time-limit", cq_opts.time_limit);
  cmd_clique->callback([&] {
    auto res = max_clique(cq_opts.v, cq_opts.d,
                          parse_dims(cq_opts.dims, cq_opts.v),
                          cq_opts.time_limit);
    report << "optimum=" << res.value << " status=" << status_name(res.status)
           << " nodes=" << res.nodes << "\n";
  });

  // ---- divis --------------------------------------------------------------
  auto* cmd_divis = app.add_subcommand("divis", "divisible multisets");
  cmd_divis->require_subcommand(1);
  struct {
    std::string in, out, special;
    int r = 0;
    std::uint64_t lambda = 0;
  } dv_opts;

  auto* cmd_check = cmd_divis->add_subcommand("check", "2^r-divisibility");
  cmd_check->add_option("--in", dv_opts.in)->required();
  cmd_check->add_option("--r", dv_opts.r)->required();
  cmd_check->callback([&] {
    auto p = read_multiset_file(dv_opts.in);
    bool ok = is_divisible(p, dv_opts.r);
    report << "cardinality=" << p.cardinality() << " divisible_2^" << dv_opts.r
           << "=" << (ok ? "yes" : "no") << "\n";
    if (!ok) exit_code = kExitVerification;
  });

  auto* cmd_compl = cmd_divis->add_subcommand("complement", "Lambda-complement");
  cmd_compl->add_option("--in", dv_opts.in)->required();
  cmd_compl->add_option("--lambda", dv_opts.lambda)->required();
  cmd_compl->add_option("--out", dv_opts.out);
  cmd_compl->callback([&] {
    auto p = read_multiset_file(dv_opts.in);
    auto c = complement(p, dv_opts.lambda);
    if (!dv_opts.out.empty()) {
      write_multiset_file(c, dv_opts.out);
    } else {
      write_multiset(c, report);
    }
    report << "# cardinality " << c.cardinality() << "\n";
  });

  auto* cmd_recog = cmd_divis->add_subcommand("recognize", "subspace from points");
  cmd_recog->add_option("--in", dv_opts.in)->required();
  cmd_recog->add_option("--r", dv_opts.r)->required();
  cmd_recog->callback([&] {
    auto p = read_multiset_file(dv_opts.in);
    auto s = recognize_subspace(p, dv_opts.r);
    if (s) {
      report << "subspace " << s->to_string() << " dim " << s->dim() << "\n";
    } else {
      report << "preconditions not met (cardinality or divisibility)\n";
      exit_code = kExitVerification;
    }
  });

  auto* cmd_lmrd = cmd_divis->add_subcommand("lmrd-extend",
                                             "complete 254/255 solids");
  cmd_lmrd->add_option("--in", dv_opts.in)->required();
  cmd_lmrd->add_option("--special", dv_opts.special,
                       "the special solid S (default 0|I)");
  cmd_lmrd->callback([&] {
    auto r = read_code_file(dv_opts.in);
    print_warnings(r);
    Subspace s = dv_opts.special.empty()
                     ? special_subspace(8, 4)
                     : Subspace::from_string(8, dv_opts.special);
    auto completions = lmrd_extend(r.code, s);
    report << "completions=" << completions.size() << "\n";
    for (const auto& u : completions) report << "  " << u.to_string() << "\n";
  });

  auto* cmd_thm = cmd_divis->add_subcommand(
      "theorem-check", "the eight extensions of the lifted Gabidulin code");
  cmd_thm->callback([&] {
    auto rep = verify_theorem_extensions();
    for (const auto& item : rep.items) {
      report << "dim=" << item.extension.dim()
             << " min_d=" << item.min_distance
             << " meet_S=" << item.dim_meet_s
             << (item.inside_s ? " inside-S" : "")
             << (item.contains_s ? " contains-S" : "") << "\n";
    }
    report << (rep.all_ok ? "PASS" : "FAIL") << "\n";
    if (!rep.all_ok) exit_code = kExitVerification;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
      return app.exit(e);
    }
    app.exit(e);
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  std::cout << report.str();
  return exit_code;
}
