// Command-line front end: twisted Tomei manifolds and the type-A Toda flow.
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tomei/cells.hpp"
#include "tomei/diagram.hpp"
#include "tomei/error.hpp"
#include "tomei/homology.hpp"
#include "tomei/signs.hpp"
#include "tomei/toda.hpp"
#include "tomei/weyl.hpp"

using json = nlohmann::ordered_json;
using namespace tomei;

namespace {

constexpr int kExitAuditFailure = 1;
constexpr int kExitInputError = 2;

void emit(const json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream f(out);
    if (!f) throw InputError("cannot open output file " + out);
    f << j.dump(2) << "\n";
  }
}

std::string word_str(const WeylGroup& W, int w) {
  const auto& word = W.reduced_word(w);
  if (word.empty()) return "e";
  std::string s;
  for (size_t i = 0; i < word.size(); ++i) {
    if (i) s += '.';
    s += 's';
    s += std::to_string(word[i] + 1);
  }
  return s;
}

std::string mask_str(unsigned m, int l) {
  std::string s;
  for (int i = 0; i < l; ++i)
    if (m & (1u << i)) s += std::to_string(i + 1);
  return s;
}

json marking_row(const Marking& m) {
  json row;
  row["marking"] = m.text();
  row["name"] = m.name();
  row["trivial"] = m.positively_marked();
  row["standard"] = m.is_standard();
  row["positively_marked"] = m.positively_marked();
  row["defines_action"] = verify_relations(m).ok;
  return row;
}

json homology_report(const CellComplex& cx) {
  TheoremReport rep = check_theorems(cx);
  json j;
  j["diagram"] = cx.marking().diagram().text();
  j["marking"] = cx.marking().text();
  j["marking_name"] = cx.marking().name();
  j["f_vector"] = rep.homology.f;
  j["betti_mod2"] = rep.homology.betti_mod2;
  json hz = json::array();
  for (size_t k = 0; k < rep.homology.free_rank.size(); ++k) {
    json entry;
    entry["free"] = rep.homology.free_rank[k];
    json tors = json::array();
    for (const auto& t : rep.homology.torsion[k]) tors.push_back(t.value);
    entry["torsion"] = tors;
    hz.push_back(entry);
  }
  j["homology_Z"] = hz;
  j["orientable"] = rep.orientable;
  j["index_counts"] = rep.index_counts;
  json checks;
  for (const auto& c : rep.checks) checks[c.name] = c.pass;
  j["theorem_checks"] = checks;
  return j;
}

int cmd_actions(const std::string& diagram, const std::string& out, int max_rank) {
  DynkinDiagram d = DynkinDiagram::parse(diagram, max_rank);
  auto markings = enumerate_markings(d);
  json j;
  j["diagram"] = d.text();
  j["count"] = markings.size();
  json rows = json::array();
  for (const auto& m : markings) rows.push_back(marking_row(m));
  j["markings"] = rows;
  emit(j, out);
  return 0;
}

int cmd_complex(const std::string& diagram, const std::string& marking, const std::string& out,
                int max_rank) {
  DynkinDiagram d = DynkinDiagram::parse(diagram, max_rank);
  WeylGroup W(d);
  CellComplex cx(W, Marking::parse(d, marking));
  json j;
  j["diagram"] = d.text();
  j["marking"] = cx.marking().text();
  j["f_vector"] = cx.f_vector();
  j["euler_characteristic"] = cx.euler_characteristic();
  json cells = json::array();
  for (int dim = 0; dim <= cx.top_dim(); ++dim) {
    for (const auto& c : cx.cells(dim)) {
      json cell;
      cell["dim"] = dim;
      cell["eps"] = c.eps.str();
      cell["A"] = mask_str(c.A, cx.top_dim());
      cell["S"] = mask_str(c.S, cx.top_dim());
      cell["w"] = word_str(W, c.w);
      cells.push_back(cell);
    }
  }
  j["cells"] = cells;
  json boundaries = json::array();
  for (int k = 1; k <= cx.top_dim(); ++k) {
    json b;
    b["k"] = k;
    json triples = json::array();
    const auto& m = cx.boundary(k);
    for (int c = 0; c < m.cols; ++c)
      for (const auto& [r, v] : m.col[c]) triples.push_back({r, c, v});
    b["triples"] = triples;
    boundaries.push_back(b);
  }
  j["boundaries"] = boundaries;
  emit(j, out);
  return 0;
}

int cmd_homology(const std::string& diagram, const std::string& marking, const std::string& out,
                 int max_rank) {
  DynkinDiagram d = DynkinDiagram::parse(diagram, max_rank);
  WeylGroup W(d);
  CellComplex cx(W, Marking::parse(d, marking));
  emit(homology_report(cx), out);
  return 0;
}

int run_check_one(const WeylGroup& W, const Marking& m, json& result) {
  result["marking"] = m.text();
  result["marking_name"] = m.name();
  if (auto rel = verify_relations(m); !rel.ok) {
    result["defines_action"] = false;
    result["failure"] = rel.failure;
    result["pass"] = false;
    return kExitAuditFailure;
  }
  result["defines_action"] = true;
  CellComplex cx(W, m);
  TheoremReport rep = check_theorems(cx);
  json checks;
  for (const auto& c : rep.checks) {
    checks[c.name] = c.pass;
    if (!c.pass) result["failure_detail_" + c.name] = c.detail;
  }
  result["checks"] = checks;
  result["pass"] = rep.all_pass();
  return rep.all_pass() ? 0 : kExitAuditFailure;
}

int cmd_check(const std::string& diagram, const std::string& marking, bool all_markings,
              const std::string& out, int max_rank) {
  DynkinDiagram d = DynkinDiagram::parse(diagram, max_rank);
  WeylGroup W(d);
  json j;
  j["diagram"] = d.text();
  json audits = json::array();
  int rc = 0;
  if (all_markings) {
    auto markings = enumerate_markings(d);
    // One worker per marking; they share the read-only Weyl group.
    std::vector<std::future<std::pair<int, json>>> futs;
    futs.reserve(markings.size());
    for (const auto& m : markings)
      futs.push_back(std::async(std::launch::async, [&W, m]() {
        json result;
        int code = run_check_one(W, m, result);
        return std::make_pair(code, result);
      }));
    for (auto& f : futs) {
      auto [code, result] = f.get();
      rc = std::max(rc, code);
      audits.push_back(result);
    }
  } else {
    json result;
    rc = run_check_one(W, Marking::parse(d, marking), result);
    audits.push_back(result);
  }
  j["audits"] = audits;
  j["pass"] = rc == 0;
  emit(j, out);
  return rc;
}

int cmd_unstable(const std::string& diagram, const std::string& marking, int which,
                 const std::string& out, int max_rank) {
  DynkinDiagram d = DynkinDiagram::parse(diagram, max_rank);
  WeylGroup W(d);
  CellComplex cx(W, Marking::parse(d, marking));
  json j;
  j["diagram"] = d.text();
  j["marking"] = cx.marking().text();
  json rows = json::array();
  auto levi = check_levi_closures(cx);
  bool all_ok = true;
  for (int w = 0; w < W.size(); ++w) {
    if (which >= 0 && w != which) continue;
    Chain generic = cx.boundary_of(cx.unstable_chain(w));
    bool even = chain_all_even(generic);
    bool closed = generic == cx.unstable_boundary_explicit(w);
    json row;
    row["w"] = word_str(W, w);
    row["index"] = __builtin_popcount(W.unstable_support(w));
    row["support"] = mask_str(W.unstable_support(w), W.rank());
    row["cycle"] = chain_is_zero(generic);
    row["boundary_even"] = even;
    row["matches_closed_form"] = closed;
    row["closure_betti_mod2"] = levi[w].closure_betti;
    row["levi_betti_mod2"] = levi[w].levi_betti;
    row["levi_match"] = levi[w].match;
    all_ok = all_ok && even && closed && levi[w].match;
    rows.push_back(row);
  }
  j["unstable"] = rows;
  emit(j, out);
  return all_ok ? 0 : kExitAuditFailure;
}

int cmd_flow(const std::string& lambda_csv, const std::string& signs_str, double T, double h,
             uint64_t seed, const std::string& out, double gap_min, double inside_tol,
             double step_tol) {
  std::vector<double> lam;
  std::stringstream ls(lambda_csv);
  std::string item;
  while (std::getline(ls, item, ',')) {
    try {
      lam.push_back(std::stod(item));
    } catch (...) {
      throw InputError("bad --lambda entry '" + item + "'");
    }
  }
  auto spec = toda::Spectrum::from_values(lam, gap_min);
  const int l = spec.size() - 1;
  std::vector<int> signs(l, 1);
  if (!signs_str.empty()) {
    if (static_cast<int>(signs_str.size()) != l)
      throw InputError("--signs needs exactly " + std::to_string(l) + " characters");
    for (int i = 0; i < l; ++i) {
      if (signs_str[i] == '+') signs[i] = 1;
      else if (signs_str[i] == '-') signs[i] = -1;
      else throw InputError("bad sign character in --signs");
    }
  }
  auto x0 = toda::jacobi_from_spectrum(spec, signs, seed);
  auto traj = toda::simulate(x0, T, h);
  auto audit = toda::convexity_audit(traj, spec, step_tol, inside_tol);

  std::ostringstream csv;
  csv << "t";
  for (int i = 0; i <= l; ++i) csv << ",a" << (i + 1);
  for (int i = 0; i < l; ++i) csv << ",b" << (i + 1);
  csv << ",f,drift\n";
  char buf[64];
  for (const auto& s : traj.samples) {
    auto put = [&](double v) {
      std::snprintf(buf, sizeof buf, ",%.17g", v);
      csv << buf;
    };
    std::snprintf(buf, sizeof buf, "%.17g", s.t);
    csv << buf;
    for (double v : s.x.a) put(v);
    for (double v : s.x.b) put(v);
    put(s.morse);
    put(s.drift);
    csv << "\n";
  }
  if (out.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream f(out + ".csv");
    if (!f) throw InputError("cannot open " + out + ".csv");
    f << csv.str();
  }
  json summary;
  summary["lambda"] = spec.lambda;
  summary["signs"] = signs;
  summary["seed"] = seed;
  summary["T"] = T;
  summary["h"] = h;
  summary["limit_permutation"] = audit.limit_permutation;
  summary["max_drift"] = audit.max_drift;
  summary["monotone"] = audit.monotone;
  summary["inside_polytope"] = audit.inside_all;
  if (!audit.violation.empty()) {
    summary["violation"] = audit.violation;
    summary["violation_time"] = audit.violation_time;
  }
  emit(summary, out.empty() ? "" : out + ".json");
  return (audit.monotone && audit.inside_all) ? 0 : kExitAuditFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Twisted Tomei manifolds: cell complexes, homology and the Toda flow"};
  app.set_help_flag("--help", "Print help");  // frees -h / --h for the step size
  app.require_subcommand(1);

  int max_rank = DynkinDiagram::kDefaultMaxRank;
  app.add_option("--max-rank", max_rank, "Diagram rank cap (default 6)");
  std::string format = "json";
  app.add_option("--format", format, "json (default); reports are JSON documents");

  std::string diagram, marking = "trivial", out;
  bool all_markings = false;

  auto* actions = app.add_subcommand("actions", "Classify the markings of a diagram");
  actions->add_option("diagram", diagram, "Dynkin diagram, e.g. A2, B3, rank=2; edges=1-2:2>")
      ->required();
  actions->add_option("--out", out, "Output file (stdout if omitted)");

  auto* complex_cmd = app.add_subcommand("complex", "Dump the cell complex of one marking");
  complex_cmd->add_option("diagram", diagram)->required();
  complex_cmd->add_option("--marking", marking, "trivial | standard | e1=-;e2=+- ...");
  complex_cmd->add_option("--out", out);

  auto* homology_cmd =
      app.add_subcommand("homology", "Homology and theorem report for one marking");
  homology_cmd->add_option("diagram", diagram)->required();
  homology_cmd->add_option("--marking", marking);
  homology_cmd->add_option("--out", out);

  auto* check =
      app.add_subcommand("check", "Run the theorem audit (exit 0 iff all clauses pass)");
  check->add_option("diagram", diagram)->required();
  check->add_option("--marking", marking);
  check->add_flag("--all-markings", all_markings, "Audit every marking of the diagram");
  check->add_option("--out", out);

  auto* unstable = app.add_subcommand("unstable", "Unstable-chain and Levi-closure report");
  unstable->add_option("diagram", diagram)->required();
  unstable->add_option("--marking", marking);
  int which = -1;
  unstable->add_option("--w", which, "Restrict to one Weyl element index (default: all)");
  unstable->add_option("--out", out);

  auto* flow = app.add_subcommand("flow", "Simulate the Toda flow for a given spectrum");
  std::string lambda_csv, signs_str;
  double T = 30.0, h = 0.05, gap_min = 1e-6, inside_tol = 1e-9, step_tol = 1e-9;
  uint64_t seed = 1;
  flow->add_option("--lambda", lambda_csv, "Comma-separated eigenvalues, e.g. 1,0,-1")
      ->required();
  flow->add_option("--signs", signs_str, "Off-diagonal sign pattern, e.g. ++ or +-");
  flow->add_option("--T", T, "Total time (default 30)");
  flow->add_option("--h", h, "Step size (default 0.05)");
  flow->add_option("--seed", seed, "Seed for the inverse-eigenvalue construction");
  flow->add_option("--gap-min", gap_min, "Eigenvalue gap guard (default 1e-6)");
  flow->add_option("--inside-tol", inside_tol, "Majorization tolerance (default 1e-9)");
  flow->add_option("--step-tol", step_tol, "Morse monotonicity tolerance (default 1e-9)");
  flow->add_option("--out", out, "Output prefix: writes PREFIX.csv and PREFIX.json");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*actions) return cmd_actions(diagram, out, max_rank);
    if (*complex_cmd) return cmd_complex(diagram, marking, out, max_rank);
    if (*homology_cmd) return cmd_homology(diagram, marking, out, max_rank);
    if (*check) return cmd_check(diagram, marking, all_markings, out, max_rank);
    if (*unstable) return cmd_unstable(diagram, marking, which, out, max_rank);
    if (*flow)
      return cmd_flow(lambda_csv, signs_str, T, h, seed, out, gap_min, inside_tol, step_tol);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAuditFailure;
  }
  return kExitInputError;
}
