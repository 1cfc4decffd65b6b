// Command line frontend: analysis pipeline, orbit bounds, periodic point
// search, transition-graph export, sample sweeps, and the cycle-mean oracle.
//
// Exit codes: 0 exact success, 2 when any result is approximate, 1 on error.

#include "CLI11.hpp"

#include "sigmarot/analysis.hpp"
#include "sigmarot/map_file.hpp"

#include <fstream>
#include <iostream>

using namespace sigmarot;

namespace {

int cmd_analyze(const std::string& path, bool json, unsigned max_den, unsigned iters,
                unsigned reach_cap) {
  PAMap m = load_map(path);
  AnalysisOptions opts;
  opts.max_den = max_den;
  opts.rot_r_iters = iters;
  opts.reach_cap = reach_cap;
  Analysis a = analyze(m, opts);
  if (json)
    std::cout << json_report(a);
  else
    std::cout << human_report(a) << machine_report(a);
  return a.rot.exact ? 0 : 2;
}

int cmd_rho(const std::string& path, const std::string& point, unsigned iters) {
  PAMap m = load_map(path);
  auto pt = m.space.parse_point(point);
  if (!pt) {
    std::cerr << "error: malformed point '" << point
              << "' (want 'L <rational>' or 'B <integer> <rational>')\n";
    return 1;
  }
  RhoBounds rb = rho_bounds(m, *pt, iters);
  std::cout << "rho = [" << rat_str(rb.lower) << ", " << rat_str(rb.upper) << "] "
            << (rb.exact ? "exact" : "approx") << "\n";
  return rb.exact ? 0 : 2;
}

int cmd_periodic(const std::string& path, const std::string& mean, unsigned walk_cap) {
  PAMap m = load_map(path);
  auto r = parse_rat(mean);
  if (!r) {
    std::cerr << "error: malformed rational '" << mean << "'\n";
    return 1;
  }
  Int p = Int(r->get_num().get_si());
  unsigned q = unsigned(r->get_den().get_ui());
  Analysis a = analyze(m);
  PeriodicResult pr = periodic_for(a, p, q, walk_cap);
  if (!pr.found) {
    std::cout << "not found: " << pr.note << "\n";
    return 1;
  }
  bool ok = iterate(m, pr.x, pr.period) == m.space.translate(pr.x, pr.disp);
  std::cout << "x = " << m.space.point_str(pr.x) << "\n";
  std::cout << "period = " << pr.period << "\n";
  std::cout << "disp = " << pr.disp << "\n";
  std::cout << "verified = " << (ok ? "yes" : "no") << "\n";
  return ok ? 0 : 1;
}

int cmd_graph(const std::string& path, const std::string& dot_path) {
  PAMap m = load_map(path);
  Partition part = partition_XF(m);
  MarkovResult mk = markov_partition(m, part);
  MarkovGraph g = build_markov_graph(m, mk.vertices);
  std::string dot = graph_dot(g);
  if (dot_path.empty() || dot_path == "-") {
    std::cout << dot;
  } else {
    std::ofstream f(dot_path);
    if (!f) {
      std::cerr << "error: cannot write " << dot_path << "\n";
      return 1;
    }
    f << dot;
  }
  if (!mk.markov) {
    for (const std::string& v : mk.violations)
      std::cerr << "not exact: " << v << "\n";
    return 2;
  }
  return 0;
}

int cmd_sweep(const std::string& path, unsigned samples, unsigned iters,
              const std::string& csv_path) {
  PAMap m = load_map(path);
  std::vector<SweepRow> rows = sweep(m, samples, iters);
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!csv_path.empty() && csv_path != "-") {
    file.open(csv_path);
    if (!file) {
      std::cerr << "error: cannot write " << csv_path << "\n";
      return 1;
    }
    out = &file;
  }
  (*out) << "point,lower,upper\n";
  bool all_exact = true;
  for (const SweepRow& row : rows) {
    (*out) << m.space.point_str(row.start) << "," << rat_str(row.rho.lower) << ","
           << rat_str(row.rho.upper) << "\n";
    all_exact = all_exact && row.rho.exact;
  }
  return all_exact ? 0 : 2;
}

int cmd_oracle(const std::string& path, unsigned max_len) {
  PAMap m = load_map(path);
  Partition part = partition_XF(m);
  MarkovResult mk = markov_partition(m, part);
  MarkovGraph g = build_markov_graph(m, mk.vertices);
  if (max_len == 0) max_len = std::max<unsigned>(1, unsigned(g.vertices.size()));
  std::vector<Rat> means = oracle_cycle_enumeration(g, max_len);
  for (const Rat& r : means) std::cout << rat_str(r) << "\n";
  CycleMeanResult cm = cycle_mean_range(g);
  bool pass;
  if (cm.per_component.empty())
    pass = means.empty();
  else
    pass = !means.empty() && means.front() == cm.intervals.front().first &&
           means.back() == cm.intervals.back().second;
  std::cout << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "rotation sets, transition graphs, and periodic (mod 1) points for "
      "piecewise-affine degree-one maps on the wedge covering tree"};
  app.require_subcommand(1);

  std::string map_path, point, mean, dot_path, csv_path;
  bool json = false;
  unsigned max_den = 4, iters_analyze = 2048, reach_cap = 64;
  unsigned iters_rho = 10000, walk_cap = 1000;
  unsigned samples = 100, iters_sweep = 1000, max_len = 0;

  CLI::App* an = app.add_subcommand("analyze", "full pipeline report");
  an->add_option("map", map_path, "map file")->required();
  an->add_flag("--json", json, "emit the JSON report only");
  an->add_option("--max-den", max_den, "realize every mean of denominator <= D");
  an->add_option("--iters", iters_analyze, "orbit iterations for the line bounds");
  an->add_option("--reach-cap", reach_cap, "cap on reach-iteration rounds");

  CLI::App* rh = app.add_subcommand("rho", "mean displacement bounds of one orbit");
  rh->add_option("map", map_path, "map file")->required();
  rh->add_option("point", point, "start point, e.g. 'L 1/2' or 'B 0 3/4'")->required();
  rh->add_option("--iters", iters_rho, "orbit iterations");

  CLI::App* pe = app.add_subcommand("periodic", "periodic (mod 1) point of mean p/q");
  pe->add_option("map", map_path, "map file")->required();
  pe->add_option("mean", mean, "target mean, e.g. '1/2'")->required();
  pe->add_option("--iters", walk_cap, "walk search cap");

  CLI::App* gr = app.add_subcommand("graph", "transition graph as DOT");
  gr->add_option("map", map_path, "map file")->required();
  gr->add_option("--dot", dot_path, "output path ('-' for stdout)");

  CLI::App* sw = app.add_subcommand("sweep", "CSV of orbit bounds over a sample grid");
  sw->add_option("map", map_path, "map file")->required();
  sw->add_option("--samples", samples, "number of sample points");
  sw->add_option("--iters", iters_sweep, "orbit iterations per sample");
  sw->add_option("--csv", csv_path, "output path ('-' for stdout)");

  CLI::App* orc = app.add_subcommand("oracle", "closed-walk means vs cycle-mean range");
  orc->add_option("map", map_path, "map file")->required();
  orc->add_option("--max-cycle-len", max_len, "walk length cap (default: vertex count)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (an->parsed()) return cmd_analyze(map_path, json, max_den, iters_analyze, reach_cap);
    if (rh->parsed()) return cmd_rho(map_path, point, iters_rho);
    if (pe->parsed()) return cmd_periodic(map_path, mean, walk_cap);
    if (gr->parsed()) return cmd_graph(map_path, dot_path);
    if (sw->parsed()) return cmd_sweep(map_path, samples, iters_sweep, csv_path);
    if (orc->parsed()) return cmd_oracle(map_path, max_len);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
