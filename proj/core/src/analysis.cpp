#include "sigmarot/analysis.hpp"

#include "json.hpp"

#include <atomic>
#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

namespace sigmarot {

namespace {

// ---------- exact periodic points on the line ----------

// Orbit of `start`, detecting an exact return to an earlier point modulo
// integer translation.  When the detected cycle has mean p/q the periodic
// point is returned with its exact period and displacement.
std::optional<PeriodicResult> orbit_certificate(const PAMap& m, const Point& start,
                                                unsigned iters, Int p, unsigned q) {
  const SigmaSpace& sp = m.space;
  const Rat& c = sp.attach_offset();
  std::map<std::pair<int, Rat>, std::pair<unsigned, Int>> seen;
  std::vector<Point> orbit;
  Point z = start;
  for (unsigned j = 0; j <= iters; ++j) {
    int kind;
    Rat rep;
    Int shift;
    if (z.kind == PointKind::Line) {
      kind = 0;
      shift = floor_int(z.x - c);
      rep = z.x - shift;
    } else {
      kind = 1;
      shift = z.copy;
      rep = z.x;
    }
    auto it = seen.find({kind, rep});
    if (it != seen.end()) {
      unsigned period = j - it->second.first;
      Int disp = shift - it->second.second;
      if (Int(q) * disp != p * Int(period)) return std::nullopt;
      PeriodicResult res;
      res.found = true;
      res.x = orbit[it->second.first];
      res.period = period;
      res.disp = disp;
      return res;
    }
    seen.emplace(std::make_pair(kind, rep), std::make_pair(j, shift));
    orbit.push_back(z);
    z = evaluate(m, z);
  }
  return std::nullopt;
}

// Piecewise-linear degree-one function on the line, nodes on [c, c+1].
struct LinePL {
  Rat c;
  std::vector<Rat> xs, vs;
};

Rat lp_eval(const LinePL& f, const Rat& t) {
  Int k = floor_int(t - f.c);
  Rat t0 = t - k;
  std::size_t lo = 0, hi = f.xs.size() - 1;
  while (lo + 1 < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (f.xs[mid] <= t0)
      lo = mid;
    else
      hi = mid;
  }
  const Rat &x0 = f.xs[lo], &x1 = f.xs[lo + 1];
  const Rat &v0 = f.vs[lo], &v1 = f.vs[lo + 1];
  Rat val = (x1 == x0) ? v0 : v0 + (t0 - x0) * (v1 - v0) / (x1 - x0);
  return val + k;
}

std::optional<LinePL> lp_compose(const LinePL& G, const LinePL& H, std::size_t budget) {
  std::set<Rat> cuts(H.xs.begin(), H.xs.end());
  for (std::size_t i = 0; i + 1 < H.xs.size(); ++i) {
    const Rat &x0 = H.xs[i], &v0 = H.vs[i], &x1 = H.xs[i + 1], &v1 = H.vs[i + 1];
    if (v0 == v1) continue;
    Rat vlo = rat_min(v0, v1), vhi = rat_max(v0, v1);
    for (std::size_t j = 0; j + 1 < G.xs.size(); ++j) {
      const Rat& b = G.xs[j];
      Int k = floor_int(vlo - b);
      if (b + k < vlo) ++k;
      for (; b + k <= vhi; ++k) {
        Rat t = x0 + (b + k - v0) * (x1 - x0) / (v1 - v0);
        cuts.insert(t);
        if (cuts.size() > budget) return std::nullopt;
      }
    }
  }
  LinePL R;
  R.c = H.c;
  for (const Rat& t : cuts) {
    if (!R.xs.empty() && R.xs.back() == t) continue;
    R.xs.push_back(t);
    R.vs.push_back(lp_eval(G, lp_eval(H, t)));
  }
  return R;
}

std::optional<PeriodicResult> line_periodic(const PAMap& m, Int p, unsigned q) {
  const SigmaSpace& sp = m.space;
  const Rat& c = sp.attach_offset();

  for (const Point& probe : {sp.line(c), sp.line(c + rat(1, 2))})
    if (auto pr = orbit_certificate(m, probe, 512, p, q)) return pr;

  bool line_into_line = true;
  for (const BreakPair& bp : m.line)
    if (bp.img.kind != PointKind::Line) line_into_line = false;
  if (!line_into_line) return std::nullopt;

  LinePL f;
  f.c = c;
  for (const BreakPair& bp : m.line) {
    f.xs.push_back(bp.x);
    f.vs.push_back(bp.img.x);
  }
  LinePL H = f;
  for (unsigned j = 2; j <= q; ++j) {
    auto next = lp_compose(f, H, 4096);
    if (!next) return std::nullopt;
    H = *next;
  }
  std::vector<Rat> roots;
  Rat pr = rat(long(p));
  for (std::size_t i = 0; i + 1 < H.xs.size(); ++i) {
    const Rat &x0 = H.xs[i], &v0 = H.vs[i], &x1 = H.xs[i + 1], &v1 = H.vs[i + 1];
    Rat dx = x1 - x0, dv = v1 - v0;
    if (dv == dx) {
      if (v0 - x0 == pr) roots.push_back(x0);
    } else {
      Rat x = x0 + (pr - v0 + x0) * dx / (dv - dx);
      if (x0 <= x && x <= x1) roots.push_back(x);
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  for (const Rat& x : roots) {
    Point z = sp.line(x);
    if (iterate(m, z, q) == sp.translate(z, p)) {
      PeriodicResult res;
      res.found = true;
      res.x = z;
      res.period = q;
      res.disp = p;
      return res;
    }
  }
  return std::nullopt;
}

std::string iv_str(const Rat& lo, const Rat& hi) {
  return "[" + rat_str(lo) + ", " + rat_str(hi) + "]";
}

std::string iv_pretty(const Rat& lo, const Rat& hi) {
  if (lo == hi) return "{" + rat_pretty(lo) + "}";
  return "[" + rat_pretty(lo) + ", " + rat_pretty(hi) + "]";
}

}  // namespace

Analysis analyze(const PAMap& m, const AnalysisOptions& opts) {
  require_valid(m);
  Analysis a;
  a.map = m;
  a.part = partition_XF(m, opts.reach_cap);
  a.mk = markov_partition(m, a.part);
  a.graph = build_markov_graph(m, a.mk.vertices);
  RotationOptions ro;
  ro.reach_cap = opts.reach_cap;
  ro.rot_r_iters = opts.rot_r_iters;
  a.rot = rotation_set(m, a.part, ro);
  if (opts.max_den > 0) {
    for (const RationalTag& t : rationals_in(a.rot, opts.max_den)) {
      Int num = Int(t.r.get_num().get_si());
      unsigned den = unsigned(t.r.get_den().get_ui());
      PeriodicResult pr = periodic_for(a, num, den, opts.walk_cap);
      RealizedRational rr;
      rr.r = t.r;
      rr.found = pr.found;
      rr.x = pr.x;
      rr.period = pr.period;
      rr.disp = pr.disp;
      rr.note = pr.note;
      a.realized.push_back(rr);
    }
  }
  return a;
}

PeriodicResult periodic_for(const Analysis& a, Int p, unsigned q, unsigned walk_cap) {
  if (q == 0) throw std::invalid_argument("denominator must be positive");
  {
    Int g = std::gcd(p < 0 ? -p : p, Int(q));
    if (g > 1) {
      p /= g;
      q = unsigned(Int(q) / g);
    }
  }
  Rat r = rat(long(p), long(q));
  const PAMap& m = a.map;

  PeriodicResult stage_res;
  bool tried_stage = false;
  if (a.graph && !a.rot.stages.empty()) {
    std::vector<Rat> th = stage_thresholds(m, a.part, *a.graph);
    for (std::size_t i = 1; i < a.rot.stages.size(); ++i) {
      const StageInterval& si = a.rot.stages[i];
      if (!si.nonempty || !(si.lo <= r && r <= si.hi)) continue;
      BranchSegment region{0, th[i - 1], Rat(1)};
      stage_res = find_periodic_mod1(m, p, q, region, a.part, walk_cap);
      tried_stage = true;
      if (stage_res.found) return stage_res;
      break;  // only the lowest matching stage is searched
    }
  }

  const StageInterval& s0 = a.rot.stages.at(0);
  if (s0.lo <= r && r <= s0.hi) {
    if (auto pr = line_periodic(m, p, q)) return *pr;
    if (tried_stage) return stage_res;
    PeriodicResult res;
    res.note = "no periodic point of mean " + rat_str(r) + " was certified on the line";
    return res;
  }
  if (tried_stage) return stage_res;

  for (const auto& comp : a.rot.components)
    if (comp.first <= r && r <= comp.second) {
      PeriodicResult res;
      res.note =
          "mean " + rat_str(r) + " lies in the reported hull but no witness was found";
      return res;
    }
  PeriodicResult res;
  res.note = "mean " + rat_str(r) + " is outside the computed rotation set";
  return res;
}

std::string machine_report(const Analysis& a) {
  std::ostringstream os;
  os << "[machine]\n";
  os << "attach = " << rat_str(a.map.space.attach_offset()) << "\n";
  os << "reach = " << rat_str(a.part.reach) << (a.part.reach_exact ? " exact" : " approx")
     << "\n";
  if (a.part.XF)
    os << "XF = " << iv_str(a.part.XF->lo, a.part.XF->hi) << "\n";
  else
    os << "XF = empty\n";
  os << "N = " << a.part.size() << "\n";
  for (std::size_t i = 0; i < a.part.size(); ++i)
    os << "X" << (i + 1) << " = " << iv_str(a.part.segments[i].lo, a.part.segments[i].hi)
       << " p = " << a.part.displacements[i] << "\n";
  os << "markov = " << (a.mk.markov ? "yes" : "no") << "\n";
  os << "vertices = " << (a.graph ? a.graph->vertices.size() : 0) << "\n";
  os << "edges = " << (a.graph ? a.graph->edges.size() : 0) << "\n";
  for (const StageInterval& si : a.rot.stages) {
    os << "I" << si.stage << " = ";
    if (si.nonempty)
      os << iv_str(si.lo, si.hi) << "\n";
    else
      os << "empty\n";
  }
  os << "Rot = ";
  for (std::size_t i = 0; i < a.rot.components.size(); ++i) {
    if (i) os << " u ";
    os << iv_str(a.rot.components[i].first, a.rot.components[i].second);
  }
  if (a.rot.components.empty()) os << "empty";
  os << "\n";
  os << "components = " << a.rot.components.size() << "\n";
  os << "exact = " << (a.rot.exact ? "yes" : "no") << "\n";
  for (const RealizedRational& rr : a.realized) {
    os << "realized " << rat_str(rr.r) << " = ";
    if (rr.found)
      os << a.map.space.point_str(rr.x) << " period " << rr.period << " disp " << rr.disp
         << "\n";
    else
      os << "none (" << rr.note << ")\n";
  }
  os << "[/machine]\n";
  return os.str();
}

std::string human_report(const Analysis& a) {
  const SigmaSpace& sp = a.map.space;
  std::ostringstream os;
  os << "wedge-tree map, attachment offset " << rat_pretty(sp.attach_offset()) << "\n";
  os << "reach of the invariant low region: " << rat_pretty(a.part.reach)
     << (a.part.reach_exact ? " (exact)" : " (approximate)") << "\n";
  if (a.part.XF)
    os << "remainder on the branch: " << iv_pretty(a.part.XF->lo, a.part.XF->hi) << "\n";
  else
    os << "remainder on the branch: empty (branch absorbed)\n";
  os << "blocks (N = " << a.part.size() << ")";
  os << (a.part.size() ? ":" : "") << "\n";
  for (std::size_t i = 0; i < a.part.size(); ++i)
    os << "  X" << (i + 1) << " = " << iv_pretty(a.part.segments[i].lo, a.part.segments[i].hi)
       << "  shift " << a.part.displacements[i] << "\n";
  if (a.mk.markov)
    os << "symbolic model: exact, " << (a.graph ? a.graph->vertices.size() : 0)
       << " vertices, " << (a.graph ? a.graph->edges.size() : 0) << " edges\n";
  else {
    os << "symbolic model: NOT exact\n";
    for (const std::string& v : a.mk.violations) os << "  " << v << "\n";
  }
  os << "stage intervals:\n";
  for (const StageInterval& si : a.rot.stages) {
    os << "  I" << si.stage << " = ";
    if (si.nonempty)
      os << iv_pretty(si.lo, si.hi) << (si.exact ? "" : " (approximate)") << "\n";
    else
      os << "empty\n";
  }
  os << "rotation set: ";
  for (std::size_t i = 0; i < a.rot.components.size(); ++i) {
    if (i) os << " u ";
    os << iv_pretty(a.rot.components[i].first, a.rot.components[i].second);
  }
  os << (a.rot.exact ? "  (exact)" : "  (approximate)") << "\n";
  for (const std::string& n : a.rot.notes) os << "note: " << n << "\n";
  if (!a.realized.empty()) {
    os << "realized rationals:\n";
    for (const RealizedRational& rr : a.realized) {
      os << "  " << rat_pretty(rr.r) << " -> ";
      if (rr.found)
        os << sp.point_str(rr.x) << "  period " << rr.period << "  shift " << rr.disp
           << "\n";
      else
        os << "none (" << rr.note << ")\n";
    }
  }
  return os.str();
}

std::string json_report(const Analysis& a) {
  using json = nlohmann::ordered_json;
  const SigmaSpace& sp = a.map.space;
  json j;
  j["attach"] = rat_str(sp.attach_offset());
  j["reach"] = {{"value", rat_str(a.part.reach)}, {"exact", a.part.reach_exact}};
  if (a.part.XF)
    j["xf"] = {{"lo", rat_str(a.part.XF->lo)}, {"hi", rat_str(a.part.XF->hi)}};
  else
    j["xf"] = nullptr;
  j["blocks"] = json::array();
  for (std::size_t i = 0; i < a.part.size(); ++i)
    j["blocks"].push_back({{"lo", rat_str(a.part.segments[i].lo)},
                           {"hi", rat_str(a.part.segments[i].hi)},
                           {"shift", a.part.displacements[i]}});
  j["markov"] = a.mk.markov;
  j["violations"] = a.mk.violations;
  j["vertices"] = json::array();
  j["edges"] = json::array();
  if (a.graph) {
    for (const MarkovVertex& v : a.graph->vertices)
      j["vertices"].push_back({{"lo", rat_str(v.seg.lo)},
                               {"hi", rat_str(v.seg.hi)},
                               {"block", v.block}});
    for (const MarkovEdge& e : a.graph->edges)
      j["edges"].push_back({e.from, e.to, e.w});
  }
  j["stages"] = json::array();
  for (const StageInterval& si : a.rot.stages) {
    json s;
    s["stage"] = si.stage;
    s["nonempty"] = si.nonempty;
    if (si.nonempty) {
      s["lo"] = rat_str(si.lo);
      s["hi"] = rat_str(si.hi);
    } else {
      s["lo"] = nullptr;
      s["hi"] = nullptr;
    }
    s["exact"] = si.exact;
    j["stages"].push_back(s);
  }
  j["components"] = json::array();
  for (const auto& comp : a.rot.components)
    j["components"].push_back({rat_str(comp.first), rat_str(comp.second)});
  j["exact"] = a.rot.exact;
  j["notes"] = a.rot.notes;
  j["realized"] = json::array();
  for (const RealizedRational& rr : a.realized) {
    json e;
    e["r"] = rat_str(rr.r);
    e["found"] = rr.found;
    if (rr.found) {
      e["x"] = sp.point_str(rr.x);
      e["period"] = rr.period;
      e["disp"] = rr.disp;
    } else {
      e["note"] = rr.note;
    }
    j["realized"].push_back(e);
  }
  return j.dump(2) + "\n";
}

std::vector<SweepRow> sweep(const PAMap& m, unsigned samples, unsigned iters) {
  std::vector<SweepRow> rows(samples);
  if (samples == 0) return rows;
  Partition part = partition_XF(m);
  const SigmaSpace& sp = m.space;
  const Rat c = sp.attach_offset();
  const Rat blo = part.XF ? part.reach : Rat(0);

  auto point_for = [&](unsigned i) {
    Rat t = rat(long(i), long(samples));
    if (i % 2 == 0) return sp.line(c + t);
    return sp.branch(0, blo + (Rat(1) - blo) * t);
  };

  unsigned nt = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                samples));
  std::atomic<unsigned> next{0};
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (unsigned t = 0; t < nt; ++t)
    pool.emplace_back([&] {
      for (unsigned i = next.fetch_add(1); i < samples; i = next.fetch_add(1)) {
        Point s = point_for(i);
        rows[i] = SweepRow{s, rho_bounds(m, s, iters)};
      }
    });
  for (std::thread& th : pool) th.join();
  return rows;
}

}  // namespace sigmarot
