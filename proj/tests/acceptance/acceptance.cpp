// Acceptance checks 1-8. One PASS/FAIL line per criterion; the exit status is
// nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "corpus.hpp"
#include "diias/diias.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace diias;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("failed: " + what);
    }
  }
  void info(const std::string& what) { notes.push_back(what); }
};

struct Paths {
  std::string cli;
  fs::path fixtures, golden, work;
  bool update_golden = false;
};

constexpr int kCorpusSize = 1000;
constexpr std::uint64_t kCorpusSeed = 20240611;

const std::vector<testing::CorpusCase>& shared_corpus() {
  static const std::vector<testing::CorpusCase> c = testing::corpus(kCorpusSeed, kCorpusSize);
  return c;
}

Polyline2 ruled_alpha() { return Polyline2(-1, {{-1, 3}, {0, 2}, {1, 5}}); }
Polyline2 ruled_beta() { return Polyline2(-1, {{-1, 0}, {0, 0}, {1, 0}}); }

Polyline2 parabola_alpha(int lo, int hi) {
  std::vector<Vec2> p;
  for (int u = lo; u <= hi; ++u) p.push_back({double(u), 5.0 - (u - 2.0) * (u - 2.0) / 8.0});
  return Polyline2(lo, p);
}
Polyline2 parabola_beta(int lo, int hi) {
  std::vector<Vec2> p;
  for (int v = lo; v <= hi; ++v) p.push_back({double(v) * v - 2.0, double(v)});
  return Polyline2(lo, p);
}

std::string list(const std::vector<GridAddress>& v) {
  std::string s;
  for (const GridAddress& a : v) s += (s.empty() ? "" : " ") + to_string(a);
  return "{" + s + "}";
}

// Closed forms of the ruled example's patches in the global parameters (u, v).
Vec3 ruled_closed_form(int face_u, double u, double v) {
  if (face_u < 0) return 0.5 * Vec3{u + v, 2 - u, -u - v + 0.5 * u * v};
  return 0.5 * Vec3{u + v, 2 + 3 * u, -u - v - 1.5 * u * v};
}

Outcome ruled_example() {
  Outcome o;
  const Polyline2 a = ruled_alpha(), b = ruled_beta();
  const QuadNet net = build_diias(a, b);

  const std::vector<EdgeRef> s = singular_edges(net.omega);
  o.check(s == std::vector<EdgeRef>{EdgeRef::v_edge(0, -1), EdgeRef::v_edge(0, 0)}, "singular edges are the v-edges (0, -1/2), (0, 1/2)");
  for (const EdgeRef& e : s) o.check(e.label == Axis::V, "label of " + to_string(e));

  const auto comps = dmptl(a, b, s);
  o.check(comps.size() == 1, "one DMPTL component");
  if (comps.size() == 1) {
    const std::vector<Vec2> want{{-0.5, 1}, {0, 1}, {0.5, 1}};
    o.check(comps[0].points == want, "DMPTL runs (-1/2, 1), (0, 1), (1/2, 1)");
  }

  const double w[4] = {0.25, 0.25, -0.75, -0.75};
  const GridAddress faces[4] = {GridAddress::face(-1, -1), GridAddress::face(-1, 0), GridAddress::face(0, -1),
                                GridAddress::face(0, 0)};
  for (int i = 0; i < 4; ++i) o.check(net.omega.at(faces[i]) == w[i], "Omega at " + to_string(faces[i]));

  double worst = 0;
  for (const GridAddress& f : faces) {
    const BilinearPatch p = patch_of(net, f);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) {
        const double sp = i / 4.0, tp = j / 4.0;
        worst = std::max(worst, norm(p.eval(sp, tp) - ruled_closed_form(f.u(), f.u() + sp, f.v() + tp)));
      }
  }
  o.check(worst <= 1e-12, fmt::format("patch closed forms, worst {:.2e}", worst));

  double ext = 0;
  for (int u : {-1, 0}) {
    const BilinearPatch lo = patch_of(net, GridAddress::face(u, -1)), hi = patch_of(net, GridAddress::face(u, 0));
    for (int i = 0; i <= 4; ++i) ext = std::max(ext, norm(lo.eval(i / 4.0, 1) - hi.eval(i / 4.0, 0)));
    ext = std::max(ext, norm(lo.twist() - hi.twist()));
    // hi continues lo's bilinear formula
    for (int i = 0; i <= 4; ++i)
      for (int j = 0; j <= 4; ++j) ext = std::max(ext, norm(lo.eval_unchecked(i / 4.0, 1 + j / 4.0) - hi.eval(i / 4.0, j / 4.0)));
  }
  o.check(ext <= 1e-12, fmt::format("column patches extend each other, worst {:.2e}", ext));
  o.info(fmt::format("patch residual {:.1e}, extension residual {:.1e}", worst, ext));
  return o;
}

Outcome parabola_pair() {
  Outcome o;
  auto run = [](int ulo, int uhi) {
    const Polyline2 a = parabola_alpha(ulo, uhi), b = parabola_beta(-4, 4);
    const QuadNet net = build_diias(a, b);
    return analyze_singularities(a, b, net);
  };
  const SingularityReport r = run(-2, 7);
  const std::size_t comps = r.dmptl_components.size();
  o.check(comps == 2, fmt::format("2 DMPTL components (got {})", comps));
  o.check(r.swallowtails.size() == 1, fmt::format("1 swallowtail vertex (got {}: {})", r.swallowtails.size(), list(r.swallowtails)));
  o.check(r.dmptl_cusps && r.swallowtails == *r.dmptl_cusps, "swallowtails equal the DMPTL cusps");
  if (r.dmptl_cusps) o.info(fmt::format("I = [-2..7]: cusps {}", list(*r.dmptl_cusps)));
  const SingularityReport w = run(-2, 6);
  o.info(fmt::format("I = [-2..6]: {} components, swallowtails {}", w.dmptl_components.size(), list(w.swallowtails)));
  return o;
}

Outcome cayley() {
  Outcome o;
  std::mt19937_64 rng(7);
  for (double a : {1.0, -1.0, 2.0, -2.0, 0.5}) {
    const QuadNet c = cayley_net(a, GridRange::vertices(-3, 3, -3, 3));
    const QuadNet n = net_from_points(c.q);
    double res = 0;
    for (double w : n.omega.values()) res = std::max(res, std::abs(w - 1));
    for (const Vec3& x : partial(partial(c.q, Axis::V), Axis::V).values()) res = std::max(res, norm(x));
    for (const Vec3& x : mixed12(c.q).values()) res = std::max(res, norm(x - Vec3{0, 0, 1}));
    for (double x : n.A.values) res = std::max(res, std::abs(x - a));
    for (double x : n.B.values) res = std::max(res, std::abs(x));
    o.check(res <= 1e-12, fmt::format("a = {}: structure residual {:.2e}", a, res));

    double worst = 0;
    for (int k = 0; k < 100; ++k) {
      const QuadNet image = net_from_points(testing::apply(testing::random_unimodular(rng), c.q));
      const auto m = cayley_congruent(image);
      if (!m) {
        o.check(false, fmt::format("a = {}: map {} not recognised", a, k));
        break;
      }
      worst = std::max(worst, std::abs(m->a - a));
    }
    o.check(worst <= 1e-9, fmt::format("a = {}: recovered within {:.2e}", a, worst));
  }
  return o;
}

Outcome identities() {
  Outcome o;
  double z12 = 0, q12 = 0, indep = 0, compat = 0, structural = 0, printed = 0, trip = 0;
  for (const testing::CorpusCase& c : shared_corpus()) {
    const CentreChordData cc = centre_chord_data(c.alpha, c.beta, c.z_base);
    const auto m12 = mixed12(cc.z), m21 = mixed21(cc.z);
    const auto qm = mixed12(c.net.q);
    for (const GridAddress& f : c.net.omega.domain().addresses()) {
      const double w = c.net.omega.at(f);
      z12 = std::max({z12, std::abs(m12.at(f) - w), std::abs(m21.at(f) - w)});
      q12 = std::max(q12, norm(qm.at(f) - w * c.net.xi));
    }
    if (c.net.domain().count_u() >= 3 && c.net.domain().count_v() >= 3) {
      const ValidationReport r = verify_diias(c.net.q);
      o.check(r.is_diias, "corpus net verifies: " + r.failure);
      indep = std::max(indep, r.max_independence_residual);
      compat = std::max(compat, r.max_compatibility_residual);
      structural = std::max(structural, r.max_structural_residual);
      printed = std::max(printed, r.max_structural_residual_fixed_index);
    }
    const Decomposition d = decompose(c.net);
    const QuadNet back = build_diias(d.alpha, d.beta, d.z_base);
    for (const GridAddress& v : back.domain().addresses()) trip = std::max(trip, norm(back.q.at(v) - c.net.q.at(v)));
  }
  o.check(z12 < 1e-9, fmt::format("z_12 = z_21 = Omega, worst {:.2e}", z12));
  o.check(q12 < 1e-9, fmt::format("q_12 = Omega xi, worst {:.2e}", q12));
  o.check(indep < 1e-9, fmt::format("independence, worst {:.2e}", indep));
  o.check(compat < 1e-9, fmt::format("compatibility, worst {:.2e}", compat));
  o.check(structural < 1e-9, fmt::format("structure equations, worst {:.2e}", structural));
  o.check(trip < 1e-9, fmt::format("decompose/build round trip, worst {:.2e}", trip));
  o.info(fmt::format("{} pairs; worst residuals z {:.1e}, q12 {:.1e}, independence {:.1e}, compatibility {:.1e}, "
                     "structure {:.1e}, round trip {:.1e}; q22 variant with one-sided Omega index {:.2f}",
                     shared_corpus().size(), z12, q12, indep, compat, structural, trip, printed));
  return o;
}

Outcome combinatorics() {
  Outcome o;
  int violations = 0, with_singular = 0, swallow = 0, steps = 0;
  auto fail = [&](const std::string& what) {
    if (++violations <= 5) o.notes.push_back("violation: " + what);
  };
  for (std::size_t k = 0; k < shared_corpus().size(); ++k) {
    const testing::CorpusCase& c = shared_corpus()[k];
    const std::string tag = fmt::format("pair {}", k);
    try {
      const std::vector<EdgeRef> s = singular_edges(c.net.omega);
      if (s != singular_edges_by_parallelism(c.alpha, c.beta)) fail(tag + ": sign test and half-plane test differ");
      with_singular += !s.empty();

      const SingularityReport r = analyze_singularities(c.alpha, c.beta, c.net);
      if (!r.anomalies.empty()) fail(tag + ": " + r.anomalies.front());
      std::set<GridAddress> interior;
      for (const GridAddress& v : c.net.domain().addresses())
        if (v.u() > c.net.domain().min_corner().u() && v.u() < c.net.domain().max_corner().u() &&
            v.v() > c.net.domain().min_corner().v() && v.v() < c.net.domain().max_corner().v())
          interior.insert(v);
      std::set<GridAddress> configured;
      for (const auto& [v, cfg] : r.config) configured.insert(v);
      if (configured != interior) fail(tag + ": star configurations do not cover the interior exactly once");

      std::size_t covered = 0;
      for (const DmptlComponent& comp : r.dmptl_components) {
        const std::set<GridAddress> distinct(comp.vertices.begin(), comp.vertices.end());
        if (distinct.size() != comp.vertices.size()) fail(tag + ": DMPTL component revisits a vertex");
        for (std::size_t i = 0; i < comp.edges.size(); ++i) {
          const GridAddress p = comp.vertices[i], q = comp.vertices[(i + 1) % comp.vertices.size()];
          const EdgeRef& e = comp.edges[i];
          if (!((e.from() == p && e.to() == q) || (e.from() == q && e.to() == p))) fail(tag + ": DMPTL chain broken");
        }
        covered += comp.edges.size();
        const TraceResult t = trace_dmptl(c.alpha, c.beta, record_for(comp.edges.front()));
        if (std::set<EdgeRef>(t.edges.begin(), t.edges.end()) != std::set<EdgeRef>(comp.edges.begin(), comp.edges.end()))
          fail(tag + ": trichotomy walk differs from the component");
        for (int which : t.cases)
          if (which < 1 || which > 3) fail(tag + ": trichotomy case out of range");
        steps += static_cast<int>(t.cases.size());
      }
      if (covered != s.size()) fail(tag + ": components do not cover the singular edges");
      if (!r.dmptl_cusps || r.swallowtails != *r.dmptl_cusps) fail(tag + ": swallowtails differ from DMPTL cusps");
      swallow += static_cast<int>(r.swallowtails.size());
    } catch (const Error& e) {
      fail(tag + ": " + e.what());
    }
  }
  o.check(violations == 0, fmt::format("{} violations", violations));
  o.info(fmt::format("{} pairs with singular edges, {} swallowtails, {} trichotomy steps", with_singular, swallow, steps));
  return o;
}

Outcome patches() {
  Outcome o;
  double pos = 0, plane = 0;
  int swallowtails = 0, confirmed = 0;
  for (const testing::CorpusCase& c : shared_corpus()) {
    const GridRange faces = c.net.omega.domain();
    for (const GridAddress& f : faces.addresses()) {
      const BilinearPatch p = patch_of(c.net, f);
      for (const GridAddress& g : {GridAddress::face(f.u() + 1, f.v()), GridAddress::face(f.u(), f.v() + 1)}) {
        if (!faces.contains(g)) continue;
        const BilinearPatch n = patch_of(c.net, g);
        const bool east = g.u() != f.u();
        for (int i = 0; i <= 4; ++i) {
          const double t = i / 4.0;
          const Vec3 a = east ? p.eval(1, t) : p.eval(t, 1), b = east ? n.eval(0, t) : n.eval(t, 0);
          pos = std::max(pos, norm(a - b));
          const Vec3 n1 = east ? p.normal(1, t) : p.normal(t, 1), n2 = east ? n.normal(0, t) : n.normal(t, 0);
          plane = std::max(plane, norm(cross(n1, n2)) / (norm(n1) * norm(n2)));
        }
      }
    }
    for (const GridAddress& v : analyze_singularities(c.alpha, c.beta, c.net).swallowtails) {
      ++swallowtails;
      const int u = v.u(), w = v.v();
      const auto P = [&](int du, int dv) { return patch_of(c.net, GridAddress::face(u + du, w + dv)); };
      if (patches_intersect(P(0, 0), P(-1, -1), 1e-6).intersects() || patches_intersect(P(-1, 0), P(0, -1), 1e-6).intersects())
        ++confirmed;
    }
  }
  o.check(pos < 1e-9, fmt::format("shared edge positions, worst {:.2e}", pos));
  o.check(plane < 1e-9, fmt::format("tangent planes along shared edges, worst {:.2e}", plane));
  o.check(swallowtails > 0, "corpus has swallowtails");
  o.check(confirmed == swallowtails, fmt::format("diagonal patches intersect at {} of {} swallowtails", confirmed, swallowtails));

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> d(-3, 3);
  double worst = 0;
  int tuples = 0;
  while (tuples < 1000) {
    const double s1 = d(rng), s2 = d(rng), a = d(rng), b = d(rng), cc = d(rng), dd = d(rng);
    ModelNetRatios r;
    try {
      r = model_net_ratios(s1, s2, a, b, cc, dd);
    } catch (const DegenerateError&) {
      continue;
    }
    const Eigen::Vector3d ref = testing::planarity_oracle(s1, s2, a, b, cc, dd);
    const double got[3] = {r.r1, r.r2, r.r3};
    for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(got[i] - ref(i)) / std::max(1.0, std::abs(ref(i))));
    ++tuples;
  }
  o.check(worst < 1e-9, fmt::format("model net ratios against the planarity solve, worst {:.2e}", worst));
  o.info(fmt::format("gluing {:.1e} / {:.1e}; {} swallowtails; model net worst {:.1e}", pos, plane, swallowtails, worst));
  return o;
}

Outcome ruled() {
  Outcome o;
  std::mt19937_64 rng(31337);
  double identity = 0;
  for (int k = 0; k < 100; ++k) {
    const testing::CorpusCase c = testing::ruled_case(rng, false);
    try {
      identity = std::max(identity, ruled_graph_form(c.net).max_identity_residual);
    } catch (const Error& e) {
      o.check(false, fmt::format("graph form of instance {}: {}", k, e.what()));
    }
  }
  o.check(identity <= 1e-9, fmt::format("z = x1 x2 + phi(x1), worst {:.2e}", identity));

  double collinear = 0;
  std::size_t stray = 0, columns = 0;
  for (int k = 0; k < 100; ++k) {
    const testing::CorpusCase c = testing::ruled_case(rng, true);
    const CuspidalColumns cols = cuspidal_columns(c.net);
    stray += cols.stray.size();
    columns += cols.columns.size();
    for (const CuspidalColumn& col : cols.columns) collinear = std::max(collinear, col.collinearity_residual);
  }
  o.check(stray == 0, fmt::format("{} singular edges off fixed-u columns", stray));
  o.check(collinear <= 1e-9, fmt::format("cuspidal columns collinear, worst {:.2e}", collinear));
  o.info(fmt::format("identity {:.1e}; {} columns, collinearity {:.1e}", identity, columns, collinear));
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string quote(const std::string& s) { return "'" + s + "'"; }

Outcome cli_golden(const Paths& paths) {
  Outcome o;
  if (paths.cli.empty()) {
    o.check(false, "no CLI binary given");
    return o;
  }
  struct Job {
    std::string name;
    std::string args;
  };
  const std::string ruled = quote((paths.fixtures / "ruled_example.json").string());
  const std::string parabola = quote((paths.fixtures / "parabola_pair.json").string());
  const std::vector<Job> jobs{
      {"ruled_example.net", "build " + ruled},
      {"ruled_example.report.json", "analyze " + ruled},
      {"ruled_example.obj", "export-obj -n 4 " + ruled},
      {"ruled_example.svg", "export-svg " + ruled},
      {"parabola_pair.net", "build " + parabola},
      {"parabola_pair.report.json", "analyze " + parabola},
      {"parabola_pair.obj", "export-obj -n 2 " + parabola},
      {"parabola_pair.svg", "export-svg " + parabola},
      {"cayley_a2.net", "cayley -a 2 --u -3:3 --v -3:3"},
      {"cayley_a-1_2.net", "cayley --a=-1/2 --u 0:6 --v 0:6"},
      {"cayley_a2.obj", "export-obj -n 3 {cayley_a2.net}"},
      {"cayley_a2.report.json", "analyze {cayley_a2.net}"},
  };

  std::vector<fs::path> runs;
  for (int run = 0; run < 2; ++run) {
    const fs::path dir = paths.work / fmt::format("run{}", run);
    fs::remove_all(dir);
    fs::create_directories(dir);
    for (const Job& j : jobs) {
      std::string args = j.args;
      if (const auto open = args.find('{'); open != std::string::npos) {
        const auto close = args.find('}', open);
        args.replace(open, close - open + 1, quote((dir / args.substr(open + 1, close - open - 1)).string()));
      }
      // warnings (e.g. inadmissible fixtures) go to a log next to the outputs
      const std::string cmd = fmt::format("{} {} -o {} 2>>{}", quote(paths.cli), args, quote((dir / j.name).string()),
                                          quote((dir / "stderr.log").string()));
      const int rc = std::system(cmd.c_str());
      o.check(rc == 0, "command succeeds: " + cmd);
    }
    runs.push_back(dir);
  }

  if (paths.update_golden) fs::create_directories(paths.golden);
  for (const Job& j : jobs) {
    const std::string first = slurp(runs[0] / j.name), second = slurp(runs[1] / j.name);
    o.check(!first.empty(), j.name + " is not empty");
    o.check(first == second, j.name + " is byte-identical across runs");
    const fs::path golden = paths.golden / j.name;
    if (paths.update_golden) {
      std::ofstream(golden, std::ios::binary) << first;
    } else {
      o.check(fs::exists(golden) && slurp(golden) == first, j.name + " matches the golden file");
    }
  }

  // counts in the OBJ header and body against (m n + 1)(k n + 1) vertices and m k n^2 quads
  struct Counted {
    std::string name;
    int faces_u, faces_v, n;
  };
  for (const Counted& c : {Counted{"ruled_example.obj", 2, 2, 4}, Counted{"parabola_pair.obj", 9, 8, 2},
                           Counted{"cayley_a2.obj", 6, 6, 3}}) {
    const std::string text = slurp(runs[0] / c.name);
    std::istringstream in(text);
    std::size_t v = 0, f = 0;
    for (std::string line; std::getline(in, line);) {
      if (line.rfind("v ", 0) == 0) ++v;
      if (line.rfind("f ", 0) == 0) ++f;
    }
    const std::size_t want_v = static_cast<std::size_t>((c.faces_u * c.n + 1) * (c.faces_v * c.n + 1));
    const std::size_t want_f = static_cast<std::size_t>(c.faces_u * c.faces_v * c.n * c.n);
    o.check(v == want_v && f == want_f, fmt::format("{}: {} vertices / {} quads, expected {} / {}", c.name, v, f, want_v, want_f));
    o.check(text.rfind(fmt::format("# {} vertices, {} quads\n", want_v, want_f), 0) == 0, c.name + " header counts");
  }
  o.info(fmt::format("{} outputs compared", jobs.size()));
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  Paths paths;
  std::string fixtures, golden, work = "acceptance_work";
  app.add_option("--cli", paths.cli, "diias executable");
  app.add_option("--fixtures", fixtures, "Fixture directory")->required();
  app.add_option("--golden", golden, "Golden output directory")->required();
  app.add_option("--work", work, "Scratch directory");
  app.add_flag("--update-golden", paths.update_golden, "Rewrite the golden files from this run");
  CLI11_PARSE(app, argc, argv);
  paths.fixtures = fixtures;
  paths.golden = golden;
  paths.work = work;

  struct Criterion {
    int id;
    std::string name;
    double budget_ms;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "ruled worked example", 1000, ruled_example},
      {2, "parabola pair singularities", 1000, parabola_pair},
      {3, "discrete Cayley surface", 5000, cayley},
      {4, "identity suite", 30000, identities},
      {5, "singularity combinatorics", 0, combinatorics},
      {6, "patch properties", 0, patches},
      {7, "ruled suite", 0, ruled},
      {8, "CLI golden files", 0, [&] { return cli_golden(paths); }},
  };

  // the corpus is shared by 4, 5 and 6; build it outside the timed region
  shared_corpus();

  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_ms > 0) o.check(ms < c.budget_ms, fmt::format("runtime {:.0f} ms within {:.0f} ms", ms, c.budget_ms));
    failed += !o.pass;
    fmt::print("criterion {}: {} {} ({:.1f} ms)\n", c.id, o.pass ? "PASS" : "FAIL", c.name, ms);
    for (const std::string& n : o.notes) fmt::print("    {}\n", n);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
