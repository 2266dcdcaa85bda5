// Command line front end: build, analyze, export-obj, export-svg, cayley.
//
// Exit codes: 0 success, 2 invalid input or failed validation, 3 I/O failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "diias/diias.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 2;
constexpr int kIo = 3;

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw diias::IoError("failed writing to standard output");
  } else {
    diias::write_text_file(path, text);
  }
}

struct Loaded {
  std::optional<diias::PolylinePair> pair;
  diias::Field<diias::Vec3> q;
};

bool is_net_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw diias::IoError("cannot open " + path + " for reading");
  return diias::looks_like_net(in);
}

// Either a polyline pair (built into a net) or a net file.
Loaded load(const std::string& path) {
  if (is_net_file(path)) return {std::nullopt, diias::read_net_file(path)};
  diias::PolylinePair pair = diias::read_polyline_pair_file(path);
  diias::QuadNet net = diias::build_diias(pair.alpha, pair.beta, pair.z_base);
  return {std::move(pair), std::move(net.q)};
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw diias::InadmissibleError("range must read MIN:MAX, got '" + text + "'");
  const double lo = diias::parse_number(text.substr(0, colon));
  const double hi = diias::parse_number(text.substr(colon + 1));
  if (lo != static_cast<int>(lo) || hi != static_cast<int>(hi) || lo > hi)
    throw diias::InadmissibleError("range '" + text + "' must be two ordered integers");
  return {static_cast<int>(lo), static_cast<int>(hi)};
}

int cmd_build(const std::string& input, const std::string& out, bool strict) {
  const diias::PolylinePair pair = diias::read_polyline_pair_file(input);
  const diias::AdmissibilityReport adm = diias::check_admissible(pair.alpha, pair.beta);
  for (const diias::Violation& v : adm.violations) {
    if (strict || v.kind == diias::ViolationKind::ParallelEdges)
      std::cerr << "error: " << v.describe() << "\n";
    else
      std::cerr << "warning: " << v.describe() << "\n";
  }
  if (strict && !adm.admissible) return kInvalid;
  const diias::QuadNet net = diias::build_diias(pair.alpha, pair.beta, pair.z_base);
  std::ostringstream s;
  diias::write_net(s, net.q);
  emit(out, s.str());
  return kOk;
}

int cmd_analyze(const std::string& input, const std::string& out) {
  const Loaded l = load(input);
  const diias::AnalysisReport r = l.pair ? diias::run_analysis(*l.pair) : diias::run_analysis(l.q);
  emit(out, diias::report_json(r));
  return kOk;
}

int cmd_export_obj(const std::string& input, int n, const std::string& out) {
  const Loaded l = load(input);
  diias::ObjStats stats;
  const std::string text = diias::obj_text(l.q, n, &stats);
  emit(out, text);
  std::cerr << fmt::format("{} vertices, {} quads\n", stats.vertices, stats.quads);
  return kOk;
}

int cmd_export_svg(const std::string& input, const std::string& out) {
  const Loaded l = load(input);
  diias::AnalysisReport r = l.pair ? diias::run_analysis(*l.pair) : diias::run_analysis(l.q);
  std::optional<diias::PolylinePair> pair = l.pair;
  if (!pair) {
    try {
      const diias::Decomposition d = diias::decompose(diias::net_from_points(l.q));
      pair = diias::PolylinePair{d.alpha, d.beta, d.z_base};
    } catch (const diias::ValidationError&) {
    }
  }
  auto x = diias::Field<diias::Vec2>::generate(l.q.domain(), [&](const diias::GridAddress& a) {
    return diias::planar(l.q.at(a));
  });
  diias::SvgInput in{std::move(x), std::nullopt, std::nullopt, std::move(r.singularities)};
  if (pair) {
    in.alpha = pair->alpha;
    in.beta = pair->beta;
  }
  emit(out, diias::svg_text(in));
  return kOk;
}

int cmd_cayley(const std::string& a_text, const std::string& u_range, const std::string& v_range,
               const std::string& out) {
  const double a = diias::parse_number(a_text);
  if (a == 0.0) {
    std::cerr << "error: the Cayley parameter a must be nonzero\n";
    return kInvalid;
  }
  const auto [u0, u1] = parse_range(u_range);
  const auto [v0, v1] = parse_range(v_range);
  const diias::QuadNet net = diias::cayley_net(a, diias::GridRange::vertices(u0, u1, v0, v1));
  std::ostringstream s;
  diias::write_net(s, net.q);
  emit(out, s.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete affine spheres from polygonal line pairs"};
  app.require_subcommand(1);

  std::string input, out = "-";
  bool strict = false;
  int subdivisions = 4;
  std::string a_text, u_range = "0:2", v_range = "0:2";

  auto* build = app.add_subcommand("build", "Build the net of a polyline pair (JSON) and write it in net format");
  build->add_option("input", input, "Polyline pair JSON")->required();
  build->add_option("-o,--out", out, "Output net file (default stdout)");
  build->add_flag("--strict", strict, "Reject pairs that break the angle restrictions");

  auto* analyze = app.add_subcommand("analyze", "Verify a net and report its singularities as JSON");
  analyze->add_option("input", input, "Polyline pair JSON or net file")->required();
  analyze->add_option("-o,--out", out, "Output report (default stdout)");

  auto* obj = app.add_subcommand("export-obj", "Tessellate the bilinear patches into an OBJ quad mesh");
  obj->add_option("input", input, "Polyline pair JSON or net file")->required();
  obj->add_option("-n,--subdivisions", subdivisions, "Subdivisions per patch side")->check(CLI::PositiveNumber);
  obj->add_option("-o,--out", out, "Output OBJ (default stdout)");

  auto* svg = app.add_subcommand("export-svg", "Plot the planar net, the polylines and the singular locus");
  svg->add_option("input", input, "Polyline pair JSON or net file")->required();
  svg->add_option("-o,--out", out, "Output SVG (default stdout)");

  auto* cayley = app.add_subcommand("cayley", "Write the discrete Cayley surface");
  cayley->add_option("-a,--a", a_text, "Parameter a, decimal or fraction such as -3/4")->required();
  cayley->add_option("--u", u_range, "Index range MIN:MAX along u");
  cayley->add_option("--v", v_range, "Index range MIN:MAX along v");
  cayley->add_option("-o,--out", out, "Output net file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*build) return cmd_build(input, out, strict);
    if (*analyze) return cmd_analyze(input, out);
    if (*obj) return cmd_export_obj(input, subdivisions, out);
    if (*svg) return cmd_export_svg(input, out);
    if (*cayley) return cmd_cayley(a_text, u_range, v_range, out);
  } catch (const diias::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const diias::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}
