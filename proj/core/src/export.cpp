#include "diias/export.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <tuple>

#include <fmt/format.h>

#include "diias/error.hpp"
#include "diias/patches.hpp"

namespace diias {

std::string obj_text(const Field<Vec3>& q, int n, ObjStats* stats) {
  if (n < 1) throw DomainError("obj export: subdivision count must be at least 1");
  const GridRange faces = q.domain().shrunk(Axis::U).shrunk(Axis::V);

  std::map<std::tuple<double, double, double>, int> index;
  std::vector<Vec3> verts;
  std::vector<std::array<int, 4>> quads;
  for (const GridAddress& f : faces.addresses()) {
    const QuadMesh m = tessellate(patch_of(q, f), n);
    std::vector<int> local;
    local.reserve(m.vertices.size());
    for (const Vec3& p : m.vertices) {
      // +0.0 folds -0.0 into the same key
      const auto key = std::make_tuple(p.x + 0.0, p.y + 0.0, p.z + 0.0);
      const auto [it, fresh] = index.emplace(key, static_cast<int>(verts.size()));
      if (fresh) verts.push_back(p);
      local.push_back(it->second);
    }
    for (const auto& quad : m.quads)
      quads.push_back({local[quad[0]], local[quad[1]], local[quad[2]], local[quad[3]]});
  }

  std::string out = fmt::format("# {} vertices, {} quads\n", verts.size(), quads.size());
  for (const Vec3& p : verts) out += fmt::format("v {:.17g} {:.17g} {:.17g}\n", p.x, p.y, p.z);
  for (const auto& f : quads) out += fmt::format("f {} {} {} {}\n", f[0] + 1, f[1] + 1, f[2] + 1, f[3] + 1);
  if (stats) *stats = {verts.size(), quads.size()};
  return out;
}

namespace {

struct Frame {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -std::numeric_limits<double>::infinity();
  double ymin = std::numeric_limits<double>::infinity(), ymax = -std::numeric_limits<double>::infinity();

  void add(const Vec2& p) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
};

std::string num(double v) { return fmt::format("{:.10g}", v + 0.0); }
// SVG y grows downwards
std::string pt(const Vec2& p) { return num(p.x) + " " + num(-p.y); }

}  // namespace

std::string svg_text(const SvgInput& in) {
  Frame fr;
  for (const Vec2& p : in.x.values()) fr.add(p);
  if (in.alpha)
    for (const Vec2& p : in.alpha->points()) fr.add(p);
  if (in.beta)
    for (const Vec2& p : in.beta->points()) fr.add(p);

  const double w = std::max(fr.xmax - fr.xmin, 1e-12), h = std::max(fr.ymax - fr.ymin, 1e-12);
  const double mx = 0.05 * w, my = 0.05 * h;
  const double stroke = 0.004 * std::max(w, h);

  std::string s;
  s += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n",
      num(fr.xmin - mx), num(-fr.ymax - my), num(w + 2 * mx), num(h + 2 * my));
  s += fmt::format(
      "<style>.xnet{{stroke:#999;fill:none;stroke-width:{0}}} .alpha{{stroke:#1f77b4;fill:none;stroke-width:{1}}} "
      ".beta{{stroke:#2ca02c;fill:none;stroke-width:{1}}} .dmptl{{stroke:#d62728;fill:none;stroke-width:{2}}} "
      ".cusp{{fill:#000}}</style>\n",
      num(stroke), num(1.5 * stroke), num(2.5 * stroke));

  const GridRange& d = in.x.domain();
  s += "<g class=\"xnet\">\n";
  for (const GridAddress& a : d.addresses()) {
    const GridAddress e = a.shifted(Axis::U, 2), n = a.shifted(Axis::V, 2);
    if (d.contains(e)) s += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", num(in.x.at(a).x), num(-in.x.at(a).y), num(in.x.at(e).x), num(-in.x.at(e).y));
    if (d.contains(n)) s += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", num(in.x.at(a).x), num(-in.x.at(a).y), num(in.x.at(n).x), num(-in.x.at(n).y));
  }
  s += "</g>\n";

  auto polyline = [&](const Polyline2& l, const char* cls) {
    std::string p;
    for (const Vec2& v : l.points()) p += (p.empty() ? "" : " ") + num(v.x) + "," + num(-v.y);
    s += fmt::format("<polyline class=\"{}\" points=\"{}\"/>\n", cls, p);
  };
  if (in.alpha) polyline(*in.alpha, "alpha");
  if (in.beta) polyline(*in.beta, "beta");

  for (const EdgeRef& e : in.singularities.singular_edges)
    s += fmt::format("<path class=\"dmptl\" d=\"M {} L {}\"/>\n", pt(in.x.at(e.from())), pt(in.x.at(e.to())));

  if (in.singularities.dmptl_cusps)
    for (const GridAddress& a : *in.singularities.dmptl_cusps)
      s += fmt::format("<circle class=\"cusp\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>\n", num(in.x.at(a).x), num(-in.x.at(a).y),
                       num(3 * stroke));
  s += "</svg>\n";
  return s;
}

}  // namespace diias
