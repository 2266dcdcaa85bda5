#include "diias/ruled.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "diias/error.hpp"

namespace diias {

std::string to_string(RuledKind k) {
  switch (k) {
    case RuledKind::NotRuled: return "NotRuled";
    case RuledKind::RuledU: return "RuledU";
    case RuledKind::RuledV: return "RuledV";
    case RuledKind::DoublyRuled: return "DoublyRuled";
  }
  return "unknown";
}

RuledKind ruled_kind(const Sequence& A, const Sequence& B, double tol) {
  const bool a0 = A.max_abs() <= tol, b0 = B.max_abs() <= tol;
  if (a0 && b0) return RuledKind::DoublyRuled;
  if (b0) return RuledKind::RuledU;
  if (a0) return RuledKind::RuledV;
  return RuledKind::NotRuled;
}

RuledKind ruled_kind(const QuadNet& net, double tol) {
  double scale = std::max(net.A.max_abs(), net.B.max_abs());
  for (double w : net.omega.values()) scale = std::max(scale, std::abs(w));
  return ruled_kind(net.A, net.B, tol * scale);
}

namespace {

Vec3 cayley_point(double a, int u, int v) {
  // both integer quotients are exact
  const double c2 = static_cast<double>(static_cast<long long>(u) * (u - 1) / 2);
  const double c3 = static_cast<double>(static_cast<long long>(u) * (static_cast<long long>(u) * u - 1) / 6);
  return {static_cast<double>(u), v + a * c2, static_cast<double>(u) * v + a * c3};
}

double bbox_diagonal(const Field<Vec3>& q) {
  Vec3 lo = q.values().front(), hi = lo;
  for (const Vec3& p : q.values()) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
  return norm(hi - lo);
}

// Orientation of Omega: +1 or -1 when |Omega| == 1 everywhere with one sign, 0 otherwise.
int unit_metric_sign(const QuadNet& net, double tol) {
  const auto w = net.omega.values();
  const int s = w.front() < 0 ? -1 : 1;
  for (double x : w)
    if (std::abs(x - s) > tol) return 0;
  return s;
}

}  // namespace

QuadNet cayley_net(double a, const GridRange& vertices) {
  if (a == 0.0) throw DomainError("cayley_net: a must be nonzero");
  if (vertices.kind() != CellKind::Vertex) throw DomainError("cayley_net: range must be a vertex range");
  auto q = Field<Vec3>::generate(vertices, [&](const GridAddress& p) { return cayley_point(a, p.u(), p.v()); });
  const GridRange faces = vertices.shrunk(Axis::U).shrunk(Axis::V);
  Field<double> omega(faces, std::vector<double>(faces.size(), 1.0));
  const int umin = vertices.min_corner().u(), umax = vertices.max_corner().u();
  const int vmin = vertices.min_corner().v(), vmax = vertices.max_corner().v();
  Sequence A{umin + 1, std::vector<double>(static_cast<std::size_t>(std::max(0, umax - umin - 1)), a)};
  Sequence B{vmin + 1, std::vector<double>(static_cast<std::size_t>(std::max(0, vmax - vmin - 1)), 0.0)};
  return QuadNet{std::move(q), std::move(omega), Vec3{0, 0, 1}, std::move(A), std::move(B)};
}

bool is_normalized(const QuadNet& net, double tol) {
  if (unit_metric_sign(net, tol) == 0) return false;
  const GridRange& d = net.domain();
  const double limit = tol * std::max(1.0, bbox_diagonal(net.q));
  for (const GridAddress& p : d.addresses()) {
    const GridAddress up = p.shifted(Axis::V, 2), down = p.shifted(Axis::V, -2);
    if (!d.contains(up) || !d.contains(down)) continue;
    if (norm(net.q.at(up) - 2.0 * net.q.at(p) + net.q.at(down)) > limit) return false;
  }
  return true;
}

std::optional<CayleyMatch> cayley_congruent(const QuadNet& net, double tol) {
  if (!is_normalized(net, tol)) throw ValidationError("cayley_congruent: net is not normalized");
  if (net.A.empty()) throw DomainError("cayley_congruent: domain too small to determine A");
  const double sigma = unit_metric_sign(net, tol);

  double mean = 0.0;
  for (double x : net.A.values) mean += sigma * x;
  mean /= static_cast<double>(net.A.values.size());
  const double scale = std::max(std::abs(mean), 1.0);
  for (double x : net.A.values)
    if (std::abs(sigma * x - mean) > tol * scale) return std::nullopt;
  if (net.B.max_abs() > tol * scale || std::abs(mean) <= tol) return std::nullopt;

  const GridAddress base = net.domain().min_corner();
  const int u0 = base.u(), v0 = base.v();
  auto Q = [&](int u, int v) { return net.q.at(GridAddress::vertex(u, v)); };
  const Vec3 xi = sigma * net.xi;
  const Mat3 target = Mat3::from_columns(Q(u0 + 1, v0) - Q(u0, v0), Q(u0, v0 + 1) - Q(u0, v0), xi);
  const Vec3 c0 = cayley_point(mean, u0, v0);
  const Mat3 canonical = Mat3::from_columns(cayley_point(mean, u0 + 1, v0) - c0, cayley_point(mean, u0, v0 + 1) - c0,
                                            Vec3{0, 0, 1});
  AffineMap3 frame;
  frame.linear = target * canonical.inverse();
  frame.translation = Q(u0, v0) - frame.linear * c0;

  const double limit = tol * std::max(1.0, bbox_diagonal(net.q));
  for (const GridAddress& p : net.domain().addresses())
    if (norm(frame(cayley_point(mean, p.u(), p.v())) - net.q.at(p)) > limit) return std::nullopt;
  return CayleyMatch{mean, frame};
}

GraphForm ruled_graph_form(const QuadNet& net, double tol) {
  const RuledKind kind = ruled_kind(net, tol);
  if (kind != RuledKind::RuledU && kind != RuledKind::DoublyRuled)
    throw ValidationError("ruled_graph_form: B is not identically zero");
  if (!singular_edges(net.omega).empty()) throw ValidationError("ruled_graph_form: net has singular edges");

  const Decomposition dec = decompose(net, tol);
  const Polyline2& alpha = dec.alpha;
  const Polyline2& beta = dec.beta;

  const Vec2 b0 = beta[beta.first()];
  const Vec2 span = beta[beta.last()] - b0;
  const double len = norm(span);
  const double line_tol = tol * std::max(1.0, len * len);
  for (int v = beta.first(); v <= beta.last(); ++v)
    if (std::abs(cross(span, beta[v] - b0)) > line_tol)
      throw ValidationError("ruled_graph_form: beta is not collinear");

  // rotation taking span to the positive second axis, then translating beta(v0) to 0
  const Vec2 d = span * (1.0 / len);
  const Mat3 rot{{{{d.y, -d.x, 0}, {d.x, d.y, 0}, {0, 0, 1}}}};
  const Vec3 shift = -(rot * Vec3{b0.x, b0.y, 0});
  const AffineMap3 normalization{rot, shift};

  auto P = [&](const Vec2& p) { return planar(normalization(Vec3{p.x, p.y, 0})); };
  const int v0 = beta.first();

  GraphForm out;
  out.normalization = normalization;
  // g_1(u + 1/2) = -1/4 [alpha_1(u + 1/2), alpha(u)] with alpha in normalized coordinates
  std::vector<double> g(static_cast<std::size_t>(alpha.size()));
  const int ua = alpha.first();
  g[0] = net.q.at(GridAddress::vertex(ua, v0)).z;
  for (int u = ua; u < alpha.last(); ++u) {
    const Vec2 au = P(alpha[u]), a1 = P(alpha[u + 1]) - au;
    g[static_cast<std::size_t>(u - ua + 1)] = g[static_cast<std::size_t>(u - ua)] - 0.25 * cross(a1, au);
  }

  for (int u = ua; u <= alpha.last(); ++u) {
    const Vec2 a = P(alpha[u]);
    GraphSample s;
    s.u = u;
    s.x1 = 0.5 * a.x;
    s.phi = g[static_cast<std::size_t>(u - ua)] - 0.25 * a.x * a.y;
    out.samples.push_back(s);
  }

  for (std::size_t i = 1; i < out.samples.size(); ++i) {
    const double step = out.samples[i].x1 - out.samples[i - 1].x1;
    const double first = out.samples[1].x1 - out.samples[0].x1;
    if (step == 0.0 || (step > 0) != (first > 0))
      throw ValidationError("ruled_graph_form: x1 is not strictly monotone in u");
  }

  const double limit = tol * std::max(1.0, std::pow(bbox_diagonal(net.q), 2));
  for (const GridAddress& p : net.domain().addresses()) {
    const Vec3 q = normalization(net.q.at(p));
    const double phi = out.samples[static_cast<std::size_t>(p.u() - ua)].phi;
    out.max_identity_residual = std::max(out.max_identity_residual, std::abs(q.z - q.x * q.y - phi));
  }
  if (out.max_identity_residual > limit)
    throw ValidationError("ruled_graph_form: z = x1 x2 + phi(x1) fails");
  return out;
}

CuspidalColumns cuspidal_columns(const QuadNet& net) {
  CuspidalColumns out;
  std::map<int, std::vector<EdgeRef>> by_u;
  for (const EdgeRef& e : singular_edges(net.omega)) {
    if (e.label == Axis::V) by_u[e.address.u()].push_back(e);
    else out.stray.push_back(e);
  }
  for (auto& [u, edges] : by_u) {
    CuspidalColumn c{u, edges, 0.0};
    const Vec3 p0 = net.q.at(edges.front().from());
    const Vec3 line = net.q.at(edges.back().to()) - p0;
    for (const EdgeRef& e : edges) {
      const Vec3 seg = net.q.at(e.to()) - net.q.at(e.from());
      const double s = norm(seg) * norm(line);
      if (s > 0) c.collinearity_residual = std::max(c.collinearity_residual, norm(cross(seg, line)) / s);
      const Vec3 off = net.q.at(e.from()) - p0;
      if (norm(off) > 0) c.collinearity_residual = std::max(c.collinearity_residual, norm(cross(off, line)) / (norm(off) * norm(line)));
    }
    out.columns.push_back(std::move(c));
  }
  return out;
}

}  // namespace diias
