#include "diias/singularity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "diias/error.hpp"
#include "diias/tolerance.hpp"

namespace diias {

std::string to_string(const EdgeRef& e) {
  return std::string(e.label == Axis::U ? "u-edge " : "v-edge ") + to_string(e.address);
}

std::string to_string(StarClass c) {
  switch (c) {
    case StarClass::Typical: return "typical";
    case StarClass::Atypical: return "atypical";
    case StarClass::Boundary: return "boundary";
  }
  return "unknown";
}

std::string to_string(StarConfig c) {
  switch (c) {
    case StarConfig::Config0: return "config0";
    case StarConfig::Config1: return "config1";
    case StarConfig::Config2: return "config2";
    case StarConfig::Config3: return "config3";
  }
  return "unknown";
}

std::vector<EdgeRef> singular_edges(const Field<double>& omega) {
  const GridRange& faces = omega.domain();
  if (faces.kind() != CellKind::Face) throw DomainError("singular_edges: omega must live on faces");
  double scale = 0.0;
  for (double w : omega.values()) scale = std::max(scale, std::abs(w));
  const double zero = fp_tolerance(scale);
  for (const GridAddress& f : faces.addresses())
    if (std::abs(omega.at(f)) <= zero)
      throw DegenerateError("affine metric vanishes on face " + to_string(f));

  // faces (u + 1/2, v + 1/2) for u in [fu0, fu1], v in [fv0, fv1]
  const int fu0 = faces.min_corner().u(), fu1 = faces.max_corner().u();
  const int fv0 = faces.min_corner().v(), fv1 = faces.max_corner().v();
  auto W = [&](int u, int v) { return omega.at(GridAddress::face(u, v)); };

  std::vector<EdgeRef> out;
  for (int u = fu0; u <= fu1 + 1; ++u) {
    for (int v = fv0; v <= fv1 + 1; ++v) {
      // u-edge (u + 1/2, v) between faces (u + 1/2, v - 1/2) and (u + 1/2, v + 1/2)
      if (u <= fu1 && v > fv0 && v <= fv1 && W(u, v - 1) * W(u, v) < 0) out.push_back(EdgeRef::u_edge(u, v));
      // v-edge (u, v + 1/2) between faces (u - 1/2, v + 1/2) and (u + 1/2, v + 1/2)
      if (v <= fv1 && u > fu0 && u <= fu1 && W(u - 1, v) * W(u, v) < 0) out.push_back(EdgeRef::v_edge(u, v));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<EdgeRef> singular_edges_by_parallelism(const Polyline2& alpha, const Polyline2& beta) {
  const double tol = cross_tolerance(alpha, beta);
  std::vector<EdgeRef> out;
  for (int u = alpha.first(); u < alpha.last(); ++u)
    for (int v = beta.first() + 1; v < beta.last(); ++v)
      if (discretely_parallel(alpha.edge(u), beta, v, tol)) out.push_back(EdgeRef::u_edge(u, v));
  for (int v = beta.first(); v < beta.last(); ++v)
    for (int u = alpha.first() + 1; u < alpha.last(); ++u)
      if (discretely_parallel(beta.edge(v), alpha, u, tol)) out.push_back(EdgeRef::v_edge(u, v));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// +1 when the line through c with direction d leaves `a` and `b` on the same
// side within their common plane, -1 when it separates them.
int same_side_3d(const Vec3& d, const Vec3& a, const Vec3& b, const std::string& where) {
  const Vec3 na = cross(d, a), nb = cross(d, b);
  const double s = dot(na, nb);
  if (std::abs(s) <= tolerance_factor() * norm(na) * norm(nb) || norm(na) == 0.0 || norm(nb) == 0.0)
    throw DegenerateError("star-plane test is degenerate at " + where);
  return s > 0 ? 1 : -1;
}

}  // namespace

std::vector<EdgeRef> singular_edges_star_plane(const Field<Vec3>& q) {
  const GridRange& d = q.domain();
  const int umin = d.min_corner().u(), umax = d.max_corner().u();
  const int vmin = d.min_corner().v(), vmax = d.max_corner().v();
  auto Q = [&](int u, int v) { return q.at(GridAddress::vertex(u, v)); };
  std::vector<EdgeRef> out;
  for (int u = umin; u <= umax; ++u) {
    for (int v = vmin; v <= vmax; ++v) {
      const Vec3 c = Q(u, v);
      if (u < umax && v > vmin && v < vmax) {
        const EdgeRef e = EdgeRef::u_edge(u, v);
        if (same_side_3d(Q(u + 1, v) - c, Q(u, v + 1) - c, Q(u, v - 1) - c, to_string(e)) > 0)
          out.push_back(e);
      }
      if (v < vmax && u > umin && u < umax) {
        const EdgeRef e = EdgeRef::v_edge(u, v);
        if (same_side_3d(Q(u, v + 1) - c, Q(u + 1, v) - c, Q(u - 1, v) - c, to_string(e)) > 0)
          out.push_back(e);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<DmptlComponent> dmptl(const Field<Vec2>& x, const std::vector<EdgeRef>& singular) {
  std::map<GridAddress, std::vector<EdgeRef>> adj;
  for (const EdgeRef& e : singular) {
    adj[e.from()].push_back(e);
    adj[e.to()].push_back(e);
  }
  for (const auto& [v, es] : adj)
    if (es.size() > 2)
      throw InadmissibleError("DMPTL vertex " + to_string(v) + " meets " + std::to_string(es.size()) +
                              " singular edges; the chains are not simple");

  std::set<EdgeRef> used;
  std::vector<DmptlComponent> out;
  auto walk = [&](GridAddress start) {
    DmptlComponent c;
    GridAddress cur = start;
    c.vertices.push_back(cur);
    for (;;) {
      const EdgeRef* next = nullptr;
      for (const EdgeRef& e : adj[cur])
        if (!used.count(e)) {
          next = &e;
          break;
        }
      if (next == nullptr) break;
      used.insert(*next);
      c.edges.push_back(*next);
      cur = next->from() == cur ? next->to() : next->from();
      if (cur == start) {
        c.closed = true;
        break;
      }
      c.vertices.push_back(cur);
    }
    for (const GridAddress& v : c.vertices) c.points.push_back(x.at(v));
    out.push_back(std::move(c));
  };

  for (const auto& [v, es] : adj)
    if (es.size() == 1 && !used.count(es.front())) walk(v);
  for (const auto& [v, es] : adj)
    if (!used.count(es.front())) walk(v);
  return out;
}

std::vector<DmptlComponent> dmptl(const Polyline2& alpha, const Polyline2& beta,
                                  const std::vector<EdgeRef>& singular) {
  const CentreChordData cc = centre_chord_data(alpha, beta);
  return dmptl(cc.x, singular);
}

namespace {

// d = directions to E, N, W, S.
StarClass classify_directions(const std::array<Vec2, 4>& d, const GridAddress& vertex) {
  const double tol = tolerance_factor();
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const double s = norm(d[i]) * norm(d[j]);
      if (s == 0.0 || (std::abs(cross(d[i], d[j])) <= tol * s && dot(d[i], d[j]) > 0))
        throw DegenerateError("star at " + to_string(vertex) + " has two neighbours in the same direction");
    }
  std::array<int, 4> order{0, 1, 2, 3};
  std::array<double, 4> ang{};
  for (int i = 0; i < 4; ++i) ang[i] = std::atan2(d[i].y, d[i].x);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return ang[a] < ang[b]; });
  // rotate so E comes first
  std::rotate(order.begin(), std::find(order.begin(), order.end(), 0), order.end());
  const bool ccw = order == std::array<int, 4>{0, 1, 2, 3};
  const bool cw = order == std::array<int, 4>{0, 3, 2, 1};
  return (ccw || cw) ? StarClass::Typical : StarClass::Atypical;
}

template <class V>
void require_interior(const Field<V>& f, const GridAddress& a) {
  const GridRange& d = f.domain();
  if (!d.contains(a) || a.du <= d.du_min() || a.du >= d.du_max() || a.dv <= d.dv_min() ||
      a.dv >= d.dv_max())
    throw DomainError("star at " + to_string(a) + " is not interior");
}

}  // namespace

StarClass classify_star(const Field<Vec2>& x, const GridAddress& vertex) {
  require_interior(x, vertex);
  const int u = vertex.u(), v = vertex.v();
  const Vec2 c = x.at(vertex);
  auto X = [&](int a, int b) { return x.at(GridAddress::vertex(a, b)) - c; };
  return classify_directions({X(u + 1, v), X(u, v + 1), X(u - 1, v), X(u, v - 1)}, vertex);
}

StarClass classify_star(const Field<Vec3>& q, const GridAddress& vertex) {
  require_interior(q, vertex);
  const int u = vertex.u(), v = vertex.v();
  const Vec3 c = q.at(vertex);
  auto Q = [&](int a, int b) { return q.at(GridAddress::vertex(a, b)) - c; };
  const std::array<Vec3, 4> n3{Q(u + 1, v), Q(u, v + 1), Q(u - 1, v), Q(u, v - 1)};
  const Vec3 normal = cross(n3[0], n3[1]);
  if (norm(normal) == 0.0 || norm(n3[0]) == 0.0)
    throw DegenerateError("star at " + to_string(vertex) + " has no star plane");
  const Vec3 b1 = n3[0] * (1.0 / norm(n3[0]));
  Vec3 b2 = cross(normal, b1);
  b2 = b2 * (1.0 / norm(b2));
  std::array<Vec2, 4> d{};
  for (int i = 0; i < 4; ++i) d[i] = {dot(n3[i], b1), dot(n3[i], b2)};
  return classify_directions(d, vertex);
}

StarConfig vertex_configuration(const std::vector<EdgeRef>& singular, StarClass star, const GridAddress& vertex) {
  if (star == StarClass::Boundary) throw DomainError("no configuration at boundary vertex " + to_string(vertex));
  const int u = vertex.u(), v = vertex.v();
  auto has = [&](const EdgeRef& e) { return std::find(singular.begin(), singular.end(), e) != singular.end(); };
  const bool E = has(EdgeRef::u_edge(u, v)), W = has(EdgeRef::u_edge(u - 1, v));
  const bool N = has(EdgeRef::v_edge(u, v)), S = has(EdgeRef::v_edge(u, v - 1));
  const int count = E + W + N + S;
  if (count == 0) return StarConfig::Config0;
  if (count == 2) {
    if ((E && W) || (N && S)) return StarConfig::Config1;
    return star == StarClass::Typical ? StarConfig::Config2 : StarConfig::Config3;
  }
  throw InadmissibleError("star at " + to_string(vertex) + " has " + std::to_string(count) +
                          " singular edges, outside the four configurations");
}

std::vector<GridAddress> swallowtails(const std::map<GridAddress, StarConfig>& config) {
  std::vector<GridAddress> out;
  for (const auto& [v, c] : config)
    if (c == StarConfig::Config3) out.push_back(v);
  return out;
}

std::vector<GridAddress> dmptl_cusps(const Polyline2& alpha, const Polyline2& beta,
                                     const std::vector<DmptlComponent>& components) {
  const double tol = cross_tolerance(alpha, beta);
  std::vector<GridAddress> out;
  for (const DmptlComponent& c : components) {
    const std::size_t n = c.vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
      const bool interior = c.closed || (i > 0 && i + 1 < n);
      if (!interior || n < 2) continue;
      const std::size_t ip = (i + n - 1) % n;
      const EdgeRef& before = c.edges[c.closed ? (i + c.edges.size() - 1) % c.edges.size() : i - 1];
      const EdgeRef& after = c.edges[i];
      if (before.label == after.label) continue;

      const GridAddress& g = c.vertices[i];
      const Vec2 a = alpha[g.u()], b = beta[g.v()];
      if (a == b) throw DegenerateError("chord at " + to_string(g) + " has coincident ends");
      const int s1 = orientation(a, b, c.points[ip], tol);
      const int s2 = orientation(a, b, c.points[(i + 1) % n], tol);
      if (s1 == 0 || s2 == 0)
        throw DegenerateError("DMPTL neighbour of " + to_string(g) + " lies on the chord line");
      if (s1 == s2) out.push_back(g);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

EdgeRef ParallelRecord::edge() const {
  return label == Axis::U ? EdgeRef::u_edge(std::min(u, u - dir), v) : EdgeRef::v_edge(u, std::min(v, v - dir));
}

ParallelRecord record_for(const EdgeRef& e) {
  return e.label == Axis::U ? ParallelRecord{Axis::U, e.address.u() + 1, e.address.v(), 1}
                            : ParallelRecord{Axis::V, e.address.u(), e.address.v() + 1, 1};
}

namespace {

// Roles of the two polylines for a record: `along` carries the parallel edge,
// `across` the vertex it is parallel to.
struct Roles {
  const Polyline2& along;
  const Polyline2& across;
  int i;  // index on `along`
  int j;  // index on `across`
};

int side(const Vec2& origin, const Vec2& dir, const Vec2& p, double tol) {
  const double s = cross(dir, p - origin);
  if (std::abs(s) <= tol) return 0;
  return s > 0 ? 1 : -1;
}

}  // namespace

std::optional<TrichotomyStep> trichotomy_step(const Polyline2& alpha, const Polyline2& beta,
                                              const ParallelRecord& cur) {
  if (cur.dir != 1 && cur.dir != -1) throw DomainError("trichotomy_step: dir must be +1 or -1");
  const bool is_u = cur.label == Axis::U;
  const Roles r = is_u ? Roles{alpha, beta, cur.u, cur.v} : Roles{beta, alpha, cur.v, cur.u};
  const double tol = cross_tolerance(alpha, beta);
  const int i = r.i, j = r.j, d = cur.dir;

  if (!r.along.contains(i) || !r.along.contains(i - d) || !r.across.contains(j))
    throw DomainError("trichotomy_step: record outside the polylines");
  if (!r.across.is_interior(j) || !r.along.is_interior(i)) return std::nullopt;

  const Vec2 held = r.along[i] - r.along[i - d];
  if (!discretely_parallel(held, r.across, j, tol))
    throw DomainError("trichotomy_step: the record's parallelism does not hold");

  // Lines through along(i) parallel to the across-edges at j -+ 1/2.
  const Vec2 o = r.along[i];
  const Vec2 prev = r.along[i - d], next = r.along[i + d];
  const Vec2 dir_r = r.across[j] - r.across[j - 1];
  const Vec2 dir_s = r.across[j + 1] - r.across[j];
  const int pr = side(o, dir_r, prev, tol), nr = side(o, dir_r, next, tol);
  const int ps = side(o, dir_s, prev, tol), ns = side(o, dir_s, next, tol);
  if (pr == 0 || nr == 0 || ps == 0 || ns == 0)
    throw InadmissibleError("trichotomy_step: a vertex lies on a dividing line at " + to_string(cur.edge()));
  const bool on_s = ps == ns, on_r = pr == nr;

  // Direct parallelism tests for each case.
  const bool c1 = discretely_parallel(next - o, r.across, j, tol);
  const bool c2 = discretely_parallel(dir_s, r.along, i, tol);
  const bool c3 = discretely_parallel(dir_r, r.along, i, tol);
  const int holding = c1 + c2 + c3;
  if (holding != 1)
    throw InadmissibleError("trichotomy_step: " + std::to_string(holding) + " cases hold after " +
                            to_string(cur.edge()));
  const int by_lines = on_s && on_r ? 0 : (on_s ? 2 : (on_r ? 3 : 1));
  const int direct = c1 ? 1 : (c2 ? 2 : 3);
  if (by_lines != direct)
    throw InadmissibleError("trichotomy_step: half-plane reading disagrees with parallelism tests after " +
                            to_string(cur.edge()));

  TrichotomyStep step;
  step.which = direct;
  const Axis other = is_u ? Axis::V : Axis::U;
  auto make = [&](Axis label, int along_idx, int across_idx, int dir) {
    // translate (index on the labelled polyline, index on the other) back to (u, v)
    const bool u_side = label == Axis::U;
    return u_side ? ParallelRecord{label, along_idx, across_idx, dir} : ParallelRecord{label, across_idx, along_idx, dir};
  };
  if (direct == 1) step.next = make(cur.label, i + d, j, d);
  else if (direct == 2) step.next = make(other, j + 1, i, 1);
  else step.next = make(other, j - 1, i, -1);
  return step;
}

TraceResult trace_dmptl(const Polyline2& alpha, const Polyline2& beta, const ParallelRecord& seed) {
  TraceResult out;
  const EdgeRef first = seed.edge();
  out.edges.push_back(first);
  std::set<EdgeRef> seen{first};
  const std::size_t limit = static_cast<std::size_t>(alpha.size()) * beta.size() * 2 + 4;

  auto run = [&](ParallelRecord cur, std::vector<EdgeRef>& edges) {
    while (edges.size() < limit) {
      const auto step = trichotomy_step(alpha, beta, cur);
      if (!step) return;
      out.cases.push_back(step->which);
      const EdgeRef e = step->next.edge();
      if (e == first) {
        out.closed = true;
        return;
      }
      if (!seen.insert(e).second)
        throw InadmissibleError("trace_dmptl: chain revisits " + to_string(e));
      edges.push_back(e);
      cur = step->next;
    }
  };

  std::vector<EdgeRef> forward, backward;
  run(seed, forward);
  if (!out.closed) {
    const ParallelRecord rev = seed.label == Axis::U ? ParallelRecord{Axis::U, seed.u - seed.dir, seed.v, -seed.dir}
                                                     : ParallelRecord{Axis::V, seed.u, seed.v - seed.dir, -seed.dir};
    run(rev, backward);
  }
  out.edges.clear();
  out.edges.insert(out.edges.end(), backward.rbegin(), backward.rend());
  out.edges.push_back(first);
  out.edges.insert(out.edges.end(), forward.begin(), forward.end());
  return out;
}

namespace {

void classify_all(SingularityReport& rep, const GridRange& dom, const auto& classify) {
  for (const GridAddress& a : dom.addresses()) {
    const bool boundary = a.du == dom.du_min() || a.du == dom.du_max() || a.dv == dom.dv_min() || a.dv == dom.dv_max();
    if (boundary) {
      rep.star_class[a] = StarClass::Boundary;
      continue;
    }
    try {
      rep.star_class[a] = classify(a);
    } catch (const DegenerateError& e) {
      rep.anomalies.push_back(e.what());
      continue;
    }
    try {
      rep.config[a] = vertex_configuration(rep.singular_edges, rep.star_class[a], a);
    } catch (const InadmissibleError& e) {
      rep.anomalies.push_back(e.what());
    }
  }
  rep.swallowtails = swallowtails(rep.config);
}

}  // namespace

SingularityReport analyze_singularities(const Polyline2& alpha, const Polyline2& beta, const QuadNet& net) {
  SingularityReport rep;
  rep.singular_edges = singular_edges(net.omega);
  const CentreChordData cc = centre_chord_data(alpha, beta);
  rep.dmptl_components = dmptl(cc.x, rep.singular_edges);
  classify_all(rep, net.domain(), [&](const GridAddress& a) { return classify_star(cc.x, a); });
  try {
    rep.dmptl_cusps = dmptl_cusps(alpha, beta, rep.dmptl_components);
    if (*rep.dmptl_cusps != rep.swallowtails)
      rep.anomalies.push_back("swallowtail set differs from the DMPTL cusp set");
  } catch (const DegenerateError& e) {
    rep.anomalies.push_back(e.what());
  }
  return rep;
}

SingularityReport analyze_singularities(const QuadNet& net) {
  SingularityReport rep;
  rep.singular_edges = singular_edges(net.omega);
  auto x = Field<Vec2>::generate(net.domain(), [&](const GridAddress& a) { return planar(net.q.at(a)); });
  rep.dmptl_components = dmptl(x, rep.singular_edges);
  classify_all(rep, net.domain(), [&](const GridAddress& a) { return classify_star(net.q, a); });
  return rep;
}

}  // namespace diias
