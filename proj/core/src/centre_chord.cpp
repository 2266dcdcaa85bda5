#include "diias/centre_chord.hpp"

#include <algorithm>
#include <cmath>

#include "diias/error.hpp"

namespace diias {

double Sequence::at(int i) const {
  if (!contains(i)) throw DomainError("sequence index " + std::to_string(i) + " out of range");
  return values[static_cast<std::size_t>(i - first)];
}

double Sequence::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

GridRange vertex_domain(const Polyline2& alpha, const Polyline2& beta) {
  return GridRange::vertices(alpha.first(), alpha.last(), beta.first(), beta.last());
}

GridAddress z_anchor(const GridRange& vertices) {
  const GridAddress origin = GridAddress::vertex(0, 0);
  return vertices.contains(origin) ? origin : vertices.min_corner();
}

Field<double> metric_field(const Polyline2& alpha, const Polyline2& beta) {
  const GridRange faces = GridRange::faces(alpha.first(), alpha.last() - 1, beta.first(), beta.last() - 1);
  return Field<double>::generate(faces, [&](const GridAddress& f) {
    return 0.25 * cross(alpha.edge(f.u()), beta.edge(f.v()));
  });
}

CentreChordData centre_chord_data(const Polyline2& alpha, const Polyline2& beta, double z_base) {
  const GridRange dom = vertex_domain(alpha, beta);
  auto x = Field<Vec2>::generate(dom, [&](const GridAddress& a) {
    return 0.5 * (alpha[a.u()] + beta[a.v()]);
  });
  auto y = Field<Vec2>::generate(dom, [&](const GridAddress& a) {
    return 0.5 * (beta[a.v()] - alpha[a.u()]);
  });

  const GridAddress anchor = z_anchor(dom);
  const int u0 = anchor.u(), v0 = anchor.v();
  const int nu = dom.count_u(), nv = dom.count_v();
  const int umin = alpha.first(), vmin = beta.first();
  std::vector<double> z(dom.size());
  auto zi = [&](int u, int v) -> double& {
    return z[static_cast<std::size_t>(u - umin) * nv + (v - vmin)];
  };
  auto X = [&](int u, int v) { return x.at(GridAddress::vertex(u, v)); };
  auto Y = [&](int u, int v) { return y.at(GridAddress::vertex(u, v)); };
  // z_1(u+1/2, v) = [x_1(u+1/2, v), y(u, v)]
  auto dz1 = [&](int u, int v) { return cross(X(u + 1, v) - X(u, v), Y(u, v)); };
  auto dz2 = [&](int u, int v) { return cross(X(u, v + 1) - X(u, v), Y(u, v)); };

  zi(u0, v0) = z_base;
  for (int u = u0 + 1; u <= alpha.last(); ++u) zi(u, v0) = zi(u - 1, v0) + dz1(u - 1, v0);
  for (int u = u0 - 1; u >= alpha.first(); --u) zi(u, v0) = zi(u + 1, v0) - dz1(u, v0);
  for (int u = alpha.first(); u <= alpha.last(); ++u) {
    for (int v = v0 + 1; v <= beta.last(); ++v) zi(u, v) = zi(u, v - 1) + dz2(u, v - 1);
    for (int v = v0 - 1; v >= beta.first(); --v) zi(u, v) = zi(u, v + 1) - dz2(u, v);
  }

  const double tol = cross_tolerance(alpha, beta) * (nu + nv) + fp_tolerance(std::abs(z_base));
  for (int u = alpha.first(); u < alpha.last(); ++u)
    for (int v = beta.first(); v <= beta.last(); ++v)
      if (std::abs(zi(u + 1, v) - zi(u, v) - dz1(u, v)) > tol)
        throw ValidationError("height integration is path dependent at edge " +
                              to_string(GridAddress::u_edge(u, v)));

  return CentreChordData{alpha, beta, std::move(x), std::move(y), Field<double>(dom, std::move(z)),
                         z_base, anchor};
}

Sequence cubic_A(const Polyline2& alpha) {
  Sequence s{alpha.first() + 1, {}};
  for (int u = alpha.first() + 1; u < alpha.last(); ++u)
    s.values.push_back(0.25 * cross(alpha.edge(u - 1), alpha.edge(u)));
  return s;
}

Sequence cubic_B(const Polyline2& beta) {
  Sequence s{beta.first() + 1, {}};
  for (int v = beta.first() + 1; v < beta.last(); ++v)
    s.values.push_back(-0.25 * cross(beta.edge(v - 1), beta.edge(v)));
  return s;
}

QuadNet build_diias(const Polyline2& alpha, const Polyline2& beta, double z_base) {
  for (int u = alpha.first(); u <= alpha.last(); ++u)
    for (int v = beta.first(); v <= beta.last(); ++v)
      if (alpha[u] == beta[v])
        throw DegenerateError("alpha(" + std::to_string(u) + ") coincides with beta(" +
                              std::to_string(v) + ")");

  Field<double> omega = metric_field(alpha, beta);
  const double zero_tol = 0.25 * cross_tolerance(alpha, beta);
  for (const GridAddress& f : omega.domain().addresses())
    if (std::abs(omega.at(f)) <= zero_tol)
      throw DegenerateError("affine metric vanishes on face " + to_string(f) +
                            ": alpha edge " + std::to_string(f.u()) + "+1/2 is parallel to beta edge " +
                            std::to_string(f.v()) + "+1/2");

  const CentreChordData cc = centre_chord_data(alpha, beta, z_base);
  auto q = Field<Vec3>::generate(cc.x.domain(), [&](const GridAddress& a) {
    const Vec2 p = cc.x.at(a);
    return Vec3{p.x, p.y, cc.z.at(a)};
  });
  return QuadNet{std::move(q), std::move(omega), Vec3{0, 0, 1}, cubic_A(alpha), cubic_B(beta)};
}

namespace {

double bbox_diagonal(const Field<Vec3>& q) {
  Vec3 lo = q.values().front(), hi = lo;
  for (const Vec3& p : q.values()) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
  return norm(hi - lo);
}

}  // namespace

Decomposition decompose(const QuadNet& net, double tol) {
  const GridRange& dom = net.domain();
  if (dom.kind() != CellKind::Vertex) throw DomainError("decompose: net must live on vertices");
  if (dom.count_u() < 2 || dom.count_v() < 2)
    throw DomainError("decompose: net needs at least 2 vertices along each axis");

  const double diag = bbox_diagonal(net.q);
  const Field<Vec3> q12 = mixed12(net.q);
  for (const GridAddress& f : q12.domain().addresses()) {
    const Vec3 w = q12.at(f);
    if (std::hypot(w.x, w.y) > tol * std::max(diag, 1.0))
      throw ValidationError("decompose: q_12 on face " + to_string(f) +
                            " is not parallel to (0, 0, 1); x-net quadrangle is not a parallelogram");
    if (std::abs(w.z) <= tol * std::max(diag * diag, 1.0))
      throw ValidationError("decompose: affine metric vanishes on face " + to_string(f));
  }

  const GridAddress anchor = z_anchor(dom);
  const int u0 = anchor.u(), v0 = anchor.v();
  const int umin = dom.min_corner().u(), umax = dom.max_corner().u();
  const int vmin = dom.min_corner().v(), vmax = dom.max_corner().v();
  auto X = [&](int u, int v) { return planar(net.q.at(GridAddress::vertex(u, v))); };
  const Vec2 x0 = X(u0, v0);
  const double z_base = net.q.at(anchor).z;

  // Gauge-zero split alpha0(u0) = beta0(v0) = x(u0, v0).
  std::vector<Vec2> a0, b0;
  for (int u = umin; u <= umax; ++u) a0.push_back(2.0 * X(u, v0) - x0);
  for (int v = vmin; v <= vmax; ++v) b0.push_back(2.0 * X(u0, v) - x0);

  // z - z0 = -[x - x0, t]; solve for t in the least-squares sense.
  const CentreChordData cc0 = centre_chord_data(Polyline2(umin, a0), Polyline2(vmin, b0), z_base);
  double m00 = 0, m01 = 0, m11 = 0, r0 = 0, r1 = 0;
  for (const GridAddress& a : dom.addresses()) {
    const Vec2 d = planar(net.q.at(a)) - x0;
    const double rhs = net.q.at(a).z - cc0.z.at(a);
    // -(d.x t.y - d.y t.x) = rhs  ->  [d.y, -d.x] . t = rhs
    const double c0 = d.y, c1 = -d.x;
    m00 += c0 * c0;
    m01 += c0 * c1;
    m11 += c1 * c1;
    r0 += c0 * rhs;
    r1 += c1 * rhs;
  }
  const double detm = m00 * m11 - m01 * m01;
  if (!(std::abs(detm) > 0.0))
    throw ValidationError("decompose: x-net is degenerate, the splitting cannot be fixed");
  const Vec2 t{(m11 * r0 - m01 * r1) / detm, (m00 * r1 - m01 * r0) / detm};

  std::vector<Vec2> a, b;
  for (const Vec2& p : a0) a.push_back(p + t);
  for (const Vec2& p : b0) b.push_back(p - t);
  Decomposition out{Polyline2(umin, std::move(a)), Polyline2(vmin, std::move(b)), z_base};

  // build_diias would refuse pairs that touch, which the Cayley nets do at the anchor
  const CentreChordData rebuilt = centre_chord_data(out.alpha, out.beta, z_base);
  const double limit = tol * std::max(diag * diag, 1.0);
  for (const GridAddress& v : dom.addresses())
    if (norm(Vec3{rebuilt.x.at(v).x, rebuilt.x.at(v).y, rebuilt.z.at(v)} - net.q.at(v)) > limit)
      throw ValidationError("decompose: net is not reproduced by a centre-chord construction at vertex " +
                            to_string(v));
  return out;
}

}  // namespace diias
