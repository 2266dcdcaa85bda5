#include "diias/asymptotic.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "diias/error.hpp"

namespace diias {

namespace {

// |[a, b, c]| / (|a| |b| max(|a|, |b|, |c|)); c may be a difference of nearly
// equal edges, so its own length is no scale.
double rel_det(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double s = norm(a) * norm(b) * std::max({norm(a), norm(b), norm(c)});
  return s > 0.0 ? std::abs(det(a, b, c)) / s : 0.0;
}

double rel_vec(const Vec3& residual, double scale) { return scale > 0.0 ? norm(residual) / scale : 0.0; }

class Net {
 public:
  explicit Net(const Field<Vec3>& q) : q_(q) {
    const GridRange& d = q.domain();
    if (d.kind() != CellKind::Vertex) throw DomainError("net positions must live on vertices");
    umin = d.min_corner().u();
    umax = d.max_corner().u();
    vmin = d.min_corner().v();
    vmax = d.max_corner().v();
  }

  Vec3 Q(int u, int v) const { return q_.at(GridAddress::vertex(u, v)); }
  /// q_1(u + 1/2, v)
  Vec3 q1(int u, int v) const { return Q(u + 1, v) - Q(u, v); }
  /// q_2(u, v + 1/2)
  Vec3 q2(int u, int v) const { return Q(u, v + 1) - Q(u, v); }
  /// q_12 on face (u + 1/2, v + 1/2)
  Vec3 q12(int u, int v) const { return Q(u + 1, v + 1) - Q(u + 1, v) - Q(u, v + 1) + Q(u, v); }

  void require_interior() const {
    if (umax - umin < 2 || vmax - vmin < 2)
      throw DomainError("asymptotic checks need at least 3 vertices along each axis");
  }

  int umin, umax, vmin, vmax;

 private:
  const Field<Vec3>& q_;
};

}  // namespace

ValidationReport is_asymptotic(const Field<Vec3>& q, double tol) {
  const Net n(q);
  n.require_interior();
  double worst = 0.0;
  for (int u = n.umin + 1; u < n.umax; ++u) {
    for (int v = n.vmin + 1; v < n.vmax; ++v) {
      const Vec3 e1[2] = {n.q1(u, v), n.q1(u - 1, v)};
      const Vec3 e2[2] = {n.q2(u, v), n.q2(u, v - 1)};
      const Vec3 q11 = e1[0] - e1[1];
      const Vec3 q22 = e2[0] - e2[1];
      for (const Vec3& a : e1)
        for (const Vec3& b : e2) worst = std::max({worst, rel_det(a, b, q11), rel_det(a, b, q22)});
    }
  }
  ValidationReport r;
  r.max_cross_planarity_residual = worst;
  r.is_asymptotic = worst <= tol;
  if (!r.is_asymptotic) r.failure = "cross planarity";
  return r;
}

MetricAndNormal affine_metric_and_normal(const Field<Vec3>& q, double tol) {
  const Net n(q);
  const GridRange faces = q.domain().shrunk(Axis::U).shrunk(Axis::V);

  std::vector<double> m;
  std::vector<Vec3> w;
  m.reserve(faces.size());
  w.reserve(faces.size());
  Vec3 ref{};
  for (const GridAddress& f : faces.addresses()) {
    const int u = f.u(), v = f.v();
    const Vec3 a = n.q1(u, v), b = n.q2(u, v), c = n.q12(u, v);
    const double M = det(a, b, c);
    if (!(std::abs(M) > tol * norm(a) * norm(b) * norm(c)))
      throw DegenerateError("affine metric vanishes on face " + to_string(f));
    m.push_back(M);
    w.push_back(c);
    if (norm(c) > norm(ref)) ref = c;
  }

  bool parallel = true;
  for (const Vec3& c : w)
    if (norm(cross(c, ref)) > tol * norm(c) * norm(ref)) {
      parallel = false;
      break;
    }

  Vec3 dir = ref * (1.0 / norm(ref));
  const double ztol = tol;
  const double lead = std::abs(dir.z) > ztol ? dir.z : (std::abs(dir.x) > ztol ? dir.x : dir.y);
  if (lead < 0) dir = -dir;

  std::vector<double> omega(m.size());
  std::vector<Vec3> xi(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double mag = std::sqrt(std::abs(m[i]));
    omega[i] = (parallel && dot(w[i], dir) < 0) ? -mag : mag;
    xi[i] = w[i] * (1.0 / omega[i]);
  }
  return MetricAndNormal{Field<double>(faces, std::move(omega)), Field<Vec3>(faces, std::move(xi)), parallel,
                         parallel ? dir : Vec3{}};
}

namespace {

struct Derived {
  MetricAndNormal mn;
  Vec3 xi;
  double xi_residual = 0.0;
  // A(u, v) for interior u, B(u, v) for interior v, row-major as the vertex grid.
  std::vector<double> A, B;
  double independence = 0.0;
};

Derived derive(const Net& n, const Field<Vec3>& q, double tol) {
  Derived d{affine_metric_and_normal(q, tol), {}, 0.0, {}, {}, 0.0};
  Vec3 mean{};
  for (const Vec3& x : d.mn.xi.values()) mean += x;
  mean *= 1.0 / static_cast<double>(d.mn.xi.values().size());
  for (const Vec3& x : d.mn.xi.values()) d.xi_residual = std::max(d.xi_residual, norm(x - mean) / norm(mean));
  d.xi = mean;

  const int nv = n.vmax - n.vmin + 1;
  const std::size_t cells = static_cast<std::size_t>(n.umax - n.umin + 1) * nv;
  d.A.assign(cells, 0.0);
  d.B.assign(cells, 0.0);
  auto idx = [&](int u, int v) { return static_cast<std::size_t>(u - n.umin) * nv + (v - n.vmin); };

  for (int u = n.umin + 1; u < n.umax; ++u) {
    double lo = INFINITY, hi = -INFINITY, scale = 0.0;
    for (int v = n.vmin; v <= n.vmax; ++v) {
      const Vec3 a = n.q1(u - 1, v), b = n.q1(u, v);
      const double val = det(a, b, d.xi);
      d.A[idx(u, v)] = val;
      lo = std::min(lo, val);
      hi = std::max(hi, val);
      scale = std::max(scale, norm(a) * norm(b) * norm(d.xi));
    }
    if (scale > 0) d.independence = std::max(d.independence, (hi - lo) / scale);
  }
  for (int v = n.vmin + 1; v < n.vmax; ++v) {
    double lo = INFINITY, hi = -INFINITY, scale = 0.0;
    for (int u = n.umin; u <= n.umax; ++u) {
      const Vec3 a = n.q2(u, v - 1), b = n.q2(u, v);
      // B = -[q_2(v - 1/2), q_2(v + 1/2), xi]
      const double val = -det(a, b, d.xi);
      d.B[idx(u, v)] = val;
      lo = std::min(lo, val);
      hi = std::max(hi, val);
      scale = std::max(scale, norm(a) * norm(b) * norm(d.xi));
    }
    if (scale > 0) d.independence = std::max(d.independence, (hi - lo) / scale);
  }
  return d;
}

}  // namespace

ValidationReport verify_diias(const Field<Vec3>& q, double tol) {
  ValidationReport r = is_asymptotic(q, tol);
  if (!r.is_asymptotic) return r;

  const Net n(q);
  const Derived d = derive(n, q, tol);
  r.xi_estimate = d.xi;
  r.max_xi_residual = d.xi_residual;
  r.max_independence_residual = d.independence;

  const int nv = n.vmax - n.vmin + 1;
  auto idx = [&](int u, int v) { return static_cast<std::size_t>(u - n.umin) * nv + (v - n.vmin); };
  // Omega on face (u + su/2, v + sv/2), su, sv = +-1
  auto W = [&](int u, int v, int su, int sv) {
    return d.mn.omega.at(GridAddress{2 * u + su, 2 * v + sv});
  };

  for (int u = n.umin + 1; u < n.umax; ++u) {
    for (int v = n.vmin + 1; v < n.vmax; ++v) {
      const double A = d.A[idx(u, v)], B = d.B[idx(u, v)];
      const Vec3 q11 = n.q1(u, v) - n.q1(u - 1, v);
      const Vec3 q22 = n.q2(u, v) - n.q2(u, v - 1);
      for (int su : {1, -1}) {
        for (int sv : {1, -1}) {
          const double w = W(u, v, su, sv);
          const Vec3 e1 = su > 0 ? n.q1(u, v) : n.q1(u - 1, v);
          const Vec3 e2 = sv > 0 ? n.q2(u, v) : n.q2(u, v - 1);
          // second differences may vanish, so the edges set the scale too
          const double edges = norm(e1) + norm(e2);

          // q_11 = Omega_1(u, v+sv/2) / Omega * q_1(u+su/2, v) + A / Omega * q_2(u, v+sv/2)
          const double w1 = W(u, v, 1, sv) - W(u, v, -1, sv);
          const Vec3 t1 = e1 * (w1 / w), t2 = e2 * (A / w);
          r.max_structural_residual = std::max(
              r.max_structural_residual, rel_vec(q11 - t1 - t2, edges + norm(q11) + norm(t1) + norm(t2)));

          // q_22 = Omega_2(u+su/2, v) / Omega * q_2(u, v+sv/2) + B / Omega * q_1(u+su/2, v)
          const double w2 = W(u, v, su, 1) - W(u, v, su, -1);
          const Vec3 s1 = e2 * (w2 / w), s2 = e1 * (B / w);
          r.max_structural_residual = std::max(
              r.max_structural_residual, rel_vec(q22 - s1 - s2, edges + norm(q22) + norm(s1) + norm(s2)));

          const double w2p = W(u, v, 1, 1) - W(u, v, 1, -1);
          const Vec3 p1 = e2 * (w2p / w);
          r.max_structural_residual_fixed_index =
              std::max(r.max_structural_residual_fixed_index,
                       rel_vec(q22 - p1 - s2, edges + norm(q22) + norm(p1) + norm(s2)));
        }
      }
      const double l1 = W(u, v, 1, -1) * W(u, v, -1, 1);
      const double l2 = W(u, v, 1, 1) * W(u, v, -1, -1);
      const double scale = std::abs(l1) + std::abs(l2) + std::abs(A * B);
      if (scale > 0)
        r.max_compatibility_residual =
            std::max(r.max_compatibility_residual, std::abs(l1 - l2 - A * B) / scale);
    }
  }

  if (!d.mn.constant_direction || r.max_xi_residual > tol)
    r.failure = "constant affine normal";
  else if (r.max_independence_residual > tol)
    r.failure = "cubic form independence";
  else if (r.max_structural_residual > tol)
    r.failure = "structural equations";
  else if (r.max_compatibility_residual > tol)
    r.failure = "compatibility";
  r.is_diias = r.failure.empty();
  return r;
}

QuadNet net_from_points(const Field<Vec3>& q, double tol) {
  const ValidationReport r = verify_diias(q, tol);
  if (!r.is_diias)
    throw ValidationError(fmt::format("net is not a discrete affine sphere: {} check failed", r.failure));

  const Net n(q);
  Derived d = derive(n, q, tol);
  const int nv = n.vmax - n.vmin + 1, nu = n.umax - n.umin + 1;
  auto idx = [&](int u, int v) { return static_cast<std::size_t>(u - n.umin) * nv + (v - n.vmin); };

  Sequence A{n.umin + 1, {}}, B{n.vmin + 1, {}};
  for (int u = n.umin + 1; u < n.umax; ++u) {
    double s = 0;
    for (int v = n.vmin; v <= n.vmax; ++v) s += d.A[idx(u, v)];
    A.values.push_back(s / nv);
  }
  for (int v = n.vmin + 1; v < n.vmax; ++v) {
    double s = 0;
    for (int u = n.umin; u <= n.umax; ++u) s += d.B[idx(u, v)];
    B.values.push_back(s / nu);
  }
  return QuadNet{q, std::move(d.mn.omega), d.xi, std::move(A), std::move(B)};
}

}  // namespace diias
