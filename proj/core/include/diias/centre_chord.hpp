#pragma once

#include <optional>
#include <vector>

#include "diias/grid.hpp"
#include "diias/polyline.hpp"
#include "diias/tolerance.hpp"
#include "diias/vec.hpp"

namespace diias {

/// Values indexed by consecutive integers; empty when the index range had no interior.
struct Sequence {
  int first = 0;
  std::vector<double> values;

  bool empty() const { return values.empty(); }
  int last() const { return first + static_cast<int>(values.size()) - 1; }
  bool contains(int i) const { return !empty() && i >= first && i <= last(); }
  double at(int i) const;
  double max_abs() const;

  friend bool operator==(const Sequence&, const Sequence&) = default;
};

/// A discrete affine sphere candidate: vertex positions plus the per-face metric,
/// the constant affine normal, and the cubic-form sequences A(u), B(v).
struct QuadNet {
  Field<Vec3> q;
  Field<double> omega;
  Vec3 xi{0, 0, 1};
  Sequence A;
  Sequence B;

  const GridRange& domain() const { return q.domain(); }
};

struct CentreChordData {
  Polyline2 alpha;
  Polyline2 beta;
  Field<Vec2> x;
  Field<Vec2> y;
  Field<double> z;
  double z_base = 0.0;
  /// Vertex where z takes the value z_base.
  GridAddress anchor;
};

/// Vertex range alpha.first..alpha.last by beta.first..beta.last.
GridRange vertex_domain(const Polyline2& alpha, const Polyline2& beta);

/// Vertex carrying the integration constant of z: the index origin when it is in
/// the domain, otherwise the minimal corner.
GridAddress z_anchor(const GridRange& vertices);

/// Signed Omega(u+1/2, v+1/2) = 1/4 [alpha_1(u+1/2), beta_2(v+1/2)] on every face.
Field<double> metric_field(const Polyline2& alpha, const Polyline2& beta);

/// x = (alpha + beta) / 2, y = (beta - alpha) / 2 and the height z integrated from
/// z_1 = [x_1, y], z_2 = [x_2, y]. Path independence is checked; a mismatch throws
/// ValidationError.
CentreChordData centre_chord_data(const Polyline2& alpha, const Polyline2& beta, double z_base = 0.0);

/// A(u) = 1/4 [alpha_1(u-1/2), alpha_1(u+1/2)] at interior u.
Sequence cubic_A(const Polyline2& alpha);
/// B(v) = -1/4 [beta_2(v-1/2), beta_2(v+1/2)] at interior v.
Sequence cubic_B(const Polyline2& beta);

/// Centre-chord net q = (x, z) with xi = (0, 0, 1).
/// Throws DegenerateError for coincident alpha/beta vertices or a face with Omega = 0
/// (parallel edges). Angle restrictions are not enforced here; see check_admissible.
QuadNet build_diias(const Polyline2& alpha, const Polyline2& beta, double z_base = 0.0);

struct Decomposition {
  Polyline2 alpha;
  Polyline2 beta;
  double z_base = 0.0;
};

/// Recovers (alpha, beta, z_base) whose centre-chord net is `net`. The pair may
/// have an alpha vertex on a beta vertex, which build_diias rejects.
/// Requires q_12 parallel to (0, 0, 1) on every face and nonzero Omega; the
/// translation freedom alpha + t, beta - t is fixed by the heights. Throws
/// ValidationError when the net is not a centre-chord net within tol (relative).
Decomposition decompose(const QuadNet& net, double tol = tolerance_factor());

}  // namespace diias
