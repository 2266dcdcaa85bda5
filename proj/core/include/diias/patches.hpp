#pragma once

#include <array>
#include <optional>
#include <vector>

#include "diias/centre_chord.hpp"
#include "diias/grid.hpp"
#include "diias/vec.hpp"

namespace diias {

/// Hyperbolic-paraboloid interpolant of one quadrangle,
/// BP(s, t) = q + s e1 + t e2 + s t twist on [0, 1]^2.
class BilinearPatch {
 public:
  /// Corners at (s, t) = (0, 0), (1, 0), (0, 1), (1, 1).
  BilinearPatch(const Vec3& p00, const Vec3& p10, const Vec3& p01, const Vec3& p11, GridAddress face = {});

  const Vec3& corner(int s, int t) const { return c_[s + 2 * t]; }
  Vec3 origin() const { return c_[0]; }
  Vec3 e1() const { return c_[1] - c_[0]; }
  Vec3 e2() const { return c_[2] - c_[0]; }
  Vec3 twist() const { return c_[3] - c_[1] - c_[2] + c_[0]; }
  GridAddress face() const { return face_; }

  /// Evaluated as a corner-weighted sum, so adjacent patches agree bitwise on shared edges.
  /// Throws DomainError outside [0, 1]^2.
  Vec3 eval(double s, double t) const;
  /// Same without the range check.
  Vec3 eval_unchecked(double s, double t) const;
  Vec3 d_ds(double s, double t) const;
  Vec3 d_dt(double s, double t) const;
  /// Unnormalised normal d_ds x d_dt.
  Vec3 normal(double s, double t) const;

 private:
  std::array<Vec3, 4> c_;
  GridAddress face_;
};

/// Patch of the face (u + 1/2, v + 1/2) given by its address. Throws DomainError outside.
BilinearPatch patch_of(const Field<Vec3>& q, const GridAddress& face);
inline BilinearPatch patch_of(const QuadNet& net, const GridAddress& face) { return patch_of(net.q, face); }

/// Throws DomainError outside [0, 1]^2.
inline Vec3 eval(const BilinearPatch& p, double s, double t) { return p.eval(s, t); }

struct QuadMesh {
  std::vector<Vec3> vertices;
  /// 0-based vertex indices, counter-clockwise in the (s, t) parameter plane.
  std::vector<std::array<int, 4>> quads;
};

/// (n + 1)^2 samples eval(i / n, j / n) and n^2 quads. Throws DomainError for n < 1.
QuadMesh tessellate(const BilinearPatch& patch, int n);

enum class IntersectionOutcome { Disjoint, Intersecting, Inconclusive };

struct IntersectionResult {
  IntersectionOutcome outcome = IntersectionOutcome::Disjoint;
  std::optional<Vec3> witness;

  bool intersects() const { return outcome == IntersectionOutcome::Intersecting; }
};

/// Bounding-box subdivision on the parameter squares shrunk to [tol, 1 - tol]^2.
/// Intersecting when two boxes no wider than tol overlap (witness: midpoint of
/// their centres), or when a Newton step from a box pair lands on a common point
/// within tol/4 (witness: that point). Patches tangent at a shared corner overlap
/// in many tiny boxes there, and the Newton step finds crossings further in.
/// Inconclusive when the depth or node budget runs out.
IntersectionResult patches_intersect(const BilinearPatch& p1, const BilinearPatch& p2, double tol,
                                     int max_depth = 40);

struct ModelNetRatios {
  double r1;  ///< z(-1, 1) / z(1, 1)
  double r2;  ///< z(-1, -1) / z(1, 1)
  double r3;  ///< z(1, -1) / z(1, 1)
};

/// Corner height ratios of a net with q(0,0) = 0, q(-1,0) = (s1,0,0),
/// q(1,0) = (0,s2,0), q(0,1) = (a,b,0), q(0,-1) = (c,d,0).
/// Throws DegenerateError when s2 * a == 0.
ModelNetRatios model_net_ratios(double s1, double s2, double a, double b, double c, double d);

}  // namespace diias
