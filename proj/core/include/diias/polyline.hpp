#pragma once

#include <span>
#include <string>
#include <vector>

#include "diias/vec.hpp"

namespace diias {

/// Planar polygonal line indexed by consecutive integers starting at start_index.
class Polyline2 {
 public:
  /// Throws DomainError for fewer than 2 vertices, DegenerateError for a zero-length
  /// edge, and Error for non-finite coordinates.
  Polyline2(int start_index, std::vector<Vec2> vertices);

  int first() const { return start_; }
  int last() const { return start_ + static_cast<int>(pts_.size()) - 1; }
  int size() const { return static_cast<int>(pts_.size()); }
  bool contains(int i) const { return i >= first() && i <= last(); }
  /// i has both neighbours i - 1 and i + 1.
  bool is_interior(int i) const { return i > first() && i < last(); }

  const Vec2& operator[](int i) const;
  /// Edge vector (i + 1/2): p(i + 1) - p(i).
  Vec2 edge(int i) const;

  std::span<const Vec2> points() const& { return pts_; }
  std::vector<Vec2> points() && { return std::move(pts_); }

  friend bool operator==(const Polyline2&, const Polyline2&) = default;

 private:
  int start_;
  std::vector<Vec2> pts_;
};

/// Sign of [b - a, c - a]; 0 when |[b - a, c - a]| <= tol.
int orientation(const Vec2& a, const Vec2& b, const Vec2& c, double tol = 0.0);

/// Threshold for planar cross products of the pair: factor * (bbox diagonal)^2.
double cross_tolerance(const Polyline2& alpha, const Polyline2& beta);
double cross_tolerance(const Polyline2& line);

enum class ViolationKind {
  AngleAlpha,           ///< alpha(u) not strictly inside angle alpha(u-1) beta(v) alpha(u+1)
  AngleBeta,            ///< beta(v) not strictly inside angle beta(v-1) alpha(u) beta(v+1)
  ParallelEdges,        ///< alpha edge (u+1/2) parallel to beta edge (v+1/2)
  CollinearDegenerate,  ///< the angle of a triplet seen from a point is 0 or 180 degrees
};

std::string to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  /// AngleBeta: the viewing point alpha(u). AngleAlpha: triplet centre u.
  /// ParallelEdges: the edge (u + 1/2). CollinearDegenerate: see `triplet_of_beta`.
  int alpha_index;
  int beta_index;
  /// For CollinearDegenerate: true when the triplet belongs to beta.
  bool triplet_of_beta = false;

  std::string describe() const;
  friend bool operator==(const Violation&, const Violation&) = default;
};

struct AdmissibilityReport {
  bool admissible = true;
  std::vector<Violation> violations;

  /// No parallel edges: every quadrangle has a nonzero metric.
  bool generic() const;
};

/// Checks the angle restrictions on every (point, triplet) pair in both
/// directions and flags parallel alpha/beta edges. Boundary indices without a
/// triplet are skipped. Throws DegenerateError when an alpha vertex coincides
/// with a beta vertex.
AdmissibilityReport check_admissible(const Polyline2& alpha, const Polyline2& beta);

/// True iff line(v-1) and line(v+1) lie strictly on the same side of the line
/// through line(v) with direction `direction`. Throws DomainError at boundary
/// indices and DegenerateError when a neighbour sits on the dividing line.
bool discretely_parallel(const Vec2& direction, const Polyline2& line, int v, double tol);

}  // namespace diias
