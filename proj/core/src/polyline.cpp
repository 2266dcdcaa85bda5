#include "diias/polyline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "diias/error.hpp"
#include "diias/tolerance.hpp"

namespace diias {

Polyline2::Polyline2(int start_index, std::vector<Vec2> vertices)
    : start_(start_index), pts_(std::move(vertices)) {
  if (pts_.size() < 2) throw DomainError("polyline needs at least 2 vertices");
  for (const Vec2& p : pts_)
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw Error("polyline has a non-finite vertex");
  for (std::size_t i = 0; i + 1 < pts_.size(); ++i)
    if (pts_[i] == pts_[i + 1])
      throw DegenerateError("polyline has a zero-length edge at index " +
                            std::to_string(start_ + static_cast<int>(i)) + "+1/2");
}

const Vec2& Polyline2::operator[](int i) const {
  if (!contains(i)) throw DomainError("polyline index " + std::to_string(i) + " out of range");
  return pts_[static_cast<std::size_t>(i - start_)];
}

Vec2 Polyline2::edge(int i) const { return (*this)[i + 1] - (*this)[i]; }

int orientation(const Vec2& a, const Vec2& b, const Vec2& c, double tol) {
  const double s = cross(b - a, c - a);
  if (std::abs(s) <= tol) return 0;
  return s > 0 ? 1 : -1;
}

namespace {

struct Box {
  double xmin = std::numeric_limits<double>::infinity();
  double ymin = std::numeric_limits<double>::infinity();
  double xmax = -std::numeric_limits<double>::infinity();
  double ymax = -std::numeric_limits<double>::infinity();

  void add(const Polyline2& l) {
    for (const Vec2& p : l.points()) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
  }
  double diagonal() const { return std::hypot(xmax - xmin, ymax - ymin); }
};

int sign_of(double v, double tol) {
  if (std::abs(v) <= tol) return 0;
  return v > 0 ? 1 : -1;
}

// Strictly inside the convex angle (a - p, c - p) with b - p between them.
// Returns 0 when inside, 1 when outside, 2 when the angle is degenerate.
int angle_test(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c, double tol) {
  const Vec2 pa = a - p, pb = b - p, pc = c - p;
  const int s = sign_of(cross(pa, pc), tol);
  if (s == 0) return 2;
  if (sign_of(cross(pa, pb), tol) != s || sign_of(cross(pb, pc), tol) != s) return 1;
  return 0;
}

}  // namespace

double cross_tolerance(const Polyline2& alpha, const Polyline2& beta) {
  Box box;
  box.add(alpha);
  box.add(beta);
  const double d = box.diagonal();
  return fp_tolerance(d * d);
}

double cross_tolerance(const Polyline2& line) {
  Box box;
  box.add(line);
  const double d = box.diagonal();
  return fp_tolerance(d * d);
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::AngleAlpha: return "angle-alpha";
    case ViolationKind::AngleBeta: return "angle-beta";
    case ViolationKind::ParallelEdges: return "parallel-edges";
    case ViolationKind::CollinearDegenerate: return "collinear-degenerate";
  }
  return "unknown";
}

std::string Violation::describe() const {
  auto idx = [](int i) { return std::to_string(i); };
  const int u = alpha_index, v = beta_index;
  switch (kind) {
    case ViolationKind::AngleBeta:
      return "angle-beta: beta(" + idx(v) + ") is not strictly inside the angle beta(" + idx(v - 1) +
             ") alpha(" + idx(u) + ") beta(" + idx(v + 1) + ")";
    case ViolationKind::AngleAlpha:
      return "angle-alpha: alpha(" + idx(u) + ") is not strictly inside the angle alpha(" + idx(u - 1) +
             ") beta(" + idx(v) + ") alpha(" + idx(u + 1) + ")";
    case ViolationKind::ParallelEdges:
      return "parallel-edges: alpha edge " + idx(u) + "+1/2 is parallel to beta edge " + idx(v) +
             "+1/2 (zero metric on that quadrangle)";
    case ViolationKind::CollinearDegenerate:
      return triplet_of_beta
                 ? "collinear-degenerate: alpha(" + idx(u) + ") is collinear with beta(" + idx(v - 1) +
                       ") and beta(" + idx(v + 1) + ")"
                 : "collinear-degenerate: beta(" + idx(v) + ") is collinear with alpha(" + idx(u - 1) +
                       ") and alpha(" + idx(u + 1) + ")";
  }
  return "unknown violation";
}

bool AdmissibilityReport::generic() const {
  return std::none_of(violations.begin(), violations.end(), [](const Violation& v) {
    return v.kind == ViolationKind::ParallelEdges;
  });
}

AdmissibilityReport check_admissible(const Polyline2& alpha, const Polyline2& beta) {
  const double tol = cross_tolerance(alpha, beta);
  AdmissibilityReport report;

  for (int u = alpha.first(); u <= alpha.last(); ++u)
    for (int v = beta.first(); v <= beta.last(); ++v)
      if (alpha[u] == beta[v])
        throw DegenerateError("alpha(" + std::to_string(u) + ") coincides with beta(" +
                              std::to_string(v) + ")");

  // beta triplets seen from alpha points
  for (int u = alpha.first(); u <= alpha.last(); ++u) {
    for (int v = beta.first() + 1; v < beta.last(); ++v) {
      const int r = angle_test(alpha[u], beta[v - 1], beta[v], beta[v + 1], tol);
      if (r == 1) report.violations.push_back({ViolationKind::AngleBeta, u, v, true});
      if (r == 2) report.violations.push_back({ViolationKind::CollinearDegenerate, u, v, true});
    }
  }
  // alpha triplets seen from beta points
  for (int v = beta.first(); v <= beta.last(); ++v) {
    for (int u = alpha.first() + 1; u < alpha.last(); ++u) {
      const int r = angle_test(beta[v], alpha[u - 1], alpha[u], alpha[u + 1], tol);
      if (r == 1) report.violations.push_back({ViolationKind::AngleAlpha, u, v, false});
      if (r == 2) report.violations.push_back({ViolationKind::CollinearDegenerate, u, v, false});
    }
  }
  for (int u = alpha.first(); u < alpha.last(); ++u)
    for (int v = beta.first(); v < beta.last(); ++v)
      if (std::abs(cross(alpha.edge(u), beta.edge(v))) <= tol)
        report.violations.push_back({ViolationKind::ParallelEdges, u, v, false});

  report.admissible = report.violations.empty();
  return report;
}

bool discretely_parallel(const Vec2& direction, const Polyline2& line, int v, double tol) {
  if (!line.is_interior(v))
    throw DomainError("discretely_parallel: index " + std::to_string(v) + " has no two neighbours");
  const Vec2& c = line[v];
  const int before = sign_of(cross(direction, line[v - 1] - c), tol);
  const int after = sign_of(cross(direction, line[v + 1] - c), tol);
  if (before == 0 || after == 0)
    throw DegenerateError("discretely_parallel: neighbour of index " + std::to_string(v) +
                          " lies on the dividing line");
  return before == after;
}

}  // namespace diias
