#include "diias/patches.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "diias/error.hpp"

namespace diias {

BilinearPatch::BilinearPatch(const Vec3& p00, const Vec3& p10, const Vec3& p01, const Vec3& p11, GridAddress face)
    : c_{p00, p10, p01, p11}, face_(face) {}

Vec3 BilinearPatch::eval_unchecked(double s, double t) const {
  const double s0 = 1.0 - s, t0 = 1.0 - t;
  return (s0 * t0) * c_[0] + (s * t0) * c_[1] + (s0 * t) * c_[2] + (s * t) * c_[3];
}

Vec3 BilinearPatch::eval(double s, double t) const {
  if (!(s >= 0.0 && s <= 1.0 && t >= 0.0 && t <= 1.0))
    throw DomainError("bilinear patch parameters must lie in [0, 1]");
  return eval_unchecked(s, t);
}

Vec3 BilinearPatch::d_ds(double, double t) const { return (1.0 - t) * (c_[1] - c_[0]) + t * (c_[3] - c_[2]); }
Vec3 BilinearPatch::d_dt(double s, double) const { return (1.0 - s) * (c_[2] - c_[0]) + s * (c_[3] - c_[1]); }
Vec3 BilinearPatch::normal(double s, double t) const { return cross(d_ds(s, t), d_dt(s, t)); }

BilinearPatch patch_of(const Field<Vec3>& q, const GridAddress& face) {
  if (face.kind() != CellKind::Face) throw DomainError("patch_of: " + to_string(face) + " is not a face");
  const int u = face.u(), v = face.v();
  auto Q = [&](int a, int b) {
    const Vec3* p = q.find(GridAddress::vertex(a, b));
    if (p == nullptr) throw DomainError("patch_of: face " + to_string(face) + " outside the net");
    return *p;
  };
  return BilinearPatch(Q(u, v), Q(u + 1, v), Q(u, v + 1), Q(u + 1, v + 1), face);
}

QuadMesh tessellate(const BilinearPatch& patch, int n) {
  if (n < 1) throw DomainError("tessellate: subdivision count must be at least 1");
  QuadMesh m;
  m.vertices.reserve(static_cast<std::size_t>(n + 1) * (n + 1));
  // vertex (i, j) at index j * (n + 1) + i
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) {
      // exact endpoints so shared edges of neighbouring tessellations coincide
      const double s = i == n ? 1.0 : static_cast<double>(i) / n;
      const double t = j == n ? 1.0 : static_cast<double>(j) / n;
      m.vertices.push_back(patch.eval_unchecked(s, t));
    }
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int a = j * (n + 1) + i;
      m.quads.push_back({a, a + 1, a + n + 2, a + n + 1});
    }
  return m;
}

namespace {

struct Param {
  double s0, s1, t0, t1;
};

struct Box {
  Vec3 lo, hi;
  double diagonal() const { return norm(hi - lo); }
  Vec3 centre() const { return 0.5 * (lo + hi); }
};

Box box_of(const BilinearPatch& p, const Param& r) {
  const Vec3 c[4] = {p.eval_unchecked(r.s0, r.t0), p.eval_unchecked(r.s1, r.t0), p.eval_unchecked(r.s0, r.t1),
                     p.eval_unchecked(r.s1, r.t1)};
  Box b{c[0], c[0]};
  for (const Vec3& x : c) {
    b.lo = {std::min(b.lo.x, x.x), std::min(b.lo.y, x.y), std::min(b.lo.z, x.z)};
    b.hi = {std::max(b.hi.x, x.x), std::max(b.hi.y, x.y), std::max(b.hi.z, x.z)};
  }
  return b;
}

// Largest per-axis separation of two boxes; <= 0 when they overlap.
double gap(const Box& a, const Box& b) {
  return std::max({a.lo.x - b.hi.x, b.lo.x - a.hi.x, a.lo.y - b.hi.y, b.lo.y - a.hi.y, a.lo.z - b.hi.z,
                   b.lo.z - a.hi.z});
}

std::array<Param, 4> split(const Param& r) {
  const double sm = 0.5 * (r.s0 + r.s1), tm = 0.5 * (r.t0 + r.t1);
  return {Param{r.s0, sm, r.t0, tm}, Param{sm, r.s1, r.t0, tm}, Param{r.s0, sm, tm, r.t1}, Param{sm, r.s1, tm, r.t1}};
}

// Corners of p1 that are also corners of p2, as (s, t) in each parameter square.
struct SharedCorners {
  std::vector<std::array<double, 4>> at;

  SharedCorners(const BilinearPatch& p1, const BilinearPatch& p2) {
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k)
        if (p1.corner(i & 1, i >> 1) == p2.corner(k & 1, k >> 1))
          at.push_back({double(i & 1), double(i >> 1), double(k & 1), double(k >> 1)});
  }

  // Within radius of a shared corner in either square (max norm).
  bool near(const double x[4], double radius) const {
    for (const auto& c : at)
      if (std::max(std::abs(x[0] - c[0]), std::abs(x[1] - c[1])) < radius ||
          std::max(std::abs(x[2] - c[2]), std::abs(x[3] - c[3])) < radius)
        return true;
    return false;
  }

  // Every point of one of the two parameter boxes is near a shared corner.
  bool covers(const Param& a, const Param& b, double radius) const {
    auto in = [&](const Param& r, double cs, double ct) {
      return std::max(std::abs(r.s0 - cs), std::abs(r.s1 - cs)) < radius &&
             std::max(std::abs(r.t0 - ct), std::abs(r.t1 - ct)) < radius;
    };
    for (const auto& c : at)
      if (in(a, c[0], c[1]) || in(b, c[2], c[3])) return true;
    return false;
  }
};

// Gauss-Newton with the minimum-norm step on p1(s, t) - p2(s', t'), started at the
// centres of the two parameter boxes and clamped to [tol, 1 - tol]. A small
// Levenberg damping keeps the step finite where the patches are nearly tangent.
// Without shared corners a gap of tol / 4 is accepted. With them the iteration
// must reach a root at rounding level, off the clamp and outside sqrt(tol) of
// every shared corner: patches are tangent at a shared corner, and their gap
// grows only quadratically away from it.
std::optional<Vec3> refine(const BilinearPatch& p1, const BilinearPatch& p2, const Param& a, const Param& b, double tol,
                           const SharedCorners& shared) {
  double size = 0.0;
  for (int i = 0; i < 4; ++i)
    for (const Vec3& c : {p1.corner(i & 1, i >> 1), p2.corner(i & 1, i >> 1)})
      size = std::max({size, std::abs(c.x), std::abs(c.y), std::abs(c.z)});
  const double accept = shared.at.empty() ? 0.25 * tol : 64 * std::numeric_limits<double>::epsilon() * size;

  double x[4] = {0.5 * (a.s0 + a.s1), 0.5 * (a.t0 + a.t1), 0.5 * (b.s0 + b.s1), 0.5 * (b.t0 + b.t1)};
  for (int it = 0; it < 60; ++it) {
    const Vec3 f = p1.eval_unchecked(x[0], x[1]) - p2.eval_unchecked(x[2], x[3]);
    if (norm(f) <= accept) {
      if (shared.at.empty()) return p1.eval_unchecked(x[0], x[1]);
      const bool inside = std::ranges::all_of(x, [&](double v) { return v > tol && v < 1.0 - tol; });
      if (!inside || shared.near(x, std::sqrt(tol))) return std::nullopt;
      return p1.eval_unchecked(x[0], x[1]);
    }
    const Vec3 j[4] = {p1.d_ds(x[0], x[1]), p1.d_dt(x[0], x[1]), -1.0 * p2.d_ds(x[2], x[3]), -1.0 * p2.d_dt(x[2], x[3])};
    Mat3 g;
    for (const Vec3& c : j) {
      const double v[3] = {c.x, c.y, c.z};
      for (int r = 0; r < 3; ++r)
        for (int k = 0; k < 3; ++k) g.m[r][k] += v[r] * v[k];
    }
    const double damping = 1e-12 * (g.m[0][0] + g.m[1][1] + g.m[2][2]);
    for (int r = 0; r < 3; ++r) g.m[r][r] += damping;
    if (!(std::abs(g.determinant()) > 0.0)) return std::nullopt;
    const Vec3 y = g.inverse() * f;
    for (int k = 0; k < 4; ++k) x[k] = std::clamp(x[k] - dot(j[k], y), tol, 1.0 - tol);
  }
  return std::nullopt;
}

}  // namespace

IntersectionResult patches_intersect(const BilinearPatch& p1, const BilinearPatch& p2, double tol, int max_depth) {
  if (!(tol > 0.0) || tol >= 0.5) throw DomainError("patches_intersect: tol must lie in (0, 1/2)");
  constexpr std::size_t kNodeBudget = 4'000'000;
  constexpr int kRefineDepth = 16;

  struct Node {
    Param a, b;
    int depth;
  };
  const SharedCorners shared(p1, p2);
  const Param full{tol, 1.0 - tol, tol, 1.0 - tol};
  std::vector<Node> stack;
  if (gap(box_of(p1, full), box_of(p2, full)) <= tol) stack.push_back({full, full, 0});
  bool truncated = false;
  std::size_t visited = 0;

  while (!stack.empty()) {
    const Node n = stack.back();
    stack.pop_back();
    if (++visited > kNodeBudget) {
      truncated = true;
      break;
    }
    if (shared.covers(n.a, n.b, std::sqrt(tol))) continue;
    if (n.depth <= kRefineDepth)
      if (auto w = refine(p1, p2, n.a, n.b, tol, shared)) return {IntersectionOutcome::Intersecting, *w};
    const Box ba = box_of(p1, n.a), bb = box_of(p2, n.b);
    const double da = ba.diagonal(), db = bb.diagonal();
    if (da <= tol && db <= tol) {
      if (shared.at.empty()) return {IntersectionOutcome::Intersecting, 0.5 * (ba.centre() + bb.centre())};
      if (auto w = refine(p1, p2, n.a, n.b, tol, shared)) return {IntersectionOutcome::Intersecting, *w};
      truncated = true;
      continue;
    }
    if (n.depth >= max_depth) {
      truncated = true;
      continue;
    }
    // split the larger box; children that stay within tol go on the stack closest last, so they are popped first
    const bool split_a = da >= db;
    std::array<std::pair<double, Node>, 4> kids;
    int count = 0;
    for (const Param& part : split(split_a ? n.a : n.b)) {
      const Node child = split_a ? Node{part, n.b, n.depth + 1} : Node{n.a, part, n.depth + 1};
      const double g = split_a ? gap(box_of(p1, part), bb) : gap(ba, box_of(p2, part));
      if (g <= tol) kids[count++] = {g, child};
    }
    std::sort(kids.begin(), kids.begin() + count, [](const auto& x, const auto& y) { return x.first > y.first; });
    for (int i = 0; i < count; ++i) stack.push_back(kids[i].second);
  }
  return {truncated ? IntersectionOutcome::Inconclusive : IntersectionOutcome::Disjoint, std::nullopt};
}

ModelNetRatios model_net_ratios(double s1, double s2, double a, double b, double c, double d) {
  if (s2 * a == 0.0) throw DegenerateError("model_net_ratios: s2 * a must be nonzero");
  return {-(s1 * b) / (s2 * a), -(s1 * d) / (s2 * a), c / a};
}

}  // namespace diias
