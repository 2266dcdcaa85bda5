#include <gtest/gtest.h>

#include <algorithm>
#include <optional>
#include <random>

#include "corpus.hpp"
#include "oracles.hpp"
#include "diias/patches.hpp"

namespace diias {
namespace {

QuadNet ruled_example() {
  return build_diias(Polyline2(-1, {{-1, 3}, {0, 2}, {1, 5}}), Polyline2(-1, {{-1, 0}, {0, 0}, {1, 0}}));
}

// Closed forms in the global parameters (u, v) of the worked ruled example.
Vec3 closed_form(int face_u, double u, double v) {
  if (face_u < 0) return 0.5 * Vec3{u + v, 2 - u, -u - v + 0.5 * u * v};
  return 0.5 * Vec3{u + v, 2 + 3 * u, -u - v - 1.5 * u * v};
}

TEST(BilinearPatch, CornersAndFormula) {
  const BilinearPatch p({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 1});
  EXPECT_EQ(p.eval(0, 0), (Vec3{0, 0, 0}));
  EXPECT_EQ(p.eval(1, 1), (Vec3{1, 1, 1}));
  EXPECT_EQ(p.twist(), (Vec3{0, 0, 1}));
  EXPECT_EQ(p.eval(0.5, 0.5), (Vec3{0.5, 0.5, 0.25}));
  EXPECT_EQ(p.normal(0, 0), (Vec3{0, 0, 1}));
  EXPECT_THROW(p.eval(1.5, 0), DomainError);
  EXPECT_THROW(p.eval(0, -0.1), DomainError);
}

TEST(BilinearPatch, ZeroTwistIsPlanar) {
  const BilinearPatch p({0, 0, 0}, {2, 0, 1}, {0, 1, 0}, {2, 1, 1});
  EXPECT_EQ(p.twist(), (Vec3{}));
  const Vec3 n = cross(p.e1(), p.e2());
  for (double s : {0.1, 0.5, 0.9})
    for (double t : {0.2, 0.7}) EXPECT_NEAR(dot(p.eval(s, t) - p.origin(), n), 0.0, 1e-15);
}

TEST(PatchOf, RuledExampleClosedForms) {
  const QuadNet n = ruled_example();
  for (const GridAddress& f : GridRange::faces(-1, 0, -1, 0).addresses()) {
    const BilinearPatch p = patch_of(n, f);
    for (int i = 0; i <= 4; ++i)
      for (int j = 0; j <= 4; ++j) {
        const double s = i / 4.0, t = j / 4.0;
        const Vec3 want = closed_form(f.u(), f.u() + s, f.v() + t);
        EXPECT_LE(norm(p.eval(s, t) - want), 1e-12) << to_string(f) << " " << s << " " << t;
      }
  }
  EXPECT_LE(norm(patch_of(n, GridAddress::face(0, 0)).eval(0.5, 0.5) - Vec3{0.5, 1.75, -11.0 / 16.0}), 1e-15);
  EXPECT_THROW(patch_of(n, GridAddress::face(1, 0)), DomainError);
}

// Faces sharing u are one hyperbolic paraboloid: same twist, same edge vectors.
TEST(PatchOf, RuledExampleColumnsExtendEachOther) {
  const QuadNet n = ruled_example();
  for (int u : {-1, 0}) {
    const BilinearPatch lo = patch_of(n, GridAddress::face(u, -1)), hi = patch_of(n, GridAddress::face(u, 0));
    EXPECT_LE(norm(lo.twist() - hi.twist()), 1e-12);
    EXPECT_LE(norm(lo.e1() + lo.twist() - hi.e1()), 1e-12);
    for (double s : {0.0, 0.3, 0.5, 1.0}) EXPECT_LE(norm(lo.eval(s, 1) - hi.eval(s, 0)), 1e-12);
    // hi is lo's formula continued to t in [1, 2]
    for (double s : {0.25, 0.75})
      for (double t : {0.0, 0.5, 1.0}) EXPECT_LE(norm(lo.eval_unchecked(s, 1 + t) - hi.eval(s, t)), 1e-12);
  }
}

TEST(Tessellate, Counts) {
  const BilinearPatch p = patch_of(ruled_example(), GridAddress::face(-1, -1));
  const QuadMesh m1 = tessellate(p, 1);
  EXPECT_EQ(m1.vertices.size(), 4u);
  EXPECT_EQ(m1.quads.size(), 1u);
  const QuadMesh m2 = tessellate(p, 2);
  EXPECT_EQ(m2.vertices.size(), 9u);
  EXPECT_EQ(m2.vertices[4], p.eval(0.5, 0.5));
  EXPECT_THROW(tessellate(p, 0), DomainError);
}

TEST(Tessellate, SharedEdgeVerticesCoincideExactly) {
  const QuadNet n = ruled_example();
  const int k = 5;
  const QuadMesh a = tessellate(patch_of(n, GridAddress::face(-1, -1)), k);
  const QuadMesh b = tessellate(patch_of(n, GridAddress::face(0, -1)), k);
  for (int j = 0; j <= k; ++j) EXPECT_EQ(a.vertices[j * (k + 1) + k], b.vertices[j * (k + 1)]);
}

TEST(PatchesIntersect, TrivialCases) {
  const BilinearPatch p({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0.5});
  const BilinearPatch far({5, 0, 0}, {6, 0, 0}, {5, 1, 0}, {6, 1, 0.5});
  EXPECT_EQ(patches_intersect(p, far, 1e-6).outcome, IntersectionOutcome::Disjoint);
  const double tol = 1e-6;
  const Vec3 up{0, 0, tol / 10};
  const BilinearPatch lifted(p.corner(0, 0) + up, p.corner(1, 0) + up, p.corner(0, 1) + up, p.corner(1, 1) + up);
  const IntersectionResult r = patches_intersect(p, lifted, tol);
  EXPECT_TRUE(r.intersects());
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_LE(std::abs(r.witness->z - (r.witness->x * r.witness->y * 0.5)), 1e-5);
}

TEST(PatchesIntersect, CrossingSaddles) {
  const BilinearPatch a({-1, -1, 0}, {1, -1, 0}, {-1, 1, 0}, {1, 1, 0});
  const BilinearPatch b({-1, -1, -1}, {1, -1, 1}, {-1, 1, 1}, {1, 1, -1});
  EXPECT_TRUE(patches_intersect(a, b, 1e-6).intersects());
}

// Parameters of a planar point over a patch whose base is a parallelogram.
std::optional<Vec3> height_over(const BilinearPatch& p, const Vec3& w) {
  const Vec2 e1 = planar(p.e1()), e2 = planar(p.e2()), d = planar(w - p.origin());
  const double det = cross(e1, e2);
  const double s = cross(d, e2) / det, t = cross(e1, d) / det;
  if (s < 0 || s > 1 || t < 0 || t > 1) return std::nullopt;
  return p.eval(s, t);
}

bool is_singular(const std::vector<EdgeRef>& edges, const EdgeRef& e) {
  return std::find(edges.begin(), edges.end(), e) != edges.end();
}

// The diagonal pair across the two cusp edges: NE with SW when the cuspidal
// edges run west and north (or east and south), NW with SE otherwise.
TEST(PatchesIntersect, SwallowtailDiagonalPatchesCross) {
  testing::PairGenerator gen(606, {3, 8, true});
  int found = 0;
  for (int k = 0; k < 300; ++k) {
    const testing::CorpusCase c = gen.next();
    const SingularityReport r = analyze_singularities(c.alpha, c.beta, c.net);
    for (const GridAddress& v : r.swallowtails) {
      const int u = v.u(), w = v.v();
      const auto P = [&](int du, int dv) { return patch_of(c.net, GridAddress::face(u + du, w + dv)); };
      const auto& s = r.singular_edges;
      const bool ne = (is_singular(s, EdgeRef::u_edge(u - 1, w)) && is_singular(s, EdgeRef::v_edge(u, w))) ||
                      (is_singular(s, EdgeRef::u_edge(u, w)) && is_singular(s, EdgeRef::v_edge(u, w - 1)));
      const BilinearPatch a = ne ? P(0, 0) : P(-1, 0), b = ne ? P(-1, -1) : P(0, -1);
      const IntersectionResult x = patches_intersect(a, b, 1e-6);
      ASSERT_TRUE(x.intersects()) << to_string(v);
      ASSERT_TRUE(x.witness.has_value());
      // the witness sits on both patches and away from the shared vertex
      const auto za = height_over(a, *x.witness), zb = height_over(b, *x.witness);
      ASSERT_TRUE(za && zb);
      EXPECT_NEAR(za->z, x.witness->z, 1e-9);
      EXPECT_NEAR(zb->z, x.witness->z, 1e-9);
      EXPECT_GT(norm(*x.witness - c.net.q.at(v)), 1e-4);
      ++found;
    }
  }
  EXPECT_GT(found, 100);
}

// Around a vertex with no singular edge the diagonal patches only touch.
TEST(PatchesIntersect, RegularVertexDiagonalsDoNotCross) {
  testing::PairGenerator gen(607);
  int checked = 0;
  for (int k = 0; k < 40; ++k) {
    const testing::CorpusCase c = gen.next();
    const auto s = singular_edges(c.net.omega);
    const GridRange d = c.net.q.domain();
    for (int u = d.du_min() / 2 + 1; u < d.du_max() / 2; ++u)
      for (int w = d.dv_min() / 2 + 1; w < d.dv_max() / 2; ++w) {
        if (is_singular(s, EdgeRef::u_edge(u, w)) || is_singular(s, EdgeRef::u_edge(u - 1, w)) ||
            is_singular(s, EdgeRef::v_edge(u, w)) || is_singular(s, EdgeRef::v_edge(u, w - 1)))
          continue;
        const auto P = [&](int du, int dv) { return patch_of(c.net, GridAddress::face(u + du, w + dv)); };
        EXPECT_FALSE(patches_intersect(P(0, 0), P(-1, -1), 1e-6).intersects());
        EXPECT_FALSE(patches_intersect(P(-1, 0), P(0, -1), 1e-6).intersects());
        ++checked;
      }
  }
  EXPECT_GT(checked, 50);
}

// z = xy and z = 2xy over one square meet only along two boundary edges.
TEST(PatchesIntersect, MeetingOnlyOnBoundary) {
  const BilinearPatch a({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 1});
  const BilinearPatch b({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 2});
  EXPECT_FALSE(patches_intersect(a, b, 1e-6).intersects());
}

TEST(PatchGluing, CorpusEdgesAndTangentPlanes) {
  testing::PairGenerator gen(808);
  double worst_pos = 0, worst_plane = 0;
  for (int k = 0; k < 200; ++k) {
    const testing::CorpusCase c = gen.next();
    const GridRange faces = c.net.omega.domain();
    for (const GridAddress& f : faces.addresses()) {
      const BilinearPatch p = patch_of(c.net, f);
      const GridAddress east = GridAddress::face(f.u() + 1, f.v()), north = GridAddress::face(f.u(), f.v() + 1);
      for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        if (faces.contains(east)) {
          const BilinearPatch e = patch_of(c.net, east);
          worst_pos = std::max(worst_pos, norm(p.eval(1, t) - e.eval(0, t)));
          const Vec3 n1 = p.normal(1, t), n2 = e.normal(0, t);
          worst_plane = std::max(worst_plane, norm(cross(n1, n2)) / (norm(n1) * norm(n2)));
        }
        if (faces.contains(north)) {
          const BilinearPatch n = patch_of(c.net, north);
          worst_pos = std::max(worst_pos, norm(p.eval(t, 1) - n.eval(t, 0)));
          const Vec3 n1 = p.normal(t, 1), n2 = n.normal(t, 0);
          worst_plane = std::max(worst_plane, norm(cross(n1, n2)) / (norm(n1) * norm(n2)));
        }
      }
    }
  }
  EXPECT_EQ(worst_pos, 0.0);
  EXPECT_LT(worst_plane, 1e-9);
}

// Both patches next to a cuspidal edge lie on one side of the vertical plane through it.
TEST(PatchGluing, CuspidalEdgesFoldBack) {
  testing::PairGenerator gen(909, {3, 8, true});
  int edges = 0;
  for (int k = 0; k < 100; ++k) {
    const testing::CorpusCase c = gen.next();
    for (const EdgeRef& e : singular_edges(c.net.omega)) {
      const Vec3 p0 = c.net.q.at(e.from()), p1 = c.net.q.at(e.to());
      const Vec2 d = planar(p1 - p0);
      const GridAddress f1 = e.label == Axis::U ? GridAddress::face(e.address.u(), e.address.v() - 1)
                                                : GridAddress::face(e.address.u() - 1, e.address.v());
      const GridAddress f2 = GridAddress::face(e.address.u(), e.address.v());
      int sign = 0;
      bool same = true;
      for (const GridAddress& f : {f1, f2}) {
        const BilinearPatch p = patch_of(c.net, f);
        for (double s : {0.25, 0.5, 0.75})
          for (double t : {0.25, 0.5, 0.75}) {
            const double side = cross(d, planar(p.eval(s, t) - p0));
            const int sg = side > 0 ? 1 : -1;
            if (sign == 0) sign = sg;
            same = same && sg == sign;
          }
      }
      EXPECT_TRUE(same) << to_string(e);
      ++edges;
    }
  }
  EXPECT_GT(edges, 100);
}

TEST(ModelNet, Examples) {
  const ModelNetRatios r = model_net_ratios(1, 1, -1, 1, 1, 1);
  EXPECT_DOUBLE_EQ(r.r1, 1);
  EXPECT_DOUBLE_EQ(r.r2, 1);
  EXPECT_DOUBLE_EQ(r.r3, -1);
  const Eigen::Vector3d o = testing::planarity_oracle(1, 1, -1, 1, 1, 1);
  EXPECT_NEAR(o(0), 1, 1e-12);
  EXPECT_NEAR(o(1), 1, 1e-12);
  EXPECT_NEAR(o(2), -1, 1e-12);

  const ModelNetRatios z = model_net_ratios(0, 2, 3, 1, 0, 5);
  EXPECT_EQ(z.r1, 0);
  EXPECT_EQ(z.r2, 0);
  EXPECT_EQ(z.r3, 0);
  EXPECT_THROW(model_net_ratios(1, 0, 1, 1, 1, 1), DegenerateError);
  EXPECT_THROW(model_net_ratios(1, 1, 0, 1, 1, 1), DegenerateError);
}

TEST(ModelNet, MatchesPlanaritySolve) {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> mag(0.2, 3.0);
  std::bernoulli_distribution neg(0.5);
  auto draw = [&] { return neg(rng) ? -mag(rng) : mag(rng); };
  for (int i = 0; i < 1000; ++i) {
    const double s1 = draw(), s2 = draw(), a = draw(), b = draw(), c = draw(), d = draw();
    const ModelNetRatios r = model_net_ratios(s1, s2, a, b, c, d);
    const Eigen::Vector3d o = testing::planarity_oracle(s1, s2, a, b, c, d);
    EXPECT_NEAR(r.r1, o(0), 1e-9 * std::max(1.0, std::abs(o(0))));
    EXPECT_NEAR(r.r2, o(1), 1e-9 * std::max(1.0, std::abs(o(1))));
    EXPECT_NEAR(r.r3, o(2), 1e-9 * std::max(1.0, std::abs(o(2))));
  }
}

}  // namespace
}  // namespace diias
