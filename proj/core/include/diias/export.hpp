#pragma once

#include <optional>
#include <string>

#include "diias/centre_chord.hpp"
#include "diias/polyline.hpp"
#include "diias/singularity.hpp"

namespace diias {

struct ObjStats {
  std::size_t vertices = 0;
  std::size_t quads = 0;
};

/// Every face tessellated n x n; vertices shared between patches are merged by
/// exact coordinate match. Faces use 1-based indices.
std::string obj_text(const Field<Vec3>& q, int n, ObjStats* stats = nullptr);

struct SvgInput {
  /// Planar x-net.
  Field<Vec2> x;
  std::optional<Polyline2> alpha;
  std::optional<Polyline2> beta;
  SingularityReport singularities;
};

/// x-net edges (class xnet), alpha and beta (classes alpha, beta), one
/// path per singular edge (class dmptl) and cusp markers (class cusp). The
/// viewBox is the bounding box plus a 5% margin, with y pointing up.
std::string svg_text(const SvgInput& input);

}  // namespace diias
