#pragma once

#include <optional>
#include <string>
#include <vector>

#include "diias/centre_chord.hpp"
#include "diias/singularity.hpp"
#include "diias/tolerance.hpp"
#include "diias/vec.hpp"

namespace diias {

enum class RuledKind { NotRuled, RuledU, RuledV, DoublyRuled };

std::string to_string(RuledKind k);

/// Classification by max|A| and max|B| against the absolute tolerance tol.
/// An empty sequence counts as zero.
RuledKind ruled_kind(const Sequence& A, const Sequence& B, double tol);
/// Same with tol relative to the net's largest |Omega|, |A| or |B|.
RuledKind ruled_kind(const QuadNet& net, double tol = tolerance_factor());

/// q(u, v) = (u, v + a u(u-1)/2, uv + a u(u^2-1)/6) on the vertex range.
/// Throws DomainError for a == 0.
QuadNet cayley_net(double a, const GridRange& vertices);

/// Omega == 1 (or -1 with xi flipped) and q_22 == 0 within tol.
bool is_normalized(const QuadNet& net, double tol = tolerance_factor());

struct CayleyMatch {
  double a = 0.0;
  /// net(u, v) = frame(cayley_net(a)(u, v)) on the net's domain.
  AffineMap3 frame;
};

/// Recovers (a, frame) when A is a nonzero constant and B == 0. Returns nullopt
/// otherwise. Throws ValidationError for a net that is not normalized and
/// DomainError when there is no interior u to read A from.
std::optional<CayleyMatch> cayley_congruent(const QuadNet& net, double tol = tolerance_factor());

struct GraphSample {
  int u = 0;
  double x1 = 0.0;
  double phi = 0.0;
};

struct GraphForm {
  /// Equiaffine map applied to the net so that beta lies on the second axis.
  AffineMap3 normalization;
  std::vector<GraphSample> samples;
  /// max |z - x1 x2 - phi(u)| over the vertices.
  double max_identity_residual = 0.0;
};

/// Writes a singular-free net with B == 0 as the graph z = x1 x2 + phi(x1).
/// Throws ValidationError when B != 0, an edge is singular, beta is not
/// collinear, x1 is not strictly monotone or the identity fails within tol.
GraphForm ruled_graph_form(const QuadNet& net, double tol = tolerance_factor());

struct CuspidalColumn {
  int u = 0;
  std::vector<EdgeRef> edges;
  /// Largest sine of the angle between an edge's q-segment and the column line.
  double collinearity_residual = 0.0;
};

struct CuspidalColumns {
  std::vector<CuspidalColumn> columns;
  /// Singular edges that are not v-edges.
  std::vector<EdgeRef> stray;
};

/// Groups the singular edges of a net by u-column.
CuspidalColumns cuspidal_columns(const QuadNet& net);

}  // namespace diias
