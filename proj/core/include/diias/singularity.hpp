#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "diias/centre_chord.hpp"
#include "diias/grid.hpp"
#include "diias/polyline.hpp"
#include "diias/vec.hpp"

namespace diias {

/// A grid edge; label U for (u + 1/2, v), V for (u, v + 1/2).
struct EdgeRef {
  GridAddress address;
  Axis label = Axis::U;

  static EdgeRef u_edge(int u, int v) { return {GridAddress::u_edge(u, v), Axis::U}; }
  static EdgeRef v_edge(int u, int v) { return {GridAddress::v_edge(u, v), Axis::V}; }

  /// Endpoints in increasing index order.
  GridAddress from() const { return GridAddress::vertex(address.u(), address.v()); }
  GridAddress to() const {
    return label == Axis::U ? GridAddress::vertex(address.u() + 1, address.v())
                            : GridAddress::vertex(address.u(), address.v() + 1);
  }

  friend auto operator<=>(const EdgeRef& a, const EdgeRef& b) { return a.address <=> b.address; }
  friend bool operator==(const EdgeRef& a, const EdgeRef& b) { return a.address == b.address; }
};

std::string to_string(const EdgeRef& e);

enum class StarClass { Typical, Atypical, Boundary };
enum class StarConfig { Config0, Config1, Config2, Config3 };

std::string to_string(StarClass c);
std::string to_string(StarConfig c);

/// One connected chain of singular edges.
struct DmptlComponent {
  std::vector<GridAddress> vertices;
  /// x-net positions of `vertices`.
  std::vector<Vec2> points;
  /// edges[i] joins vertices[i] and vertices[i + 1] (cyclically when closed).
  std::vector<EdgeRef> edges;
  bool closed = false;
};

struct SingularityReport {
  std::vector<EdgeRef> singular_edges;
  std::vector<DmptlComponent> dmptl_components;
  std::map<GridAddress, StarClass> star_class;
  std::map<GridAddress, StarConfig> config;
  std::vector<GridAddress> swallowtails;
  /// Absent when the net has no polyline pair to draw chords from.
  std::optional<std::vector<GridAddress>> dmptl_cusps;
  /// Cases the theory rules out for admissible pairs, reported instead of resolved.
  std::vector<std::string> anomalies;
};

/// Edges across which Omega changes sign; boundary edges are never singular.
/// Throws DegenerateError when Omega vanishes on a face.
std::vector<EdgeRef> singular_edges(const Field<double>& omega);

/// Same set from discrete parallelism: (u + 1/2, v) is singular iff alpha_1(u + 1/2)
/// is discretely parallel to beta at v, and symmetrically for v-edges.
std::vector<EdgeRef> singular_edges_by_parallelism(const Polyline2& alpha, const Polyline2& beta);

/// Star-plane test for any asymptotic net: the line through an edge separates
/// neither of the two cross-neighbours of its start vertex.
std::vector<EdgeRef> singular_edges_star_plane(const Field<Vec3>& q);

/// Chains singular edges by shared grid vertices. Components start at the
/// smaller endpoint of an open chain, or the smallest vertex of a closed one.
/// Throws InadmissibleError when a vertex meets more than two singular edges.
std::vector<DmptlComponent> dmptl(const Polyline2& alpha, const Polyline2& beta,
                                  const std::vector<EdgeRef>& singular);
/// As above with positions taken from a planar field.
std::vector<DmptlComponent> dmptl(const Field<Vec2>& x, const std::vector<EdgeRef>& singular);

/// Typical iff the neighbours (u+1, v), (u, v+1), (u-1, v), (u, v-1) occur in this
/// cyclic order around the centre, in either orientation. Throws DomainError at a
/// boundary vertex, DegenerateError when two neighbours leave in the same direction.
StarClass classify_star(const Field<Vec2>& x, const GridAddress& vertex);
/// Same test inside the star plane of an asymptotic net.
StarClass classify_star(const Field<Vec3>& q, const GridAddress& vertex);

/// Throws DomainError at a boundary vertex and InadmissibleError for a star with
/// one, three or four singular edges.
StarConfig vertex_configuration(const std::vector<EdgeRef>& singular, StarClass star,
                                const GridAddress& vertex);

std::vector<GridAddress> swallowtails(const std::map<GridAddress, StarConfig>& config);

/// Chain-interior DMPTL vertices where a u-edge meets a v-edge and both chain
/// neighbours lie strictly on one side of the chord alpha(u) beta(v).
std::vector<GridAddress> dmptl_cusps(const Polyline2& alpha, const Polyline2& beta,
                                     const std::vector<DmptlComponent>& components);

/// `label` U: the alpha edge from alpha(u - dir) to alpha(u) is discretely parallel
/// to beta(v). `label` V: the beta edge from beta(v - dir) to beta(v) is discretely
/// parallel to alpha(u).
struct ParallelRecord {
  Axis label = Axis::U;
  int u = 0;
  int v = 0;
  int dir = 1;

  /// Singular edge witnessed by this record.
  EdgeRef edge() const;
  friend bool operator==(const ParallelRecord&, const ParallelRecord&) = default;
};

struct TrichotomyStep {
  /// 1: the same-label edge continues; 2: the other label at +1/2; 3: at -1/2.
  int which = 0;
  ParallelRecord next;
};

/// One continuation step. Returns nullopt when a needed neighbour is outside
/// the polylines. Throws DomainError when `current` does not hold and
/// InadmissibleError when zero or several cases hold, or the half-plane
/// reading of the cases disagrees with the direct parallelism tests.
std::optional<TrichotomyStep> trichotomy_step(const Polyline2& alpha, const Polyline2& beta,
                                              const ParallelRecord& current);

struct TraceResult {
  std::vector<EdgeRef> edges;
  std::vector<int> cases;
  bool closed = false;
};

/// Follows trichotomy steps from `seed` in both directions. For a closed chain
/// the walk stops when it returns to the seed edge.
TraceResult trace_dmptl(const Polyline2& alpha, const Polyline2& beta, const ParallelRecord& seed);

/// Record witnessing a singular edge, oriented along increasing index.
ParallelRecord record_for(const EdgeRef& e);

/// Full pipeline for a centre-chord net.
SingularityReport analyze_singularities(const Polyline2& alpha, const Polyline2& beta, const QuadNet& net);
/// Pipeline for a net without a polyline pair: star-plane stars, no cusp set.
SingularityReport analyze_singularities(const QuadNet& net);

}  // namespace diias
