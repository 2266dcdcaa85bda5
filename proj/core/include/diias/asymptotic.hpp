#pragma once

#include <optional>
#include <string>

#include "diias/centre_chord.hpp"
#include "diias/grid.hpp"
#include "diias/tolerance.hpp"
#include "diias/vec.hpp"

namespace diias {

// All residuals are relative: planarity determinants are divided by the product
// of the vector norms involved, identities by the magnitude of their terms.

struct ValidationReport {
  bool is_asymptotic = false;
  bool is_diias = false;
  double max_cross_planarity_residual = 0.0;
  /// Deviation of the per-face normal from its mean, relative to the mean's length.
  double max_xi_residual = 0.0;
  /// Spread of A(u, v) over v and of B(u, v) over u.
  double max_independence_residual = 0.0;
  /// All four sign variants for q_11 and q_22, with the Omega_2 index on the q_1 side.
  double max_structural_residual = 0.0;
  /// The q_22 variants with Omega_2(u+1/2, v) in both. Reported only.
  double max_structural_residual_fixed_index = 0.0;
  double max_compatibility_residual = 0.0;
  std::optional<Vec3> xi_estimate;
  /// Name of the first check that failed, empty when is_diias.
  std::string failure;
};

/// Checks that every interior star is planar. Throws DomainError when the
/// domain has fewer than 3 vertices along an axis.
ValidationReport is_asymptotic(const Field<Vec3>& q, double tol = tolerance_factor());

struct MetricAndNormal {
  Field<double> omega;
  Field<Vec3> xi;
  /// All q_12 are parallel to one direction; omega is then signed along it.
  bool constant_direction = false;
  Vec3 direction{};
};

/// Per face: |Omega| = sqrt|[q_1, q_2, q_12]| and xi = q_12 / Omega.
/// When every q_12 is parallel to one direction n (oriented with a positive
/// third component, or else a positive first nonzero one), Omega takes the sign
/// of <q_12, n>.
/// Throws DegenerateError when [q_1, q_2, q_12] vanishes on a face.
MetricAndNormal affine_metric_and_normal(const Field<Vec3>& q, double tol = tolerance_factor());

/// Full DIIAS check: planarity, constant normal, A = A(u) and B = B(v),
/// structural equations and the compatibility identity.
ValidationReport verify_diias(const Field<Vec3>& q, double tol = tolerance_factor());

/// Wraps vertex positions into a QuadNet, deriving Omega, xi, A and B.
/// Throws ValidationError unless verify_diias passes.
QuadNet net_from_points(const Field<Vec3>& q, double tol = tolerance_factor());

}  // namespace diias
