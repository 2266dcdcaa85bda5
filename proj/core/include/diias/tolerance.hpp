#pragma once

namespace diias {

/// Relative tolerance factor shared by tau_fp and tau_geo.
///
/// Defaults to 1e-9. The environment variable AFFINE_NET_TOL, when set to a
/// positive number, replaces it. The variable is read once per process.
double tolerance_factor();

/// tau_fp for values of the given magnitude: factor * max(scale, tiny).
double fp_tolerance(double scale);

}  // namespace diias
