#include "diias/tolerance.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

namespace diias {

double tolerance_factor() {
  static const double factor = [] {
    constexpr double kDefault = 1e-9;
    const char* env = std::getenv("AFFINE_NET_TOL");
    if (env == nullptr || *env == '\0') return kDefault;
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || !(v > 0.0)) return kDefault;
    return v;
  }();
  return factor;
}

double fp_tolerance(double scale) {
  return tolerance_factor() * std::max(scale, std::numeric_limits<double>::min());
}

}  // namespace diias
