#pragma once

#include <optional>
#include <string>

#include "diias/asymptotic.hpp"
#include "diias/centre_chord.hpp"
#include "diias/io.hpp"
#include "diias/polyline.hpp"
#include "diias/ruled.hpp"
#include "diias/singularity.hpp"

namespace diias {

struct AnalysisReport {
  Field<double> omega;
  Sequence cubic_A;
  Sequence cubic_B;
  ValidationReport residuals;
  /// Present when the net came from (or decomposed into) a polyline pair.
  std::optional<AdmissibilityReport> admissibility;
  SingularityReport singularities;
  RuledKind ruled_kind = RuledKind::NotRuled;
  std::optional<double> cayley_a;
};

/// Verification, singularities, ruled kind and Cayley test for a net. When no pair
/// is given, one is recovered by decompose if the net allows it. Throws
/// ValidationError naming the failing residual when the net is not a DIIAS.
AnalysisReport run_analysis(const QuadNet& net, const std::optional<PolylinePair>& pair = std::nullopt,
                            double tol = tolerance_factor());

/// Builds the net from the pair first.
AnalysisReport run_analysis(const PolylinePair& pair, double tol = tolerance_factor());

/// Reads and validates a net file, then analyses it.
AnalysisReport run_analysis(const Field<Vec3>& q, double tol = tolerance_factor());

/// Pretty-printed JSON; doubles are written with round-trip precision.
std::string report_json(const AnalysisReport& report);
/// Throws IoError on malformed input.
AnalysisReport parse_report_json(const std::string& text);

}  // namespace diias
