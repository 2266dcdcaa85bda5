#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "diias/centre_chord.hpp"
#include "diias/polyline.hpp"

namespace diias {

/// Decimal or simple fraction ("-3/4"). Throws IoError on anything else.
double parse_number(std::string_view text);

struct PolylinePair {
  Polyline2 alpha;
  Polyline2 beta;
  double z_base = 0.0;
};

/// JSON: {"alpha": {"start_index": i, "points": [[x, y], ...]}, "beta": {...}, "z_base": z}.
/// Coordinates may be numbers or fraction strings. Malformed JSON throws IoError;
/// a structurally valid file describing an invalid polyline throws the polyline's error.
PolylinePair read_polyline_pair(std::istream& in);
PolylinePair read_polyline_pair_file(const std::string& path);
std::string polyline_pair_json(const PolylinePair& pair);

// Net text format:
//   diias v1 <u_min> <u_max> <v_min> <v_max>
//   u v x y z          one line per vertex, u outer, v inner, 17 significant digits

void write_net(std::ostream& out, const Field<Vec3>& q);
void write_net_file(const std::string& path, const Field<Vec3>& q);
/// Throws IoError on a malformed header, a missing or misplaced row, or trailing data.
Field<Vec3> read_net(std::istream& in);
Field<Vec3> read_net_file(const std::string& path);

/// True when the stream starts with the net header keyword; the stream position is restored.
bool looks_like_net(std::istream& in);

/// Writes text to a file, throwing IoError when it cannot be opened or written.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace diias
