#include "diias/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include "json.hpp"

#include "diias/error.hpp"

namespace diias {

namespace {

using nlohmann::json;

bool parse_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_int(std::string_view s, int& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

double coordinate(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_number(j.get<std::string>());
  throw IoError("polyline coordinate must be a number or a fraction string");
}

Polyline2 polyline_from(const json& j, const char* name) {
  if (!j.is_object() || !j.contains("points"))
    throw IoError(std::string("polyline file: missing object \"") + name + "\" with \"points\"");
  const json& pts = j.at("points");
  if (!pts.is_array()) throw IoError(std::string("polyline file: \"") + name + ".points\" must be an array");
  int start = 0;
  if (j.contains("start_index")) {
    if (!j.at("start_index").is_number_integer())
      throw IoError(std::string("polyline file: \"") + name + ".start_index\" must be an integer");
    start = j.at("start_index").get<int>();
  }
  std::vector<Vec2> v;
  for (const json& p : pts) {
    if (!p.is_array() || p.size() != 2) throw IoError(std::string("polyline file: each point of ") + name + " must be [x, y]");
    v.push_back({coordinate(p[0]), coordinate(p[1])});
  }
  return Polyline2(start, std::move(v));
}

json polyline_to(const Polyline2& l) {
  json pts = json::array();
  for (const Vec2& p : l.points()) pts.push_back({p.x, p.y});
  return {{"start_index", l.first()}, {"points", pts}};
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path + " for reading");
  return in;
}

}  // namespace

double parse_number(std::string_view text) {
  const auto slash = text.find('/');
  double v = 0.0;
  if (slash == std::string_view::npos) {
    if (!parse_double(text, v)) throw IoError("not a number: '" + std::string(text) + "'");
    return v;
  }
  double num = 0.0, den = 0.0;
  if (!parse_double(text.substr(0, slash), num) || !parse_double(text.substr(slash + 1), den))
    throw IoError("not a fraction: '" + std::string(text) + "'");
  if (den == 0.0) throw IoError("zero denominator in '" + std::string(text) + "'");
  return num / den;
}

PolylinePair read_polyline_pair(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw IoError(std::string("polyline file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw IoError("polyline file must hold a JSON object");
  if (!j.contains("alpha") || !j.contains("beta")) throw IoError("polyline file needs \"alpha\" and \"beta\"");
  double z_base = 0.0;
  if (j.contains("z_base")) z_base = coordinate(j.at("z_base"));
  return PolylinePair{polyline_from(j.at("alpha"), "alpha"), polyline_from(j.at("beta"), "beta"), z_base};
}

PolylinePair read_polyline_pair_file(const std::string& path) {
  std::ifstream in = open_in(path);
  return read_polyline_pair(in);
}

std::string polyline_pair_json(const PolylinePair& pair) {
  const json j{{"alpha", polyline_to(pair.alpha)}, {"beta", polyline_to(pair.beta)}, {"z_base", pair.z_base}};
  return j.dump(2) + "\n";
}

void write_net(std::ostream& out, const Field<Vec3>& q) {
  const GridRange& d = q.domain();
  if (d.kind() != CellKind::Vertex) throw DomainError("write_net: field must live on vertices");
  out << fmt::format("diias v1 {} {} {} {}\n", d.min_corner().u(), d.max_corner().u(), d.min_corner().v(),
                     d.max_corner().v());
  for (const GridAddress& a : d.addresses()) {
    const Vec3 p = q.at(a);
    out << fmt::format("{} {} {:.17g} {:.17g} {:.17g}\n", a.u(), a.v(), p.x, p.y, p.z);
  }
  if (!out) throw IoError("failed writing net");
}

void write_net_file(const std::string& path, const Field<Vec3>& q) {
  std::ostringstream s;
  write_net(s, q);
  write_text_file(path, s.str());
}

Field<Vec3> read_net(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("net file is empty");
  std::istringstream hs(line);
  std::string magic, version, t[4];
  hs >> magic >> version >> t[0] >> t[1] >> t[2] >> t[3];
  int b[4];
  std::string extra;
  if (magic != "diias" || version != "v1" || hs.fail() || (hs >> extra))
    throw IoError("net file header must read 'diias v1 <u_min> <u_max> <v_min> <v_max>'");
  for (int i = 0; i < 4; ++i)
    if (!parse_int(t[i], b[i])) throw IoError("net file header bound '" + t[i] + "' is not an integer");
  if (b[0] > b[1] || b[2] > b[3]) throw IoError("net file header has an empty range");

  const GridRange dom = GridRange::vertices(b[0], b[1], b[2], b[3]);
  std::vector<Vec3> values;
  values.reserve(dom.size());
  for (const GridAddress& a : dom.addresses()) {
    if (!std::getline(in, line)) throw IoError("net file ends before vertex " + to_string(a));
    std::istringstream rs(line);
    std::string tok[5];
    rs >> tok[0] >> tok[1] >> tok[2] >> tok[3] >> tok[4];
    if (rs.fail() || (rs >> extra)) throw IoError("net file row for " + to_string(a) + " needs 5 fields");
    int u = 0, v = 0;
    double x = 0, y = 0, z = 0;
    if (!parse_int(tok[0], u) || !parse_int(tok[1], v) || u != a.u() || v != a.v())
      throw IoError("net file row out of order: expected vertex " + to_string(a));
    if (!parse_double(tok[2], x) || !parse_double(tok[3], y) || !parse_double(tok[4], z))
      throw IoError("net file row for " + to_string(a) + " has a malformed coordinate");
    values.push_back({x, y, z});
  }
  while (std::getline(in, line))
    if (line.find_first_not_of(" \t\r") != std::string::npos) throw IoError("net file has trailing data");
  return Field<Vec3>(dom, std::move(values));
}

Field<Vec3> read_net_file(const std::string& path) {
  std::ifstream in = open_in(path);
  return read_net(in);
}

bool looks_like_net(std::istream& in) {
  const auto pos = in.tellg();
  std::string word;
  in >> word;
  in.clear();
  in.seekg(pos);
  return word == "diias";
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing " + path);
}

}  // namespace diias
