#include "diias/report.hpp"

#include <cmath>

#include <fmt/format.h>

#include "diias/error.hpp"
#include "json.hpp"

namespace diias {

namespace {

using nlohmann::json;

void require_diias(const ValidationReport& r) {
  if (r.is_diias) return;
  double value = r.max_cross_planarity_residual;
  if (r.failure == "constant affine normal") value = r.max_xi_residual;
  else if (r.failure == "cubic form independence") value = r.max_independence_residual;
  else if (r.failure == "structural equations") value = r.max_structural_residual;
  else if (r.failure == "compatibility") value = r.max_compatibility_residual;
  throw ValidationError(fmt::format("not a discrete affine sphere: {} residual {:.3e} exceeds tolerance",
                                    r.failure, value));
}

json half(const GridAddress& a) { return json::array({a.du * 0.5, a.dv * 0.5}); }

GridAddress unhalf(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw IoError("report: grid position must be [u, v]");
  const double du = j[0].get<double>() * 2.0, dv = j[1].get<double>() * 2.0;
  if (du != std::floor(du) || dv != std::floor(dv)) throw IoError("report: grid position is not a half-integer");
  return {static_cast<int>(du), static_cast<int>(dv)};
}

json edge_json(const EdgeRef& e) { return {{"label", e.label == Axis::U ? "u" : "v"}, {"at", half(e.address)}}; }

EdgeRef edge_from(const json& j) {
  const GridAddress a = unhalf(j.at("at"));
  const std::string l = j.at("label").get<std::string>();
  const Axis label = l == "u" ? Axis::U : Axis::V;
  const CellKind want = label == Axis::U ? CellKind::UEdge : CellKind::VEdge;
  if ((l != "u" && l != "v") || a.kind() != want) throw IoError("report: edge label does not match its position");
  return {a, label};
}

json sequence_json(const Sequence& s) { return {{"first", s.first}, {"values", s.values}}; }
Sequence sequence_from(const json& j) {
  return Sequence{j.at("first").get<int>(), j.at("values").get<std::vector<double>>()};
}

json vec(const Vec2& p) { return json::array({p.x, p.y}); }
json vec(const Vec3& p) { return json::array({p.x, p.y, p.z}); }

template <class E>
E enum_from(const std::string& s, std::initializer_list<E> all) {
  for (E e : all)
    if (to_string(e) == s) return e;
  throw IoError("report: unknown tag '" + s + "'");
}

}  // namespace

AnalysisReport run_analysis(const QuadNet& net, const std::optional<PolylinePair>& given, double tol) {
  ValidationReport residuals = verify_diias(net.q, tol);
  require_diias(residuals);

  std::optional<PolylinePair> pair = given;
  if (!pair) {
    try {
      const Decomposition d = decompose(net, tol);
      pair = PolylinePair{d.alpha, d.beta, d.z_base};
    } catch (const ValidationError&) {
    }
  }

  std::optional<AdmissibilityReport> adm;
  SingularityReport sing;
  if (pair) {
    sing = analyze_singularities(pair->alpha, pair->beta, net);
    try {
      adm = check_admissible(pair->alpha, pair->beta);
    } catch (const DegenerateError& e) {
      sing.anomalies.push_back(e.what());
    }
  } else {
    sing = analyze_singularities(net);
  }

  std::optional<double> cayley_a;
  if (!net.A.empty() && is_normalized(net, tol))
    if (const auto m = cayley_congruent(net, tol)) cayley_a = m->a;

  return AnalysisReport{net.omega, net.A, net.B, residuals, adm, std::move(sing), ruled_kind(net, tol), cayley_a};
}

AnalysisReport run_analysis(const PolylinePair& pair, double tol) {
  return run_analysis(build_diias(pair.alpha, pair.beta, pair.z_base), pair, tol);
}

AnalysisReport run_analysis(const Field<Vec3>& q, double tol) {
  require_diias(verify_diias(q, tol));
  return run_analysis(net_from_points(q, tol), std::nullopt, tol);
}

std::string report_json(const AnalysisReport& r) {
  json j;
  j["format"] = "diias-analysis v1";
  const GridRange& f = r.omega.domain();
  j["faces"] = {{"u", {f.du_min() * 0.5, f.du_max() * 0.5}}, {"v", {f.dv_min() * 0.5, f.dv_max() * 0.5}}};
  json omega = json::array();
  for (const GridAddress& a : f.addresses()) omega.push_back({{"face", half(a)}, {"value", r.omega.at(a)}});
  j["omega"] = omega;
  j["cubic_A"] = sequence_json(r.cubic_A);
  j["cubic_B"] = sequence_json(r.cubic_B);

  const ValidationReport& v = r.residuals;
  j["residuals"] = {{"is_asymptotic", v.is_asymptotic},
                    {"is_diias", v.is_diias},
                    {"max_cross_planarity_residual", v.max_cross_planarity_residual},
                    {"max_xi_residual", v.max_xi_residual},
                    {"max_independence_residual", v.max_independence_residual},
                    {"max_structural_residual", v.max_structural_residual},
                    {"max_structural_residual_fixed_index", v.max_structural_residual_fixed_index},
                    {"max_compatibility_residual", v.max_compatibility_residual},
                    {"xi_estimate", v.xi_estimate ? vec(*v.xi_estimate) : json(nullptr)},
                    {"failure", v.failure}};

  if (r.admissibility) {
    json viol = json::array();
    for (const Violation& x : r.admissibility->violations)
      viol.push_back({{"kind", to_string(x.kind)},
                      {"alpha_index", x.alpha_index},
                      {"beta_index", x.beta_index},
                      {"triplet_of_beta", x.triplet_of_beta},
                      {"description", x.describe()}});
    j["admissibility"] = {{"admissible", r.admissibility->admissible}, {"violations", viol}};
  } else {
    j["admissibility"] = nullptr;
  }

  const SingularityReport& s = r.singularities;
  json edges = json::array();
  for (const EdgeRef& e : s.singular_edges) edges.push_back(edge_json(e));
  j["singular_edges"] = edges;

  json comps = json::array();
  for (const DmptlComponent& c : s.dmptl_components) {
    json vs = json::array(), ps = json::array(), es = json::array();
    for (const GridAddress& a : c.vertices) vs.push_back(half(a));
    for (const Vec2& p : c.points) ps.push_back(vec(p));
    for (const EdgeRef& e : c.edges) es.push_back(edge_json(e));
    comps.push_back({{"closed", c.closed}, {"vertices", vs}, {"points", ps}, {"edges", es}});
  }
  j["dmptl"] = comps;

  json stars = json::array();
  for (const auto& [a, cls] : s.star_class) {
    const auto it = s.config.find(a);
    stars.push_back({{"vertex", half(a)},
                     {"class", to_string(cls)},
                     {"config", it == s.config.end() ? json(nullptr) : json(to_string(it->second))}});
  }
  j["stars"] = stars;

  json sw = json::array();
  for (const GridAddress& a : s.swallowtails) sw.push_back(half(a));
  j["swallowtails"] = sw;
  if (s.dmptl_cusps) {
    json cu = json::array();
    for (const GridAddress& a : *s.dmptl_cusps) cu.push_back(half(a));
    j["dmptl_cusps"] = cu;
  } else {
    j["dmptl_cusps"] = nullptr;
  }
  j["anomalies"] = s.anomalies;
  j["ruled_kind"] = to_string(r.ruled_kind);
  j["cayley"] = r.cayley_a ? json{{"a", *r.cayley_a}} : json(nullptr);
  return j.dump(2) + "\n";
}

AnalysisReport parse_report_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    if (j.value("format", "") != "diias-analysis v1") throw IoError("report: unknown format");

    const GridAddress lo = unhalf({j.at("faces").at("u")[0], j.at("faces").at("v")[0]});
    const GridAddress hi = unhalf({j.at("faces").at("u")[1], j.at("faces").at("v")[1]});
    const GridRange faces(lo.du, hi.du, lo.dv, hi.dv);
    std::vector<double> omega(faces.size());
    const json& om = j.at("omega");
    if (om.size() != faces.size()) throw IoError("report: omega does not cover the faces");
    for (const json& e : om) {
      const GridAddress a = unhalf(e.at("face"));
      if (!faces.contains(a)) throw IoError("report: omega face outside the range");
      omega[faces.index(a)] = e.at("value").get<double>();
    }

    ValidationReport v;
    const json& jr = j.at("residuals");
    v.is_asymptotic = jr.at("is_asymptotic").get<bool>();
    v.is_diias = jr.at("is_diias").get<bool>();
    v.max_cross_planarity_residual = jr.at("max_cross_planarity_residual").get<double>();
    v.max_xi_residual = jr.at("max_xi_residual").get<double>();
    v.max_independence_residual = jr.at("max_independence_residual").get<double>();
    v.max_structural_residual = jr.at("max_structural_residual").get<double>();
    v.max_structural_residual_fixed_index = jr.at("max_structural_residual_fixed_index").get<double>();
    v.max_compatibility_residual = jr.at("max_compatibility_residual").get<double>();
    if (!jr.at("xi_estimate").is_null()) {
      const auto x = jr.at("xi_estimate").get<std::vector<double>>();
      if (x.size() != 3) throw IoError("report: xi_estimate must have 3 components");
      v.xi_estimate = Vec3{x[0], x[1], x[2]};
    }
    v.failure = jr.at("failure").get<std::string>();

    std::optional<AdmissibilityReport> adm;
    if (!j.at("admissibility").is_null()) {
      AdmissibilityReport a;
      a.admissible = j.at("admissibility").at("admissible").get<bool>();
      for (const json& x : j.at("admissibility").at("violations"))
        a.violations.push_back({enum_from<ViolationKind>(x.at("kind").get<std::string>(),
                                                         {ViolationKind::AngleAlpha, ViolationKind::AngleBeta,
                                                          ViolationKind::ParallelEdges,
                                                          ViolationKind::CollinearDegenerate}),
                                x.at("alpha_index").get<int>(), x.at("beta_index").get<int>(),
                                x.at("triplet_of_beta").get<bool>()});
      adm = a;
    }

    SingularityReport s;
    for (const json& e : j.at("singular_edges")) s.singular_edges.push_back(edge_from(e));
    for (const json& c : j.at("dmptl")) {
      DmptlComponent d;
      d.closed = c.at("closed").get<bool>();
      for (const json& a : c.at("vertices")) d.vertices.push_back(unhalf(a));
      for (const json& p : c.at("points")) d.points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
      for (const json& e : c.at("edges")) d.edges.push_back(edge_from(e));
      s.dmptl_components.push_back(std::move(d));
    }
    for (const json& st : j.at("stars")) {
      const GridAddress a = unhalf(st.at("vertex"));
      s.star_class[a] = enum_from<StarClass>(st.at("class").get<std::string>(),
                                             {StarClass::Typical, StarClass::Atypical, StarClass::Boundary});
      if (!st.at("config").is_null())
        s.config[a] = enum_from<StarConfig>(
            st.at("config").get<std::string>(),
            {StarConfig::Config0, StarConfig::Config1, StarConfig::Config2, StarConfig::Config3});
    }
    for (const json& a : j.at("swallowtails")) s.swallowtails.push_back(unhalf(a));
    if (!j.at("dmptl_cusps").is_null()) {
      s.dmptl_cusps.emplace();
      for (const json& a : j.at("dmptl_cusps")) s.dmptl_cusps->push_back(unhalf(a));
    }
    s.anomalies = j.at("anomalies").get<std::vector<std::string>>();

    const RuledKind kind = enum_from<RuledKind>(
        j.at("ruled_kind").get<std::string>(),
        {RuledKind::NotRuled, RuledKind::RuledU, RuledKind::RuledV, RuledKind::DoublyRuled});
    std::optional<double> a;
    if (!j.at("cayley").is_null()) a = j.at("cayley").at("a").get<double>();

    return AnalysisReport{Field<double>(faces, std::move(omega)), sequence_from(j.at("cubic_A")),
                          sequence_from(j.at("cubic_B")), v, adm, std::move(s), kind, a};
  } catch (const json::exception& e) {
    throw IoError(std::string("report: ") + e.what());
  } catch (const DomainError& e) {
    throw IoError(std::string("report: ") + e.what());
  }
}

}  // namespace diias
