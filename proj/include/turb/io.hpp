#pragma once

#include <turb/polyhedron.hpp>

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace turb {

using Json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void schema(const std::string& where, const std::string& what) {
  fail(ErrorCode::SchemaError, where + ": " + what);
}

inline const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) schema(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema(where, std::string("missing key '") + key + "'");
  return *it;
}

inline std::string string_field(const Json& obj, const char* key, const std::string& where) {
  const Json& v = field(obj, key, where);
  if (!v.is_string()) schema(where + "." + key, "expected a string");
  return v.get<std::string>();
}

}  // namespace detail

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::SyntaxError, "byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::SyntaxError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline RawChart raw_chart_from_json(const Json& j) {
  RawChart raw;
  if (!j.is_object()) detail::schema("$", "chart must be an object");
  raw.name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "";
  const Json& vs = detail::field(j, "vertices", "$");
  if (!vs.is_array()) detail::schema("$.vertices", "expected an array");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    std::string where = "$.vertices[" + std::to_string(i) + "]";
    RawChart::Vertex v;
    v.id = detail::string_field(vs[i], "id", where);
    std::string kind = detail::string_field(vs[i], "kind", where);
    if (kind == "internal")
      v.kind = VertexKind::internal;
    else if (kind == "fringe")
      v.kind = VertexKind::fringe;
    else
      detail::schema(where + ".kind", "expected 'internal' or 'fringe', got '" + kind + "'");
    raw.vertices.push_back(std::move(v));
  }
  const Json& es = detail::field(j, "edges", "$");
  if (!es.is_array()) detail::schema("$.edges", "expected an array");
  std::set<std::string> edge_ids;
  for (std::size_t i = 0; i < es.size(); ++i) {
    std::string where = "$.edges[" + std::to_string(i) + "]";
    RawChart::Edge e;
    e.id = detail::string_field(es[i], "id", where);
    const Json& ends = detail::field(es[i], "ends", where);
    if (!ends.is_array() || ends.size() != 2 || !ends[0].is_string() || !ends[1].is_string())
      detail::schema(where + ".ends", "expected two vertex ids");
    e.ends = {ends[0].get<std::string>(), ends[1].get<std::string>()};
    edge_ids.insert(e.id);
    raw.edges.push_back(std::move(e));
  }
  const Json& cs = detail::field(j, "classes", "$");
  if (!cs.is_object()) detail::schema("$.classes", "expected an object");
  for (auto& [vid, pair] : cs.items()) {
    std::string where = "$.classes." + vid;
    if (!pair.is_array() || pair.size() != 2) detail::schema(where, "expected two class lists");
    std::array<std::vector<HalfEdgeKey>, 2> lists;
    for (int s = 0; s < 2; ++s) {
      if (!pair[s].is_array()) detail::schema(where + "[" + std::to_string(s) + "]", "expected a list");
      for (std::size_t k = 0; k < pair[s].size(); ++k) {
        const Json& key = pair[s][k];
        std::string kw = where + "[" + std::to_string(s) + "][" + std::to_string(k) + "]";
        if (!key.is_array() || key.size() != 2 || !key[0].is_string() || !key[1].is_number_integer())
          detail::schema(kw, "expected [edge-id, end-index]");
        std::string eid = key[0].get<std::string>();
        if (!edge_ids.count(eid)) detail::schema(kw, "unknown edge '" + eid + "'");
        int end = key[1].get<int>();
        if (end != 0 && end != 1) detail::schema(kw, "end index must be 0 or 1");
        lists[s].push_back({eid, end});
      }
    }
    raw.classes[vid] = std::move(lists);
  }
  return raw;
}

inline Chart chart_from_json(const Json& j) { return validate_chart(raw_chart_from_json(j)); }
inline Chart parse_chart_text(const std::string& text) { return chart_from_json(parse_json_text(text)); }
inline Chart parse_chart_file(const std::string& path) { return parse_chart_text(read_file(path)); }

inline Json to_json(const Chart& c) {
  Json j;
  j["name"] = c.name();
  j["vertices"] = Json::array();
  for (VertexIndex v = 0; v < c.vertex_count(); ++v)
    j["vertices"].push_back({{"id", c.vertex_id(v)}, {"kind", c.is_internal(v) ? "internal" : "fringe"}});
  j["edges"] = Json::array();
  for (EdgeIndex e = 0; e < c.edge_count(); ++e)
    j["edges"].push_back({{"id", c.edge_id(e)}, {"ends", {c.vertex_id(c.ends(e)[0]), c.vertex_id(c.ends(e)[1])}}});
  j["classes"] = Json::object();
  for (VertexIndex v = 0; v < c.vertex_count(); ++v) {
    if (!c.is_internal(v)) continue;
    Json pair = Json::array();
    for (int s = 0; s < 2; ++s) {
      Json list = Json::array();
      for (auto h : c.cls(v, s)) list.push_back({c.edge_id(h.edge), int(h.end)});
      pair.push_back(std::move(list));
    }
    j["classes"][c.vertex_id(v)] = std::move(pair);
  }
  return j;
}

inline std::string serialize_chart(const Chart& c) { return to_json(c).dump(2) + "\n"; }

inline Json to_json(const Chart& c, const Word& w) {
  Json j = Json::array();
  for (auto& a : w) j.push_back({{"edge", c.edge_id(a.edge)}, {"direction", a.dir == Direction::forward ? "forward" : "backward"}});
  return j;
}

inline Json indicator_json(const Chart& c, const std::vector<int>& ind) {
  Json j = Json::object();
  for (EdgeIndex e = 0; e < c.edge_count(); ++e)
    if (ind[e] != 0) j[c.edge_id(e)] = ind[e];
  return j;
}

inline Json to_json(const Chart& c, const Trail& t) {
  return {{"kind", t.kind == TrailKind::route ? "route" : "band"},
          {"word", to_json(c, t.word)},
          {"text", word_to_string(c, t.word)},
          {"indicator", indicator_json(c, indicator(c, t))}};
}

inline Trail trail_from_json(const Chart& c, const Json& j) {
  std::string kind = detail::string_field(j, "kind", "trail");
  const Json& w = detail::field(j, "word", "trail");
  if (!w.is_array()) detail::schema("trail.word", "expected an array");
  std::vector<std::pair<std::string, Direction>> spec;
  for (auto& a : w) {
    std::string dir = detail::string_field(a, "direction", "trail.word");
    spec.push_back({detail::string_field(a, "edge", "trail.word"), dir == "backward" ? Direction::backward : Direction::forward});
  }
  Trail t = canonicalize_trail(c, word_from_ids(c, spec));
  if ((kind == "band") != (t.kind == TrailKind::band)) detail::schema("trail.kind", "kind does not match the word");
  return t;
}

inline Json to_json(const Chart& c, const Bundle& b) {
  Json j;
  j["routes"] = Json::array();
  for (auto& t : b.routes) j["routes"].push_back(to_json(c, t));
  j["bands"] = Json::array();
  for (auto& t : b.bands) j["bands"].push_back(to_json(c, t));
  j["maximal"] = b.maximal;
  j["cap"] = b.cap ? Json(*b.cap) : Json(nullptr);
  return j;
}

inline Json flow_json(const Chart& c, const Vec& f) {
  Json j = Json::object();
  for (EdgeIndex e = 0; e < c.edge_count(); ++e) j[c.edge_id(e)] = f[e].str();
  return j;
}

// "e=1,f=2/3" or a JSON object of edge-id to number or "n/d" string. Missing edges carry 0.
inline Flow parse_flow(const Chart& c, const std::string& text) {
  Flow f(c.edge_count(), 0);
  auto set = [&](const std::string& id, const std::string& value) {
    auto e = c.find_edge(id);
    if (!e) fail(ErrorCode::UnknownEdge, "flow names unknown edge '" + id + "'");
    try {
      f[*e] = parse_rational(value);
    } catch (const std::invalid_argument& ex) {
      fail(ErrorCode::SchemaError, std::string("flow value for '") + id + "': " + ex.what());
    }
  };
  std::string t = text;
  std::size_t first = t.find_first_not_of(" \t\n");
  if (first != std::string::npos && t[first] == '{') {
    Json j = parse_json_text(t);
    for (auto& [k, v] : j.items()) {
      if (v.is_number_integer())
        set(k, std::to_string(v.get<long long>()));
      else if (v.is_string())
        set(k, v.get<std::string>());
      else
        detail::schema("flow." + k, "expected an integer or \"n/d\"");
    }
    return f;
  }
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find_first_of("=:");
    if (eq == std::string::npos) fail(ErrorCode::SchemaError, "flow entry '" + item + "' lacks '='");
    set(item.substr(0, eq), item.substr(eq + 1));
  }
  return f;
}

inline Json to_json(const Chart& c, const Presentation& p) {
  Json j;
  j["vertices"] = Json::array();
  for (auto& v : p.vertices) j["vertices"].push_back(flow_json(c, v));
  j["rays"] = Json::array();
  for (auto& r : p.rays) j["rays"].push_back(flow_json(c, r));
  return j;
}

inline Json to_json(const Chart& c, const BundleCombination& bc) {
  Json j;
  j["bundle"] = to_json(c, bc.bundle);
  j["coefficients"] = Json::array();
  for (auto& [t, q] : bc.coefficients) j["coefficients"].push_back({{"trail", word_to_string(c, t.word)}, {"kind", t.kind == TrailKind::route ? "route" : "band"}, {"coefficient", q.str()}});
  return j;
}

inline Json to_json(const Chart& c, const ClassificationReport& r) {
  Json j;
  j["full"] = r.full;
  j["sub_full"] = r.sub_full;
  j["directable"] = r.directable;
  if (r.orientation) {
    Json o = Json::object();
    for (EdgeIndex e = 0; e < c.edge_count(); ++e) {
      auto ends = c.ends(e);
      if ((*r.orientation)[e] == Direction::backward) std::swap(ends[0], ends[1]);
      o[c.edge_id(e)] = {c.vertex_id(ends[0]), c.vertex_id(ends[1])};
    }
    j["orientation"] = std::move(o);
  } else {
    j["orientation"] = nullptr;
  }
  j["acyclic"] = r.acyclic;
  j["witness_band"] = r.witness_band ? to_json(c, *r.witness_band) : Json(nullptr);
  j["locally_gentle"] = r.locally_gentle;
  j["gentle"] = r.gentle;
  j["steep_edges"] = Json::array();
  for (auto e : r.steep_edges) j["steep_edges"].push_back(c.edge_id(e));
  j["violations"] = Json::array();
  for (auto& v : r.violations) j["violations"].push_back({{"rule", v.rule}, {"location", v.location}});
  return j;
}

inline Json to_json(const SimplexReport& s) {
  return {{"dim", s.dim}, {"unimodular", s.unimodular}, {"normalized_volume", s.normalized_volume.str()}};
}

inline Json to_json(const TriangulationReport& r) {
  return {{"ok", r.ok},
          {"simplices", r.simplices},
          {"dim", r.dim},
          {"all_full_dimensional", r.all_full_dimensional},
          {"all_unimodular", r.all_unimodular},
          {"volume_sum", r.volume_sum.str()},
          {"oracle_volume", r.oracle_volume.str()},
          {"strong_intersection", r.strong_intersection},
          {"integer_points", r.integer_points},
          {"integer_points_covered", r.integer_points_covered},
          {"failures", r.failures}};
}

inline Json to_json(const Chart& c, const SubdivisionReport& r) {
  Json probes = Json::array();
  for (auto& p : r.probes) probes.push_back({{"point", flow_json(c, p.point)}, {"verdict", p.verdict}});
  return {{"ok", r.ok},
          {"cap", r.cap},
          {"samples", r.samples},
          {"seed", r.seed},
          {"dim", r.dim},
          {"cells", r.cells},
          {"cell_dims", r.cell_dims},
          {"full_dimensional_cells", r.full_dimensional_cells},
          {"unimodular_cells", r.unimodular_cells},
          {"strong_intersection", r.strong_intersection},
          {"covered", r.covered},
          {"covered_after_escalation", r.covered_after_escalation},
          {"uncovered", r.uncovered},
          {"non_unique", r.non_unique},
          {"fallback_samples", r.fallback_samples},
          {"probes", probes},
          {"failures", r.failures}};
}

// FNV-1a, 64 bit.
inline std::string digest(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  std::ostringstream ss;
  ss << std::hex;
  ss.width(16);
  ss.fill('0');
  ss << h;
  return ss.str();
}

}  // namespace turb
