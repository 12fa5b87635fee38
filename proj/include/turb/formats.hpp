#pragma once

#include <turb/ample.hpp>
#include <turb/convert.hpp>
#include <turb/envelope.hpp>
#include <turb/io.hpp>

namespace turb {

namespace detail {

inline std::vector<std::string> string_list(const Json& j, const std::string& where) {
  if (!j.is_array()) schema(where, "expected a list of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) schema(where + "[" + std::to_string(i) + "]", "expected a string");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

inline std::map<std::string, std::vector<std::string>> order_map(const Json& j, const std::string& where) {
  if (!j.is_object()) schema(where, "expected an object");
  std::map<std::string, std::vector<std::string>> out;
  for (auto& [k, v] : j.items()) out[k] = string_list(v, where + "." + k);
  return out;
}

inline HalfEdgeKey key_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_number_integer()) schema(where, "expected [edge-id, end-index]");
  int end = j[1].get<int>();
  if (end != 0 && end != 1) schema(where, "end index must be 0 or 1");
  return {j[0].get<std::string>(), end};
}

}  // namespace detail

// ---------------------------------------------------------------- digraphs

inline FramedDigraph digraph_from_json(const Json& j) {
  FramedDigraph dg;
  if (!j.is_object()) detail::schema("$", "digraph must be an object");
  dg.name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "";
  dg.vertices = detail::string_list(detail::field(j, "vertices", "$"), "$.vertices");
  const Json& es = detail::field(j, "edges", "$");
  if (!es.is_array()) detail::schema("$.edges", "expected an array");
  std::set<std::string> vs(dg.vertices.begin(), dg.vertices.end());
  for (std::size_t i = 0; i < es.size(); ++i) {
    std::string where = "$.edges[" + std::to_string(i) + "]";
    FramedDigraph::Edge e{detail::string_field(es[i], "id", where), detail::string_field(es[i], "tail", where),
                          detail::string_field(es[i], "head", where)};
    if (!vs.count(e.tail) || !vs.count(e.head)) detail::schema(where, "unknown endpoint");
    dg.edges.push_back(std::move(e));
  }
  if (j.contains("in_order")) dg.in_order = detail::order_map(j["in_order"], "$.in_order");
  if (j.contains("out_order")) dg.out_order = detail::order_map(j["out_order"], "$.out_order");
  return dg;
}

inline Json to_json(const FramedDigraph& dg) {
  Json j;
  j["name"] = dg.name;
  j["vertices"] = dg.vertices;
  j["edges"] = Json::array();
  for (auto& e : dg.edges) j["edges"].push_back({{"id", e.id}, {"tail", e.tail}, {"head", e.head}});
  j["in_order"] = Json::object();
  for (auto& [v, o] : dg.in_order) j["in_order"][v] = o;
  j["out_order"] = Json::object();
  for (auto& [v, o] : dg.out_order) j["out_order"][v] = o;
  return j;
}

// ---------------------------------------------------------------- fringed algebras

inline FringedAlgebra algebra_from_json(const Json& j) {
  FringedAlgebra alg;
  if (!j.is_object()) detail::schema("$", "algebra must be an object");
  alg.name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "";
  const Json& vs = detail::field(j, "vertices", "$");
  if (!vs.is_array()) detail::schema("$.vertices", "expected an array");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    std::string where = "$.vertices[" + std::to_string(i) + "]";
    std::string kind = detail::string_field(vs[i], "kind", where);
    if (kind != "internal" && kind != "fringe") detail::schema(where + ".kind", "expected 'internal' or 'fringe'");
    alg.vertices.push_back({detail::string_field(vs[i], "id", where), kind == "internal" ? VertexKind::internal : VertexKind::fringe});
  }
  const Json& as = detail::field(j, "arrows", "$");
  if (!as.is_array()) detail::schema("$.arrows", "expected an array");
  for (std::size_t i = 0; i < as.size(); ++i) {
    std::string where = "$.arrows[" + std::to_string(i) + "]";
    alg.arrows.push_back({detail::string_field(as[i], "id", where), detail::string_field(as[i], "tail", where),
                          detail::string_field(as[i], "head", where)});
  }
  const Json& rs = detail::field(j, "relations", "$");
  if (!rs.is_array()) detail::schema("$.relations", "expected an array");
  for (std::size_t i = 0; i < rs.size(); ++i) {
    auto pair = detail::string_list(rs[i], "$.relations[" + std::to_string(i) + "]");
    if (pair.size() != 2) detail::schema("$.relations[" + std::to_string(i) + "]", "a relation is a pair of arrows");
    alg.relations.push_back({pair[0], pair[1]});
  }
  return alg;
}

inline Json to_json(const FringedAlgebra& alg) {
  Json j;
  j["name"] = alg.name;
  j["vertices"] = Json::array();
  for (auto& v : alg.vertices) j["vertices"].push_back({{"id", v.id}, {"kind", v.kind == VertexKind::internal ? "internal" : "fringe"}});
  j["arrows"] = Json::array();
  for (auto& a : alg.arrows) j["arrows"].push_back({{"id", a.id}, {"tail", a.tail}, {"head", a.head}});
  j["relations"] = Json::array();
  for (auto& [x, y] : alg.relations) j["relations"].push_back({x, y});
  return j;
}

// ---------------------------------------------------------------- signed graphs

inline SignedGraph signed_graph_from_json(const Json& j) {
  SignedGraph sg;
  const Json& n = detail::field(j, "n_plus_1", "$");
  if (!n.is_number_integer()) detail::schema("$.n_plus_1", "expected an integer");
  sg.n_plus_1 = n.get<int>();
  const Json& es = detail::field(j, "edges", "$");
  if (!es.is_array()) detail::schema("$.edges", "expected an array");
  for (std::size_t i = 0; i < es.size(); ++i) {
    std::string where = "$.edges[" + std::to_string(i) + "]";
    const Json& ends = detail::field(es[i], "ends", where);
    if (!ends.is_array() || ends.size() != 2 || !ends[0].is_number_integer() || !ends[1].is_number_integer())
      detail::schema(where + ".ends", "expected two vertex numbers");
    std::string sign = detail::string_field(es[i], "sign", where);
    if (sign != "+" && sign != "-") detail::schema(where + ".sign", "expected '+' or '-'");
    sg.edges.push_back({detail::string_field(es[i], "id", where), ends[0].get<int>(), ends[1].get<int>(), sign == "+"});
  }
  if (j.contains("netflow")) {
    const Json& a = j["netflow"];
    if (!a.is_array()) detail::schema("$.netflow", "expected an array");
    for (auto& x : a) {
      if (!x.is_number_integer()) detail::schema("$.netflow", "expected integers");
      sg.netflow.push_back(x.get<long>());
    }
  } else {
    sg.netflow.assign(std::size_t(std::max(sg.n_plus_1, 1)), 0);
    sg.netflow[0] = 2;
  }
  return sg;
}

inline Json to_json(const SignedGraph& sg) {
  Json j;
  j["n_plus_1"] = sg.n_plus_1;
  j["netflow"] = sg.netflow;
  j["edges"] = Json::array();
  for (auto& e : sg.edges) j["edges"].push_back({{"id", e.id}, {"ends", {e.i, e.j}}, {"sign", e.positive ? "+" : "-"}});
  return j;
}

inline Json to_json(const SignedCertificate& cert) {
  Json j = Json::array();
  for (std::size_t k = 0; k < cert.order.size(); ++k)
    j.push_back({{"signed_vertex", int(k) + 2}, {"chart_vertex", cert.order[k]}, {"negative_class", cert.minus_side[k]}});
  return j;
}

// ---------------------------------------------------------------- rotations

struct RotationFile {
  std::string chart_path;  // relative to the rotation file
  std::map<std::string, std::vector<HalfEdgeKey>> rotation;
};

inline RotationFile rotation_from_json(const Json& j) {
  RotationFile r;
  r.chart_path = detail::string_field(j, "chart", "$");
  const Json& rot = detail::field(j, "rotation", "$");
  if (!rot.is_object()) detail::schema("$.rotation", "expected an object");
  for (auto& [v, list] : rot.items()) {
    std::string where = "$.rotation." + v;
    if (!list.is_array()) detail::schema(where, "expected a list");
    for (std::size_t i = 0; i < list.size(); ++i) r.rotation[v].push_back(detail::key_from_json(list[i], where + "[" + std::to_string(i) + "]"));
  }
  return r;
}

// ---------------------------------------------------------------- envelopes and ampleness

inline Json to_json(const MoveRecord& r) {
  Json j;
  j["move"] = move_name(r.kind);
  if (!r.vertex.empty()) j["vertex"] = r.vertex;
  if (r.kind == MoveKind::degree_reduce) j["a"] = r.a;
  if (!r.edge.empty()) j["edge"] = r.edge;
  if (!r.band.empty()) j["band"] = r.band;
  j["new_vertices"] = r.new_vertices;
  j["new_edges"] = r.new_edges;
  if (!r.placement.empty()) j["placement"] = r.placement;
  if (r.kind == MoveKind::fill_step) j["by_convention"] = r.by_convention;
  if (!r.fill_sublog.empty()) {
    j["fill"] = Json::array();
    for (auto& s : r.fill_sublog) j["fill"].push_back(to_json(s));
  }
  if (!r.vanishing.empty()) j["vanishing"] = r.vanishing;
  return j;
}

inline Json to_json(const GentleEnvelope& env) {
  Json j;
  j["envelope"] = to_json(env.envelope);
  j["W"] = Json(std::vector<std::string>(env.w.begin(), env.w.end()));
  j["embedding"] = Json::object();
  for (auto& [a, b] : env.embedding) j["embedding"][a] = b;
  j["log"] = Json::array();
  for (auto& r : env.log) j["log"].push_back(to_json(r));
  return j;
}

inline Json to_json(const EnvelopeReport& r) {
  return {{"ok", r.ok}, {"gentle", r.gentle}, {"isomorphic", r.isomorphic}, {"face_equal", r.face_equal},
          {"trails_equal", r.trails_equal}, {"failures", r.failures}};
}

inline Json to_json(const Chart& c, const AmplenessReport& r) {
  Json j;
  j["cap"] = r.cap;
  j["exact"] = r.exact;
  std::vector<std::string> valid;
  for (auto e : r.valid_edges) valid.push_back(c.edge_id(e));
  j["valid_edges"] = valid;
  j["exceptional_trails"] = Json::array();
  for (auto& t : r.exceptional_trails) j["exceptional_trails"].push_back(to_json(c, t));
  j["amply_framed"] = r.amply_framed;
  j["reduced_space_complete"] = r.reduced_space_complete;
  return j;
}

}  // namespace turb
