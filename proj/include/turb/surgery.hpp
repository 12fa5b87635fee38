#pragma once

#include <turb/chart.hpp>

namespace turb {

namespace detail {

inline RawChart::Edge* raw_edge(RawChart& raw, const std::string& id) {
  for (auto& e : raw.edges)
    if (e.id == id) return &e;
  return nullptr;
}

inline bool raw_is_internal(const RawChart& raw, const std::string& vid) {
  for (auto& v : raw.vertices)
    if (v.id == vid) return v.kind == VertexKind::internal;
  return false;
}

}  // namespace detail

// Contracts an idle edge. `vanishing` selects which endpoint disappears; it must
// carry a lonely half-edge of the edge. By default the end-0 vertex is tried first.
inline Chart contract_idle_edge(const Chart& c, const std::string& edge, std::optional<std::string> vanishing = std::nullopt) {
  EdgeIndex a = c.edge_index(edge);
  if (c.is_loop(a)) fail(ErrorCode::NotIdle, "edge '" + edge + "' is a loop");

  auto lonely_internal = [&](int end) {
    HalfEdge h{a, static_cast<std::uint8_t>(end)};
    VertexIndex v = c.vertex_of(h);
    return c.is_internal(v) && c.cls(v, c.side(h)).size() == 1;
  };
  // A fringe survivor can only absorb a single half-edge.
  auto usable = [&](int end) {
    if (!lonely_internal(end)) return false;
    HalfEdge h{a, static_cast<std::uint8_t>(end)};
    VertexIndex other = c.ends(a)[1 - end];
    if (c.is_fringe(other)) return c.cls(c.vertex_of(h), 1 - c.side(h)).size() == 1;
    return true;
  };

  int end = -1;
  if (vanishing) {
    for (int k = 0; k < 2; ++k)
      if (c.vertex_id(c.ends(a)[k]) == *vanishing && usable(k)) end = k;
  } else {
    for (int k = 1; k >= 0; --k)
      if (usable(k)) end = k;
  }
  if (end < 0) fail(ErrorCode::NotIdle, "edge '" + edge + "' has no lonely internal half-edge to contract at");

  HalfEdge alpha1{a, static_cast<std::uint8_t>(end)};
  HalfEdge alpha2 = alpha1.partner();
  VertexIndex v1 = c.vertex_of(alpha1), v2 = c.vertex_of(alpha2);
  const auto& f = c.cls(v1, 1 - c.side(alpha1));

  RawChart raw = c.to_raw();
  const std::string& v1id = c.vertex_id(v1);
  const std::string& v2id = c.vertex_id(v2);
  std::vector<HalfEdgeKey> fkeys;
  for (auto h : f) fkeys.push_back({c.edge_id(h.edge), h.end});

  if (c.is_internal(v2)) {
    auto& g = raw.classes[v2id][c.side(alpha2)];
    std::vector<HalfEdgeKey> spliced;
    for (auto& k : g) {
      if (k.edge == edge) {
        spliced.insert(spliced.end(), fkeys.begin(), fkeys.end());
      } else {
        spliced.push_back(k);
      }
    }
    g = std::move(spliced);
  }
  for (auto& k : fkeys) detail::raw_edge(raw, k.edge)->ends[k.end] = v2id;
  raw.classes.erase(v1id);
  std::erase_if(raw.vertices, [&](const RawChart::Vertex& v) { return v.id == v1id; });
  std::erase_if(raw.edges, [&](const RawChart::Edge& e) { return e.id == edge; });
  normalize_kinds(raw);
  return validate_chart(raw);
}

// Removes the edges in `w`; vertices left without edges disappear and vertices
// left with a single half-edge become fringe.
inline Chart delete_edges(const Chart& c, const std::set<std::string>& w) {
  for (auto& id : w) c.edge_index(id);
  RawChart raw = c.to_raw();
  std::erase_if(raw.edges, [&](const RawChart::Edge& e) { return w.count(e.id) > 0; });
  for (auto& [vid, lists] : raw.classes)
    for (auto& l : lists) std::erase_if(l, [&](const HalfEdgeKey& k) { return w.count(k.edge) > 0; });
  std::map<std::string, std::size_t> degree;
  for (auto& e : raw.edges) {
    ++degree[e.ends[0]];
    ++degree[e.ends[1]];
  }
  std::erase_if(raw.vertices, [&](const RawChart::Vertex& v) { return degree[v.id] == 0; });
  for (auto it = raw.classes.begin(); it != raw.classes.end();) {
    if (degree[it->first] <= 1)
      it = raw.classes.erase(it);
    else
      ++it;
  }
  for (auto& [vid, lists] : raw.classes)
    if (lists[0].empty() || lists[1].empty())
      fail(ErrorCode::BadPartition, "deletion empties a class at '" + vid + "' which keeps degree " + std::to_string(degree[vid]));
  normalize_kinds(raw);
  return validate_chart(raw);
}

}  // namespace turb
