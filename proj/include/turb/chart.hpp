#pragma once

#include <turb/error.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace turb {

enum class VertexKind : std::uint8_t { internal, fringe };

using VertexIndex = std::size_t;
using EdgeIndex = std::size_t;

// Id-based description, as read from a file or produced by a surgery.
struct HalfEdgeKey {
  std::string edge;
  int end = 0;
  auto operator<=>(const HalfEdgeKey&) const = default;
};

struct RawChart {
  struct Vertex {
    std::string id;
    VertexKind kind = VertexKind::internal;
  };
  struct Edge {
    std::string id;
    std::array<std::string, 2> ends;
  };
  std::string name;
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::map<std::string, std::array<std::vector<HalfEdgeKey>, 2>> classes;
};

struct HalfEdge {
  EdgeIndex edge = 0;
  std::uint8_t end = 0;

  HalfEdge partner() const { return {edge, static_cast<std::uint8_t>(1 - end)}; }
  std::size_t index() const { return 2 * edge + end; }
  auto operator<=>(const HalfEdge&) const = default;
};

struct HalfEdgeStatus {
  bool high = false;  // some member of the class lies below it
  bool low = false;   // some member of the class lies above it
  bool lonely() const { return !high && !low; }
};

class Chart;
Chart validate_chart(const RawChart& raw);

// A validated framed turbulence chart. Vertices and edges are sorted by id; the
// index of a vertex or edge is its position in that order.
class Chart {
 public:
  const std::string& name() const { return name_; }
  std::size_t vertex_count() const { return vertex_ids_.size(); }
  std::size_t edge_count() const { return edge_ids_.size(); }

  const std::string& vertex_id(VertexIndex v) const { return vertex_ids_[v]; }
  const std::string& edge_id(EdgeIndex e) const { return edge_ids_[e]; }

  std::optional<VertexIndex> find_vertex(const std::string& id) const {
    auto it = std::lower_bound(vertex_ids_.begin(), vertex_ids_.end(), id);
    if (it == vertex_ids_.end() || *it != id) return std::nullopt;
    return static_cast<VertexIndex>(it - vertex_ids_.begin());
  }
  std::optional<EdgeIndex> find_edge(const std::string& id) const {
    auto it = std::lower_bound(edge_ids_.begin(), edge_ids_.end(), id);
    if (it == edge_ids_.end() || *it != id) return std::nullopt;
    return static_cast<EdgeIndex>(it - edge_ids_.begin());
  }
  EdgeIndex edge_index(const std::string& id) const {
    auto e = find_edge(id);
    if (!e) fail(ErrorCode::UnknownEdge, "no edge '" + id + "'");
    return *e;
  }

  VertexKind kind(VertexIndex v) const { return kinds_[v]; }
  bool is_internal(VertexIndex v) const { return kinds_[v] == VertexKind::internal; }
  bool is_fringe(VertexIndex v) const { return kinds_[v] == VertexKind::fringe; }

  const std::array<VertexIndex, 2>& ends(EdgeIndex e) const { return ends_[e]; }
  bool is_loop(EdgeIndex e) const { return ends_[e][0] == ends_[e][1]; }
  // Number of fringe ends of the edge (0, 1 or 2).
  int fringe_ends(EdgeIndex e) const { return int(is_fringe(ends_[e][0])) + int(is_fringe(ends_[e][1])); }

  VertexIndex vertex_of(HalfEdge h) const { return ends_[h.edge][h.end]; }
  // Class index (0 or 1) of an internal half-edge; -1 for fringe half-edges.
  int side(HalfEdge h) const { return side_[h.index()]; }
  // Position inside its class, least first.
  std::size_t rank(HalfEdge h) const { return rank_[h.index()]; }

  const std::vector<HalfEdge>& cls(VertexIndex v, int side) const { return classes_[v][side]; }
  std::size_t degree(VertexIndex v) const { return classes_[v][0].size() + classes_[v][1].size() + fringe_half_[v].size(); }

  std::vector<HalfEdge> incident(VertexIndex v) const {
    if (is_fringe(v)) return fringe_half_[v];
    std::vector<HalfEdge> out = classes_[v][0];
    out.insert(out.end(), classes_[v][1].begin(), classes_[v][1].end());
    return out;
  }

  HalfEdgeStatus status(HalfEdge h) const {
    HalfEdgeStatus s;
    int sd = side(h);
    if (sd < 0) return s;
    std::size_t size = classes_[vertex_of(h)][sd].size();
    std::size_t r = rank(h);
    s.high = r > 0;
    s.low = r + 1 < size;
    return s;
  }

  RawChart to_raw() const {
    RawChart raw;
    raw.name = name_;
    for (VertexIndex v = 0; v < vertex_count(); ++v) raw.vertices.push_back({vertex_ids_[v], kinds_[v]});
    for (EdgeIndex e = 0; e < edge_count(); ++e)
      raw.edges.push_back({edge_ids_[e], {vertex_ids_[ends_[e][0]], vertex_ids_[ends_[e][1]]}});
    for (VertexIndex v = 0; v < vertex_count(); ++v) {
      if (!is_internal(v)) continue;
      auto& entry = raw.classes[vertex_ids_[v]];
      for (int s = 0; s < 2; ++s)
        for (auto h : classes_[v][s]) entry[s].push_back({edge_ids_[h.edge], h.end});
    }
    return raw;
  }

  RawChart::Vertex raw_vertex(VertexIndex v) const { return {vertex_ids_[v], kinds_[v]}; }

 private:
  friend Chart validate_chart(const RawChart& raw);

  std::string name_;
  std::vector<std::string> vertex_ids_;
  std::vector<VertexKind> kinds_;
  std::vector<std::string> edge_ids_;
  std::vector<std::array<VertexIndex, 2>> ends_;
  std::vector<std::array<std::vector<HalfEdge>, 2>> classes_;
  std::vector<std::vector<HalfEdge>> fringe_half_;
  std::vector<int> side_;
  std::vector<std::size_t> rank_;
};

inline Chart validate_chart(const RawChart& raw) {
  Chart c;
  c.name_ = raw.name;

  std::vector<RawChart::Vertex> vs = raw.vertices;
  std::sort(vs.begin(), vs.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < vs.size(); ++i)
    if (vs[i].id == vs[i - 1].id) fail(ErrorCode::DuplicateId, "vertex '" + vs[i].id + "'");
  std::vector<RawChart::Edge> es = raw.edges;
  std::sort(es.begin(), es.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < es.size(); ++i)
    if (es[i].id == es[i - 1].id) fail(ErrorCode::DuplicateId, "edge '" + es[i].id + "'");

  for (auto& v : vs) {
    c.vertex_ids_.push_back(v.id);
    c.kinds_.push_back(v.kind);
  }
  for (auto& e : es) {
    c.edge_ids_.push_back(e.id);
    std::array<VertexIndex, 2> ends{};
    for (int k = 0; k < 2; ++k) {
      auto v = c.find_vertex(e.ends[k]);
      if (!v) fail(ErrorCode::DanglingHalfEdge, "edge '" + e.id + "' ends at unknown vertex '" + e.ends[k] + "'");
      ends[k] = *v;
    }
    c.ends_.push_back(ends);
  }

  std::size_t nv = vs.size(), ne = es.size();
  std::vector<std::size_t> degree(nv, 0);
  for (auto& en : c.ends_) {
    ++degree[en[0]];
    ++degree[en[1]];
  }
  for (VertexIndex v = 0; v < nv; ++v) {
    if (degree[v] == 0) fail(ErrorCode::IsolatedVertex, "vertex '" + c.vertex_ids_[v] + "'");
    VertexKind expected = degree[v] == 1 ? VertexKind::fringe : VertexKind::internal;
    if (expected == VertexKind::fringe && raw.classes.count(c.vertex_ids_[v]))
      fail(ErrorCode::FringeInClasses, "degree-1 vertex '" + c.vertex_ids_[v] + "' has classes");
    if (c.kinds_[v] != expected)
      fail(ErrorCode::BadPartition, "vertex '" + c.vertex_ids_[v] + "' has degree " + std::to_string(degree[v]) +
                                        " but is declared " + (c.kinds_[v] == VertexKind::fringe ? "fringe" : "internal"));
  }

  c.classes_.assign(nv, {});
  c.fringe_half_.assign(nv, {});
  c.side_.assign(2 * ne, -1);
  c.rank_.assign(2 * ne, 0);

  for (const auto& [vid, lists] : raw.classes) {
    auto v = c.find_vertex(vid);
    if (!v) fail(ErrorCode::DanglingHalfEdge, "classes given for unknown vertex '" + vid + "'");
    if (c.kinds_[*v] == VertexKind::fringe) fail(ErrorCode::FringeInClasses, "fringe vertex '" + vid + "'");
  }

  for (VertexIndex v = 0; v < nv; ++v) {
    if (c.kinds_[v] == VertexKind::fringe) {
      for (EdgeIndex e = 0; e < ne; ++e)
        for (std::uint8_t k = 0; k < 2; ++k)
          if (c.ends_[e][k] == v) c.fringe_half_[v].push_back({e, k});
      continue;
    }
    const std::string& vid = c.vertex_ids_[v];
    auto it = raw.classes.find(vid);
    if (it == raw.classes.end()) fail(ErrorCode::BadPartition, "internal vertex '" + vid + "' has no classes");
    std::set<HalfEdge> seen;
    for (int s = 0; s < 2; ++s) {
      if (it->second[s].empty()) fail(ErrorCode::BadPartition, "empty class " + std::to_string(s) + " at '" + vid + "'");
      for (const auto& key : it->second[s]) {
        auto e = c.find_edge(key.edge);
        if (!e || key.end < 0 || key.end > 1 || c.ends_[*e][key.end] != v)
          fail(ErrorCode::DanglingHalfEdge,
               "half-edge (" + key.edge + "," + std::to_string(key.end) + ") is not incident to '" + vid + "'");
        HalfEdge h{*e, static_cast<std::uint8_t>(key.end)};
        if (!seen.insert(h).second)
          fail(ErrorCode::BadPartition, "half-edge (" + key.edge + "," + std::to_string(key.end) + ") listed twice at '" + vid + "'");
        c.side_[h.index()] = s;
        c.rank_[h.index()] = c.classes_[v][s].size();
        c.classes_[v][s].push_back(h);
      }
    }
    if (seen.size() != degree[v]) fail(ErrorCode::BadPartition, "classes at '" + vid + "' miss incident half-edges");
  }
  return c;
}

// Sets every vertex kind from its degree and drops classes of fringe vertices.
inline void normalize_kinds(RawChart& raw) {
  std::map<std::string, std::size_t> degree;
  for (auto& e : raw.edges) {
    ++degree[e.ends[0]];
    ++degree[e.ends[1]];
  }
  for (auto& v : raw.vertices) {
    v.kind = degree[v.id] == 1 ? VertexKind::fringe : VertexKind::internal;
    if (v.kind == VertexKind::fringe) raw.classes.erase(v.id);
  }
}

// Smallest id of the form base#tagN not present in `taken`.
inline std::string fresh_id(const std::string& base, const std::string& tag, const std::set<std::string>& taken) {
  for (std::size_t n = 1;; ++n) {
    std::string id = base + "#" + tag + std::to_string(n);
    if (!taken.count(id)) return id;
  }
}

}  // namespace turb
