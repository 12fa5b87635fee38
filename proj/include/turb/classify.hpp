#pragma once

#include <turb/trails.hpp>

namespace turb {

struct Violation {
  std::string rule;
  std::string location;
};

struct ClassificationReport {
  bool full = false;
  bool sub_full = false;
  bool directable = false;
  std::optional<std::vector<Direction>> orientation;  // per edge: forward means ends[0] -> ends[1]
  bool acyclic = false;
  std::optional<Trail> witness_band;
  bool locally_gentle = false;
  bool gentle = false;
  std::set<EdgeIndex> steep_edges;
  std::vector<Violation> violations;
};

inline bool is_ascending(const Chart& c, OrientedEdge a) {
  auto t = c.status(a.tail()), h = c.status(a.head());
  return (t.low || t.lonely()) && (h.high || h.lonely());
}

inline bool is_descending(const Chart& c, OrientedEdge a) {
  auto t = c.status(a.tail()), h = c.status(a.head());
  return (t.high || t.lonely()) && (h.low || h.lonely());
}

inline bool is_steep(const Chart& c, EdgeIndex e) {
  OrientedEdge a{e, Direction::forward};
  return is_ascending(c, a) || is_descending(c, a);
}

inline bool is_full(const Chart& c) {
  for (VertexIndex v = 0; v < c.vertex_count(); ++v)
    if (c.is_internal(v) && (c.cls(v, 0).size() != 2 || c.cls(v, 1).size() != 2)) return false;
  return true;
}

inline bool is_sub_full(const Chart& c) {
  for (VertexIndex v = 0; v < c.vertex_count(); ++v)
    if (c.is_internal(v) && (c.cls(v, 0).size() > 2 || c.cls(v, 1).size() > 2)) return false;
  return true;
}

namespace detail {

// Directed cycle in the transition digraph restricted by `allowed`; returned as a word.
inline std::optional<Word> find_transition_cycle(const Chart& c, const std::function<bool(OrientedEdge)>& allowed) {
  std::size_t n = 2 * c.edge_count();
  auto idx = [](OrientedEdge a) { return 2 * a.edge + (a.dir == Direction::forward ? 0 : 1); };
  auto node = [](std::size_t i) { return OrientedEdge{i / 2, i % 2 == 0 ? Direction::forward : Direction::backward}; };
  std::vector<int> color(n, 0);
  std::vector<std::size_t> parent(n, n);
  for (std::size_t s = 0; s < n; ++s) {
    if (color[s] != 0 || !allowed(node(s))) continue;
    // Iterative DFS keeping the explicit stack of (node, next successor index).
    std::vector<std::pair<std::size_t, std::size_t>> stack{{s, 0}};
    color[s] = 1;
    while (!stack.empty()) {
      auto& [u, k] = stack.back();
      auto succ = continuations(c, node(u).head());
      if (k >= succ.size()) {
        color[u] = 2;
        stack.pop_back();
        continue;
      }
      OrientedEdge b = succ[k++];
      if (!allowed(b)) continue;
      std::size_t v = idx(b);
      if (color[v] == 1) {
        Word cyc;
        std::size_t pos = 0;
        while (stack[pos].first != v) ++pos;
        for (std::size_t i = pos; i < stack.size(); ++i) cyc.push_back(node(stack[i].first));
        return cyc;
      }
      if (color[v] == 0) {
        color[v] = 1;
        parent[v] = u;
        stack.push_back({v, 0});
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline std::optional<Trail> find_band(const Chart& c) {
  auto cyc = detail::find_transition_cycle(c, [](OrientedEdge) { return true; });
  if (!cyc) return std::nullopt;
  return canonical_band_unchecked(*cyc);
}

// All-ascending band (a descending one is the inverse of an ascending one).
inline std::optional<Word> find_ascending_cycle(const Chart& c) {
  return detail::find_transition_cycle(c, [&](OrientedEdge a) { return is_ascending(c, a); });
}

inline std::optional<std::vector<Direction>> directable_orientation(const Chart& c) {
  // x[v] = index of the class at v holding the heads. An edge with internal ends
  // (v0,v1) on sides (c0,c1) forces x[v0] ^ x[v1] = 1 ^ c0 ^ c1.
  std::size_t n = c.vertex_count();
  std::vector<std::size_t> parent(n);
  std::vector<int> parity(n, 0);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  std::function<std::pair<std::size_t, int>(std::size_t)> find = [&](std::size_t v) -> std::pair<std::size_t, int> {
    if (parent[v] == v) return {v, 0};
    auto [r, p] = find(parent[v]);
    parent[v] = r;
    parity[v] ^= p;
    return {r, parity[v]};
  };
  for (EdgeIndex e = 0; e < c.edge_count(); ++e) {
    auto [v0, v1] = c.ends(e);
    if (!c.is_internal(v0) || !c.is_internal(v1)) continue;
    int want = 1 ^ c.side({e, 0}) ^ c.side({e, 1});
    auto [r0, p0] = find(v0);
    auto [r1, p1] = find(v1);
    if (r0 == r1) {
      if ((p0 ^ p1) != want) return std::nullopt;
    } else {
      parent[r0] = r1;
      parity[r0] = p0 ^ p1 ^ want;
    }
  }
  std::vector<Direction> orient(c.edge_count(), Direction::forward);
  for (EdgeIndex e = 0; e < c.edge_count(); ++e) {
    auto [v0, v1] = c.ends(e);
    if (c.is_internal(v1)) {
      int x1 = find(v1).second;
      orient[e] = x1 == c.side({e, 1}) ? Direction::forward : Direction::backward;
    } else if (c.is_internal(v0)) {
      int x0 = find(v0).second;
      orient[e] = x0 == c.side({e, 0}) ? Direction::backward : Direction::forward;
    }
  }
  return orient;
}

inline ClassificationReport classify_chart(const Chart& c) {
  ClassificationReport r;
  r.full = is_full(c);
  r.sub_full = is_sub_full(c);
  r.orientation = directable_orientation(c);
  r.directable = r.orientation.has_value();
  r.witness_band = find_band(c);
  r.acyclic = !r.witness_band.has_value();

  bool no_fringe_to_fringe = true;
  bool all_steep = true;
  for (EdgeIndex e = 0; e < c.edge_count(); ++e) {
    if (is_steep(c, e))
      r.steep_edges.insert(e);
    else {
      all_steep = false;
      r.violations.push_back({"steep", "edge " + c.edge_id(e)});
    }
    if (c.fringe_ends(e) == 2) {
      no_fringe_to_fringe = false;
      r.violations.push_back({"no_fringe_to_fringe", "edge " + c.edge_id(e)});
    }
    if (c.is_loop(e) && c.side({e, 0}) == c.side({e, 1}))
      r.violations.push_back({"warning:loop_same_class", "edge " + c.edge_id(e)});
  }
  for (VertexIndex v = 0; v < c.vertex_count(); ++v)
    if (c.is_internal(v) && (c.cls(v, 0).size() != 2 || c.cls(v, 1).size() != 2))
      r.violations.push_back({"full", "vertex " + c.vertex_id(v)});

  r.locally_gentle = r.full && no_fringe_to_fringe && all_steep;
  bool monotone_band = false;
  if (r.locally_gentle) {
    auto asc = find_ascending_cycle(c);
    auto desc = detail::find_transition_cycle(c, [&](OrientedEdge a) { return is_descending(c, a); });
    monotone_band = asc.has_value() || desc.has_value();
    if (asc) r.violations.push_back({"no_steep_band", "band " + word_to_string(c, *asc)});
  }
  r.gentle = r.locally_gentle && !monotone_band;
  return r;
}

}  // namespace turb
