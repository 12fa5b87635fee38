#pragma once

#include <turb/chart.hpp>

#include <deque>
#include <functional>

namespace turb {

struct Isomorphism {
  std::map<std::string, std::string> vertices;
  std::map<std::string, std::string> edges;
};

namespace detail {

struct IsoState {
  std::vector<long> hmap, hinv, vmap, vinv;
};

inline bool propagate(const Chart& a, const Chart& b, IsoState& st, HalfEdge x0, HalfEdge y0) {
  std::deque<std::pair<HalfEdge, HalfEdge>> queue{{x0, y0}};
  while (!queue.empty()) {
    auto [x, y] = queue.front();
    queue.pop_front();
    long xi = long(x.index()), yi = long(y.index());
    if (st.hmap[xi] == yi) continue;
    if (st.hmap[xi] >= 0 || st.hinv[yi] >= 0) return false;
    VertexIndex v = a.vertex_of(x), w = b.vertex_of(y);
    if (a.is_fringe(v) != b.is_fringe(w)) return false;
    if (st.vmap[v] >= 0 && st.vmap[v] != long(w)) return false;
    if (st.vinv[w] >= 0 && st.vinv[w] != long(v)) return false;
    if (a.is_loop(x.edge) != b.is_loop(y.edge)) return false;
    if (a.is_internal(v)) {
      int sx = a.side(x), sy = b.side(y);
      if (a.rank(x) != b.rank(y)) return false;
      if (a.cls(v, sx).size() != b.cls(w, sy).size() || a.cls(v, 1 - sx).size() != b.cls(w, 1 - sy).size()) return false;
    }
    st.hmap[xi] = yi;
    st.hinv[yi] = xi;
    st.vmap[v] = long(w);
    st.vinv[w] = long(v);
    queue.push_back({x.partner(), y.partner()});
    if (a.is_internal(v)) {
      int sx = a.side(x), sy = b.side(y);
      for (int k = 0; k < 2; ++k) {
        const auto& ca = a.cls(v, k == 0 ? sx : 1 - sx);
        const auto& cb = b.cls(w, k == 0 ? sy : 1 - sy);
        for (std::size_t i = 0; i < ca.size(); ++i) queue.push_back({ca[i], cb[i]});
      }
    }
  }
  return true;
}

}  // namespace detail

// Framed-chart isomorphism: preserves incidence, the class partition at every
// internal vertex (the two classes may swap), and the order inside each class.
inline std::optional<Isomorphism> charts_isomorphic(const Chart& a, const Chart& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return std::nullopt;
  std::size_t nh = 2 * a.edge_count();

  // Connected components of a, each represented by one root half-edge.
  std::vector<HalfEdge> roots;
  {
    std::vector<bool> seen(a.vertex_count(), false);
    for (VertexIndex v = 0; v < a.vertex_count(); ++v) {
      if (seen[v]) continue;
      roots.push_back(a.incident(v).front());
      std::vector<VertexIndex> stack{v};
      seen[v] = true;
      while (!stack.empty()) {
        VertexIndex u = stack.back();
        stack.pop_back();
        for (auto h : a.incident(u)) {
          VertexIndex x = a.vertex_of(h.partner());
          if (!seen[x]) {
            seen[x] = true;
            stack.push_back(x);
          }
        }
      }
    }
  }

  detail::IsoState init{std::vector<long>(nh, -1), std::vector<long>(nh, -1), std::vector<long>(a.vertex_count(), -1),
                        std::vector<long>(b.vertex_count(), -1)};
  std::function<std::optional<detail::IsoState>(std::size_t, const detail::IsoState&)> search =
      [&](std::size_t k, const detail::IsoState& st) -> std::optional<detail::IsoState> {
    if (k == roots.size()) return st;
    for (std::size_t yi = 0; yi < nh; ++yi) {
      if (st.hinv[yi] >= 0) continue;
      detail::IsoState next = st;
      HalfEdge y{yi / 2, static_cast<std::uint8_t>(yi % 2)};
      if (!detail::propagate(a, b, next, roots[k], y)) continue;
      if (auto done = search(k + 1, next)) return done;
    }
    return std::nullopt;
  };
  auto st = search(0, init);
  if (!st) return std::nullopt;

  Isomorphism iso;
  for (VertexIndex v = 0; v < a.vertex_count(); ++v) iso.vertices[a.vertex_id(v)] = b.vertex_id(std::size_t(st->vmap[v]));
  for (EdgeIndex e = 0; e < a.edge_count(); ++e) iso.edges[a.edge_id(e)] = b.edge_id(std::size_t(st->hmap[2 * e]) / 2);
  return iso;
}

}  // namespace turb
