#pragma once

#include <turb/chart.hpp>

#include <functional>

namespace turb {

enum class Direction : std::uint8_t { forward, backward };

struct OrientedEdge {
  EdgeIndex edge = 0;
  Direction dir = Direction::forward;

  HalfEdge tail() const { return {edge, static_cast<std::uint8_t>(dir == Direction::forward ? 0 : 1)}; }
  HalfEdge head() const { return {edge, static_cast<std::uint8_t>(dir == Direction::forward ? 1 : 0)}; }
  OrientedEdge inverse() const { return {edge, dir == Direction::forward ? Direction::backward : Direction::forward}; }
  auto operator<=>(const OrientedEdge&) const = default;
};

using Word = std::vector<OrientedEdge>;

enum class TrailKind : std::uint8_t { route, band };

struct Trail {
  TrailKind kind = TrailKind::route;
  Word word;
  auto operator<=>(const Trail&) const = default;
};

inline VertexIndex tail_vertex(const Chart& c, OrientedEdge a) { return c.vertex_of(a.tail()); }
inline VertexIndex head_vertex(const Chart& c, OrientedEdge a) { return c.vertex_of(a.head()); }

// a followed by b is allowed: they meet at an internal vertex through different classes.
inline bool junction_ok(const Chart& c, OrientedEdge a, OrientedEdge b) {
  HalfEdge h = a.head(), t = b.tail();
  if (c.vertex_of(h) != c.vertex_of(t)) return false;
  int sh = c.side(h), st = c.side(t);
  return sh >= 0 && st >= 0 && sh != st;
}

inline Word inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

// The empty word counts as a lazy string.
inline bool is_string(const Chart& c, const Word& w) {
  for (auto& a : w)
    if (a.edge >= c.edge_count()) fail(ErrorCode::UnknownEdge, "edge index " + std::to_string(a.edge));
  for (std::size_t i = 1; i < w.size(); ++i)
    if (!junction_ok(c, w[i - 1], w[i])) return false;
  return true;
}

inline bool is_route_word(const Chart& c, const Word& w) {
  return !w.empty() && is_string(c, w) && c.is_fringe(tail_vertex(c, w.front())) && c.is_fringe(head_vertex(c, w.back()));
}

inline bool is_closed_string(const Chart& c, const Word& w) {
  return !w.empty() && is_string(c, w) && junction_ok(c, w.back(), w.front());
}

inline bool is_primitive(const Word& w) {
  std::size_t m = w.size();
  for (std::size_t d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < m && periodic; ++i) periodic = w[i] == w[i - d];
    if (periodic) return false;
  }
  return true;
}

inline Word min_rotation(const Word& w) {
  Word best = w;
  Word r = w;
  for (std::size_t i = 1; i < w.size(); ++i) {
    std::rotate(r.begin(), r.begin() + 1, r.end());
    if (r < best) best = r;
  }
  return best;
}

inline Trail canonical_route_unchecked(const Word& w) {
  Word inv = inverse(w);
  return {TrailKind::route, std::min(w, inv)};
}

inline Trail canonical_band_unchecked(const Word& w) {
  return {TrailKind::band, std::min(min_rotation(w), min_rotation(inverse(w)))};
}

// Canonical representative of a route or band word. Words whose two ends are
// fringe are routes; everything else must close up into a band.
inline Trail canonicalize_trail(const Chart& c, const Word& w) {
  if (w.empty()) fail(ErrorCode::NotAString, "empty word");
  if (!is_string(c, w)) fail(ErrorCode::NotAString, "junction crosses no class boundary");
  if (c.is_fringe(tail_vertex(c, w.front())) && c.is_fringe(head_vertex(c, w.back()))) return canonical_route_unchecked(w);
  if (!junction_ok(c, w.back(), w.front())) fail(ErrorCode::NotClosed, "word does not close up into a band");
  if (!is_primitive(w)) fail(ErrorCode::ImprimitiveBand, "word is a proper power");
  return canonical_band_unchecked(w);
}

inline std::vector<int> indicator(const Chart& c, const Trail& t) {
  std::vector<int> v(c.edge_count(), 0);
  for (auto& a : t.word) ++v[a.edge];
  return v;
}

inline Word word_from_ids(const Chart& c, const std::vector<std::pair<std::string, Direction>>& spec) {
  Word w;
  for (auto& [id, d] : spec) w.push_back({c.edge_index(id), d});
  return w;
}

// Parses "e f- g" style words: an edge id, with a trailing '-' meaning backward.
inline Word parse_word(const Chart& c, const std::string& text) {
  Word w;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == ',')) ++i;
    if (i >= text.size()) break;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != ',') ++j;
    std::string tok = text.substr(i, j - i);
    Direction d = Direction::forward;
    if (tok.size() > 1 && tok.back() == '-') {
      d = Direction::backward;
      tok.pop_back();
    }
    w.push_back({c.edge_index(tok), d});
    i = j;
  }
  return w;
}

inline std::string word_to_string(const Chart& c, const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += c.edge_id(w[i].edge);
    if (w[i].dir == Direction::backward) s += '-';
  }
  return s;
}

struct TrailSets {
  std::set<Trail> routes;
  std::set<Trail> bands;
};

namespace detail {

// Oriented edges leaving vertex v through the class opposite to `arrived`.
inline std::vector<OrientedEdge> continuations(const Chart& c, HalfEdge arrived) {
  std::vector<OrientedEdge> out;
  int s = c.side(arrived);
  if (s < 0) return out;
  for (auto h : c.cls(c.vertex_of(arrived), 1 - s)) out.push_back({h.edge, h.end == 0 ? Direction::forward : Direction::backward});
  return out;
}

inline std::vector<OrientedEdge> all_oriented_edges(const Chart& c) {
  std::vector<OrientedEdge> out;
  for (EdgeIndex e = 0; e < c.edge_count(); ++e) {
    out.push_back({e, Direction::forward});
    out.push_back({e, Direction::backward});
  }
  return out;
}

inline std::vector<OrientedEdge> fringe_starts(const Chart& c) {
  std::vector<OrientedEdge> out;
  for (auto a : all_oriented_edges(c))
    if (c.is_fringe(tail_vertex(c, a))) out.push_back(a);
  return out;
}

// Route shape: simple or s sigma s^-1 with the multiplicity rule.
inline bool elementary_route_shape(const Chart& c, const Word& w) {
  std::size_t m = w.size();
  std::vector<VertexIndex> seq;
  seq.push_back(tail_vertex(c, w[0]));
  for (auto& a : w) seq.push_back(head_vertex(c, a));
  std::map<VertexIndex, int> count;
  for (auto v : seq) ++count[v];
  bool simple = true;
  for (auto& [v, n] : count) simple = simple && n == 1;
  if (simple) return true;
  for (std::size_t k = 1; 2 * k < m; ++k) {
    if (w[m - k] != w[k - 1].inverse()) break;
    std::set<VertexIndex> s(seq.begin(), seq.begin() + k + 1);
    if (s.size() != k + 1) continue;
    bool ok = true;
    for (auto& [v, n] : count) ok = ok && n == (s.count(v) ? 2 : 1);
    if (ok) return true;
  }
  return false;
}

// Band shape: simple or, up to rotation, s sigma1 s^-1 sigma2 (s possibly lazy).
inline bool elementary_band_shape(const Chart& c, const Word& w) {
  std::size_t m = w.size();
  std::map<VertexIndex, int> count;
  for (auto& a : w) ++count[tail_vertex(c, a)];
  bool simple = true;
  for (auto& [v, n] : count) simple = simple && n == 1;
  if (simple) return true;
  for (std::size_t r = 0; r < m; ++r) {
    Word u(w.begin() + r, w.end());
    u.insert(u.end(), w.begin(), w.begin() + r);
    for (std::size_t k = 0; 2 * k + 2 <= m; ++k) {
      for (std::size_t l1 = 1; 2 * k + l1 + 1 <= m; ++l1) {
        bool mirrored = true;
        for (std::size_t i = 0; i < k && mirrored; ++i) mirrored = u[k + l1 + i] == u[k - 1 - i].inverse();
        if (!mirrored) continue;
        if (k == 0) {
          // a lazy s must come back as s^-1: same vertex, crossing the other way
          if (tail_vertex(c, u[l1]) != tail_vertex(c, u[0])) continue;
          if (c.side(u[m - 1].head()) == c.side(u[l1 - 1].head())) continue;
        }
        std::set<VertexIndex> s;
        for (std::size_t i = 0; i <= k; ++i) s.insert(tail_vertex(c, u[i]));
        if (s.size() != k + 1) continue;
        bool ok = true;
        for (auto& [v, n] : count) ok = ok && n == (s.count(v) ? 2 : 1);
        if (ok) return true;
      }
    }
  }
  return false;
}

}  // namespace detail

// Routes and bands whose vertex-visit pattern is simple, lollipop, or barbell.
// Self-compatibility is not checked here.
inline TrailSets enumerate_shaped_trails(const Chart& c) {
  TrailSets out;
  std::vector<int> count(c.vertex_count(), 0);
  Word w;

  std::function<void()> grow_route = [&]() {
    HalfEdge h = w.back().head();
    VertexIndex x = c.vertex_of(h);
    if (c.is_fringe(x)) {
      if (detail::elementary_route_shape(c, w)) out.routes.insert(canonical_route_unchecked(w));
      return;
    }
    for (auto b : detail::continuations(c, h)) {
      VertexIndex y = head_vertex(c, b);
      if (count[y] >= 2) continue;
      ++count[y];
      w.push_back(b);
      grow_route();
      w.pop_back();
      --count[y];
    }
  };
  for (auto a : detail::fringe_starts(c)) {
    std::fill(count.begin(), count.end(), 0);
    count[tail_vertex(c, a)] = 1;
    VertexIndex y = head_vertex(c, a);
    ++count[y];
    w = {a};
    grow_route();
  }

  // Bands: counts track junction vertices t(w_i).
  std::function<void()> grow_band = [&]() {
    HalfEdge h = w.back().head();
    if (junction_ok(c, w.back(), w.front()) && is_primitive(w) && detail::elementary_band_shape(c, w))
      out.bands.insert(canonical_band_unchecked(w));
    if (c.is_fringe(c.vertex_of(h))) return;
    for (auto b : detail::continuations(c, h)) {
      VertexIndex t = tail_vertex(c, b);
      if (count[t] >= 2) continue;
      if (c.is_fringe(head_vertex(c, b))) continue;
      ++count[t];
      w.push_back(b);
      grow_band();
      w.pop_back();
      --count[t];
    }
  };
  for (auto a : detail::all_oriented_edges(c)) {
    if (c.is_fringe(tail_vertex(c, a)) || c.is_fringe(head_vertex(c, a))) continue;
    std::fill(count.begin(), count.end(), 0);
    count[tail_vertex(c, a)] = 1;
    w = {a};
    grow_band();
  }
  return out;
}

// All routes and bands using every edge at most `cap` times.
inline TrailSets enumerate_trails_capped(const Chart& c, int cap) {
  TrailSets out;
  std::vector<int> used(c.edge_count(), 0);
  Word w;

  std::function<void()> grow_route = [&]() {
    HalfEdge h = w.back().head();
    if (c.is_fringe(c.vertex_of(h))) {
      out.routes.insert(canonical_route_unchecked(w));
      return;
    }
    for (auto b : detail::continuations(c, h)) {
      if (used[b.edge] >= cap) continue;
      ++used[b.edge];
      w.push_back(b);
      grow_route();
      w.pop_back();
      --used[b.edge];
    }
  };
  for (auto a : detail::fringe_starts(c)) {
    std::fill(used.begin(), used.end(), 0);
    used[a.edge] = 1;
    w = {a};
    grow_route();
  }

  std::function<void()> grow_band = [&]() {
    if (junction_ok(c, w.back(), w.front()) && is_primitive(w)) out.bands.insert(canonical_band_unchecked(w));
    HalfEdge h = w.back().head();
    for (auto b : detail::continuations(c, h)) {
      if (used[b.edge] >= cap) continue;
      if (c.is_fringe(head_vertex(c, b))) continue;
      // Every rotation is generated from its least edge, so skip smaller edges.
      if (b.edge < w.front().edge) continue;
      ++used[b.edge];
      w.push_back(b);
      grow_band();
      w.pop_back();
      --used[b.edge];
    }
  };
  for (auto a : detail::all_oriented_edges(c)) {
    if (c.is_fringe(tail_vertex(c, a)) || c.is_fringe(head_vertex(c, a))) continue;
    std::fill(used.begin(), used.end(), 0);
    used[a.edge] = 1;
    w = {a};
    grow_band();
  }
  return out;
}

}  // namespace turb
