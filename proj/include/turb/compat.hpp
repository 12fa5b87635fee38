#pragma once

#include <turb/classify.hpp>
#include <turb/parallel.hpp>

namespace turb {

// p and q leave a common substring s (possibly lazy) on the same sides with p
// below q at both ends (or q below p when p_below is false).
struct IncompatibilityWitness {
  bool q_inverted = false;
  std::size_t p_pos = 0;  // vertex position in p where s starts
  std::size_t q_pos = 0;
  std::size_t shared_length = 0;  // 0 for a lazy substring
  VertexIndex start_vertex = 0;
  HalfEdge p_enter, q_enter;  // heads of the edges preceding s
  HalfEdge p_exit, q_exit;    // tails of the edges following s
  bool p_below = true;
};

namespace detail {

struct TrailView {
  const Word& w;
  bool cyclic;
  long size() const { return long(w.size()); }
  bool has(long i) const { return cyclic || (i >= 0 && i < size()); }
  OrientedEdge at(long i) const { return w[std::size_t(((i % size()) + size()) % size())]; }
};

}  // namespace detail

inline std::optional<IncompatibilityWitness> find_incompatibility(const Chart& c, const Trail& p, const Trail& q) {
  Word qinv = inverse(q.word);
  detail::TrailView pv{p.word, p.kind == TrailKind::band};
  long bound = long(p.word.size() + q.word.size()) + 1;
  long p_first = pv.cyclic ? 0 : 1, p_last = pv.cyclic ? pv.size() - 1 : pv.size() - 1;
  for (long i = p_first; i <= p_last; ++i) {
    OrientedEdge a = pv.at(i - 1);
    VertexIndex v = head_vertex(c, a);
    for (int inv = 0; inv < 2; ++inv) {
      detail::TrailView qv{inv ? qinv : q.word, q.kind == TrailKind::band};
      long q_first = qv.cyclic ? 0 : 1, q_last = qv.size() - 1;
      for (long j = q_first; j <= q_last; ++j) {
        OrientedEdge b = qv.at(j - 1);
        if (a == b || head_vertex(c, b) != v) continue;
        long k = 0;
        while (k < bound && pv.has(i + k) && qv.has(j + k) && pv.at(i + k) == qv.at(j + k)) ++k;
        if (k >= bound || !pv.has(i + k) || !qv.has(j + k)) continue;
        if (k == 0 && c.side(a.head()) != c.side(b.head())) continue;
        OrientedEdge pe = pv.at(i + k), qe = qv.at(j + k);
        bool low_left = c.rank(a.head()) < c.rank(b.head());
        bool low_right = c.rank(pe.tail()) < c.rank(qe.tail());
        if (low_left != low_right) continue;
        IncompatibilityWitness wit;
        wit.q_inverted = inv == 1;
        wit.p_pos = std::size_t(i);
        wit.q_pos = std::size_t(j);
        wit.shared_length = std::size_t(k);
        wit.start_vertex = v;
        wit.p_enter = a.head();
        wit.q_enter = b.head();
        wit.p_exit = pe.tail();
        wit.q_exit = qe.tail();
        wit.p_below = low_left;
        return wit;
      }
    }
  }
  return std::nullopt;
}

inline bool compatible(const Chart& c, const Trail& p, const Trail& q) { return !find_incompatibility(c, p, q).has_value(); }
inline bool self_compatible(const Chart& c, const Trail& p) { return compatible(c, p, p); }

// Elementary routes are the self-compatible simple routes and lollipops; bands
// are all simple bands and barbells.
inline TrailSets enumerate_elementary_trails(const Chart& c) {
  TrailSets shaped = enumerate_shaped_trails(c);
  TrailSets out;
  for (auto& r : shaped.routes)
    if (self_compatible(c, r)) out.routes.insert(r);
  out.bands = std::move(shaped.bands);
  return out;
}

struct Bundle {
  std::vector<Trail> routes;
  std::vector<Trail> bands;
  bool maximal = false;
  std::optional<int> cap;

  std::vector<Trail> members() const {
    std::vector<Trail> m = routes;
    m.insert(m.end(), bands.begin(), bands.end());
    return m;
  }
  bool operator==(const Bundle& o) const { return routes == o.routes && bands == o.bands; }
  bool operator<(const Bundle& o) const { return std::tie(routes, bands) < std::tie(o.routes, o.bands); }
};

using Adjacency = std::vector<std::vector<bool>>;

inline Adjacency compatibility_matrix(const Chart& c, const std::vector<Trail>& trails) {
  std::size_t n = trails.size();
  Adjacency adj(n, std::vector<bool>(n, false));
  std::vector<std::vector<char>> rows(n, std::vector<char>(n, 0));
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) rows[i][j] = compatible(c, trails[i], trails[j]) ? 1 : 0;
  });
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) adj[i][j] = adj[j][i] = rows[i][j] != 0;
  return adj;
}

// All maximal cliques, Bron-Kerbosch with pivoting under a degeneracy ordering.
inline std::vector<std::vector<std::size_t>> maximal_cliques(const Adjacency& adj) {
  std::size_t n = adj.size();
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> r;
  std::function<void(std::vector<std::size_t>, std::vector<std::size_t>)> bk = [&](std::vector<std::size_t> p,
                                                                                   std::vector<std::size_t> x) {
    if (p.empty()) {
      if (x.empty()) {
        auto cl = r;
        std::sort(cl.begin(), cl.end());
        out.push_back(std::move(cl));
      }
      return;
    }
    std::size_t pivot = p.front(), best = 0;
    for (auto* set : {&p, &x})
      for (auto u : *set) {
        std::size_t cnt = 0;
        for (auto v : p) cnt += adj[u][v] ? 1 : 0;
        if (cnt > best || (cnt == best && u == pivot)) {
          best = cnt;
          pivot = u;
        }
      }
    std::vector<std::size_t> cand;
    for (auto v : p)
      if (!adj[pivot][v]) cand.push_back(v);
    for (auto v : cand) {
      std::vector<std::size_t> np, nx;
      for (auto u : p)
        if (adj[v][u]) np.push_back(u);
      for (auto u : x)
        if (adj[v][u]) nx.push_back(u);
      r.push_back(v);
      bk(np, nx);
      r.pop_back();
      std::erase(p, v);
      x.push_back(v);
    }
  };

  // Degeneracy order: repeatedly remove a vertex of minimum remaining degree.
  std::vector<std::size_t> order;
  {
    std::vector<std::size_t> deg(n, 0);
    std::vector<bool> gone(n, false);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) deg[i] += adj[i][j] ? 1 : 0;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t best = n;
      for (std::size_t i = 0; i < n; ++i)
        if (!gone[i] && (best == n || deg[i] < deg[best])) best = i;
      gone[best] = true;
      order.push_back(best);
      for (std::size_t j = 0; j < n; ++j)
        if (adj[best][j] && !gone[j]) --deg[j];
    }
  }
  std::vector<std::size_t> pos(n);
  for (std::size_t k = 0; k < n; ++k) pos[order[k]] = k;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t v = order[k];
    std::vector<std::size_t> p, x;
    for (std::size_t u = 0; u < n; ++u) {
      if (!adj[v][u]) continue;
      (pos[u] > k ? p : x).push_back(u);
    }
    r = {v};
    bk(p, x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

inline std::vector<Bundle> bundles_from(const Chart& c, const std::vector<Trail>& trails, std::optional<int> cap) {
  std::vector<Trail> pool;
  for (auto& t : trails)
    if (self_compatible(c, t)) pool.push_back(t);
  auto cliques = maximal_cliques(compatibility_matrix(c, pool));
  std::vector<Bundle> out;
  for (auto& cl : cliques) {
    Bundle b;
    for (auto i : cl) (pool[i].kind == TrailKind::route ? b.routes : b.bands).push_back(pool[i]);
    std::sort(b.routes.begin(), b.routes.end());
    std::sort(b.bands.begin(), b.bands.end());
    b.maximal = true;
    b.cap = cap;
    out.push_back(std::move(b));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// Every route of an acyclic chart uses each oriented edge at most once.
inline std::vector<Trail> acyclic_routes(const Chart& c) {
  auto t = enumerate_trails_capped(c, 2);
  return {t.routes.begin(), t.routes.end()};
}

inline std::vector<Bundle> enumerate_maximal_cliques(const Chart& c) {
  if (find_band(c)) fail(ErrorCode::NotAcyclic, "chart '" + c.name() + "' has a band");
  return detail::bundles_from(c, acyclic_routes(c), std::nullopt);
}

inline std::vector<Bundle> enumerate_maximal_bundles_capped(const Chart& c, int cap) {
  auto t = enumerate_trails_capped(c, cap);
  std::vector<Trail> all(t.routes.begin(), t.routes.end());
  all.insert(all.end(), t.bands.begin(), t.bands.end());
  return detail::bundles_from(c, all, cap);
}

}  // namespace turb
