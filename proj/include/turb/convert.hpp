#pragma once

#include <turb/classify.hpp>

namespace turb {

// ---------------------------------------------------------------- framed digraphs

struct FramedDigraph {
  struct Edge {
    std::string id, tail, head;
  };
  std::string name;
  std::vector<std::string> vertices;
  std::vector<Edge> edges;
  std::map<std::string, std::vector<std::string>> in_order, out_order;  // least first
};

// Splits every source or sink of degree > 1 into degree-1 copies "v#sN", in edge-id order.
inline FramedDigraph fringe_split(const FramedDigraph& dg) {
  std::map<std::string, std::size_t> indeg, outdeg;
  for (auto& e : dg.edges) {
    ++outdeg[e.tail];
    ++indeg[e.head];
  }
  FramedDigraph out = dg;
  out.vertices.clear();
  std::set<std::string> taken(dg.vertices.begin(), dg.vertices.end());
  for (auto& e : dg.edges) taken.insert(e.id);
  std::vector<std::size_t> order(dg.edges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dg.edges[a].id < dg.edges[b].id; });
  std::set<std::string> split;
  for (auto& v : dg.vertices) {
    bool boundary = indeg[v] == 0 || outdeg[v] == 0;
    if (boundary && indeg[v] + outdeg[v] > 1)
      split.insert(v);
    else
      out.vertices.push_back(v);
  }
  for (auto i : order) {
    auto& e = out.edges[i];
    for (std::string* end : {&e.tail, &e.head}) {
      if (!split.count(*end)) continue;
      std::string id = fresh_id(*end, "s", taken);
      taken.insert(id);
      out.vertices.push_back(id);
      *end = id;
    }
  }
  return out;
}

inline Chart chart_of_framed_digraph(const FramedDigraph& input) {
  FramedDigraph dg = fringe_split(input);
  std::map<std::string, std::vector<std::string>> ins, outs;
  for (auto& e : dg.edges) {
    outs[e.tail].push_back(e.id);
    ins[e.head].push_back(e.id);
  }
  RawChart raw;
  raw.name = dg.name;
  for (auto& e : dg.edges) raw.edges.push_back({e.id, {e.tail, e.head}});
  for (auto& v : dg.vertices) {
    bool internal = !ins[v].empty() && !outs[v].empty();
    raw.vertices.push_back({v, internal ? VertexKind::internal : VertexKind::fringe});
    if (!internal) continue;
    auto io = dg.in_order.find(v), oo = dg.out_order.find(v);
    if (io == dg.in_order.end() || oo == dg.out_order.end()) fail(ErrorCode::SchemaError, "internal vertex '" + v + "' lacks a framing");
    auto same = [](std::vector<std::string> a, std::vector<std::string> b) {
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      return a == b;
    };
    if (!same(io->second, ins[v]) || !same(oo->second, outs[v]))
      fail(ErrorCode::SchemaError, "framing at '" + v + "' does not list in(v) and out(v) exactly");
    std::array<std::vector<HalfEdgeKey>, 2> cls;
    for (auto& id : io->second) cls[0].push_back({id, 1});
    for (auto it = oo->second.rbegin(); it != oo->second.rend(); ++it) cls[1].push_back({*it, 0});
    raw.classes[v] = std::move(cls);
  }
  return validate_chart(raw);
}

// ---------------------------------------------------------------- fringed algebras

struct FringedAlgebra {
  struct Vertex {
    std::string id;
    VertexKind kind = VertexKind::internal;
  };
  struct Arrow {
    std::string id, tail, head;
  };
  std::string name;
  std::vector<Vertex> vertices;
  std::vector<Arrow> arrows;
  std::vector<std::pair<std::string, std::string>> relations;  // (a, b): the path a then b is zero
  bool operator==(const FringedAlgebra& o) const {
    auto key = [](const FringedAlgebra& x) {
      std::set<std::tuple<std::string, int>> vs;
      for (auto& v : x.vertices) vs.insert({v.id, int(v.kind)});
      std::set<std::tuple<std::string, std::string, std::string>> as;
      for (auto& a : x.arrows) as.insert({a.id, a.tail, a.head});
      std::set<std::pair<std::string, std::string>> rs(x.relations.begin(), x.relations.end());
      return std::tuple(vs, as, rs);
    };
    return key(*this) == key(o);
  }
};

inline FringedAlgebra fringed_algebra_of_gentle_chart(const Chart& c) {
  if (!classify_chart(c).gentle) fail(ErrorCode::NotGentle, "chart '" + c.name() + "' is not gentle");
  FringedAlgebra alg;
  alg.name = c.name();
  for (VertexIndex v = 0; v < c.vertex_count(); ++v) alg.vertices.push_back({c.vertex_id(v), c.kind(v)});
  for (EdgeIndex e = 0; e < c.edge_count(); ++e) {
    HalfEdge h0{e, 0}, h1{e, 1};
    // arrow from the low (or fringe) end to the high (or fringe) end
    bool forward;
    if (c.is_fringe(c.vertex_of(h0)))
      forward = c.status(h1).high;
    else if (c.is_fringe(c.vertex_of(h1)))
      forward = c.status(h0).low;
    else
      forward = c.status(h0).low;
    auto a = c.vertex_id(c.vertex_of(h0)), b = c.vertex_id(c.vertex_of(h1));
    alg.arrows.push_back(forward ? FringedAlgebra::Arrow{c.edge_id(e), a, b} : FringedAlgebra::Arrow{c.edge_id(e), b, a});
  }
  for (VertexIndex v = 0; v < c.vertex_count(); ++v) {
    if (!c.is_internal(v)) continue;
    for (int s = 0; s < 2; ++s) {
      const auto& k = c.cls(v, s);
      alg.relations.push_back({c.edge_id(k.back().edge), c.edge_id(k.front().edge)});
    }
  }
  return alg;
}

inline Chart chart_of_fringed_algebra(const FringedAlgebra& alg) {
  auto bad = [](const std::string& m) { fail(ErrorCode::InvalidAlgebra, m); };
  std::map<std::string, VertexKind> kind;
  for (auto& v : alg.vertices) {
    if (kind.count(v.id)) bad("duplicate vertex '" + v.id + "'");
    kind[v.id] = v.kind;
  }
  std::map<std::string, const FringedAlgebra::Arrow*> arrow;
  std::map<std::string, std::vector<std::string>> ins, outs;
  for (auto& a : alg.arrows) {
    if (arrow.count(a.id)) bad("duplicate arrow '" + a.id + "'");
    if (!kind.count(a.tail) || !kind.count(a.head)) bad("arrow '" + a.id + "' has an unknown endpoint");
    if (kind[a.tail] == VertexKind::fringe && kind[a.head] == VertexKind::fringe) bad("arrow '" + a.id + "' joins two fringe vertices");
    arrow[a.id] = &a;
    outs[a.tail].push_back(a.id);
    ins[a.head].push_back(a.id);
  }
  for (auto& [v, k] : kind) {
    std::size_t i = ins[v].size(), o = outs[v].size();
    if (k == VertexKind::internal && (i != 2 || o != 2)) bad("internal vertex '" + v + "' needs in-degree 2 and out-degree 2");
    if (k == VertexKind::fringe && i + o != 1) bad("fringe vertex '" + v + "' must meet exactly one arrow");
  }
  // (head of first, tail of second) pairs per vertex
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> rel;
  std::set<std::pair<std::string, std::string>> relset;
  for (auto& [x, y] : alg.relations) {
    if (!arrow.count(x) || !arrow.count(y)) bad("relation names an unknown arrow");
    if (arrow[x]->head != arrow[y]->tail) bad("relation " + x + y + " is not a path");
    const std::string& v = arrow[x]->head;
    if (kind[v] != VertexKind::internal) bad("relation " + x + y + " passes a fringe vertex");
    rel[v].push_back({x, y});
    relset.insert({x, y});
  }
  RawChart raw;
  raw.name = alg.name;
  for (auto& v : alg.vertices) raw.vertices.push_back({v.id, v.kind});
  for (auto& a : alg.arrows) raw.edges.push_back({a.id, {a.tail, a.head}});
  for (auto& [v, k] : kind) {
    if (k != VertexKind::internal) continue;
    auto& r = rel[v];
    if (r.size() != 2 || r[0].first == r[1].first || r[0].second == r[1].second)
      bad("vertex '" + v + "' needs two relations using distinct arrows");
    std::array<std::vector<HalfEdgeKey>, 2> cls;
    for (int s = 0; s < 2; ++s) cls[s] = {{r[s].second, 0}, {r[s].first, 1}};
    raw.classes[v] = std::move(cls);
  }
  // A cyclic path with no relation along it would make the algebra infinite-dimensional.
  {
    std::map<std::string, std::vector<std::string>> next;
    for (auto& a : alg.arrows)
      for (auto& b : outs[a.head])
        if (kind[a.head] == VertexKind::internal && !relset.count({a.id, b})) next[a.id].push_back(b);
    std::map<std::string, int> color;
    std::function<bool(const std::string&)> dfs = [&](const std::string& a) {
      color[a] = 1;
      for (auto& b : next[a]) {
        if (color[b] == 1) return true;
        if (color[b] == 0 && dfs(b)) return true;
      }
      color[a] = 2;
      return false;
    };
    for (auto& a : alg.arrows)
      if (color[a.id] == 0 && dfs(a.id)) bad("oriented cycle without relations");
  }
  return validate_chart(raw);
}

// ---------------------------------------------------------------- signed graphs

struct SignedGraph {
  struct Edge {
    std::string id;
    int i = 1, j = 1;  // 1-based vertices, i <= j
    bool positive = true;
  };
  int n_plus_1 = 1;
  std::vector<Edge> edges;
  std::vector<long> netflow;  // size n_plus_1
};

struct SignedCertificate {
  std::vector<std::string> order;  // chart vertex id for 2, 3, ..., n+1
  std::vector<int> minus_side;     // class index designated negative at each
};

inline std::pair<SignedGraph, SignedCertificate> signed_graph_of_acyclic_chart(const Chart& c) {
  std::vector<VertexIndex> remaining;
  for (VertexIndex v = 0; v < c.vertex_count(); ++v)
    if (c.is_internal(v)) remaining.push_back(v);
  std::vector<int> label(c.vertex_count(), 1), minus(c.vertex_count(), -1);
  SignedCertificate cert;
  int next = 2;
  std::vector<bool> in_v(c.vertex_count(), false);
  for (auto v : remaining) in_v[v] = true;
  while (!remaining.empty()) {
    bool found = false;
    for (std::size_t k = 0; k < remaining.size() && !found; ++k) {
      VertexIndex v = remaining[k];
      for (int s = 0; s < 2 && !found; ++s) {
        bool ok = true;
        for (auto h : c.cls(v, s)) ok = ok && !in_v[c.vertex_of(h.partner())];
        if (!ok) continue;
        found = true;
        label[v] = next++;
        minus[v] = s;
        in_v[v] = false;
        cert.order.push_back(c.vertex_id(v));
        cert.minus_side.push_back(s);
        remaining.erase(remaining.begin() + long(k));
      }
    }
    if (!found) fail(ErrorCode::NotAcyclic, "no vertex has a class leaving the remaining set");
  }
  SignedGraph sg;
  sg.n_plus_1 = next - 1;
  sg.netflow.assign(std::size_t(sg.n_plus_1), 0);
  sg.netflow[0] = 2;
  for (EdgeIndex e = 0; e < c.edge_count(); ++e) {
    bool negative = false;
    std::array<int, 2> at{};
    for (int end = 0; end < 2; ++end) {
      HalfEdge h{e, static_cast<std::uint8_t>(end)};
      VertexIndex v = c.vertex_of(h);
      at[end] = label[v];
      if (c.is_internal(v) && c.side(h) == minus[v]) negative = true;
    }
    sg.edges.push_back({c.edge_id(e), std::min(at[0], at[1]), std::max(at[0], at[1]), !negative});
  }
  return {sg, cert};
}

inline Chart chart_of_signed_graph(const SignedGraph& sg) {
  auto bad = [](const std::string& m) { fail(ErrorCode::BadNetflow, m); };
  if (sg.n_plus_1 < 1 || long(sg.netflow.size()) != sg.n_plus_1) bad("netflow vector has the wrong length");
  if (sg.netflow[0] != 2) bad("netflow at vertex 1 must be 2");
  for (std::size_t k = 1; k < sg.netflow.size(); ++k)
    if (sg.netflow[k] != 0) bad("netflow must vanish away from vertex 1");
  RawChart raw;
  std::map<int, std::array<std::vector<HalfEdgeKey>, 2>> cls;  // [0] positive, [1] negative
  std::set<std::string> taken;
  for (auto& e : sg.edges) taken.insert(e.id);
  for (int v = 2; v <= sg.n_plus_1; ++v) taken.insert(std::to_string(v));
  auto fringe = [&]() {
    std::string id = fresh_id("1", "s", taken);
    taken.insert(id);
    raw.vertices.push_back({id, VertexKind::fringe});
    return id;
  };
  std::vector<const SignedGraph::Edge*> sorted;
  for (auto& e : sg.edges) sorted.push_back(&e);
  std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->id < b->id; });
  for (auto* e : sorted) {
    int i = std::min(e->i, e->j), j = std::max(e->i, e->j);
    if (i < 1 || j > sg.n_plus_1) bad("edge '" + e->id + "' has a vertex outside [n+1]");
    if (i == j && !e->positive) bad("loop '" + e->id + "' is negative");
    std::array<std::string, 2> ends;
    ends[0] = i == 1 ? fringe() : std::to_string(i);
    ends[1] = j == 1 ? fringe() : std::to_string(j);
    raw.edges.push_back({e->id, ends});
    if (i != 1) cls[i][0].push_back({e->id, 0});
    if (j != 1) cls[j][e->positive ? 0 : 1].push_back({e->id, 1});
  }
  for (int v = 2; v <= sg.n_plus_1; ++v) {
    auto& k = cls[v];
    if (k[0].empty() || k[1].empty()) bad("vertex " + std::to_string(v) + " lacks positive or negative incidences");
    raw.vertices.push_back({std::to_string(v), VertexKind::internal});
    raw.classes[std::to_string(v)] = k;
  }
  normalize_kinds(raw);
  return validate_chart(raw);
}

// ---------------------------------------------------------------- clockwise framings

// Orders each class by the cyclic order of half-edges around its vertex. Class
// membership comes from `raw`; its list order is ignored.
inline Chart clockwise_framing(RawChart raw, const std::map<std::string, std::vector<HalfEdgeKey>>& rotation) {
  for (auto& [vid, lists] : raw.classes) {
    auto it = rotation.find(vid);
    if (it == rotation.end()) fail(ErrorCode::SchemaError, "no rotation at '" + vid + "'");
    const auto& rot = it->second;
    std::set<HalfEdgeKey> a(lists[0].begin(), lists[0].end()), b(lists[1].begin(), lists[1].end());
    std::set<HalfEdgeKey> all(rot.begin(), rot.end());
    std::set<HalfEdgeKey> both = a;
    both.insert(b.begin(), b.end());
    if (all != both || all.size() != rot.size()) fail(ErrorCode::BadPartition, "rotation at '" + vid + "' does not list the incident half-edges");
    std::size_t n = rot.size();
    // start of the class-0 arc: a member whose predecessor is in the other class
    std::size_t start = n;
    std::size_t changes = 0;
    for (std::size_t k = 0; k < n; ++k) {
      bool here = a.count(rot[k]) > 0, prev = a.count(rot[(k + n - 1) % n]) > 0;
      if (here != prev) ++changes;
      if (here && !prev) start = k;
    }
    if (changes != 2) fail(ErrorCode::ClassesNotSeparated, "classes interleave around '" + vid + "'");
    std::array<std::vector<HalfEdgeKey>, 2> ordered;
    for (std::size_t k = 0; k < n; ++k) {
      const auto& h = rot[(start + k) % n];
      ordered[a.count(h) ? 0 : 1].push_back(h);
    }
    lists = std::move(ordered);
  }
  return validate_chart(raw);
}

}  // namespace turb
