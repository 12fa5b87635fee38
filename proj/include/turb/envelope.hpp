#pragma once

#include <turb/isomorphism.hpp>
#include <turb/polyhedron.hpp>
#include <turb/surgery.hpp>

namespace turb {

enum class MoveKind { degree_reduce, steepen, fill_step, band_correct, contract };

inline const char* move_name(MoveKind k) {
  switch (k) {
    case MoveKind::degree_reduce: return "degree_reduce";
    case MoveKind::steepen: return "steepen";
    case MoveKind::fill_step: return "fill_step";
    case MoveKind::band_correct: return "band_correct";
    case MoveKind::contract: return "contract";
  }
  return "?";
}

struct MoveRecord {
  MoveKind kind = MoveKind::contract;
  std::string vertex;                  // degree_reduce, fill_step
  int a = 0;                           // degree_reduce split index
  std::vector<std::string> new_vertices;
  std::vector<std::string> new_edges;  // delta edges, fill edge, f1 f2 f3
  std::string edge;                    // steepen: replaced edge; band_correct: replaced e1; contract
  std::string placement;               // fill_step: above | below
  bool by_convention = false;          // fill_step: partner lonely, ascending convention applied
  std::string band;                    // band_correct: band text before correction
  std::vector<MoveRecord> fill_sublog;
  std::string vanishing;               // contract: vertex that disappears
};

using MoveLog = std::vector<MoveRecord>;

struct GentleEnvelope {
  Chart envelope;
  std::set<std::string> w;
  MoveLog log;
  std::map<std::string, std::string> embedding;  // original edge id -> envelope edge id
};

namespace detail {

inline std::set<std::string> taken_ids(const RawChart& raw) {
  std::set<std::string> s;
  for (auto& v : raw.vertices) s.insert(v.id);
  for (auto& e : raw.edges) s.insert(e.id);
  return s;
}

inline int raw_side_of(const RawChart& raw, const std::string& vid, const HalfEdgeKey& k) {
  auto it = raw.classes.find(vid);
  if (it == raw.classes.end()) return -1;
  for (int s = 0; s < 2; ++s)
    for (auto& x : it->second[s])
      if (x == k) return s;
  return -1;
}

}  // namespace detail

inline std::pair<Chart, MoveRecord> degree_reduce(const Chart& c, const std::string& vertex, int a = 1) {
  auto vi = c.find_vertex(vertex);
  if (!vi || !c.is_internal(*vi)) fail(ErrorCode::NoOversizedClass, "'" + vertex + "' is not an internal vertex");
  int side = -1;
  for (int s = 0; s < 2 && side < 0; ++s)
    if (c.cls(*vi, s).size() > 2) side = s;
  if (side < 0) fail(ErrorCode::NoOversizedClass, "no class of size > 2 at '" + vertex + "'");
  const auto& h = c.cls(*vi, side);
  int m = int(h.size());
  if (a < 1 || a > m - 2) fail(ErrorCode::BadSplitIndex, "split index " + std::to_string(a) + " outside [1, " + std::to_string(m - 2) + "]");

  RawChart raw = c.to_raw();
  auto taken = detail::taken_ids(raw);
  std::string v2 = fresh_id(vertex, "dr", taken);
  taken.insert(v2);
  std::string delta = fresh_id(vertex, "delta", taken);

  auto& lists = raw.classes[vertex];
  std::vector<HalfEdgeKey> low(lists[side].begin(), lists[side].begin() + a);
  std::vector<HalfEdgeKey> high(lists[side].begin() + a, lists[side].end());
  for (auto& k : high) detail::raw_edge(raw, k.edge)->ends[k.end] = v2;
  raw.edges.push_back({delta, {vertex, v2}});
  low.push_back({delta, 0});
  lists[side] = std::move(low);
  raw.vertices.push_back({v2, VertexKind::internal});
  raw.classes[v2] = {std::vector<HalfEdgeKey>{{delta, 1}}, std::move(high)};

  MoveRecord rec;
  rec.kind = MoveKind::degree_reduce;
  rec.vertex = vertex;
  rec.a = a;
  rec.new_vertices = {v2};
  rec.new_edges = {delta};
  normalize_kinds(raw);
  return {validate_chart(raw), rec};
}

inline std::pair<Chart, MoveRecord> steepen(const Chart& c, const std::string& edge) {
  EdgeIndex e = c.edge_index(edge);
  if (!is_sub_full(c)) fail(ErrorCode::NotSubFull, "chart has a class of size > 2");
  bool fringe_fringe = c.fringe_ends(e) == 2;
  if (!fringe_fringe && is_steep(c, e)) fail(ErrorCode::EdgeAlreadySteep, "edge '" + edge + "' is steep");

  RawChart raw = c.to_raw();
  auto taken = detail::taken_ids(raw);
  std::string ve = fresh_id(edge, "mid", taken);
  taken.insert(ve);
  std::string e1 = fresh_id(edge, "s", taken);
  taken.insert(e1);
  std::string e2 = fresh_id(edge, "s", taken);
  auto old = *detail::raw_edge(raw, edge);
  std::erase_if(raw.edges, [&](const RawChart::Edge& x) { return x.id == edge; });
  raw.edges.push_back({e1, {old.ends[0], ve}});
  raw.edges.push_back({e2, {ve, old.ends[1]}});
  for (auto& [vid, lists] : raw.classes)
    for (auto& l : lists)
      for (auto& k : l)
        if (k.edge == edge) k = k.end == 0 ? HalfEdgeKey{e1, 0} : HalfEdgeKey{e2, 1};
  raw.vertices.push_back({ve, VertexKind::internal});
  raw.classes[ve] = {std::vector<HalfEdgeKey>{{e1, 1}}, std::vector<HalfEdgeKey>{{e2, 0}}};

  MoveRecord rec;
  rec.kind = MoveKind::steepen;
  rec.edge = edge;
  rec.new_vertices = {ve};
  rec.new_edges = {e1, e2};
  normalize_kinds(raw);
  return {validate_chart(raw), rec};
}

namespace detail {

// Adds a fringe edge into the singleton class holding `h1`; `above` puts the new
// half-edge above h1, which makes h1 low.
inline std::pair<Chart, MoveRecord> fill_at(const Chart& c, HalfEdge h1, bool above, bool by_convention) {
  VertexIndex v = c.vertex_of(h1);
  int side = c.side(h1);
  RawChart raw = c.to_raw();
  auto taken = taken_ids(raw);
  const std::string& vid = c.vertex_id(v);
  std::string fv = fresh_id(vid, "fv", taken);
  taken.insert(fv);
  std::string fe = fresh_id(vid, "fe", taken);
  raw.vertices.push_back({fv, VertexKind::fringe});
  raw.edges.push_back({fe, {fv, vid}});
  auto& l = raw.classes[vid][side];
  if (above)
    l.push_back({fe, 1});
  else
    l.insert(l.begin(), {fe, 1});
  MoveRecord rec;
  rec.kind = MoveKind::fill_step;
  rec.vertex = vid;
  rec.new_vertices = {fv};
  rec.new_edges = {fe};
  rec.placement = above ? "above" : "below";
  rec.by_convention = by_convention;
  return {validate_chart(raw), rec};
}

inline std::optional<HalfEdge> first_singleton(const Chart& c) {
  for (VertexIndex v = 0; v < c.vertex_count(); ++v) {
    if (!c.is_internal(v)) continue;
    for (int s = 0; s < 2; ++s)
      if (c.cls(v, s).size() == 1) return c.cls(v, s).front();
  }
  return std::nullopt;
}

// Placement forced by the partner's status; a lonely partner gets the ascending
// convention along the stored end order.
inline bool fill_above(const Chart& c, HalfEdge h1, bool& by_convention) {
  auto st = c.status(h1.partner());
  by_convention = st.lonely();
  if (st.high) return true;
  if (st.low) return false;
  return h1.end == 0;
}

}  // namespace detail

inline bool all_steep(const Chart& c) {
  for (EdgeIndex e = 0; e < c.edge_count(); ++e)
    if (!is_steep(c, e)) return false;
  return true;
}

inline std::pair<Chart, MoveLog> fill(const Chart& c) {
  if (!is_sub_full(c)) fail(ErrorCode::NotSubFull, "chart has a class of size > 2");
  if (!all_steep(c)) fail(ErrorCode::NotSteepEverywhere, "chart has a non-steep edge");
  Chart cur = c;
  MoveLog log;
  while (auto h1 = detail::first_singleton(cur)) {
    bool conv = false;
    bool above = detail::fill_above(cur, *h1, conv);
    auto [next, rec] = detail::fill_at(cur, *h1, above, conv);
    cur = std::move(next);
    log.push_back(std::move(rec));
  }
  return {cur, log};
}

inline bool is_steep_band(const Chart& c, const Word& w) {
  bool asc = true, desc = true;
  for (auto& a : w) {
    asc = asc && is_ascending(c, a);
    desc = desc && is_descending(c, a);
  }
  return asc || desc;
}

// `band` is a closed string; it is inverted if needed so that every edge ascends.
inline std::pair<Chart, MoveRecord> correct_band(const Chart& c, const Word& band) {
  if (!is_full(c)) fail(ErrorCode::NotSubFull, "band correction needs a full chart");
  if (!all_steep(c)) fail(ErrorCode::NotSteepEverywhere, "chart has a non-steep edge");
  if (band.empty() || !is_closed_string(c, band)) fail(ErrorCode::NotClosed, "band word is not a closed string");
  if (!is_steep_band(c, band)) fail(ErrorCode::BandNotSteep, "band '" + word_to_string(c, band) + "' is not steep");
  Word b = band;
  bool asc = true;
  for (auto& x : b) asc = asc && is_ascending(c, x);
  if (!asc) b = inverse(b);
  OrientedEdge e1 = b.front();
  const std::string eid = c.edge_id(e1.edge);
  bool forward = e1.dir == Direction::forward;

  RawChart raw = c.to_raw();
  auto taken = detail::taken_ids(raw);
  auto fresh = [&](const std::string& base, const std::string& tag) {
    auto id = fresh_id(base, tag, taken);
    taken.insert(id);
    return id;
  };
  std::string w1 = fresh(eid, "bc"), w2 = fresh(eid, "bc");
  std::string f1 = fresh(eid, "f"), f2 = fresh(eid, "f"), f3 = fresh(eid, "f");
  auto old = *detail::raw_edge(raw, eid);
  std::erase_if(raw.edges, [&](const RawChart::Edge& x) { return x.id == eid; });
  // f1 f2 f3 follow the stored end order of e1.
  raw.edges.push_back({f1, {old.ends[0], w1}});
  raw.edges.push_back({f2, {w1, w2}});
  raw.edges.push_back({f3, {w2, old.ends[1]}});
  for (auto& [vid, lists] : raw.classes)
    for (auto& l : lists)
      for (auto& k : l)
        if (k.edge == eid) k = k.end == 0 ? HalfEdgeKey{f1, 0} : HalfEdgeKey{f3, 1};
  raw.vertices.push_back({w1, VertexKind::internal});
  raw.vertices.push_back({w2, VertexKind::internal});
  raw.classes[w1] = {std::vector<HalfEdgeKey>{{f1, 1}}, std::vector<HalfEdgeKey>{{f2, 0}}};
  raw.classes[w2] = {std::vector<HalfEdgeKey>{{f2, 1}}, std::vector<HalfEdgeKey>{{f3, 0}}};
  Chart cur = validate_chart(raw);

  // f2 must descend along the band: its half on the band's tail side is high.
  // Edge indices shift as fill edges are added, so match f2 by id.
  const int f2_tail_end = forward ? 0 : 1;
  MoveLog sub;
  while (auto h1 = detail::first_singleton(cur)) {
    bool conv = false, above;
    if (cur.edge_id(h1->edge) == f2) {
      above = int(h1->end) != f2_tail_end;  // tail side high => new half below
    } else {
      above = detail::fill_above(cur, *h1, conv);
    }
    auto [next, rec] = detail::fill_at(cur, *h1, above, conv);
    cur = std::move(next);
    sub.push_back(std::move(rec));
  }

  MoveRecord rec;
  rec.kind = MoveKind::band_correct;
  rec.edge = eid;
  rec.band = word_to_string(c, b);
  rec.new_vertices = {w1, w2};
  rec.new_edges = {f1, f2, f3};
  rec.fill_sublog = std::move(sub);
  return {cur, rec};
}

inline std::optional<Word> steep_band_for_correction(const Chart& c) {
  auto cyc = find_ascending_cycle(c);
  if (!cyc) return std::nullopt;
  return min_rotation(*cyc);
}

inline GentleEnvelope gentle_envelope(const Chart& c) {
  GentleEnvelope env{c, {}, {}, {}};
  for (EdgeIndex e = 0; e < c.edge_count(); ++e) env.embedding[c.edge_id(e)] = c.edge_id(e);
  auto remap = [&](const std::string& from, const std::string& to) {
    for (auto& [orig, cur] : env.embedding)
      if (cur == from) cur = to;
  };
  Chart cur = c;

  // Degree reductions, lowest vertex id first; the new vertex may need more.
  for (bool again = true; again;) {
    again = false;
    for (VertexIndex v = 0; v < cur.vertex_count(); ++v) {
      if (!cur.is_internal(v) || (cur.cls(v, 0).size() <= 2 && cur.cls(v, 1).size() <= 2)) continue;
      auto [next, rec] = degree_reduce(cur, cur.vertex_id(v), 1);
      cur = std::move(next);
      env.log.push_back(std::move(rec));
      again = true;
      break;
    }
  }
  // Steepenings, also removing fringe-to-fringe edges.
  for (bool again = true; again;) {
    again = false;
    for (EdgeIndex e = 0; e < cur.edge_count(); ++e) {
      if (cur.fringe_ends(e) != 2 && is_steep(cur, e)) continue;
      std::string id = cur.edge_id(e);
      auto [next, rec] = steepen(cur, id);
      remap(id, rec.new_edges[1]);
      cur = std::move(next);
      env.log.push_back(std::move(rec));
      again = true;
      break;
    }
  }
  {
    auto [next, recs] = fill(cur);
    cur = std::move(next);
    for (auto& r : recs) {
      env.w.insert(r.new_edges[0]);
      env.log.push_back(std::move(r));
    }
  }
  while (auto band = steep_band_for_correction(cur)) {
    auto [next, rec] = correct_band(cur, *band);
    remap(rec.edge, rec.new_edges[1]);
    for (auto& r : rec.fill_sublog) env.w.insert(r.new_edges[0]);
    cur = std::move(next);
    env.log.push_back(std::move(rec));
  }
  env.envelope = std::move(cur);
  return env;
}

// Deletes W, then undoes the log by contractions in reverse order.
inline Chart undo_envelope(const GentleEnvelope& env, const std::set<std::string>& w, std::vector<std::string>* contracted = nullptr) {
  Chart cur = delete_edges(env.envelope, w);
  auto contract = [&](const std::string& edge, const std::string& vanishing) {
    cur = contract_idle_edge(cur, edge, vanishing);
    if (contracted) contracted->push_back(edge);
  };
  for (auto it = env.log.rbegin(); it != env.log.rend(); ++it) {
    switch (it->kind) {
      case MoveKind::degree_reduce: contract(it->new_edges[0], it->new_vertices[0]); break;
      case MoveKind::steepen: contract(it->new_edges[0], it->new_vertices[0]); break;
      case MoveKind::band_correct:
        contract(it->new_edges[2], it->new_vertices[1]);
        contract(it->new_edges[0], it->new_vertices[0]);
        break;
      default: break;
    }
  }
  return cur;
}

struct EnvelopeReport {
  bool ok = false;
  bool gentle = false;
  bool isomorphic = false;
  bool face_equal = false;
  bool trails_equal = false;
  std::vector<std::string> failures;
};

inline EnvelopeReport verify_envelope_roundtrip(const Chart& c, const GentleEnvelope& env) {
  EnvelopeReport rep;
  rep.gentle = classify_chart(env.envelope).gentle;
  if (!rep.gentle) rep.failures.push_back("envelope is not gentle");

  // (a) delete W, contract, compare as framed charts.
  std::optional<Chart> back;
  try {
    back = undo_envelope(env, env.w);
    rep.isomorphic = charts_isomorphic(*back, c).has_value();
    if (!rep.isomorphic) rep.failures.push_back("undoing the envelope does not give an isomorphic chart");
  } catch (const Error& e) {
    rep.failures.push_back(std::string("undoing the envelope failed: ") + error_name(e.code()) + ": " + e.what());
  }

  // (b) face of the envelope polyhedron, projected to the embedded coordinates.
  const Chart& g = env.envelope;
  std::set<EdgeIndex> zero;
  for (auto& id : env.w)
    if (auto e = g.find_edge(id)) zero.insert(*e);
  std::vector<EdgeIndex> image;
  bool embedding_ok = true;
  for (EdgeIndex e = 0; e < c.edge_count(); ++e) {
    auto it = env.embedding.find(c.edge_id(e));
    auto ge = it == env.embedding.end() ? std::nullopt : g.find_edge(it->second);
    if (!ge) {
      embedding_ok = false;
      break;
    }
    image.push_back(*ge);
  }
  if (!embedding_ok) {
    rep.failures.push_back("embedding does not cover every original edge");
  } else {
    auto face = oracle_presentation(g, OracleMode::unit, zero);
    Presentation projected;
    auto project = [&](const Vec& x) {
      Vec y;
      for (auto e : image) y.push_back(x[e]);
      return y;
    };
    for (auto& v : face.vertices) projected.vertices.insert(project(v));
    for (auto& r : face.rays) projected.rays.insert(primitive_ray(project(r)));
    rep.face_equal = projected == oracle_presentation(c);
    if (!rep.face_equal) rep.failures.push_back("projected envelope face differs from the chart polyhedron");

    // (c) elementary trails of the envelope minus W, pushed through the contractions.
    if (back) {
      try {
        Chart gw = delete_edges(g, env.w);
        std::map<std::string, std::string> inv;
        for (auto& [orig, cur] : env.embedding) inv[cur] = orig;
        auto el = enumerate_elementary_trails(gw);
        TrailSets pushed;
        auto push = [&](const Trail& t) {
          std::vector<std::pair<std::string, Direction>> spec;
          for (auto& a : t.word) {
            auto it = inv.find(gw.edge_id(a.edge));
            if (it != inv.end()) spec.push_back({it->second, a.dir});
          }
          Trail mapped = canonicalize_trail(c, word_from_ids(c, spec));
          (mapped.kind == TrailKind::route ? pushed.routes : pushed.bands).insert(mapped);
        };
        // Bands that are not self-compatible can vanish under the moves; compare the rest.
        for (auto& t : el.routes) push(t);
        for (auto& t : el.bands)
          if (self_compatible(gw, t)) push(t);
        auto want = enumerate_elementary_trails(c);
        std::erase_if(want.bands, [&](const Trail& t) { return !self_compatible(c, t); });
        rep.trails_equal = pushed.routes == want.routes && pushed.bands == want.bands;
        if (!rep.trails_equal) rep.failures.push_back("elementary trails do not correspond");
      } catch (const Error& e) {
        rep.failures.push_back(std::string("trail correspondence failed: ") + error_name(e.code()) + ": " + e.what());
      }
    }
  }
  rep.ok = rep.failures.empty();
  return rep;
}

}  // namespace turb
