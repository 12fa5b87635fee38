#include <support/fixtures.hpp>

using namespace turb;
using namespace turb::testing;

namespace {

std::size_t non_steep(const Chart& c) {
  std::size_t n = 0;
  for (EdgeIndex e = 0; e < c.edge_count(); ++e) n += !is_steep(c, e);
  return n;
}

std::map<MoveKind, int> move_counts(const MoveLog& log) {
  std::map<MoveKind, int> m;
  for (auto& r : log) ++m[r.kind];
  return m;
}

}  // namespace

TEST(DegreeReduce, SplitsTheOversizedClass) {
  Chart c = fixture("trapezoid-a");
  auto [out, rec] = degree_reduce(c, "v", 1);
  EXPECT_EQ(rec.kind, MoveKind::degree_reduce);
  EXPECT_EQ(out.vertex_count(), c.vertex_count() + 1);
  VertexIndex v = *out.find_vertex("v"), v2 = *out.find_vertex(rec.new_vertices[0]);
  EXPECT_EQ(out.cls(v, 1).size(), 2u);
  EXPECT_EQ(out.cls(v, 1).back().edge, out.edge_index(rec.new_edges[0]));  // delta is the new top
  EXPECT_EQ(out.cls(v2, 0).size(), 1u);                                     // delta alone at v''
  EXPECT_TRUE(charts_isomorphic(contract_idle_edge(out, rec.new_edges[0], rec.new_vertices[0]), c).has_value());
}

TEST(DegreeReduce, Errors) {
  EXPECT_EQ(error_of([] { degree_reduce(fixture("square"), "v", 1); }), ErrorCode::NoOversizedClass);
  EXPECT_EQ(error_of([] { degree_reduce(fixture("trapezoid-a"), "v", 2); }), ErrorCode::BadSplitIndex);
  EXPECT_EQ(error_of([] { degree_reduce(fixture("trapezoid-a"), "v", 0); }), ErrorCode::BadSplitIndex);
}

TEST(Steepen, ReducesNonSteepEdges) {
  Chart c = fixture("kron-nb");
  ASSERT_GT(non_steep(c), 0u);
  EdgeIndex e = 0;
  while (is_steep(c, e)) ++e;
  auto [out, rec] = steepen(c, c.edge_id(e));
  EXPECT_LT(non_steep(out), non_steep(c));
  EXPECT_EQ(out.edge_count(), c.edge_count() + 1);
  for (auto& id : rec.new_edges) EXPECT_TRUE(is_steep(out, out.edge_index(id)));
  for (std::size_t k = 0; k < 2; ++k)
    EXPECT_TRUE(charts_isomorphic(contract_idle_edge(out, rec.new_edges[k], rec.new_vertices[0]), c).has_value()) << k;
}

TEST(Steepen, Errors) {
  EXPECT_EQ(error_of([] { steepen(fixture("square"), "a"); }), ErrorCode::EdgeAlreadySteep);
  EXPECT_EQ(error_of([] { steepen(fixture("trapezoid-a"), "a"); }), ErrorCode::NotSubFull);
}

TEST(Steepen, FringeToFringeEdge) {
  RawChart raw;
  raw.name = "stick";
  raw.vertices = {{"x", VertexKind::fringe}, {"y", VertexKind::fringe}};
  raw.edges = {{"e", {"x", "y"}}};
  auto [out, rec] = steepen(validate_chart(raw), "e");
  EXPECT_EQ(out.edge_count(), 2u);
  for (EdgeIndex e = 0; e < out.edge_count(); ++e) EXPECT_EQ(out.fringe_ends(e), 1);
}

TEST(Fill, MakesFull) {
  Chart c = fixture("kron-nb");
  while (non_steep(c) > 0) {
    EdgeIndex e = 0;
    while (is_steep(c, e)) ++e;
    c = steepen(c, c.edge_id(e)).first;
  }
  ASSERT_FALSE(is_full(c));
  auto [out, log] = fill(c);
  EXPECT_TRUE(is_full(out));
  EXPECT_EQ(non_steep(out), 0u);
  EXPECT_EQ(out.edge_count(), c.edge_count() + log.size());
  for (auto& r : log) {
    EXPECT_EQ(r.kind, MoveKind::fill_step);
    EXPECT_TRUE(r.placement == "above" || r.placement == "below");
  }
  // deleting the added edges gives back the input
  std::set<std::string> w;
  for (auto& r : log) w.insert(r.new_edges[0]);
  EXPECT_TRUE(charts_isomorphic(delete_edges(out, w), c).has_value());
}

TEST(Fill, FullChartIsUntouched) {
  auto [out, log] = fill(fixture("kron-h"));
  EXPECT_TRUE(log.empty());
  EXPECT_EQ(serialize_chart(out), serialize_chart(fixture("kron-h")));
  EXPECT_EQ(error_of([] { fill(fixture("kron-nb")); }), ErrorCode::NotSteepEverywhere);
}

TEST(CorrectBand, KroneckerAlt) {
  Chart c = fixture("kron-alt");
  auto band = steep_band_for_correction(c);
  ASSERT_TRUE(band.has_value());
  auto [out, rec] = correct_band(c, *band);
  EXPECT_EQ(rec.kind, MoveKind::band_correct);
  EXPECT_EQ(rec.new_edges.size(), 3u);
  EXPECT_FALSE(steep_band_for_correction(out).has_value());
  EXPECT_TRUE(classify_chart(out).gentle);

  std::set<std::string> w;
  for (auto& r : rec.fill_sublog) w.insert(r.new_edges[0]);
  Chart trimmed = delete_edges(out, w);
  // any two of the three replacement edges
  for (auto [x, y] : std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}}) {
    Chart back = contract_idle_edge(trimmed, rec.new_edges[std::size_t(x)]);
    back = contract_idle_edge(back, rec.new_edges[std::size_t(y)]);
    EXPECT_TRUE(charts_isomorphic(back, c).has_value()) << x << y;
  }
}

TEST(CorrectBand, Errors) {
  Chart k = fixture("kron-h");
  EXPECT_EQ(error_of([&] { correct_band(k, parse_word(k, "e2 f2-")); }), ErrorCode::BandNotSteep);
}

TEST(Envelope, GentleInputIsUnchanged) {
  for (auto name : {"square", "kron-h"}) {
    Chart c = fixture(name);
    auto env = gentle_envelope(c);
    EXPECT_TRUE(env.w.empty()) << name;
    EXPECT_TRUE(env.log.empty()) << name;
    EXPECT_EQ(serialize_chart(env.envelope), serialize_chart(c)) << name;
    EXPECT_TRUE(verify_envelope_roundtrip(c, env).ok) << name;
  }
}

TEST(Envelope, BowtieMoves) {
  Chart c = fixture("bowtie");
  auto env = gentle_envelope(c);
  auto counts = move_counts(env.log);
  EXPECT_EQ(counts[MoveKind::degree_reduce], 2);
  EXPECT_EQ(counts[MoveKind::steepen], 1);
  EXPECT_EQ(counts[MoveKind::fill_step], 4);
  EXPECT_EQ(env.w.size(), 4u);
  auto rep = verify_envelope_roundtrip(c, env);
  EXPECT_TRUE(rep.ok);
  EXPECT_TRUE(rep.isomorphic && rep.face_equal && rep.trails_equal);
}

TEST(Envelope, EveryFixture) {
  for (auto& name : chart_fixture_names()) {
    Chart c = fixture(name);
    auto env = gentle_envelope(c);
    EXPECT_TRUE(classify_chart(env.envelope).gentle) << name;
    auto rep = verify_envelope_roundtrip(c, env);
    EXPECT_TRUE(rep.ok) << name << ": " << (rep.failures.empty() ? "" : rep.failures.front());
  }
}

TEST(Envelope, TamperedWFails) {
  Chart c = fixture("bowtie");
  auto env = gentle_envelope(c);
  ASSERT_FALSE(env.w.empty());
  env.w.erase(env.w.begin());
  auto rep = verify_envelope_roundtrip(c, env);
  EXPECT_FALSE(rep.ok);
  EXPECT_FALSE(rep.isomorphic);
}

TEST(Envelope, Deterministic) {
  for (auto& name : chart_fixture_names()) {
    Chart c = fixture(name);
    EXPECT_EQ(to_json(gentle_envelope(c)).dump(), to_json(gentle_envelope(c)).dump()) << name;
  }
}

TEST(Envelope, PreservesDirectability) {
  for (auto& name : chart_fixture_names()) {
    Chart c = fixture(name);
    if (!classify_chart(c).directable) continue;
    auto env = gentle_envelope(c);
    EXPECT_TRUE(classify_chart(env.envelope).directable) << name;
  }
}

TEST(Envelope, FillConventionIsFlagged) {
  // contract-left has a fringe-partnered singleton class, filled by convention
  auto env = gentle_envelope(fixture("contract-left"));
  bool flagged = false;
  for (auto& r : env.log) flagged = flagged || (r.kind == MoveKind::fill_step && r.by_convention);
  EXPECT_TRUE(flagged);
}
