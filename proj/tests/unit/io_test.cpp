#include <support/fixtures.hpp>

using namespace turb;
using namespace turb::testing;

TEST(ParseChart, Fixture) {
  Chart c = parse_chart_file(fixture_path("bowtie.json"));
  EXPECT_EQ(c.name(), "bowtie");
  EXPECT_EQ(c.edge_count(), 4u);
}

TEST(ParseChart, TruncatedIsSyntaxErrorWithOffset) {
  std::string text = read_file(fixture_path("square.json"));
  std::string cut = text.substr(0, text.size() / 2);
  try {
    parse_chart_text(cut);
    FAIL() << "no error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SyntaxError);
    EXPECT_NE(std::string(e.what()).find("byte "), std::string::npos);
  }
  EXPECT_EQ(error_of([] { read_file("/nonexistent/chart.json"); }), ErrorCode::SyntaxError);
}

TEST(ParseChart, MissingEdgeIsSchemaErrorNamingKey) {
  Json j = to_json(fixture("square"));
  j["classes"]["v"][0][0][0] = "ghost";
  try {
    chart_from_json(j);
    FAIL() << "no error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SchemaError);
    EXPECT_NE(std::string(e.what()).find("$.classes.v[0][0]"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("ghost"), std::string::npos);
  }
  Json k = to_json(fixture("square"));
  k["vertices"][0]["kind"] = "sideways";
  EXPECT_EQ(error_of([&] { chart_from_json(k); }), ErrorCode::SchemaError);
}

TEST(ParseChart, SerializeIsStable) {
  for (auto& name : chart_fixture_names()) {
    Chart c = fixture(name);
    std::string once = serialize_chart(c);
    EXPECT_EQ(serialize_chart(parse_chart_text(once)), once) << name;
  }
}

TEST(Formats, TrailAndFlowRoundTrip) {
  Chart b = fixture("bowtie");
  for (auto& t : enumerate_trails_capped(b, 2).routes) EXPECT_EQ(trail_from_json(b, to_json(b, t)), t);
  Flow f = parse_flow(b, "e=1,f=5/2,g=5/2,h=1");
  EXPECT_EQ(f, (Vec{1, Rational(5, 2), Rational(5, 2), 1}));
  EXPECT_EQ(error_of([&] { parse_flow(b, "e"); }), ErrorCode::SchemaError);
}

TEST(Formats, SignedGraphJson) {
  auto [sg, cert] = signed_graph_of_acyclic_chart(fixture("trapezoid-a"));
  SignedGraph back = signed_graph_from_json(to_json(sg));
  EXPECT_EQ(to_json(back).dump(), to_json(sg).dump());
  Json bad = to_json(sg);
  bad["edges"][0]["sign"] = "?";
  EXPECT_EQ(error_of([&] { signed_graph_from_json(bad); }), ErrorCode::SchemaError);
}

TEST(Formats, DigraphAndAlgebraJson) {
  auto dg = digraph_from_json(parse_json_text(read_file(fixture_path("kron.digraph.json"))));
  EXPECT_EQ(to_json(digraph_from_json(to_json(dg))).dump(), to_json(dg).dump());
  auto alg = algebra_from_json(parse_json_text(read_file(fixture_path("bloss.algebra.json"))));
  EXPECT_EQ(algebra_from_json(to_json(alg)), alg);
}

TEST(Formats, DigestIsDeterministic) {
  std::string text = read_file(fixture_path("square.json"));
  EXPECT_EQ(digest(text), digest(text));
  EXPECT_NE(digest(text), digest(text + " "));
}

TEST(Render, SquareIsTwoTriangles) {
  Chart c = fixture("square");
  auto r = render_projection(c, oracle_presentation(c), enumerate_maximal_cliques(c));
  EXPECT_EQ(r.dimension, 2u);
  EXPECT_EQ(r.format, "svg");
  std::size_t polys = 0;
  for (std::size_t at = 0; (at = r.text.find("<polygon", at)) != std::string::npos; ++at) ++polys;
  EXPECT_EQ(polys, 2u);
  EXPECT_EQ(render_projection(c, oracle_presentation(c), enumerate_maximal_cliques(c)).text, r.text);
}

TEST(Render, BowtieRayAndWall) {
  Chart c = fixture("bowtie");
  std::vector<Bundle> cells = enumerate_maximal_bundles_capped(c, 2);
  auto r = render_projection(c, oracle_presentation(c), cells);
  EXPECT_EQ(r.dimension, 2u);
  EXPECT_NE(r.text.find("marker-end"), std::string::npos);
  EXPECT_NE(r.text.find("stroke-dasharray"), std::string::npos);
}

TEST(Render, KroneckerIsThreeDimensional) {
  Chart c = fixture("kron-h");
  auto r = render_projection(c, oracle_presentation(c), enumerate_maximal_bundles_capped(c, 2));
  EXPECT_EQ(r.dimension, 3u);
  EXPECT_EQ(r.format, "obj");
  std::size_t rays = 0;
  for (std::size_t at = 0; (at = r.text.find("# ray", at)) != std::string::npos; ++at) ++rays;
  EXPECT_EQ(rays, 1u);
  EXPECT_NE(r.text.find("\nv "), std::string::npos);
}

TEST(Render, TooManyDimensions) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    Chart c = random_chart(rng);
    auto p = oracle_presentation(c);
    std::size_t dim = detail::affine_frame(p).axes.size();
    if (dim <= 3) continue;
    EXPECT_EQ(error_of([&] { render_projection(c, p, {}); }), ErrorCode::DimensionTooHigh);
    return;
  }
  GTEST_SKIP() << "no chart with a polyhedron of dimension above 3 in the sample";
}
