#include <support/fixtures.hpp>

using namespace turb;
using namespace turb::testing;

TEST(HRep, Rows) {
  auto b = hrep(fixture("bowtie"));
  EXPECT_EQ(b.conservation_rows, 1u);
  EXPECT_EQ(b.equalities.size(), 2u);
  EXPECT_EQ(b.equalities[0].size(), 4u);
  EXPECT_EQ(hrep(fixture("square")).conservation_rows, 1u);
  EXPECT_EQ(hrep(fixture("kron-h"), false).equalities.size(), 2u);
}

TEST(HRep, NoInternalVertices) {
  RawChart raw;
  raw.name = "stick";
  raw.vertices = {{"x", VertexKind::fringe}, {"y", VertexKind::fringe}};
  raw.edges = {{"e", {"x", "y"}}};
  Chart c = validate_chart(raw);
  EXPECT_EQ(hrep(c).conservation_rows, 0u);
  auto p = oracle_presentation(c);
  EXPECT_EQ(p.vertices, vecs({{1}}));
  EXPECT_TRUE(p.rays.empty());
}

TEST(Oracle, Examples) {
  auto b = oracle_presentation(fixture("bowtie"));
  EXPECT_EQ(b.vertices, vecs({{1, 0, 0, 1}, {2, 1, 0, 0}, {0, 0, 1, 2}}));
  EXPECT_EQ(b.rays, vecs({{0, 1, 1, 0}}));

  auto t = oracle_presentation(fixture("trapezoid-a"));
  EXPECT_EQ(t.vertices.size(), 4u);
  EXPECT_TRUE(t.rays.empty());

  Chart face = fixture("kron-face");
  auto f = oracle_presentation(face);
  EXPECT_EQ(f.vertices, std::set<Vec>{indicator_vec(face, trail(face, "e3- f3"))});
  EXPECT_EQ(f.rays.size(), 1u);
}

TEST(Oracle, AgreesWithBasicSolutions) {
  for (auto& name : chart_fixture_names()) {
    Chart c = fixture(name);
    if (c.edge_count() > kBasisOracleColumnLimit) continue;
    EXPECT_EQ(oracle_presentation(c), oracle_presentation_basic(c)) << name;
  }
}

TEST(Oracle, ConeModeContainsUnitVertices) {
  Chart c = fixture("square");
  auto cone = oracle_presentation(c, OracleMode::cone);
  auto unit = oracle_presentation(c);
  EXPECT_EQ(cone.vertices, vecs({{0, 0, 0, 0}}));  // apex
  EXPECT_EQ(cone.rays, unit.vertices);
}

TEST(TrailPresentation, Examples) {
  Chart k = fixture("kron-h");
  auto p = trail_presentation(k);
  EXPECT_EQ(p.vertices.size(), 4u);
  EXPECT_EQ(p.rays.size(), 1u);
  EXPECT_EQ(p, oracle_presentation(k));

  Chart b = fixture("bowtie");
  EXPECT_EQ(trail_presentation(b), oracle_presentation(b));

  auto s = trail_presentation(fixture("square"));
  EXPECT_EQ(s.vertices.size(), 4u);
  EXPECT_TRUE(s.rays.empty());
}

TEST(Decompose, BowtieBandCombination) {
  Chart b = fixture("bowtie");
  auto bc = decompose_flow(b, vec({1, 2, 2, 1}), 3);
  std::map<Trail, Rational> want = {{trail(b, "e h"), 1}, {trail(b, "f g"), 2}};
  EXPECT_EQ(bc.coefficients, want);
}

TEST(Decompose, RouteIndicatorIsItself) {
  for (auto name : {"square", "trapezoid-a", "bowtie", "kron-h"}) {
    Chart c = fixture(name);
    for (auto& t : enumerate_elementary_trails(c).routes) {
      if (!self_compatible(c, t)) continue;
      auto bc = decompose_flow(c, indicator_vec(c, t), 2);
      EXPECT_EQ(bc.coefficients, (std::map<Trail, Rational>{{t, 1}})) << name;
    }
  }
}

TEST(Decompose, Barycenter) {
  Chart c = fixture("trapezoid-a");
  for (auto& k : enumerate_maximal_cliques(c)) {
    Flow f(c.edge_count(), 0);
    Rational w(1, long(k.routes.size()));
    for (auto& t : k.routes) {
      auto v = indicator_vec(c, t);
      for (std::size_t i = 0; i < f.size(); ++i) f[i] += w * v[i];
    }
    auto bc = decompose_flow(c, f, 1);
    ASSERT_EQ(bc.coefficients.size(), k.routes.size());
    for (auto& [t, a] : bc.coefficients) EXPECT_EQ(a, w);
  }
}

TEST(Decompose, RejectsNonFlows) {
  Chart c = fixture("square");
  EXPECT_EQ(error_of([&] { decompose_flow(c, vec({1, 0, 0, 0}), 1); }), ErrorCode::NotCovered);
  EXPECT_EQ(error_of([&] { parse_flow(c, "a=1,zz=2"); }), ErrorCode::UnknownEdge);
}

TEST(Simplex, SquareCliques) {
  Chart c = fixture("square");
  for (auto& k : enumerate_maximal_cliques(c)) {
    auto s = simplex_check(c, k);
    EXPECT_EQ(s.dim, 2u);
    EXPECT_TRUE(s.unimodular);
    EXPECT_EQ(s.normalized_volume, 1);
  }
  Bundle single;
  single.routes = {acyclic_routes(c).front()};
  auto s = simplex_check(c, single);
  EXPECT_EQ(s.dim, 0u);
  EXPECT_EQ(s.normalized_volume, 1);
}

TEST(Simplex, DegenerateBundle) {
  // three routes of the square whose indicators are affinely dependent with the fourth
  Chart c = fixture("square");
  Bundle all;
  all.routes = acyclic_routes(c);
  EXPECT_EQ(error_of([&] { simplex_check(c, all); }), ErrorCode::DegenerateBundle);
}

TEST(Triangulation, Fixtures) {
  auto sq = verify_triangulation(fixture("square"));
  EXPECT_TRUE(sq.ok);
  EXPECT_EQ(sq.simplices, 2u);
  EXPECT_EQ(sq.volume_sum, 2);
  for (auto name : {"trapezoid-a", "trapezoid-b"}) {
    auto r = verify_triangulation(fixture(name));
    EXPECT_TRUE(r.ok) << name;
    EXPECT_EQ(r.simplices, 3u) << name;
    EXPECT_EQ(r.volume_sum, r.oracle_volume) << name;
    EXPECT_TRUE(r.integer_points_covered) << name;
  }
  EXPECT_EQ(error_of([] { verify_triangulation(fixture("bowtie")); }), ErrorCode::NotAcyclic);
}

TEST(Subdivision, BowtieWall) {
  Chart b = fixture("bowtie");
  auto r = verify_subdivision_capped(b, 3, 100, 11);
  EXPECT_EQ(r.uncovered + r.covered + r.covered_after_escalation, 100u);
  EXPECT_EQ(r.non_unique, 0u);
  EXPECT_TRUE(r.strong_intersection);
  Bundle wall;
  wall.routes = {trail(b, "e h")};
  wall.bands = {trail(b, "f g")};
  EXPECT_EQ(simplex_check(b, wall).dim, 1u);
}

TEST(Subdivision, KroneckerNoBandIsATriangulation) {
  auto r = verify_subdivision_capped(fixture("kron-nb"), 3, 64, 3);
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.full_dimensional_cells, r.cells);
  EXPECT_EQ(r.unimodular_cells, r.cells);
}

TEST(Subdivision, AcyclicMatchesTriangulation) {
  for (auto name : {"square", "trapezoid-a", "trapezoid-b"}) {
    Chart c = fixture(name);
    auto s = verify_subdivision_capped(c, 2, 32, 5);
    auto t = verify_triangulation(c);
    EXPECT_EQ(s.ok, t.ok) << name;
    EXPECT_EQ(s.cells, t.simplices) << name;
    EXPECT_EQ(s.uncovered, 0u) << name;
  }
}

TEST(FaceLaw, DeletionIsAFace) {
  for (auto [name, w] : std::vector<std::pair<std::string, std::set<std::string>>>{
           {"kron-h", {"e1", "f1"}}, {"bowtie", {"g"}}, {"trapezoid-a", {"b"}}, {"kron-alt", {"e3"}}}) {
    Chart c = fixture(name);
    Chart d = delete_edges(c, w);
    std::set<EdgeIndex> zero;
    for (auto& id : w) zero.insert(c.edge_index(id));
    auto face = oracle_presentation(c, OracleMode::unit, zero);
    auto project = [&](const Vec& x) {
      Vec y;
      for (EdgeIndex e = 0; e < d.edge_count(); ++e) y.push_back(x[c.edge_index(d.edge_id(e))]);
      return y;
    };
    Presentation projected;
    for (auto& v : face.vertices) projected.vertices.insert(project(v));
    for (auto& r : face.rays) projected.rays.insert(primitive_ray(project(r)));
    EXPECT_EQ(projected, oracle_presentation(d)) << name;
  }
}
