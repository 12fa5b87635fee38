#include <support/fixtures.hpp>

using namespace turb;
using namespace turb::testing;

namespace {

constexpr int kCases = 220;

// Brute force over which class holds the heads at each internal vertex.
bool directable_brute(const Chart& c) {
  std::vector<VertexIndex> internal;
  for (VertexIndex v = 0; v < c.vertex_count(); ++v)
    if (c.is_internal(v)) internal.push_back(v);
  std::map<VertexIndex, std::size_t> pos;
  for (std::size_t i = 0; i < internal.size(); ++i) pos[internal[i]] = i;
  for (unsigned mask = 0; mask < (1u << internal.size()); ++mask) {
    auto head_side = [&](VertexIndex v) { return int((mask >> pos.at(v)) & 1u); };
    bool ok = true;
    for (EdgeIndex e = 0; e < c.edge_count() && ok; ++e) {
      auto [v0, v1] = c.ends(e);
      // end k is the head: internal ends must sit in the matching class
      auto fits = [&](int head_end) {
        for (int k = 0; k < 2; ++k) {
          VertexIndex v = k == 0 ? v0 : v1;
          if (!c.is_internal(v)) continue;
          bool is_head = k == head_end;
          if ((c.side({e, std::uint8_t(k)}) == head_side(v)) != is_head) return false;
        }
        return true;
      };
      ok = fits(0) || fits(1);
    }
    if (ok) return true;
  }
  return false;
}

// Heads at an internal vertex all lie in one class, tails in the other.
bool orientation_is_valid(const Chart& c, const std::vector<Direction>& o) {
  std::map<VertexIndex, std::set<int>> heads, tails;
  for (EdgeIndex e = 0; e < c.edge_count(); ++e) {
    int h = o[e] == Direction::forward ? 1 : 0;
    auto [v0, v1] = c.ends(e);
    VertexIndex hv = h == 1 ? v1 : v0, tv = h == 1 ? v0 : v1;
    if (c.is_internal(hv)) heads[hv].insert(c.side({e, std::uint8_t(h)}));
    if (c.is_internal(tv)) tails[tv].insert(c.side({e, std::uint8_t(1 - h)}));
  }
  for (auto& [v, s] : heads)
    if (s.size() > 1 || (tails.count(v) && tails[v] == s)) return false;
  for (auto& [v, s] : tails)
    if (s.size() > 1) return false;
  return true;
}

std::string first_oversized(const Chart& c) {
  for (VertexIndex v = 0; v < c.vertex_count(); ++v)
    if (c.is_internal(v) && (c.cls(v, 0).size() > 2 || c.cls(v, 1).size() > 2)) return c.vertex_id(v);
  return {};
}

std::optional<EdgeIndex> first_non_steep(const Chart& c) {
  for (EdgeIndex e = 0; e < c.edge_count(); ++e)
    if (!is_steep(c, e)) return e;
  return std::nullopt;
}

bool demotes_internal(const Chart& c, const Chart& d) {
  for (VertexIndex v = 0; v < c.vertex_count(); ++v) {
    if (!c.is_internal(v)) continue;
    auto dv = d.find_vertex(c.vertex_id(v));
    if (dv && !d.is_internal(*dv)) return true;
  }
  return false;
}

}  // namespace

TEST(Directability, MatchesBruteForceAndWitness) {
  std::mt19937_64 rng(11);
  int yes = 0;
  for (int i = 0; i < kCases; ++i) {
    Chart c = random_chart(rng);
    auto r = classify_chart(c);
    ASSERT_EQ(r.directable, directable_brute(c)) << serialize_chart(c);
    if (r.directable) {
      ++yes;
      ASSERT_TRUE(orientation_is_valid(c, *r.orientation)) << serialize_chart(c);
    }
  }
  EXPECT_GT(yes, 0);
  EXPECT_LT(yes, kCases);
}

TEST(Directability, FramingIndependent) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < kCases; ++i) {
    Chart c = random_chart(rng);
    auto r = classify_chart(c);
    for (const Chart& d : {reverse_framing(c), reshuffle_framing(c, rng)}) {
      auto s = classify_chart(d);
      ASSERT_EQ(r.directable, s.directable);
      ASSERT_EQ(r.acyclic, s.acyclic);
      ASSERT_EQ(r.full, s.full);
      ASSERT_EQ(r.sub_full, s.sub_full);
    }
  }
}

TEST(MoveRoundTrip, DegreeReduceThenContract) {
  std::mt19937_64 rng(21);
  int done = 0;
  while (done < kCases) {
    Chart c = random_chart(rng);
    std::string v = first_oversized(c);
    if (v.empty()) continue;
    VertexIndex vi = *c.find_vertex(v);
    int m = int(c.cls(vi, c.cls(vi, 0).size() > 2 ? 0 : 1).size());  // the side degree_reduce splits
    int a = std::uniform_int_distribution<int>(1, m - 2)(rng);
    auto [out, rec] = degree_reduce(c, v, a);
    ASSERT_EQ(out.edge_count(), c.edge_count() + 1);
    Chart back = contract_idle_edge(out, rec.new_edges[0], rec.new_vertices[0]);
    ASSERT_TRUE(charts_isomorphic(back, c).has_value()) << serialize_chart(c) << " a=" << a;
    ++done;
  }
}

TEST(MoveRoundTrip, SteepenThenContract) {
  std::mt19937_64 rng(22);
  int done = 0;
  while (done < kCases) {
    Chart c = random_chart(rng);
    for (std::string v; !(v = first_oversized(c)).empty();) c = degree_reduce(c, v, 1).first;
    auto e = first_non_steep(c);
    if (!e) continue;
    auto [out, rec] = steepen(c, c.edge_id(*e));
    ASSERT_EQ(out.edge_count(), c.edge_count() + 1);
    for (auto& id : rec.new_edges) ASSERT_TRUE(is_steep(out, out.edge_index(id)));
    std::size_t k = std::uniform_int_distribution<std::size_t>(0, 1)(rng);
    Chart back = contract_idle_edge(out, rec.new_edges[k], rec.new_vertices[0]);
    ASSERT_TRUE(charts_isomorphic(back, c).has_value()) << serialize_chart(c) << " edge " << c.edge_id(*e);
    ++done;
  }
}

TEST(MoveRoundTrip, FillThenDelete) {
  std::mt19937_64 rng(23);
  int done = 0;
  while (done < kCases) {
    Chart c = random_chart(rng);
    for (std::string v; !(v = first_oversized(c)).empty();) c = degree_reduce(c, v, 1).first;
    while (auto e = first_non_steep(c)) c = steepen(c, c.edge_id(*e)).first;
    auto [out, log] = fill(c);
    ASSERT_TRUE(is_full(out));
    std::set<std::string> w;
    for (auto& r : log) w.insert(r.new_edges[0]);
    ASSERT_TRUE(charts_isomorphic(delete_edges(out, w), c).has_value()) << serialize_chart(c);
    ++done;
  }
}

TEST(MoveRoundTrip, EnvelopeVerifies) {
  std::mt19937_64 rng(24);
  RandomChartOptions opt;
  opt.max_internal = 3;
  opt.max_edges = 7;
  for (int i = 0; i < kCases; ++i) {
    Chart c = random_chart(rng, opt);
    auto env = gentle_envelope(c);
    ASSERT_TRUE(classify_chart(env.envelope).gentle) << serialize_chart(c);
    // gentle and connected, so some edge reaches the fringe
    bool fringe_edge = false;
    for (EdgeIndex e = 0; e < env.envelope.edge_count(); ++e) fringe_edge = fringe_edge || env.envelope.fringe_ends(e) > 0;
    ASSERT_TRUE(fringe_edge);
    auto rep = verify_envelope_roundtrip(c, env);
    ASSERT_TRUE(rep.ok) << serialize_chart(c) << "\n" << (rep.failures.empty() ? "" : rep.failures.front());
  }
}

TEST(Invariants, TrailPresentationMatchesOracle) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < kCases; ++i) {
    Chart c = random_chart(rng);
    auto oracle = oracle_presentation(c);
    ASSERT_EQ(trail_presentation(c), oracle) << serialize_chart(c);
    ASSERT_EQ(find_band(c).has_value(), !oracle.rays.empty()) << serialize_chart(c);
    for (auto& v : oracle.vertices) {
      ASSERT_EQ(strength(c, v), 1);
      ASSERT_TRUE(conserved(c, v));
    }
    for (auto& r : oracle.rays) ASSERT_EQ(strength(c, r), 0);
  }
}

TEST(Invariants, DeletionGivesAFace) {
  std::mt19937_64 rng(32);
  int done = 0;
  while (done < kCases) {
    Chart c = random_chart(rng);
    std::set<std::string> w;
    std::set<EdgeIndex> zero;
    for (EdgeIndex e = 0; e < c.edge_count(); ++e)
      if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) {
        w.insert(c.edge_id(e));
        zero.insert(e);
      }
    if (w.empty() || w.size() == c.edge_count()) continue;
    // only deletions that leave a chart: no vertex keeps edges on one side only
    if (error_of([&] { delete_edges(c, w); }) == ErrorCode::BadPartition) continue;
    Chart d = delete_edges(c, w);
    // an internal vertex demoted to fringe loses its conservation row, so the
    // result is larger than the face; DemotionBreaksTheFaceLaw covers that case
    if (demotes_internal(c, d)) continue;
    auto face = oracle_presentation(c, OracleMode::unit, zero);
    Presentation projected;
    auto project = [&](const Vec& x) {
      Vec y;
      for (EdgeIndex e = 0; e < d.edge_count(); ++e) y.push_back(x[c.edge_index(d.edge_id(e))]);
      return y;
    };
    for (auto& v : face.vertices) projected.vertices.insert(project(v));
    for (auto& r : face.rays) projected.rays.insert(primitive_ray(project(r)));
    ASSERT_EQ(projected, oracle_presentation(d)) << serialize_chart(c);
    ++done;
  }
}

TEST(Invariants, CliqueCombinationsDecomposeUniquely) {
  std::mt19937_64 rng(33);
  RandomChartOptions opt;
  opt.max_internal = 4;
  opt.max_edges = 8;
  int done = 0;
  while (done < kCases) {
    Chart c = random_acyclic_chart(rng, opt);
    Decomposer dec(c, 1);
    const auto& cells = dec.cells();
    ASSERT_FALSE(cells.empty());
    const Bundle& k = cells[std::uniform_int_distribution<std::size_t>(0, cells.size() - 1)(rng)];
    std::vector<Rational> w;
    Rational total = 0;
    for (std::size_t i = 0; i < k.routes.size(); ++i) {
      w.push_back(Rational(std::uniform_int_distribution<long>(1, 9)(rng)));
      total += w.back();
    }
    Flow f(c.edge_count(), 0);
    std::map<Trail, Rational> want;
    for (std::size_t i = 0; i < k.routes.size(); ++i) {
      want[k.routes[i]] = w[i] / total;
      auto v = indicator_vec(c, k.routes[i]);
      for (std::size_t j = 0; j < f.size(); ++j) f[j] += w[i] / total * v[j];
    }
    auto d = dec.decompose(f);
    ASSERT_TRUE(d.unique) << serialize_chart(c);
    ASSERT_EQ(d.combination.coefficients, want) << serialize_chart(c);
    ++done;
  }
}

TEST(Invariants, DemotionBreaksTheFaceLaw) {
  // x -a-> v -b-> u -d-> z with c a second exit at v: deleting d leaves u with
  // only b, so u turns fringe and b is no longer forced to vanish
  RawChart raw;
  raw.name = "demote";
  raw.vertices = {{"v", VertexKind::internal}, {"u", VertexKind::internal}, {"x", VertexKind::fringe},
                  {"y", VertexKind::fringe}, {"z", VertexKind::fringe}};
  raw.edges = {{"a", {"x", "v"}}, {"b", {"v", "u"}}, {"c", {"v", "y"}}, {"d", {"u", "z"}}};
  raw.classes["v"] = {std::vector<HalfEdgeKey>{{"a", 1}}, std::vector<HalfEdgeKey>{{"b", 0}, {"c", 0}}};
  raw.classes["u"] = {std::vector<HalfEdgeKey>{{"b", 1}}, std::vector<HalfEdgeKey>{{"d", 0}}};
  Chart c = validate_chart(raw);
  Chart d = delete_edges(c, {"d"});
  EXPECT_TRUE(demotes_internal(c, d));
  EXPECT_EQ(oracle_presentation(c, OracleMode::unit, {c.edge_index("d")}).vertices, vecs({{1, 0, 1, 0}}));
  EXPECT_EQ(oracle_presentation(d).vertices, vecs({{1, 1, 0}, {1, 0, 1}}));
}
