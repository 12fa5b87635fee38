#pragma once

#include <turb/compat.hpp>
#include <turb/dd.hpp>
#include <turb/linalg.hpp>

#include <random>

namespace turb {

// A flow is a rational vector aligned with the chart's edge order.
using Flow = Vec;

struct HRep {
  IntMatrix equalities;  // conservation rows (one per internal vertex), then the strength row
  IntVec rhs;
  std::size_t conservation_rows = 0;
  bool has_strength = true;
};

inline HRep hrep(const Chart& c, bool with_strength = true) {
  HRep h;
  for (VertexIndex v = 0; v < c.vertex_count(); ++v) {
    if (!c.is_internal(v)) continue;
    IntVec row(c.edge_count(), 0);
    for (int s = 0; s < 2; ++s)
      for (auto he : c.cls(v, s)) row[he.edge] += s == 0 ? 1 : -1;
    h.equalities.push_back(std::move(row));
    h.rhs.push_back(0);
  }
  h.conservation_rows = h.equalities.size();
  h.has_strength = with_strength;
  if (with_strength) {
    IntVec row(c.edge_count(), 0);
    for (EdgeIndex e = 0; e < c.edge_count(); ++e) row[e] = c.fringe_ends(e);
    h.equalities.push_back(std::move(row));
    h.rhs.push_back(2);
  }
  return h;
}

inline Rational strength(const Chart& c, const Flow& f) {
  Rational s = 0;
  for (EdgeIndex e = 0; e < c.edge_count(); ++e) s += c.fringe_ends(e) * f[e];
  return s / 2;
}

inline bool conserved(const Chart& c, const Flow& f) {
  auto h = hrep(c, false);
  for (auto& row : h.equalities) {
    Rational s = 0;
    for (EdgeIndex e = 0; e < c.edge_count(); ++e) s += Rational(row[e]) * f[e];
    if (s != 0) return false;
  }
  return true;
}

inline bool nonnegative(const Flow& f) {
  for (auto& x : f)
    if (x < 0) return false;
  return true;
}

struct Presentation {
  std::set<Vec> vertices;
  std::set<Vec> rays;  // primitive integer vectors
  bool operator==(const Presentation&) const = default;
};

enum class OracleMode { unit, cone };

inline constexpr std::size_t kOracleColumnLimit = 160;
inline constexpr std::size_t kBasisOracleColumnLimit = 20;

// Vertices and extremal rays of F1 (unit mode) or extremal rays of the flow cone
// (cone mode), by double description on the homogenized cone. Edges in `zero`
// are forced to carry no flow, which realizes faces of the polyhedron.
inline Presentation oracle_presentation(const Chart& c, OracleMode mode = OracleMode::unit,
                                        const std::set<EdgeIndex>& zero = {}) {
  std::vector<EdgeIndex> cols;
  for (EdgeIndex e = 0; e < c.edge_count(); ++e)
    if (!zero.count(e)) cols.push_back(e);
  bool unit = mode == OracleMode::unit;
  std::size_t n = cols.size() + (unit ? 1 : 0);
  if (n > kOracleColumnLimit) fail(ErrorCode::TooLarge, std::to_string(n) + " oracle columns");

  auto h = hrep(c, unit);
  IntMatrix m;
  for (std::size_t r = 0; r < h.equalities.size(); ++r) {
    IntVec row;
    bool nonzero = false;
    for (auto e : cols) {
      row.push_back(h.equalities[r][e]);
      nonzero = nonzero || h.equalities[r][e] != 0;
    }
    bool strength_row = unit && r == h.conservation_rows;
    if (unit) row.push_back(strength_row ? Integer(-2) : Integer(0));
    if (nonzero || strength_row) m.push_back(std::move(row));
  }

  Presentation p;
  for (auto& ray : dd::extreme_rays(m, n)) {
    Vec full(c.edge_count(), 0);
    for (std::size_t k = 0; k < cols.size(); ++k) full[cols[k]] = Rational(ray[k]);
    if (unit && ray.back() > 0) {
      Rational t(ray.back());
      for (auto& x : full) x /= t;
      p.vertices.insert(std::move(full));
    } else {
      p.rays.insert(primitive_ray(full));
    }
  }
  if (!unit) p.vertices.insert(Vec(c.edge_count(), 0));
  return p;
}

// Textbook basic-solution enumeration over supports; exponential, used to cross-check
// the double description oracle on small charts.
inline Presentation oracle_presentation_basic(const Chart& c) {
  std::size_t n = c.edge_count();
  if (n > kBasisOracleColumnLimit) fail(ErrorCode::TooLarge, std::to_string(n) + " columns for the basis oracle");
  auto h = hrep(c, true);
  Matrix a;
  for (auto& row : h.equalities) a.push_back(to_rational(row));
  Vec b = to_rational(h.rhs);
  Matrix ar(a.begin(), a.begin() + long(h.conservation_rows));
  ar.push_back(a.back());   // strength row, right-hand side 0 for rays
  ar.push_back(Vec(n, 1));  // normalization
  Vec br(ar.size(), 0);
  br.back() = 1;

  Presentation p;
  for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
    std::vector<EdgeIndex> support;
    for (EdgeIndex e = 0; e < n; ++e)
      if (mask >> e & 1) support.push_back(e);
    for (int pass = 0; pass < 2; ++pass) {
      const Matrix& mat = pass == 0 ? a : ar;
      const Vec& rhs = pass == 0 ? b : br;
      Matrix sub;
      for (auto& row : mat) {
        Vec r;
        for (auto e : support) r.push_back(row[e]);
        sub.push_back(std::move(r));
      }
      auto sol = linalg::solve(sub, rhs, support.size());
      if (!sol || !sol->unique) continue;
      bool positive = true;
      for (auto& x : sol->x) positive = positive && x > 0;
      if (!positive) continue;
      Vec full(n, 0);
      for (std::size_t k = 0; k < support.size(); ++k) full[support[k]] = sol->x[k];
      if (pass == 0)
        p.vertices.insert(full);
      else
        p.rays.insert(primitive_ray(full));
    }
  }
  return p;
}

inline Vec indicator_vec(const Chart& c, const Trail& t) { return to_rational(indicator(c, t)); }

// Vertices from elementary routes, rays from self-compatible elementary bands.
inline Presentation trail_presentation(const Chart& c) {
  auto el = enumerate_elementary_trails(c);
  Presentation p;
  for (auto& r : el.routes) p.vertices.insert(indicator_vec(c, r));
  for (auto& b : el.bands)
    if (self_compatible(c, b)) p.rays.insert(primitive_ray(indicator_vec(c, b)));
  return p;
}

// Unit integer flows with every coordinate in [0, bound], optionally also with
// coordinate sum at most `total`.
inline std::vector<IntVec> integer_points(const Chart& c, long bound, std::optional<long> total = std::nullopt) {
  auto h = hrep(c, true);
  std::size_t n = c.edge_count(), rows = h.equalities.size();
  // suffix ranges of each row over coordinates k..n-1
  std::vector<std::vector<long>> lo(rows, std::vector<long>(n + 1, 0)), hi(rows, std::vector<long>(n + 1, 0));
  std::vector<std::vector<long>> coef(rows, std::vector<long>(n));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t e = 0; e < n; ++e) coef[r][e] = h.equalities[r][e].convert_to<long>();
    for (std::size_t k = n; k-- > 0;) {
      long cb = coef[r][k] * bound;
      lo[r][k] = lo[r][k + 1] + std::min(0L, cb);
      hi[r][k] = hi[r][k + 1] + std::max(0L, cb);
    }
  }
  std::vector<long> rhs;
  for (auto& x : h.rhs) rhs.push_back(x.convert_to<long>());
  std::vector<IntVec> out;
  std::vector<long> x(n, 0), partial(rows, 0);
  long mass = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (total && mass > *total) return;
    for (std::size_t r = 0; r < rows; ++r) {
      long need = rhs[r] - partial[r];
      if (need < lo[r][k] || need > hi[r][k]) return;
    }
    if (k == n) {
      IntVec v;
      for (auto xi : x) v.emplace_back(xi);
      out.push_back(std::move(v));
      return;
    }
    for (long val = 0; val <= bound; ++val) {
      x[k] = val;
      mass += val;
      for (std::size_t r = 0; r < rows; ++r) partial[r] += coef[r][k] * val;
      rec(k + 1);
      for (std::size_t r = 0; r < rows; ++r) partial[r] -= coef[r][k] * val;
      mass -= val;
    }
    x[k] = 0;
  };
  rec(0);
  return out;
}

// Largest coordinate needed to see every vertex and one step along every ray.
inline long scan_bound(const Presentation& p) {
  Rational m = 0;
  for (auto& v : p.vertices)
    for (auto& x : v) m = std::max(m, x);
  Rational r = 0;
  for (auto& ray : p.rays)
    for (auto& x : ray) r = std::max(r, x);
  Rational total = m + r;
  return numer(total).convert_to<long>() / denom(total).convert_to<long>() + 1;
}

// Lattice spanned by differences of integer points of F1 found in the scan box.
struct ReferenceLattice {
  IntMatrix basis;  // echelon rows
  std::size_t ambient = 0;
  std::size_t rank() const { return basis.size(); }

  // Integer coordinates of d in the basis; nullopt if d is not in the lattice.
  std::optional<IntVec> coordinates(const Vec& d) const {
    if (basis.empty()) {
      for (auto& x : d)
        if (x != 0) return std::nullopt;
      return IntVec{};
    }
    Matrix bt(ambient, Vec(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < ambient; ++j) bt[j][i] = Rational(basis[i][j]);
    auto sol = linalg::solve(bt, d, basis.size());
    if (!sol || !is_integral(sol->x)) return std::nullopt;
    return to_integer(sol->x);
  }
};

inline ReferenceLattice reference_lattice(const Chart& c, const Presentation& oracle) {
  ReferenceLattice l;
  l.ambient = c.edge_count();
  auto pts = integer_points(c, scan_bound(oracle));
  IntMatrix diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    IntVec d(l.ambient);
    for (std::size_t j = 0; j < l.ambient; ++j) d[j] = pts[i][j] - pts[0][j];
    diffs.push_back(std::move(d));
  }
  l.basis = linalg::lattice_basis(std::move(diffs), l.ambient);
  return l;
}

inline ReferenceLattice reference_lattice(const Chart& c) { return reference_lattice(c, oracle_presentation(c)); }

struct SimplexReport {
  std::size_t dim = 0;
  bool unimodular = false;
  Integer normalized_volume = 0;
};

inline SimplexReport simplex_check(const Chart& c, const Bundle& b, const ReferenceLattice& lat) {
  std::vector<Vec> d;
  if (!b.routes.empty()) {
    Vec base = indicator_vec(c, b.routes.front());
    for (std::size_t i = 1; i < b.routes.size(); ++i) {
      Vec v = indicator_vec(c, b.routes[i]);
      for (std::size_t j = 0; j < v.size(); ++j) v[j] -= base[j];
      d.push_back(std::move(v));
    }
  }
  for (auto& band : b.bands) d.push_back(indicator_vec(c, band));
  SimplexReport r;
  r.dim = linalg::rank_of_rows(d);
  if (r.dim != d.size()) fail(ErrorCode::DegenerateBundle, "bundle generators are affinely dependent");
  if (d.empty()) {
    r.unimodular = true;
    r.normalized_volume = 1;
    return r;
  }
  IntMatrix coords;
  for (auto& v : d) {
    auto co = lat.coordinates(v);
    if (!co) {
      r.unimodular = false;
      r.normalized_volume = 0;
      return r;
    }
    coords.push_back(std::move(*co));
  }
  auto div = linalg::smith_divisors(coords);
  r.normalized_volume = 1;
  for (auto& x : div) r.normalized_volume *= x;
  r.unimodular = r.normalized_volume == 1;
  return r;
}

inline SimplexReport simplex_check(const Chart& c, const Bundle& b) { return simplex_check(c, b, reference_lattice(c)); }

// Normalized volume of a bounded F1 relative to the reference lattice, from a
// pulling triangulation. Faces of F1 are cut out by coordinate hyperplanes, so
// facets of a face are its maximal proper intersections with x_e = 0.
inline Integer oracle_normalized_volume(const Chart& c, const Presentation& oracle, const ReferenceLattice& lat) {
  if (!oracle.rays.empty()) fail(ErrorCode::NotAcyclic, "polyhedron is unbounded");
  std::vector<Vec> verts(oracle.vertices.begin(), oracle.vertices.end());
  if (verts.empty()) return 0;
  std::size_t d = lat.rank();
  std::vector<IntVec> coord;
  for (auto& v : verts) {
    Vec diff = v;
    for (std::size_t j = 0; j < diff.size(); ++j) diff[j] -= verts[0][j];
    auto co = lat.coordinates(diff);
    if (!co) fail(ErrorCode::DegenerateBundle, "vertex outside the reference lattice");
    coord.push_back(*co);
  }
  auto affine_rank = [&](const std::vector<std::size_t>& s) {
    std::vector<Vec> rows;
    for (std::size_t i = 1; i < s.size(); ++i) {
      Vec r(d);
      for (std::size_t j = 0; j < d; ++j) r[j] = Rational(coord[s[i]][j] - coord[s[0]][j]);
      rows.push_back(std::move(r));
    }
    return linalg::rank_of_rows(rows);
  };
  std::function<std::vector<std::vector<std::size_t>>(const std::vector<std::size_t>&, std::size_t)> tri =
      [&](const std::vector<std::size_t>& face, std::size_t dim) -> std::vector<std::vector<std::size_t>> {
    if (dim == 0) return {{face.front()}};
    std::size_t apex = face.front();
    std::set<std::vector<std::size_t>> facets;
    for (std::size_t e = 0; e < c.edge_count(); ++e) {
      std::vector<std::size_t> sub;
      for (auto i : face)
        if (verts[i][e] == 0) sub.push_back(i);
      if (sub.empty() || sub.size() == face.size()) continue;
      if (std::find(sub.begin(), sub.end(), apex) != sub.end()) continue;
      if (affine_rank(sub) + 1 != dim) continue;
      facets.insert(sub);
    }
    std::vector<std::vector<std::size_t>> out;
    for (auto& f : facets)
      for (auto s : tri(f, dim - 1)) {
        s.push_back(apex);
        out.push_back(std::move(s));
      }
    return out;
  };
  std::vector<std::size_t> all(verts.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::size_t dim = affine_rank(all);
  if (dim == 0) return 1;
  Integer vol = 0;
  for (auto& s : tri(all, dim)) {
    IntMatrix m;
    for (std::size_t i = 1; i < s.size(); ++i) {
      IntVec r(d);
      for (std::size_t j = 0; j < d; ++j) r[j] = coord[s[i]][j] - coord[s[0]][j];
      m.push_back(std::move(r));
    }
    Integer v = 1;
    for (auto& x : linalg::smith_divisors(m)) v *= x;
    vol += v;
  }
  return vol;
}

// Intersection of two bundle simplihedra conv(A)+cone(R) and conv(A')+cone(R'),
// computed exactly in barycentric coordinates. Empty when no vertex exists.
inline Presentation intersect_simplihedra(const std::vector<Vec>& a, const std::vector<Vec>& r, const std::vector<Vec>& a2,
                                          const std::vector<Vec>& r2, std::size_t ambient) {
  std::size_t na = a.size(), nr = r.size(), na2 = a2.size(), nr2 = r2.size();
  std::size_t n = na + nr + na2 + nr2 + 1;
  // All generators are integral, so rows stay integral.
  IntMatrix m;
  for (std::size_t j = 0; j < ambient; ++j) {
    IntVec row(n, 0);
    std::size_t k = 0;
    for (auto& v : a) row[k++] = numer(v[j]);
    for (auto& v : r) row[k++] = numer(v[j]);
    for (auto& v : a2) row[k++] = -numer(v[j]);
    for (auto& v : r2) row[k++] = -numer(v[j]);
    m.push_back(std::move(row));
  }
  IntVec s1(n, 0), s2(n, 0);
  for (std::size_t i = 0; i < na; ++i) s1[i] = 1;
  for (std::size_t i = 0; i < na2; ++i) s2[na + nr + i] = 1;
  s1[n - 1] = -1;
  s2[n - 1] = -1;
  m.push_back(s1);
  m.push_back(s2);
  Presentation p;
  std::set<Vec> rays;
  for (auto& y : dd::extreme_rays(m, n)) {
    Vec x(ambient, 0);
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t j = 0; j < ambient; ++j) x[j] += Rational(y[i]) * a[i][j];
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < ambient; ++j) x[j] += Rational(y[na + i]) * r[i][j];
    if (y[n - 1] > 0) {
      for (auto& xi : x) xi /= Rational(y[n - 1]);
      p.vertices.insert(std::move(x));
    } else {
      bool zero = std::all_of(x.begin(), x.end(), [](const Rational& q) { return q == 0; });
      if (!zero) rays.insert(primitive_ray(x));
    }
  }
  if (!p.vertices.empty()) p.rays = std::move(rays);
  return p;
}

struct BundleCombination {
  Bundle bundle;  // positive support
  std::map<Trail, Rational> coefficients;
  bool operator==(const BundleCombination& o) const { return bundle == o.bundle && coefficients == o.coefficients; }
};

// Solves F = sum a_p I(p) + sum c_B I(B) with sum a_p = strength(F) over one bundle.
// Returns nullopt when F lies outside the bundle simplihedron.
inline std::optional<BundleCombination> combination_in(const Chart& c, const Bundle& b, const Flow& f) {
  auto members = b.members();
  std::size_t k = members.size(), n = c.edge_count();
  Matrix a(n + 1, Vec(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    auto ind = indicator(c, members[i]);
    for (std::size_t j = 0; j < n; ++j) a[j][i] = ind[j];
    a[n][i] = members[i].kind == TrailKind::route ? 1 : 0;
  }
  Vec rhs = f;
  rhs.push_back(strength(c, f));
  auto sol = linalg::solve(a, rhs, k);
  if (!sol) return std::nullopt;
  if (!sol->unique) fail(ErrorCode::DegenerateBundle, "bundle generators are affinely dependent");
  BundleCombination bc;
  for (std::size_t i = 0; i < k; ++i) {
    if (sol->x[i] < 0) return std::nullopt;
    if (sol->x[i] == 0) continue;
    bc.coefficients[members[i]] = sol->x[i];
    (members[i].kind == TrailKind::route ? bc.bundle.routes : bc.bundle.bands).push_back(members[i]);
  }
  bc.bundle.cap = b.cap;
  return bc;
}

struct Decomposition {
  BundleCombination combination;
  bool unique = true;  // every containing cell gave the same positive combination
  std::size_t containing_cells = 0;
};

// Cells (maximal cliques or capped maximal bundles with a route) with cached data
// for repeated decompositions.
class Decomposer {
 public:
  Decomposer(const Chart& c, int cap) : chart_(c), cap_(cap) {
    acyclic_ = !find_band(c).has_value();
    auto all = acyclic_ ? enumerate_maximal_cliques(c) : enumerate_maximal_bundles_capped(c, cap);
    for (auto& b : all)
      if (!b.routes.empty() || acyclic_) cells_.push_back(b);
    all_bundles_ = std::move(all);
  }

  const std::vector<Bundle>& cells() const { return cells_; }
  const std::vector<Bundle>& bundles() const { return all_bundles_; }
  bool acyclic() const { return acyclic_; }
  int cap() const { return cap_; }

  std::optional<Decomposition> try_decompose(const Flow& f) const {
    const auto& pool = strength(chart_, f) == 0 ? all_bundles_ : cells_;
    std::optional<Decomposition> out;
    for (auto& b : pool) {
      auto bc = combination_in(chart_, b, f);
      if (!bc) continue;
      if (!out) {
        out = Decomposition{*bc, true, 1};
      } else {
        ++out->containing_cells;
        if (!(out->combination == *bc)) out->unique = false;
      }
    }
    return out;
  }

  Decomposition decompose(const Flow& f) const {
    auto d = try_decompose(f);
    if (!d) fail(ErrorCode::NotCovered, "flow lies in no enumerated bundle simplihedron");
    return *d;
  }

 private:
  const Chart& chart_;
  int cap_;
  bool acyclic_ = false;
  std::vector<Bundle> cells_;
  std::vector<Bundle> all_bundles_;
};

inline BundleCombination decompose_flow(const Chart& c, const Flow& f, int cap) {
  if (!conserved(c, f) || !nonnegative(f)) fail(ErrorCode::NotCovered, "flow is not a conserved nonnegative flow");
  return Decomposer(c, cap).decompose(f).combination;
}

struct TriangulationReport {
  bool ok = false;
  std::size_t simplices = 0;
  std::size_t dim = 0;
  bool all_full_dimensional = true;
  bool all_unimodular = true;
  Integer volume_sum = 0;
  Integer oracle_volume = 0;
  bool strong_intersection = true;
  bool integer_points_covered = true;
  std::size_t integer_points = 0;
  std::vector<std::string> failures;
};

namespace detail {

inline std::vector<Vec> indicators(const Chart& c, const std::vector<Trail>& ts) {
  std::vector<Vec> out;
  for (auto& t : ts) out.push_back(indicator_vec(c, t));
  return out;
}

inline std::vector<Vec> primitive_indicators(const Chart& c, const std::vector<Trail>& ts) {
  std::vector<Vec> out;
  for (auto& t : ts) out.push_back(primitive_ray(indicator_vec(c, t)));
  return out;
}

template <class T>
std::vector<T> shared(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Strong intersection of two bundle simplihedra: they meet exactly in the face
// spanned by their shared trails.
inline bool strong_pair(const Chart& c, const Bundle& x, const Bundle& y) {
  std::size_t n = c.edge_count();
  auto got = intersect_simplihedra(indicators(c, x.routes), indicators(c, x.bands), indicators(c, y.routes),
                                   indicators(c, y.bands), n);
  auto sr = shared(x.routes, y.routes);
  auto sb = shared(x.bands, y.bands);
  Presentation want;
  if (!sr.empty()) {
    for (auto& v : indicators(c, sr)) want.vertices.insert(v);
    for (auto& v : primitive_indicators(c, sb)) want.rays.insert(v);
  }
  return got == want;
}

}  // namespace detail

inline TriangulationReport verify_triangulation(const Chart& c) {
  if (find_band(c)) fail(ErrorCode::NotAcyclic, "chart '" + c.name() + "' has a band");
  TriangulationReport rep;
  auto oracle = oracle_presentation(c);
  auto lat = reference_lattice(c, oracle);
  rep.dim = lat.rank();
  auto cliques = enumerate_maximal_cliques(c);
  rep.simplices = cliques.size();
  for (auto& k : cliques) {
    auto s = simplex_check(c, k, lat);
    if (s.dim != rep.dim) {
      rep.all_full_dimensional = false;
      rep.failures.push_back("clique of dimension " + std::to_string(s.dim) + " in a " + std::to_string(rep.dim) + "-polytope");
    }
    if (!s.unimodular) {
      rep.all_unimodular = false;
      rep.failures.push_back("clique with normalized volume " + s.normalized_volume.str());
    }
    rep.volume_sum += s.normalized_volume;
  }
  rep.oracle_volume = oracle_normalized_volume(c, oracle, lat);
  if (rep.volume_sum != rep.oracle_volume)
    rep.failures.push_back("volume sum " + rep.volume_sum.str() + " differs from polytope volume " + rep.oracle_volume.str());

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < cliques.size(); ++i)
    for (std::size_t j = i + 1; j < cliques.size(); ++j) pairs.push_back({i, j});
  std::vector<char> ok(pairs.size(), 1);
  parallel_for(pairs.size(), [&](std::size_t k) { ok[k] = detail::strong_pair(c, cliques[pairs[k].first], cliques[pairs[k].second]); });
  for (std::size_t k = 0; k < pairs.size(); ++k)
    if (!ok[k]) {
      rep.strong_intersection = false;
      rep.failures.push_back("cliques " + std::to_string(pairs[k].first) + " and " + std::to_string(pairs[k].second) +
                             " intersect outside their shared face");
    }

  std::set<Vec> route_points;
  for (auto& r : acyclic_routes(c))
    if (self_compatible(c, r)) route_points.insert(indicator_vec(c, r));
  auto pts = integer_points(c, scan_bound(oracle));
  rep.integer_points = pts.size();
  for (auto& p : pts)
    if (!route_points.count(to_rational(p))) {
      rep.integer_points_covered = false;
      rep.failures.push_back("integer point without a self-compatible route");
    }
  rep.ok = rep.failures.empty();
  return rep;
}

struct ProbeRecord {
  Flow point;
  std::string verdict;  // covered | covered_after_escalation | uncovered
};

struct SubdivisionReport {
  bool ok = false;
  int cap = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t dim = 0;
  std::size_t cells = 0;
  std::size_t full_dimensional_cells = 0;
  std::size_t unimodular_cells = 0;
  std::vector<std::size_t> cell_dims;
  bool strong_intersection = true;
  std::size_t covered = 0;
  std::size_t covered_after_escalation = 0;
  std::size_t uncovered = 0;
  std::size_t non_unique = 0;
  std::size_t fallback_samples = 0;
  std::vector<ProbeRecord> probes;
  std::vector<std::string> failures;
};

namespace detail {

inline Rational random_rational(std::mt19937_64& rng, long lo_num, long hi_num, long max_den) {
  std::uniform_int_distribution<long> den(1, max_den);
  long d = den(rng);
  std::uniform_int_distribution<long> num(lo_num * d, hi_num * d);
  return Rational(num(rng), d);
}

}  // namespace detail

// Random rational points of F1: rejection sampling inside the bounding box of the
// affine span; falls back to random convex combinations after repeated misses.
inline std::vector<Flow> sample_unit_flows(const Chart& c, const Presentation& oracle, std::size_t count, std::uint64_t seed,
                                           std::size_t* fallbacks = nullptr) {
  std::mt19937_64 rng(seed);
  std::vector<Flow> out;
  if (oracle.vertices.empty()) return out;
  auto h = hrep(c, true);
  Matrix a;
  for (auto& row : h.equalities) a.push_back(to_rational(row));
  auto dirs = linalg::nullspace(a, c.edge_count());
  Vec base = *oracle.vertices.begin();
  long box = scan_bound(oracle);
  std::vector<Vec> verts(oracle.vertices.begin(), oracle.vertices.end());
  std::vector<Vec> rays(oracle.rays.begin(), oracle.rays.end());
  for (std::size_t s = 0; s < count; ++s) {
    bool found = false;
    for (int attempt = 0; attempt < 400 && !found; ++attempt) {
      Flow x = base;
      for (auto& d : dirs) {
        Rational lam = detail::random_rational(rng, -box, box, 8);
        for (std::size_t j = 0; j < x.size(); ++j) x[j] += lam * d[j];
      }
      bool inside = true;
      for (auto& xi : x) inside = inside && xi >= 0 && xi <= box;
      if (inside) {
        out.push_back(std::move(x));
        found = true;
      }
    }
    if (found) continue;
    if (fallbacks) ++*fallbacks;
    Flow x(c.edge_count(), 0);
    Vec w;
    Rational total = 0;
    for (std::size_t i = 0; i < verts.size(); ++i) {
      w.push_back(detail::random_rational(rng, 0, 1, 8));
      total += w.back();
    }
    if (total == 0) {
      w[0] = 1;
      total = 1;
    }
    for (std::size_t i = 0; i < verts.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j) x[j] += w[i] / total * verts[i][j];
    for (auto& r : rays) {
      Rational lam = detail::random_rational(rng, 0, 2, 8);
      for (std::size_t j = 0; j < x.size(); ++j) x[j] += lam * r[j];
    }
    out.push_back(std::move(x));
  }
  return out;
}

inline SubdivisionReport verify_subdivision_capped(const Chart& c, int cap, std::size_t samples, std::uint64_t seed) {
  SubdivisionReport rep;
  rep.cap = cap;
  rep.samples = samples;
  rep.seed = seed;
  auto oracle = oracle_presentation(c);
  auto lat = reference_lattice(c, oracle);
  rep.dim = lat.rank();
  Decomposer dec(c, cap);
  const auto& cells = dec.cells();
  rep.cells = cells.size();
  for (auto& k : cells) {
    auto s = simplex_check(c, k, lat);
    rep.cell_dims.push_back(s.dim);
    if (s.dim == rep.dim) ++rep.full_dimensional_cells;
    if (s.unimodular) ++rep.unimodular_cells;
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t j = i + 1; j < cells.size(); ++j) pairs.push_back({i, j});
  std::vector<char> ok(pairs.size(), 1);
  parallel_for(pairs.size(), [&](std::size_t k) { ok[k] = detail::strong_pair(c, cells[pairs[k].first], cells[pairs[k].second]); });
  for (std::size_t k = 0; k < pairs.size(); ++k)
    if (!ok[k]) {
      rep.strong_intersection = false;
      rep.failures.push_back("cells " + std::to_string(pairs[k].first) + " and " + std::to_string(pairs[k].second) +
                             " intersect outside their shared face");
    }

  auto pts = sample_unit_flows(c, oracle, samples, seed, &rep.fallback_samples);
  std::optional<Decomposer> wider;
  for (auto& x : pts) {
    ProbeRecord pr{x, "covered"};
    auto d = dec.try_decompose(x);
    if (d) {
      ++rep.covered;
      if (!d->unique) {
        ++rep.non_unique;
        rep.failures.push_back("probe with two different bundle combinations");
      }
    } else {
      if (!wider) wider.emplace(c, cap + 2);
      if (wider->try_decompose(x)) {
        pr.verdict = "covered_after_escalation";
        ++rep.covered_after_escalation;
      } else {
        pr.verdict = "uncovered";
        ++rep.uncovered;
      }
    }
    rep.probes.push_back(std::move(pr));
  }
  if (dec.acyclic() && rep.uncovered + rep.covered_after_escalation > 0) rep.failures.push_back("acyclic chart with uncovered probes");
  rep.ok = rep.failures.empty();
  return rep;
}

}  // namespace turb
