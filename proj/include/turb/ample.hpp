#pragma once

#include <turb/polyhedron.hpp>

namespace turb {

struct AmplenessReport {
  std::set<EdgeIndex> valid_edges;
  std::vector<Trail> exceptional_trails;
  bool amply_framed = false;
  bool reduced_space_complete = false;
  bool exact = false;  // false when the trail set was cut off by the cap
  int cap = 0;
};

// Signed flows: solutions of the conservation rows alone.
inline std::vector<Vec> signed_flow_basis(const Chart& c) {
  auto h = hrep(c, false);
  Matrix a;
  for (auto& row : h.equalities) a.push_back(to_rational(row));
  return linalg::nullspace(a, c.edge_count());
}

inline AmplenessReport ampleness_report(const Chart& c, int cap) {
  AmplenessReport rep;
  rep.cap = cap;
  rep.exact = !find_band(c).has_value();
  auto ts = enumerate_trails_capped(c, rep.exact ? std::max(cap, 2) : cap);
  std::vector<Trail> all(ts.routes.begin(), ts.routes.end());
  all.insert(all.end(), ts.bands.begin(), ts.bands.end());

  auto basis = signed_flow_basis(c);
  for (auto& f : basis)
    for (EdgeIndex e = 0; e < c.edge_count(); ++e)
      if (f[e] != 0) rep.valid_edges.insert(e);

  std::vector<char> exceptional(all.size(), 1);
  parallel_for(all.size(), [&](std::size_t i) {
    for (std::size_t j = 0; j < all.size() && exceptional[i]; ++j)
      if (!compatible(c, all[i], all[j])) exceptional[i] = 0;
  });
  std::vector<bool> covered(c.edge_count(), false);
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (!exceptional[i]) continue;
    rep.exceptional_trails.push_back(all[i]);
    for (auto& a : all[i].word) covered[a.edge] = true;
  }

  rep.amply_framed = true;
  for (auto e : rep.valid_edges) rep.amply_framed = rep.amply_framed && covered[e];

  // F + sum lambda_p I(p) >= 0 is feasible iff every negative coordinate of F is
  // touched by some exceptional indicator, since indicators are nonnegative.
  Matrix span;
  for (auto& t : rep.exceptional_trails) span.push_back(indicator_vec(c, t));
  auto feasible = [&](const Vec& f) {
    for (EdgeIndex e = 0; e < c.edge_count(); ++e) {
      if (f[e] >= 0) continue;
      bool hit = false;
      for (auto& row : span) hit = hit || row[e] > 0;
      if (!hit) return false;
    }
    return true;
  };
  rep.reduced_space_complete = true;
  for (auto& f : basis) {
    Vec neg = f;
    for (auto& x : neg) x = -x;
    rep.reduced_space_complete = rep.reduced_space_complete && feasible(f) && feasible(neg);
  }
  return rep;
}

}  // namespace turb
