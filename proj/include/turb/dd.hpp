#pragma once

#include <turb/numeric.hpp>

#include <boost/dynamic_bitset.hpp>

namespace turb::dd {

// Extreme rays of the pointed cone {y >= 0 : m y = 0}, as primitive integer vectors,
// via the double description method: start from the orthant and cut by one
// hyperplane at a time, combining only combinatorially adjacent pairs.
inline std::vector<IntVec> extreme_rays(const IntMatrix& m, std::size_t n) {
  struct Ray {
    IntVec v;
    boost::dynamic_bitset<> zero;
  };
  std::vector<Ray> rays;
  rays.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Ray r{IntVec(n, 0), boost::dynamic_bitset<>(n)};
    r.v[i] = 1;
    r.zero.set();
    r.zero.reset(i);
    rays.push_back(std::move(r));
  }

  for (const auto& row : m) {
    std::vector<Integer> val(rays.size());
    std::vector<std::size_t> pos, neg;
    std::vector<Ray> next;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      Integer s = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (row[j] != 0 && rays[k].v[j] != 0) s += row[j] * rays[k].v[j];
      val[k] = s;
      if (s > 0)
        pos.push_back(k);
      else if (s < 0)
        neg.push_back(k);
      else
        next.push_back(rays[k]);
    }
    for (auto p : pos) {
      for (auto q : neg) {
        boost::dynamic_bitset<> common = rays[p].zero & rays[q].zero;
        bool adjacent = true;
        for (std::size_t k = 0; k < rays.size() && adjacent; ++k) {
          if (k == p || k == q) continue;
          if (common.is_subset_of(rays[k].zero)) adjacent = false;
        }
        if (!adjacent) continue;
        Ray r{IntVec(n), boost::dynamic_bitset<>(n)};
        Integer a = val[p], b = -val[q];
        for (std::size_t j = 0; j < n; ++j) {
          r.v[j] = a * rays[q].v[j] + b * rays[p].v[j];
        }
        r.v = primitive(std::move(r.v));
        for (std::size_t j = 0; j < n; ++j) r.zero[j] = r.v[j] == 0;
        next.push_back(std::move(r));
      }
    }
    rays = std::move(next);
  }

  std::vector<IntVec> out;
  out.reserve(rays.size());
  for (auto& r : rays) out.push_back(std::move(r.v));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace turb::dd
