#pragma once

#include <turb/turb.hpp>

#include <random>

namespace turb::testing {

struct RandomChartOptions {
  int max_internal = 5;
  int max_edges = 10;
  double loop_chance = 0.15;
  double fringe_fringe_chance = 0.03;
  bool connected = true;
};

// Random valid chart with a random framing.
inline Chart random_chart(std::mt19937_64& rng, const RandomChartOptions& opt = {}) {
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto coin = [&](double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; };
  for (;;) {
    int n = uni(1, opt.max_internal);
    RawChart raw;
    raw.name = "random";
    for (int i = 0; i < n; ++i) raw.vertices.push_back({"v" + std::to_string(i), VertexKind::internal});
    int fringe_count = 0;
    auto new_fringe = [&]() {
      std::string id = "x" + std::to_string(fringe_count++);
      raw.vertices.push_back({id, VertexKind::fringe});
      return id;
    };
    std::vector<std::array<std::string, 2>> ends;
    auto vid = [&](int i) { return "v" + std::to_string(i); };
    if (opt.connected)
      for (int i = 1; i < n; ++i) ends.push_back({vid(uni(0, i - 1)), vid(i)});
    int target = uni(std::max(n + 1, int(ends.size()) + 1), opt.max_edges);
    ends.push_back({new_fringe(), vid(uni(0, n - 1))});
    while (int(ends.size()) < target) {
      double r = std::uniform_real_distribution<double>(0, 1)(rng);
      int a = uni(0, n - 1);
      if (r < opt.fringe_fringe_chance)
        ends.push_back({new_fringe(), new_fringe()});
      else if (r < opt.fringe_fringe_chance + opt.loop_chance)
        ends.push_back({vid(a), vid(a)});
      else if (r < 0.55)
        ends.push_back({vid(a), new_fringe()});
      else
        ends.push_back({vid(a), vid(uni(0, n - 1))});
    }
    std::map<std::string, std::vector<HalfEdgeKey>> at;
    for (std::size_t k = 0; k < ends.size(); ++k) {
      if (coin(0.5)) std::swap(ends[k][0], ends[k][1]);
      std::string id = "e" + std::to_string(k);
      raw.edges.push_back({id, ends[k]});
      for (int end = 0; end < 2; ++end) at[ends[k][end]].push_back({id, end});
    }
    // top up internal vertices that cannot host two classes
    bool ok = true;
    for (int i = 0; i < n; ++i) {
      while (at[vid(i)].size() < 2) {
        std::string id = "e" + std::to_string(raw.edges.size());
        std::string f = new_fringe();
        raw.edges.push_back({id, {vid(i), f}});
        at[vid(i)].push_back({id, 0});
      }
    }
    if (int(raw.edges.size()) > opt.max_edges) ok = false;
    if (!ok) continue;
    for (int i = 0; i < n; ++i) {
      auto hs = at[vid(i)];
      std::shuffle(hs.begin(), hs.end(), rng);
      std::size_t cut = std::size_t(uni(1, int(hs.size()) - 1));
      std::array<std::vector<HalfEdgeKey>, 2> cls;
      cls[0].assign(hs.begin(), hs.begin() + long(cut));
      cls[1].assign(hs.begin() + long(cut), hs.end());
      raw.classes[vid(i)] = cls;
    }
    return validate_chart(raw);
  }
}

// Same chart with every class order reversed.
inline Chart reverse_framing(const Chart& c) {
  RawChart raw = c.to_raw();
  for (auto& [v, cls] : raw.classes)
    for (auto& k : cls) std::reverse(k.begin(), k.end());
  return validate_chart(raw);
}

// Same chart with the order inside each class shuffled.
inline Chart reshuffle_framing(const Chart& c, std::mt19937_64& rng) {
  RawChart raw = c.to_raw();
  for (auto& [v, cls] : raw.classes)
    for (auto& k : cls) std::shuffle(k.begin(), k.end(), rng);
  return validate_chart(raw);
}

inline Chart random_acyclic_chart(std::mt19937_64& rng, const RandomChartOptions& opt = {}) {
  for (;;) {
    Chart c = random_chart(rng, opt);
    if (!find_band(c)) return c;
  }
}

}  // namespace turb::testing
