#pragma once

#include <support/random_chart.hpp>

#include <gtest/gtest.h>

namespace turb::testing {

inline std::string fixture_path(const std::string& file) { return std::string(TURB_FIXTURES) + "/" + file; }
inline Chart fixture(const std::string& name) { return parse_chart_file(fixture_path(name + ".json")); }

inline const std::vector<std::string>& chart_fixture_names() {
  static const std::vector<std::string> names = {"square",  "bowtie",   "trapezoid-a", "trapezoid-b",   "kron-h",
                                                 "kron-alt", "kron-nb", "kron-face",   "contract-left", "contract-right"};
  return names;
}

inline Trail trail(const Chart& c, const std::string& word) { return canonicalize_trail(c, parse_word(c, word)); }

inline std::vector<long> ind(const Chart& c, const Trail& t) {
  auto v = indicator(c, t);
  return std::vector<long>(v.begin(), v.end());
}

inline Vec vec(std::initializer_list<long> xs) {
  Vec v;
  for (auto x : xs) v.emplace_back(x);
  return v;
}

inline std::set<Vec> vecs(std::initializer_list<std::initializer_list<long>> xs) {
  std::set<Vec> out;
  for (auto& x : xs) out.insert(vec(x));
  return out;
}

// Error code thrown by f, or nullopt.
template <class F>
std::optional<ErrorCode> error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline RawChart raw_of(const std::string& name) { return fixture(name).to_raw(); }

}  // namespace turb::testing
