#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "situfact/engine.hpp"
#include "situfact/schema.hpp"

namespace situfact::testing {

/// Small, tie-heavy stream: ≤4 dims with ≤3 values each, ≤4 measures in {0..4}.
struct RandomStream {
  std::uint64_t seed = 0;
  std::size_t dims = 1;
  std::size_t measures = 1;
  int dhat = 0;
  int mhat = 1;
  std::vector<std::vector<ValueCode>> rows_dims;
  std::vector<std::vector<double>> rows_measures;

  std::size_t size() const { return rows_dims.size(); }
  EngineConfig config() const { return EngineConfig{dims, measures, dhat, mhat}; }

  std::vector<std::string> dim_strings(std::size_t row) const {
    std::vector<std::string> out;
    for (std::size_t d = 0; d < dims; ++d)
      out.push_back(std::string(1, static_cast<char>('a' + d)) + std::to_string(rows_dims[row][d]));
    return out;
  }
  std::vector<std::string> dim_names() const {
    std::vector<std::string> out;
    for (std::size_t d = 0; d < dims; ++d) out.push_back("d" + std::to_string(d + 1));
    return out;
  }
  std::vector<MeasureAttr> measure_attrs() const {
    std::vector<MeasureAttr> out;
    for (std::size_t m = 0; m < measures; ++m) out.push_back(MeasureAttr{"m" + std::to_string(m + 1), Direction::LargerBetter});
    return out;
  }
};

inline RandomStream make_stream(std::uint64_t seed, std::size_t max_rows = 200) {
  std::mt19937_64 rng(seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  RandomStream s;
  s.seed = seed;
  s.dims = static_cast<std::size_t>(pick(1, 4));
  s.measures = static_cast<std::size_t>(pick(1, 4));
  std::vector<int> domain(s.dims);
  for (auto& d : domain) d = pick(1, 3);
  if (pick(0, 1) == 0) {
    s.dhat = static_cast<int>(s.dims);
    s.mhat = static_cast<int>(s.measures);
  } else {
    s.dhat = pick(0, static_cast<int>(s.dims));
    s.mhat = pick(1, static_cast<int>(s.measures));
  }
  const int n = pick(1, static_cast<int>(max_rows));
  for (int i = 0; i < n; ++i) {
    std::vector<ValueCode> dv(s.dims);
    for (std::size_t d = 0; d < s.dims; ++d) dv[d] = static_cast<ValueCode>(pick(1, domain[d]));
    std::vector<double> mv(s.measures);
    for (auto& v : mv) v = pick(0, 4);
    s.rows_dims.push_back(std::move(dv));
    s.rows_measures.push_back(std::move(mv));
  }
  return s;
}

}  // namespace situfact::testing

#include <map>
#include <memory>
#include <set>

#include "situfact/store.hpp"

namespace situfact::testing {

/// One shared table driven through several engines row by row.
struct EngineBank {
  Table table;
  std::vector<std::unique_ptr<Engine>> engines;

  EngineBank(EngineConfig c, const std::vector<EngineKind>& kinds) : table(c.dimension_count, c.measure_count) {
    for (EngineKind k : kinds) engines.push_back(make_engine(k, c));
  }

  std::vector<FactSet> step(std::vector<ValueCode> dims, std::vector<double> measures) {
    table.append(std::move(dims), std::move(measures));
    std::vector<FactSet> out;
    for (auto& e : engines) out.push_back(e->discover(table));
    return out;
  }
};

using StoreSnapshot = std::map<StoreKey, std::set<TupleId>>;

inline StoreSnapshot snapshot(const SkylineStore& s) {
  StoreSnapshot out;
  s.for_each([&](const StoreKey& k, const Bucket& b) {
    for (const auto& e : b) out[k].insert(e.id);
  });
  return out;
}

}  // namespace situfact::testing
