#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "situfact/discoverer.hpp"
#include "situfact/schema.hpp"

#ifndef SITUFACT_TEST_DATA
#define SITUFACT_TEST_DATA "tests/data"
#endif

namespace situfact::testing {

inline std::string data_path(const std::string& name) { return std::string(SITUFACT_TEST_DATA) + "/" + name; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Schema mini_world_schema() {
  return Schema({"player", "month", "season", "team", "opp_team"},
                {{"points", Direction::LargerBetter}, {"assists", Direction::LargerBetter},
                 {"rebounds", Direction::LargerBetter}});
}

struct MiniRow {
  std::vector<std::string> dims;
  std::vector<double> measures;
};

// t1..t7; the day column plays no part
inline const std::vector<MiniRow>& mini_world_rows() {
  static const std::vector<MiniRow> rows = {
      {{"Bogues", "Feb.", "1991-92", "Hornets", "Hawks"}, {4, 12, 5}},
      {{"Seikaly", "Feb.", "1991-92", "Heat", "Hawks"}, {24, 5, 15}},
      {{"Sherman", "Dec.", "1993-94", "Celtics", "Nets"}, {13, 13, 5}},
      {{"Wesley", "Feb.", "1994-95", "Celtics", "Nets"}, {2, 5, 2}},
      {{"Wesley", "Feb.", "1994-95", "Celtics", "Timberwolves"}, {3, 5, 3}},
      {{"Strickland", "Jan.", "1995-96", "Blazers", "Celtics"}, {27, 18, 8}},
      {{"Wesley", "Feb.", "1995-96", "Celtics", "Nets"}, {12, 13, 5}},
  };
  return rows;
}

inline Schema running_schema() {
  return Schema({"d1", "d2", "d3"}, {{"m1", Direction::LargerBetter}, {"m2", Direction::LargerBetter}});
}

inline const std::vector<MiniRow>& running_rows() {
  static const std::vector<MiniRow> rows = {
      {{"a1", "b2", "c2"}, {10, 15}}, {{"a1", "b1", "c1"}, {15, 10}}, {{"a2", "b1", "c2"}, {17, 17}},
      {{"a2", "b1", "c1"}, {20, 20}}, {{"a1", "b1", "c1"}, {11, 15}},
  };
  return rows;
}

/// Constraint over `d`'s dictionary from (dimension index, value) pairs.
inline Constraint constraint_of(const Discoverer& d, std::vector<std::pair<std::size_t, std::string>> bound) {
  std::vector<ValueCode> slots(d.schema().dimension_count(), kWildcard);
  for (auto& [i, v] : bound) slots[i] = d.dictionary().find(i, v);
  return Constraint(std::move(slots));
}

inline std::uint32_t subspace_of(const Schema& s, std::vector<std::string> names) {
  std::uint32_t m = 0;
  for (const auto& n : names)
    for (std::size_t i = 0; i < s.measure_count(); ++i)
      if (s.measures()[i].name == n) m |= 1U << i;
  return m;
}

template <class Rows>
void feed(Discoverer& d, const Rows& rows, std::size_t count = static_cast<std::size_t>(-1)) {
  for (std::size_t i = 0; i < rows.size() && i < count; ++i) d.append(rows[i].dims, rows[i].measures);
}

}  // namespace situfact::testing
