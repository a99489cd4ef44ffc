#include <random>

#include "doctest.h"
#include "situfact/errors.hpp"
#include "situfact/frontier.hpp"

using namespace situfact;

namespace {

// cuboid of (a1, b1, c1); names list the bound values
Constraint node(const std::string& name) {
  std::vector<ValueCode> s(3, kWildcard);
  if (name.find('a') != std::string::npos) s[0] = 1;
  if (name.find('b') != std::string::npos) s[1] = 1;
  if (name.find('c') != std::string::npos) s[2] = 1;
  return Constraint(std::move(s));
}

ConstraintSet nodes(std::initializer_list<const char*> names) {
  ConstraintSet out;
  for (const char* n : names) out.insert(std::string(n) == "T" ? Constraint::top(3) : node(n));
  return out;
}

}  // namespace

TEST_CASE("frontier: L2 maxima b1 and a1c1, no L1 minimum survives") {
  auto l3 = compute_frontier(nodes({"T", "a1", "c1"}), nodes({"b1", "a1b1", "b1c1", "a1c1", "a1b1c1"}));
  CHECK(l3 == nodes({"b1", "a1c1"}));
}

TEST_CASE("frontier: a1c1 in L1 still joins via its L1 minimum") {
  auto l3 = compute_frontier(nodes({"T", "a1", "c1", "a1c1"}), nodes({"b1", "a1b1", "b1c1", "a1b1c1"}));
  CHECK(l3 == nodes({"b1", "a1c1"}));
}

TEST_CASE("frontier: L2 maxima c1 and a1b1") {
  auto l3 = compute_frontier(nodes({"T", "a1", "b1"}), nodes({"c1", "a1b1", "a1c1", "b1c1", "a1b1c1"}));
  CHECK(l3 == nodes({"c1", "a1b1"}));
}

TEST_CASE("frontier: overlapping lists are rejected, a1b1 joins from L1") {
  // a1c1 on both sides is not a partition; a1b1 is the node missing from both lists
  CHECK_THROWS_AS(compute_frontier(nodes({"T", "a1", "b1", "a1c1"}), nodes({"c1", "a1c1", "b1c1", "a1b1c1"})),
                  PartitionError);
  auto l3 = compute_frontier(nodes({"T", "a1", "b1", "a1b1"}), nodes({"c1", "a1c1", "b1c1", "a1b1c1"}));
  CHECK(l3 == nodes({"c1", "a1b1"}));
}

TEST_CASE("maxima and minima") {
  CHECK(l2_maxima(nodes({"b1", "a1b1", "b1c1", "a1c1", "a1b1c1"})) == nodes({"b1", "a1c1"}));
  CHECK(l1_minima(nodes({"T", "a1", "c1"})) == nodes({"a1", "c1"}));
  CHECK(compute_frontier({}, {}).empty());
}

TEST_CASE("real partitions: L1 is upward closed and L2 maxima are the maximal skyline constraints") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> v(1, 2), mv(0, 3);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<TupleRecord> rows;
    for (TupleId id = 1; id <= 8; ++id)
      rows.push_back(TupleRecord{id, {ValueCode(v(rng)), ValueCode(v(rng)), ValueCode(v(rng))},
                                 {double(mv(rng)), double(mv(rng))}});
    const TupleRecord& t = rows.back();
    for (std::uint32_t m = 1; m < 4; ++m) {
      auto p = frontier_partition(t, std::span<const TupleRecord>(rows.data(), rows.size() - 1), MeasureSubspace(m), 3);
      REQUIRE(p.l1.size() + p.l2.size() == 8);
      for (const auto& c : p.l1)
        for (const auto& parent : parents(c, t)) REQUIRE(p.l1.count(parent) == 1);
      for (const auto& c : l2_maxima(p.l2))
        for (const auto& parent : parents(c, t)) REQUIRE(p.l1.count(parent) == 1);
      for (const auto& c : p.l3) REQUIRE((p.l1.count(c) + p.l2.count(c)) == 1);
    }
  }
}
