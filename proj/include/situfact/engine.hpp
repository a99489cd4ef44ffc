#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "situfact/constraint.hpp"
#include "situfact/measure.hpp"
#include "situfact/schema.hpp"
#include "situfact/store.hpp"

namespace situfact {

enum class EngineKind { Brute, BaselineSeq, BaselineIdx, BottomUp, TopDown, SBottomUp, STopDown };

std::string_view engine_name(EngineKind kind);
EngineKind parse_engine(std::string_view name);
const std::vector<EngineKind>& all_engines();

/// Which materialization invariant an engine keeps, if any.
enum class StorageFamily { None, BottomUp, TopDown };
StorageFamily storage_family(EngineKind kind);

struct Fact {
  Constraint constraint;
  MeasureSubspace subspace{1};

  friend bool operator==(const Fact&, const Fact&) = default;
  friend std::strong_ordering operator<=>(const Fact& a, const Fact& b) {
    if (auto c = a.constraint <=> b.constraint; c != 0) return c;
    return a.subspace <=> b.subspace;
  }
};

/// Sorted by (constraint key, subspace mask).
using FactSet = std::vector<Fact>;

struct EngineMetrics {
  std::uint64_t comparisons = 0;
  std::uint64_t traversed = 0;
  std::chrono::nanoseconds elapsed{0};
};

struct EngineConfig {
  std::size_t dimension_count = 0;
  std::size_t measure_count = 0;
  int dhat = 0;
  int mhat = 1;
};

/// Maximal skyline constraints per (tuple, subspace), as bound-slot masks.
class MscIndex {
 public:
  using Masks = std::vector<std::uint32_t>;

  const Masks* find(TupleId id, std::uint32_t subspace) const;
  void assign(TupleId id, std::uint32_t subspace, Masks masks);
  std::size_t entry_count() const noexcept { return entries_; }
  template <class Fn>
  void for_each(Fn&& fn) const {
    for (const auto& [k, v] : map_) fn(static_cast<TupleId>(k >> 16), static_cast<std::uint32_t>(k & 0xFFFF), v);
  }

  static std::uint64_t slot(TupleId id, std::uint32_t subspace) { return (id << 16) | subspace; }

 private:
  std::unordered_map<std::uint64_t, Masks> map_;
  std::size_t entries_ = 0;
};

class Engine {
 public:
  explicit Engine(EngineConfig config);
  virtual ~Engine() = default;

  virtual EngineKind kind() const = 0;
  /// Computes S^t for table.back() against every earlier row and updates the
  /// engine's own state. Rows must be passed in arrival order, one per call.
  FactSet discover(const Table& table);

  const EngineMetrics& metrics() const noexcept { return metrics_; }
  const EngineConfig& config() const noexcept { return config_; }
  /// Subspaces facts are reported for (size ≤ m̂).
  const std::vector<MeasureSubspace>& subspaces() const noexcept { return subspaces_; }
  /// Subspaces whose buckets are kept. Shared-computation engines also keep
  /// the full space.
  virtual const std::vector<MeasureSubspace>& maintained_subspaces() const { return subspaces_; }
  virtual const SkylineStore* store() const { return nullptr; }
  virtual const MscIndex* msc_index() const { return nullptr; }

 protected:
  virtual FactSet run(const Table& table) = 0;

  EngineConfig config_;
  std::vector<MeasureSubspace> subspaces_;
  EngineMetrics metrics_;
};

/// `store` is used only by engines that materialize buckets; null means a
/// fresh in-memory store.
std::unique_ptr<Engine> make_engine(EngineKind kind, EngineConfig config,
                                    std::unique_ptr<SkylineStore> store = nullptr);

/// StoreKey for the constraint of `t` given by `mask`.
StoreKey store_key(const TupleRecord& t, std::uint32_t mask, MeasureSubspace m);

}  // namespace situfact
