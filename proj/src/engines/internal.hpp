#pragma once

#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "situfact/constraint.hpp"
#include "situfact/engine.hpp"
#include "situfact/store.hpp"

namespace situfact::detail {

/// Per-insertion (constraint × subspace column) pruned flags.
class PrunedMatrix {
 public:
  PrunedMatrix(const LatticeLayout& layout, std::size_t columns);

  bool pruned(std::size_t idx, std::size_t col) const;
  /// Marks every capped submask of `agree`, i.e. all of 𝓒^{t,u}.
  void prune_submasks(std::uint32_t agree, std::size_t col);
  std::size_t columns() const noexcept { return cols_; }

 private:
  void set(std::size_t idx, std::size_t col);

  const LatticeLayout& layout_;
  std::size_t cols_;
  bool dense_;
  std::vector<std::uint8_t> cells_;
  std::unordered_set<std::uint64_t> sparse_;
  std::vector<std::vector<std::uint32_t>> covered_;  // per column, agree masks already applied
};

/// Buckets read once per insertion and written back in key order on commit.
class StagedStore {
 public:
  explicit StagedStore(SkylineStore& base) : base_(base) {}

  bool empty(const StoreKey& key);
  Bucket& bucket(const StoreKey& key);
  void add(const StoreKey& key, StoredTuple tuple);
  bool remove(const StoreKey& key, TupleId id);
  void commit();

 private:
  SkylineStore& base_;
  std::unordered_map<StoreKey, Bucket, StoreKeyHash> cache_;
  std::unordered_set<StoreKey, StoreKeyHash> dirty_;
};

class StagedMsc {
 public:
  explicit StagedMsc(MscIndex& base) : base_(base) {}

  MscIndex::Masks& at(TupleId id, std::uint32_t subspace);
  void commit();

 private:
  MscIndex& base_;
  std::unordered_map<std::uint64_t, MscIndex::Masks> overlay_;
};

inline bool all_parents_pruned(const PrunedMatrix& pm, const LatticeLayout& layout, std::uint32_t mask,
                               std::size_t col) {
  for (std::uint32_t bits = mask; bits; bits &= bits - 1)
    if (!pm.pruned(layout.index_of(mask & ~(bits & (~bits + 1))), col)) return false;
  return true;
}

FactSet collect_facts(const TupleRecord& t, const LatticeLayout& layout, const PrunedMatrix& pm,
                      const std::vector<MeasureSubspace>& columns, const std::vector<bool>& reported);

/// Shared state of the engines that keep buckets.
class MaterializingEngine : public Engine {
 public:
  MaterializingEngine(EngineConfig config, std::unique_ptr<SkylineStore> store, bool keep_full_space);

  const std::vector<MeasureSubspace>& maintained_subspaces() const override { return maintained_; }
  const SkylineStore* store() const override { return store_.get(); }

 protected:
  void check_sequence(const Table& table);

  std::unique_ptr<SkylineStore> store_;
  LatticeLayout layout_;
  std::vector<MeasureSubspace> maintained_;
  std::vector<bool> reported_;
  std::size_t full_col_ = static_cast<std::size_t>(-1);
  TupleId processed_ = 0;
};

std::unique_ptr<Engine> make_brute(EngineConfig c);
std::unique_ptr<Engine> make_baseline_seq(EngineConfig c);
std::unique_ptr<Engine> make_baseline_idx(EngineConfig c);
std::unique_ptr<Engine> make_bottom_up(EngineConfig c, std::unique_ptr<SkylineStore> s, bool shared);
std::unique_ptr<Engine> make_top_down(EngineConfig c, std::unique_ptr<SkylineStore> s, bool shared);

}  // namespace situfact::detail
