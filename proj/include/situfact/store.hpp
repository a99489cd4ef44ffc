#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "situfact/constraint.hpp"
#include "situfact/measure.hpp"

namespace situfact {

struct StoreKey {
  ConstraintKey constraint;
  std::uint32_t subspace = 0;

  friend bool operator==(const StoreKey&, const StoreKey&) = default;
  friend std::strong_ordering operator<=>(const StoreKey& a, const StoreKey& b) {
    if (auto c = a.constraint <=> b.constraint; c != 0) return c;
    return a.subspace <=> b.subspace;
  }
};

struct StoreKeyHash {
  std::size_t operator()(const StoreKey& k) const noexcept {
    return std::hash<std::string>{}(k.constraint.bytes()) * 31u + k.subspace;
  }
};

struct StoredTuple {
  TupleId id = 0;
  std::vector<double> measures;

  friend bool operator==(const StoredTuple&, const StoredTuple&) = default;
};

using Bucket = std::vector<StoredTuple>;

/// μ_{C,M}. Absent keys behave as empty buckets.
class SkylineStore {
 public:
  virtual ~SkylineStore() = default;

  virtual Bucket get(const StoreKey& key) const = 0;
  virtual void put(const StoreKey& key, const StoredTuple& tuple);
  /// Returns false when the id was not in the bucket.
  virtual bool remove(const StoreKey& key, TupleId id);
  virtual bool is_empty(const StoreKey& key) const = 0;
  /// Overwrites the whole bucket; an empty bucket erases the key.
  virtual void replace(const StoreKey& key, Bucket bucket) = 0;
  virtual std::size_t stored_count() const = 0;
  /// Visits non-empty buckets in StoreKey order.
  virtual void for_each(const std::function<void(const StoreKey&, const Bucket&)>& fn) const = 0;
};

class MemoryStore final : public SkylineStore {
 public:
  Bucket get(const StoreKey& key) const override;
  bool is_empty(const StoreKey& key) const override;
  void replace(const StoreKey& key, Bucket bucket) override;
  std::size_t stored_count() const override { return count_; }
  void for_each(const std::function<void(const StoreKey&, const Bucket&)>& fn) const override;

 private:
  std::unordered_map<StoreKey, Bucket, StoreKeyHash> buckets_;
  std::size_t count_ = 0;
};

/// |σ_C(R)| for every constraint with at most `dhat` bound slots seen so far.
class ContextCounter {
 public:
  ContextCounter(std::size_t dimension_count, int dhat);

  void add(const TupleRecord& t);
  std::uint64_t count(const Constraint& c) const;
  std::uint64_t total() const noexcept { return total_; }
  std::size_t tracked() const noexcept { return counts_.size(); }
  int dhat() const noexcept { return dhat_; }

 private:
  LatticeLayout layout_;
  std::unordered_map<std::string, std::uint64_t> counts_;
  std::uint64_t total_ = 0;
  int dhat_;
};

std::unique_ptr<SkylineStore> make_memory_store();

}  // namespace situfact
