#include "situfact/store.hpp"

#include <algorithm>

#include "situfact/errors.hpp"

namespace situfact {

void SkylineStore::put(const StoreKey& key, const StoredTuple& tuple) {
  Bucket b = get(key);
  for (const auto& e : b)
    if (e.id == tuple.id) throw StoreError("tuple " + std::to_string(tuple.id) + " already in bucket");
  b.push_back(tuple);
  replace(key, std::move(b));
}

bool SkylineStore::remove(const StoreKey& key, TupleId id) {
  if (is_empty(key)) return false;
  Bucket b = get(key);
  auto it = std::find_if(b.begin(), b.end(), [&](const StoredTuple& e) { return e.id == id; });
  if (it == b.end()) return false;
  b.erase(it);
  replace(key, std::move(b));
  return true;
}

Bucket MemoryStore::get(const StoreKey& key) const {
  auto it = buckets_.find(key);
  return it == buckets_.end() ? Bucket{} : it->second;
}

bool MemoryStore::is_empty(const StoreKey& key) const { return !buckets_.count(key); }

void MemoryStore::replace(const StoreKey& key, Bucket bucket) {
  auto it = buckets_.find(key);
  if (it != buckets_.end()) {
    count_ -= it->second.size();
    if (bucket.empty()) {
      buckets_.erase(it);
      return;
    }
    count_ += bucket.size();
    it->second = std::move(bucket);
    return;
  }
  if (bucket.empty()) return;
  count_ += bucket.size();
  buckets_.emplace(key, std::move(bucket));
}

void MemoryStore::for_each(const std::function<void(const StoreKey&, const Bucket&)>& fn) const {
  std::vector<const std::pair<const StoreKey, Bucket>*> entries;
  entries.reserve(buckets_.size());
  for (const auto& e : buckets_) entries.push_back(&e);
  std::sort(entries.begin(), entries.end(), [](auto* a, auto* b) { return a->first < b->first; });
  for (auto* e : entries) fn(e->first, e->second);
}

std::unique_ptr<SkylineStore> make_memory_store() { return std::make_unique<MemoryStore>(); }

ContextCounter::ContextCounter(std::size_t dimension_count, int dhat)
    : layout_(static_cast<int>(dimension_count), dhat), dhat_(layout_.dhat()) {}

void ContextCounter::add(const TupleRecord& t) {
  ++total_;
  for (std::uint32_t m : layout_.masks()) ++counts_[ConstraintKey(Constraint::from_mask(t, m)).bytes()];
}

std::uint64_t ContextCounter::count(const Constraint& c) const {
  if (c.bound_count() > dhat_)
    throw ConfigError("context count requested above the bound-attribute cap");
  auto it = counts_.find(ConstraintKey(c).bytes());
  return it == counts_.end() ? 0 : it->second;
}

}  // namespace situfact
