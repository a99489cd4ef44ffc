#include "situfact/audit.hpp"

#include <algorithm>
#include <unordered_set>

#include "situfact/errors.hpp"

namespace situfact {

namespace {

void add_maximal(std::vector<std::uint32_t>& list, std::uint32_t agree) {
  for (std::uint32_t c : list)
    if ((agree & ~c) == 0) return;
  std::erase_if(list, [&](std::uint32_t c) { return (c & ~agree) == 0; });
  list.push_back(agree);
}

std::string describe(TupleId id, std::uint32_t subspace, const std::string& key_hex) {
  return "tuple " + std::to_string(id) + " at (" + key_hex + ", M=" + std::to_string(subspace) + ")";
}

}  // namespace

InvariantAuditor::InvariantAuditor(EngineConfig config, std::vector<MeasureSubspace> subspaces)
    : config_(config), subspaces_(std::move(subspaces)) {}

void InvariantAuditor::observe(const Table& table) {
  if (table.size() != dominators_.size() + 1)
    throw ConfigError("auditor must observe every appended row exactly once");
  const TupleRecord& t = table.back();
  dominators_.emplace_back(subspaces_.size());
  auto& mine = dominators_.back();
  for (const TupleRecord& u : table.history()) {
    const std::uint32_t agree = agreement_mask(t, u);
    auto& theirs = dominators_[u.id - 1];
    for (std::size_t si = 0; si < subspaces_.size(); ++si) {
      auto o = dominates(t, u, subspaces_[si]);
      if (o == DominanceOutcome::Dominates) add_maximal(theirs[si], agree);
      else if (o == DominanceOutcome::DominatedBy) add_maximal(mine[si], agree);
    }
  }
}

bool InvariantAuditor::is_skyline(TupleId u, std::size_t si, std::uint32_t mask) const {
  for (std::uint32_t c : dominators_.at(u - 1).at(si))
    if ((mask & ~c) == 0) return false;
  return true;
}

bool InvariantAuditor::is_maximal(TupleId u, std::size_t si, std::uint32_t mask) const {
  if (!is_skyline(u, si, mask)) return false;
  for (std::uint32_t bits = mask; bits; bits &= bits - 1)
    if (is_skyline(u, si, mask & ~(bits & (~bits + 1)))) return false;
  return true;
}

bool InvariantAuditor::expected(StorageFamily family, TupleId u, std::size_t si, std::uint32_t mask) const {
  if (std::popcount(mask) > config_.dhat) return false;
  return family == StorageFamily::BottomUp ? is_skyline(u, si, mask) : is_maximal(u, si, mask);
}

std::vector<std::string> InvariantAuditor::audit(const Engine& engine, const Table& table) const {
  std::vector<std::string> out;
  const StorageFamily family = storage_family(engine.kind());
  if (family == StorageFamily::None || engine.store() == nullptr) return out;
  if (engine.maintained_subspaces() != subspaces_) {
    out.push_back("auditor subspaces differ from the engine's maintained subspaces");
    return out;
  }
  if (dominators_.size() != table.size()) {
    out.push_back("auditor has not observed every row");
    return out;
  }
  auto index_of = [&](std::uint32_t mask) -> std::size_t {
    for (std::size_t i = 0; i < subspaces_.size(); ++i)
      if (subspaces_[i].mask() == mask) return i;
    return subspaces_.size();
  };

  std::size_t seen = 0;
  engine.store()->for_each([&](const StoreKey& key, const Bucket& bucket) {
    const std::size_t si = index_of(key.subspace);
    const std::string hex = key.constraint.hex();
    if (si == subspaces_.size()) {
      out.push_back("bucket for unmaintained subspace " + std::to_string(key.subspace));
      return;
    }
    const Constraint c = key.constraint.decode();
    if (c.size() != config_.dimension_count || c.bound_count() > config_.dhat) {
      out.push_back("bucket key outside the capped lattice: " + hex);
      return;
    }
    std::unordered_set<TupleId> ids;
    for (const StoredTuple& e : bucket) {
      if (!ids.insert(e.id).second) out.push_back("duplicate " + describe(e.id, key.subspace, hex));
      if (e.id == 0 || e.id > table.size()) {
        out.push_back("unknown " + describe(e.id, key.subspace, hex));
        continue;
      }
      const TupleRecord& u = table.row(e.id);
      if (!satisfies(u, c)) out.push_back(describe(e.id, key.subspace, hex) + " does not satisfy the constraint");
      else if (!expected(family, e.id, si, c.bound_mask()))
        out.push_back(describe(e.id, key.subspace, hex) + " should not be stored");
      if (e.measures != u.measures) out.push_back(describe(e.id, key.subspace, hex) + " carries stale measures");
      ++seen;
    }
  });

  const LatticeLayout layout(static_cast<int>(config_.dimension_count), config_.dhat);
  std::size_t want = 0;
  for (TupleId u = 1; u <= table.size(); ++u)
    for (std::size_t si = 0; si < subspaces_.size(); ++si)
      for (std::uint32_t mask : layout.masks())
        if (expected(family, u, si, mask)) ++want;
  if (want != seen)
    out.push_back("store holds " + std::to_string(seen) + " entries, invariant requires " + std::to_string(want));
  if (engine.store()->stored_count() != seen)
    out.push_back("stored_count() reports " + std::to_string(engine.store()->stored_count()) + ", buckets hold " +
                  std::to_string(seen));

  if (family == StorageFamily::TopDown) {
    const MscIndex* msc = engine.msc_index();
    if (msc == nullptr) {
      out.push_back("top-down engine without an MSC index");
      return out;
    }
    std::size_t entries = 0;
    msc->for_each([&](TupleId id, std::uint32_t subspace, const MscIndex::Masks& masks) {
      const std::size_t si = index_of(subspace);
      std::unordered_set<std::uint32_t> uniq(masks.begin(), masks.end());
      if (uniq.size() != masks.size()) out.push_back("duplicate MSC entries for tuple " + std::to_string(id));
      for (std::uint32_t m : masks) {
        ++entries;
        if (si == subspaces_.size() || id == 0 || id > table.size() || !expected(family, id, si, m))
          out.push_back("MSC index lists a non-maximal constraint for tuple " + std::to_string(id));
      }
    });
    if (entries != seen)
      out.push_back("MSC index has " + std::to_string(entries) + " entries, store has " + std::to_string(seen));
  }
  return out;
}

}  // namespace situfact
