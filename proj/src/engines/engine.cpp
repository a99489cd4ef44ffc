#include "situfact/engine.hpp"

#include <algorithm>

#include "engines/internal.hpp"
#include "situfact/errors.hpp"

namespace situfact {

namespace {

constexpr std::size_t kDenseCellLimit = std::size_t{1} << 22;

struct NamedEngine {
  EngineKind kind;
  std::string_view name;
};

constexpr NamedEngine kNames[] = {
    {EngineKind::Brute, "brute"},          {EngineKind::BaselineSeq, "baseline-seq"},
    {EngineKind::BaselineIdx, "baseline-idx"}, {EngineKind::BottomUp, "bottom-up"},
    {EngineKind::TopDown, "top-down"},     {EngineKind::SBottomUp, "s-bottom-up"},
    {EngineKind::STopDown, "s-top-down"},
};

}  // namespace

std::string_view engine_name(EngineKind kind) {
  for (const auto& n : kNames)
    if (n.kind == kind) return n.name;
  return "?";
}

EngineKind parse_engine(std::string_view name) {
  for (const auto& n : kNames)
    if (n.name == name) return n.kind;
  throw ConfigError("unknown engine '" + std::string(name) + "'");
}

const std::vector<EngineKind>& all_engines() {
  static const std::vector<EngineKind> v = {EngineKind::Brute,    EngineKind::BaselineSeq, EngineKind::BaselineIdx,
                                            EngineKind::BottomUp, EngineKind::TopDown,     EngineKind::SBottomUp,
                                            EngineKind::STopDown};
  return v;
}

StorageFamily storage_family(EngineKind kind) {
  switch (kind) {
    case EngineKind::BottomUp:
    case EngineKind::SBottomUp:
      return StorageFamily::BottomUp;
    case EngineKind::TopDown:
    case EngineKind::STopDown:
      return StorageFamily::TopDown;
    default:
      return StorageFamily::None;
  }
}

const MscIndex::Masks* MscIndex::find(TupleId id, std::uint32_t subspace) const {
  auto it = map_.find(slot(id, subspace));
  return it == map_.end() ? nullptr : &it->second;
}

void MscIndex::assign(TupleId id, std::uint32_t subspace, Masks masks) {
  auto k = slot(id, subspace);
  auto it = map_.find(k);
  if (it != map_.end()) {
    entries_ -= it->second.size();
    if (masks.empty()) {
      map_.erase(it);
      return;
    }
    entries_ += masks.size();
    it->second = std::move(masks);
    return;
  }
  if (masks.empty()) return;
  entries_ += masks.size();
  map_.emplace(k, std::move(masks));
}

Engine::Engine(EngineConfig config) : config_(config) {
  if (config_.dimension_count == 0 || config_.dimension_count > kMaxDimensions)
    throw ConfigError("dimension count out of range");
  if (config_.measure_count == 0 || config_.measure_count > kMaxMeasures)
    throw ConfigError("measure count out of range");
  if (config_.dhat < 0 || config_.dhat > static_cast<int>(config_.dimension_count))
    throw ConfigError("dhat must lie in [0, " + std::to_string(config_.dimension_count) + "]");
  if (config_.mhat < 1 || config_.mhat > static_cast<int>(config_.measure_count))
    throw ConfigError("mhat must lie in [1, " + std::to_string(config_.measure_count) + "]");
  subspaces_ = enumerate_subspaces(config_.measure_count, config_.mhat);
}

FactSet Engine::discover(const Table& table) {
  if (table.empty()) throw ConfigError("discover called on an empty table");
  metrics_ = EngineMetrics{};
  auto start = std::chrono::steady_clock::now();
  FactSet facts = run(table);
  std::sort(facts.begin(), facts.end());
  metrics_.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start);
  return facts;
}

std::unique_ptr<Engine> make_engine(EngineKind kind, EngineConfig config, std::unique_ptr<SkylineStore> store) {
  switch (kind) {
    case EngineKind::Brute: return detail::make_brute(config);
    case EngineKind::BaselineSeq: return detail::make_baseline_seq(config);
    case EngineKind::BaselineIdx: return detail::make_baseline_idx(config);
    case EngineKind::BottomUp: return detail::make_bottom_up(config, std::move(store), false);
    case EngineKind::SBottomUp: return detail::make_bottom_up(config, std::move(store), true);
    case EngineKind::TopDown: return detail::make_top_down(config, std::move(store), false);
    case EngineKind::STopDown: return detail::make_top_down(config, std::move(store), true);
  }
  throw ConfigError("unknown engine kind");
}

StoreKey store_key(const TupleRecord& t, std::uint32_t mask, MeasureSubspace m) {
  return StoreKey{ConstraintKey(Constraint::from_mask(t, mask)), m.mask()};
}

namespace detail {

PrunedMatrix::PrunedMatrix(const LatticeLayout& layout, std::size_t columns)
    : layout_(layout), cols_(columns), dense_(layout.size() * columns <= kDenseCellLimit), covered_(columns) {
  if (dense_) cells_.assign(layout.size() * columns, 0);
}

bool PrunedMatrix::pruned(std::size_t idx, std::size_t col) const {
  if (dense_) return cells_[idx * cols_ + col] != 0;
  return sparse_.count(static_cast<std::uint64_t>(idx) * cols_ + col) != 0;
}

void PrunedMatrix::set(std::size_t idx, std::size_t col) {
  if (dense_) cells_[idx * cols_ + col] = 1;
  else sparse_.insert(static_cast<std::uint64_t>(idx) * cols_ + col);
}

void PrunedMatrix::prune_submasks(std::uint32_t agree, std::size_t col) {
  auto& cov = covered_[col];
  for (std::uint32_t c : cov)
    if ((agree & ~c) == 0) return;
  std::erase_if(cov, [&](std::uint32_t c) { return (c & ~agree) == 0; });
  cov.push_back(agree);
  const int cap = layout_.dhat();
  for (std::uint32_t s = agree;; s = (s - 1) & agree) {
    if (std::popcount(s) <= cap) set(layout_.index_of(s), col);
    if (s == 0) break;
  }
}

bool StagedStore::empty(const StoreKey& key) {
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second.empty();
  return base_.is_empty(key);
}

Bucket& StagedStore::bucket(const StoreKey& key) {
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  return cache_.emplace(key, base_.is_empty(key) ? Bucket{} : base_.get(key)).first->second;
}

void StagedStore::add(const StoreKey& key, StoredTuple tuple) {
  bucket(key).push_back(std::move(tuple));
  dirty_.insert(key);
}

bool StagedStore::remove(const StoreKey& key, TupleId id) {
  Bucket& b = bucket(key);
  auto it = std::find_if(b.begin(), b.end(), [&](const StoredTuple& e) { return e.id == id; });
  if (it == b.end()) return false;
  b.erase(it);
  dirty_.insert(key);
  return true;
}

void StagedStore::commit() {
  std::vector<StoreKey> keys(dirty_.begin(), dirty_.end());
  std::sort(keys.begin(), keys.end());
  for (const auto& k : keys) base_.replace(k, std::move(cache_.at(k)));
  cache_.clear();
  dirty_.clear();
}

MscIndex::Masks& StagedMsc::at(TupleId id, std::uint32_t subspace) {
  auto k = MscIndex::slot(id, subspace);
  auto it = overlay_.find(k);
  if (it != overlay_.end()) return it->second;
  const auto* existing = base_.find(id, subspace);
  return overlay_.emplace(k, existing ? *existing : MscIndex::Masks{}).first->second;
}

void StagedMsc::commit() {
  for (auto& [k, v] : overlay_) base_.assign(static_cast<TupleId>(k >> 16), static_cast<std::uint32_t>(k & 0xFFFF), std::move(v));
  overlay_.clear();
}

FactSet collect_facts(const TupleRecord& t, const LatticeLayout& layout, const PrunedMatrix& pm,
                      const std::vector<MeasureSubspace>& columns, const std::vector<bool>& reported) {
  FactSet out;
  for (std::size_t col = 0; col < columns.size(); ++col) {
    if (!reported[col]) continue;
    for (std::size_t i = 0; i < layout.size(); ++i)
      if (!pm.pruned(i, col)) out.push_back(Fact{Constraint::from_mask(t, layout.masks()[i]), columns[col]});
  }
  return out;
}

MaterializingEngine::MaterializingEngine(EngineConfig config, std::unique_ptr<SkylineStore> store,
                                         bool keep_full_space)
    : Engine(config),
      store_(store ? std::move(store) : make_memory_store()),
      layout_(static_cast<int>(config.dimension_count), config.dhat),
      maintained_(subspaces_),
      reported_(subspaces_.size(), true) {
  const auto full = MeasureSubspace::full(config.measure_count);
  auto it = std::find(maintained_.begin(), maintained_.end(), full);
  if (it != maintained_.end()) {
    full_col_ = static_cast<std::size_t>(it - maintained_.begin());
  } else if (keep_full_space) {
    maintained_.push_back(full);
    reported_.push_back(false);
    full_col_ = maintained_.size() - 1;
  }
}

void MaterializingEngine::check_sequence(const Table& table) {
  if (table.back().id != processed_ + 1)
    throw ConfigError("engine must see every row in arrival order (expected tuple " +
                      std::to_string(processed_ + 1) + ", got " + std::to_string(table.back().id) + ")");
}

}  // namespace detail
}  // namespace situfact
