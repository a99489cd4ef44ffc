#pragma once

#include <filesystem>
#include <string>

#include "situfact/store.hpp"

namespace situfact {

/// One file per non-empty bucket at <root>/<mask, 8 hex>/<key hex>.bin.
/// Layout: u32 LE count, count × (u64 LE id, s × f64 LE), u32 LE CRC32 of
/// everything before it.
class FileStore final : public SkylineStore {
 public:
  FileStore(std::filesystem::path root, std::size_t measure_count);

  Bucket get(const StoreKey& key) const override { return file_load(key); }
  bool is_empty(const StoreKey& key) const override;
  void replace(const StoreKey& key, Bucket bucket) override { file_flush(key, bucket); }
  std::size_t stored_count() const override { return count_; }
  void for_each(const std::function<void(const StoreKey&, const Bucket&)>& fn) const override;

  Bucket file_load(const StoreKey& key) const;
  /// Writes to a temporary sibling then renames over the target.
  void file_flush(const StoreKey& key, const Bucket& bucket);

  std::filesystem::path path_for(const StoreKey& key) const;
  const std::filesystem::path& root() const noexcept { return root_; }

  static std::string encode(const Bucket& bucket, std::size_t measure_count);
  static Bucket decode(const std::string& bytes, std::size_t measure_count,
                       const std::string& origin = "<memory>");

 private:
  std::size_t record_count_on_disk(const std::filesystem::path& p) const;

  std::filesystem::path root_;
  std::size_t measure_count_;
  std::size_t count_ = 0;
};

}  // namespace situfact
