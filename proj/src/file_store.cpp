#include "situfact/file_store.hpp"

#include <zlib.h>

#include <algorithm>
#include <bit>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include "situfact/errors.hpp"

namespace fs = std::filesystem;

namespace situfact {

namespace {

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint32_t get_u32(const std::string& in, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[at + i])) << (8 * i);
  return v;
}

std::uint64_t get_u64(const std::string& in, std::size_t at) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[at + i])) << (8 * i);
  return v;
}

std::uint32_t crc_of(const std::string& data, std::size_t len) {
  return static_cast<std::uint32_t>(
      crc32(0L, reinterpret_cast<const Bytef*>(data.data()), static_cast<uInt>(len)));
}

std::string mask_dir(std::uint32_t mask) {
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08x", mask);
  return buf;
}

}  // namespace

FileStore::FileStore(fs::path root, std::size_t measure_count)
    : root_(std::move(root)), measure_count_(measure_count) {
  std::error_code ec;
  if (!fs::is_directory(root_, ec)) throw ConfigError("store directory does not exist: " + root_.string());
  for_each([&](const StoreKey&, const Bucket& b) { count_ += b.size(); });
}

fs::path FileStore::path_for(const StoreKey& key) const {
  return root_ / mask_dir(key.subspace) / (key.constraint.hex() + ".bin");
}

std::string FileStore::encode(const Bucket& bucket, std::size_t measure_count) {
  std::string out;
  out.reserve(8 + bucket.size() * (8 + 8 * measure_count));
  put_u32(out, static_cast<std::uint32_t>(bucket.size()));
  for (const auto& e : bucket) {
    if (e.measures.size() != measure_count) throw StoreError("stored tuple has wrong measure arity");
    put_u64(out, e.id);
    for (double v : e.measures) put_u64(out, std::bit_cast<std::uint64_t>(v));
  }
  put_u32(out, crc_of(out, out.size()));
  return out;
}

Bucket FileStore::decode(const std::string& bytes, std::size_t measure_count, const std::string& origin) {
  if (bytes.size() < 8) throw ChecksumError("truncated bucket file " + origin);
  const std::uint32_t count = get_u32(bytes, 0);
  const std::size_t record = 8 + 8 * measure_count;
  if (bytes.size() != 8 + count * record) throw ChecksumError("bucket file size mismatch " + origin);
  if (get_u32(bytes, bytes.size() - 4) != crc_of(bytes, bytes.size() - 4))
    throw ChecksumError("CRC mismatch in bucket file " + origin);
  Bucket b(count);
  std::size_t at = 4;
  for (auto& e : b) {
    e.id = get_u64(bytes, at);
    at += 8;
    e.measures.resize(measure_count);
    for (auto& v : e.measures) {
      v = std::bit_cast<double>(get_u64(bytes, at));
      at += 8;
    }
  }
  return b;
}

bool FileStore::is_empty(const StoreKey& key) const {
  std::error_code ec;
  return !fs::exists(path_for(key), ec);
}

Bucket FileStore::file_load(const StoreKey& key) const {
  const fs::path p = path_for(key);
  std::ifstream in(p, std::ios::binary);
  if (!in) {
    std::error_code ec;
    if (!fs::exists(p, ec)) return {};
    throw StoreError("cannot open " + p.string());
  }
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw StoreError("read failed for " + p.string());
  return decode(bytes, measure_count_, p.string());
}

std::size_t FileStore::record_count_on_disk(const fs::path& p) const {
  std::ifstream in(p, std::ios::binary);
  if (!in) return 0;
  std::string head(4, '\0');
  if (!in.read(head.data(), 4)) throw ChecksumError("truncated bucket file " + p.string());
  return get_u32(head, 0);
}

void FileStore::file_flush(const StoreKey& key, const Bucket& bucket) {
  const fs::path p = path_for(key);
  const std::size_t before = record_count_on_disk(p);
  std::error_code ec;
  if (bucket.empty()) {
    if (fs::exists(p, ec) && !fs::remove(p, ec)) throw StoreError("cannot delete " + p.string() + ": " + ec.message());
    count_ -= before;
    return;
  }
  fs::create_directories(p.parent_path(), ec);
  if (ec) throw StoreError("cannot create " + p.parent_path().string() + ": " + ec.message());
  const std::string bytes = encode(bucket, measure_count_);
  fs::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw StoreError("cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw StoreError("write failed for " + tmp.string());
  }
  fs::rename(tmp, p, ec);
  if (ec) throw StoreError("cannot rename " + tmp.string() + ": " + ec.message());
  count_ = count_ - before + bucket.size();
}

void FileStore::for_each(const std::function<void(const StoreKey&, const Bucket&)>& fn) const {
  std::vector<StoreKey> keys;
  for (const auto& dir : fs::directory_iterator(root_)) {
    if (!dir.is_directory()) continue;
    const std::string dname = dir.path().filename().string();
    if (dname.size() != 8) continue;
    std::uint32_t mask = 0;
    try {
      mask = static_cast<std::uint32_t>(std::stoul(dname, nullptr, 16));
    } catch (const std::exception&) {
      continue;
    }
    for (const auto& f : fs::directory_iterator(dir.path())) {
      if (f.path().extension() != ".bin") continue;
      keys.push_back(StoreKey{ConstraintKey::from_hex(f.path().stem().string()), mask});
    }
  }
  std::sort(keys.begin(), keys.end());
  for (const auto& k : keys) fn(k, file_load(k));
}

}  // namespace situfact
