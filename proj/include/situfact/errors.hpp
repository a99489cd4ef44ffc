#pragma once

#include <stdexcept>
#include <string>

namespace situfact {

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class StoreError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a bucket file fails its CRC32 or size check.
class ChecksumError : public StoreError {
 public:
  using StoreError::StoreError;
};

class PartitionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An engine's store disagrees with its materialization invariant.
class AuditError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A rejected input row. `row` is 1-based and counts the header line.
class IngestError : public std::runtime_error {
 public:
  IngestError(std::size_t row, const std::string& what)
      : std::runtime_error("row " + std::to_string(row) + ": " + what), row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

}  // namespace situfact
