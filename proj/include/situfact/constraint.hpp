#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "situfact/schema.hpp"

namespace situfact {

/// Conjunctive equality pattern. Slot value kWildcard means unbound.
class Constraint {
 public:
  Constraint() = default;
  explicit Constraint(std::vector<ValueCode> slots);

  static Constraint top(std::size_t dimension_count);
  /// Binds slot i to t.dims[i] for every bit i of `mask`.
  static Constraint from_mask(const TupleRecord& t, std::uint32_t mask);

  std::size_t size() const noexcept { return slots_.size(); }
  ValueCode slot(std::size_t i) const { return slots_.at(i); }
  bool is_bound(std::size_t i) const { return slots_.at(i) != kWildcard; }
  int bound_count() const noexcept { return bound_; }
  bool is_top() const noexcept { return bound_ == 0; }
  const std::vector<ValueCode>& slots() const noexcept { return slots_; }
  std::uint32_t bound_mask() const noexcept;

  /// Ordering matches the byte order of ConstraintKey.
  friend bool operator==(const Constraint&, const Constraint&) = default;
  friend std::strong_ordering operator<=>(const Constraint& a, const Constraint& b) {
    return a.slots_ <=> b.slots_;
  }

 private:
  std::vector<ValueCode> slots_;
  int bound_ = 0;
};

/// Four big-endian bytes per dimension, wildcard 0x00000000.
class ConstraintKey {
 public:
  ConstraintKey() = default;
  explicit ConstraintKey(const Constraint& c);

  static ConstraintKey from_hex(std::string_view hex);
  static ConstraintKey from_bytes(std::string bytes);

  Constraint decode() const;
  std::string hex() const;
  const std::string& bytes() const noexcept { return bytes_; }

  friend bool operator==(const ConstraintKey&, const ConstraintKey&) = default;
  friend std::strong_ordering operator<=>(const ConstraintKey& a, const ConstraintKey& b) {
    int c = a.bytes_.compare(b.bytes_);
    return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

 private:
  std::string bytes_;
};

bool satisfies(const TupleRecord& t, const Constraint& c);

enum class Subsumption { Subsumed, SubsumedOrEqual, Neither };

/// Subsumed: c1 strictly more specific than c2. SubsumedOrEqual: c1 == c2.
Subsumption subsumes(const Constraint& c1, const Constraint& c2);

/// True iff c1 ⊴ c2 (equal or more specific).
inline bool subsumed_or_equal(const Constraint& c1, const Constraint& c2) {
  return subsumes(c1, c2) != Subsumption::Neither;
}

/// Every constraint of the tuple's lattice with at most `dhat` bound slots,
/// level by level from ⊤, key order within a level.
std::vector<Constraint> enumerate_constraints(const TupleRecord& t, int dhat);

std::vector<Constraint> parents(const Constraint& c, const TupleRecord& t);
std::vector<Constraint> children(const Constraint& c, const TupleRecord& t, int dhat);

/// Bottom of the intersection lattice: slots where t and u agree.
Constraint intersection_bottom(const TupleRecord& t, const TupleRecord& u);

std::uint64_t binomial(int n, int k);
/// Σ_{k=0..dhat} C(n, k).
std::uint64_t capped_lattice_size(int n, int dhat);

/// Key order between two masks of the same tuple: the lowest differing bit
/// decides, and the mask holding it is greater.
inline bool mask_key_less(std::uint32_t a, std::uint32_t b) noexcept {
  std::uint32_t diff = a ^ b;
  if (diff == 0) return false;
  return (b & (diff & (~diff + 1))) != 0;
}

/// Lattice of a tuple expressed in bound-slot masks, grouped by level.
class LatticeLayout {
 public:
  LatticeLayout(int dimension_count, int dhat);

  int dimension_count() const noexcept { return n_; }
  int dhat() const noexcept { return dhat_; }
  std::size_t size() const noexcept { return masks_.size(); }
  /// Masks in enumeration order (level, then key).
  const std::vector<std::uint32_t>& masks() const noexcept { return masks_; }
  /// [begin, end) indices of level k inside masks().
  std::size_t level_begin(int k) const { return level_start_.at(k); }
  std::size_t level_end(int k) const { return level_start_.at(k + 1); }
  /// Dense index of a mask, or npos when outside the cap.
  std::size_t index_of(std::uint32_t mask) const noexcept {
    if (mask >= dense_.size() || dense_[mask] == kAbsent) return npos;
    return dense_[mask];
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  static constexpr std::uint32_t kAbsent = 0xFFFFFFFFu;
  int n_;
  int dhat_;
  std::vector<std::uint32_t> masks_;
  std::vector<std::size_t> level_start_;
  std::vector<std::uint32_t> dense_;
};

class TupleLattice {
 public:
  TupleLattice(const TupleRecord& t, int dhat);

  TupleId owner() const noexcept { return owner_; }
  const Constraint& bottom() const noexcept { return bottom_; }
  int max_bound() const noexcept { return dhat_; }
  std::vector<Constraint> members() const;
  std::size_t size() const noexcept;

 private:
  TupleId owner_;
  Constraint bottom_;
  int dhat_;
  std::size_t n_;
};

}  // namespace situfact
