#include "situfact/constraint.hpp"

#include <algorithm>

#include "situfact/errors.hpp"

namespace situfact {

namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

Constraint::Constraint(std::vector<ValueCode> slots) : slots_(std::move(slots)) {
  bound_ = static_cast<int>(std::count_if(slots_.begin(), slots_.end(), [](ValueCode v) { return v != kWildcard; }));
}

Constraint Constraint::top(std::size_t dimension_count) {
  return Constraint(std::vector<ValueCode>(dimension_count, kWildcard));
}

Constraint Constraint::from_mask(const TupleRecord& t, std::uint32_t mask) {
  std::vector<ValueCode> slots(t.dims.size(), kWildcard);
  for (std::size_t i = 0; i < slots.size(); ++i)
    if ((mask >> i) & 1U) slots[i] = t.dims[i];
  return Constraint(std::move(slots));
}

std::uint32_t Constraint::bound_mask() const noexcept {
  std::uint32_t m = 0;
  for (std::size_t i = 0; i < slots_.size(); ++i)
    if (slots_[i] != kWildcard) m |= 1U << i;
  return m;
}

ConstraintKey::ConstraintKey(const Constraint& c) {
  bytes_.resize(c.size() * 4);
  for (std::size_t i = 0; i < c.size(); ++i) {
    ValueCode v = c.slot(i);
    bytes_[4 * i] = static_cast<char>((v >> 24) & 0xFF);
    bytes_[4 * i + 1] = static_cast<char>((v >> 16) & 0xFF);
    bytes_[4 * i + 2] = static_cast<char>((v >> 8) & 0xFF);
    bytes_[4 * i + 3] = static_cast<char>(v & 0xFF);
  }
}

ConstraintKey ConstraintKey::from_bytes(std::string bytes) {
  if (bytes.size() % 4 != 0) throw StoreError("constraint key length not a multiple of 4");
  ConstraintKey k;
  k.bytes_ = std::move(bytes);
  return k;
}

ConstraintKey ConstraintKey::from_hex(std::string_view hex) {
  if (hex.size() % 8 != 0) throw StoreError("bad constraint key hex '" + std::string(hex) + "'");
  std::string bytes(hex.size() / 2, '\0');
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    int hi = hex_digit(hex[2 * i]), lo = hex_digit(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw StoreError("bad constraint key hex '" + std::string(hex) + "'");
    bytes[i] = static_cast<char>((hi << 4) | lo);
  }
  return from_bytes(std::move(bytes));
}

Constraint ConstraintKey::decode() const {
  std::vector<ValueCode> slots(bytes_.size() / 4);
  for (std::size_t i = 0; i < slots.size(); ++i) {
    auto b = [&](std::size_t j) { return static_cast<ValueCode>(static_cast<unsigned char>(bytes_[4 * i + j])); };
    slots[i] = (b(0) << 24) | (b(1) << 16) | (b(2) << 8) | b(3);
  }
  return Constraint(std::move(slots));
}

std::string ConstraintKey::hex() const {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes_.size() * 2);
  for (char ch : bytes_) {
    auto c = static_cast<unsigned char>(ch);
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 0xF]);
  }
  return out;
}

bool satisfies(const TupleRecord& t, const Constraint& c) {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c.is_bound(i) && c.slot(i) != t.dims[i]) return false;
  return true;
}

Subsumption subsumes(const Constraint& c1, const Constraint& c2) {
  if (c1.size() != c2.size()) throw SchemaError("constraints over different dimension spaces");
  for (std::size_t i = 0; i < c1.size(); ++i)
    if (c2.is_bound(i) && c2.slot(i) != c1.slot(i)) return Subsumption::Neither;
  return c1.bound_count() == c2.bound_count() ? Subsumption::SubsumedOrEqual : Subsumption::Subsumed;
}

std::vector<Constraint> enumerate_constraints(const TupleRecord& t, int dhat) {
  LatticeLayout layout(static_cast<int>(t.dims.size()), dhat);
  std::vector<Constraint> out;
  out.reserve(layout.size());
  for (std::uint32_t m : layout.masks()) out.push_back(Constraint::from_mask(t, m));
  return out;
}

std::vector<Constraint> parents(const Constraint& c, const TupleRecord& t) {
  std::vector<Constraint> out;
  std::uint32_t mask = c.bound_mask();
  for (std::uint32_t bits = mask; bits; bits &= bits - 1)
    out.push_back(Constraint::from_mask(t, mask & ~(bits & (~bits + 1))));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Constraint> children(const Constraint& c, const TupleRecord& t, int dhat) {
  std::vector<Constraint> out;
  if (c.bound_count() + 1 > dhat) return out;
  std::uint32_t mask = c.bound_mask();
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!((mask >> i) & 1U)) out.push_back(Constraint::from_mask(t, mask | (1U << i)));
  std::sort(out.begin(), out.end());
  return out;
}

Constraint intersection_bottom(const TupleRecord& t, const TupleRecord& u) {
  return Constraint::from_mask(t, agreement_mask(t, u));
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

std::uint64_t capped_lattice_size(int n, int dhat) {
  std::uint64_t s = 0;
  for (int k = 0; k <= std::min(n, dhat); ++k) s += binomial(n, k);
  return s;
}

LatticeLayout::LatticeLayout(int dimension_count, int dhat)
    : n_(dimension_count), dhat_(std::clamp(dhat, 0, dimension_count)) {
  if (n_ < 0 || n_ > static_cast<int>(kMaxDimensions)) throw SchemaError("dimension count out of range");
  const std::uint32_t limit = 1U << n_;
  for (std::uint32_t m = 0; m < limit; ++m)
    if (std::popcount(m) <= dhat_) masks_.push_back(m);
  std::sort(masks_.begin(), masks_.end(), [](std::uint32_t a, std::uint32_t b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    return mask_key_less(a, b);
  });
  level_start_.assign(static_cast<std::size_t>(dhat_) + 2, 0);
  for (std::uint32_t m : masks_) ++level_start_[std::popcount(m) + 1];
  for (std::size_t k = 1; k < level_start_.size(); ++k) level_start_[k] += level_start_[k - 1];
  dense_.assign(limit, kAbsent);
  for (std::size_t i = 0; i < masks_.size(); ++i) dense_[masks_[i]] = static_cast<std::uint32_t>(i);
}

TupleLattice::TupleLattice(const TupleRecord& t, int dhat)
    : owner_(t.id),
      bottom_(Constraint::from_mask(t, static_cast<std::uint32_t>((1ULL << t.dims.size()) - 1))),
      dhat_(std::clamp(dhat, 0, static_cast<int>(t.dims.size()))),
      n_(t.dims.size()) {}

std::vector<Constraint> TupleLattice::members() const {
  TupleRecord t{owner_, bottom_.slots(), {}};
  return enumerate_constraints(t, dhat_);
}

std::size_t TupleLattice::size() const noexcept {
  return static_cast<std::size_t>(capped_lattice_size(static_cast<int>(n_), dhat_));
}

}  // namespace situfact
