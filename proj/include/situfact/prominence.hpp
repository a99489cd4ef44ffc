#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "situfact/engine.hpp"
#include "situfact/store.hpp"

namespace situfact {

__extension__ using Wide = unsigned __int128;

/// Exact non-negative rational; equality and order by cross-multiplication.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  Ratio reduced() const;
  std::string str() const;  // "p/q" in lowest terms
  static Ratio parse(std::string_view text);  // "p/q" or an integer

  friend bool operator==(const Ratio& a, const Ratio& b) {
    return static_cast<Wide>(a.num) * b.den == static_cast<Wide>(b.num) * a.den;
  }
  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
    auto l = static_cast<Wide>(a.num) * b.den;
    auto r = static_cast<Wide>(b.num) * a.den;
    return l < r ? std::strong_ordering::less : l > r ? std::strong_ordering::greater : std::strong_ordering::equal;
  }
};

struct ScoredFact {
  Constraint constraint;
  MeasureSubspace subspace{1};
  std::uint64_t context_size = 0;
  std::uint64_t skyline_size = 1;

  Ratio prominence() const { return Ratio{context_size, skyline_size}; }
  Fact fact() const { return Fact{constraint, subspace}; }
};

ScoredFact score(const Fact& fact, const ContextCounter& counter, std::uint64_t skyline_size);

/// |λ_M(σ_C(R))| computed over the whole table.
std::uint64_t skyline_size_from_scan(const Table& table, const Constraint& c, MeasureSubspace m);

/// Prominence descending, then (constraint key, mask).
void rank(std::vector<ScoredFact>& scored);

/// The maximal-prominence group when its value is at least `tau`.
std::vector<ScoredFact> prominent_facts(std::vector<ScoredFact> scored, Ratio tau);
std::vector<ScoredFact> top_k_facts(std::vector<ScoredFact> scored, std::size_t k);

}  // namespace situfact
