#include "situfact/prominence.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "situfact/errors.hpp"

namespace situfact {

Ratio Ratio::reduced() const {
  if (den == 0) throw ConfigError("ratio with zero denominator");
  std::uint64_t g = std::gcd(num, den);
  if (g == 0) return Ratio{0, 1};
  return Ratio{num / g, den / g};
}

std::string Ratio::str() const {
  Ratio r = reduced();
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

Ratio Ratio::parse(std::string_view text) {
  auto num_of = [&](std::string_view s) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || s.empty())
      throw ConfigError("bad ratio '" + std::string(text) + "'");
    return v;
  };
  auto slash = text.find('/');
  Ratio r = slash == std::string_view::npos ? Ratio{num_of(text), 1}
                                            : Ratio{num_of(text.substr(0, slash)), num_of(text.substr(slash + 1))};
  if (r.den == 0) throw ConfigError("bad ratio '" + std::string(text) + "': zero denominator");
  return r;
}

ScoredFact score(const Fact& fact, const ContextCounter& counter, std::uint64_t skyline_size) {
  ScoredFact s{fact.constraint, fact.subspace, counter.count(fact.constraint), skyline_size};
  if (s.skyline_size == 0 || s.context_size < s.skyline_size)
    throw StoreError("inconsistent context (" + std::to_string(s.context_size) + ") and skyline (" +
                     std::to_string(s.skyline_size) + ") sizes");
  return s;
}

std::uint64_t skyline_size_from_scan(const Table& table, const Constraint& c, MeasureSubspace m) {
  // block-nested-loop window
  std::vector<const TupleRecord*> window;
  std::vector<const TupleRecord*> context;
  for (const auto& r : table.rows())
    if (satisfies(r, c)) context.push_back(&r);
  for (const TupleRecord* r : context) {
    bool dominated = false;
    for (const TupleRecord* w : window)
      if (dominates(*w, *r, m) == DominanceOutcome::Dominates) {
        dominated = true;
        break;
      }
    if (dominated) continue;
    std::erase_if(window, [&](const TupleRecord* w) { return dominates(*r, *w, m) == DominanceOutcome::Dominates; });
    window.push_back(r);
  }
  return window.size();
}

void rank(std::vector<ScoredFact>& scored) {
  std::sort(scored.begin(), scored.end(), [](const ScoredFact& a, const ScoredFact& b) {
    auto c = a.prominence() <=> b.prominence();
    if (c != 0) return c > 0;
    return a.fact() < b.fact();
  });
}

std::vector<ScoredFact> prominent_facts(std::vector<ScoredFact> scored, Ratio tau) {
  if (scored.empty()) return scored;
  rank(scored);
  const Ratio best = scored.front().prominence();
  if (best < tau) return {};
  auto end = std::find_if(scored.begin(), scored.end(), [&](const ScoredFact& f) { return f.prominence() != best; });
  scored.erase(end, scored.end());
  return scored;
}

std::vector<ScoredFact> top_k_facts(std::vector<ScoredFact> scored, std::size_t k) {
  rank(scored);
  if (scored.size() > k) scored.resize(k);
  return scored;
}

}  // namespace situfact
