#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "magnusforge/group.hpp"
#include "magnusforge/lamplighter.hpp"

namespace magnusforge {

/// Ball of a word metric enumerated by breadth-first search, right Cayley
/// graph (neighbors of x are x*s for s in gens and their inverses). Elements
/// appear in deterministic BFS order: the queue is processed in insertion
/// order and generators are expanded as s1, s1^-1, s2, s2^-1, ...
/// Parent links reconstruct one geodesic word per element.
template <GroupLike G>
struct BallEnumeration {
  std::vector<typename G::Element> elements;  // [0] is the identity
  std::vector<int> distance;
  std::vector<std::int32_t> parent;  // -1 for the identity
  std::vector<std::int32_t> via;     // signed generator id: +-(k+1)
  std::unordered_map<std::string, std::uint32_t> index;

  std::optional<std::uint32_t> find(const G& group, const typename G::Element& e) const {
    auto it = index.find(group.canonical_key(e));
    if (it == index.end()) return std::nullopt;
    return it->second;
  }

  // Geodesic as (generator id, sign) pairs; multiplying the generators in
  // order yields the element.
  std::vector<std::pair<int, int>> geodesic(std::uint32_t idx) const {
    std::vector<std::pair<int, int>> out;
    for (std::uint32_t at = idx; parent[at] >= 0; at = static_cast<std::uint32_t>(parent[at])) {
      const std::int32_t v = via[at];
      out.emplace_back(std::abs(v) - 1, v > 0 ? 1 : -1);
    }
    std::reverse(out.begin(), out.end());
    return out;
  }
};

template <GroupLike G>
BallEnumeration<G> enumerate_ball(const G& group,
                                  std::span<const typename G::Element> gens, int radius,
                                  std::size_t max_nodes = 5'000'000) {
  if (radius < 0) throw std::invalid_argument("enumerate_ball: radius must be >= 0");
  BallEnumeration<G> ball;
  std::vector<typename G::Element> steps;
  std::vector<std::int32_t> step_ids;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    steps.push_back(gens[k]);
    step_ids.push_back(static_cast<std::int32_t>(k + 1));
    steps.push_back(group.invert(gens[k]));
    step_ids.push_back(-static_cast<std::int32_t>(k + 1));
  }

  ball.elements.push_back(group.identity());
  ball.distance.push_back(0);
  ball.parent.push_back(-1);
  ball.via.push_back(0);
  ball.index.emplace(group.canonical_key(group.identity()), 0u);

  for (std::size_t head = 0; head < ball.elements.size(); ++head) {
    if (ball.distance[head] == radius) continue;
    for (std::size_t k = 0; k < steps.size(); ++k) {
      auto next = group.multiply(ball.elements[head], steps[k]);
      std::string key = group.canonical_key(next);
      if (ball.index.contains(key)) continue;
      if (ball.elements.size() >= max_nodes)
        throw std::runtime_error("enumerate_ball: node budget exceeded");
      ball.index.emplace(std::move(key), static_cast<std::uint32_t>(ball.elements.size()));
      ball.elements.push_back(std::move(next));
      ball.distance.push_back(ball.distance[head] + 1);
      ball.parent.push_back(static_cast<std::int32_t>(head));
      ball.via.push_back(step_ids[k]);
    }
  }
  return ball;
}

/// Exact |target| over gens if it is <= radius_cap, otherwise nothing.
template <GroupLike G>
std::optional<long> word_length_bfs(const G& group,
                                    std::span<const typename G::Element> gens,
                                    const typename G::Element& target, int radius_cap,
                                    std::size_t max_nodes = 5'000'000) {
  if (radius_cap < 0) throw std::invalid_argument("word_length_bfs: radius_cap must be >= 0");
  const std::string target_key = group.canonical_key(target);
  if (target_key == group.canonical_key(group.identity())) return 0;

  std::vector<typename G::Element> steps;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    steps.push_back(gens[k]);
    steps.push_back(group.invert(gens[k]));
  }

  std::vector<typename G::Element> frontier{group.identity()};
  std::unordered_set<std::string> visited{group.canonical_key(group.identity())};
  for (int dist = 1; dist <= radius_cap; ++dist) {
    std::vector<typename G::Element> next_frontier;
    for (const auto& e : frontier) {
      for (const auto& s : steps) {
        auto next = group.multiply(e, s);
        std::string key = group.canonical_key(next);
        if (visited.contains(key)) continue;
        if (key == target_key) return dist;
        if (visited.size() >= max_nodes)
          throw std::runtime_error("word_length_bfs: node budget exceeded");
        visited.insert(std::move(key));
        next_frontier.push_back(std::move(next));
      }
    }
    frontier.swap(next_frontier);
    if (frontier.empty()) break;
  }
  return std::nullopt;
}

/// Closed-form word length in Z wr Z over {lamp_gen, shift_gen}: every lamp
/// costs its absolute value and the walker must sweep the lamp support,
/// starting at 0 and ending at -shift, going left-first or right-first.
inline long long lamplighter_length(const Lamplighter& e) {
  long long toggles = 0;
  for (const auto& [p, k] : e.lamps) toggles += k < 0 ? -k : k;
  const long long end = -e.shift;
  long long travel;
  if (e.lamps.empty()) {
    travel = end < 0 ? -end : end;
  } else {
    const long long a = std::min<long long>({e.lamps.begin()->first, 0, end});
    const long long b = std::max<long long>({e.lamps.rbegin()->first, 0, end});
    const long long left_first = -a + (b - a) + (b - end);
    const long long right_first = b + (b - a) + (end - a);
    travel = std::min(left_first, right_first);
  }
  return toggles + travel;
}

// ---------------------------------------------------------------------------
// Growth counting

struct GrowthReport {
  std::vector<std::int64_t> counts;  // counts[n] = #{ h : l(h) <= n }
  std::vector<double> fitted;        // fitted[n] = max_{1<=k<=n} counts[k]^{1/k}
  double fitted_base = 1.0;          // smallest a with counts[n] <= a^n for all n
};

/// Exact ball counts of a length function from the multiset of its values,
/// plus the smallest exponential base consistent with every level.
inline GrowthReport growth_report(std::span<const long long> lengths, int max_level) {
  if (max_level < 0) throw std::invalid_argument("growth_report: max_level must be >= 0");
  GrowthReport rep;
  rep.counts.assign(static_cast<std::size_t>(max_level) + 1, 0);
  for (long long l : lengths) {
    if (l < 0) throw std::invalid_argument("growth_report: negative length");
    if (l <= max_level) rep.counts[static_cast<std::size_t>(l)] += 1;
  }
  std::partial_sum(rep.counts.begin(), rep.counts.end(), rep.counts.begin());
  rep.fitted.assign(rep.counts.size(), 1.0);
  double best = 1.0;
  for (int n = 1; n <= max_level; ++n) {
    best = std::max(best, std::pow(static_cast<double>(rep.counts[static_cast<std::size_t>(n)]),
                                   1.0 / n));
    rep.fitted[static_cast<std::size_t>(n)] = best;
  }
  rep.fitted_base = best;
  return rep;
}

// ---------------------------------------------------------------------------
// Product length over a finite list of factors: l(h) = sum_k k * d_k(1, g_k),
// with factors indexed from 1. d_k values are supplied per factor through a
// distance table resolved by the caller.

struct ProductFactor {
  std::function<long long(int)> distance_from_identity;  // element id -> d_k(1, g)
};

inline long long product_length(std::span<const ProductFactor> factors,
                                const std::map<int, int>& tuple) {
  long long acc = 0;
  for (const auto& [k, elem] : tuple) {
    if (k < 1 || static_cast<std::size_t>(k) > factors.size())
      throw std::invalid_argument("product_length: coordinate outside the factor list");
    acc += static_cast<long long>(k) *
           factors[static_cast<std::size_t>(k - 1)].distance_from_identity(elem);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Empirical compression: min image distance over sampled pairs at source
// distance >= x.

inline double compression_empirical(std::span<const std::pair<double, double>> sample,
                                    double x) {
  bool found = false;
  double best = 0.0;
  for (const auto& [src, img] : sample) {
    if (src < x) continue;
    if (!found || img < best) best = img;
    found = true;
  }
  if (!found) throw std::invalid_argument("compression_empirical: no pair at distance >= x");
  return best;
}

// ---------------------------------------------------------------------------
// Folner defect sum_x |Ax \ A| / |A| as an exact rational.

struct Rational {
  long long num = 0;
  long long den = 1;

  static Rational reduced(long long n, long long d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    const long long g = std::gcd(n, d);
    return Rational{g == 0 ? 0 : n / g, g == 0 ? 1 : d / g};
  }

  bool operator==(const Rational&) const = default;
  // this <= num/den
  bool leq(long long n, long long d) const { return num * d <= n * den; }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

template <GroupLike G>
Rational folner_defect(const G& group, std::span<const typename G::Element> gens,
                       std::span<const typename G::Element> set) {
  if (set.empty()) throw std::invalid_argument("folner_defect: empty set");
  std::unordered_set<std::string> base;
  for (const auto& e : set) base.insert(group.canonical_key(e));
  if (base.size() != set.size())
    throw std::invalid_argument("folner_defect: set contains duplicates");
  long long total = 0;
  for (const auto& x : gens) {
    long long common = 0;
    for (const auto& e : set)
      if (base.contains(group.canonical_key(group.multiply(e, x)))) ++common;
    total += 2 * (static_cast<long long>(set.size()) - common);
  }
  return Rational::reduced(total, static_cast<long long>(set.size()));
}

template <GroupLike G>
struct FolnerSearchResult {
  bool found = false;
  std::vector<typename G::Element> set;
  Rational defect;
};

/// Exhaustive minimum-size search over subsets of a candidate pool,
/// smallest size first, pool order as tie-break. Subset sizes are capped;
/// the search is exponential by nature and meant for desk-scale pools.
template <GroupLike G>
FolnerSearchResult<G> folner_search(const G& group,
                                    std::span<const typename G::Element> gens,
                                    std::span<const typename G::Element> pool,
                                    long long eps_num, long long eps_den,
                                    int max_size = 12) {
  if (eps_den <= 0 || eps_num < 0) throw std::invalid_argument("folner_search: bad epsilon");
  if (max_size < 1 || max_size > 12)
    throw std::invalid_argument("folner_search: max_size must be in [1, 12]");
  if (pool.size() > 26) throw std::invalid_argument("folner_search: pool too large");

  std::vector<typename G::Element> subset;
  FolnerSearchResult<G> result;

  const std::function<bool(std::size_t, int)> extend = [&](std::size_t start, int remaining) {
    if (remaining == 0) {
      const Rational d = folner_defect(group, gens, std::span<const typename G::Element>(subset));
      if (d.leq(eps_num, eps_den)) {
        result.found = true;
        result.set = subset;
        result.defect = d;
        return true;
      }
      return false;
    }
    for (std::size_t k = start; k + static_cast<std::size_t>(remaining) <= pool.size(); ++k) {
      subset.push_back(pool[k]);
      if (extend(k + 1, remaining - 1)) return true;
      subset.pop_back();
    }
    return false;
  };

  for (int size = 1; size <= max_size && static_cast<std::size_t>(size) <= pool.size(); ++size) {
    if (extend(0, size)) break;
  }
  return result;
}

}  // namespace magnusforge
