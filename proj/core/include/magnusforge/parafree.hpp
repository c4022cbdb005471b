#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "magnusforge/lamplighter.hpp"

namespace magnusforge {

struct ParallelogramWitness {
  Lamplighter u1, u2, u3, u4;
};

/// Finds a parallelogram (u1, u2, u3, u4): cyclically adjacent entries
/// distinct and u1 u2^{-1} u3 u4^{-1} = 1. Works by collision counting on
/// quotients u v^{-1}: two distinct ordered pairs sharing a quotient value
/// form a parallelogram and vice versa.
std::optional<ParallelogramWitness> find_parallelogram(std::span<const Lamplighter> set);

inline bool is_parallelogram_free(std::span<const Lamplighter> set) {
  return !find_parallelogram(set).has_value();
}

enum class TranslateSide { left, right };

/// #(P intersect gP) <= 1 (or P g for the right version) for every g in the
/// pool; the default pool of quotients of distinct members is sufficient
/// because every violating translate arises that way.
bool translate_criterion_check(std::span<const Lamplighter> set, TranslateSide side);
bool translate_criterion_check(std::span<const Lamplighter> set, TranslateSide side,
                               std::span<const Lamplighter> g_pool);

/// Admissibility of a candidate extension x of the parallelogram-free set
/// `current`: x is new, is not a quotient solution w v^{-1} u, and solves no
/// equation x u^{-1} x v^{-1} = 1.
bool candidate_admissible(const Lamplighter& x, std::span<const Lamplighter> current);

struct ParafreeRadiusLog {
  int radius = 0;
  std::int64_t ball_size = 0;
  std::int64_t members = 0;        // #P_r after the extension pass
  std::int64_t solutions_eq6 = 0;  // solutions within the ball, relative to P_{r.1}
  std::int64_t solutions_eq7 = 0;
  std::int64_t solutions_eq8 = 0;
  bool growth_target_met = false;  // #P_r > k^{r/3} / 2 for the fitted ball base k
};

struct ParafreeSet {
  std::vector<Lamplighter> members;          // acceptance order
  std::vector<int> member_length;            // |w|_S per member
  std::vector<std::vector<int>> member_words;  // geodesic words, signed ids: +-1 lamp, +-2 shift
  std::vector<ParafreeRadiusLog> log;
  int radius_built = 0;
  double fitted_ball_base = 1.0;  // largest k with |B_r| >= k^r at every radius
  double fitted_growth = 1.0;     // largest c with #(P in B_n) >= c^n at every level

  std::int64_t count_within(int radius) const;
  nlohmann::json to_json() const;
};

struct GreedyOptions {
  int radius_cap = 6;
  bool collect_solution_stats = true;
  std::size_t max_nodes = 5'000'000;
};

/// Radius-by-radius greedy extension: P_0 = {1} and P_r extends P_{r-1} to a
/// maximal parallelogram-free subset of the ball B_r, scanning candidates in
/// (length, canonical key) order. Rejections are final because admissibility
/// only shrinks as the set grows, so the single pass is maximal.
ParafreeSet greedy_build(int radius, const GreedyOptions& options = {});

}  // namespace magnusforge
