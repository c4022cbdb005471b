#include "magnusforge/parafree.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "magnusforge/log.hpp"
#include "magnusforge/metrics.hpp"

namespace magnusforge {

namespace {

const LamplighterGroup kM;

std::string key_of(const Lamplighter& e) { return kM.canonical_key(e); }

// Incremental state for admissibility checks: member keys and the set of
// quotients w v^{-1} over current members.
struct GreedyState {
  std::vector<Lamplighter> members;
  std::unordered_set<std::string> member_keys;
  std::unordered_set<std::string> quotient_keys;  // keys of w v^{-1}

  bool contains(const Lamplighter& x) const { return member_keys.contains(key_of(x)); }

  // x = w v^{-1} u for some members u, v, w  <=>  x u^{-1} is a quotient.
  bool solves_eq7(const Lamplighter& x) const {
    for (const auto& u : members) {
      if (quotient_keys.contains(key_of(kM.multiply(x, kM.invert(u))))) return true;
    }
    return false;
  }

  // x u^{-1} x v^{-1} = 1 for some members u, v  <=>  x u^{-1} x is a member.
  bool solves_eq8(const Lamplighter& x) const {
    for (const auto& u : members) {
      if (member_keys.contains(key_of(kM.multiply(kM.multiply(x, kM.invert(u)), x))))
        return true;
    }
    return false;
  }

  bool admissible(const Lamplighter& x) const {
    return !contains(x) && !solves_eq7(x) && !solves_eq8(x);
  }

  void accept(const Lamplighter& x) {
    for (const auto& v : members) {
      quotient_keys.insert(key_of(kM.multiply(x, kM.invert(v))));
      quotient_keys.insert(key_of(kM.multiply(v, kM.invert(x))));
    }
    quotient_keys.insert(key_of(kM.identity()));
    members.push_back(x);
    member_keys.insert(key_of(x));
  }
};

}  // namespace

std::optional<ParallelogramWitness> find_parallelogram(std::span<const Lamplighter> input) {
  // u1 u2^{-1} u3 u4^{-1} = 1  <=>  u1 u2^{-1} = u4 u3^{-1}; distinct ordered
  // pairs with one shared quotient give all four adjacency inequalities.
  std::vector<Lamplighter> set;
  {
    std::unordered_set<std::string> seen;
    for (const auto& e : input)
      if (seen.insert(key_of(e)).second) set.push_back(e);
  }
  std::unordered_map<std::string, std::pair<std::size_t, std::size_t>> first_pair;
  for (std::size_t a = 0; a < set.size(); ++a) {
    for (std::size_t b = 0; b < set.size(); ++b) {
      if (a == b) continue;
      const std::string q = key_of(kM.multiply(set[a], kM.invert(set[b])));
      auto it = first_pair.find(q);
      if (it == first_pair.end()) {
        first_pair.emplace(q, std::make_pair(a, b));
        continue;
      }
      // A second pair (a, b) with the quotient of (c, d) has a != c and
      // b != d, which is exactly the adjacency condition for the 4-tuple.
      const auto [c, d] = it->second;
      return ParallelogramWitness{set[a], set[b], set[d], set[c]};
    }
  }
  return std::nullopt;
}

bool translate_criterion_check(std::span<const Lamplighter> set, TranslateSide side,
                               std::span<const Lamplighter> g_pool) {
  std::unordered_set<std::string> base;
  for (const auto& e : set) base.insert(key_of(e));
  const std::string id_key = key_of(kM.identity());
  for (const auto& g : g_pool) {
    if (key_of(g) == id_key) continue;
    int common = 0;
    for (const auto& p : set) {
      const Lamplighter translated =
          side == TranslateSide::left ? kM.multiply(g, p) : kM.multiply(p, g);
      if (base.contains(key_of(translated)) && ++common > 1) return false;
    }
  }
  return true;
}

bool translate_criterion_check(std::span<const Lamplighter> set, TranslateSide side) {
  std::vector<Lamplighter> pool;
  pool.reserve(set.size() * set.size());
  for (std::size_t a = 0; a < set.size(); ++a) {
    for (std::size_t b = 0; b < set.size(); ++b) {
      if (a == b) continue;
      // Violating translates g with #(P  gP) >= 2 satisfy g = u v^{-1} for
      // members u, v; for the right version g = v^{-1} u.
      pool.push_back(side == TranslateSide::left
                         ? kM.multiply(set[a], kM.invert(set[b]))
                         : kM.multiply(kM.invert(set[b]), set[a]));
    }
  }
  return translate_criterion_check(set, side, pool);
}

bool candidate_admissible(const Lamplighter& x, std::span<const Lamplighter> current) {
  GreedyState state;
  for (const auto& e : current) state.accept(e);
  return state.admissible(x);
}

std::int64_t ParafreeSet::count_within(int radius) const {
  std::int64_t n = 0;
  for (int l : member_length)
    if (l <= radius) ++n;
  return n;
}

nlohmann::json ParafreeSet::to_json() const {
  const LamplighterGroup M;
  nlohmann::json members_json = nlohmann::json::array();
  for (std::size_t k = 0; k < members.size(); ++k) {
    members_json.push_back(nlohmann::json{{"element", M.to_json(members[k])},
                                          {"length", member_length[k]},
                                          {"word", member_words[k]}});
  }
  nlohmann::json log_json = nlohmann::json::array();
  for (const auto& entry : log) {
    log_json.push_back(nlohmann::json{{"radius", entry.radius},
                                      {"ball_size", entry.ball_size},
                                      {"members", entry.members},
                                      {"solutions_eq6", entry.solutions_eq6},
                                      {"solutions_eq7", entry.solutions_eq7},
                                      {"solutions_eq8", entry.solutions_eq8},
                                      {"growth_target_met", entry.growth_target_met}});
  }
  char ball_base[32];
  char growth[32];
  std::snprintf(ball_base, sizeof(ball_base), "%.6f", fitted_ball_base);
  std::snprintf(growth, sizeof(growth), "%.6f", fitted_growth);
  return nlohmann::json{{"radius", radius_built},
                        {"members", members_json},
                        {"per_radius", log_json},
                        {"fitted_ball_base", ball_base},
                        {"fitted_growth", growth}};
}

ParafreeSet greedy_build(int radius, const GreedyOptions& options) {
  if (radius < 0) throw std::invalid_argument("greedy_build: radius must be >= 0");
  if (radius > options.radius_cap)
    throw std::invalid_argument("greedy_build: radius exceeds the configured cap");

  const std::vector<Lamplighter> gens{LamplighterGroup::lamp_gen(),
                                      LamplighterGroup::shift_gen()};
  const auto ball = enumerate_ball(kM, std::span<const Lamplighter>(gens), radius,
                                   options.max_nodes);

  // Candidates per radius level in (length, canonical key) order.
  std::vector<std::vector<std::uint32_t>> levels(static_cast<std::size_t>(radius) + 1);
  for (std::uint32_t k = 0; k < ball.elements.size(); ++k)
    levels[static_cast<std::size_t>(ball.distance[k])].push_back(k);
  for (auto& level : levels) {
    std::sort(level.begin(), level.end(), [&](std::uint32_t a, std::uint32_t b) {
      return key_of(ball.elements[a]) < key_of(ball.elements[b]);
    });
  }

  ParafreeSet out;
  out.radius_built = radius;
  GreedyState state;

  std::int64_t cumulative_ball = 0;
  for (int r = 0; r <= radius; ++r) {
    cumulative_ball += static_cast<std::int64_t>(levels[static_cast<std::size_t>(r)].size());
    ParafreeRadiusLog entry;
    entry.radius = r;
    entry.ball_size = cumulative_ball;

    if (options.collect_solution_stats) {
      // Solution counts within B_r relative to the current set, before the
      // extension pass: x = u; x = w v^{-1} u; x u^{-1} x v^{-1} = 1.
      for (int rr = 0; rr <= r; ++rr) {
        for (std::uint32_t idx : levels[static_cast<std::size_t>(rr)]) {
          const Lamplighter& x = ball.elements[idx];
          if (state.contains(x)) ++entry.solutions_eq6;
          if (state.solves_eq7(x)) ++entry.solutions_eq7;
          if (state.solves_eq8(x)) ++entry.solutions_eq8;
        }
      }
      const std::int64_t n = static_cast<std::int64_t>(state.members.size());
      if (entry.solutions_eq6 != n || entry.solutions_eq7 > n * n * n ||
          entry.solutions_eq8 > n * n)
        throw std::runtime_error("greedy_build: solution-count bound violated");
    }

    for (std::uint32_t idx : levels[static_cast<std::size_t>(r)]) {
      const Lamplighter& x = ball.elements[idx];
      if (!state.admissible(x)) continue;
      state.accept(x);
      out.members.push_back(x);
      out.member_length.push_back(ball.distance[idx]);
      std::vector<int> word;
      for (const auto& [gen, sign] : ball.geodesic(idx)) word.push_back(sign * (gen + 1));
      out.member_words.push_back(std::move(word));
    }

    entry.members = static_cast<std::int64_t>(state.members.size());
    out.log.push_back(entry);
  }

  // Fitted exponential bases: ball growth k and member growth c.
  double ball_base = out.log.empty() ? 1.0 : 1e18;
  double growth = 1e18;
  for (const auto& entry : out.log) {
    if (entry.radius == 0) continue;
    ball_base = std::min(ball_base,
                         std::pow(static_cast<double>(entry.ball_size), 1.0 / entry.radius));
    growth = std::min(growth,
                      std::pow(static_cast<double>(entry.members), 1.0 / entry.radius));
  }
  out.fitted_ball_base = radius == 0 ? 1.0 : ball_base;
  out.fitted_growth = radius == 0 ? 1.0 : growth;

  for (auto& entry : out.log) {
    entry.growth_target_met =
        static_cast<double>(entry.members) >
        0.5 * std::pow(out.fitted_ball_base, entry.radius / 3.0);
    if (!entry.growth_target_met) {
      log::info("greedy_build: growth target #P_r > k^{r/3}/2 tight at radius " +
                std::to_string(entry.radius));
    }
  }
  return out;
}

}  // namespace magnusforge
