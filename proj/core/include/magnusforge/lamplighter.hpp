#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "magnusforge/group.hpp"

namespace magnusforge {

/// Element of Z wr Z: integer lamps with finite support plus a shift. The
/// action convention matches the wreath layer: right-multiplying by the lamp
/// generator toggles the lamp at position -shift.
struct Lamplighter {
  std::map<std::int64_t, std::int64_t> lamps;  // no zero values stored
  std::int64_t shift = 0;

  bool operator==(const Lamplighter&) const = default;
};

class LamplighterGroup {
 public:
  using Element = Lamplighter;

  Element identity() const { return {}; }

  Element multiply(const Element& u, const Element& v) const {
    Element out = u;
    out.shift = u.shift + v.shift;
    for (const auto& [p, k] : v.lamps) add_lamp(out, p - u.shift, k);
    return out;
  }

  Element invert(const Element& u) const {
    Element out;
    out.shift = -u.shift;
    for (const auto& [p, k] : u.lamps) out.lamps.emplace(p + u.shift, -k);
    return out;
  }

  bool equal(const Element& u, const Element& v) const { return u == v; }

  std::string canonical_key(const Element& u) const {
    std::string out;
    keys::append_i64(out, u.shift);
    keys::append_u32(out, static_cast<std::uint32_t>(u.lamps.size()));
    for (const auto& [p, k] : u.lamps) {
      keys::append_i64(out, p);
      keys::append_i64(out, k);
    }
    return out;
  }

  std::string describe(const Element& u) const {
    std::string out = "lamps{";
    bool first = true;
    for (const auto& [p, k] : u.lamps) {
      if (!first) out += ',';
      first = false;
      out += std::to_string(p) + ":" + std::to_string(k);
    }
    out += "};t^" + std::to_string(u.shift);
    return out;
  }

  // The two wreathed generators.
  static Element lamp_gen() { return Element{{{0, 1}}, 0}; }
  static Element shift_gen() { return Element{{}, 1}; }

  nlohmann::json to_json(const Element& u) const {
    nlohmann::json lamps = nlohmann::json::object();
    for (const auto& [p, k] : u.lamps) lamps[std::to_string(p)] = k;
    return nlohmann::json{{"lamps", lamps}, {"shift", u.shift}};
  }

  Element from_json(const nlohmann::json& j) const {
    Element out;
    out.shift = j.at("shift").get<std::int64_t>();
    for (const auto& [p, k] : j.at("lamps").items()) {
      const std::int64_t val = k.get<std::int64_t>();
      if (val != 0) out.lamps.emplace(std::stoll(p), val);
    }
    return out;
  }

 private:
  static void add_lamp(Element& e, std::int64_t pos, std::int64_t delta) {
    if (delta == 0) return;
    auto it = e.lamps.find(pos);
    if (it == e.lamps.end()) {
      e.lamps.emplace(pos, delta);
    } else {
      it->second += delta;
      if (it->second == 0) e.lamps.erase(it);
    }
  }
};

static_assert(GroupLike<LamplighterGroup>);

/// Unique square root in Z wr Z if one exists. Equations y^2 = a have at
/// most one solution: the shift halves uniquely and the base equation
/// (1 + t^m) v = w sits in a free module without torsion, so exact Laurent
/// division either produces the root or proves there is none.
inline std::optional<Lamplighter> lamplighter_square_root(const Lamplighter& a) {
  LamplighterGroup M;
  if (a.shift % 2 != 0) return std::nullopt;
  const std::int64_t m = a.shift / 2;

  Lamplighter candidate;
  candidate.shift = m;

  if (m == 0) {
    for (const auto& [p, k] : a.lamps) {
      if (k % 2 != 0) return std::nullopt;
      candidate.lamps.emplace(p, k / 2);
    }
  } else {
    // Solve (1 + T^{-m}) V = W in Laurent polynomials; normalize so we divide
    // by T^{m'} + 1 with m' >= 1.
    const std::int64_t mprime = m > 0 ? m : -m;
    std::map<std::int64_t, std::int64_t> dividend;
    for (const auto& [p, k] : a.lamps) dividend.emplace(m > 0 ? p + m : p, k);

    if (!dividend.empty()) {
      const std::int64_t low = dividend.begin()->first;
      std::map<std::int64_t, std::int64_t> quotient;
      while (!dividend.empty()) {
        const auto top = *dividend.rbegin();
        const std::int64_t qexp = top.first - mprime;
        if (qexp < low) return std::nullopt;  // inexact division
        quotient[qexp] += top.second;
        dividend.erase(top.first);
        auto it = dividend.find(qexp);
        if (it == dividend.end()) {
          dividend.emplace(qexp, -top.second);
        } else {
          it->second -= top.second;
          if (it->second == 0) dividend.erase(it);
        }
      }
      for (const auto& [p, k] : quotient)
        if (k != 0) candidate.lamps.emplace(p, k);
    }
  }

  if (M.multiply(candidate, candidate) == a) return candidate;
  return std::nullopt;
}

/// Unique x with x u^{-1} v w^{-1} = 1, namely x = w v^{-1} u.
inline Lamplighter lamplighter_eq_solve(const Lamplighter& u, const Lamplighter& v,
                                        const Lamplighter& w) {
  LamplighterGroup M;
  return M.multiply(M.multiply(w, M.invert(v)), u);
}

}  // namespace magnusforge
