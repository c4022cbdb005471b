#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include <json.hpp>

#include "magnusforge/group.hpp"

namespace magnusforge {

/// The two-sided eventually-constant fragment of the unrestricted wreath
/// product V Wr Z. An element is a function Z -> V equal to `left` far to
/// the left, `right` far to the right, finitely many exceptions in between,
/// plus an integer shift. The baseline convention is left for n <= 0 and
/// right for n > 0; exceptions never repeat the baseline value, so the
/// representation is a normal form. The fragment contains all step
/// generators and the shift and is closed under multiplication, inversion
/// and conjugation by shift powers, which keeps equality decidable.
template <GroupLike V>
class StepWreath {
 public:
  struct Element {
    typename V::Element left;
    typename V::Element right;
    std::map<std::int64_t, typename V::Element> exceptions;
    std::int64_t shift = 0;
  };

  explicit StepWreath(V values) : v_(std::move(values)) {}

  const V& value_group() const { return v_; }

  Element identity() const {
    return Element{v_.identity(), v_.identity(), {}, 0};
  }

  Element shift_generator(std::int64_t e = 1) const {
    Element t = identity();
    t.shift = e;
    return t;
  }

  // Step function: 1 for n <= 0, `high` for n > 0 (shift zero).
  Element step(const typename V::Element& high) const {
    return Element{v_.identity(), high, {}, 0};
  }

  Element from_point(std::int64_t n, const typename V::Element& value) const {
    Element e = identity();
    set_value(e, n, value);
    return e;
  }

  typename V::Element value_at(const Element& u, std::int64_t n) const {
    auto it = u.exceptions.find(n);
    if (it != u.exceptions.end()) return it->second;
    return n <= 0 ? u.left : u.right;
  }

  Element multiply(const Element& u, const Element& v) const {
    Element out;
    out.left = v_.multiply(u.left, v.left);
    out.right = v_.multiply(u.right, v.right);
    out.shift = u.shift + v.shift;
    std::set<std::int64_t> candidates;
    for (const auto& [n, val] : u.exceptions) candidates.insert(n);
    for (const auto& [n, val] : v.exceptions) candidates.insert(n - u.shift);
    add_crossover(candidates, u.shift);
    for (std::int64_t n : candidates)
      set_value(out, n, v_.multiply(value_at(u, n), value_at(v, n + u.shift)));
    return out;
  }

  Element invert(const Element& u) const {
    Element out;
    out.left = v_.invert(u.left);
    out.right = v_.invert(u.right);
    out.shift = -u.shift;
    std::set<std::int64_t> candidates;
    for (const auto& [n, val] : u.exceptions) candidates.insert(n + u.shift);
    add_crossover(candidates, -u.shift);
    for (std::int64_t n : candidates)
      set_value(out, n, v_.invert(value_at(u, n - u.shift)));
    return out;
  }

  // t^e u t^{-e}: translates the base function, keeps limits and shift.
  Element conj_by_shift(std::int64_t e, const Element& u) const {
    Element out;
    out.left = u.left;
    out.right = u.right;
    out.shift = u.shift;
    std::set<std::int64_t> candidates;
    for (const auto& [n, val] : u.exceptions) candidates.insert(n - e);
    add_crossover(candidates, e);
    for (std::int64_t n : candidates) set_value(out, n, value_at(u, n + e));
    return out;
  }

  bool equal(const Element& u, const Element& v) const {
    if (u.shift != v.shift || u.exceptions.size() != v.exceptions.size()) return false;
    if (!v_.equal(u.left, v.left) || !v_.equal(u.right, v.right)) return false;
    auto it = u.exceptions.begin();
    auto jt = v.exceptions.begin();
    for (; it != u.exceptions.end(); ++it, ++jt) {
      if (it->first != jt->first || !v_.equal(it->second, jt->second)) return false;
    }
    return true;
  }

  std::string canonical_key(const Element& u) const {
    std::string out;
    keys::append_i64(out, u.shift);
    keys::append_bytes(out, v_.canonical_key(u.left));
    keys::append_bytes(out, v_.canonical_key(u.right));
    keys::append_u32(out, static_cast<std::uint32_t>(u.exceptions.size()));
    for (const auto& [n, val] : u.exceptions) {
      keys::append_i64(out, n);
      keys::append_bytes(out, v_.canonical_key(val));
    }
    return out;
  }

  std::string describe(const Element& u) const {
    std::string out = "step[l=" + v_.describe(u.left) + ", r=" + v_.describe(u.right) + "; {";
    bool first = true;
    for (const auto& [n, val] : u.exceptions) {
      if (!first) out += ", ";
      first = false;
      out += std::to_string(n) + ": " + v_.describe(val);
    }
    out += "}; t^" + std::to_string(u.shift) + "]";
    return out;
  }

  nlohmann::json to_json(const Element& u) const {
    nlohmann::json exc = nlohmann::json::object();
    for (const auto& [n, val] : u.exceptions) exc[std::to_string(n)] = v_.to_json(val);
    return nlohmann::json{{"left", v_.to_json(u.left)},
                          {"right", v_.to_json(u.right)},
                          {"exc", exc},
                          {"shift", u.shift}};
  }

  Element from_json(const nlohmann::json& j) const {
    Element out;
    out.left = v_.from_json(j.at("left"));
    out.right = v_.from_json(j.at("right"));
    out.shift = j.at("shift").get<std::int64_t>();
    for (const auto& [n, val] : j.at("exc").items())
      set_value(out, std::stoll(n), v_.from_json(val));
    return out;
  }

 private:
  // Positions where "n <= 0" and "n + e <= 0" disagree.
  static void add_crossover(std::set<std::int64_t>& candidates, std::int64_t e) {
    if (e > 0) {
      for (std::int64_t n = -e + 1; n <= 0; ++n) candidates.insert(n);
    } else if (e < 0) {
      for (std::int64_t n = 1; n <= -e; ++n) candidates.insert(n);
    }
  }

  void set_value(Element& e, std::int64_t n, const typename V::Element& value) const {
    const typename V::Element& baseline = n <= 0 ? e.left : e.right;
    if (v_.equal(value, baseline)) {
      e.exceptions.erase(n);
    } else {
      e.exceptions[n] = value;
    }
  }

  V v_;
};

}  // namespace magnusforge
