#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "magnusforge/group.hpp"

namespace magnusforge {

/// Restricted wreath product A wr B: pairs (f, b) where f is a finite-support
/// function B -> A and b in B, multiplied by
///   (f1, b1)(f2, b2) = (f1 * (b1 o f2), b1 b2),   (b o f)(x) = f(x b).
/// Support entries are keyed by the canonical key of the support point and
/// never hold identity values, so equality is structural.
template <GroupLike A, GroupLike B>
class WreathProduct {
 public:
  struct Element {
    std::map<std::string, std::pair<typename B::Element, typename A::Element>> base;
    typename B::Element top;
  };

  WreathProduct(A base_group, B top_group)
      : a_(std::move(base_group)), b_(std::move(top_group)) {}

  const A& base_group() const { return a_; }
  const B& top_group() const { return b_; }

  Element identity() const { return Element{{}, b_.identity()}; }

  Element from_top(const typename B::Element& b) const { return Element{{}, b}; }

  // Function supported at `point` with the given value; trivial values give
  // the identity function.
  Element from_base_point(const typename B::Element& point,
                          const typename A::Element& value) const {
    Element e{{}, b_.identity()};
    insert(e, point, value);
    return e;
  }

  Element multiply(const Element& u, const Element& v) const {
    Element out{u.base, b_.multiply(u.top, v.top)};
    // (u.top o v.base) has its support translated by the inverse of u.top.
    const auto shift = b_.invert(u.top);
    for (const auto& [key, entry] : v.base) {
      insert(out, b_.multiply(entry.first, shift), entry.second);
    }
    return out;
  }

  Element invert(const Element& u) const {
    Element out{{}, b_.invert(u.top)};
    for (const auto& [key, entry] : u.base) {
      insert(out, b_.multiply(entry.first, u.top), a_.invert(entry.second));
    }
    return out;
  }

  bool equal(const Element& u, const Element& v) const {
    if (!b_.equal(u.top, v.top) || u.base.size() != v.base.size()) return false;
    auto it = u.base.begin();
    auto jt = v.base.begin();
    for (; it != u.base.end(); ++it, ++jt) {
      if (it->first != jt->first || !a_.equal(it->second.second, jt->second.second))
        return false;
    }
    return true;
  }

  typename A::Element base_value_at(const Element& u, const typename B::Element& point) const {
    auto it = u.base.find(b_.canonical_key(point));
    return it == u.base.end() ? a_.identity() : it->second.second;
  }

  std::size_t support_size(const Element& u) const { return u.base.size(); }

  std::string canonical_key(const Element& u) const {
    std::string out;
    keys::append_u32(out, static_cast<std::uint32_t>(u.base.size()));
    for (const auto& [key, entry] : u.base) {
      keys::append_bytes(out, key);
      keys::append_bytes(out, a_.canonical_key(entry.second));
    }
    keys::append_bytes(out, b_.canonical_key(u.top));
    return out;
  }

  std::string describe(const Element& u) const {
    std::string out = "{";
    bool first = true;
    for (const auto& [key, entry] : u.base) {
      if (!first) out += ", ";
      first = false;
      out += b_.describe(entry.first) + ": " + a_.describe(entry.second);
    }
    out += "} . " + b_.describe(u.top);
    return out;
  }

 private:
  void insert(Element& e, const typename B::Element& point,
              const typename A::Element& value) const {
    if (a_.equal(value, a_.identity())) return;
    const std::string key = b_.canonical_key(point);
    auto it = e.base.find(key);
    if (it == e.base.end()) {
      e.base.emplace(key, std::make_pair(point, value));
    } else {
      auto merged = a_.multiply(it->second.second, value);
      if (a_.equal(merged, a_.identity())) {
        e.base.erase(it);
      } else {
        it->second.second = std::move(merged);
      }
    }
  }

  A a_;
  B b_;
};

}  // namespace magnusforge
