#pragma once

#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "magnusforge/group.hpp"

namespace magnusforge {

using BigInt = boost::multiprecision::cpp_int;

inline nlohmann::json bigint_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() &&
      v <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(v);
  }
  return v.str();
}

inline BigInt bigint_from_json(const nlohmann::json& j) {
  if (j.is_string()) return BigInt(j.get<std::string>());
  return BigInt(j.get<std::int64_t>());
}

/// Exact arithmetic in the integral group ring ZH. Elements are sparse term
/// maps keyed by the canonical key of the group element; zero coefficients
/// are dropped eagerly so the representation is canonical. Coefficients are
/// arbitrary-precision integers: convolution products multiply norms and
/// silent overflow would corrupt every bound verified on top of this ring.
template <GroupLike G>
class GroupRing {
 public:
  class Elem {
   public:
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    // (element, coefficient) pairs ordered by canonical key.
    const std::map<std::string, std::pair<typename G::Element, BigInt>>& terms() const {
      return terms_;
    }

   private:
    friend class GroupRing;
    std::map<std::string, std::pair<typename G::Element, BigInt>> terms_;
    const GroupRing* ring_ = nullptr;
  };

  explicit GroupRing(const G& group) : group_(&group) {}

  const G& group() const { return *group_; }

  Elem zero() const {
    Elem e;
    e.ring_ = this;
    return e;
  }

  Elem one() const { return monomial(group_->identity(), 1); }

  Elem monomial(const typename G::Element& h, BigInt coef) const {
    Elem e = zero();
    if (coef != 0) e.terms_.emplace(group_->canonical_key(h), std::make_pair(h, std::move(coef)));
    return e;
  }

  Elem add(const Elem& u, const Elem& v) const {
    check(u);
    check(v);
    Elem out = u;
    for (const auto& [key, term] : v.terms_) accumulate(out, key, term.first, term.second);
    return out;
  }

  Elem negate(const Elem& u) const {
    check(u);
    Elem out = u;
    for (auto& [key, term] : out.terms_) term.second = -term.second;
    return out;
  }

  Elem subtract(const Elem& u, const Elem& v) const { return add(u, negate(v)); }

  Elem scalar_mul(const BigInt& c, const Elem& u) const {
    check(u);
    Elem out = zero();
    if (c == 0) return out;
    out.terms_ = u.terms_;
    for (auto& [key, term] : out.terms_) term.second *= c;
    return out;
  }

  // Convolution product.
  Elem mul(const Elem& u, const Elem& v) const {
    check(u);
    check(v);
    Elem out = zero();
    for (const auto& [ku, tu] : u.terms_) {
      for (const auto& [kv, tv] : v.terms_) {
        auto prod = group_->multiply(tu.first, tv.first);
        accumulate(out, group_->canonical_key(prod), prod, tu.second * tv.second);
      }
    }
    return out;
  }

  // Left translate h*u; norm-preserving.
  Elem translate_left(const typename G::Element& h, const Elem& u) const {
    return mul(monomial(h, 1), u);
  }

  Elem translate_right(const Elem& u, const typename G::Element& h) const {
    return mul(u, monomial(h, 1));
  }

  BigInt norm(const Elem& u) const {
    check(u);
    BigInt acc = 0;
    for (const auto& [key, term] : u.terms_) acc += abs(term.second);
    return acc;
  }

  bool equal(const Elem& u, const Elem& v) const {
    check(u);
    check(v);
    if (u.terms_.size() != v.terms_.size()) return false;
    auto it = u.terms_.begin();
    auto jt = v.terms_.begin();
    for (; it != u.terms_.end(); ++it, ++jt) {
      if (it->first != jt->first || it->second.second != jt->second.second) return false;
    }
    return true;
  }

  bool divisible(const Elem& u, const BigInt& d) const {
    check(u);
    if (d == 0) throw std::invalid_argument("GroupRing: division by zero");
    for (const auto& [key, term] : u.terms_)
      if (term.second % d != 0) return false;
    return true;
  }

  Elem divide_exact(const Elem& u, const BigInt& d) const {
    if (!divisible(u, d)) throw std::invalid_argument("GroupRing: inexact division");
    Elem out = u;
    for (auto& [key, term] : out.terms_) term.second /= d;
    return out;
  }

  nlohmann::json to_json(const Elem& u) const {
    check(u);
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [key, term] : u.terms_) {
      arr.push_back(nlohmann::json{{"elem", group_->to_json(term.first)},
                                   {"coef", bigint_to_json(term.second)}});
    }
    return nlohmann::json{{"terms", arr}};
  }

  Elem from_json(const nlohmann::json& j) const {
    Elem out = zero();
    for (const auto& t : j.at("terms")) {
      auto h = group_->from_json(t.at("elem"));
      accumulate(out, group_->canonical_key(h), h, bigint_from_json(t.at("coef")));
    }
    return out;
  }

 private:
  void check(const Elem& u) const {
    if (u.ring_ != this) throw std::invalid_argument("GroupRing: group mismatch");
  }

  static void accumulate(Elem& out, const std::string& key, const typename G::Element& h,
                         const BigInt& coef) {
    if (coef == 0) return;
    auto it = out.terms_.find(key);
    if (it == out.terms_.end()) {
      out.terms_.emplace(key, std::make_pair(h, coef));
    } else {
      it->second.second += coef;
      if (it->second.second == 0) out.terms_.erase(it);
    }
  }

  const G* group_;
};

}  // namespace magnusforge
