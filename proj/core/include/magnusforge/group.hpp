#pragma once

#include <concepts>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "magnusforge/keys.hpp"

namespace magnusforge {

/// A group is a value type exposing exact arithmetic on an associated
/// Element type. canonical_key returns a deterministic byte string with
/// canonical_key(x) == canonical_key(y) iff the elements are equal, which
/// is what BFS visited sets and serialization order are built on.
template <typename G>
concept GroupLike = requires(const G& g, const typename G::Element& a,
                             const typename G::Element& b) {
  typename G::Element;
  { g.identity() } -> std::same_as<typename G::Element>;
  { g.multiply(a, b) } -> std::same_as<typename G::Element>;
  { g.invert(a) } -> std::same_as<typename G::Element>;
  { g.equal(a, b) } -> std::same_as<bool>;
  { g.canonical_key(a) } -> std::same_as<std::string>;
  { g.describe(a) } -> std::same_as<std::string>;
};

template <GroupLike G>
bool is_identity(const G& g, const typename G::Element& e) {
  return g.equal(e, g.identity());
}

template <GroupLike G>
typename G::Element power(const G& g, typename G::Element base, long long exp) {
  if (exp < 0) {
    base = g.invert(base);
    exp = -exp;
  }
  auto acc = g.identity();
  for (long long k = 0; k < exp; ++k) acc = g.multiply(acc, base);
  return acc;
}

// ---------------------------------------------------------------------------
// Z/n, residues in [0, n)

class CyclicGroup {
 public:
  using Element = std::int64_t;

  explicit CyclicGroup(std::int64_t n) : n_(n) {
    if (n <= 0) throw std::invalid_argument("CyclicGroup: order must be positive");
  }

  std::int64_t order() const { return n_; }

  Element identity() const { return 0; }
  Element multiply(const Element& a, const Element& b) const { return (a + b) % n_; }
  Element invert(const Element& a) const { return a == 0 ? 0 : n_ - a; }
  bool equal(const Element& a, const Element& b) const { return a == b; }

  Element generator() const { return 1 % n_; }
  Element from_int(std::int64_t v) const { return ((v % n_) + n_) % n_; }

  std::string canonical_key(const Element& a) const {
    std::string out;
    keys::append_i64(out, a);
    return out;
  }

  std::string describe(const Element& a) const { return std::to_string(a); }

  nlohmann::json to_json(const Element& a) const { return a; }
  Element from_json(const nlohmann::json& j) const { return from_int(j.get<std::int64_t>()); }

 private:
  std::int64_t n_;
};

// ---------------------------------------------------------------------------
// Z with additive notation

class IntegerGroup {
 public:
  using Element = std::int64_t;

  Element identity() const { return 0; }
  Element multiply(const Element& a, const Element& b) const { return a + b; }
  Element invert(const Element& a) const { return -a; }
  bool equal(const Element& a, const Element& b) const { return a == b; }

  std::string canonical_key(const Element& a) const {
    std::string out;
    keys::append_i64(out, a);
    return out;
  }

  std::string describe(const Element& a) const { return std::to_string(a); }

  nlohmann::json to_json(const Element& a) const { return a; }
  Element from_json(const nlohmann::json& j) const { return j.get<std::int64_t>(); }
};

// ---------------------------------------------------------------------------
// Free abelian group with an integer-indexed basis. Elements are sparse
// coordinate maps; zero coordinates are never stored, so the map itself is
// the canonical form.

class FreeAbelianGroup {
 public:
  using Element = std::map<std::int32_t, std::int64_t>;

  explicit FreeAbelianGroup(std::string symbol = "a") : symbol_(std::move(symbol)) {}

  Element identity() const { return {}; }

  Element multiply(const Element& a, const Element& b) const {
    Element out = a;
    for (const auto& [i, v] : b) {
      auto it = out.find(i);
      if (it == out.end()) {
        out.emplace(i, v);
      } else {
        it->second += v;
        if (it->second == 0) out.erase(it);
      }
    }
    return out;
  }

  Element invert(const Element& a) const {
    Element out;
    for (const auto& [i, v] : a) out.emplace(i, -v);
    return out;
  }

  bool equal(const Element& a, const Element& b) const { return a == b; }

  Element basis(std::int32_t index, std::int64_t exponent = 1) const {
    Element out;
    if (exponent != 0) out.emplace(index, exponent);
    return out;
  }

  std::string canonical_key(const Element& a) const {
    std::string out;
    keys::append_u32(out, static_cast<std::uint32_t>(a.size()));
    for (const auto& [i, v] : a) {
      keys::append_i64(out, i);
      keys::append_i64(out, v);
    }
    return out;
  }

  std::string describe(const Element& a) const {
    if (a.empty()) return "1";
    std::string out;
    for (const auto& [i, v] : a) {
      if (!out.empty()) out += ' ';
      out += symbol_ + std::to_string(i);
      if (v != 1) out += "^" + std::to_string(v);
    }
    return out;
  }

  nlohmann::json to_json(const Element& a) const {
    nlohmann::json coords = nlohmann::json::object();
    for (const auto& [i, v] : a) coords[std::to_string(i)] = v;
    return nlohmann::json{{"coords", coords}};
  }

  Element from_json(const nlohmann::json& j) const {
    Element out;
    for (const auto& [k, v] : j.at("coords").items()) {
      const std::int64_t val = v.get<std::int64_t>();
      if (val != 0) out.emplace(static_cast<std::int32_t>(std::stol(k)), val);
    }
    return out;
  }

 private:
  std::string symbol_;
};

// ---------------------------------------------------------------------------
// Symmetric group on {0, ..., n-1}, elements stored in one-line notation.

class SymmetricGroup {
 public:
  using Element = std::vector<std::uint8_t>;

  explicit SymmetricGroup(int n) : n_(n) {
    if (n <= 0 || n > 64) throw std::invalid_argument("SymmetricGroup: degree out of range");
  }

  int degree() const { return n_; }

  Element identity() const {
    Element e(static_cast<std::size_t>(n_));
    std::iota(e.begin(), e.end(), static_cast<std::uint8_t>(0));
    return e;
  }

  // (a*b)(x) = a(b(x)); b acts first.
  Element multiply(const Element& a, const Element& b) const {
    check(a);
    check(b);
    Element out(static_cast<std::size_t>(n_));
    for (int x = 0; x < n_; ++x) out[static_cast<std::size_t>(x)] = a[b[static_cast<std::size_t>(x)]];
    return out;
  }

  Element invert(const Element& a) const {
    check(a);
    Element out(static_cast<std::size_t>(n_));
    for (int x = 0; x < n_; ++x) out[a[static_cast<std::size_t>(x)]] = static_cast<std::uint8_t>(x);
    return out;
  }

  bool equal(const Element& a, const Element& b) const { return a == b; }

  Element from_images(const std::vector<int>& images) const {
    if (static_cast<int>(images.size()) != n_)
      throw std::invalid_argument("SymmetricGroup: wrong image count");
    Element out;
    out.reserve(images.size());
    std::vector<bool> seen(static_cast<std::size_t>(n_), false);
    for (int v : images) {
      if (v < 0 || v >= n_ || seen[static_cast<std::size_t>(v)])
        throw std::invalid_argument("SymmetricGroup: not a permutation");
      seen[static_cast<std::size_t>(v)] = true;
      out.push_back(static_cast<std::uint8_t>(v));
    }
    return out;
  }

  std::string canonical_key(const Element& a) const {
    std::string out;
    keys::append_u32(out, static_cast<std::uint32_t>(a.size()));
    out.append(reinterpret_cast<const char*>(a.data()), a.size());
    return out;
  }

  std::string describe(const Element& a) const {
    std::string out = "[";
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (k > 0) out += ',';
      out += std::to_string(static_cast<int>(a[k]));
    }
    out += ']';
    return out;
  }

  nlohmann::json to_json(const Element& a) const {
    nlohmann::json arr = nlohmann::json::array();
    for (auto v : a) arr.push_back(static_cast<int>(v));
    return arr;
  }

  Element from_json(const nlohmann::json& j) const {
    return from_images(j.get<std::vector<int>>());
  }

 private:
  void check(const Element& a) const {
    if (static_cast<int>(a.size()) != n_)
      throw std::invalid_argument("SymmetricGroup: element degree mismatch");
  }

  int n_;
};

static_assert(GroupLike<CyclicGroup>);
static_assert(GroupLike<IntegerGroup>);
static_assert(GroupLike<FreeAbelianGroup>);
static_assert(GroupLike<SymmetricGroup>);

}  // namespace magnusforge
