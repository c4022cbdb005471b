#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "magnusforge/group.hpp"
#include "magnusforge/metrics.hpp"

namespace magnusforge {

/// Finite group backed by a multiplication table; elements are indices into
/// the table. Used wherever a concrete small group with decidable everything
/// is needed (cyclic, symmetric, direct products, user-supplied tables).
class FiniteGroup {
 public:
  using Element = std::int32_t;

  static FiniteGroup cyclic(int n);
  static FiniteGroup symmetric(int n);
  static FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);

  // {"order": n, "table": [[...], ...], "names": [...], "gens": [...]}
  static FiniteGroup from_table_json(const nlohmann::json& j);

  int order() const { return static_cast<int>(size_); }

  Element identity() const { return id_; }
  Element multiply(const Element& a, const Element& b) const {
    check(a);
    check(b);
    return table_[static_cast<std::size_t>(a) * size_ + static_cast<std::size_t>(b)];
  }
  Element invert(const Element& a) const {
    check(a);
    return inverse_[static_cast<std::size_t>(a)];
  }
  bool equal(const Element& a, const Element& b) const { return a == b; }

  std::string canonical_key(const Element& a) const {
    std::string out;
    keys::append_i64(out, a);
    return out;
  }

  std::string describe(const Element& a) const {
    check(a);
    return names_[static_cast<std::size_t>(a)];
  }

  const std::vector<Element>& default_generators() const { return gens_; }
  std::vector<Element> elements() const;

  nlohmann::json to_json(const Element& a) const { return a; }
  Element from_json_element(const nlohmann::json& j) const {
    Element e = j.get<Element>();
    check(e);
    return e;
  }
  Element from_json(const nlohmann::json& j) const { return from_json_element(j); }

  nlohmann::json table_json() const;

 private:
  FiniteGroup() = default;
  void finish_init();
  void check(Element a) const {
    if (a < 0 || static_cast<std::size_t>(a) >= size_)
      throw std::invalid_argument("FiniteGroup: element index out of range");
  }

  std::size_t size_ = 0;
  Element id_ = 0;
  std::vector<Element> table_;    // row-major multiplication table
  std::vector<Element> inverse_;
  std::vector<std::string> names_;
  std::vector<Element> gens_;
};

static_assert(GroupLike<FiniteGroup>);

/// Word length on a finite group over a fixed generating set, computed once
/// by BFS, together with the smallest exponential base fitting every ball.
struct FiniteMetric {
  const FiniteGroup* group = nullptr;
  std::vector<FiniteGroup::Element> gens;
  std::vector<long long> lengths;  // indexed by element
  long long max_length = 0;
  GrowthReport growth;

  long long operator()(FiniteGroup::Element e) const {
    return lengths.at(static_cast<std::size_t>(e));
  }
};

FiniteMetric finite_word_metric(const FiniteGroup& group,
                                const std::vector<FiniteGroup::Element>& gens);

}  // namespace magnusforge
