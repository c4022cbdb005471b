#include "magnusforge/finite_group.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace magnusforge {

namespace {

std::vector<std::vector<std::uint8_t>> all_permutations(int n) {
  std::vector<std::uint8_t> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), static_cast<std::uint8_t>(0));
  std::vector<std::vector<std::uint8_t>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

void FiniteGroup::finish_init() {
  inverse_.assign(size_, -1);
  for (std::size_t a = 0; a < size_; ++a) {
    for (std::size_t b = 0; b < size_; ++b) {
      if (table_[a * size_ + b] == id_ && table_[b * size_ + a] == id_) {
        inverse_[a] = static_cast<Element>(b);
        break;
      }
    }
    if (inverse_[a] < 0) throw std::invalid_argument("FiniteGroup: element without inverse");
  }
  if (names_.size() != size_) {
    names_.resize(size_);
    for (std::size_t a = 0; a < size_; ++a)
      if (names_[a].empty()) names_[a] = "e" + std::to_string(a);
  }
}

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n <= 0) throw std::invalid_argument("FiniteGroup::cyclic: order must be positive");
  FiniteGroup g;
  g.size_ = static_cast<std::size_t>(n);
  g.id_ = 0;
  g.table_.resize(g.size_ * g.size_);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      g.table_[static_cast<std::size_t>(a) * g.size_ + static_cast<std::size_t>(b)] =
          static_cast<Element>((a + b) % n);
  g.names_.resize(g.size_);
  for (int a = 0; a < n; ++a) g.names_[static_cast<std::size_t>(a)] = std::to_string(a);
  if (n > 1) g.gens_ = {1};
  g.finish_init();
  return g;
}

FiniteGroup FiniteGroup::symmetric(int n) {
  if (n <= 0 || n > 8) throw std::invalid_argument("FiniteGroup::symmetric: degree out of range");
  SymmetricGroup sym(n);
  const auto perms = all_permutations(n);
  FiniteGroup g;
  g.size_ = perms.size();
  std::unordered_map<std::string, Element> idx;
  for (std::size_t k = 0; k < perms.size(); ++k)
    idx.emplace(sym.canonical_key(perms[k]), static_cast<Element>(k));
  g.id_ = idx.at(sym.canonical_key(sym.identity()));
  g.table_.resize(g.size_ * g.size_);
  for (std::size_t a = 0; a < g.size_; ++a)
    for (std::size_t b = 0; b < g.size_; ++b)
      g.table_[a * g.size_ + b] = idx.at(sym.canonical_key(sym.multiply(perms[a], perms[b])));
  g.names_.resize(g.size_);
  for (std::size_t a = 0; a < g.size_; ++a) g.names_[a] = sym.describe(perms[a]);
  if (n >= 2) {
    // A transposition and an n-cycle.
    std::vector<int> tr(static_cast<std::size_t>(n));
    std::iota(tr.begin(), tr.end(), 0);
    std::swap(tr[0], tr[1]);
    std::vector<int> cyc(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) cyc[static_cast<std::size_t>(k)] = (k + 1) % n;
    g.gens_.push_back(idx.at(sym.canonical_key(sym.from_images(tr))));
    if (n >= 3) g.gens_.push_back(idx.at(sym.canonical_key(sym.from_images(cyc))));
  }
  g.finish_init();
  return g;
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  FiniteGroup out;
  const std::size_t ng = g.size_;
  const std::size_t nh = h.size_;
  out.size_ = ng * nh;
  out.id_ = static_cast<Element>(static_cast<std::size_t>(g.id_) * nh +
                                 static_cast<std::size_t>(h.id_));
  out.table_.resize(out.size_ * out.size_);
  for (std::size_t a = 0; a < out.size_; ++a) {
    for (std::size_t b = 0; b < out.size_; ++b) {
      const auto ga = static_cast<Element>(a / nh);
      const auto ha = static_cast<Element>(a % nh);
      const auto gb = static_cast<Element>(b / nh);
      const auto hb = static_cast<Element>(b % nh);
      out.table_[a * out.size_ + b] = static_cast<Element>(
          static_cast<std::size_t>(g.multiply(ga, gb)) * nh +
          static_cast<std::size_t>(h.multiply(ha, hb)));
    }
  }
  out.names_.resize(out.size_);
  for (std::size_t a = 0; a < out.size_; ++a) {
    out.names_[a] = "(" + g.names_[a / nh] + "," + h.names_[a % nh] + ")";
  }
  for (Element e : g.gens_)
    out.gens_.push_back(static_cast<Element>(static_cast<std::size_t>(e) * nh +
                                             static_cast<std::size_t>(h.id_)));
  for (Element e : h.gens_)
    out.gens_.push_back(static_cast<Element>(static_cast<std::size_t>(g.id_) * nh +
                                             static_cast<std::size_t>(e)));
  out.finish_init();
  return out;
}

FiniteGroup FiniteGroup::from_table_json(const nlohmann::json& j) {
  FiniteGroup g;
  const int n = j.at("order").get<int>();
  if (n <= 0 || n > 4096) throw std::invalid_argument("FiniteGroup: unsupported order");
  g.size_ = static_cast<std::size_t>(n);
  const auto& rows = j.at("table");
  if (static_cast<int>(rows.size()) != n)
    throw std::invalid_argument("FiniteGroup: table must have `order` rows");
  g.table_.resize(g.size_ * g.size_);
  for (int a = 0; a < n; ++a) {
    const auto& row = rows.at(static_cast<std::size_t>(a));
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("FiniteGroup: table row of wrong width");
    for (int b = 0; b < n; ++b) {
      const int v = row.at(static_cast<std::size_t>(b)).get<int>();
      if (v < 0 || v >= n) throw std::invalid_argument("FiniteGroup: table entry out of range");
      g.table_[static_cast<std::size_t>(a) * g.size_ + static_cast<std::size_t>(b)] =
          static_cast<Element>(v);
    }
  }
  // Locate the two-sided identity.
  int id = -1;
  for (int a = 0; a < n && id < 0; ++a) {
    bool ok = true;
    for (int b = 0; b < n && ok; ++b) {
      ok = g.table_[static_cast<std::size_t>(a) * g.size_ + static_cast<std::size_t>(b)] == b &&
           g.table_[static_cast<std::size_t>(b) * g.size_ + static_cast<std::size_t>(a)] == b;
    }
    if (ok) id = a;
  }
  if (id < 0) throw std::invalid_argument("FiniteGroup: table has no identity");
  g.id_ = static_cast<Element>(id);
  // Associativity makes the table a group once identity and inverses exist.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const Element ab = g.table_[static_cast<std::size_t>(a) * g.size_ +
                                    static_cast<std::size_t>(b)];
        const Element bc = g.table_[static_cast<std::size_t>(b) * g.size_ +
                                    static_cast<std::size_t>(c)];
        if (g.table_[static_cast<std::size_t>(ab) * g.size_ + static_cast<std::size_t>(c)] !=
            g.table_[static_cast<std::size_t>(a) * g.size_ + static_cast<std::size_t>(bc)])
          throw std::invalid_argument("FiniteGroup: table is not associative");
      }
  if (j.contains("names")) g.names_ = j.at("names").get<std::vector<std::string>>();
  if (j.contains("gens")) {
    for (int v : j.at("gens").get<std::vector<int>>()) {
      if (v < 0 || v >= n) throw std::invalid_argument("FiniteGroup: generator out of range");
      g.gens_.push_back(static_cast<Element>(v));
    }
  }
  g.finish_init();
  return g;
}

std::vector<FiniteGroup::Element> FiniteGroup::elements() const {
  std::vector<Element> out(size_);
  std::iota(out.begin(), out.end(), 0);
  return out;
}

nlohmann::json FiniteGroup::table_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t a = 0; a < size_; ++a) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t b = 0; b < size_; ++b) row.push_back(table_[a * size_ + b]);
    rows.push_back(row);
  }
  return nlohmann::json{{"order", size_}, {"table", rows}, {"names", names_}, {"gens", gens_}};
}

FiniteMetric finite_word_metric(const FiniteGroup& group,
                                const std::vector<FiniteGroup::Element>& gens) {
  if (group.order() > 1 && gens.empty())
    throw std::invalid_argument("finite_word_metric: generating set required");
  FiniteMetric m;
  m.group = &group;
  m.gens = gens;
  const auto ball = enumerate_ball(group, std::span<const FiniteGroup::Element>(gens),
                                   group.order());
  if (static_cast<int>(ball.elements.size()) != group.order())
    throw std::invalid_argument("finite_word_metric: set does not generate the group");
  m.lengths.assign(static_cast<std::size_t>(group.order()), 0);
  for (std::size_t k = 0; k < ball.elements.size(); ++k) {
    m.lengths[static_cast<std::size_t>(ball.elements[k])] = ball.distance[k];
    m.max_length = std::max<long long>(m.max_length, ball.distance[k]);
  }
  m.growth = growth_report(m.lengths, static_cast<int>(m.max_length));
  return m;
}

}  // namespace magnusforge
