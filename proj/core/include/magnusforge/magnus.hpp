#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "magnusforge/group.hpp"
#include "magnusforge/group_ring.hpp"
#include "magnusforge/metrics.hpp"
#include "magnusforge/word.hpp"
#include "magnusforge/wreath.hpp"

namespace magnusforge {

/// Setup for the generalized Magnus homomorphism x_i -> a_i^{l_i} h_i with
/// l_i = max(l(h_i), 1). The standard homomorphism is the special case of
/// the length function that is 1 on every nontrivial element.
template <GroupLike G>
struct MagnusSetup {
  const G* group;
  GroupRing<G> ring;
  std::map<int, typename G::Element> generators;          // i -> h_i
  std::function<long long(const typename G::Element&)> length;  // l on the target group
  std::map<int, long long> l;                             // i -> l_i

  MagnusSetup(const G& g, std::map<int, typename G::Element> gens,
              std::function<long long(const typename G::Element&)> len)
      : group(&g), ring(g), generators(std::move(gens)), length(std::move(len)) {
    for (const auto& [i, h] : generators) l[i] = std::max<long long>(length(h), 1);
  }

  static MagnusSetup standard(const G& g, std::map<int, typename G::Element> gens) {
    const G* gp = &g;
    return MagnusSetup(g, std::move(gens), [gp](const typename G::Element& h) -> long long {
      return gp->equal(h, gp->identity()) ? 0 : 1;
    });
  }
};

/// Image mu(f) = w g in module form: w maps each generator index to the
/// ring element t_i, and g is the top component.
template <GroupLike G>
struct MagnusImage {
  std::map<int, typename GroupRing<G>::Elem> w;  // only nonzero t_i kept
  typename G::Element top;
};

template <GroupLike G>
MagnusImage<G> magnus_image(const MagnusSetup<G>& setup, const Word& f) {
  MagnusImage<G> img;
  img.top = setup.group->identity();
  for (const Word::Letter& letter : f.letters()) {
    const auto gen_it = setup.generators.find(letter.index);
    if (gen_it == setup.generators.end())
      throw std::invalid_argument("magnus_image: no generator for x" +
                                  std::to_string(letter.index));
    const auto& h = gen_it->second;
    const BigInt li = setup.l.at(letter.index);
    typename GroupRing<G>::Elem delta =
        letter.sign > 0
            ? setup.ring.monomial(img.top, li)
            : setup.ring.monomial(setup.group->multiply(img.top, setup.group->invert(h)), -li);
    auto it = img.w.find(letter.index);
    if (it == img.w.end()) {
      img.w.emplace(letter.index, std::move(delta));
    } else {
      it->second = setup.ring.add(it->second, delta);
    }
    img.top = setup.group->multiply(
        img.top, letter.sign > 0 ? h : setup.group->invert(h));
  }
  std::erase_if(img.w, [](const auto& kv) { return kv.second.is_zero(); });
  return img;
}

template <GroupLike G>
BigInt image_norm(const MagnusSetup<G>& setup, const MagnusImage<G>& img) {
  BigInt acc = 0;
  for (const auto& [i, t] : img.w) acc += setup.ring.norm(t);
  return acc;
}

/// Divisibility t_i = l_i s_i plus the ring identity
/// sum_i s_i (h_i - 1) = g - 1; returns the witnesses s_i.
template <GroupLike G>
struct RsCheckResult {
  bool ok = false;
  std::map<int, typename GroupRing<G>::Elem> s;
};

template <GroupLike G>
RsCheckResult<G> rs_check(const MagnusSetup<G>& setup, const MagnusImage<G>& img) {
  RsCheckResult<G> result;
  auto lhs = setup.ring.zero();
  for (const auto& [i, t] : img.w) {
    const BigInt li = setup.l.at(i);
    if (!setup.ring.divisible(t, li)) return result;
    auto s = setup.ring.divide_exact(t, li);
    auto factor = setup.ring.subtract(setup.ring.monomial(setup.generators.at(i), 1),
                                      setup.ring.one());
    lhs = setup.ring.add(lhs, setup.ring.mul(s, factor));
    result.s.emplace(i, std::move(s));
  }
  const auto rhs = setup.ring.subtract(setup.ring.monomial(img.top, 1), setup.ring.one());
  result.ok = setup.ring.equal(lhs, rhs);
  if (!result.ok) result.s.clear();
  return result;
}

// ---------------------------------------------------------------------------
// Cancellation graph. One vertex pair per unit occurrence +-g_ij inside s_i:
// slot 1 carries the signed label -(+-g_ij), slot 2 carries +-g_ij h_i; the
// pair is joined by a red edge of weight l_i. Blue edges match the remaining
// label cancellations, leaving the endpoints o (label -1) and o' (label g)
// with degree one. The graph then decomposes into a single o-o' arc plus
// simple loops, alternating red and blue with red arc ends.

enum class PairingOrder { forward, reversed };

template <GroupLike G>
struct CancellationGraph {
  struct Vertex {
    int gen_index;    // i
    long long occurrence;  // j
    int slot;         // 1 or 2
    int sign;         // label sign
    typename G::Element elem;  // unsigned label
    long long weight; // l_i, carried by the red edge of the pair
  };

  std::vector<Vertex> vertices;            // red edge k joins 2k and 2k+1
  std::vector<std::pair<std::uint32_t, std::uint32_t>> blue_edges;
  std::uint32_t o = 0;        // label -1
  std::uint32_t o_prime = 0;  // label g
  std::vector<std::uint32_t> arc;          // vertex path from o to o'
  std::vector<std::size_t> arc_red_edges;  // red edge ids along the arc
  std::vector<std::vector<std::uint32_t>> loops;

  std::size_t red_edge_count() const { return vertices.size() / 2; }

  long long arc_weight() const {
    long long acc = 0;
    for (std::size_t e : arc_red_edges) acc += vertices[2 * e].weight;
    return acc;
  }
};

template <GroupLike G>
CancellationGraph<G> build_cancellation_graph(const MagnusSetup<G>& setup,
                                              const MagnusImage<G>& img,
                                              PairingOrder order = PairingOrder::forward) {
  if (setup.group->equal(img.top, setup.group->identity()))
    throw std::invalid_argument("build_cancellation_graph: trivial top component");
  const auto rs = rs_check(setup, img);
  if (!rs.ok)
    throw std::invalid_argument("build_cancellation_graph: pairing infeasible, rs_check fails");

  CancellationGraph<G> graph;
  constexpr std::size_t kMaxVertices = 2'000'000;

  for (const auto& [i, s] : rs.s) {
    const auto& h = setup.generators.at(i);
    const long long li = setup.l.at(i);
    long long occurrence = 0;
    for (const auto& [key, term] : s.terms()) {
      const int term_sign = term.second > 0 ? 1 : -1;
      BigInt copies = abs(term.second);
      for (BigInt c = 0; c < copies; ++c) {
        if (graph.vertices.size() + 2 > kMaxVertices)
          throw std::runtime_error("build_cancellation_graph: vertex budget exceeded");
        graph.vertices.push_back({i, occurrence, 1, -term_sign, term.first, li});
        graph.vertices.push_back(
            {i, occurrence, 2, term_sign, setup.group->multiply(term.first, h), li});
        ++occurrence;
      }
    }
  }

  // Bucket vertices by unsigned label; within a bucket match positives to
  // negatives in construction order (or reversed), the construction order
  // being (i, j, slot) lexicographic.
  std::map<std::string, std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>>
      buckets;
  for (std::uint32_t v = 0; v < graph.vertices.size(); ++v) {
    auto& bucket = buckets[setup.group->canonical_key(graph.vertices[v].elem)];
    (graph.vertices[v].sign > 0 ? bucket.first : bucket.second).push_back(v);
  }
  if (order == PairingOrder::reversed) {
    for (auto& [key, bucket] : buckets) {
      std::reverse(bucket.first.begin(), bucket.first.end());
      std::reverse(bucket.second.begin(), bucket.second.end());
    }
  }

  const std::string id_key = setup.group->canonical_key(setup.group->identity());
  const std::string top_key = setup.group->canonical_key(img.top);
  bool found_o = false;
  bool found_o_prime = false;
  for (auto& [key, bucket] : buckets) {
    auto& [pos, neg] = bucket;
    std::size_t expected_pos = neg.size();
    std::size_t expected_neg = pos.size();
    if (key == id_key) expected_pos = neg.size() - 1;  // one surplus negative: o
    if (key == top_key) expected_neg = pos.size() - 1; // one surplus positive: o'
    if (pos.size() != expected_pos && neg.size() != expected_neg)
      throw std::invalid_argument("build_cancellation_graph: pairing infeasible");
    const std::size_t pairs = std::min(pos.size(), neg.size());
    if (key == id_key) {
      if (neg.size() != pairs + 1)
        throw std::invalid_argument("build_cancellation_graph: pairing infeasible");
      graph.o = neg.back();
      found_o = true;
      neg.pop_back();
    }
    if (key == top_key) {
      if (pos.size() != pairs + 1)
        throw std::invalid_argument("build_cancellation_graph: pairing infeasible");
      graph.o_prime = pos.back();
      found_o_prime = true;
      pos.pop_back();
    }
    if (pos.size() != neg.size())
      throw std::invalid_argument("build_cancellation_graph: pairing infeasible");
    for (std::size_t k = 0; k < pos.size(); ++k) graph.blue_edges.emplace_back(pos[k], neg[k]);
  }
  if (!found_o || !found_o_prime)
    throw std::invalid_argument("build_cancellation_graph: endpoints missing");

  // Decompose into the o-o' arc and simple loops.
  std::vector<std::int64_t> blue_partner(graph.vertices.size(), -1);
  for (const auto& [a, b] : graph.blue_edges) {
    blue_partner[a] = b;
    blue_partner[b] = a;
  }
  std::vector<bool> visited(graph.vertices.size(), false);

  std::uint32_t at = graph.o;
  graph.arc.push_back(at);
  visited[at] = true;
  while (true) {
    const std::uint32_t red = at ^ 1u;  // red partner
    graph.arc_red_edges.push_back(at / 2);
    if (visited[red] && red != graph.o_prime)
      throw std::runtime_error("build_cancellation_graph: arc is not simple");
    graph.arc.push_back(red);
    visited[red] = true;
    at = red;
    if (at == graph.o_prime) break;
    if (blue_partner[at] < 0)
      throw std::runtime_error("build_cancellation_graph: arc interrupted");
    at = static_cast<std::uint32_t>(blue_partner[at]);
    if (visited[at]) throw std::runtime_error("build_cancellation_graph: arc is not simple");
    graph.arc.push_back(at);
    visited[at] = true;
  }

  for (std::uint32_t start = 0; start < graph.vertices.size(); ++start) {
    if (visited[start]) continue;
    std::vector<std::uint32_t> loop;
    std::uint32_t cur = start;
    while (!visited[cur]) {
      visited[cur] = true;
      loop.push_back(cur);
      const std::uint32_t red = cur ^ 1u;
      if (visited[red] && red != start)
        throw std::runtime_error("build_cancellation_graph: loop is not simple");
      if (red == start) break;
      visited[red] = true;
      loop.push_back(red);
      if (blue_partner[red] < 0)
        throw std::runtime_error("build_cancellation_graph: loop vertex without blue edge");
      cur = static_cast<std::uint32_t>(blue_partner[red]);
    }
    graph.loops.push_back(std::move(loop));
  }

  return graph;
}

/// Degree, alternation and telescoping checks on a built graph; throws on
/// the first violated structural property.
template <GroupLike G>
void verify_graph_structure(const MagnusSetup<G>& setup, const CancellationGraph<G>& graph) {
  std::vector<int> blue_degree(graph.vertices.size(), 0);
  for (const auto& [a, b] : graph.blue_edges) {
    ++blue_degree[a];
    ++blue_degree[b];
    if (setup.group->canonical_key(graph.vertices[a].elem) !=
            setup.group->canonical_key(graph.vertices[b].elem) ||
        graph.vertices[a].sign + graph.vertices[b].sign != 0)
      throw std::runtime_error("cancellation graph: blue edge does not cancel");
  }
  for (std::uint32_t v = 0; v < graph.vertices.size(); ++v) {
    const int expected = (v == graph.o || v == graph.o_prime) ? 0 : 1;
    if (blue_degree[v] != expected)
      throw std::runtime_error("cancellation graph: blue degree violated");
  }
  if (graph.arc.empty() || graph.arc.front() != graph.o || graph.arc.back() != graph.o_prime)
    throw std::runtime_error("cancellation graph: arc endpoints wrong");
  if (graph.arc.size() % 2 != 0)
    throw std::runtime_error("cancellation graph: arc must end on a red edge");
  // Telescoping along the arc: red steps change the label length by at most
  // l(h_i); blue steps keep the unsigned label.
  long long prev = 0;
  for (std::size_t k = 0; k + 1 < graph.arc.size(); k += 2) {
    const auto& from = graph.vertices[graph.arc[k]];
    const auto& to = graph.vertices[graph.arc[k + 1]];
    const long long step = setup.length(setup.generators.at(from.gen_index));
    const long long cur = setup.length(to.elem);
    if (cur > prev + step)
      throw std::runtime_error("cancellation graph: telescoping step violated");
    prev = cur;
  }
  for (const auto& loop : graph.loops) {
    if (loop.size() % 2 != 0)
      throw std::runtime_error("cancellation graph: odd loop");
  }
}

/// The verified inequality chain l(g) <= arc weight <= ||w||.
struct MagnusBound {
  long long ell_top = 0;
  BigInt norm;
  long long arc_weight = 0;
  bool degenerate = false;  // top component trivial: bound is 0 <= ||w||
};

template <GroupLike G>
MagnusBound verify_magnus_bound(const MagnusSetup<G>& setup, const MagnusImage<G>& img,
                                PairingOrder order = PairingOrder::forward) {
  MagnusBound out;
  out.norm = image_norm(setup, img);
  out.ell_top = setup.length(img.top);
  if (setup.group->equal(img.top, setup.group->identity())) {
    out.degenerate = true;
    out.arc_weight = 0;
    if (out.ell_top != 0) throw std::runtime_error("verify_magnus_bound: length axiom broken");
    return out;
  }
  const auto graph = build_cancellation_graph(setup, img, order);
  verify_graph_structure(setup, graph);
  out.arc_weight = graph.arc_weight();
  if (BigInt(out.ell_top) > BigInt(out.arc_weight) || BigInt(out.arc_weight) > out.norm)
    throw std::runtime_error("verify_magnus_bound: inequality chain violated");
  return out;
}

template <GroupLike G>
std::string cancellation_graph_dot(const MagnusSetup<G>& setup,
                                   const CancellationGraph<G>& graph) {
  std::string out = "graph cancellation {\n  node [shape=circle];\n";
  for (std::uint32_t v = 0; v < graph.vertices.size(); ++v) {
    const auto& vert = graph.vertices[v];
    out += "  v" + std::to_string(v) + " [label=\"" +
           std::string(vert.sign > 0 ? "+" : "-") + setup.group->describe(vert.elem) + "\"";
    if (v == graph.o || v == graph.o_prime) out += ", shape=doublecircle";
    out += "];\n";
  }
  for (std::size_t e = 0; e < graph.red_edge_count(); ++e) {
    out += "  v" + std::to_string(2 * e) + " -- v" + std::to_string(2 * e + 1) +
           " [color=red, label=\"" + std::to_string(graph.vertices[2 * e].weight) + "\"];\n";
  }
  for (const auto& [a, b] : graph.blue_edges) {
    out += "  v" + std::to_string(a) + " -- v" + std::to_string(b) + " [color=blue];\n";
  }
  out += "}\n";
  return out;
}

// ---------------------------------------------------------------------------
// Equality criterion for the standard homomorphism: |g|_X = ||w|| iff the
// images of f in the quotient by N and by [N, N] have equal lengths. Both
// sides are computed by independent BFS oracles, in the target group and in
// the wreath product respectively.

template <GroupLike G>
struct McorResult {
  bool norm_matches_length = false;   // |g|_X == ||w||
  bool quotient_lengths_equal = false;  // |f in F/N| == |f in F/[N,N]|
  long long length_in_target = 0;     // |g|_X
  BigInt norm;                        // ||w||
  long long length_in_magnus_image = 0;
  bool graph_connected = false;       // populated when the equality holds
};

template <GroupLike G>
McorResult<G> mcor_equality_check(const G& group,
                                  const std::map<int, typename G::Element>& gens,
                                  const Word& f, int radius_cap) {
  auto setup = MagnusSetup<G>::standard(group, gens);
  const auto img = magnus_image(setup, f);

  McorResult<G> out;
  out.norm = image_norm(setup, img);

  std::vector<typename G::Element> gen_list;
  for (const auto& [i, h] : gens) gen_list.push_back(h);
  const auto len_target = word_length_bfs(group, std::span<const typename G::Element>(gen_list),
                                          img.top, radius_cap);
  if (!len_target) throw std::runtime_error("mcor_equality_check: radius cap exceeded");
  out.length_in_target = *len_target;

  // BFS in the wreath product over the generator images a_i h_i.
  WreathProduct<FreeAbelianGroup, G> V(FreeAbelianGroup("a"), group);
  using VElem = typename WreathProduct<FreeAbelianGroup, G>::Element;
  std::vector<VElem> v_gens;
  std::map<int, VElem> v_assignment;
  for (const auto& [i, h] : gens) {
    auto img_gen = V.multiply(V.from_base_point(group.identity(),
                                                V.base_group().basis(i, 1)),
                              V.from_top(h));
    v_gens.push_back(img_gen);
    v_assignment.emplace(i, img_gen);
  }
  const VElem target = evaluate_word(V, v_assignment, f);
  const auto len_image =
      word_length_bfs(V, std::span<const VElem>(v_gens), target, radius_cap);
  if (!len_image) throw std::runtime_error("mcor_equality_check: radius cap exceeded");
  out.length_in_magnus_image = *len_image;

  out.norm_matches_length = BigInt(out.length_in_target) == out.norm;
  out.quotient_lengths_equal = out.length_in_target == out.length_in_magnus_image;
  if (out.norm_matches_length != out.quotient_lengths_equal)
    throw std::runtime_error("mcor_equality_check: biconditional violated");

  if (out.norm_matches_length && !group.equal(img.top, group.identity())) {
    const auto graph = build_cancellation_graph(setup, img);
    out.graph_connected = graph.loops.empty();
  }
  return out;
}

}  // namespace magnusforge
