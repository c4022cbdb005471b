#include "magnusforge/reports.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "magnusforge/embedding.hpp"
#include "magnusforge/finite_group.hpp"
#include "magnusforge/group.hpp"
#include "magnusforge/lamplighter.hpp"
#include "magnusforge/magnus.hpp"
#include "magnusforge/metrics.hpp"
#include "magnusforge/parafree.hpp"
#include "magnusforge/word.hpp"

namespace magnusforge::reports {

namespace {

struct ParsedGroupSpec {
  enum class Kind { free_abelian, finite, lamplighter };
  Kind kind = Kind::finite;
  int rank = 0;  // free abelian only
  std::optional<FiniteGroup> finite;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

ParsedGroupSpec parse_group_spec(const std::string& spec) {
  ParsedGroupSpec out;
  if (spec.empty()) throw std::invalid_argument("group spec: empty");
  if (spec == "lamp") {
    out.kind = ParsedGroupSpec::Kind::lamplighter;
    return out;
  }
  if (spec[0] == '@') {
    std::ifstream in(spec.substr(1));
    if (!in) throw std::invalid_argument("group spec: cannot open " + spec.substr(1));
    nlohmann::json j;
    in >> j;
    out.kind = ParsedGroupSpec::Kind::finite;
    out.finite = FiniteGroup::from_table_json(j);
    return out;
  }

  int free_rank = 0;
  std::optional<FiniteGroup> finite;
  for (const std::string& part : split(spec, 'x')) {
    if (part == "z") {
      ++free_rank;
      continue;
    }
    if (part.size() < 2 || (part[0] != 'z' && part[0] != 's'))
      throw std::invalid_argument("group spec: cannot parse '" + part + "'");
    int n = 0;
    try {
      n = std::stoi(part.substr(1));
    } catch (const std::exception&) {
      throw std::invalid_argument("group spec: cannot parse '" + part + "'");
    }
    FiniteGroup factor = part[0] == 'z' ? FiniteGroup::cyclic(n) : FiniteGroup::symmetric(n);
    finite = finite ? FiniteGroup::direct_product(*finite, factor) : std::move(factor);
  }
  if (free_rank > 0 && finite)
    throw std::invalid_argument("group spec: cannot mix infinite and finite factors");
  if (free_rank > 0) {
    out.kind = ParsedGroupSpec::Kind::free_abelian;
    out.rank = free_rank;
    return out;
  }
  if (!finite) throw std::invalid_argument("group spec: cannot parse '" + spec + "'");
  out.kind = ParsedGroupSpec::Kind::finite;
  out.finite = std::move(finite);
  return out;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

template <GroupLike G>
nlohmann::json run_magnus(const MagnusSetup<G>& setup, const Word& f) {
  const auto img = magnus_image(setup, f);
  const auto rs = rs_check(setup, img);
  const auto bound = verify_magnus_bound(setup, img);

  nlohmann::json w_json = nlohmann::json::object();
  for (const auto& [i, t] : img.w) w_json[std::to_string(i)] = setup.ring.to_json(t);

  nlohmann::json out{{"image",
                      nlohmann::json{{"w", w_json},
                                     {"g", setup.group->to_json(img.top)},
                                     {"g_str", setup.group->describe(img.top)}}},
                     {"rs_ok", rs.ok},
                     {"norm", bigint_to_json(bound.norm)},
                     {"ell_g", bound.ell_top},
                     {"arc_weight", bound.arc_weight},
                     {"degenerate", bound.degenerate}};
  if (!bound.degenerate) {
    const auto graph = build_cancellation_graph(setup, img);
    out["red_edges"] = graph.red_edge_count();
    out["loops"] = graph.loops.size();
  } else {
    out["red_edges"] = 0;
    out["loops"] = 0;
  }
  out["bound_ok"] = true;  // verify_magnus_bound throws otherwise
  return out;
}

// Assignment x1, x2, ... to basis elements (free abelian) or to the default
// generators (finite); the length function is the weighted coordinate sum or
// the BFS word metric respectively.
nlohmann::json magnus_dispatch(const std::string& group_spec, const Word& f,
                               const std::vector<long long>& weights,
                               std::string* dot_out) {
  const auto parsed = parse_group_spec(group_spec);
  if (parsed.kind == ParsedGroupSpec::Kind::lamplighter)
    throw std::invalid_argument("magnus: expected a free abelian or finite group");

  if (parsed.kind == ParsedGroupSpec::Kind::free_abelian) {
    FreeAbelianGroup H("h");
    std::map<int, FreeAbelianGroup::Element> gens;
    for (int i = 1; i <= parsed.rank; ++i) gens.emplace(i, H.basis(i, 1));
    std::vector<long long> w = weights;
    if (w.empty()) w.assign(static_cast<std::size_t>(parsed.rank), 1);
    if (static_cast<int>(w.size()) != parsed.rank)
      throw std::invalid_argument("magnus: weight count must match the rank");
    for (long long wk : w)
      if (wk < 1) throw std::invalid_argument("magnus: weights must be >= 1");
    auto ell = [w](const FreeAbelianGroup::Element& e) -> long long {
      long long acc = 0;
      for (const auto& [i, v] : e)
        acc += w[static_cast<std::size_t>(i - 1)] * (v < 0 ? -v : v);
      return acc;
    };
    MagnusSetup<FreeAbelianGroup> setup(H, gens, ell);
    if (dot_out != nullptr) {
      const auto img = magnus_image(setup, f);
      if (setup.group->equal(img.top, setup.group->identity())) {
        *dot_out =
            "graph cancellation {\n  node [shape=doublecircle];\n  o [label=\"-1\"];\n"
            "  o_prime [label=\"+1\"];\n  o -- o_prime [color=blue];\n}\n";
      } else {
        *dot_out = cancellation_graph_dot(setup, build_cancellation_graph(setup, img));
      }
      return {};
    }
    return run_magnus(setup, f);
  }

  const FiniteGroup H = *parsed.finite;
  if (!weights.empty())
    throw std::invalid_argument("magnus: weights are only supported for free abelian groups");
  const auto gen_list = H.default_generators();
  if (gen_list.empty()) throw std::invalid_argument("magnus: group spec has no generators");
  const FiniteMetric metric = finite_word_metric(H, gen_list);
  std::map<int, FiniteGroup::Element> gens;
  for (std::size_t k = 0; k < gen_list.size(); ++k)
    gens.emplace(static_cast<int>(k + 1), gen_list[k]);
  MagnusSetup<FiniteGroup> setup(H, gens,
                                 [metric](const FiniteGroup::Element& e) { return metric(e); });
  if (dot_out != nullptr) {
    const auto img = magnus_image(setup, f);
    if (setup.group->equal(img.top, setup.group->identity())) {
      *dot_out =
          "graph cancellation {\n  node [shape=doublecircle];\n  o [label=\"-1\"];\n"
          "  o_prime [label=\"+1\"];\n  o -- o_prime [color=blue];\n}\n";
    } else {
      *dot_out = cancellation_graph_dot(setup, build_cancellation_graph(setup, img));
    }
    return {};
  }
  return run_magnus(setup, f);
}

}  // namespace

nlohmann::json magnus_report(const std::string& group_spec, const std::string& word_text,
                             const std::vector<long long>& weights, const CommonConfig& cfg) {
  const Word f = Word::parse(word_text);
  nlohmann::json out = magnus_dispatch(group_spec, f, weights, nullptr);
  out["command"] = "magnus";
  out["group"] = group_spec;
  out["word"] = f.str();
  out["seed"] = cfg.seed;
  out["verified"] = out.at("rs_ok").get<bool>() && out.at("bound_ok").get<bool>();
  return out;
}

std::string cancel_graph_dot(const std::string& group_spec, const std::string& word_text,
                             const std::vector<long long>& weights) {
  const Word f = Word::parse(word_text);
  std::string dot;
  magnus_dispatch(group_spec, f, weights, &dot);
  return dot;
}

nlohmann::json parafree_report(int radius, int radius_cap, const CommonConfig& cfg) {
  GreedyOptions options;
  options.radius_cap = radius_cap;
  const ParafreeSet set = greedy_build(radius, options);

  const std::span<const Lamplighter> members(set.members);
  const bool para_free = is_parallelogram_free(members);
  const bool left_ok = translate_criterion_check(members, TranslateSide::left);
  const bool right_ok = translate_criterion_check(members, TranslateSide::right);

  nlohmann::json out = set.to_json();
  out["command"] = "parafree";
  out["seed"] = cfg.seed;
  out["verification"] = nlohmann::json{{"parallelogram_free", para_free},
                                       {"translate_left", left_ok},
                                       {"translate_right", right_ok}};
  out["verified"] = para_free && left_ok && right_ok;
  return out;
}

nlohmann::json embed_report(const std::string& group_spec, double lambda_hint,
                            int radius_cap, const CommonConfig& cfg) {
  const auto parsed = parse_group_spec(group_spec);
  if (parsed.kind != ParsedGroupSpec::Kind::finite)
    throw std::invalid_argument("embed: requires a finite group spec");
  const FiniteGroup& H = *parsed.finite;

  EmbeddingBuildOptions options;
  options.lambda_hint = lambda_hint;
  options.radius_cap = radius_cap;
  const EmbeddingContext ctx = EmbeddingContext::build(H, H.default_generators(), options);

  bool all_ok = true;
  nlohmann::json elements = nlohmann::json::array();
  for (const auto h : ctx.group().elements()) {
    const long long ell = ctx.metric()(h);
    const XWord cert = ctx.embed_h(h);  // throws unless it evaluates to h in budget
    const auto chain = ctx.lower_bound_chain(cert);
    const bool length_ok =
        static_cast<long long>(cert.size()) <= ctx.theta_denominator() * ell;
    const bool chain_ok = chain.ell == ell && chain.h == h;
    all_ok = all_ok && length_ok && chain_ok;
    elements.push_back(nlohmann::json{{"h", ctx.group().describe(h)},
                                      {"ell", ell},
                                      {"certificate", cert.str()},
                                      {"certificate_length", cert.size()},
                                      {"budget", ctx.theta_denominator() * ell},
                                      {"length_ok", length_ok},
                                      {"chain_lower_bound_ok", chain_ok}});
  }

  nlohmann::json out{{"command", "embed"},
                     {"group", group_spec},
                     {"seed", cfg.seed},
                     {"context", ctx.summary_json()},
                     {"theta", "1/" + std::to_string(ctx.theta_denominator())},
                     {"elements", elements},
                     {"verified", all_ok}};
  return out;
}

std::string growth_csv(const std::string& group_spec, int max_level) {
  if (max_level < 0) throw std::invalid_argument("growth: levels must be >= 0");
  const auto parsed = parse_group_spec(group_spec);

  std::vector<long long> lengths;
  switch (parsed.kind) {
    case ParsedGroupSpec::Kind::finite: {
      const FiniteGroup& H = *parsed.finite;
      const FiniteMetric metric = finite_word_metric(H, H.default_generators());
      lengths = metric.lengths;
      break;
    }
    case ParsedGroupSpec::Kind::free_abelian: {
      FreeAbelianGroup H("h");
      std::vector<FreeAbelianGroup::Element> gens;
      for (int i = 1; i <= parsed.rank; ++i) gens.push_back(H.basis(i, 1));
      const auto ball = enumerate_ball(H, std::span<const FreeAbelianGroup::Element>(gens),
                                       max_level);
      for (int d : ball.distance) lengths.push_back(d);
      break;
    }
    case ParsedGroupSpec::Kind::lamplighter: {
      LamplighterGroup M;
      const std::vector<Lamplighter> gens{LamplighterGroup::lamp_gen(),
                                          LamplighterGroup::shift_gen()};
      const auto ball = enumerate_ball(M, std::span<const Lamplighter>(gens), max_level);
      for (int d : ball.distance) lengths.push_back(d);
      break;
    }
  }

  const GrowthReport rep = growth_report(lengths, max_level);
  std::string out = "level,count,fitted_a\n";
  for (int n = 0; n <= max_level; ++n) {
    out += std::to_string(n) + "," + std::to_string(rep.counts[static_cast<std::size_t>(n)]) +
           "," + format_double(rep.fitted[static_cast<std::size_t>(n)]) + "\n";
  }
  return out;
}

nlohmann::json folner_report(const std::string& group_spec,
                             const std::optional<std::string>& set_json,
                             const std::optional<std::string>& epsilon,
                             int pool_radius, int max_size, const CommonConfig& cfg) {
  const auto parsed = parse_group_spec(group_spec);
  nlohmann::json out{{"command", "folner"}, {"group", group_spec}, {"seed", cfg.seed}};

  const auto run = [&](auto&& group, auto&& gens, auto&& parse_elem,
                       auto&& elem_json) -> void {
    using GroupT = std::decay_t<decltype(group)>;
    using Elem = typename GroupT::Element;
    if (set_json) {
      std::vector<Elem> set;
      for (const auto& j : nlohmann::json::parse(*set_json)) set.push_back(parse_elem(j));
      const Rational defect = folner_defect(group, std::span<const Elem>(gens),
                                            std::span<const Elem>(set));
      out["mode"] = "defect";
      out["set_size"] = set.size();
      out["defect"] = defect.str();
      out["verified"] = true;
      return;
    }
    if (!epsilon) throw std::invalid_argument("folner: need --set or --epsilon");
    const auto parts = split(*epsilon, '/');
    if (parts.size() != 2) throw std::invalid_argument("folner: epsilon must look like p/q");
    const long long num = std::stoll(parts[0]);
    const long long den = std::stoll(parts[1]);
    const auto ball = enumerate_ball(group, std::span<const Elem>(gens), pool_radius);
    const auto result = folner_search(group, std::span<const Elem>(gens),
                                      std::span<const Elem>(ball.elements), num, den, max_size);
    out["mode"] = "search";
    out["epsilon"] = *epsilon;
    out["pool_size"] = ball.elements.size();
    out["found"] = result.found;
    if (result.found) {
      out["min_size"] = result.set.size();
      out["defect"] = result.defect.str();
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& e : result.set) arr.push_back(elem_json(e));
      out["set"] = arr;
    }
    out["verified"] = true;
  };

  switch (parsed.kind) {
    case ParsedGroupSpec::Kind::finite: {
      const FiniteGroup& H = *parsed.finite;
      std::vector<FiniteGroup::Element> gens = H.default_generators();
      run(H, gens, [&](const nlohmann::json& j) { return H.from_json_element(j); },
          [&](const FiniteGroup::Element& e) { return H.to_json(e); });
      break;
    }
    case ParsedGroupSpec::Kind::free_abelian: {
      FreeAbelianGroup H("h");
      std::vector<FreeAbelianGroup::Element> gens;
      for (int i = 1; i <= parsed.rank; ++i) gens.push_back(H.basis(i, 1));
      run(H, gens, [&](const nlohmann::json& j) { return H.from_json(j); },
          [&](const FreeAbelianGroup::Element& e) { return H.to_json(e); });
      break;
    }
    case ParsedGroupSpec::Kind::lamplighter: {
      LamplighterGroup M;
      std::vector<Lamplighter> gens{LamplighterGroup::lamp_gen(),
                                    LamplighterGroup::shift_gen()};
      run(M, gens, [&](const nlohmann::json& j) { return M.from_json(j); },
          [&](const Lamplighter& e) { return M.to_json(e); });
      break;
    }
  }
  return out;
}

bool report_verified(const nlohmann::json& report) {
  if (!report.contains("verified")) return true;
  return report.at("verified").get<bool>();
}

std::string dump_report(const nlohmann::json& report) { return report.dump(2) + "\n"; }

}  // namespace magnusforge::reports
