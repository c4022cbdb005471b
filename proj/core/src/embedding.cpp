#include "magnusforge/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "magnusforge/log.hpp"
#include "magnusforge/metrics.hpp"

namespace magnusforge {

namespace {

std::runtime_error chain_error(const std::string& what) {
  return std::runtime_error("lower_bound_chain: " + what);
}

}  // namespace

EmbeddingContext::EmbeddingContext(const FiniteGroup& H, FiniteMetric metric)
    : H_(H),
      metric_(std::move(metric)),
      A_("a"),
      V_(A_, H_),
      K_(V_),
      M_(),
      G_(K_, M_),
      t_(K_.shift_generator(1)) {
  metric_.group = &H_;
  g_elem_ = G_.identity();
}

VGroup::Element EmbeddingContext::y_high(FiniteGroup::Element h) const {
  if (H_.equal(h, H_.identity())) throw std::invalid_argument("y_high: h must be nontrivial");
  const auto a_h = A_.basis(h, metric_(h));
  return V_.multiply(V_.from_base_point(H_.identity(), a_h), V_.from_top(h));
}

VGroup::Element EmbeddingContext::y_lamp(FiniteGroup::Element h) const {
  if (H_.equal(h, H_.identity())) throw std::invalid_argument("y_lamp: h must be nontrivial");
  return V_.from_base_point(H_.identity(), A_.basis(h, 1));
}

std::vector<VGroup::Element> EmbeddingContext::y_generators() const {
  std::vector<VGroup::Element> out;
  for (const auto h : ordered_h_) {
    out.push_back(y_high(h));
    out.push_back(y_lamp(h));
  }
  return out;
}

KGroup::Element EmbeddingContext::g_eval(const Lamplighter& m) const {
  if (M_.equal(m, M_.identity())) return t_;
  const auto it = w_index_by_key_.find(M_.canonical_key(m));
  if (it == w_index_by_key_.end()) return K_.identity();
  return u(it->second);
}

GGroup::Element EmbeddingContext::letter_element(XLetter l, int sign) const {
  GGroup::Element e;
  switch (l) {
    case XLetter::lamp:
      e = G_.from_top(LamplighterGroup::lamp_gen());
      break;
    case XLetter::shift:
      e = G_.from_top(LamplighterGroup::shift_gen());
      break;
    case XLetter::gfun:
      e = g_elem_;
      break;
  }
  return sign > 0 ? e : G_.invert(e);
}

GGroup::Element EmbeddingContext::eval(const XWord& word) const {
  auto acc = G_.identity();
  for (const auto& [l, sign] : word.letters) acc = G_.multiply(acc, letter_element(l, sign));
  return acc;
}

GGroup::Element EmbeddingContext::embedded_h(FiniteGroup::Element h) const {
  if (H_.equal(h, H_.identity())) return G_.identity();
  return G_.from_base_point(M_.identity(), k_from_v(V_.from_top(h)));
}

int EmbeddingContext::pair_index_high(FiniteGroup::Element h) const {
  const auto it = h_position_.find(h);
  if (it == h_position_.end())
    throw std::invalid_argument("EmbeddingContext: not a nontrivial group element");
  return 2 * it->second - 1;
}

std::vector<std::pair<Lamplighter, KGroup::Element>> EmbeddingContext::commutator_support(
    const Lamplighter& r) const {
  const auto r_top = G_.from_top(r);
  const auto conj = G_.multiply(G_.multiply(r_top, g_elem_), G_.invert(r_top));
  const auto comm = G_.multiply(G_.multiply(g_elem_, conj),
                                G_.multiply(G_.invert(g_elem_), G_.invert(conj)));
  if (!M_.equal(comm.top, M_.identity()))
    throw std::runtime_error("commutator_support: nontrivial top component");
  std::vector<std::pair<Lamplighter, KGroup::Element>> support;
  for (const auto& [key, entry] : comm.base) support.emplace_back(entry.first, entry.second);
  if (support.size() > 1)
    throw std::runtime_error("commutator_support: support larger than one point");
  for (const auto& [point, value] : support) {
    // The value must be the commutator of the two g-values it came from.
    const auto a = g_eval(point);
    const auto b = g_eval(M_.multiply(point, r));
    const auto expected =
        K_.multiply(K_.multiply(a, b), K_.multiply(K_.invert(a), K_.invert(b)));
    if (!K_.equal(value, expected))
      throw std::runtime_error("commutator_support: value is not the expected commutator");
  }
  return support;
}

XWord EmbeddingContext::embed_h(FiniteGroup::Element h) const {
  XWord word;
  if (H_.equal(h, H_.identity())) return word;

  const long long ell = metric_(h);
  const int i_high = pair_index_high(h);
  const int i_lamp = i_high + 1;
  const auto& word_high = w_word(i_high);
  const auto& word_lamp = w_word(i_lamp);

  // h = a_h^{-l(h)} (a_h^{l(h)} h); the first factor is realized as
  // [g, w' g^{-l(h)} w'^{-1}] and the second as [g, w g w^{-1}].
  const auto commutator = [this](const std::vector<int>& conjugator, long long exponent) {
    XWord inner;
    inner.append_s_word(conjugator);
    inner.append_power(XLetter::gfun, exponent);
    XWord conj_tail;
    conj_tail.append_s_word(conjugator);
    inner.append_inverse(conj_tail);

    XWord out;
    out.append(XLetter::gfun, 1);
    out.append_word(inner);
    out.append(XLetter::gfun, -1);
    out.append_inverse(inner);
    return out;
  };

  word.append_word(commutator(word_lamp, -ell));
  word.append_word(commutator(word_high, 1));

  const long long budget = theta_denominator() * ell;
  if (static_cast<long long>(word.size()) > budget)
    throw std::runtime_error("embed_h: certificate exceeds the length budget");
  if (!G_.equal(eval(word), embedded_h(h)))
    throw std::runtime_error("embed_h: certificate does not evaluate to h");
  return word;
}

ChainCertificate EmbeddingContext::lower_bound_chain(const XWord& word) const {
  ChainCertificate cert;

  // The word must evaluate into the embedded copy of H: trivial top, base
  // supported at the identity of M with a value in the embedded copy of V
  // whose own base is trivial.
  const auto e = eval(word);
  if (!M_.equal(e.top, M_.identity())) throw chain_error("word not in the image of H");
  FiniteGroup::Element h = H_.identity();
  if (!e.base.empty()) {
    if (e.base.size() > 1) throw chain_error("word not in the image of H");
    const auto& [point, value] = e.base.begin()->second;
    if (!M_.equal(point, M_.identity())) throw chain_error("word not in the image of H");
    if (value.shift != 0 || !V_.equal(value.left, V_.identity()) ||
        !V_.equal(value.right, V_.identity()) || value.exceptions.size() != 1 ||
        value.exceptions.begin()->first != 0)
      throw chain_error("word not in the image of H");
    const auto& v = value.exceptions.begin()->second;
    if (!v.base.empty()) throw chain_error("word not in the image of H");
    h = v.top;
  }
  cert.h = h;
  cert.ell = metric_(h);

  // Collect the conjugating prefixes: r_j is the product of the S-letters
  // before the j-th g-letter. The total S-product equals the top of the
  // evaluation, hence trivial.
  std::vector<std::pair<Lamplighter, int>> g_letters;
  Lamplighter prefix = M_.identity();
  for (const auto& [l, sign] : word.letters) {
    switch (l) {
      case XLetter::lamp:
        prefix = M_.multiply(prefix, sign > 0 ? LamplighterGroup::lamp_gen()
                                              : M_.invert(LamplighterGroup::lamp_gen()));
        break;
      case XLetter::shift:
        prefix = M_.multiply(prefix, sign > 0 ? LamplighterGroup::shift_gen()
                                              : M_.invert(LamplighterGroup::shift_gen()));
        break;
      case XLetter::gfun:
        g_letters.emplace_back(prefix, sign);
        break;
    }
  }
  if (!M_.equal(prefix, M_.identity()))
    throw chain_error("S-letters do not multiply to the identity");
  cert.g_letter_count = static_cast<long long>(g_letters.size());

  // Project the base at the identity of M: the word becomes a product of
  // values g(r_j)^{sign} in K, each of which is trivial, the shift t, or a
  // step generator.
  const std::string t_key = K_.canonical_key(t_);
  const std::string k_id_key = K_.canonical_key(K_.identity());
  const auto embedded_in_k = k_from_v(V_.from_top(h));

  auto k_product = K_.identity();
  struct StepLetter {
    long long offset;
    int pair_index;
    int sign;
  };
  std::vector<StepLetter> step_letters;
  long long t_exponent = 0;
  for (const auto& [r, sign] : g_letters) {
    const auto x = g_eval(r);
    k_product = K_.multiply(k_product, sign > 0 ? x : K_.invert(x));
    const std::string key = K_.canonical_key(x);
    if (key == k_id_key) continue;
    if (key == t_key) {
      t_exponent += sign;
      continue;
    }
    const auto it = w_index_by_key_.find(M_.canonical_key(r));
    if (it == w_index_by_key_.end()) throw chain_error("unclassifiable projected letter");
    step_letters.push_back({t_exponent, it->second, sign});
  }
  if (!K_.equal(k_product, embedded_in_k))
    throw chain_error("projection at the identity of M does not reproduce h");
  if (t_exponent != 0) throw chain_error("shift letters do not cancel");
  cert.step_letter_count = static_cast<long long>(step_letters.size());

  // Rewrite as a product of shift-conjugated step generators and check it
  // still evaluates to h in K.
  auto conjugated_product = K_.identity();
  for (const auto& letter : step_letters) {
    auto factor = K_.conj_by_shift(letter.offset, u(letter.pair_index));
    if (letter.sign < 0) factor = K_.invert(factor);
    conjugated_product = K_.multiply(conjugated_product, factor);
  }
  if (!K_.equal(conjugated_product, embedded_in_k))
    throw chain_error("conjugated rewriting does not reproduce h");

  // Project at 0 in Z: every letter lands in Y, an inverse of Y, or the
  // identity of V, and the product recovers h inside V.
  auto v_product = V_.identity();
  long long nontrivial = 0;
  for (const auto& letter : step_letters) {
    auto value = K_.value_at(u(letter.pair_index), letter.offset);
    if (letter.sign < 0) value = V_.invert(value);
    const bool trivial = V_.equal(value, V_.identity());
    if (!trivial && !y_letter_keys_.contains(V_.canonical_key(value)))
      throw chain_error("projected letter outside Y");
    if (!trivial) ++nontrivial;
    v_product = V_.multiply(v_product, value);
  }
  if (!V_.equal(v_product, V_.from_top(h)))
    throw chain_error("projection at 0 does not reproduce h");
  cert.projected_letter_count = nontrivial;

  // The certified inequality chain.
  if (cert.ell > cert.projected_letter_count)
    throw chain_error("length bound violated");
  if (cert.projected_letter_count > cert.step_letter_count ||
      cert.step_letter_count > cert.g_letter_count ||
      cert.g_letter_count > static_cast<long long>(word.size()))
    throw chain_error("letter counts are not monotone");
  return cert;
}

std::pair<long long, long long> EmbeddingContext::y_length_check(FiniteGroup::Element h,
                                                                 int radius_cap) const {
  if (H_.equal(h, H_.identity()))
    throw std::invalid_argument("y_length_check: h must be nontrivial");
  const auto gens = y_generators();
  const auto length = word_length_bfs(V_, std::span<const VGroup::Element>(gens),
                                      V_.from_top(h), radius_cap);
  if (!length) throw std::runtime_error("y_length_check: radius cap exceeded");
  const long long expected = metric_(h) + 1;
  if (*length != expected)
    throw std::runtime_error("y_length_check: |h|_Y differs from l(h) + 1");
  return {*length, expected};
}

EmbeddingContext EmbeddingContext::build(const FiniteGroup& H,
                                         const std::vector<FiniteGroup::Element>& gens,
                                         const EmbeddingBuildOptions& options) {
  EmbeddingContext ctx(H, finite_word_metric(H, gens));

  // Nontrivial elements ordered by (length, canonical key); each element h
  // contributes the pair u_{2j-1} = step(a_h^{l(h)} h), u_{2j} = step(a_h).
  for (const auto e : ctx.H_.elements())
    if (!ctx.H_.equal(e, ctx.H_.identity())) ctx.ordered_h_.push_back(e);
  std::sort(ctx.ordered_h_.begin(), ctx.ordered_h_.end(),
            [&](FiniteGroup::Element a, FiniteGroup::Element b) {
              const long long la = ctx.metric_(a);
              const long long lb = ctx.metric_(b);
              if (la != lb) return la < lb;
              return ctx.H_.canonical_key(a) < ctx.H_.canonical_key(b);
            });
  for (std::size_t j = 0; j < ctx.ordered_h_.size(); ++j)
    ctx.h_position_.emplace(ctx.ordered_h_[j], static_cast<int>(j + 1));

  const long long max_ell = ctx.metric_.max_length;
  std::vector<long long> level_sizes(static_cast<std::size_t>(max_ell) + 1, 0);
  for (const auto h : ctx.ordered_h_) ++level_sizes[static_cast<std::size_t>(ctx.metric_(h))];

  // Pick lambda = 1/q: the stratum for level n draws its elements from the
  // members with length in [q n, q(n+1) - 1], so every window must hold
  // twice the number of elements of that length.
  long long q_start = 1;
  if (options.lambda_hint > 0 && options.lambda_hint < 1.0)
    q_start = static_cast<long long>(std::ceil(1.0 / options.lambda_hint));
  bool selected = false;
  for (long long q = q_start; !selected; ++q) {
    const long long radius = q * (max_ell + 1);
    if (radius > options.radius_cap)
      throw std::runtime_error(
          "EmbeddingContext: parafree strata insufficient within the radius cap; "
          "lower lambda_hint or raise radius_cap");
    GreedyOptions greedy;
    greedy.radius_cap = static_cast<int>(radius);
    greedy.collect_solution_stats = false;
    greedy.max_nodes = options.max_nodes;
    ParafreeSet built = greedy_build(static_cast<int>(radius), greedy);

    bool feasible = true;
    std::vector<std::vector<std::size_t>> picks(static_cast<std::size_t>(max_ell) + 1);
    for (long long n = 1; n <= max_ell && feasible; ++n) {
      const long long lo = q * n;
      const long long hi = q * (n + 1) - 1;
      const long long needed = 2 * level_sizes[static_cast<std::size_t>(n)];
      auto& pick = picks[static_cast<std::size_t>(n)];
      for (std::size_t k = 0; k < built.members.size() &&
                              static_cast<long long>(pick.size()) < needed;
           ++k) {
        if (built.member_length[k] >= lo && built.member_length[k] <= hi) pick.push_back(k);
      }
      feasible = static_cast<long long>(pick.size()) == needed;
    }
    if (!feasible) {
      log::info("EmbeddingContext: strata too thin for lambda = 1/" + std::to_string(q));
      continue;
    }

    ctx.q_ = q;
    ctx.parafree_ = std::move(built);
    for (long long n = 1; n <= max_ell; ++n) {
      for (std::size_t k : picks[static_cast<std::size_t>(n)]) {
        ctx.w_.push_back(ctx.parafree_.members[k]);
        ctx.w_words_.push_back(ctx.parafree_.member_words[k]);
      }
    }
    selected = true;
  }

  for (std::size_t i = 0; i < ctx.w_.size(); ++i)
    ctx.w_index_by_key_.emplace(ctx.M_.canonical_key(ctx.w_[i]), static_cast<int>(i + 1));
  if (ctx.w_index_by_key_.size() != ctx.w_.size())
    throw std::runtime_error("EmbeddingContext: repeated elements in the enumeration");

  // Step generators, in pairing order.
  for (const auto h : ctx.ordered_h_) {
    ctx.u_.push_back(ctx.K_.step(ctx.y_high(h)));
    ctx.u_.push_back(ctx.K_.step(ctx.y_lamp(h)));
  }
  if (ctx.u_.size() != ctx.w_.size())
    throw std::runtime_error("EmbeddingContext: enumeration sizes disagree");

  // The enumeration condition lambda |w_i|_S < l(h) + 1 for the paired h.
  for (std::size_t i = 0; i < ctx.u_.size(); ++i) {
    const auto h = ctx.ordered_h_[i / 2];
    const long long len = lamplighter_length(ctx.w_[i]);
    if (!(len < ctx.q_ * (ctx.metric_(h) + 1)))
      throw std::runtime_error("EmbeddingContext: enumeration condition violated");
  }

  // Stratified counting: #{w in P0 : lambda |w| < n + 1} must equal
  // 2 #{h != 1 : l(h) <= n} + 1 at every level.
  ctx.strata_counts_.assign(static_cast<std::size_t>(max_ell) + 1, 0);
  for (long long n = 0; n <= max_ell; ++n) {
    long long count = 1;  // the identity, always in P0
    for (const auto& w : ctx.w_)
      if (lamplighter_length(w) < ctx.q_ * (n + 1)) ++count;
    long long expected = 1;
    for (long long k = 1; k <= n; ++k) expected += 2 * level_sizes[static_cast<std::size_t>(k)];
    if (count != expected)
      throw std::runtime_error("EmbeddingContext: stratified counting violated");
    ctx.strata_counts_[static_cast<std::size_t>(n)] = count;
  }

  // The distinguished base function g: t at 1, u_i at w_i, trivial elsewhere.
  ctx.g_elem_ = ctx.G_.from_base_point(ctx.M_.identity(), ctx.t_);
  for (std::size_t i = 0; i < ctx.w_.size(); ++i) {
    ctx.g_elem_ = ctx.G_.multiply(
        ctx.g_elem_, ctx.G_.from_base_point(ctx.w_[i], ctx.u_[static_cast<std::size_t>(i)]));
  }

  // Y letters, both signs, for the projection checks; also verify that each
  // [t, u_i] lands on the expected generator of V inside K.
  for (const auto h : ctx.ordered_h_) {
    for (const auto& y : {ctx.y_high(h), ctx.y_lamp(h)}) {
      ctx.y_letter_keys_.insert(ctx.V_.canonical_key(y));
      ctx.y_letter_keys_.insert(ctx.V_.canonical_key(ctx.V_.invert(y)));
    }
  }
  for (std::size_t i = 0; i < ctx.u_.size(); ++i) {
    const auto h = ctx.ordered_h_[i / 2];
    const auto y = i % 2 == 0 ? ctx.y_high(h) : ctx.y_lamp(h);
    const auto& ui = ctx.u_[i];
    const auto comm = ctx.K_.multiply(ctx.K_.multiply(ctx.t_, ui),
                                      ctx.K_.multiply(ctx.K_.invert(ctx.t_), ctx.K_.invert(ui)));
    if (!ctx.K_.equal(comm, ctx.k_from_v(y)))
      throw std::runtime_error("EmbeddingContext: [t, u_i] is not the expected generator");
  }

  // Fitted growth of the parafree set at this lambda, flagged against
  // max(growth base, 3).
  double fitted = 1e18;
  for (long long n = 1; n <= max_ell; ++n) {
    const long long cnt = ctx.parafree_.count_within(static_cast<int>(ctx.q_ * (n + 1) - 1));
    fitted = std::min(fitted, std::pow(static_cast<double>(cnt), 1.0 / static_cast<double>(n)));
  }
  ctx.fitted_c_ = max_ell == 0 ? 1.0 : fitted;
  const double required = std::max(ctx.metric_.growth.fitted_base, 3.0);
  ctx.growth_condition_met_ = max_ell == 0 || ctx.fitted_c_ >= required;
  if (!ctx.growth_condition_met_) {
    log::info("EmbeddingContext: fitted parafree growth below max(a, 3); flagged");
  }
  return ctx;
}

nlohmann::json EmbeddingContext::summary_json() const {
  nlohmann::json ordered = nlohmann::json::array();
  for (const auto h : ordered_h_)
    ordered.push_back(nlohmann::json{{"element", H_.describe(h)}, {"length", metric_(h)}});
  nlohmann::json pairs = nlohmann::json::array();
  for (int i = 1; i <= pair_count(); ++i) {
    pairs.push_back(nlohmann::json{{"index", i},
                                   {"w", M_.to_json(w(i))},
                                   {"w_length", lamplighter_length(w(i))}});
  }
  char growth[32];
  char fitted[32];
  std::snprintf(growth, sizeof(growth), "%.6f", growth_base());
  std::snprintf(fitted, sizeof(fitted), "%.6f", fitted_parafree_growth());
  return nlohmann::json{{"order", H_.order()},
                        {"max_length", max_length()},
                        {"growth_base", growth},
                        {"lambda", "1/" + std::to_string(q_)},
                        {"theta", "1/" + std::to_string(theta_denominator())},
                        {"strata_counts", strata_counts_},
                        {"pair_count", pair_count()},
                        {"parafree_radius", parafree_.radius_built},
                        {"fitted_parafree_growth", fitted},
                        {"growth_condition_met", growth_condition_met_},
                        {"ordered_elements", ordered},
                        {"pairing", pairs}};
}

}  // namespace magnusforge
