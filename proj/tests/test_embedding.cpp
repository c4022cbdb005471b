#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "magnusforge/embedding.hpp"
#include "magnusforge/metrics.hpp"

using namespace magnusforge;

namespace {

EmbeddingContext build_for(const FiniteGroup& H) {
  return EmbeddingContext::build(H, H.default_generators());
}

XWord random_trivial_pad(const EmbeddingContext& ctx, std::mt19937_64& gen) {
  std::uniform_int_distribution<int> len(1, 3);
  std::uniform_int_distribution<int> letter(0, 2);
  std::uniform_int_distribution<int> sign(0, 1);
  XWord v;
  const int n = len(gen);
  for (int k = 0; k < n; ++k)
    v.append(static_cast<XLetter>(letter(gen)), sign(gen) == 0 ? 1 : -1);
  XWord pad = v;
  pad.append_inverse(v);
  // Evaluates to the identity by construction.
  CHECK(ctx.g_group().equal(ctx.eval(pad), ctx.g_group().identity()));
  return pad;
}

}  // namespace

TEST_CASE("context for the two-element group") {
  const auto ctx = build_for(FiniteGroup::cyclic(2));
  CHECK(ctx.pair_count() == 2);
  CHECK(ctx.strata_counts() == std::vector<long long>{1, 3});
  CHECK(ctx.max_length() == 1);
}

TEST_CASE("context for the five-element group matches the stratified counts") {
  const auto ctx = build_for(FiniteGroup::cyclic(5));
  CHECK(ctx.pair_count() == 8);
  CHECK(ctx.strata_counts() == std::vector<long long>{1, 5, 9});
  // Lengths 1, 2, 2, 1 for the nontrivial elements.
  const auto& metric = ctx.metric();
  CHECK(metric(1) == 1);
  CHECK(metric(2) == 2);
  CHECK(metric(3) == 2);
  CHECK(metric(4) == 1);
  CHECK(ctx.growth_base() == doctest::Approx(3.0));
}

TEST_CASE("degenerate context for the trivial group") {
  const auto ctx = build_for(FiniteGroup::cyclic(1));
  CHECK(ctx.pair_count() == 0);
  CHECK(ctx.ordered_nontrivial().empty());
  // g is supported on the identity only, with value t.
  const auto& g = ctx.g_element();
  REQUIRE(g.base.size() == 1);
  CHECK(ctx.m_group().equal(g.base.begin()->second.first, ctx.m_group().identity()));
  CHECK(ctx.embed_h(ctx.group().identity()).size() == 0);
}

TEST_CASE("g evaluates to t at 1, u_i at w_i, and 1 elsewhere") {
  const auto ctx = build_for(FiniteGroup::cyclic(5));
  const auto& K = ctx.k_group();

  CHECK(K.equal(ctx.g_eval(ctx.m_group().identity()), K.shift_generator(1)));
  for (int i = 1; i <= ctx.pair_count(); ++i)
    CHECK(K.equal(ctx.g_eval(ctx.w(i)), ctx.u(i)));

  // A point outside the enumerated set.
  Lamplighter far;
  far.shift = 40;
  CHECK(K.equal(ctx.g_eval(far), K.identity()));
}

TEST_CASE("enumeration condition and pairing order") {
  for (const auto& H : {FiniteGroup::cyclic(5), FiniteGroup::symmetric(3)}) {
    const auto ctx = build_for(H);
    for (int i = 1; i <= ctx.pair_count(); ++i) {
      const auto h = ctx.ordered_nontrivial()[static_cast<std::size_t>((i - 1) / 2)];
      // lambda |w_i| < l(h) + 1
      CHECK(lamplighter_length(ctx.w(i)) < ctx.q() * (ctx.metric()(h) + 1));
    }
  }
}

TEST_CASE("commutator of g with its w_i-conjugate lands on the paired generator") {
  const auto ctx = build_for(FiniteGroup::cyclic(5));
  const auto& K = ctx.k_group();
  for (int i = 1; i <= ctx.pair_count(); ++i) {
    const auto support = ctx.commutator_support(ctx.w(i));
    REQUIRE(support.size() == 1);
    CHECK(ctx.m_group().equal(support[0].first, ctx.m_group().identity()));
    const auto t = K.shift_generator(1);
    const auto expected = K.multiply(K.multiply(t, ctx.u(i)),
                                     K.multiply(K.invert(t), K.invert(ctx.u(i))));
    CHECK(K.equal(support[0].second, expected));
  }
}

TEST_CASE("commutator support has at most one point over the radius-2 ball") {
  const auto ctx = build_for(FiniteGroup::cyclic(2));
  const std::vector<Lamplighter> gens{LamplighterGroup::lamp_gen(),
                                      LamplighterGroup::shift_gen()};
  const auto ball = enumerate_ball(ctx.m_group(), std::span<const Lamplighter>(gens), 2);
  for (const auto& r : ball.elements) {
    const auto support = ctx.commutator_support(r);  // throws if larger than one
    CHECK(support.size() <= 1);
  }
}

TEST_CASE("y length equals l(h) + 1 for z5 and s3") {
  for (const auto& H : {FiniteGroup::cyclic(5), FiniteGroup::symmetric(3)}) {
    const auto ctx = build_for(H);
    for (const auto h : ctx.ordered_nontrivial()) {
      const auto [y_len, expected] = ctx.y_length_check(h, static_cast<int>(ctx.max_length()) + 1);
      CHECK(y_len == expected);
      CHECK(y_len == ctx.metric()(h) + 1);
    }
    CHECK_THROWS_AS(ctx.y_length_check(H.identity(), 3), std::invalid_argument);
  }
}

TEST_CASE("certificates evaluate to their element within the budget") {
  const auto ctx = build_for(FiniteGroup::cyclic(5));
  for (const auto h : ctx.group().elements()) {
    const XWord cert = ctx.embed_h(h);
    CHECK(static_cast<long long>(cert.size()) <= ctx.theta_denominator() * ctx.metric()(h));
    CHECK(ctx.g_group().equal(ctx.eval(cert), ctx.embedded_h(h)));
  }
}

TEST_CASE("embedded elements are distinct and multiply like the group") {
  const auto ctx = build_for(FiniteGroup::cyclic(5));
  const auto& G = ctx.g_group();
  const auto& H = ctx.group();

  for (const auto a : H.elements()) {
    for (const auto b : H.elements()) {
      if (!H.equal(a, b)) CHECK(!G.equal(ctx.embedded_h(a), ctx.embedded_h(b)));
      const auto product = G.multiply(ctx.eval(ctx.embed_h(a)), ctx.eval(ctx.embed_h(b)));
      CHECK(G.equal(product, ctx.embedded_h(H.multiply(a, b))));
    }
  }
}

TEST_CASE("a powered g-commutator realizes a negative generator power in one shot") {
  // [g, w' g^{-L} w'^{-1}] evaluates to the embedded a_h^{-L}, where w' is
  // the enumeration partner of the lamp generator a_h.
  const auto ctx = build_for(FiniteGroup::cyclic(5));
  const auto& H = ctx.group();
  for (const auto h : ctx.ordered_nontrivial()) {
    const long long ell = ctx.metric()(h);
    int position = 0;
    for (const auto e : ctx.ordered_nontrivial()) {
      ++position;
      if (H.equal(e, h)) break;
    }
    const int i_lamp = 2 * position;

    XWord inner;
    inner.append_s_word(ctx.w_word(i_lamp));
    inner.append_power(XLetter::gfun, -ell);
    XWord tail;
    tail.append_s_word(ctx.w_word(i_lamp));
    inner.append_inverse(tail);
    XWord word;
    word.append(XLetter::gfun, 1);
    word.append_word(inner);
    word.append(XLetter::gfun, -1);
    word.append_inverse(inner);

    const auto expected = ctx.g_group().from_base_point(
        ctx.m_group().identity(),
        ctx.k_from_v(ctx.v_group().invert(power(ctx.v_group(), ctx.y_lamp(h), ell))));
    CHECK(ctx.g_group().equal(ctx.eval(word), expected));
  }
}

TEST_CASE("the projection chain certifies certificate words and padded variants") {
  const auto ctx = build_for(FiniteGroup::cyclic(5));
  std::mt19937_64 gen = testutil::rng(161);

  for (const auto h : ctx.group().elements()) {
    const XWord cert = ctx.embed_h(h);
    const auto chain = ctx.lower_bound_chain(cert);
    CHECK(chain.h == h);
    CHECK(chain.ell == ctx.metric()(h));
    CHECK(chain.ell <= static_cast<long long>(cert.size()));

    for (int trial = 0; trial < 5; ++trial) {
      XWord padded = cert;
      padded.append_word(random_trivial_pad(ctx, gen));
      const auto padded_chain = ctx.lower_bound_chain(padded);
      CHECK(padded_chain.h == h);
      CHECK(padded_chain.ell == ctx.metric()(h));
      CHECK(padded_chain.ell <= static_cast<long long>(padded.size()));
    }
  }
}

TEST_CASE("the chain rejects words outside the embedded copy of H") {
  const auto ctx = build_for(FiniteGroup::cyclic(2));
  XWord just_shift;
  just_shift.append(XLetter::shift, 1);
  CHECK_THROWS_AS(ctx.lower_bound_chain(just_shift), std::runtime_error);

  XWord just_g;
  just_g.append(XLetter::gfun, 1);
  CHECK_THROWS_AS(ctx.lower_bound_chain(just_g), std::runtime_error);
}

TEST_CASE("context summary is serializable and flags are set") {
  const auto ctx = build_for(FiniteGroup::symmetric(3));
  const auto j = ctx.summary_json();
  CHECK(j.at("order").get<int>() == 6);
  CHECK(j.at("pair_count").get<int>() == 10);
  CHECK(j.at("strata_counts").size() == 3);
  CHECK(j.contains("growth_condition_met"));
}
