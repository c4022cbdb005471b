// Acceptance suite: runs every top-level criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exit code is the number of
// failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "helpers.hpp"
#include "magnusforge/embedding.hpp"
#include "magnusforge/finite_group.hpp"
#include "magnusforge/magnus.hpp"
#include "magnusforge/metrics.hpp"
#include "magnusforge/parafree.hpp"

using namespace magnusforge;

namespace {

struct Criterion {
  int id;
  std::string title;
  double time_limit_seconds;
  std::function<void()> run;  // throws on failure
};

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& what) {
  if (!condition) throw Failure(what);
}

using ZZ = FreeAbelianGroup;

long long taxicab(const ZZ::Element& e) {
  long long acc = 0;
  for (const auto& [i, v] : e) acc += v < 0 ? -v : v;
  return acc;
}

const char* kWorkedWordText = "x1^-3 x2^-1 x1 x2 x1^3 x2 x1 x2";

// --------------------------------------------------------------- criterion 1
void criterion_worked_example() {
  ZZ g("h");
  std::map<int, ZZ::Element> gens{{1, g.basis(1)}, {2, g.basis(2)}};
  MagnusSetup<ZZ> setup(g, gens, [](const ZZ::Element& e) { return taxicab(e); });
  const auto img = magnus_image(setup, Word::parse(kWorkedWordText));

  const auto h = [&](long a, long b) { return g.multiply(g.basis(1, a), g.basis(2, b)); };
  auto t1 = setup.ring.monomial(h(1, 1), 1);
  t1 = setup.ring.add(t1, setup.ring.monomial(h(-3, -1), 1));
  t1 = setup.ring.add(t1, setup.ring.monomial(h(-3, 0), -1));
  t1 = setup.ring.add(t1, setup.ring.one());
  auto t2 = setup.ring.monomial(h(2, 1), 1);
  t2 = setup.ring.add(t2, setup.ring.monomial(h(1, 0), 1));
  t2 = setup.ring.add(t2, setup.ring.monomial(h(-2, -1), 1));
  t2 = setup.ring.add(t2, setup.ring.monomial(h(-3, -1), -1));

  require(img.w.size() == 2, "image must touch both generators");
  require(setup.ring.equal(img.w.at(1), t1), "t_1 differs from the displayed value");
  require(setup.ring.equal(img.w.at(2), t2), "t_2 differs from the displayed value");
  require(g.equal(img.top, h(2, 2)), "top component differs");
  require(image_norm(setup, img) == 8, "norm must be 8");

  const auto rs = rs_check(setup, img);
  require(rs.ok, "rs identity must hold");
  require(setup.ring.equal(rs.s.at(1), t1) && setup.ring.equal(rs.s.at(2), t2),
          "witnesses must equal the displayed coefficients");
  const auto lhs = setup.ring.add(
      setup.ring.mul(rs.s.at(1), setup.ring.subtract(setup.ring.monomial(g.basis(1), 1),
                                                     setup.ring.one())),
      setup.ring.mul(rs.s.at(2), setup.ring.subtract(setup.ring.monomial(g.basis(2), 1),
                                                     setup.ring.one())));
  require(setup.ring.equal(lhs, setup.ring.subtract(setup.ring.monomial(h(2, 2), 1),
                                                    setup.ring.one())),
          "displayed ring identity must hold");

  const auto graph = build_cancellation_graph(setup, img);
  verify_graph_structure(setup, graph);
  require(graph.red_edge_count() == 8, "exactly 8 red edges expected");
  require(!graph.arc.empty(), "arc from o to o' expected");
  require(graph.vertices[graph.o].sign == -1 &&
              g.equal(graph.vertices[graph.o].elem, g.identity()),
          "o must carry label -1");
  require(graph.vertices[graph.o_prime].sign == 1 &&
              g.equal(graph.vertices[graph.o_prime].elem, h(2, 2)),
          "o' must carry label g");

  const auto bound = verify_magnus_bound(setup, img);
  require(bound.ell_top == 4 && bound.norm == 8, "bound triple must be (4, 8, arc)");
  require(bound.arc_weight >= 4 && bound.arc_weight <= 8, "arc weight must sit in [4, 8]");
}

// --------------------------------------------------------------- criterion 2
void criterion_length_bound_exhaustive() {
  ZZ g("h");
  std::map<int, ZZ::Element> gens{{1, g.basis(1)}, {2, g.basis(2)}};
  MagnusSetup<ZZ> standard(g, gens, [](const ZZ::Element& e) { return taxicab(e); });
  MagnusSetup<ZZ> weighted(g, gens, [](const ZZ::Element& e) {
    long long acc = 0;
    for (const auto& [i, v] : e) acc += (i == 2 ? 3 : 1) * (v < 0 ? -v : v);
    return acc;
  });
  require(weighted.l.at(2) == 3, "weighted setup must give l_2 = 3");

  long long violations = 0;
  long long checked = 0;
  testutil::reduced_words_up_to(2, 6, [&](const Word& f) {
    for (auto* setup : {&standard, &weighted}) {
      const auto img = magnus_image(*setup, f);
      const auto bound = verify_magnus_bound(*setup, img);  // throws on violation
      if (BigInt(bound.ell_top) > bound.norm) ++violations;
      ++checked;
    }
  });
  require(violations == 0, "length bound violated");
  require(checked == 2 * 1457, "expected 1457 reduced words per length function");
}

// --------------------------------------------------------------- criterion 3
void criterion_equality_biconditional() {
  ZZ g("h");
  std::map<int, ZZ::Element> gens{{1, g.basis(1)}, {2, g.basis(2)}};
  testutil::reduced_words_up_to(2, 4, [&](const Word& f) {
    const auto result =
        mcor_equality_check(g, gens, f, std::max<int>(1, static_cast<int>(f.size())));
    require(result.norm_matches_length == result.quotient_lengths_equal,
            "biconditional failed at word " + f.str());
  });
}

// --------------------------------------------------------------- criterion 4
void criterion_translate_criteria() {
  const LamplighterGroup M;
  const std::vector<Lamplighter> gens{LamplighterGroup::lamp_gen(),
                                      LamplighterGroup::shift_gen()};
  const auto ball = enumerate_ball(M, std::span<const Lamplighter>(gens), 4);

  std::mt19937_64 gen = testutil::rng(20240801);
  std::uniform_int_distribution<std::size_t> pick(0, ball.elements.size() - 1);
  std::uniform_int_distribution<int> size_dist(1, 6);

  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<Lamplighter> subset;
    std::unordered_set<std::string> seen;
    const int target = size_dist(gen);
    while (static_cast<int>(subset.size()) < target) {
      const auto& e = ball.elements[pick(gen)];
      if (seen.insert(M.canonical_key(e)).second) subset.push_back(e);
    }
    const bool a = is_parallelogram_free(subset);
    const bool b = translate_criterion_check(subset, TranslateSide::left);
    const bool c = translate_criterion_check(subset, TranslateSide::right);
    require(a == b && b == c, "criteria (a), (b), (c) disagree");
  }

  const auto base = greedy_build(3);
  std::uniform_int_distribution<int> side(0, 1);
  for (int trial = 0; trial < 100; ++trial) {
    const auto& t = ball.elements[pick(gen)];
    const bool left = side(gen) == 0;
    std::vector<Lamplighter> translated;
    for (const auto& p : base.members)
      translated.push_back(left ? M.multiply(t, p) : M.multiply(p, t));
    require(is_parallelogram_free(translated), "translate broke parallelogram-freeness");
  }
}

// --------------------------------------------------------------- criterion 5
void criterion_greedy_build() {
  GreedyOptions options;
  options.radius_cap = 6;
  const auto set = greedy_build(5, options);

  require(is_parallelogram_free(set.members), "greedy set has a parallelogram");
  require(translate_criterion_check(set.members, TranslateSide::left),
          "left translate criterion failed");
  require(translate_criterion_check(set.members, TranslateSide::right),
          "right translate criterion failed");

  require(set.log.size() == 6, "six per-radius entries expected");
  for (std::size_t r = 1; r < set.log.size(); ++r) {
    require(set.log[r].members > set.log[r - 1].members,
            "per-radius counts must strictly increase");
  }
  for (const auto& entry : set.log) {
    const std::int64_t n =
        entry.radius == 0 ? 0 : set.log[static_cast<std::size_t>(entry.radius) - 1].members;
    require(entry.solutions_eq6 == n, "solutions of x = u must number n");
    require(entry.solutions_eq7 <= n * n * n, "solutions of the cubic family exceed n^3");
    require(entry.solutions_eq8 <= n * n, "solutions of the square family exceed n^2");
  }
  require(set.fitted_growth > 1.0, "fitted growth base must exceed 1");
}

// --------------------------------------------------------------- criterion 6
void criterion_square_roots() {
  const LamplighterGroup M;
  const std::vector<Lamplighter> gens{LamplighterGroup::lamp_gen(),
                                      LamplighterGroup::shift_gen()};
  const auto ball = enumerate_ball(M, std::span<const Lamplighter>(gens), 6);
  std::mt19937_64 gen = testutil::rng(20240806);
  std::uniform_int_distribution<std::size_t> pick(0, ball.elements.size() - 1);

  for (int trial = 0; trial < 500; ++trial) {
    const auto& y = ball.elements[pick(gen)];
    const auto root = lamplighter_square_root(M.multiply(y, y));
    require(root.has_value(), "square of a ball element must have a root");
    require(M.equal(*root, y), "root of y^2 must be y itself");
  }
  for (int trial = 0; trial < 500; ++trial) {
    const auto a = testutil::random_lamplighter(gen, 5, 4, 5);
    const auto root = lamplighter_square_root(a);
    if (root) require(M.equal(M.multiply(*root, *root), a), "returned root must square back");
  }
}

// --------------------------------------------------------------- criterion 7
void criterion_y_length() {
  for (const auto& H : {FiniteGroup::cyclic(5), FiniteGroup::cyclic(7),
                        FiniteGroup::symmetric(3)}) {
    const auto ctx = EmbeddingContext::build(H, H.default_generators());
    for (const auto h : ctx.ordered_nontrivial()) {
      const auto [y_len, expected] =
          ctx.y_length_check(h, static_cast<int>(ctx.max_length()) + 1);
      require(y_len == expected, "generator length differs from l(h) + 1");
    }
  }
}

// --------------------------------------------------------------- criterion 8
void criterion_commutator_support() {
  const auto ctx = EmbeddingContext::build(FiniteGroup::cyclic(5),
                                           FiniteGroup::cyclic(5).default_generators());
  const LamplighterGroup& M = ctx.m_group();
  const KGroup& K = ctx.k_group();
  const std::vector<Lamplighter> gens{LamplighterGroup::lamp_gen(),
                                      LamplighterGroup::shift_gen()};
  const auto ball = enumerate_ball(M, std::span<const Lamplighter>(gens), 3);
  for (const auto& r : ball.elements) {
    const auto support = ctx.commutator_support(r);  // throws if support exceeds one point
    require(support.size() <= 1, "commutator support larger than one point");
  }

  const auto t = K.shift_generator(1);
  for (int i = 1; i <= ctx.pair_count(); ++i) {
    const auto support = ctx.commutator_support(ctx.w(i));
    require(support.size() == 1, "conjugate by w_i must have one support point");
    require(M.equal(support[0].first, M.identity()), "support point must be the identity");
    const auto expected = K.multiply(K.multiply(t, ctx.u(i)),
                                     K.multiply(K.invert(t), K.invert(ctx.u(i))));
    require(K.equal(support[0].second, expected), "value must be [t, u_i]");
  }
}

// --------------------------------------------------------------- criterion 9
void criterion_distortion_certificates() {
  std::mt19937_64 gen = testutil::rng(20240808);
  for (const auto& H : {FiniteGroup::cyclic(5), FiniteGroup::cyclic(7),
                        FiniteGroup::symmetric(3)}) {
    const auto ctx = EmbeddingContext::build(H, H.default_generators());
    std::uniform_int_distribution<int> letter(0, 2);
    std::uniform_int_distribution<int> sign(0, 1);
    std::uniform_int_distribution<int> len(1, 3);
    std::uniform_int_distribution<int> cut(0, 1);

    for (const auto h : ctx.group().elements()) {
      const XWord cert = ctx.embed_h(h);  // asserts evaluation and budget internally
      require(static_cast<long long>(cert.size()) <=
                  ctx.theta_denominator() * ctx.metric()(h),
              "certificate exceeds (8 + 16/lambda) l(h)");
      require(ctx.g_group().equal(ctx.eval(cert), ctx.embedded_h(h)),
              "certificate does not evaluate to h");
      const auto chain = ctx.lower_bound_chain(cert);
      require(chain.h == h && chain.ell == ctx.metric()(h),
              "chain does not certify l(h) on the certificate");

      for (int trial = 0; trial < 20; ++trial) {
        XWord pad;
        const int n = len(gen);
        for (int k = 0; k < n; ++k)
          pad.append(static_cast<XLetter>(letter(gen)), sign(gen) == 0 ? 1 : -1);
        XWord padded;
        if (cut(gen) == 0) {
          padded.append_word(pad);
          padded.append_inverse(pad);
          padded.append_word(cert);
        } else {
          padded.append_word(cert);
          padded.append_word(pad);
          padded.append_inverse(pad);
        }
        const auto padded_chain = ctx.lower_bound_chain(padded);
        require(padded_chain.h == h && padded_chain.ell == ctx.metric()(h),
                "chain does not certify l(h) on a padded word");
        require(padded_chain.ell <= static_cast<long long>(padded.size()),
                "certified bound exceeds the padded length");
      }
    }
  }
}

// -------------------------------------------------------------- criterion 10
void criterion_metrics_consistency() {
  const LamplighterGroup M;
  const std::vector<Lamplighter> gens{LamplighterGroup::lamp_gen(),
                                      LamplighterGroup::shift_gen()};
  const auto ball = enumerate_ball(M, std::span<const Lamplighter>(gens), 6);
  for (std::size_t k = 0; k < ball.elements.size(); ++k) {
    require(lamplighter_length(ball.elements[k]) == ball.distance[k],
            "closed-form length differs from BFS");
  }

  const FiniteGroup z5 = FiniteGroup::cyclic(5);
  const FiniteGroup z7 = FiniteGroup::cyclic(7);
  const FiniteGroup s3 = FiniteGroup::symmetric(3);
  const FiniteMetric m5 = finite_word_metric(z5, z5.default_generators());
  const FiniteMetric m7 = finite_word_metric(z7, z7.default_generators());
  const FiniteMetric ms3 = finite_word_metric(s3, s3.default_generators());
  const std::vector<ProductFactor> factors{{[&](int e) { return m5(e); }},
                                           {[&](int e) { return ms3(e); }},
                                           {[&](int e) { return m7(e); }}};
  const std::vector<const FiniteGroup*> groups{&z5, &s3, &z7};

  std::mt19937_64 gen = testutil::rng(20240810);
  for (int trial = 0; trial < 500; ++trial) {
    std::map<int, int> a;
    std::map<int, int> b;
    for (int k = 1; k <= 3; ++k) {
      std::uniform_int_distribution<int> pick(0, groups[static_cast<std::size_t>(k - 1)]->order() - 1);
      a[k] = pick(gen);
      b[k] = pick(gen);
    }
    const long long la = product_length(factors, a);
    bool is_id = true;
    std::map<int, int> a_inv;
    std::map<int, int> ab;
    for (const auto& [k, e] : a) {
      const auto* grp = groups[static_cast<std::size_t>(k - 1)];
      is_id = is_id && grp->equal(e, grp->identity());
      a_inv[k] = grp->invert(e);
      ab[k] = grp->multiply(e, b.at(k));
    }
    require((la == 0) == is_id, "product length zero iff identity tuple");
    require(product_length(factors, a_inv) == la, "product length symmetric under inverse");
    require(product_length(factors, ab) <= la + product_length(factors, b),
            "product length not subadditive");
  }

  const auto rep = growth_report(m5.lengths, 2);
  require(rep.counts == std::vector<std::int64_t>{1, 3, 5}, "growth counts differ from 1, 3, 5");
  for (std::size_t n = 1; n < rep.counts.size(); ++n) {
    require(static_cast<double>(rep.counts[n]) <=
                std::pow(rep.fitted_base, static_cast<double>(n)) + 1e-9,
            "fitted base fails to witness a level");
  }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "worked Magnus image, rs identity and cancellation graph", 1.0,
       criterion_worked_example},
      {2, "length bound on all reduced words up to length 6, two length functions", 60.0,
       criterion_length_bound_exhaustive},
      {3, "norm equality criterion on all reduced words up to length 4", 120.0,
       criterion_equality_biconditional},
      {4, "parallelogram criteria agree on 1000 subsets, stable under translation", 600.0,
       criterion_translate_criteria},
      {5, "greedy parallelogram-free set to radius 5 with solution-count bounds", 300.0,
       criterion_greedy_build},
      {6, "square-root uniqueness on 500 squares and 500 probes", 600.0,
       criterion_square_roots},
      {7, "generator length |h|_Y = l(h) + 1 for z5, z7, s3", 60.0, criterion_y_length},
      {8, "one-point commutator support over the radius-3 ball, z5 context", 600.0,
       criterion_commutator_support},
      {9, "two-sided distortion certificates for z5, z7, s3 with padded words", 300.0,
       criterion_distortion_certificates},
      {10, "closed-form lamplighter length, product length axioms, growth counts", 600.0,
       criterion_metrics_consistency},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      criterion.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (error.empty() && seconds > criterion.time_limit_seconds) {
      error = "time limit exceeded";
    }
    if (error.empty()) {
      std::printf("[PASS] criterion %2d: %s (%.2fs)\n", criterion.id, criterion.title.c_str(),
                  seconds);
    } else {
      std::printf("[FAIL] criterion %2d: %s (%.2fs): %s\n", criterion.id,
                  criterion.title.c_str(), seconds, error.c_str());
      ++failures;
    }
  }
  return failures;
}
