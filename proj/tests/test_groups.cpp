#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "magnusforge/finite_group.hpp"
#include "magnusforge/group.hpp"
#include "magnusforge/word.hpp"

using namespace magnusforge;

namespace {

// Independent reduction oracle: scan for one adjacent cancelling pair at a
// time until none is left.
std::vector<Word::Letter> fixpoint_reduce(std::vector<Word::Letter> letters) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k + 1 < letters.size(); ++k) {
      if (letters[k].index == letters[k + 1].index && letters[k].sign == -letters[k + 1].sign) {
        letters.erase(letters.begin() + static_cast<std::ptrdiff_t>(k),
                      letters.begin() + static_cast<std::ptrdiff_t>(k) + 2);
        changed = true;
        break;
      }
    }
  }
  return letters;
}

template <GroupLike G>
void check_axioms_on(const G& group, const std::vector<typename G::Element>& sample) {
  for (const auto& a : sample) {
    CHECK(group.equal(group.multiply(a, group.identity()), a));
    CHECK(group.equal(group.multiply(group.identity(), a), a));
    CHECK(group.equal(group.multiply(a, group.invert(a)), group.identity()));
    CHECK(group.equal(group.multiply(group.invert(a), a), group.identity()));
  }
  for (std::size_t i = 0; i < sample.size(); ++i) {
    for (std::size_t j = 0; j < sample.size(); ++j) {
      for (std::size_t k = 0; k < sample.size(); ++k) {
        const auto lhs = group.multiply(group.multiply(sample[i], sample[j]), sample[k]);
        const auto rhs = group.multiply(sample[i], group.multiply(sample[j], sample[k]));
        CHECK(group.equal(lhs, rhs));
      }
    }
  }
  // canonical_key(x) == canonical_key(y) iff equal(x, y)
  for (const auto& a : sample) {
    for (const auto& b : sample) {
      CHECK((group.canonical_key(a) == group.canonical_key(b)) == group.equal(a, b));
    }
  }
}

}  // namespace

TEST_CASE("free reduction basics") {
  std::vector<Word::Letter> cancel{{1, 1}, {1, -1}};
  CHECK(Word::reduce(cancel).empty());
  CHECK(Word().empty());

  std::vector<Word::Letter> mid{{1, 1}, {2, 1}, {2, -1}, {1, 1}};
  const Word reduced = Word::reduce(mid);
  REQUIRE(reduced.size() == 2);
  CHECK(reduced.letters()[0] == Word::Letter{1, 1});
  CHECK(reduced.letters()[1] == Word::Letter{1, 1});
}

TEST_CASE("free reduction agrees with the fixpoint oracle on every sequence of length <= 6") {
  std::vector<Word::Letter> alphabet{{1, 1}, {1, -1}, {2, 1}, {2, -1}};
  std::vector<Word::Letter> seq;
  const std::function<void(int)> rec = [&](int remaining) {
    const Word stack_based = Word::reduce(seq);
    const auto oracle = fixpoint_reduce(seq);
    REQUIRE(stack_based.letters() == oracle);
    if (remaining == 0) return;
    for (const auto& l : alphabet) {
      seq.push_back(l);
      rec(remaining - 1);
      seq.pop_back();
    }
  };
  rec(6);
}

TEST_CASE("free reduction is idempotent and length-nonincreasing on inputs of length <= 8") {
  std::vector<Word::Letter> alphabet{{1, 1}, {1, -1}, {2, 1}, {2, -1}};
  std::mt19937_64 gen = testutil::rng(2024);
  std::uniform_int_distribution<int> pick(0, 3);
  for (int trial = 0; trial < 20000; ++trial) {
    std::uniform_int_distribution<int> len_dist(0, 8);
    std::vector<Word::Letter> seq;
    const int len = len_dist(gen);
    for (int k = 0; k < len; ++k) seq.push_back(alphabet[static_cast<std::size_t>(pick(gen))]);
    const Word once = Word::reduce(seq);
    CHECK(once.size() <= seq.size());
    CHECK(Word::reduce(once.letters()) == once);
  }
}

TEST_CASE("word parsing and printing") {
  const Word f = Word::parse("x1^-3 x2^-1 x1 x2 x1^3 x2 x1 x2");
  CHECK(f.size() == 12);
  CHECK(f.str() == "x1^-3 x2^-1 x1 x2 x1^3 x2 x1 x2");
  CHECK(Word::parse("x1 x1^-1").empty());
  CHECK(Word::parse("").empty());
  CHECK_THROWS_AS(Word::parse("y1"), std::invalid_argument);
  CHECK_THROWS_AS(Word::parse("x0^"), std::invalid_argument);

  const Word back = Word::from_json(f.to_json());
  CHECK(back == f);
}

TEST_CASE("evaluate_word basics and error paths") {
  FreeAbelianGroup Z2("h");
  std::map<int, FreeAbelianGroup::Element> assign{{1, Z2.basis(1)}, {2, Z2.basis(2)}};

  CHECK(Z2.equal(evaluate_word(Z2, assign, Word()), Z2.identity()));
  const auto v = evaluate_word(Z2, assign, Word::parse("x1 x2"));
  CHECK(Z2.equal(v, Z2.multiply(Z2.basis(1), Z2.basis(2))));

  // Image of the long commutator-like word is h1^2 h2^2.
  const auto img = evaluate_word(Z2, assign, Word::parse("x1^-3 x2^-1 x1 x2 x1^3 x2 x1 x2"));
  FreeAbelianGroup::Element expected{{1, 2}, {2, 2}};
  CHECK(Z2.equal(img, expected));

  CHECK_THROWS_AS(evaluate_word(Z2, assign, Word::parse("x3")), std::invalid_argument);
}

TEST_CASE("evaluate_word is a homomorphism on all reduced word pairs of length <= 5") {
  const auto words = testutil::all_reduced_words(2, 5);

  CyclicGroup z5(5);
  std::map<int, CyclicGroup::Element> c_assign{{1, 1}, {2, 3}};
  FreeAbelianGroup zz("h");
  std::map<int, FreeAbelianGroup::Element> a_assign{{1, zz.basis(1)}, {2, zz.basis(2)}};
  SymmetricGroup s3(3);
  std::map<int, SymmetricGroup::Element> s_assign{{1, s3.from_images({1, 0, 2})},
                                                  {2, s3.from_images({1, 2, 0})}};
  IntegerGroup z;
  std::map<int, IntegerGroup::Element> z_assign{{1, 1}, {2, -2}};

  const auto check_group = [&](const auto& group, const auto& assign) {
    std::vector<std::decay_t<decltype(group.identity())>> images;
    images.reserve(words.size());
    for (const auto& w : words) images.push_back(evaluate_word(group, assign, w));
    for (std::size_t i = 0; i < words.size(); ++i) {
      for (std::size_t j = 0; j < words.size(); ++j) {
        const auto product = evaluate_word(group, assign, words[i].concat(words[j]));
        if (!group.equal(product, group.multiply(images[i], images[j]))) {
          REQUIRE(group.equal(product, group.multiply(images[i], images[j])));
        }
      }
    }
  };
  check_group(z5, c_assign);
  check_group(zz, a_assign);
  check_group(s3, s_assign);
  check_group(z, z_assign);
}

TEST_CASE("group axioms and canonical keys on the concrete groups") {
  std::mt19937_64 gen = testutil::rng(7);

  CyclicGroup z6(6);
  check_axioms_on(z6, {0, 1, 2, 3, 4, 5});

  IntegerGroup z;
  check_axioms_on(z, {-3, -1, 0, 2, 7});

  FreeAbelianGroup fa("a");
  std::vector<FreeAbelianGroup::Element> fa_sample{fa.identity(), fa.basis(1), fa.basis(2, -2),
                                                   fa.multiply(fa.basis(1, 3), fa.basis(5, 1))};
  check_axioms_on(fa, fa_sample);

  SymmetricGroup s4(4);
  std::vector<SymmetricGroup::Element> perms;
  perms.push_back(s4.identity());
  std::vector<int> images{0, 1, 2, 3};
  for (int k = 0; k < 6; ++k) {
    std::shuffle(images.begin(), images.end(), gen);
    perms.push_back(s4.from_images(images));
  }
  check_axioms_on(s4, perms);

  const FiniteGroup table_s3 = FiniteGroup::symmetric(3);
  check_axioms_on(table_s3, table_s3.elements());
}

TEST_CASE("free abelian canonical form stores no zeros") {
  FreeAbelianGroup fa("a");
  const auto cancels = fa.multiply(fa.basis(3, 2), fa.basis(3, -2));
  CHECK(cancels.empty());
  CHECK(fa.equal(cancels, fa.identity()));
  CHECK(fa.canonical_key(cancels) == fa.canonical_key(fa.identity()));

  const auto e = fa.multiply(fa.basis(1, 1), fa.basis(2, -1));
  const auto round = fa.from_json(fa.to_json(e));
  CHECK(fa.equal(e, round));
}

TEST_CASE("finite group constructors agree with their symmetric/cyclic models") {
  const FiniteGroup z5 = FiniteGroup::cyclic(5);
  CHECK(z5.order() == 5);
  CHECK(z5.multiply(3, 4) == 2);
  CHECK(z5.invert(2) == 3);

  const FiniteGroup s3 = FiniteGroup::symmetric(3);
  CHECK(s3.order() == 6);
  REQUIRE(s3.default_generators().size() == 2);

  const FiniteGroup z2xz3 = FiniteGroup::direct_product(FiniteGroup::cyclic(2),
                                                        FiniteGroup::cyclic(3));
  CHECK(z2xz3.order() == 6);
  // z2 x z3 is cyclic of order 6: some element has order 6.
  bool has_order_6 = false;
  for (const auto e : z2xz3.elements()) {
    int ord = 1;
    auto acc = e;
    while (!z2xz3.equal(acc, z2xz3.identity())) {
      acc = z2xz3.multiply(acc, e);
      ++ord;
    }
    has_order_6 = has_order_6 || ord == 6;
  }
  CHECK(has_order_6);

  const FiniteGroup reparsed = FiniteGroup::from_table_json(s3.table_json());
  CHECK(reparsed.order() == 6);
  for (const auto a : s3.elements())
    for (const auto b : s3.elements()) CHECK(reparsed.multiply(a, b) == s3.multiply(a, b));

  nlohmann::json bad = s3.table_json();
  bad["table"][0][0] = 1;  // breaks the identity row
  CHECK_THROWS_AS(FiniteGroup::from_table_json(bad), std::invalid_argument);
}
