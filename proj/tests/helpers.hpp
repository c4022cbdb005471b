#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "magnusforge/lamplighter.hpp"
#include "magnusforge/word.hpp"

namespace testutil {

/// All freely reduced words of length exactly `len` over `gens` generators.
inline void reduced_words_of_length(int gens, int len,
                                    const std::function<void(const magnusforge::Word&)>& fn) {
  std::vector<magnusforge::Word::Letter> stack;
  const std::function<void()> rec = [&]() {
    if (static_cast<int>(stack.size()) == len) {
      fn(magnusforge::Word::reduce(stack));
      return;
    }
    for (int i = 1; i <= gens; ++i) {
      for (int sign : {1, -1}) {
        if (!stack.empty() && stack.back().index == i && stack.back().sign == -sign) continue;
        stack.push_back({i, sign});
        rec();
        stack.pop_back();
      }
    }
  };
  rec();
}

inline void reduced_words_up_to(int gens, int max_len,
                                const std::function<void(const magnusforge::Word&)>& fn) {
  for (int len = 0; len <= max_len; ++len) reduced_words_of_length(gens, len, fn);
}

inline std::vector<magnusforge::Word> all_reduced_words(int gens, int max_len) {
  std::vector<magnusforge::Word> out;
  reduced_words_up_to(gens, max_len, [&](const magnusforge::Word& w) { out.push_back(w); });
  return out;
}

/// Deterministic RNG for frozen test values.
inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline magnusforge::Lamplighter random_lamplighter(std::mt19937_64& gen, int max_pos,
                                                   int max_val, int max_shift) {
  std::uniform_int_distribution<int> pos(-max_pos, max_pos);
  std::uniform_int_distribution<int> val(-max_val, max_val);
  std::uniform_int_distribution<int> shift(-max_shift, max_shift);
  std::uniform_int_distribution<int> count(0, 3);
  magnusforge::Lamplighter e;
  const int n = count(gen);
  for (int k = 0; k < n; ++k) {
    const int p = pos(gen);
    const int v = val(gen);
    if (v != 0) e.lamps[p] = v;
  }
  e.shift = shift(gen);
  return e;
}

}  // namespace testutil
