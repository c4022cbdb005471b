#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "magnusforge/group.hpp"

namespace magnusforge {

/// Freely reduced word over an abstract generating alphabet indexed by
/// integers; letters are (generator index, sign). The only way to build a
/// Word is through reduction, so the no-adjacent-cancellation invariant
/// always holds.
class Word {
 public:
  struct Letter {
    int index;
    int sign;  // +1 or -1
    bool operator==(const Letter&) const = default;
  };

  Word() = default;

  static Word reduce(std::span<const Letter> raw) {
    Word w;
    for (const Letter& l : raw) {
      if (l.sign != 1 && l.sign != -1) throw std::invalid_argument("Word: sign must be +-1");
      if (!w.letters_.empty() && w.letters_.back().index == l.index &&
          w.letters_.back().sign == -l.sign) {
        w.letters_.pop_back();
      } else {
        w.letters_.push_back(l);
      }
    }
    return w;
  }

  static Word reduce(const std::vector<Letter>& raw) {
    return reduce(std::span<const Letter>(raw));
  }

  // Whitespace separated tokens of the form "xi" or "xi^k", e.g.
  // "x1^-3 x2^-1 x1 x2 x1^3 x2 x1 x2".
  static Word parse(std::string_view text) {
    std::vector<Letter> raw;
    std::size_t pos = 0;
    while (pos < text.size()) {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos >= text.size()) break;
      std::size_t end = pos;
      while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
      const std::string tok(text.substr(pos, end - pos));
      pos = end;

      if (tok.size() < 2 || tok[0] != 'x')
        throw std::invalid_argument("word syntax: expected xi or xi^k, got '" + tok + "'");
      const std::size_t caret = tok.find('^');
      long exp = 1;
      int index;
      try {
        index = std::stoi(tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
        if (caret != std::string::npos) exp = std::stol(tok.substr(caret + 1));
      } catch (const std::exception&) {
        throw std::invalid_argument("word syntax: cannot parse token '" + tok + "'");
      }
      if (index <= 0) throw std::invalid_argument("word syntax: generator index must be positive");
      const int sign = exp < 0 ? -1 : 1;
      for (long k = 0; k < (exp < 0 ? -exp : exp); ++k) raw.push_back({index, sign});
    }
    return reduce(raw);
  }

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  Word concat(const Word& other) const {
    std::vector<Letter> raw = letters_;
    raw.insert(raw.end(), other.letters_.begin(), other.letters_.end());
    return reduce(raw);
  }

  Word inverse() const {
    std::vector<Letter> raw;
    raw.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
      raw.push_back({it->index, -it->sign});
    return reduce(raw);
  }

  std::string str() const {
    if (letters_.empty()) return "1";
    std::string out;
    std::size_t k = 0;
    while (k < letters_.size()) {
      std::size_t run = k;
      while (run < letters_.size() && letters_[run] == letters_[k]) ++run;
      const long exp = static_cast<long>(run - k) * letters_[k].sign;
      if (!out.empty()) out += ' ';
      out += "x" + std::to_string(letters_[k].index);
      if (exp != 1) out += "^" + std::to_string(exp);
      k = run;
    }
    return out;
  }

  nlohmann::json to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const Letter& l : letters_) arr.push_back(nlohmann::json::array({l.index, l.sign}));
    return nlohmann::json{{"letters", arr}};
  }

  static Word from_json(const nlohmann::json& j) {
    std::vector<Letter> raw;
    for (const auto& pair : j.at("letters"))
      raw.push_back({pair.at(0).get<int>(), pair.at(1).get<int>()});
    return reduce(raw);
  }

  bool operator==(const Word&) const = default;

 private:
  std::vector<Letter> letters_;
};

/// Image of a word under the homomorphism extending index -> element.
template <GroupLike G>
typename G::Element evaluate_word(const G& group,
                                  const std::map<int, typename G::Element>& assignment,
                                  const Word& w) {
  auto acc = group.identity();
  for (const Word::Letter& l : w.letters()) {
    auto it = assignment.find(l.index);
    if (it == assignment.end())
      throw std::invalid_argument("evaluate_word: no image assigned to x" +
                                  std::to_string(l.index));
    acc = group.multiply(acc, l.sign > 0 ? it->second : group.invert(it->second));
  }
  return acc;
}

}  // namespace magnusforge
