#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "magnusforge/finite_group.hpp"
#include "magnusforge/lamplighter.hpp"
#include "magnusforge/parafree.hpp"
#include "magnusforge/step_wreath.hpp"
#include "magnusforge/wreath.hpp"

namespace magnusforge {

// The embedding tower for a finite group H with word metric l:
//   V = A wr H            (A free abelian on {a_h : h != 1})
//   K <= V Wr Z           (step functions and the shift t)
//   G <= K Wr M           (M = Z wr Z, generated by X = {x0, y0, g})
// Everything is kept exact: finite H makes the distinguished base function g
// finitely supported, so each element of G has a finite canonical form.

using VGroup = WreathProduct<FreeAbelianGroup, FiniteGroup>;
using KGroup = StepWreath<VGroup>;
using GGroup = WreathProduct<KGroup, LamplighterGroup>;

enum class XLetter : int { lamp = 0, shift = 1, gfun = 2 };

/// Word over the generating set X = {x0, y0, g} of G.
struct XWord {
  std::vector<std::pair<XLetter, int>> letters;

  std::size_t size() const { return letters.size(); }

  XWord& append(XLetter l, int sign) {
    letters.emplace_back(l, sign);
    return *this;
  }

  XWord& append_power(XLetter l, long long exponent) {
    const int sign = exponent < 0 ? -1 : 1;
    for (long long k = 0; k < (exponent < 0 ? -exponent : exponent); ++k) append(l, sign);
    return *this;
  }

  // S-words arrive as signed ids: +-1 for x0, +-2 for y0.
  XWord& append_s_word(const std::vector<int>& signed_ids) {
    for (int v : signed_ids)
      append(std::abs(v) == 1 ? XLetter::lamp : XLetter::shift, v > 0 ? 1 : -1);
    return *this;
  }

  XWord& append_word(const XWord& other) {
    letters.insert(letters.end(), other.letters.begin(), other.letters.end());
    return *this;
  }

  XWord& append_inverse(const XWord& other) {
    for (auto it = other.letters.rbegin(); it != other.letters.rend(); ++it)
      letters.emplace_back(it->first, -it->second);
    return *this;
  }

  std::string str() const {
    if (letters.empty()) return "1";
    static const char* names[] = {"x0", "y0", "g"};
    std::string out;
    for (const auto& [l, sign] : letters) {
      if (!out.empty()) out += ' ';
      out += names[static_cast<int>(l)];
      if (sign < 0) out += "^-1";
    }
    return out;
  }
};

struct EmbeddingBuildOptions {
  double lambda_hint = 1.0;  // try lambda = 1/q starting from ceil(1/hint)
  int radius_cap = 12;       // largest parafree radius the build may request
  std::size_t max_nodes = 5'000'000;
};

struct ChainCertificate {
  FiniteGroup::Element h = 0;
  long long ell = 0;               // certified lower bound for the word length
  long long g_letter_count = 0;
  long long step_letter_count = 0;   // letters over U after rewriting
  long long projected_letter_count = 0;  // nontrivial letters over Y
};

class EmbeddingContext {
 public:
  static EmbeddingContext build(const FiniteGroup& H,
                                const std::vector<FiniteGroup::Element>& gens,
                                const EmbeddingBuildOptions& options = {});

  const FiniteGroup& group() const { return H_; }
  const FiniteMetric& metric() const { return metric_; }
  const VGroup& v_group() const { return V_; }
  const KGroup& k_group() const { return K_; }
  const LamplighterGroup& m_group() const { return M_; }
  const GGroup& g_group() const { return G_; }
  const ParafreeSet& parafree() const { return parafree_; }

  long long q() const { return q_; }
  double lambda() const { return 1.0 / static_cast<double>(q_); }
  long long theta_denominator() const { return 8 + 16 * q_; }
  double growth_base() const { return metric_.growth.fitted_base; }
  long long max_length() const { return metric_.max_length; }
  double fitted_parafree_growth() const { return fitted_c_; }
  bool growth_condition_met() const { return growth_condition_met_; }

  int pair_count() const { return static_cast<int>(u_.size()); }
  const std::vector<FiniteGroup::Element>& ordered_nontrivial() const { return ordered_h_; }

  // 1-based pairing index access.
  const KGroup::Element& u(int i) const { return u_.at(static_cast<std::size_t>(i - 1)); }
  const Lamplighter& w(int i) const { return w_.at(static_cast<std::size_t>(i - 1)); }
  const std::vector<int>& w_word(int i) const {
    return w_words_.at(static_cast<std::size_t>(i - 1));
  }

  // Generators a_h^{l(h)} h and a_h of V, per nontrivial h.
  VGroup::Element y_high(FiniteGroup::Element h) const;
  VGroup::Element y_lamp(FiniteGroup::Element h) const;
  std::vector<VGroup::Element> y_generators() const;

  const GGroup::Element& g_element() const { return g_elem_; }
  KGroup::Element g_eval(const Lamplighter& m) const;

  GGroup::Element letter_element(XLetter l, int sign) const;
  GGroup::Element eval(const XWord& word) const;

  KGroup::Element k_from_v(const VGroup::Element& v) const { return K_.from_point(0, v); }
  GGroup::Element embedded_h(FiniteGroup::Element h) const;

  // Support of [g, r g r^{-1}] with values; at most one point, and the value
  // at it is the commutator [g(u), g(ur)].
  std::vector<std::pair<Lamplighter, KGroup::Element>> commutator_support(
      const Lamplighter& r) const;

  // Explicit word over X of length <= (8 + 16/lambda) l(h) evaluating to h.
  XWord embed_h(FiniteGroup::Element h) const;

  // Projection chain certifying l(h) <= |word| for any word over X that
  // evaluates into the embedded copy of H.
  ChainCertificate lower_bound_chain(const XWord& word) const;

  // BFS word length over Y in V, checked against l(h) + 1.
  std::pair<long long, long long> y_length_check(FiniteGroup::Element h,
                                                 int radius_cap) const;

  std::vector<long long> strata_counts() const { return strata_counts_; }

  nlohmann::json summary_json() const;

 private:
  EmbeddingContext(const FiniteGroup& H, FiniteMetric metric);

  int pair_index_high(FiniteGroup::Element h) const;  // index of a_h^{l(h)} h

  FiniteGroup H_;
  FiniteMetric metric_;
  FreeAbelianGroup A_;
  VGroup V_;
  KGroup K_;
  LamplighterGroup M_;
  GGroup G_;

  long long q_ = 1;
  std::vector<FiniteGroup::Element> ordered_h_;  // nontrivial, by (length, key)
  std::unordered_map<std::int32_t, int> h_position_;  // element -> 1-based j
  std::vector<KGroup::Element> u_;               // u_1, u_2, ...
  std::vector<Lamplighter> w_;                   // w_1, w_2, ...
  std::vector<std::vector<int>> w_words_;        // geodesics over S
  std::unordered_map<std::string, int> w_index_by_key_;  // 1-based
  ParafreeSet parafree_;
  GGroup::Element g_elem_;
  KGroup::Element t_;
  std::unordered_set<std::string> y_letter_keys_;  // keys of Y, Y^{-1} elements
  std::vector<long long> strata_counts_;
  double fitted_c_ = 1.0;
  bool growth_condition_met_ = false;
};

}  // namespace magnusforge
