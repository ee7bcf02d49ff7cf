#ifndef ERGOPT_POTENTIAL_HPP
#define ERGOPT_POTENTIAL_HPP

#include <map>
#include <optional>
#include <vector>

#include "ergopt/graph.hpp"
#include "ergopt/numeric.hpp"
#include "ergopt/primitivity.hpp"

namespace ergopt {

// Finite-range word-weight table: the locally constant case, with
// Var_k(A) = 0 for k >= range.
template <class Ops>
struct Potential {
  using Num = typename Ops::Num;

  int range = 1;                 // m >= 1
  std::map<Word, Num> weights;   // one entry per allowed range-word

  const Num& at(const Word& w) const {
    auto it = weights.find(w);
    if (it == weights.end())
      throw Error(ErrorCode::DisallowedWord, "no weight for word " + word_str(w));
    return it->second;
  }

  // Weight of the length-range prefix of a (longer) word.
  const Num& at_prefix(const Word& w) const {
    if (static_cast<int>(w.size()) == range) return at(w);
    Word p(w.begin(), w.begin() + range);
    return at(p);
  }
};

// All the allowed essential range-words of g.
std::vector<Word> allowed_words(const MarkovGraph& g, int length);

// Checks that the table covers every allowed essential range-word of g.
// Extra entries are rejected unless allow_extra is set (countable models may
// carry weights for boundary symbols trimmed out of the explicit region).
template <class Ops>
void validate_potential(const MarkovGraph& g, const Potential<Ops>& p,
                        bool allow_extra = false) {
  std::vector<Word> words = allowed_words(g, p.range);
  for (const Word& w : words) {
    if (!p.weights.count(w))
      throw Error(ErrorCode::ValidationFailed,
                  "potential table is missing allowed word " + word_str(w));
  }
  if (!allow_extra && p.weights.size() != words.size()) {
    for (const auto& [w, v] : p.weights) {
      if (!std::binary_search(words.begin(), words.end(), w))
        throw Error(ErrorCode::ValidationFailed,
                    "potential table contains disallowed word " + word_str(w));
    }
  }
}

// Whether every consecutive pair of an itinerary is an edge of g.
bool itinerary_allowed(const MarkovGraph& g, const Word& itinerary);

// S_k A along an itinerary of length k + range - 1; S_0 A = 0.
template <class Ops>
typename Ops::Num birkhoff_sum(const MarkovGraph& g, const Potential<Ops>& p,
                               const Word& itinerary, int k) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "negative k");
  if (k == 0) return Ops::zero();
  if (static_cast<int>(itinerary.size()) < k + p.range - 1)
    throw Error(ErrorCode::InvalidArgument, "itinerary shorter than k+m-1");
  if (!itinerary_allowed(g, itinerary))
    throw Error(ErrorCode::DisallowedWord,
                "itinerary " + word_str(itinerary) + " is not allowed");
  typename Ops::Num sum = Ops::zero();
  for (int j = 0; j < k; ++j) {
    Word w(itinerary.begin() + j, itinerary.begin() + j + p.range);
    sum = sum + p.at(w);
  }
  return sum;
}

// Var_k(A): max of w(a) - w(b) over ordered pairs of allowed range-words
// agreeing on their first k letters; exactly 0 for k >= range.
template <class Ops>
typename Ops::Num variation(const Potential<Ops>& p, int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "variation needs k >= 1");
  if (k >= p.range) return Ops::zero();
  // Group by k-prefix; within a group the spread is max - min.
  std::map<Word, std::pair<typename Ops::Num, typename Ops::Num>> spread;
  for (const auto& [w, v] : p.weights) {
    Word prefix(w.begin(), w.begin() + k);
    auto it = spread.find(prefix);
    if (it == spread.end()) {
      spread.emplace(prefix, std::make_pair(v, v));
    } else {
      if (Ops::lt(v, it->second.first)) it->second.first = v;
      if (Ops::lt(it->second.second, v)) it->second.second = v;
    }
  }
  typename Ops::Num best = Ops::zero();
  for (const auto& [prefix, mm] : spread) {
    typename Ops::Num d = mm.second - mm.first;
    if (Ops::lt(best, d)) best = d;
  }
  return best;
}

template <class Ops>
struct VariationSummary {
  using Num = typename Ops::Num;
  std::vector<Num> var_k;   // Var_1 .. Var_{range-1}
  Num var_total{};          // sum of var_k
  Num sup{};                // max table weight
  Num inf_on_connecting{};  // min weight among words starting in F
};

template <class Ops>
VariationSummary<Ops> summarize(const Potential<Ops>& p,
                                const PrimitivityCertificate& cert) {
  VariationSummary<Ops> s;
  s.var_total = Ops::zero();
  for (int k = 1; k < p.range; ++k) {
    s.var_k.push_back(variation(p, k));
    s.var_total = s.var_total + s.var_k.back();
  }
  if (p.weights.empty())
    throw Error(ErrorCode::EmptyShift, "cannot summarize an empty potential");
  bool first = true, first_f = true;
  for (const auto& [w, v] : p.weights) {
    if (first || Ops::lt(s.sup, v)) s.sup = v;
    first = false;
    if (cert.connecting_set.contains(w.front())) {
      if (first_f || Ops::lt(v, s.inf_on_connecting)) s.inf_on_connecting = v;
      first_f = false;
    }
  }
  if (first_f)
    throw Error(ErrorCode::InvalidArgument,
                "no allowed word starts in the connecting set");
  return s;
}

// Declared Hoelder regularity: Var_k(A) <= H * lambda^k for all k >= 1.
template <class Ops>
struct HoelderModel {
  using Num = typename Ops::Num;
  Num h{};
  Num lambda{};  // in (0,1)
};

// Geometric tail H * lambda / (1 - lambda), an upper bound for Var(A).
template <class Ops>
typename Ops::Num hoelder_var_bound(const HoelderModel<Ops>& h) {
  typename Ops::Num one = Ops::from_int(1);
  if (!Ops::lt(Ops::zero(), h.lambda) || !Ops::lt(h.lambda, one))
    throw Error(ErrorCode::InvalidArgument, "lambda must lie in (0,1)");
  return h.h * h.lambda / (one - h.lambda);
}

// H * lambda^k / (1 - lambda): the declared bound for Var_k of the minimal
// sub-action.
template <class Ops>
typename Ops::Num hoelder_tail_bound(const HoelderModel<Ops>& h, int k) {
  typename Ops::Num one = Ops::from_int(1);
  typename Ops::Num pw = one;
  for (int i = 0; i < k; ++i) pw = pw * h.lambda;
  return h.h * pw / (one - h.lambda);
}

// Checks that the declared (H, lambda) dominates the computed Var_k on the
// explicit table for every k in 1..range-1.
template <class Ops>
bool hoelder_dominates(const HoelderModel<Ops>& h, const Potential<Ops>& p) {
  typename Ops::Num pw = h.lambda;
  for (int k = 1; k < p.range; ++k) {
    if (!Ops::le(variation(p, k), h.h * pw)) return false;
    pw = pw * h.lambda;
  }
  return true;
}

// Var_k of a function on block-graph vertices ((m-1)-words): max difference
// over ordered pairs of vertex words agreeing on their first k letters.
template <class Ops>
typename Ops::Num vertex_function_variation(const BlockGraph& g,
                                            const std::vector<typename Ops::Num>& values,
                                            int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "variation needs k >= 1");
  int wordlen = g.order - 1;
  if (k >= wordlen) return Ops::zero();
  std::map<Word, std::pair<typename Ops::Num, typename Ops::Num>> spread;
  for (int v = 0; v < g.vertex_count(); ++v) {
    Word prefix(g.vertices[v].begin(), g.vertices[v].begin() + k);
    auto it = spread.find(prefix);
    if (it == spread.end()) {
      spread.emplace(prefix, std::make_pair(values[v], values[v]));
    } else {
      if (Ops::lt(values[v], it->second.first)) it->second.first = values[v];
      if (Ops::lt(it->second.second, values[v])) it->second.second = values[v];
    }
  }
  typename Ops::Num best = Ops::zero();
  for (const auto& [prefix, mm] : spread) {
    typename Ops::Num d = mm.second - mm.first;
    if (Ops::lt(best, d)) best = d;
  }
  return best;
}

}  // namespace ergopt

#endif  // ERGOPT_POTENTIAL_HPP
