#ifndef ERGOPT_COUNTABLE_HPP
#define ERGOPT_COUNTABLE_HPP

#include <optional>
#include <string>
#include <vector>

#include "ergopt/potential.hpp"

namespace ergopt {

// Declared majorant of sup A|[i]. Affine tails are defined for every symbol;
// table tails are step functions from their first entry on, extended as a
// constant beyond their last entry.
template <class Ops>
struct TailBound {
  using Num = typename Ops::Num;

  enum class Kind { Affine, Table };
  Kind kind = Kind::Affine;

  Num slope{};   // affine: tau(i) = offset + slope * i
  Num offset{};
  std::vector<std::pair<int, Num>> entries;  // table: sorted by index

  int defined_from() const {
    if (kind == Kind::Affine) return 0;
    return entries.front().first;
  }

  Num value_at(int i) const {
    if (kind == Kind::Affine) return offset + slope * Ops::from_int(i);
    if (entries.empty() || i < entries.front().first)
      throw Error(ErrorCode::InvalidArgument,
                  "tail bound undefined at symbol " + std::to_string(i));
    Num v = entries.front().second;
    for (const auto& [idx, val] : entries) {
      if (idx > i) break;
      v = val;
    }
    return v;
  }

  bool nonincreasing() const {
    if (kind == Kind::Affine) return Ops::le(slope, Ops::zero());
    for (std::size_t i = 0; i + 1 < entries.size(); ++i)
      if (Ops::lt(entries[i].second, entries[i + 1].second)) return false;
    return true;
  }

  // Only an affine tail with negative slope certifies tau(i) -> -inf.
  bool decays() const {
    return kind == Kind::Affine && Ops::lt(slope, Ops::zero());
  }
};

// Countable Markov shift materialized up to I_max, with declared bounds for
// everything beyond the explicit region.
template <class Ops>
struct CountableModel {
  using Num = typename Ops::Num;

  int explicit_bound = 0;              // I_max
  MarkovGraph explicit_graph;          // transition structure on 0..I_max
  Potential<Ops> potential;            // explicit table (range 1)
  std::optional<TailBound<Ops>> tail;
  bool coercive = false;               // declared intent
  Num declared_sup{};
  Num declared_var_total{};
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> failures;
  std::string computed_sup;        // canonical string of the explicit sup
  std::string computed_var_total;

  void fail(const std::string& msg) {
    ok = false;
    failures.push_back(msg);
  }
};

// Restriction of the transition structure to symbols {0..I}, trimmed: the
// graph of Sigma_I.
template <class Ops>
MarkovGraph truncate(const CountableModel<Ops>& model, int level) {
  if (level > model.explicit_bound)
    throw Error(ErrorCode::BeyondExplicitRegion,
                "truncation level " + std::to_string(level) +
                    " exceeds explicit region " +
                    std::to_string(model.explicit_bound));
  if (level < 0) throw Error(ErrorCode::InvalidArgument, "negative level");
  std::vector<int> vs;
  for (int s : model.explicit_graph.vertices.symbols)
    if (s <= level) vs.push_back(s);
  std::vector<std::pair<int, int>> es;
  for (auto& [i, j] : model.explicit_graph.edges)
    if (i <= level && j <= level) es.emplace_back(i, j);
  return trim_essential(MarkovGraph::make(std::move(vs), std::move(es)));
}

template <class Ops>
ValidationReport validate_countable(const CountableModel<Ops>& model) {
  ValidationReport rep;
  if (model.potential.range != 1) {
    rep.fail("countable models require a range-1 explicit potential");
    return rep;
  }
  MarkovGraph trimmed = trim_essential(model.explicit_graph);
  if (trimmed.vertices.empty()) {
    rep.fail("explicit region has no essential symbols");
    return rep;
  }
  try {
    validate_potential(trimmed, model.potential, /*allow_extra=*/true);
  } catch (const Error& e) {
    rep.fail(e.what());
    return rep;
  }
  // Explicit statistics; range 1 means the variation sum is zero.
  bool first = true;
  typename Ops::Num sup = Ops::zero();
  for (const auto& [w, v] : model.potential.weights) {
    if (first || Ops::lt(sup, v)) sup = v;
    first = false;
  }
  rep.computed_sup = Ops::str(sup);
  rep.computed_var_total = Ops::str(Ops::zero());
  if (Ops::lt(model.declared_sup, sup))
    rep.fail("declared sup_A " + Ops::str(model.declared_sup) +
             " is below the computed explicit sup " + Ops::str(sup));
  if (Ops::lt(model.declared_var_total, Ops::zero()))
    rep.fail("declared var_total is negative");
  if (!model.tail.has_value()) {
    rep.fail("countable model without a tail bound");
    return rep;
  }
  const TailBound<Ops>& tail = *model.tail;
  if (tail.kind == TailBound<Ops>::Kind::Table && tail.entries.empty()) {
    rep.fail("table tail has no entries");
    return rep;
  }
  if (!tail.nonincreasing()) rep.fail("tail bound is not nonincreasing");
  if (model.coercive && !tail.decays())
    rep.fail("model declared coercive but the tail bound does not decay to -inf");
  if (tail.defined_from() > model.explicit_bound + 1)
    rep.fail("tail bound starts after the explicit region ends");
  // tau must majorize the explicit cylinder sups on the overlap.
  for (const auto& [w, v] : model.potential.weights) {
    int s = w.front();
    if (s < tail.defined_from()) continue;
    if (Ops::lt(tail.value_at(s), v))
      rep.fail("tail bound at symbol " + std::to_string(s) + " (" +
               Ops::str(tail.value_at(s)) + ") is below the explicit sup " +
               Ops::str(v));
  }
  return rep;
}

}  // namespace ergopt

#endif  // ERGOPT_COUNTABLE_HPP
