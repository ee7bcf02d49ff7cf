#ifndef ERGOPT_TRUNCATION_HPP
#define ERGOPT_TRUNCATION_HPP

#include <algorithm>
#include <utility>
#include <vector>

#include "ergopt/countable.hpp"
#include "ergopt/maxplus.hpp"
#include "ergopt/parallel.hpp"

namespace ergopt {

// Table restricted to the words allowed in a (truncated) graph.
template <class Ops>
Potential<Ops> restrict_potential(const Potential<Ops>& p, const MarkovGraph& g) {
  Potential<Ops> q;
  q.range = p.range;
  for (const auto& [w, v] : p.weights)
    if (itinerary_allowed(g, w)) q.weights.emplace(w, v);
  return q;
}

// inf A|F - [Var(A) + K0 (sup A - inf A|F)], with the declared global sup
// and variation in force.
template <class Ops>
typename Ops::Num truncation_threshold(const VariationSummary<Ops>& summary,
                                       const PrimitivityCertificate& cert) {
  typename Ops::Num k0 = Ops::from_int(cert.k0);
  return summary.inf_on_connecting -
         (summary.var_total + k0 * (summary.sup - summary.inf_on_connecting));
}

// Variation summary for the countable system: declared sup and var_total,
// computed inf over the connecting-set cylinders.
template <class Ops>
VariationSummary<Ops> global_summary(const CountableModel<Ops>& model,
                                     const PrimitivityCertificate& cert) {
  VariationSummary<Ops> s;
  s.var_total = model.declared_var_total;
  s.sup = model.declared_sup;
  bool first = true;
  for (const auto& [w, v] : model.potential.weights) {
    if (!cert.connecting_set.contains(w.front())) continue;
    if (first || Ops::lt(v, s.inf_on_connecting)) s.inf_on_connecting = v;
    first = false;
  }
  if (first)
    throw Error(ErrorCode::InvalidArgument,
                "connecting set has no explicit cylinder weight");
  return s;
}

// Smallest I_hat > I_F with tau(i) strictly below the threshold for every
// i > I_hat; tau is nonincreasing, so only i = I_hat + 1 is tested. The
// float mode demands the stated margin of slack.
template <class Ops>
int compute_I_hat(const CountableModel<Ops>& model,
                  const VariationSummary<Ops>& summary,
                  const PrimitivityCertificate& cert,
                  const typename Ops::Num& margin) {
  using Num = typename Ops::Num;
  if (!model.tail.has_value())
    throw Error(ErrorCode::NoCoerciveTail, "model has no tail bound");
  const TailBound<Ops>& tail = *model.tail;
  Num threshold = truncation_threshold(summary, cert);
  int i_f = cert.max_connecting_symbol();
  int top = model.explicit_bound - (model.potential.range - 1);
  for (int cand = i_f + 1; cand <= top; ++cand) {
    if (cand + 1 < tail.defined_from()) continue;
    if (Ops::strictly_below(tail.value_at(cand + 1), threshold, margin))
      return cand;
  }
  // Decide whether a larger explicit region would have helped.
  bool eventually_below;
  if (tail.kind == TailBound<Ops>::Kind::Affine) {
    eventually_below = tail.decays() ||
                       Ops::strictly_below(tail.offset, threshold, margin);
  } else {
    eventually_below =
        Ops::strictly_below(tail.entries.back().second, threshold, margin);
  }
  if (eventually_below)
    throw Error(ErrorCode::ExplicitRegionTooSmall,
                "I_hat exists but Sigma_I_hat is not fully materialized");
  throw Error(ErrorCode::NoCoerciveTail,
              "tail bound never drops below the threshold " +
                  Ops::str(threshold));
}

// Slack of the defining inequality at a given I_hat, from the best certified
// bound on sup A beyond I_hat: exact cylinder sups inside the explicit
// region, the tail bound beyond it. Positive slack certifies the inequality;
// used both for the report margin and for auditing a user-supplied I_hat.
template <class Ops>
typename Ops::Num i_hat_inequality_slack(const CountableModel<Ops>& model,
                                         const VariationSummary<Ops>& summary,
                                         const PrimitivityCertificate& cert,
                                         int i_hat) {
  using Num = typename Ops::Num;
  Num threshold = truncation_threshold(summary, cert);
  MarkovGraph trimmed = trim_essential(model.explicit_graph);
  bool have = false;
  Num bound = Ops::zero();
  for (int s : trimmed.vertices.symbols) {
    if (s <= i_hat) continue;
    Num v = model.potential.at(Word{s});
    if (!have || Ops::lt(bound, v)) {
      bound = v;
      have = true;
    }
  }
  if (model.tail.has_value()) {
    Num t = model.tail->value_at(model.explicit_bound + 1);
    if (!have || Ops::lt(bound, t)) {
      bound = t;
      have = true;
    }
  }
  if (!have) {
    // Nothing lives beyond I_hat: the inequality holds vacuously.
    return Ops::from_int(1);
  }
  return threshold - bound;
}

template <class Ops>
struct PlateauResult {
  using Num = typename Ops::Num;
  int i_f = 0;
  int i_hat = 0;
  int window = 0;
  std::vector<std::pair<int, Num>> beta_by_level;  // I -> beta_A(I)
  bool plateau_ok = false;
  WeightedBlockGraph<Ops> hat_graph;      // Sigma_I_hat with weights
  SubAction<Ops> hat_subaction;           // calibrated on Sigma_I_hat
  CriticalStructure<Ops> omega;           // Omega(A, I_hat)
};

// beta_A(I) for I = I_F .. I_hat + window; asserts monotonicity in I,
// constancy on [I_hat, I_hat + window], and that every critical class of
// the top level uses only symbols <= I_hat.
template <class Ops>
PlateauResult<Ops> plateau_scan(const CountableModel<Ops>& model,
                                const PrimitivityCertificate& cert, int i_hat,
                                int window) {
  using Num = typename Ops::Num;
  int i_f = cert.max_connecting_symbol();
  int top = i_hat + window;
  if (top + (model.potential.range - 1) > model.explicit_bound)
    throw Error(ErrorCode::ExplicitRegionTooSmall,
                "plateau scan needs symbols up to " +
                    std::to_string(top + model.potential.range - 1));
  if (i_hat <= i_f)
    throw Error(ErrorCode::InvalidArgument, "I_hat must exceed I_F");

  PlateauResult<Ops> res;
  res.i_f = i_f;
  res.i_hat = i_hat;
  res.window = window;

  int levels = top - i_f + 1;
  std::vector<Num> betas(levels, Ops::zero());
  parallel_for(levels, [&](int idx) {
    int level = i_f + idx;
    MarkovGraph g = truncate(model, level);
    if (g.vertices.empty())
      throw Error(ErrorCode::EmptyShift,
                  "Sigma_" + std::to_string(level) + " is empty");
    WeightedBlockGraph<Ops> wg =
        make_weighted(g, restrict_potential(model.potential, g));
    betas[idx] = max_cycle_mean(wg);
  }, 4);
  for (int idx = 0; idx < levels; ++idx)
    res.beta_by_level.emplace_back(i_f + idx, betas[idx]);

  for (int idx = 0; idx + 1 < levels; ++idx)
    if (Ops::lt(betas[idx + 1], betas[idx]))
      throw Error(ErrorCode::PlateauViolation,
                  "beta_A(I) decreased at I = " + std::to_string(i_f + idx + 1));
  for (int idx = i_hat - i_f; idx < levels; ++idx)
    if (!Ops::eq(betas[idx], betas[i_hat - i_f]))
      throw Error(ErrorCode::PlateauViolation,
                  "beta_A(" + std::to_string(i_f + idx) +
                      ") differs from beta_A(I_hat)");

  // Localization at the top level: maximizing mass stays below I_hat.
  {
    MarkovGraph g = truncate(model, top);
    WeightedBlockGraph<Ops> wg =
        make_weighted(g, restrict_potential(model.potential, g));
    SubAction<Ops> u = calibrated_subaction(wg);
    CriticalStructure<Ops> cs = critical_structure(wg, u);
    for (const auto& cls : cs.classes)
      for (int v : cls.vertices)
        for (int s : wg.graph.vertices[v])
          if (s > i_hat)
            throw Error(ErrorCode::PlateauViolation,
                        "critical class of the top level uses symbol " +
                            std::to_string(s) + " > I_hat");
  }

  MarkovGraph g_hat = truncate(model, i_hat);
  res.hat_graph = make_weighted(g_hat, restrict_potential(model.potential, g_hat));
  res.hat_subaction = calibrated_subaction(res.hat_graph);
  res.omega = critical_structure(res.hat_graph, res.hat_subaction);
  res.plateau_ok = true;
  return res;
}

// Smallest threshold I such that every explicit edge whose source word
// starts above I has defect < -eta, and the tail bound keeps cylinders
// beyond the explicit region below -eta as well.
template <class Ops>
int support_bound_check(const CountableModel<Ops>& model,
                        const WeightedBlockGraph<Ops>& explicit_graph,
                        const SubAction<Ops>& u, const typename Ops::Num& eta) {
  using Num = typename Ops::Num;
  if (!Ops::lt(Ops::zero(), eta))
    throw Error(ErrorCode::InvalidArgument, "eta must be positive");
  Num neg_eta = Ops::zero() - eta;

  int worst_explicit = -1;
  for (int e = 0; e < explicit_graph.graph.edge_count(); ++e) {
    int first = explicit_graph.graph.vertices[explicit_graph.graph.edges[e].first].front();
    Num d = edge_defect(explicit_graph, u, e);
    if (!Ops::lt(d, neg_eta)) worst_explicit = std::max(worst_explicit, first);
  }

  if (!model.tail.has_value())
    throw Error(ErrorCode::NoThreshold,
                "no tail bound beyond the explicit region");
  const TailBound<Ops>& tail = *model.tail;
  // Beyond the explicit region: tau(i) + osc(u) - beta < -eta.
  Num target = u.beta - oscillation<Ops>(u.u) - eta;
  int istar;
  if (tail.kind == TailBound<Ops>::Kind::Affine) {
    if (Ops::eq(tail.slope, Ops::zero())) {
      if (!Ops::lt(tail.offset, target))
        throw Error(ErrorCode::NoThreshold, "tail bound does not decay below "
                    + Ops::str(target));
      istar = 0;
    } else {
      // offset + slope * i < target with slope < 0: i > (target-offset)/slope.
      Num x = (target - tail.offset) / tail.slope;
      std::int64_t fl = Ops::floor_int(x) + 1;
      if (fl > (1ll << 30))
        throw Error(ErrorCode::TooLarge, "support threshold beyond 2^30");
      istar = static_cast<int>(std::max<std::int64_t>(fl, 0));
    }
  } else {
    istar = -1;
    for (const auto& [idx, val] : tail.entries) {
      if (Ops::lt(val, target)) {
        istar = idx;
        break;
      }
    }
    if (istar < 0)
      throw Error(ErrorCode::NoThreshold,
                  "table tail never drops below " + Ops::str(target));
  }
  return std::max(worst_explicit, istar - 1);
}

}  // namespace ergopt

#endif  // ERGOPT_TRUNCATION_HPP
