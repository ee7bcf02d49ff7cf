#ifndef ERGOPT_MEASURES_HPP
#define ERGOPT_MEASURES_HPP

#include <algorithm>
#include <map>
#include <vector>

#include "ergopt/maxplus.hpp"

namespace ergopt {

// Shift-invariant probability as an edge-frequency vector: mass one, flow
// balanced at every vertex. Enough to integrate any locally constant
// potential after block lifting.
template <class Ops>
struct InvariantMeasure {
  using Num = typename Ops::Num;
  std::map<int, Num> edge_freq;  // edge index -> frequency, support only
};

struct PeriodicOrbit {
  std::vector<int> cycle;  // chained edge indices, last returns to first
};

template <class Ops>
bool measure_is_valid(const InvariantMeasure<Ops>& mu, const BlockGraph& g) {
  using Num = typename Ops::Num;
  Num mass = Ops::zero();
  std::map<int, Num> inflow, outflow;
  for (const auto& [e, f] : mu.edge_freq) {
    if (e < 0 || e >= g.edge_count()) return false;
    if (Ops::lt(f, Ops::zero())) return false;
    mass = mass + f;
    auto [s, t] = g.edges[e];
    auto accumulate = [&](std::map<int, Num>& m, int v) {
      auto it = m.find(v);
      if (it == m.end())
        m.emplace(v, f);
      else
        it->second = it->second + f;
    };
    accumulate(outflow, s);
    accumulate(inflow, t);
  }
  if (!Ops::eq(mass, Ops::from_int(1))) return false;
  for (const auto& [v, f] : outflow) {
    auto it = inflow.find(v);
    if (it == inflow.end() || !Ops::eq(it->second, f)) return false;
  }
  for (const auto& [v, f] : inflow)
    if (!outflow.count(v)) return false;
  return true;
}

template <class Ops>
void validate_orbit(const PeriodicOrbit& orbit, const BlockGraph& g) {
  if (orbit.cycle.empty())
    throw Error(ErrorCode::InvalidArgument, "empty orbit");
  for (std::size_t i = 0; i < orbit.cycle.size(); ++i) {
    int e = orbit.cycle[i];
    int next = orbit.cycle[(i + 1) % orbit.cycle.size()];
    if (e < 0 || e >= g.edge_count())
      throw Error(ErrorCode::InvalidArgument, "orbit edge out of range");
    if (g.edges[e].second != g.edges[next].first)
      throw Error(ErrorCode::InvalidArgument, "orbit edges do not chain");
  }
}

// Uniform measure 1/|c| on each edge of the cycle.
template <class Ops>
InvariantMeasure<Ops> cycle_measure(const PeriodicOrbit& orbit,
                                    const BlockGraph& g) {
  validate_orbit<Ops>(orbit, g);
  using Num = typename Ops::Num;
  InvariantMeasure<Ops> mu;
  Num share = Ops::div_int(Ops::from_int(1),
                           static_cast<std::int64_t>(orbit.cycle.size()));
  for (int e : orbit.cycle) {
    auto it = mu.edge_freq.find(e);
    if (it == mu.edge_freq.end())
      mu.edge_freq.emplace(e, share);
    else
      it->second = it->second + share;
  }
  return mu;
}

// Integral of the potential: sum of frequency times edge weight.
template <class Ops>
typename Ops::Num integrate(const InvariantMeasure<Ops>& mu,
                            const WeightedBlockGraph<Ops>& g) {
  typename Ops::Num total = Ops::zero();
  for (const auto& [e, f] : mu.edge_freq) {
    if (e < 0 || e >= g.graph.edge_count())
      throw Error(ErrorCode::UnsupportedEdge,
                  "measure supported on edge outside the graph");
    total = total + f * g.weight[e];
  }
  return total;
}

namespace detail {

// Lexicographically smallest cycle of minimal length within one critical
// class: scan start vertices in word order, then extend greedily with exact
// length-to-complete reachability.
template <class Ops>
PeriodicOrbit canonical_class_cycle(const WeightedBlockGraph<Ops>& g,
                                    const typename CriticalStructure<Ops>::Class& cls) {
  const BlockGraph& b = g.graph;
  std::vector<char> edge_in(b.edge_count(), 0);
  for (int e : cls.edges) edge_in[e] = 1;

  // Shortest cycle length within the class.
  auto shortest_from = [&](int s) -> int {
    std::vector<int> dist(b.vertex_count(), -1);
    std::vector<int> queue{s};
    dist[s] = 0;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      int v = queue[qi];
      for (int x = b.out_begin[v]; x < b.out_begin[v + 1]; ++x) {
        int e = b.out_edge[x];
        if (!edge_in[e]) continue;
        int w = b.edges[e].second;
        if (w == s) return dist[v] + 1;
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
      }
    }
    return -1;
  };
  int best_len = -1;
  for (int v : cls.vertices) {
    int l = shortest_from(v);
    if (l > 0 && (best_len < 0 || l < best_len)) best_len = l;
  }
  if (best_len < 0)
    throw Error(ErrorCode::EmptyCritical, "critical class without a cycle");

  // Vertices are stored in word order, so the first start admitting a cycle
  // of the minimal length is the smallest vertex on any such cycle.
  for (int s : cls.vertices) {
    // reach[r][v]: v can reach s in exactly r steps inside the class.
    std::vector<std::vector<char>> reach(
        best_len + 1, std::vector<char>(b.vertex_count(), 0));
    reach[0][s] = 1;
    for (int r = 1; r <= best_len; ++r) {
      for (int e = 0; e < b.edge_count(); ++e) {
        if (!edge_in[e]) continue;
        auto [u, w] = b.edges[e];
        if (reach[r - 1][w]) reach[r][u] = 1;
      }
    }
    if (!reach[best_len][s]) continue;
    PeriodicOrbit orbit;
    int v = s;
    for (int remaining = best_len; remaining > 0; --remaining) {
      int chosen = -1;
      for (int x = b.out_begin[v]; x < b.out_begin[v + 1]; ++x) {
        int e = b.out_edge[x];
        if (!edge_in[e]) continue;
        if (reach[remaining - 1][b.edges[e].second]) {
          chosen = e;  // out-edges are sorted by target word
          break;
        }
      }
      if (chosen < 0)
        throw Error(ErrorCode::InternalCheckFailed, "cycle extension failed");
      orbit.cycle.push_back(chosen);
      v = b.edges[chosen].second;
    }
    return orbit;
  }
  throw Error(ErrorCode::InternalCheckFailed, "no start vertex closed a cycle");
}

}  // namespace detail

template <class Ops>
struct MaximizingClass {
  typename CriticalStructure<Ops>::Class members;
  PeriodicOrbit orbit;
  InvariantMeasure<Ops> measure;
  typename Ops::Num integral{};
};

// One ergodic maximizing measure per critical class: the uniform measure on
// the class's lexicographically smallest shortest cycle. Each one integrates
// to exactly beta.
template <class Ops>
std::vector<MaximizingClass<Ops>> maximizing_set(const WeightedBlockGraph<Ops>& g,
                                                 const CriticalStructure<Ops>& cs) {
  if (cs.classes.empty())
    throw Error(ErrorCode::EmptyCritical,
                "no critical class: certificate was not valid");
  std::vector<MaximizingClass<Ops>> out;
  for (const auto& cls : cs.classes) {
    MaximizingClass<Ops> mc;
    mc.members = cls;
    mc.orbit = detail::canonical_class_cycle<Ops>(g, cls);
    mc.measure = cycle_measure<Ops>(mc.orbit, g.graph);
    mc.integral = integrate(mc.measure, g);
    if (!Ops::eq(mc.integral, cs.beta))
      throw Error(ErrorCode::InternalCheckFailed,
                  "class measure does not integrate to beta");
    out.push_back(std::move(mc));
  }
  return out;
}

// Support characterization: supp(mu) inside the critical edges iff the
// integral equals beta. Disagreement would falsify the theorem.
template <class Ops>
bool verify_maximizing(const InvariantMeasure<Ops>& mu,
                       const WeightedBlockGraph<Ops>& g,
                       const CriticalStructure<Ops>& cs) {
  bool supported = true;
  for (const auto& [e, f] : mu.edge_freq) {
    if (Ops::eq(f, Ops::zero())) continue;
    if (!cs.edge_is_critical(e)) {
      supported = false;
      break;
    }
  }
  typename Ops::Num integral = integrate(mu, g);
  bool attains = Ops::eq(integral, cs.beta);
  if (supported != attains)
    throw Error(ErrorCode::CharacterizationViolation,
                "support inclusion and integral disagree: integral " +
                    Ops::str(integral) + " vs beta " + Ops::str(cs.beta));
  return supported;
}

}  // namespace ergopt

#endif  // ERGOPT_MEASURES_HPP
