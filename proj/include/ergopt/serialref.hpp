#ifndef ERGOPT_SERIALREF_HPP
#define ERGOPT_SERIALREF_HPP

#include <algorithm>
#include <vector>

#include "ergopt/maxplus.hpp"

namespace ergopt::serialref {

// Single-threaded reference versions of the three layered kernels. They are
// written as plain edge loops with the full Karp table, deliberately not
// sharing the CSR relaxation code with ergopt::maxplus. Tests assert exact
// agreement; the bench target compares running times.

template <class Ops>
typename Ops::Num serial_max_cycle_mean(const WeightedBlockGraph<Ops>& g) {
  using Num = typename Ops::Num;
  const BlockGraph& b = g.graph;
  SccResult scc = strongly_connected_components(b);
  std::vector<char> keep = nontrivial_components(b, scc);

  Num best = Ops::zero();
  bool found = false;
  for (int c = 0; c < scc.count; ++c) {
    if (!keep[c]) continue;
    std::vector<int> members = scc.members[c];
    std::sort(members.begin(), members.end());
    int n = static_cast<int>(members.size());
    std::vector<int> local(b.vertex_count(), -1);
    for (int i = 0; i < n; ++i) local[members[i]] = i;

    // Full d[k][v] table, k = 0..n.
    std::vector<std::vector<Num>> d(n + 1, std::vector<Num>(n, Ops::zero()));
    std::vector<std::vector<char>> fin(n + 1, std::vector<char>(n, 0));
    fin[0][0] = 1;
    for (int k = 1; k <= n; ++k) {
      for (int e = 0; e < b.edge_count(); ++e) {
        int ls = local[b.edges[e].first];
        int lt = local[b.edges[e].second];
        if (ls < 0 || lt < 0 || !fin[k - 1][ls]) continue;
        Num cand = d[k - 1][ls] + g.weight[e];
        if (!fin[k][lt] || Ops::lt(d[k][lt], cand)) {
          d[k][lt] = cand;
          fin[k][lt] = 1;
        }
      }
    }
    for (int v = 0; v < n; ++v) {
      if (!fin[n][v]) continue;
      Num vmin = Ops::zero();
      bool vhas = false;
      for (int k = 0; k < n; ++k) {
        if (!fin[k][v]) continue;
        Num val = Ops::div_int(d[n][v] - d[k][v], n - k);
        if (!vhas || Ops::lt(val, vmin)) {
          vmin = val;
          vhas = true;
        }
      }
      if (vhas && (!found || Ops::lt(best, vmin))) {
        best = vmin;
        found = true;
      }
    }
  }
  if (!found) throw Error(ErrorCode::NoCycle, "graph has no directed cycle");
  return best;
}

template <class Ops>
SubAction<Ops> serial_minimal_subaction(const WeightedBlockGraph<Ops>& g,
                                        const typename Ops::Num& beta) {
  using Num = typename Ops::Num;
  const BlockGraph& b = g.graph;
  int n = b.vertex_count();
  std::vector<Num> val(n, Ops::zero());
  for (int round = 0; round <= n; ++round) {
    std::vector<Num> next = val;
    bool changed = false;
    for (int e = 0; e < b.edge_count(); ++e) {
      auto [s, t] = b.edges[e];
      Num cand = val[s] + g.weight[e] - beta;
      if (Ops::lt(next[t], cand)) {
        next[t] = cand;
        changed = true;
      }
    }
    if (round == n && changed)
      throw Error(ErrorCode::PositiveCycle, "beta below maximum cycle mean");
    val.swap(next);
    if (!changed) break;
  }
  return SubAction<Ops>{val, beta};
}

template <class Ops>
typename Ops::Num serial_finite_horizon(const WeightedBlockGraph<Ops>& g, int k) {
  using Num = typename Ops::Num;
  const BlockGraph& b = g.graph;
  int n = b.vertex_count();
  std::vector<Num> cur(n, Ops::zero());
  std::vector<char> curf(n, 1);
  for (int layer = 0; layer < k; ++layer) {
    std::vector<Num> nxt(n, Ops::zero());
    std::vector<char> nxtf(n, 0);
    for (int e = 0; e < b.edge_count(); ++e) {
      auto [s, t] = b.edges[e];
      if (!curf[s]) continue;
      Num cand = cur[s] + g.weight[e];
      if (!nxtf[t] || Ops::lt(nxt[t], cand)) {
        nxt[t] = cand;
        nxtf[t] = 1;
      }
    }
    cur.swap(nxt);
    curf.swap(nxtf);
  }
  Num best = Ops::zero();
  bool found = false;
  for (int v = 0; v < n; ++v) {
    if (!curf[v]) continue;
    if (!found || Ops::lt(best, cur[v])) {
      best = cur[v];
      found = true;
    }
  }
  if (!found) throw Error(ErrorCode::NoCycle, "no walk of the requested length");
  return Ops::div_int(best, k);
}

}  // namespace ergopt::serialref

#endif  // ERGOPT_SERIALREF_HPP
