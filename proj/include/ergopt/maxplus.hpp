#ifndef ERGOPT_MAXPLUS_HPP
#define ERGOPT_MAXPLUS_HPP

#include <algorithm>
#include <atomic>
#include <vector>

#include "ergopt/countable.hpp"
#include "ergopt/graph.hpp"
#include "ergopt/parallel.hpp"
#include "ergopt/potential.hpp"

namespace ergopt {

// A block graph with one weight per edge: the pair (Sigma_I, A|Sigma_I) for
// a locally constant potential.
template <class Ops>
struct WeightedBlockGraph {
  using Num = typename Ops::Num;
  BlockGraph graph;
  std::vector<Num> weight;  // aligned with graph.edges
};

// Lifts g to order max(range, 2) and attaches the potential as edge weights
// (weight of an edge is the table value of its word's range-prefix).
template <class Ops>
WeightedBlockGraph<Ops> make_weighted(const MarkovGraph& g,
                                      const Potential<Ops>& p) {
  MarkovGraph trimmed = trim_essential(g);
  validate_potential(trimmed, p);
  WeightedBlockGraph<Ops> w;
  w.graph = lift_blocks(trimmed, std::max(p.range, 2));
  w.weight.reserve(w.graph.edge_count());
  for (int e = 0; e < w.graph.edge_count(); ++e)
    w.weight.push_back(p.at_prefix(w.graph.edge_word(e)));
  return w;
}

// Vertex-indexed function certifying an ergodic value: every edge satisfies
// weight + u(src) - u(dst) <= beta.
template <class Ops>
struct SubAction {
  using Num = typename Ops::Num;
  std::vector<Num> u;  // per block-graph vertex
  Num beta{};
};

template <class Ops>
typename Ops::Num edge_defect(const WeightedBlockGraph<Ops>& g,
                              const SubAction<Ops>& sa, int e) {
  auto [s, t] = g.graph.edges[e];
  return g.weight[e] + sa.u[s] - sa.u[t] - sa.beta;
}

template <class Ops>
typename Ops::Num oscillation(const std::vector<typename Ops::Num>& u) {
  if (u.empty()) throw Error(ErrorCode::InvalidArgument, "empty function");
  typename Ops::Num lo = u[0], hi = u[0];
  for (const auto& v : u) {
    if (Ops::lt(v, lo)) lo = v;
    if (Ops::lt(hi, v)) hi = v;
  }
  return hi - lo;
}

namespace detail {

// Karp's recurrence restricted to one strongly connected component. Small
// components keep the whole layer table; large ones run a second pass so
// only O(|S|) values are live at a time.
template <class Ops>
typename Ops::Num karp_component(const WeightedBlockGraph<Ops>& g,
                                 const std::vector<int>& members) {
  using Num = typename Ops::Num;
  int n = static_cast<int>(members.size());
  std::vector<int> local(g.graph.vertex_count(), -1);
  for (int i = 0; i < n; ++i) local[members[i]] = i;

  // Local in-edge CSR.
  std::vector<int> deg(n + 1, 0);
  for (int i = 0; i < n; ++i) {
    int v = members[i];
    for (int x = g.graph.in_begin[v]; x < g.graph.in_begin[v + 1]; ++x) {
      int e = g.graph.in_edge[x];
      if (local[g.graph.edges[e].first] >= 0) ++deg[i + 1];
    }
  }
  for (int i = 0; i < n; ++i) deg[i + 1] += deg[i];
  std::vector<int> in_src(deg[n]);
  std::vector<Num> in_w(deg[n], Ops::zero());
  {
    std::vector<int> fill(deg.begin(), deg.end() - 1);
    for (int i = 0; i < n; ++i) {
      int v = members[i];
      for (int x = g.graph.in_begin[v]; x < g.graph.in_begin[v + 1]; ++x) {
        int e = g.graph.in_edge[x];
        int ls = local[g.graph.edges[e].first];
        if (ls < 0) continue;
        in_src[fill[i]] = ls;
        in_w[fill[i]] = g.weight[e];
        ++fill[i];
      }
    }
  }

  auto relax = [&](const std::vector<Num>& prev, const std::vector<char>& pfin,
                   std::vector<Num>& next, std::vector<char>& nfin) {
    parallel_for(n, [&](int v) {
      bool fin = false;
      Num best = Ops::zero();
      for (int x = deg[v]; x < deg[v + 1]; ++x) {
        int u = in_src[x];
        if (!pfin[u]) continue;
        Num cand = prev[u] + in_w[x];
        if (!fin || Ops::lt(best, cand)) {
          best = cand;
          fin = true;
        }
      }
      next[v] = best;
      nfin[v] = fin ? 1 : 0;
    });
  };

  std::vector<Num> dn;
  std::vector<char> dnf;
  std::vector<Num> minval(n, Ops::zero());
  std::vector<char> has(n, 0);

  // Desk-scale components keep the whole d_k table and scan it once; very
  // large ones recompute the layers in a second pass to stay at O(n) space.
  if (static_cast<std::int64_t>(n) * (n + 1) <= (std::int64_t{1} << 22)) {
    std::vector<std::vector<Num>> d(n + 1, std::vector<Num>(n, Ops::zero()));
    std::vector<std::vector<char>> fin(n + 1, std::vector<char>(n, 0));
    fin[0][0] = 1;
    for (int layer = 0; layer < n; ++layer)
      relax(d[layer], fin[layer], d[layer + 1], fin[layer + 1]);
    dn = d[n];
    dnf = fin[n];
    parallel_for(n, [&](int v) {
      if (!dnf[v]) return;
      for (int k = 0; k < n; ++k) {
        if (!fin[k][v]) continue;
        Num val = Ops::div_int(dn[v] - d[k][v], n - k);
        if (!has[v] || Ops::lt(val, minval[v])) {
          minval[v] = val;
          has[v] = 1;
        }
      }
    });
  } else {
    // Pass 1: d_n from the component's first vertex.
    std::vector<Num> cur(n, Ops::zero()), nxt(n, Ops::zero());
    std::vector<char> curf(n, 0), nxtf(n, 0);
    curf[0] = 1;
    for (int layer = 0; layer < n; ++layer) {
      relax(cur, curf, nxt, nxtf);
      cur.swap(nxt);
      curf.swap(nxtf);
    }
    dn = cur;
    dnf = curf;

    // Pass 2: stream d_k for k = 0..n-1 and keep the per-vertex minimum of
    // (d_n - d_k)/(n - k).
    cur.assign(n, Ops::zero());
    curf.assign(n, 0);
    curf[0] = 1;
    for (int k = 0; k < n; ++k) {
      parallel_for(n, [&](int v) {
        if (!dnf[v] || !curf[v]) return;
        Num val = Ops::div_int(dn[v] - cur[v], n - k);
        if (!has[v] || Ops::lt(val, minval[v])) {
          minval[v] = val;
          has[v] = 1;
        }
      });
      if (k + 1 < n) {
        relax(cur, curf, nxt, nxtf);
        cur.swap(nxt);
        curf.swap(nxtf);
      }
    }
  }

  Num best = Ops::zero();
  bool found = false;
  for (int v = 0; v < n; ++v) {
    if (!dnf[v]) continue;
    if (!has[v])
      throw Error(ErrorCode::InternalCheckFailed,
                  "karp: no finite predecessor layer");
    if (!found || Ops::lt(best, minval[v])) {
      best = minval[v];
      found = true;
    }
  }
  if (!found)
    throw Error(ErrorCode::InternalCheckFailed, "karp: empty component value");
  return best;
}

enum class WalkFail { PositiveCycle, Internal };

// Longest-walk fixpoint on normalized weights (weight - beta): value(v) is
// the best walk into v that starts at a source vertex, the empty walk
// counting as 0 at sources. At most |V| Jacobi rounds plus one verification
// round; a round that changes nothing is already the asserted fixed point.
template <class Ops>
std::vector<typename Ops::Num> longest_walk_values(
    const WeightedBlockGraph<Ops>& g, const typename Ops::Num& beta,
    const std::vector<char>& source, WalkFail fail_kind) {
  using Num = typename Ops::Num;
  const BlockGraph& b = g.graph;
  int n = b.vertex_count();
  std::vector<Num> cur(n, Ops::zero()), nxt(n, Ops::zero());
  std::vector<char> curf(n, 0), nxtf(n, 0);
  for (int v = 0; v < n; ++v) curf[v] = source[v];

  auto round = [&](bool& changed_out) {
    std::atomic<bool> changed{false};
    parallel_for(n, [&](int v) {
      bool fin = source[v] != 0;
      Num best = Ops::zero();
      for (int x = b.in_begin[v]; x < b.in_begin[v + 1]; ++x) {
        int e = b.in_edge[x];
        int u = b.edges[e].first;
        if (!curf[u]) continue;
        Num cand = cur[u] + g.weight[e] - beta;
        if (!fin || Ops::lt(best, cand)) {
          best = cand;
          fin = true;
        }
      }
      nxt[v] = best;
      nxtf[v] = fin ? 1 : 0;
      if (fin != (curf[v] != 0) || (fin && !Ops::eq(nxt[v], cur[v])))
        changed.store(true, std::memory_order_relaxed);
    });
    cur.swap(nxt);
    curf.swap(nxtf);
    changed_out = changed.load();
  };

  bool changed = true;
  for (int r = 0; r < n && changed; ++r) round(changed);
  if (changed) round(changed);
  if (changed) {
    if (fail_kind == WalkFail::PositiveCycle)
      throw Error(ErrorCode::PositiveCycle,
                  "normalized weights admit a positive cycle: beta is below "
                  "the maximum cycle mean");
    throw Error(ErrorCode::InternalCheckFailed,
                "longest-walk values failed to stabilize");
  }
  for (int v = 0; v < n; ++v)
    if (!curf[v])
      throw Error(ErrorCode::InternalCheckFailed,
                  "vertex unreachable from the source set");
  return cur;
}

}  // namespace detail

// Maximum mean weight of a directed cycle, per strongly connected component
// (Karp's recurrence), maximized over components. Exact in exact mode.
template <class Ops>
typename Ops::Num max_cycle_mean(const WeightedBlockGraph<Ops>& g) {
  using Num = typename Ops::Num;
  SccResult scc = strongly_connected_components(g.graph);
  std::vector<char> keep = nontrivial_components(g.graph, scc);
  Num best = Ops::zero();
  bool found = false;
  for (int c = 0; c < scc.count; ++c) {
    if (!keep[c]) continue;
    std::vector<int> members = scc.members[c];
    std::sort(members.begin(), members.end());
    Num val = detail::karp_component(g, members);
    if (!found || Ops::lt(best, val)) {
      best = val;
      found = true;
    }
  }
  if (!found)
    throw Error(ErrorCode::NoCycle, "graph has no directed cycle");
  return best;
}

// Minimal nonnegative sub-action: u_A(w) is the best normalized weight over
// backward walks ending at w, the empty walk included. Accepts graphs that
// are not strongly connected. Throws PositiveCycle when beta is below the
// maximum cycle mean.
template <class Ops>
SubAction<Ops> minimal_subaction(const WeightedBlockGraph<Ops>& g,
                                 const typename Ops::Num& beta) {
  std::vector<char> all(g.graph.vertex_count(), 1);
  SubAction<Ops> sa;
  sa.u = detail::longest_walk_values(g, beta, all, detail::WalkFail::PositiveCycle);
  sa.beta = beta;
  return sa;
}

// Calibrated sub-action (max-plus eigenvector): beta = max_cycle_mean(g);
// every edge defect is <= 0 and every vertex has an incoming edge of defect
// exactly 0. u is the max-plus span of the critical columns of the Kleene
// star -- concretely, the best normalized walk from the critical vertex set
// -- normalized so max u = 0. Requires strong connectivity.
template <class Ops>
SubAction<Ops> calibrated_subaction(const WeightedBlockGraph<Ops>& g) {
  using Num = typename Ops::Num;
  if (!is_strongly_connected(g.graph))
    throw Error(ErrorCode::NotStronglyConnected,
                "calibrated sub-actions need a strongly connected graph");
  Num beta = max_cycle_mean(g);
  SubAction<Ops> minimal = minimal_subaction(g, beta);

  // Critical vertices: on a cycle all of whose edges are tight. The tight
  // set depends on the sub-action, the set of critical cycles does not.
  int m = g.graph.edge_count();
  std::vector<char> tight(m, 0);
  for (int e = 0; e < m; ++e)
    tight[e] = Ops::eq(edge_defect(g, minimal, e), Ops::zero()) ? 1 : 0;
  SccResult scc = strongly_connected_components(g.graph, &tight);
  std::vector<char> keep = nontrivial_components(g.graph, scc, &tight);
  std::vector<char> critical(g.graph.vertex_count(), 0);
  bool any = false;
  for (int v = 0; v < g.graph.vertex_count(); ++v) {
    if (keep[scc.component[v]]) {
      critical[v] = 1;
      any = true;
    }
  }
  if (!any)
    throw Error(ErrorCode::InternalCheckFailed,
                "strongly connected graph without a critical cycle");

  SubAction<Ops> sa;
  sa.beta = beta;
  sa.u = detail::longest_walk_values(g, beta, critical, detail::WalkFail::Internal);
  // Canonical representative: max u = 0.
  Num top = sa.u[0];
  for (const Num& v : sa.u)
    if (Ops::lt(top, v)) top = v;
  for (Num& v : sa.u) v = v - top;

  for (int e = 0; e < m; ++e)
    if (Ops::lt(Ops::zero(), edge_defect(g, sa, e)))
      throw Error(ErrorCode::InternalCheckFailed, "calibrated defect positive");
  for (int v = 0; v < g.graph.vertex_count(); ++v) {
    bool tight_in = false;
    for (int x = g.graph.in_begin[v]; x < g.graph.in_begin[v + 1] && !tight_in; ++x)
      tight_in = Ops::eq(edge_defect(g, sa, g.graph.in_edge[x]), Ops::zero());
    if (!tight_in)
      throw Error(ErrorCode::InternalCheckFailed,
                  "vertex without calibrating in-edge");
  }
  return sa;
}

// (1/k) * max over walks with exactly k edges of the weight sum.
template <class Ops>
typename Ops::Num finite_horizon_bound(const WeightedBlockGraph<Ops>& g, int k) {
  using Num = typename Ops::Num;
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "horizon must be >= 1");
  const BlockGraph& b = g.graph;
  int n = b.vertex_count();
  if (n == 0) throw Error(ErrorCode::NoCycle, "empty graph");
  std::vector<Num> cur(n, Ops::zero()), nxt(n, Ops::zero());
  std::vector<char> curf(n, 1), nxtf(n, 0);
  for (int layer = 0; layer < k; ++layer) {
    parallel_for(n, [&](int v) {
      bool fin = false;
      Num best = Ops::zero();
      for (int x = b.in_begin[v]; x < b.in_begin[v + 1]; ++x) {
        int e = b.in_edge[x];
        int u = b.edges[e].first;
        if (!curf[u]) continue;
        Num cand = cur[u] + g.weight[e];
        if (!fin || Ops::lt(best, cand)) {
          best = cand;
          fin = true;
        }
      }
      nxt[v] = best;
      nxtf[v] = fin ? 1 : 0;
    });
    cur.swap(nxt);
    curf.swap(nxtf);
  }
  bool found = false;
  Num best = Ops::zero();
  for (int v = 0; v < n; ++v) {
    if (!curf[v]) continue;
    if (!found || Ops::lt(best, cur[v])) {
      best = cur[v];
      found = true;
    }
  }
  if (!found)
    throw Error(ErrorCode::NoCycle, "no walk of the requested length");
  return Ops::div_int(best, k);
}

// Tight edges, the critical subgraph, and its classes.
template <class Ops>
struct CriticalStructure {
  using Num = typename Ops::Num;
  struct Class {
    std::vector<int> vertices;
    std::vector<int> edges;
  };
  std::vector<int> tight_edges;
  std::vector<int> critical_edges;
  std::vector<Class> classes;
  Num beta{};

  bool edge_is_critical(int e) const {
    return std::binary_search(critical_edges.begin(), critical_edges.end(), e);
  }
};

template <class Ops>
CriticalStructure<Ops> critical_structure(const WeightedBlockGraph<Ops>& g,
                                          const SubAction<Ops>& sa) {
  int m = g.graph.edge_count();
  std::vector<char> tight(m, 0);
  for (int e = 0; e < m; ++e) {
    typename Ops::Num d = edge_defect(g, sa, e);
    if (Ops::lt(Ops::zero(), d))
      throw Error(ErrorCode::InvalidSubAction,
                  "edge " + word_str(g.graph.edge_word(e)) +
                      " has positive defect " + Ops::str(d));
    tight[e] = Ops::eq(d, Ops::zero()) ? 1 : 0;
  }
  SccResult scc = strongly_connected_components(g.graph, &tight);
  std::vector<char> keep = nontrivial_components(g.graph, scc, &tight);

  CriticalStructure<Ops> cs;
  cs.beta = sa.beta;
  for (int e = 0; e < m; ++e) {
    if (!tight[e]) continue;
    cs.tight_edges.push_back(e);
    auto [s, t] = g.graph.edges[e];
    if (scc.component[s] == scc.component[t] && keep[scc.component[s]])
      cs.critical_edges.push_back(e);
  }
  // Classes in order of their smallest vertex.
  std::vector<int> order;
  for (int c = 0; c < scc.count; ++c)
    if (keep[c]) order.push_back(c);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return *std::min_element(scc.members[a].begin(), scc.members[a].end()) <
           *std::min_element(scc.members[b].begin(), scc.members[b].end());
  });
  for (int c : order) {
    typename CriticalStructure<Ops>::Class cls;
    cls.vertices = scc.members[c];
    std::sort(cls.vertices.begin(), cls.vertices.end());
    for (int e : cs.critical_edges)
      if (scc.component[g.graph.edges[e].first] == c) cls.edges.push_back(e);
    cs.classes.push_back(std::move(cls));
  }
  return cs;
}

// Certificate audit: a sub-action pins beta exactly when all defects are
// nonpositive and some tight cycle exists.
template <class Ops>
struct CertificateReport {
  using Num = typename Ops::Num;
  Num max_defect{};
  bool all_nonpositive = false;
  bool tight_cycle_exists = false;
  Num osc{};
  bool valid = false;
};

template <class Ops>
CertificateReport<Ops> check_certificate(const WeightedBlockGraph<Ops>& g,
                                         const SubAction<Ops>& sa) {
  using Num = typename Ops::Num;
  CertificateReport<Ops> rep;
  int m = g.graph.edge_count();
  if (m == 0) throw Error(ErrorCode::NoCycle, "empty graph");
  std::vector<char> tight(m, 0);
  bool first = true;
  for (int e = 0; e < m; ++e) {
    Num d = edge_defect(g, sa, e);
    if (first || Ops::lt(rep.max_defect, d)) rep.max_defect = d;
    first = false;
    tight[e] = Ops::eq(d, Ops::zero()) ? 1 : 0;
  }
  rep.all_nonpositive = Ops::le(rep.max_defect, Ops::zero());
  SccResult scc = strongly_connected_components(g.graph, &tight);
  std::vector<char> keep = nontrivial_components(g.graph, scc, &tight);
  for (int c = 0; c < scc.count && !rep.tight_cycle_exists; ++c)
    if (keep[c]) rep.tight_cycle_exists = true;
  rep.osc = oscillation<Ops>(sa.u);
  rep.valid = rep.all_nonpositive && rep.tight_cycle_exists;
  return rep;
}

}  // namespace ergopt

#endif  // ERGOPT_MAXPLUS_HPP
