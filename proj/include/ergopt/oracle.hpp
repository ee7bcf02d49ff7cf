#ifndef ERGOPT_ORACLE_HPP
#define ERGOPT_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "ergopt/maxplus.hpp"

namespace ergopt::oracle {

// Brute-force references for the fast kernels. Independently coded: only the
// graph containers are shared with ergopt::maxplus, never the relaxation or
// component machinery. Guards are hard limits.

inline constexpr int kMaxVertices = 12;
inline constexpr int kMaxHorizon = 64;
inline constexpr int kMaxWalkDepth = 12;
inline constexpr std::uint64_t kMaxWalks = 200000000ull;

// Maximum mean over all simple directed cycles, by backtracking enumeration
// rooted at each cycle's smallest vertex.
template <class Ops>
typename Ops::Num brute_beta(const WeightedBlockGraph<Ops>& g) {
  using Num = typename Ops::Num;
  const BlockGraph& b = g.graph;
  int n = b.vertex_count();
  if (n > kMaxVertices)
    throw Error(ErrorCode::TooLarge, "brute_beta guard: > 12 vertices");
  Num best = Ops::zero();
  bool found = false;
  std::vector<char> visited(n, 0);
  std::function<void(int, int, Num, int)> walk = [&](int root, int v, Num sum,
                                                     int len) {
    for (int x = b.out_begin[v]; x < b.out_begin[v + 1]; ++x) {
      int e = b.out_edge[x];
      int w = b.edges[e].second;
      if (w == root) {
        Num mean = Ops::div_int(sum + g.weight[e], len + 1);
        if (!found || Ops::lt(best, mean)) {
          best = mean;
          found = true;
        }
      } else if (w > root && !visited[w]) {
        visited[w] = 1;
        walk(root, w, sum + g.weight[e], len + 1);
        visited[w] = 0;
      }
    }
  };
  for (int root = 0; root < n; ++root) {
    visited.assign(n, 0);
    visited[root] = 1;
    walk(root, root, Ops::zero(), 0);
  }
  if (!found) throw Error(ErrorCode::NoCycle, "no simple cycle");
  return best;
}

// sup over backward walks of length <= horizon of the normalized Birkhoff
// sum (empty walk = 0), evaluated per exact walk length.
template <class Ops>
std::vector<typename Ops::Num> brute_minimal_subaction(
    const WeightedBlockGraph<Ops>& g, const typename Ops::Num& beta,
    int horizon) {
  using Num = typename Ops::Num;
  const BlockGraph& b = g.graph;
  int n = b.vertex_count();
  if (n > kMaxVertices || horizon > kMaxHorizon)
    throw Error(ErrorCode::TooLarge, "brute_minimal_subaction guard");
  if (horizon < n)
    throw Error(ErrorCode::InvalidArgument, "horizon below vertex count");
  std::vector<Num> answer(n, Ops::zero());
  // best[v] = best walk of the current exact length ending at v.
  std::vector<Num> best(n, Ops::zero()), next(n, Ops::zero());
  std::vector<char> bestf(n, 1), nextf(n, 0);
  for (int len = 1; len <= horizon; ++len) {
    nextf.assign(n, 0);
    for (int e = 0; e < b.edge_count(); ++e) {
      auto [s, t] = b.edges[e];
      if (!bestf[s]) continue;
      Num cand = best[s] + g.weight[e] - beta;
      if (!nextf[t] || Ops::lt(next[t], cand)) {
        next[t] = cand;
        nextf[t] = 1;
      }
    }
    best = next;
    bestf = nextf;
    for (int v = 0; v < n; ++v)
      if (bestf[v] && Ops::lt(answer[v], best[v])) answer[v] = best[v];
  }
  return answer;
}

// max over walks with exactly k edges by depth-first enumeration.
template <class Ops>
typename Ops::Num brute_finite_horizon(const WeightedBlockGraph<Ops>& g, int k) {
  using Num = typename Ops::Num;
  const BlockGraph& b = g.graph;
  int n = b.vertex_count();
  if (k > kMaxWalkDepth)
    throw Error(ErrorCode::TooLarge, "brute_finite_horizon guard: k > 12");
  // Count walks first; enumeration must stay within the hard cap.
  {
    std::vector<std::uint64_t> cnt(n, 1), nxt(n, 0);
    for (int layer = 0; layer < k; ++layer) {
      std::fill(nxt.begin(), nxt.end(), 0);
      for (int e = 0; e < b.edge_count(); ++e) {
        auto [s, t] = b.edges[e];
        nxt[t] += cnt[s];
        if (nxt[t] > kMaxWalks)
          throw Error(ErrorCode::TooLarge, "brute_finite_horizon guard: walks");
      }
      cnt = nxt;
    }
    std::uint64_t total = 0;
    for (auto c : cnt) total += c;
    if (total == 0) throw Error(ErrorCode::NoCycle, "no walk of length k");
    if (total > kMaxWalks)
      throw Error(ErrorCode::TooLarge, "brute_finite_horizon guard: walks");
  }
  Num best = Ops::zero();
  bool found = false;
  std::function<void(int, int, Num)> dfs = [&](int v, int depth, Num sum) {
    if (depth == k) {
      if (!found || Ops::lt(best, sum)) {
        best = sum;
        found = true;
      }
      return;
    }
    for (int x = b.out_begin[v]; x < b.out_begin[v + 1]; ++x) {
      int e = b.out_edge[x];
      dfs(b.edges[e].second, depth + 1, sum + g.weight[e]);
    }
  };
  for (int v = 0; v < n; ++v) dfs(v, 0, Ops::zero());
  if (!found) throw Error(ErrorCode::NoCycle, "no walk of length k");
  return Ops::div_int(best, k);
}

// Enumerates every simple directed cycle and hands it to the callback as a
// list of edge indices.
template <class Ops>
void for_each_simple_cycle(const WeightedBlockGraph<Ops>& g,
                           const std::function<void(const std::vector<int>&)>& fn) {
  const BlockGraph& b = g.graph;
  int n = b.vertex_count();
  if (n > kMaxVertices)
    throw Error(ErrorCode::TooLarge, "cycle enumeration guard");
  std::vector<char> visited(n, 0);
  std::vector<int> path;
  std::function<void(int, int)> walk = [&](int root, int v) {
    for (int x = b.out_begin[v]; x < b.out_begin[v + 1]; ++x) {
      int e = b.out_edge[x];
      int w = b.edges[e].second;
      if (w == root) {
        path.push_back(e);
        fn(path);
        path.pop_back();
      } else if (w > root && !visited[w]) {
        visited[w] = 1;
        path.push_back(e);
        walk(root, w);
        path.pop_back();
        visited[w] = 0;
      }
    }
  };
  for (int root = 0; root < n; ++root) {
    visited.assign(n, 0);
    visited[root] = 1;
    walk(root, root);
  }
}

// Knuth's 64-bit linear congruential generator with rejection sampling;
// fully pinned so instances reproduce across implementations.
class Lcg {
 public:
  explicit Lcg(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ = state_ * 6364136223846793005ull + 1442695040888963407ull;
    return state_;
  }

  // Uniform draw in [0, n), n <= 2^32, by rejection sampling on the high
  // 32 bits of the state (the low bits of an LCG are strongly periodic).
  std::uint64_t uniform(std::uint64_t n) {
    const std::uint64_t span = 1ull << 32;
    std::uint64_t limit = span - span % n;
    for (;;) {
      std::uint64_t x = next() >> 32;
      if (x < limit) return x % n;
    }
  }

 private:
  std::uint64_t state_;
};

struct RandomInstance {
  WeightedBlockGraph<ExactOps> graph;
  int skips = 0;  // attempts discarded because trimming emptied the graph
};

// Deterministic trimmed random instance. Attempt t seeds the generator with
// seed + t and draws, in row-major vertex-pair order, one presence bit
// (uniform(2)) followed, when present, by one weight (lo + uniform(hi-lo+1)).
RandomInstance random_instance(std::uint64_t seed, int max_vertices,
                               int weight_lo, int weight_hi);

}  // namespace ergopt::oracle

#endif  // ERGOPT_ORACLE_HPP
