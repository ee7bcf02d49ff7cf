#include "ergopt/primitivity.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <vector>

namespace ergopt {

namespace {

// Dense index maps for the (small) symbol universe of a trimmed graph.
struct Indexed {
  std::vector<int> symbols;           // index -> symbol
  std::map<int, int> index_of;        // symbol -> index
  std::vector<std::vector<char>> adj; // adjacency over indices

  explicit Indexed(const MarkovGraph& g) {
    symbols = g.vertices.symbols;
    for (std::size_t i = 0; i < symbols.size(); ++i)
      index_of[symbols[i]] = static_cast<int>(i);
    adj.assign(symbols.size(), std::vector<char>(symbols.size(), 0));
    for (auto& [a, b] : g.edges) adj[index_of[a]][index_of[b]] = 1;
  }
};

}  // namespace

PrimitivityCertificate compute_primitivity(const MarkovGraph& g,
                                           const SymbolSet& connecting_set,
                                           int k0_cap) {
  if (k0_cap < 0) throw Error(ErrorCode::InvalidArgument, "negative k0 cap");
  for (int s : connecting_set.symbols) {
    if (!g.vertices.contains(s))
      throw Error(ErrorCode::InvalidArgument,
                  "connecting set symbol " + std::to_string(s) +
                      " is not a vertex of the graph");
  }
  Indexed ix(g);
  int n = static_cast<int>(ix.symbols.size());
  if (n == 0)
    throw Error(ErrorCode::NotFinitelyPrimitive, "empty essential set");

  std::vector<char> in_f(n, 0);
  for (int s : connecting_set.symbols) in_f[ix.index_of[s]] = 1;

  // reach[i] = set of F-symbols reachable from i by a path whose interior
  // symbols (all of them, including the endpoint here) lie in F, with the
  // path length fixed at the current K0 candidate.
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (int k0 = 0; k0 <= k0_cap; ++k0) {
    if (k0 == 0) {
      bool all = true;
      for (int i = 0; i < n && all; ++i)
        for (int j = 0; j < n && all; ++j)
          if (!ix.adj[i][j]) all = false;
      if (all) return PrimitivityCertificate{connecting_set, 0};
      continue;
    }
    if (k0 == 1) {
      for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) reach[i][l] = ix.adj[i][l] && in_f[l];
    } else {
      std::vector<std::vector<char>> next(n, std::vector<char>(n, 0));
      for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l)
          if (reach[i][l])
            for (int l2 = 0; l2 < n; ++l2)
              if (ix.adj[l][l2] && in_f[l2]) next[i][l2] = 1;
      reach = std::move(next);
    }
    bool all = true;
    for (int i = 0; i < n && all; ++i) {
      for (int j = 0; j < n && all; ++j) {
        bool hit = false;
        for (int l = 0; l < n && !hit; ++l)
          if (reach[i][l] && ix.adj[l][j]) hit = true;
        if (!hit) all = false;
      }
    }
    if (all) return PrimitivityCertificate{connecting_set, k0};
  }
  throw Error(ErrorCode::NotFinitelyPrimitive,
              "no uniform connection length K0 <= " + std::to_string(k0_cap));
}

bool certificate_holds(const MarkovGraph& g, const PrimitivityCertificate& cert) {
  Indexed ix(g);
  int n = static_cast<int>(ix.symbols.size());
  std::vector<char> in_f(n, 0);
  for (int s : cert.connecting_set.symbols) {
    auto it = ix.index_of.find(s);
    if (it == ix.index_of.end()) return false;
    in_f[it->second] = 1;
  }
  // Depth-first enumeration of interior words, independent of the boolean
  // power search above.
  std::function<bool(int, int, int)> connects = [&](int from, int depth,
                                                    int target) -> bool {
    if (depth == cert.k0) return ix.adj[from][target] != 0;
    for (int l = 0; l < n; ++l)
      if (in_f[l] && ix.adj[from][l] && connects(l, depth + 1, target))
        return true;
    return false;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!connects(i, 0, j)) return false;
  return true;
}

}  // namespace ergopt
