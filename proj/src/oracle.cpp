#include "ergopt/oracle.hpp"

namespace ergopt::oracle {

RandomInstance random_instance(std::uint64_t seed, int max_vertices,
                               int weight_lo, int weight_hi) {
  if (max_vertices < 2 || max_vertices > kMaxVertices)
    throw Error(ErrorCode::InvalidArgument, "max_vertices must be in [2,12]");
  if (weight_hi < weight_lo)
    throw Error(ErrorCode::InvalidArgument, "empty weight range");
  int span = weight_hi - weight_lo + 1;
  for (int attempt = 0;; ++attempt) {
    Lcg rng(seed + static_cast<std::uint64_t>(attempt));
    int n = 2 + static_cast<int>(rng.uniform(
                    static_cast<std::uint64_t>(max_vertices - 1)));
    std::vector<int> symbols;
    for (int i = 0; i < n; ++i) symbols.push_back(i);
    std::vector<std::pair<int, int>> edges;
    std::map<std::pair<int, int>, std::int64_t> weight_of;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (rng.uniform(2) == 1) {
          edges.emplace_back(i, j);
          weight_of[{i, j}] =
              weight_lo + static_cast<std::int64_t>(rng.uniform(span));
        }
      }
    }
    MarkovGraph g = trim_essential(MarkovGraph::make(symbols, edges));
    if (g.vertices.empty()) continue;

    Potential<ExactOps> p;
    p.range = 2;
    for (auto& [i, j] : g.edges) p.weights[Word{i, j}] = Rat(weight_of[{i, j}]);
    RandomInstance inst;
    inst.graph = make_weighted(g, p);
    inst.skips = attempt;
    return inst;
  }
}

}  // namespace ergopt::oracle
