// Benchmark comparing the OpenMP layer kernels against the serial reference
// implementations on large random instances. Both paths must agree exactly;
// the table reports wall times and speedups.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ergopt/maxplus.hpp"
#include "ergopt/oracle.hpp"
#include "ergopt/serialref.hpp"

using namespace ergopt;

namespace {

WeightedBlockGraph<ExactOps> big_instance(std::uint64_t seed, int n, int degree) {
  oracle::Lcg rng(seed);
  BlockGraph b;
  b.order = 2;
  for (int v = 0; v < n; ++v) b.vertices.push_back(Word{v});
  std::vector<std::int64_t> weights;
  for (int v = 0; v < n; ++v) {
    // a ring edge keeps the graph strongly connected and trimmed
    b.edges.emplace_back(v, (v + 1) % n);
    weights.push_back(static_cast<std::int64_t>(rng.uniform(2001)) - 1000);
    for (int d = 1; d < degree; ++d) {
      int t = static_cast<int>(rng.uniform(n));
      b.edges.emplace_back(v, t);
      weights.push_back(static_cast<std::int64_t>(rng.uniform(2001)) - 1000);
    }
  }
  // finalize() sorts and dedups edges; rebuild weights in the same order.
  std::vector<std::pair<std::pair<int, int>, std::int64_t>> tagged;
  for (std::size_t i = 0; i < b.edges.size(); ++i)
    tagged.emplace_back(b.edges[i], weights[i]);
  std::sort(tagged.begin(), tagged.end());
  tagged.erase(std::unique(tagged.begin(), tagged.end(),
                           [](const auto& a, const auto& c) {
                             return a.first == c.first;
                           }),
               tagged.end());
  b.edges.clear();
  WeightedBlockGraph<ExactOps> g;
  for (const auto& [e, w] : tagged) {
    b.edges.push_back(e);
    g.weight.push_back(Rat(w));
  }
  b.finalize();
  g.graph = std::move(b);
  return g;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> sizes = {500, 1000, 2000};
  if (argc > 1) {
    sizes.clear();
    for (int i = 1; i < argc; ++i) sizes.push_back(std::stoi(argv[i]));
  }
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif
  std::printf("%-22s %8s %9s %12s %12s %8s %6s\n", "kernel", "n", "edges",
              "serial(ms)", "parallel(ms)", "speedup", "match");

  for (int n : sizes) {
    WeightedBlockGraph<ExactOps> g = big_instance(12345, n, 8);
    int m = g.graph.edge_count();

    {
      auto t0 = std::chrono::steady_clock::now();
      Rat serial = serialref::serial_max_cycle_mean(g);
      double t_serial = ms_since(t0);
      t0 = std::chrono::steady_clock::now();
      Rat parallel = max_cycle_mean(g);
      double t_par = ms_since(t0);
      std::printf("%-22s %8d %9d %12.1f %12.1f %7.2fx %6s\n", "max_cycle_mean",
                  n, m, t_serial, t_par, t_serial / t_par,
                  serial == parallel ? "yes" : "NO");
    }
    {
      Rat beta = max_cycle_mean(g);
      auto t0 = std::chrono::steady_clock::now();
      SubAction<ExactOps> serial = serialref::serial_minimal_subaction(g, beta);
      double t_serial = ms_since(t0);
      t0 = std::chrono::steady_clock::now();
      SubAction<ExactOps> parallel = minimal_subaction(g, beta);
      double t_par = ms_since(t0);
      bool match = serial.u == parallel.u;
      std::printf("%-22s %8d %9d %12.1f %12.1f %7.2fx %6s\n",
                  "minimal_subaction", n, m, t_serial, t_par, t_serial / t_par,
                  match ? "yes" : "NO");
    }
    {
      const int k = 64;
      auto t0 = std::chrono::steady_clock::now();
      Rat serial = serialref::serial_finite_horizon(g, k);
      double t_serial = ms_since(t0);
      t0 = std::chrono::steady_clock::now();
      Rat parallel = finite_horizon_bound(g, k);
      double t_par = ms_since(t0);
      std::printf("%-22s %8d %9d %12.1f %12.1f %7.2fx %6s\n",
                  "finite_horizon(k=64)", n, m, t_serial, t_par,
                  t_serial / t_par, serial == parallel ? "yes" : "NO");
    }
  }
  return 0;
}
