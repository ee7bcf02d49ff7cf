#include <doctest.h>

#include "ergopt/measures.hpp"
#include "ergopt/oracle.hpp"
#include "fixtures.hpp"

using namespace ergopt;
using namespace ergopt::fixtures;

namespace {

int edge_of(const BlockGraph& g, int s, int t) {
  for (int e = 0; e < g.edge_count(); ++e)
    if (g.edges[e] == std::make_pair(s, t)) return e;
  REQUIRE(false);
  return -1;
}

}  // namespace

TEST_CASE("cycle measures are uniform and balanced") {
  auto g2 = e2_weighted();
  PeriodicOrbit loop{{edge_of(g2.graph, 2, 2)}};
  InvariantMeasure<ExactOps> mu = cycle_measure<ExactOps>(loop, g2.graph);
  CHECK(mu.edge_freq.size() == 1);
  CHECK(mu.edge_freq.begin()->second == Rat(1));
  CHECK(measure_is_valid(mu, g2.graph));

  auto g4 = e4_weighted();
  PeriodicOrbit two{{edge_of(g4.graph, 0, 1), edge_of(g4.graph, 1, 0)}};
  InvariantMeasure<ExactOps> mu2 = cycle_measure<ExactOps>(two, g4.graph);
  for (const auto& [e, f] : mu2.edge_freq) CHECK(f == Rat(1, 2));
  CHECK(measure_is_valid(mu2, g4.graph));

  PeriodicOrbit three{{edge_of(g2.graph, 0, 1), edge_of(g2.graph, 1, 2),
                       edge_of(g2.graph, 2, 0)}};
  InvariantMeasure<ExactOps> mu3 = cycle_measure<ExactOps>(three, g2.graph);
  for (const auto& [e, f] : mu3.edge_freq) CHECK(f == Rat(1, 3));
  CHECK(measure_is_valid(mu3, g2.graph));

  PeriodicOrbit broken{{edge_of(g2.graph, 0, 1), edge_of(g2.graph, 2, 0)}};
  CHECK_THROWS_AS(cycle_measure<ExactOps>(broken, g2.graph), Error);
}

TEST_CASE("integration against the potential") {
  auto g2 = e2_weighted();
  PeriodicOrbit loop{{edge_of(g2.graph, 2, 2)}};
  CHECK(integrate(cycle_measure<ExactOps>(loop, g2.graph), g2) == Rat(5));

  PeriodicOrbit pair{{edge_of(g2.graph, 0, 1), edge_of(g2.graph, 1, 0)}};
  CHECK(integrate(cycle_measure<ExactOps>(pair, g2.graph), g2) == Rat(3));

  auto g4 = e4_weighted();
  PeriodicOrbit two{{edge_of(g4.graph, 0, 1), edge_of(g4.graph, 1, 0)}};
  CHECK(integrate(cycle_measure<ExactOps>(two, g4.graph), g4) == Rat(5));

  InvariantMeasure<ExactOps> outside;
  outside.edge_freq[99] = Rat(1);
  CHECK_THROWS_AS(integrate(outside, g4), Error);
}

TEST_CASE("maximizing set per critical class") {
  auto g2 = e2_weighted();
  auto cs2 = critical_structure(g2, calibrated_subaction(g2));
  auto set2 = maximizing_set(g2, cs2);
  REQUIRE(set2.size() == 1);
  CHECK(set2[0].integral == Rat(5));
  CHECK(set2[0].orbit.cycle.size() == 1);

  auto g4 = e4_weighted();
  auto cs4 = critical_structure(g4, calibrated_subaction(g4));
  auto set4 = maximizing_set(g4, cs4);
  REQUIRE(set4.size() == 1);
  CHECK(set4[0].integral == Rat(5));
  CHECK(set4[0].orbit.cycle.size() == 2);

  // two disjoint loops of equal weight: u == 0, beta = 7 is a valid
  // certificate and yields two classes with equal integrals
  auto twin = wbg(2, {{0, 0, 7}, {1, 1, 7}});
  SubAction<ExactOps> u{std::vector<Rat>(2, Rat(0)), Rat(7)};
  auto cs = critical_structure(twin, u);
  auto set = maximizing_set(twin, cs);
  REQUIRE(set.size() == 2);
  CHECK(set[0].integral == Rat(7));
  CHECK(set[1].integral == Rat(7));
  CHECK(set[0].members.vertices == std::vector<int>{0});
  CHECK(set[1].members.vertices == std::vector<int>{1});
}

TEST_CASE("maximizing_set requires a critical class") {
  // u == 0 with beta = 10: defects nonpositive, but the only tight edge
  // (0->1, weight 10) lies on no cycle, so the critical set is empty.
  auto g = wbg(2, {{0, 1, 10}, {1, 0, 0}});
  SubAction<ExactOps> u{std::vector<Rat>(2, Rat(0)), Rat(10)};
  CriticalStructure<ExactOps> cs = critical_structure(g, u);
  CHECK(cs.tight_edges.size() == 1);
  CHECK(cs.critical_edges.empty());
  CHECK(cs.classes.empty());
  try {
    maximizing_set(g, cs);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyCritical);
  }
}

TEST_CASE("verify_maximizing matches the support characterization") {
  auto g2 = e2_weighted();
  auto cs2 = critical_structure(g2, calibrated_subaction(g2));
  PeriodicOrbit loop{{edge_of(g2.graph, 2, 2)}};
  CHECK(verify_maximizing(cycle_measure<ExactOps>(loop, g2.graph), g2, cs2));
  PeriodicOrbit pair{{edge_of(g2.graph, 0, 1), edge_of(g2.graph, 1, 0)}};
  CHECK_FALSE(verify_maximizing(cycle_measure<ExactOps>(pair, g2.graph), g2, cs2));
}

TEST_CASE("measure convexity in the integral") {
  auto g2 = e2_weighted();
  PeriodicOrbit loop{{edge_of(g2.graph, 2, 2)}};
  PeriodicOrbit pair{{edge_of(g2.graph, 0, 1), edge_of(g2.graph, 1, 0)}};
  InvariantMeasure<ExactOps> a = cycle_measure<ExactOps>(loop, g2.graph);
  InvariantMeasure<ExactOps> b = cycle_measure<ExactOps>(pair, g2.graph);
  for (Rat t : {Rat(0), Rat(1, 3), Rat(1, 2), Rat(4, 5), Rat(1)}) {
    InvariantMeasure<ExactOps> blend;
    for (const auto& [e, f] : a.edge_freq) blend.edge_freq[e] = t * f;
    for (const auto& [e, f] : b.edge_freq) {
      auto it = blend.edge_freq.find(e);
      Rat add = (Rat(1) - t) * f;
      if (it == blend.edge_freq.end())
        blend.edge_freq[e] = add;
      else
        it->second += add;
    }
    CHECK(measure_is_valid(blend, g2.graph));
    CHECK(integrate(blend, g2) ==
          t * integrate(a, g2) + (Rat(1) - t) * integrate(b, g2));
  }
}

TEST_CASE("cycle measures never beat beta, equality iff critical") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    auto inst = oracle::random_instance(seed, 7, -9, 9);
    Rat beta = max_cycle_mean(inst.graph);
    SubAction<ExactOps> u = minimal_subaction(inst.graph, beta);
    CriticalStructure<ExactOps> cs = critical_structure(inst.graph, u);
    oracle::for_each_simple_cycle<ExactOps>(
        inst.graph, [&](const std::vector<int>& cyc) {
          PeriodicOrbit orbit{cyc};
          InvariantMeasure<ExactOps> mu =
              cycle_measure<ExactOps>(orbit, inst.graph.graph);
          CHECK(measure_is_valid(mu, inst.graph.graph));
          Rat integral = integrate(mu, inst.graph);
          CHECK(integral <= beta);
          bool all_critical = true;
          for (int e : cyc)
            if (!cs.edge_is_critical(e)) all_critical = false;
          CHECK((integral == beta) == all_critical);
          CHECK(verify_maximizing(mu, inst.graph, cs) == all_critical);
        });
  }
}
