#include <doctest.h>

#include "ergopt/countable.hpp"
#include "ergopt/oracle.hpp"
#include "fixtures.hpp"

using namespace ergopt;
using namespace ergopt::fixtures;

TEST_CASE("birkhoff sums") {
  MarkovGraph g1 = e1_graph();
  Potential<ExactOps> p1 = e1_potential();
  CHECK(birkhoff_sum(g1, p1, {1, 1, 1}, 3) == Rat(3));
  CHECK(birkhoff_sum(g1, p1, {1, 1, 1}, 0) == Rat(0));

  MarkovGraph g2 = e2_graph();
  Potential<ExactOps> p2 = e2_potential();
  CHECK(birkhoff_sum(g2, p2, {0, 1, 0}, 2) == Rat(6));
  CHECK_THROWS_AS(birkhoff_sum(g2, p2, {0, 0, 0}, 2), Error);
}

TEST_CASE("birkhoff cocycle additivity") {
  MarkovGraph g = e2_graph();
  Potential<ExactOps> p = e2_potential();
  // walk 0 -> 1 -> 2 -> 2 -> 0 -> 1, split every which way
  Word w{0, 1, 2, 2, 0, 1};
  int total_k = static_cast<int>(w.size()) - (p.range - 1);
  Rat whole = birkhoff_sum(g, p, w, total_k);
  for (int k1 = 0; k1 <= total_k; ++k1) {
    Word head(w.begin(), w.begin() + k1 + p.range - 1);
    Word tail(w.begin() + k1, w.end());
    Rat parts =
        birkhoff_sum(g, p, head, k1) + birkhoff_sum(g, p, tail, total_k - k1);
    CHECK(parts == whole);
  }
}

TEST_CASE("variation of word tables") {
  CHECK(variation(e1_potential(), 1) == Rat(0));
  // at source 2 the spread is 5-0, at 1 it is 4-0, at 0 just {2}
  CHECK(variation(e2_potential(), 1) == Rat(5));
  CHECK(variation(e2_potential(), 2) == Rat(0));
  CHECK(variation(e2_potential(), 7) == Rat(0));
}

TEST_CASE("variation is nonincreasing in k") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    oracle::Lcg rng(seed);
    MarkovGraph g = MarkovGraph::full_shift({0, 1, 2});
    Potential<ExactOps> p;
    p.range = 3;
    for (const Word& w : allowed_words(g, 3))
      p.weights[w] = Rat(static_cast<std::int64_t>(rng.uniform(19)) - 9);
    Rat prev = variation(p, 1);
    for (int k = 2; k <= 3; ++k) {
      Rat cur = variation(p, k);
      CHECK(cur <= prev);
      prev = cur;
    }
  }
}

TEST_CASE("summaries") {
  auto cert = cert_for(e2_graph(), {0, 1, 2});
  VariationSummary<ExactOps> s = summarize(e2_potential(), cert);
  CHECK(s.sup == Rat(5));
  CHECK(s.inf_on_connecting == Rat(0));
  CHECK(s.var_total == Rat(5));
  CHECK(s.var_k == std::vector<Rat>{Rat(5)});

  auto cert1 = cert_for(e1_graph(), {0});
  VariationSummary<ExactOps> s1 = summarize(e1_potential(), cert1);
  CHECK(s1.sup == Rat(1));
  CHECK(s1.inf_on_connecting == Rat(0));
  CHECK(s1.var_total == Rat(0));

  Potential<ExactOps> c;
  c.range = 1;
  c.weights[{0}] = Rat(7, 2);
  c.weights[{1}] = Rat(7, 2);
  auto certc = cert_for(e1_graph(), {0, 1});
  VariationSummary<ExactOps> sc = summarize(c, certc);
  CHECK(sc.sup == Rat(7, 2));
  CHECK(sc.inf_on_connecting == Rat(7, 2));
  CHECK(sc.var_total == Rat(0));
}

TEST_CASE("hoelder geometric bounds") {
  HoelderModel<ExactOps> h{Rat(2), Rat(1, 2)};
  CHECK(hoelder_var_bound(h) == Rat(2));
  HoelderModel<ExactOps> h2{Rat(1), Rat(9, 10)};
  CHECK(hoelder_var_bound(h2) == Rat(9));
  HoelderModel<ExactOps> h0{Rat(0), Rat(1, 2)};
  CHECK(hoelder_var_bound(h0) == Rat(0));
  CHECK_THROWS_AS(hoelder_var_bound(HoelderModel<ExactOps>{Rat(1), Rat(1)}),
                  Error);
}

TEST_CASE("hoelder bound dominates the computed variation sum") {
  HoelderModel<ExactOps> h{Rat(10), Rat(1, 2)};
  CHECK(hoelder_dominates(h, e2_potential()));
  CHECK(hoelder_var_bound(h) >= summarize(e2_potential(),
                                          cert_for(e2_graph(), {0, 1, 2}))
                                    .var_total);
  HoelderModel<ExactOps> weak{Rat(1), Rat(1, 2)};
  CHECK_FALSE(hoelder_dominates(weak, e2_potential()));
}

TEST_CASE("countable model validation") {
  auto model = e3_model();
  ValidationReport rep = validate_countable(model);
  CHECK(rep.ok);
  CHECK(rep.computed_sup == "0");

  SUBCASE("non-decaying tail breaks declared coercivity") {
    model.tail->slope = Rat(0);
    model.tail->offset = Rat(1);
    ValidationReport bad = validate_countable(model);
    CHECK_FALSE(bad.ok);
  }
  SUBCASE("declared sup below the computed sup") {
    model.declared_sup = Rat(-1);
    ValidationReport bad = validate_countable(model);
    CHECK_FALSE(bad.ok);
  }
  SUBCASE("tail must majorize explicit cylinder sups") {
    model.tail->offset = Rat(-1);  // tau(0) = -1 < A|[0] = 0
    ValidationReport bad = validate_countable(model);
    CHECK_FALSE(bad.ok);
  }
  SUBCASE("increasing table tail is rejected") {
    TailBound<ExactOps> t;
    t.kind = TailBound<ExactOps>::Kind::Table;
    t.entries = {{0, Rat(-5)}, {4, Rat(-1)}};
    model.tail = t;
    model.coercive = false;
    ValidationReport bad = validate_countable(model);
    CHECK_FALSE(bad.ok);
  }
}

TEST_CASE("vertex function variation over block words") {
  BlockGraph b = lift_blocks(MarkovGraph::full_shift({0, 1}), 3);
  // values indexed by {00, 01, 10, 11}
  std::vector<Rat> vals{Rat(0), Rat(3), Rat(1), Rat(1)};
  CHECK(vertex_function_variation<ExactOps>(b, vals, 1) == Rat(3));
  CHECK(vertex_function_variation<ExactOps>(b, vals, 2) == Rat(0));
}

TEST_CASE("minimal sub-action inherits the declared Hoelder regularity") {
  // range-3 random tables on the full 3-shift, with (H, lambda) declared
  // generously enough to dominate the computed variations
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    MarkovGraph g = MarkovGraph::full_shift({0, 1, 2});
    oracle::Lcg rng(seed);
    Potential<ExactOps> p;
    p.range = 3;
    for (const Word& w : allowed_words(g, 3))
      p.weights[w] = Rat(static_cast<std::int64_t>(rng.uniform(19)) - 9);
    HoelderModel<ExactOps> h{Rat(80), Rat(1, 2)};
    REQUIRE(hoelder_dominates(h, p));

    auto wg = make_weighted(g, p);
    Rat beta = max_cycle_mean(wg);
    SubAction<ExactOps> ua = minimal_subaction(wg, beta);
    for (int k = 1; k <= 3; ++k) {
      Rat var_ua = vertex_function_variation<ExactOps>(wg.graph, ua.u, k);
      Rat tail(0);
      for (int j = k; j < p.range; ++j) tail += variation(p, j);
      CHECK(var_ua <= tail);
      CHECK(var_ua <= hoelder_tail_bound(h, k));
    }
  }
}
