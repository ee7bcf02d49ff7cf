#ifndef ERGOPT_TESTS_FIXTURES_HPP
#define ERGOPT_TESTS_FIXTURES_HPP

#include "ergopt/countable.hpp"
#include "ergopt/maxplus.hpp"

namespace ergopt::fixtures {

// E1: range-1 potential A[0]=0, A[1]=1 on the full 2-shift.
inline MarkovGraph e1_graph() { return MarkovGraph::full_shift({0, 1}); }

inline Potential<ExactOps> e1_potential() {
  Potential<ExactOps> p;
  p.range = 1;
  p.weights[{0}] = Rat(0);
  p.weights[{1}] = Rat(1);
  return p;
}

inline WeightedBlockGraph<ExactOps> e1_lifted() {
  return make_weighted(e1_graph(), e1_potential());
}

// E2: vertices {0,1,2}, edges {0->1, 1->0, 1->2, 2->2, 2->0}, range-2
// weights A(01)=2, A(10)=4, A(12)=0, A(22)=5, A(20)=0.
inline MarkovGraph e2_graph() {
  return MarkovGraph::make({0, 1, 2}, {{0, 1}, {1, 0}, {1, 2}, {2, 2}, {2, 0}});
}

inline Potential<ExactOps> e2_potential() {
  Potential<ExactOps> p;
  p.range = 2;
  p.weights[{0, 1}] = Rat(2);
  p.weights[{1, 0}] = Rat(4);
  p.weights[{1, 2}] = Rat(0);
  p.weights[{2, 2}] = Rat(5);
  p.weights[{2, 0}] = Rat(0);
  return p;
}

inline WeightedBlockGraph<ExactOps> e2_weighted() {
  return make_weighted(e2_graph(), e2_potential());
}

// E4: the two-cycle 0->1 (weight 10), 1->0 (weight 0).
inline WeightedBlockGraph<ExactOps> e4_weighted() {
  MarkovGraph g = MarkovGraph::make({0, 1}, {{0, 1}, {1, 0}});
  Potential<ExactOps> p;
  p.range = 2;
  p.weights[{0, 1}] = Rat(10);
  p.weights[{1, 0}] = Rat(0);
  return make_weighted(g, p);
}

// E3: countable full shift with A = -x0, explicit region I_max = 8,
// tau(i) = -i, declared sup 0 and Var 0.
inline CountableModel<ExactOps> e3_model(int i_max = 8) {
  CountableModel<ExactOps> m;
  m.explicit_bound = i_max;
  std::vector<int> symbols;
  for (int s = 0; s <= i_max; ++s) symbols.push_back(s);
  m.explicit_graph = MarkovGraph::full_shift(symbols);
  m.potential.range = 1;
  for (int s = 0; s <= i_max; ++s) m.potential.weights[{s}] = Rat(-s);
  TailBound<ExactOps> tail;
  tail.kind = TailBound<ExactOps>::Kind::Affine;
  tail.slope = Rat(-1);
  tail.offset = Rat(0);
  m.tail = tail;
  m.coercive = true;
  m.declared_sup = Rat(0);
  m.declared_var_total = Rat(0);
  return m;
}

// Small ad-hoc weighted graph over single-symbol vertices.
inline WeightedBlockGraph<ExactOps> wbg(
    int n, const std::vector<std::tuple<int, int, std::int64_t>>& edges) {
  std::vector<int> symbols;
  for (int v = 0; v < n; ++v) symbols.push_back(v);
  std::vector<std::pair<int, int>> es;
  for (const auto& [s, t, w] : edges) es.emplace_back(s, t);
  MarkovGraph g = MarkovGraph::make(symbols, es);
  Potential<ExactOps> p;
  p.range = 2;
  for (const auto& [s, t, w] : edges) p.weights[{s, t}] = Rat(w);
  return make_weighted(g, p);
}

inline PrimitivityCertificate cert_for(const MarkovGraph& g,
                                       std::vector<int> f, int cap = 32) {
  return compute_primitivity(trim_essential(g), SymbolSet::from_unsorted(f), cap);
}

}  // namespace ergopt::fixtures

#endif  // ERGOPT_TESTS_FIXTURES_HPP
