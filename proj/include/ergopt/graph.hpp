#ifndef ERGOPT_GRAPH_HPP
#define ERGOPT_GRAPH_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ergopt/error.hpp"

namespace ergopt {

// A word over the symbol alphabet (nonnegative integers).
using Word = std::vector<int>;

std::string word_str(const Word& w);
Word parse_word(std::string_view s);

// Strictly increasing list of alphabet letters.
struct SymbolSet {
  std::vector<int> symbols;

  bool contains(int s) const;
  bool empty() const { return symbols.empty(); }
  int max_symbol() const;

  static SymbolSet from_unsorted(std::vector<int> v);
};

// Finite directed graph over a symbol set; edges carry the actual symbol
// labels, not indices.
struct MarkovGraph {
  SymbolSet vertices;
  std::vector<std::pair<int, int>> edges;  // sorted, unique

  bool has_edge(int i, int j) const;
  std::vector<int> out_neighbors(int i) const;

  static MarkovGraph make(std::vector<int> vertices,
                          std::vector<std::pair<int, int>> edges);
  static MarkovGraph full_shift(const std::vector<int>& symbols);
};

// Maximal subgraph in which every vertex has out-degree >= 1 (iterated sink
// removal). Vertices with no incoming edges are kept. May return the empty
// graph.
MarkovGraph trim_essential(const MarkovGraph& g);

// Higher-block recoding: vertices are the allowed (m-1)-words of g, edges the
// allowed m-words, running from prefix word to suffix word. For m = 2 this is
// g itself, reindexed.
struct BlockGraph {
  int order = 2;                            // m >= 2
  std::vector<Word> vertices;               // lex-sorted (m-1)-words
  std::vector<std::pair<int, int>> edges;   // (src,dst) vertex indices, sorted

  // CSR adjacency, built by finalize().
  std::vector<int> out_begin, out_edge;     // edge indices grouped by source
  std::vector<int> in_begin, in_edge;       // edge indices grouped by target

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }

  // The m-word spelled by an edge: source word plus last letter of target.
  Word edge_word(int e) const;
  int vertex_index(const Word& w) const;    // -1 when absent

  void finalize();
};

BlockGraph lift_blocks(const MarkovGraph& g, int m);

// Strongly connected components in Tarjan order (reverse topological).
// An edge mask restricts the graph to a subset of edges; component ids are
// assigned 0..k-1.
struct SccResult {
  std::vector<int> component;               // vertex -> component id
  std::vector<std::vector<int>> members;    // component id -> vertices
  int count = 0;
};

SccResult strongly_connected_components(const BlockGraph& g,
                                        const std::vector<char>* edge_mask = nullptr);

// A component is nontrivial when it can carry a cycle: either it has at
// least two vertices or its single vertex has a (kept) self-loop.
std::vector<char> nontrivial_components(const BlockGraph& g, const SccResult& scc,
                                        const std::vector<char>* edge_mask = nullptr);

bool is_strongly_connected(const BlockGraph& g);

}  // namespace ergopt

#endif  // ERGOPT_GRAPH_HPP
