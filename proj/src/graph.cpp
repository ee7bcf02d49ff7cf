#include "ergopt/graph.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

namespace ergopt {

std::string word_str(const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(w[i]);
  }
  return s;
}

Word parse_word(std::string_view s) {
  Word w;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    std::string_view part = s.substr(pos, comma == std::string_view::npos
                                              ? std::string_view::npos
                                              : comma - pos);
    if (part.empty()) throw Error(ErrorCode::ParseError, "empty word letter");
    int v = 0;
    for (char c : part) {
      if (c < '0' || c > '9')
        throw Error(ErrorCode::ParseError, "bad word: " + std::string(s));
      v = v * 10 + (c - '0');
      if (v > 100000000) throw Error(ErrorCode::ParseError, "symbol too large");
    }
    w.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return w;
}

bool SymbolSet::contains(int s) const {
  return std::binary_search(symbols.begin(), symbols.end(), s);
}

int SymbolSet::max_symbol() const {
  if (symbols.empty())
    throw Error(ErrorCode::InvalidArgument, "max of empty symbol set");
  return symbols.back();
}

SymbolSet SymbolSet::from_unsorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  for (int s : v) {
    if (s < 0) throw Error(ErrorCode::InvalidArgument, "negative symbol");
  }
  return SymbolSet{std::move(v)};
}

bool MarkovGraph::has_edge(int i, int j) const {
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(i, j));
}

std::vector<int> MarkovGraph::out_neighbors(int i) const {
  std::vector<int> out;
  auto lo = std::lower_bound(edges.begin(), edges.end(),
                             std::make_pair(i, std::numeric_limits<int>::min()));
  for (auto it = lo; it != edges.end() && it->first == i; ++it)
    out.push_back(it->second);
  return out;
}

MarkovGraph MarkovGraph::make(std::vector<int> vertices,
                              std::vector<std::pair<int, int>> edges) {
  MarkovGraph g;
  g.vertices = SymbolSet::from_unsorted(std::move(vertices));
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (auto& [i, j] : edges) {
    if (!g.vertices.contains(i) || !g.vertices.contains(j))
      throw Error(ErrorCode::InvalidArgument,
                  "edge endpoint outside vertex set: " + std::to_string(i) +
                      "->" + std::to_string(j));
  }
  g.edges = std::move(edges);
  return g;
}

MarkovGraph MarkovGraph::full_shift(const std::vector<int>& symbols) {
  std::vector<std::pair<int, int>> edges;
  for (int i : symbols)
    for (int j : symbols) edges.emplace_back(i, j);
  return make(symbols, std::move(edges));
}

MarkovGraph trim_essential(const MarkovGraph& g) {
  std::set<int> alive(g.vertices.symbols.begin(), g.vertices.symbols.end());
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<int, int> outdeg;
    for (int v : alive) outdeg[v] = 0;
    for (auto& [i, j] : g.edges) {
      if (alive.count(i) && alive.count(j)) ++outdeg[i];
    }
    for (auto it = alive.begin(); it != alive.end();) {
      if (outdeg[*it] == 0) {
        it = alive.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }
  std::vector<int> vs(alive.begin(), alive.end());
  std::vector<std::pair<int, int>> es;
  for (auto& [i, j] : g.edges)
    if (alive.count(i) && alive.count(j)) es.emplace_back(i, j);
  return MarkovGraph::make(std::move(vs), std::move(es));
}

Word BlockGraph::edge_word(int e) const {
  const Word& src = vertices[edges[e].first];
  const Word& dst = vertices[edges[e].second];
  Word w = src;
  w.push_back(dst.back());
  return w;
}

int BlockGraph::vertex_index(const Word& w) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), w);
  if (it == vertices.end() || *it != w) return -1;
  return static_cast<int>(it - vertices.begin());
}

void BlockGraph::finalize() {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  int n = vertex_count();
  int m = edge_count();
  out_begin.assign(n + 1, 0);
  in_begin.assign(n + 1, 0);
  for (auto& [s, t] : edges) {
    ++out_begin[s + 1];
    ++in_begin[t + 1];
  }
  for (int v = 0; v < n; ++v) {
    out_begin[v + 1] += out_begin[v];
    in_begin[v + 1] += in_begin[v];
  }
  out_edge.assign(m, 0);
  in_edge.assign(m, 0);
  std::vector<int> onext(out_begin.begin(), out_begin.end() - 1);
  std::vector<int> inext(in_begin.begin(), in_begin.end() - 1);
  for (int e = 0; e < m; ++e) {
    out_edge[onext[edges[e].first]++] = e;
    in_edge[inext[edges[e].second]++] = e;
  }
}

BlockGraph lift_blocks(const MarkovGraph& g, int m) {
  if (m < 2) throw Error(ErrorCode::InvalidArgument, "block order must be >= 2");
  // Allowed words of length k, grown letter by letter.
  std::vector<Word> words;
  for (int s : g.vertices.symbols) words.push_back(Word{s});
  for (int len = 2; len <= m - 1; ++len) {
    std::vector<Word> next;
    for (const Word& w : words) {
      for (int j : g.out_neighbors(w.back())) {
        Word ext = w;
        ext.push_back(j);
        next.push_back(std::move(ext));
      }
    }
    words = std::move(next);
  }
  if (words.empty()) throw Error(ErrorCode::EmptyShift, "no allowed words");
  std::sort(words.begin(), words.end());

  BlockGraph b;
  b.order = m;
  b.vertices = words;
  for (int v = 0; v < b.vertex_count(); ++v) {
    const Word& w = b.vertices[v];
    for (int j : g.out_neighbors(w.back())) {
      Word suffix(w.begin() + 1, w.end());
      suffix.push_back(j);
      int t = b.vertex_index(suffix);
      if (t >= 0) b.edges.emplace_back(v, t);
    }
  }
  b.finalize();
  return b;
}

namespace {

// Iterative Tarjan; recursion depth is unbounded on benchmark-sized graphs.
struct TarjanState {
  const BlockGraph& g;
  const std::vector<char>* mask;
  std::vector<int> index, low, comp;
  std::vector<char> on_stack;
  std::vector<int> stack;
  int next_index = 0;
  int next_comp = 0;

  explicit TarjanState(const BlockGraph& g_, const std::vector<char>* mask_)
      : g(g_), mask(mask_) {
    int n = g.vertex_count();
    index.assign(n, -1);
    low.assign(n, 0);
    comp.assign(n, -1);
    on_stack.assign(n, 0);
  }

  bool edge_kept(int e) const { return mask == nullptr || (*mask)[e]; }

  void run(int root) {
    struct Frame {
      int v;
      int ei;  // position within out_begin[v]..out_begin[v+1]
    };
    std::vector<Frame> frames;
    frames.push_back({root, g.out_begin[root]});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.ei < g.out_begin[f.v + 1]) {
        int e = g.out_edge[f.ei++];
        if (!edge_kept(e)) continue;
        int w = g.edges[e].second;
        if (index[w] < 0) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, g.out_begin[w]});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        int v = f.v;
        if (low[v] == index[v]) {
          int c = next_comp++;
          int w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp[w] = c;
          } while (w != v);
        }
        frames.pop_back();
        if (!frames.empty()) {
          int parent = frames.back().v;
          low[parent] = std::min(low[parent], low[v]);
        }
      }
    }
  }
};

}  // namespace

SccResult strongly_connected_components(const BlockGraph& g,
                                        const std::vector<char>* edge_mask) {
  TarjanState st(g, edge_mask);
  for (int v = 0; v < g.vertex_count(); ++v)
    if (st.index[v] < 0) st.run(v);
  SccResult r;
  r.component = std::move(st.comp);
  r.count = st.next_comp;
  r.members.assign(r.count, {});
  for (int v = 0; v < g.vertex_count(); ++v)
    r.members[r.component[v]].push_back(v);
  return r;
}

std::vector<char> nontrivial_components(const BlockGraph& g, const SccResult& scc,
                                        const std::vector<char>* edge_mask) {
  std::vector<char> nontrivial(scc.count, 0);
  for (int c = 0; c < scc.count; ++c)
    if (scc.members[c].size() > 1) nontrivial[c] = 1;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (edge_mask && !(*edge_mask)[e]) continue;
    auto [s, t] = g.edges[e];
    if (s == t) nontrivial[scc.component[s]] = 1;
  }
  return nontrivial;
}

bool is_strongly_connected(const BlockGraph& g) {
  if (g.vertex_count() == 0) return false;
  SccResult scc = strongly_connected_components(g);
  if (scc.count != 1) return false;
  auto nt = nontrivial_components(g, scc);
  return nt[0] != 0;
}

}  // namespace ergopt
