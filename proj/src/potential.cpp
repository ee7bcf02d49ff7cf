#include "ergopt/potential.hpp"

#include <algorithm>

namespace ergopt {

std::vector<Word> allowed_words(const MarkovGraph& g, int length) {
  std::vector<Word> words;
  for (int s : g.vertices.symbols) words.push_back(Word{s});
  for (int len = 2; len <= length; ++len) {
    std::vector<Word> next;
    for (const Word& w : words)
      for (int j : g.out_neighbors(w.back())) {
        Word ext = w;
        ext.push_back(j);
        next.push_back(std::move(ext));
      }
    words = std::move(next);
  }
  std::sort(words.begin(), words.end());
  return words;
}

bool itinerary_allowed(const MarkovGraph& g, const Word& itinerary) {
  for (int s : itinerary)
    if (!g.vertices.contains(s)) return false;
  for (std::size_t i = 0; i + 1 < itinerary.size(); ++i)
    if (!g.has_edge(itinerary[i], itinerary[i + 1])) return false;
  return true;
}

}  // namespace ergopt
