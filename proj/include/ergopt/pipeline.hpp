#ifndef ERGOPT_PIPELINE_HPP
#define ERGOPT_PIPELINE_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ergopt/config.hpp"
#include "ergopt/countable.hpp"
#include "ergopt/maxplus.hpp"
#include "ergopt/measures.hpp"
#include "ergopt/oracle.hpp"
#include "ergopt/truncation.hpp"

namespace ergopt {

using nlohmann::json;

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct RunResult {
  json output;
  int exit_code = 0;
};

// Exit codes shared by the CLI:
//   analyze: 0 all checks pass, 2 parse/validation/model failure,
//            3 FALSIFIED internal check
//   verify:  0 VALID, 1 INVALID, 2 parse failure
//   oracle:  0 all equal, 2 parse failure, 4 instance beyond oracle guards
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitBadInput = 2;
inline constexpr int kExitFalsified = 3;
inline constexpr int kExitTooLarge = 4;

std::string fnv1a_hex(const std::string& bytes);
std::string read_file(const std::string& path);
json load_json_file(const std::string& path);

RunResult run_analyze(const std::string& config_path,
                      const std::optional<std::string>& emit_path,
                      const std::optional<std::string>& csv_dir,
                      const json& overrides);
RunResult run_verify(const std::string& config_path,
                     const std::string& subaction_path);
RunResult run_oracle(const std::string& config_path, int seeds);

namespace pipeline_detail {

template <class Ops>
Potential<Ops> build_potential(const AnalysisConfig& cfg) {
  Potential<Ops> p;
  p.range = cfg.range;
  for (const auto& [w, s] : cfg.weight_entries) {
    if (p.weights.count(w))
      throw Error(ErrorCode::ParseError, "duplicate weight for word " + word_str(w));
    p.weights.emplace(w, Ops::parse(s));
  }
  return p;
}

template <class Ops>
CountableModel<Ops> build_countable(const AnalysisConfig& cfg) {
  CountableModel<Ops> m;
  m.explicit_bound = cfg.explicit_bound;
  m.explicit_graph = build_graph(cfg);
  m.potential = build_potential<Ops>(cfg);
  m.coercive = cfg.coercive;
  m.declared_sup = Ops::parse(cfg.declared_sup);
  m.declared_var_total = Ops::parse(cfg.declared_var_total);
  if (cfg.tail.present) {
    TailBound<Ops> t;
    if (cfg.tail.affine) {
      t.kind = TailBound<Ops>::Kind::Affine;
      t.slope = Ops::parse(cfg.tail.slope);
      t.offset = Ops::parse(cfg.tail.offset);
    } else {
      t.kind = TailBound<Ops>::Kind::Table;
      for (const auto& [i, s] : cfg.tail.entries)
        t.entries.emplace_back(i, Ops::parse(s));
    }
    m.tail = std::move(t);
  }
  return m;
}

template <class Ops>
SymbolSet connecting_set_for(const AnalysisConfig& cfg, const MarkovGraph& g) {
  if (cfg.connecting_set.has_value())
    return SymbolSet::from_unsorted(*cfg.connecting_set);
  return g.vertices;  // default: all essential symbols
}

template <class Ops>
json subaction_json(const BlockGraph& g, const SubAction<Ops>& sa,
                    std::optional<int> level) {
  json u = json::object();
  for (int v = 0; v < g.vertex_count(); ++v)
    u[word_str(g.vertices[v])] = Ops::str(sa.u[v]);
  json out;
  out["beta"] = Ops::str(sa.beta);
  out["u"] = std::move(u);
  if (level.has_value()) out["level"] = *level;
  return out;
}

inline json edge_json(const BlockGraph& g, int e) {
  return json::array(
      {word_str(g.vertices[g.edges[e].first]), word_str(g.vertices[g.edges[e].second])});
}

template <class Ops>
json measure_json(const BlockGraph& g, const InvariantMeasure<Ops>& mu) {
  json edges = json::array();
  for (const auto& [e, f] : mu.edge_freq) {
    json row;
    row["edge"] = edge_json(g, e);
    row["freq"] = Ops::str(f);
    edges.push_back(std::move(row));
  }
  json out;
  out["edges"] = std::move(edges);
  return out;
}

template <class Ops>
SubAction<Ops> parse_subaction(const BlockGraph& g, const json& j) {
  if (!j.is_object() || !j.contains("beta") || !j.contains("u"))
    throw Error(ErrorCode::ParseError, "sub-action needs \"beta\" and \"u\"");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "beta" && it.key() != "u" && it.key() != "level")
      throw Error(ErrorCode::ParseError,
                  "unknown sub-action key \"" + it.key() + "\"");
  SubAction<Ops> sa;
  sa.beta = Ops::parse(j.at("beta").get<std::string>());
  sa.u.assign(g.vertex_count(), Ops::zero());
  std::vector<char> seen(g.vertex_count(), 0);
  for (auto it = j.at("u").begin(); it != j.at("u").end(); ++it) {
    Word w = parse_word(it.key());
    int v = g.vertex_index(w);
    if (v < 0)
      throw Error(ErrorCode::ParseError,
                  "sub-action names unknown vertex " + it.key());
    sa.u[v] = Ops::parse(it.value().get<std::string>());
    seen[v] = 1;
  }
  for (int v = 0; v < g.vertex_count(); ++v)
    if (!seen[v])
      throw Error(ErrorCode::ParseError,
                  "sub-action misses vertex " + word_str(g.vertices[v]));
  return sa;
}

inline int edge_index(const BlockGraph& g, int s, int t) {
  auto it = std::lower_bound(g.edges.begin(), g.edges.end(), std::make_pair(s, t));
  if (it == g.edges.end() || *it != std::make_pair(s, t)) return -1;
  return static_cast<int>(it - g.edges.begin());
}

}  // namespace pipeline_detail

}  // namespace ergopt

#endif  // ERGOPT_PIPELINE_HPP
