#include "ergopt/config.hpp"

#include <set>

#include "ergopt/rational.hpp"

namespace ergopt {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& where, const std::string& msg) {
  throw Error(ErrorCode::ParseError, where + ": " + msg);
}

void check_keys(const json& j, const std::set<std::string>& allowed,
                const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) bad(where, "unknown key \"" + it.key() + "\"");
  }
}

const json& require(const json& j, const std::string& key,
                    const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) bad(where, "missing required key \"" + key + "\"");
  return *it;
}

int get_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<int>();
}

std::string get_string(const json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a string");
  return j.get<std::string>();
}

// Rationals arrive as "p/q" / "p" strings or plain JSON integers.
std::string get_rat(const json& j, const std::string& where) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    Rat::parse(s);  // validate now, reject junk early
    return s;
  }
  if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
  bad(where, "expected a rational string or integer");
}

std::vector<int> get_int_list(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array of integers");
  std::vector<int> out;
  for (const auto& x : j) out.push_back(get_int(x, where));
  return out;
}

void parse_edges(const json& j, AnalysisConfig& cfg, const std::string& where) {
  if (j.is_string()) {
    if (j.get<std::string>() != "full") bad(where, "edge keyword must be \"full\"");
    cfg.edges_full = true;
    return;
  }
  if (j.is_array()) {
    for (const auto& e : j) {
      if (!e.is_array() || e.size() != 2) bad(where, "edge must be a pair");
      cfg.edge_list.emplace_back(get_int(e[0], where), get_int(e[1], where));
    }
    return;
  }
  if (j.is_object()) {
    check_keys(j, {"rows"}, where);
    for (const auto& r : require(j, "rows", where)) {
      if (!r.is_string()) bad(where, "row must be a 0/1 string");
      cfg.edge_rows.push_back(r.get<std::string>());
    }
    return;
  }
  bad(where, "edges must be \"full\", a pair list, or {\"rows\": [...]}");
}

void parse_potential(const json& j, AnalysisConfig& cfg) {
  check_keys(j, {"range", "weights"}, "model.potential");
  cfg.range = get_int(require(j, "range", "model.potential"), "range");
  if (cfg.range < 1) bad("model.potential", "range must be >= 1");
  const json& ws = require(j, "weights", "model.potential");
  if (!ws.is_array()) bad("model.potential.weights", "expected an array");
  for (const auto& entry : ws) {
    check_keys(entry, {"word", "value"}, "weight entry");
    Word w;
    for (const auto& s : require(entry, "word", "weight entry"))
      w.push_back(get_int(s, "weight word"));
    if (static_cast<int>(w.size()) != cfg.range)
      bad("weight entry", "word " + word_str(w) + " does not have length range");
    cfg.weight_entries.emplace_back(
        std::move(w), get_rat(require(entry, "value", "weight entry"), "value"));
  }
}

void parse_tail(const json& j, AnalysisConfig& cfg) {
  cfg.tail.present = true;
  std::string type = get_string(require(j, "type", "model.tail"), "model.tail.type");
  if (type == "affine") {
    check_keys(j, {"type", "slope", "offset"}, "model.tail");
    cfg.tail.affine = true;
    cfg.tail.slope = get_rat(require(j, "slope", "model.tail"), "slope");
    cfg.tail.offset = get_rat(require(j, "offset", "model.tail"), "offset");
  } else if (type == "table") {
    check_keys(j, {"type", "entries"}, "model.tail");
    cfg.tail.affine = false;
    const json& entries = require(j, "entries", "model.tail");
    if (!entries.is_array() || entries.empty())
      bad("model.tail.entries", "expected a nonempty array");
    int prev = -1;
    for (const auto& e : entries) {
      if (!e.is_array() || e.size() != 2)
        bad("model.tail.entries", "entry must be [index, value]");
      int idx = get_int(e[0], "tail entry index");
      if (idx <= prev) bad("model.tail.entries", "indices must increase");
      prev = idx;
      cfg.tail.entries.emplace_back(idx, get_rat(e[1], "tail entry value"));
    }
  } else {
    bad("model.tail.type", "must be \"affine\" or \"table\"");
  }
}

void parse_model(const json& j, AnalysisConfig& cfg) {
  std::string type = get_string(require(j, "type", "model"), "model.type");
  if (type == "finite") {
    cfg.countable = false;
    check_keys(j, {"type", "graph", "potential"}, "model");
    const json& g = require(j, "graph", "model");
    check_keys(g, {"vertices", "edges"}, "model.graph");
    cfg.vertices = get_int_list(require(g, "vertices", "model.graph"), "vertices");
    parse_edges(require(g, "edges", "model.graph"), cfg, "model.graph.edges");
  } else if (type == "countable") {
    cfg.countable = true;
    check_keys(j,
               {"type", "graph", "potential", "I_max", "tail", "coercive",
                "declared_sup", "declared_var_total", "I_hat_override"},
               "model");
    cfg.explicit_bound = get_int(require(j, "I_max", "model"), "I_max");
    if (cfg.explicit_bound < 0) bad("model.I_max", "must be >= 0");
    for (int s = 0; s <= cfg.explicit_bound; ++s) cfg.vertices.push_back(s);
    const json& g = require(j, "graph", "model");
    if (g.is_object()) check_keys(g, {"edges"}, "model.graph");
    parse_edges(g.is_object() ? require(g, "edges", "model.graph") : g, cfg,
                "model.graph.edges");
    parse_tail(require(j, "tail", "model"), cfg);
    const json& coercive = require(j, "coercive", "model");
    if (!coercive.is_boolean()) bad("model.coercive", "expected a boolean");
    cfg.coercive = coercive.get<bool>();
    cfg.declared_sup = get_rat(require(j, "declared_sup", "model"), "declared_sup");
    cfg.declared_var_total =
        get_rat(require(j, "declared_var_total", "model"), "declared_var_total");
    if (auto it = j.find("I_hat_override"); it != j.end() && !it->is_null())
      cfg.i_hat_override = get_int(*it, "I_hat_override");
  } else {
    bad("model.type", "must be \"finite\" or \"countable\"");
  }
  parse_potential(require(j, "potential", "model"), cfg);
}

}  // namespace

AnalysisConfig parse_config(const json& j) {
  AnalysisConfig cfg;
  check_keys(j,
             {"schema", "mode", "model", "F", "k0_cap", "plateau_window", "eta",
              "horizon", "margin", "hoelder"},
             "config");
  if (get_int(require(j, "schema", "config"), "schema") != 1)
    bad("schema", "unsupported schema version (expected 1)");
  if (auto it = j.find("mode"); it != j.end()) {
    if (!it->is_string()) bad("mode", "expected a string");
    cfg.mode = it->get<std::string>();
    if (cfg.mode != "exact" && cfg.mode != "float")
      bad("mode", "must be \"exact\" or \"float\"");
  }
  parse_model(require(j, "model", "config"), cfg);
  if (auto it = j.find("F"); it != j.end())
    cfg.connecting_set = get_int_list(*it, "F");
  if (auto it = j.find("k0_cap"); it != j.end()) {
    cfg.k0_cap = get_int(*it, "k0_cap");
    if (cfg.k0_cap < 0) bad("k0_cap", "must be >= 0");
  }
  if (auto it = j.find("plateau_window"); it != j.end()) {
    cfg.plateau_window = get_int(*it, "plateau_window");
    if (cfg.plateau_window < 0) bad("plateau_window", "must be >= 0");
  }
  if (auto it = j.find("eta"); it != j.end()) cfg.eta = get_rat(*it, "eta");
  if (auto it = j.find("horizon"); it != j.end()) {
    cfg.horizon = get_int(*it, "horizon");
    if (cfg.horizon < 1) bad("horizon", "must be >= 1");
  }
  if (auto it = j.find("margin"); it != j.end())
    cfg.float_margin = get_rat(*it, "margin");
  if (auto it = j.find("hoelder"); it != j.end()) {
    check_keys(*it, {"H", "lambda"}, "hoelder");
    cfg.hoelder.present = true;
    cfg.hoelder.h = get_rat(require(*it, "H", "hoelder"), "H");
    cfg.hoelder.lambda = get_rat(require(*it, "lambda", "hoelder"), "lambda");
  }
  if (cfg.countable && !cfg.connecting_set.has_value())
    bad("F", "countable models require an explicit connecting set");
  return cfg;
}

MarkovGraph build_graph(const AnalysisConfig& cfg) {
  std::vector<std::pair<int, int>> edges;
  if (cfg.edges_full) {
    for (int i : cfg.vertices)
      for (int j : cfg.vertices) edges.emplace_back(i, j);
  } else if (!cfg.edge_rows.empty()) {
    if (cfg.edge_rows.size() != cfg.vertices.size())
      throw Error(ErrorCode::ParseError, "row count does not match vertex count");
    for (std::size_t a = 0; a < cfg.edge_rows.size(); ++a) {
      const std::string& row = cfg.edge_rows[a];
      if (row.size() != cfg.vertices.size())
        throw Error(ErrorCode::ParseError, "row length does not match vertex count");
      for (std::size_t b = 0; b < row.size(); ++b) {
        if (row[b] == '1')
          edges.emplace_back(cfg.vertices[a], cfg.vertices[b]);
        else if (row[b] != '0')
          throw Error(ErrorCode::ParseError, "rows must contain only 0 and 1");
      }
    }
  } else {
    edges = cfg.edge_list;
  }
  return MarkovGraph::make(cfg.vertices, std::move(edges));
}

}  // namespace ergopt
