#ifndef ERGOPT_CONFIG_HPP
#define ERGOPT_CONFIG_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ergopt/graph.hpp"

namespace ergopt {

// Parsed analysis configuration. Rationals stay as strings here and are
// interpreted by the numeric policy of the selected mode.
struct AnalysisConfig {
  std::string mode = "exact";  // "exact" | "float"

  bool countable = false;

  // Graph data. For finite models the vertex list is explicit; countable
  // models use 0..explicit_bound.
  std::vector<int> vertices;
  bool edges_full = false;
  std::vector<std::pair<int, int>> edge_list;
  std::vector<std::string> edge_rows;

  int range = 1;
  std::vector<std::pair<Word, std::string>> weight_entries;

  // Countable-model fields.
  int explicit_bound = 0;  // I_max
  struct TailSpec {
    bool present = false;
    bool affine = true;
    std::string slope, offset;
    std::vector<std::pair<int, std::string>> entries;
  } tail;
  bool coercive = false;
  std::string declared_sup;
  std::string declared_var_total;
  std::optional<int> i_hat_override;

  // Analysis parameters.
  std::optional<std::vector<int>> connecting_set;  // F
  int k0_cap = 32;
  int plateau_window = 3;
  std::string eta = "1/2";
  int horizon = 12;
  std::string float_margin = "1/1000000000";
  struct HoelderSpec {
    bool present = false;
    std::string h, lambda;
  } hoelder;
};

// Strict parse: schema must equal 1, unknown keys are rejected, rationals
// are "p/q"/"p" strings or plain JSON integers.
AnalysisConfig parse_config(const nlohmann::json& j);

MarkovGraph build_graph(const AnalysisConfig& cfg);

}  // namespace ergopt

#endif  // ERGOPT_CONFIG_HPP
