#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "ergopt/pipeline.hpp"

using namespace ergopt;

namespace {

std::string data_path(const std::string& name) {
  return std::string(TEST_DATA_DIR) + "/" + name;
}

json analyze(const std::string& cfg) {
  RunResult r = run_analyze(data_path(cfg), std::nullopt, std::nullopt,
                            json::object());
  REQUIRE(r.exit_code == kExitOk);
  return r.output;
}

}  // namespace

TEST_CASE("analyze E2: the full finite pipeline") {
  json rep = analyze("e2.json");
  CHECK(rep.at("verdict") == "OK");
  CHECK(rep.at("beta") == "5");
  CHECK(rep.at("subaction").at("u") ==
        json({{"0", "-5"}, {"1", "-8"}, {"2", "0"}}));
  CHECK(rep.at("minimal_subaction").at("u") ==
        json({{"0", "0"}, {"1", "0"}, {"2", "0"}}));
  CHECK(rep.at("osc").at("value") == "8");
  CHECK(rep.at("osc").at("bound") == "15");
  CHECK(rep.at("osc").at("holds") == true);
  CHECK(rep.at("primitivity").at("K0") == 2);
  CHECK(rep.at("critical").at("critical_edges") ==
        json::array({json::array({"2", "2"})}));
  CHECK(rep.at("truncation").at("I_hat") == 2);
  CHECK(rep.at("certificate").at("verdict") == "VALID");
  REQUIRE(rep.at("critical").at("classes").size() == 1);
  CHECK(rep.at("critical").at("classes")[0].at("integral") == "5");
  for (const auto& c : rep.at("checks")) CHECK(c.at("pass") == true);

  // finite models get the degenerate truncation section
  CHECK(rep.at("truncation").at("beta_by_I").size() == 1);
  CHECK(rep.at("truncation").at("margin").is_null());
  CHECK(rep.at("truncation").at("support_threshold").is_null());

  // the declared Hoelder model enters the audit
  bool saw_hoelder = false;
  for (const auto& c : rep.at("checks"))
    if (c.at("name") == "minimal_subaction_hoelder_bound") saw_hoelder = true;
  CHECK(saw_hoelder);
}

TEST_CASE("analyze E3: the countable pipeline") {
  json rep = analyze("e3.json");
  CHECK(rep.at("verdict") == "OK");
  CHECK(rep.at("beta") == "0");
  CHECK(rep.at("truncation").at("I_hat") == 1);
  CHECK(rep.at("truncation").at("margin") == "2");
  CHECK(rep.at("truncation").at("support_threshold").at("I") == 0);
  CHECK(rep.at("primitivity").at("K0") == 0);
  CHECK(rep.at("subaction").at("level") == 1);
  // beta_A(I) = 0 for I = 0..4
  const json& betas = rep.at("truncation").at("beta_by_I");
  REQUIRE(betas.size() == 5);
  for (const auto& row : betas) CHECK(row.at("beta") == "0");
  // Omega is the fixed point 0^inf
  CHECK(rep.at("critical").at("classes")[0].at("vertices") ==
        json::array({"0"}));
}

TEST_CASE("analyze the star family: a K0 = 1 countable model") {
  json rep = analyze("star.json");
  CHECK(rep.at("verdict") == "OK");
  CHECK(rep.at("beta") == "0");
  CHECK(rep.at("primitivity").at("K0") == 1);
  CHECK(rep.at("truncation").at("I_hat") == 1);
  CHECK(rep.at("critical").at("classes")[0].at("vertices") ==
        json::array({"0"}));
  // osc(u) = 0 meets the K0 = 1 oscillation bound with equality
  CHECK(rep.at("osc").at("value") == "0");
  CHECK(rep.at("osc").at("bound") == "0");
}

TEST_CASE("degenerate models are validation failures, not crashes") {
  auto write_cfg = [](const json& j) {
    std::string tmp = "/tmp/ergopt_test_degenerate.json";
    std::ofstream out(tmp);
    out << j.dump(2) << "\n";
    return tmp;
  };
  json base = load_json_file(data_path("e2.json"));

  SUBCASE("finite model that trims to nothing") {
    base["model"]["graph"]["edges"] = json::array({json::array({0, 1})});
    base["model"]["potential"]["weights"] =
        json::array({json{{"word", json::array({0, 1})}, {"value", "1"}}});
    base.erase("hoelder");
    RunResult r = run_analyze(write_cfg(base), std::nullopt, std::nullopt,
                              json::object());
    CHECK(r.exit_code == kExitBadInput);
  }
  SUBCASE("disconnected finite model fails the primitivity search") {
    base["model"]["graph"]["vertices"] = json::array({0, 1});
    base["model"]["graph"]["edges"] =
        json::array({json::array({0, 0}), json::array({1, 1})});
    base["model"]["potential"]["weights"] =
        json::array({json{{"word", json::array({0, 0})}, {"value", "7"}},
                     json{{"word", json::array({1, 1})}, {"value", "7"}}});
    base.erase("hoelder");
    base.erase("F");  // default to all essential symbols
    RunResult r = run_analyze(write_cfg(base), std::nullopt, std::nullopt,
                              json::object());
    CHECK(r.exit_code == kExitBadInput);
    CHECK(r.output.at("error").at("code") == "NotFinitelyPrimitive");
  }
  SUBCASE("declared Hoelder model below the computed variations") {
    base["hoelder"] = {{"H", "1"}, {"lambda", "1/2"}};
    RunResult r = run_analyze(write_cfg(base), std::nullopt, std::nullopt,
                              json::object());
    CHECK(r.exit_code == kExitBadInput);
    CHECK(r.output.at("error").at("code") == "ValidationFailed");
  }
  std::remove("/tmp/ergopt_test_degenerate.json");
}

TEST_CASE("analyze with a user-supplied I_hat (generalized theorem)") {
  // Non-monotone head, sup attained at symbol 3 just below the supplied
  // I_hat; only a table tail beyond the explicit region.
  json rep = analyze("generalized.json");
  CHECK(rep.at("verdict") == "OK");
  CHECK(rep.at("beta") == "5");
  CHECK(rep.at("truncation").at("I_hat") == 3);
  CHECK(rep.at("critical").at("classes")[0].at("vertices") ==
        json::array({"3"}));
  const json& betas = rep.at("truncation").at("beta_by_I");
  REQUIRE(betas.size() == 6);  // I = 1..6
  CHECK(betas[0].at("beta") == "0");
  CHECK(betas[1].at("beta") == "0");
  for (int i = 2; i < 6; ++i) CHECK(betas[i].at("beta") == "5");

  // A supplied I_hat that fails the defining inequality is rejected.
  json bad = load_json_file(data_path("generalized.json"));
  bad["model"]["I_hat_override"] = 2;  // sup A|[3] = 5 >= threshold 0
  std::string tmp = "/tmp/ergopt_test_override.json";
  {
    std::ofstream out(tmp);
    out << bad.dump(2) << "\n";
  }
  RunResult r = run_analyze(tmp, std::nullopt, std::nullopt, json::object());
  CHECK(r.exit_code == kExitBadInput);
  CHECK(r.output.at("error").at("code") == "ValidationFailed");

  bad["model"]["I_hat_override"] = 1;  // must exceed I_F = 1
  {
    std::ofstream out(tmp);
    out << bad.dump(2) << "\n";
  }
  RunResult r2 = run_analyze(tmp, std::nullopt, std::nullopt, json::object());
  CHECK(r2.exit_code == kExitBadInput);
  std::remove(tmp.c_str());
}

TEST_CASE("analyze is deterministic in-process") {
  json a = analyze("e2.json");
  json b = analyze("e2.json");
  CHECK(a.dump(2) == b.dump(2));
  json c = analyze("e3.json");
  json d = analyze("e3.json");
  CHECK(c.dump(2) == d.dump(2));
}

TEST_CASE("analyze in float mode stays within tolerance") {
  json overrides;
  overrides["mode"] = "float";
  RunResult r = run_analyze(data_path("e2.json"), std::nullopt, std::nullopt,
                            overrides);
  CHECK(r.exit_code == kExitOk);
  CHECK(r.output.at("mode") == "float");
  CHECK(std::abs(std::stod(r.output.at("beta").get<std::string>()) - 5.0) <
        1e-9);

  // countable pipeline in float mode: the I_hat inequality applies the
  // strictness margin and still lands on the exact answer here
  RunResult c = run_analyze(data_path("e3.json"), std::nullopt, std::nullopt,
                            overrides);
  CHECK(c.exit_code == kExitOk);
  CHECK(c.output.at("truncation").at("I_hat") == 1);
  CHECK(std::abs(std::stod(c.output.at("beta").get<std::string>())) < 1e-9);
}

TEST_CASE("verify accepts and rejects certificates") {
  RunResult good =
      run_verify(data_path("e2.json"), data_path("e2_subaction_valid.json"));
  CHECK(good.exit_code == kExitOk);
  CHECK(good.output.at("verdict") == "VALID");
  CHECK(good.output.at("osc") == "8");

  RunResult bad = run_verify(data_path("e2.json"),
                             data_path("e2_subaction_zero_beta4.json"));
  CHECK(bad.exit_code == kExitInvalid);
  CHECK(bad.output.at("verdict") == "INVALID");
  CHECK(bad.output.at("max_defect") == "1");

  // u == 0 with beta = 5: defects <= 0 and the loop at 2 is tight
  RunResult ok = run_verify(data_path("e2.json"),
                            data_path("e2_subaction_zero_beta5.json"));
  CHECK(ok.exit_code == kExitOk);
  CHECK(ok.output.at("verdict") == "VALID");
}

TEST_CASE("verify round-trips the emitted sub-action") {
  json rep = analyze("e3.json");
  std::string tmp = "/tmp/ergopt_test_subaction.json";
  {
    std::ofstream out(tmp);
    out << rep.at("subaction").dump() << "\n";
  }
  RunResult r = run_verify(data_path("e3.json"), tmp);
  CHECK(r.exit_code == kExitOk);
  CHECK(r.output.at("verdict") == "VALID");
  std::remove(tmp.c_str());
}

TEST_CASE("parse failures exit with code 2") {
  RunResult bad = run_analyze(data_path("malformed.json"), std::nullopt,
                              std::nullopt, json::object());
  CHECK(bad.exit_code == kExitBadInput);
  CHECK(bad.output.contains("error"));
  // the error message carries the parse location
  CHECK(bad.output.at("error").at("message").get<std::string>().find("parse") !=
        std::string::npos);

  RunResult unknown = run_analyze(data_path("unknown_key.json"), std::nullopt,
                                  std::nullopt, json::object());
  CHECK(unknown.exit_code == kExitBadInput);
  CHECK(unknown.output.at("error").at("message").get<std::string>().find(
            "surprise") != std::string::npos);

  RunResult missing = run_analyze("/nonexistent/file.json", std::nullopt,
                                  std::nullopt, json::object());
  CHECK(missing.exit_code == kExitBadInput);
}

TEST_CASE("oracle subcommand compares fast and brute") {
  RunResult r = run_oracle(data_path("e2.json"), 5);
  CHECK(r.exit_code == kExitOk);
  CHECK(r.output.at("all_equal") == true);
  REQUIRE(r.output.at("random").size() == 5);
}

TEST_CASE("oracle subcommand refuses instances beyond the guards") {
  // 14 explicit symbols exceed the 12-vertex brute limit
  json cfg;
  cfg["schema"] = 1;
  json weights = json::array();
  for (int s = 0; s <= 13; ++s)
    weights.push_back(json{{"word", json::array({s})}, {"value", std::to_string(-s)}});
  cfg["model"] = {{"type", "countable"},
                  {"I_max", 13},
                  {"graph", {{"edges", "full"}}},
                  {"potential", {{"range", 1}, {"weights", weights}}},
                  {"tail", {{"type", "affine"}, {"slope", "-1"}, {"offset", "0"}}},
                  {"coercive", true},
                  {"declared_sup", "0"},
                  {"declared_var_total", "0"}};
  cfg["F"] = json::array({0});
  std::string tmp = "/tmp/ergopt_test_large.json";
  {
    std::ofstream out(tmp);
    out << cfg.dump(2) << "\n";
  }
  RunResult r = run_oracle(tmp, 0);
  std::remove(tmp.c_str());
  CHECK(r.exit_code == kExitTooLarge);
}

TEST_CASE("graphs parse from rows and the full keyword") {
  json j;
  j["schema"] = 1;
  j["model"] = {{"type", "finite"},
                {"graph", {{"vertices", json::array({0, 1, 2})},
                           {"edges", {{"rows", json::array({"010", "101", "101"})}}}}},
                {"potential",
                 {{"range", 2},
                  {"weights", json::array({
                       json{{"word", json::array({0, 1})}, {"value", "2"}},
                       json{{"word", json::array({1, 0})}, {"value", "4"}},
                       json{{"word", json::array({1, 2})}, {"value", "0"}},
                       json{{"word", json::array({2, 0})}, {"value", "0"}},
                       json{{"word", json::array({2, 2})}, {"value", "5"}}})}}}};
  AnalysisConfig cfg = parse_config(j);
  MarkovGraph g = build_graph(cfg);
  CHECK(g.edges == std::vector<std::pair<int, int>>{
                       {0, 1}, {1, 0}, {1, 2}, {2, 0}, {2, 2}});

  json f;
  f["schema"] = 1;
  f["model"]["type"] = "finite";
  f["model"]["graph"]["vertices"] = json::array({0, 1});
  f["model"]["graph"]["edges"] = "full";
  f["model"]["potential"]["range"] = 1;
  f["model"]["potential"]["weights"] =
      json::array({json{{"word", json::array({0})}, {"value", "0"}},
                   json{{"word", json::array({1})}, {"value", "1"}}});
  MarkovGraph full = build_graph(parse_config(f));
  CHECK(full.edges.size() == 4);

  // row strings must match the vertex count
  j["model"]["graph"]["edges"]["rows"] = json::array({"01", "10"});
  CHECK_THROWS_AS(build_graph(parse_config(j)), Error);
}

TEST_CASE("csv side tables") {
  std::string dir = "/tmp/ergopt_test_csv";
  RunResult r = run_analyze(data_path("e3.json"), std::nullopt, dir,
                            json::object());
  REQUIRE(r.exit_code == kExitOk);
  std::ifstream betas(dir + "/beta_by_I.csv");
  std::string line;
  std::getline(betas, line);
  CHECK(line == "I,beta");
  std::getline(betas, line);
  CHECK(line == "0,0");
  std::ifstream fh(dir + "/finite_horizon.csv");
  std::getline(fh, line);
  CHECK(line == "k,bound");
}

TEST_CASE("config hash is stable and embedded") {
  json a = analyze("e2.json");
  std::string h = a.at("config_hash").get<std::string>();
  CHECK(h.rfind("fnv1a64:", 0) == 0);
  CHECK(h.size() == 8 + 16);
  CHECK(fnv1a_hex(read_file(data_path("e2.json"))) == h);
}
