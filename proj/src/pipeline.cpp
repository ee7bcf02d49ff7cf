#include "ergopt/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ergopt/serialref.hpp"

namespace ergopt {

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                static_cast<unsigned long long>(h));
  return std::string(buf);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::ParseError, "cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json load_json_file(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

namespace {

using namespace pipeline_detail;

struct Auditor {
  std::vector<CheckResult> checks;

  void check(const std::string& name, bool pass, const std::string& detail = "") {
    checks.push_back(CheckResult{name, pass, pass ? "" : detail});
  }
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

json checks_json(const std::vector<CheckResult>& checks) {
  json arr = json::array();
  for (const auto& c : checks) {
    json row;
    row["name"] = c.name;
    row["pass"] = c.pass;
    row["detail"] = c.detail;
    arr.push_back(std::move(row));
  }
  return arr;
}

// Everything reported lives on one "home" compact level: the model's own
// graph for finite models, Sigma_I_hat for countable ones.
template <class Ops>
struct HomeLevel {
  MarkovGraph graph;                 // trimmed
  Potential<Ops> potential;          // restricted to the home graph
  WeightedBlockGraph<Ops> wg;
  PrimitivityCertificate cert;
  VariationSummary<Ops> summary;     // computed on the home potential
};

template <class Ops>
struct CountableSide {
  CountableModel<Ops> model;
  MarkovGraph explicit_trimmed;
  VariationSummary<Ops> global;      // declared sup/var, computed inf on F
  int i_hat = 0;
  typename Ops::Num slack{};
  std::vector<std::pair<int, typename Ops::Num>> beta_by_level;
  int support_threshold = 0;
};

template <class Ops>
struct Instance {
  HomeLevel<Ops> home;
  std::optional<CountableSide<Ops>> countable;
  typename Ops::Num eta{};
  typename Ops::Num margin{};
};

// Deterministic rebuild of the analysis instance from the config; used by
// both the analysis pass and the audit pass.
template <class Ops>
Instance<Ops> build_instance(const AnalysisConfig& cfg) {
  Instance<Ops> inst;
  inst.eta = Ops::parse(cfg.eta);
  inst.margin = Ops::parse(cfg.float_margin);
  Potential<Ops> p = build_potential<Ops>(cfg);
  if (cfg.hoelder.present) {
    HoelderModel<Ops> hm{Ops::parse(cfg.hoelder.h), Ops::parse(cfg.hoelder.lambda)};
    hoelder_var_bound(hm);  // rejects lambda outside (0,1)
    if (!hoelder_dominates(hm, p))
      throw Error(ErrorCode::ValidationFailed,
                  "declared (H, lambda) does not dominate the computed Var_k");
  }

  if (!cfg.countable) {
    MarkovGraph g = trim_essential(build_graph(cfg));
    if (g.vertices.empty())
      throw Error(ErrorCode::ValidationFailed,
                  "finite model has no essential symbols");
    inst.home.graph = g;
    inst.home.potential = p;
    inst.home.cert = compute_primitivity(g, connecting_set_for<Ops>(cfg, g),
                                         cfg.k0_cap);
    inst.home.summary = summarize(p, inst.home.cert);
    inst.home.wg = make_weighted(g, p);
    return inst;
  }

  CountableSide<Ops> side;
  side.model = build_countable<Ops>(cfg);
  ValidationReport vrep = validate_countable(side.model);
  if (!vrep.ok) {
    std::string msg;
    for (const auto& f : vrep.failures) {
      if (!msg.empty()) msg += "; ";
      msg += f;
    }
    throw Error(ErrorCode::ValidationFailed, msg);
  }
  side.explicit_trimmed = truncate(side.model, side.model.explicit_bound);
  PrimitivityCertificate cert = compute_primitivity(
      side.explicit_trimmed,
      SymbolSet::from_unsorted(*cfg.connecting_set), cfg.k0_cap);
  side.global = global_summary(side.model, cert);

  if (cfg.i_hat_override.has_value()) {
    side.i_hat = *cfg.i_hat_override;
    if (side.i_hat <= cert.max_connecting_symbol())
      throw Error(ErrorCode::ValidationFailed, "supplied I_hat must exceed I_F");
    typename Ops::Num slack =
        i_hat_inequality_slack(side.model, side.global, cert, side.i_hat);
    if (!Ops::strictly_below(Ops::zero(), slack, inst.margin))
      throw Error(ErrorCode::ValidationFailed,
                  "supplied I_hat fails the defining inequality (slack " +
                      Ops::str(slack) + ")");
  } else {
    side.i_hat = compute_I_hat(side.model, side.global, cert, inst.margin);
  }
  side.slack = i_hat_inequality_slack(side.model, side.global, cert, side.i_hat);

  PlateauResult<Ops> plat =
      plateau_scan(side.model, cert, side.i_hat, cfg.plateau_window);
  side.beta_by_level = plat.beta_by_level;

  // Support bound on the full explicit level.
  WeightedBlockGraph<Ops> wg_exp = make_weighted(
      side.explicit_trimmed,
      restrict_potential(side.model.potential, side.explicit_trimmed));
  SubAction<Ops> u_exp = calibrated_subaction(wg_exp);
  side.support_threshold =
      support_bound_check(side.model, wg_exp, u_exp, inst.eta);

  inst.home.graph = truncate(side.model, side.i_hat);
  inst.home.potential =
      restrict_potential(side.model.potential, inst.home.graph);
  inst.home.cert = cert;
  inst.home.summary = summarize(inst.home.potential, cert);
  inst.home.wg = plat.hat_graph;
  inst.countable = std::move(side);
  return inst;
}

template <class Ops>
json analyze_impl(const AnalysisConfig& cfg, const std::string& cfg_hash) {
  using Num = typename Ops::Num;
  Instance<Ops> inst = build_instance<Ops>(cfg);
  const HomeLevel<Ops>& home = inst.home;
  const BlockGraph& bg = home.wg.graph;

  SubAction<Ops> u = calibrated_subaction(home.wg);
  Num beta = u.beta;
  SubAction<Ops> u_min = minimal_subaction(home.wg, beta);
  CriticalStructure<Ops> cs = critical_structure(home.wg, u);
  CertificateReport<Ops> cert_rep = check_certificate(home.wg, u);
  std::vector<MaximizingClass<Ops>> classes = maximizing_set(home.wg, cs);

  json rep;
  rep["schema"] = 1;
  rep["mode"] = cfg.mode;
  rep["config_hash"] = cfg_hash;
  rep["beta"] = Ops::str(beta);

  {
    json model;
    model["type"] = cfg.countable ? "countable" : "finite";
    json symbols = json::array();
    for (int s : home.graph.vertices.symbols) symbols.push_back(s);
    model["essential_symbols"] = std::move(symbols);
    model["edge_count"] = static_cast<int>(home.graph.edges.size());
    model["potential_range"] = cfg.range;
    if (cfg.countable) {
      model["I_max"] = cfg.explicit_bound;
      model["coercive"] = cfg.coercive;
      model["declared_sup"] = Ops::str(inst.countable->model.declared_sup);
      model["declared_var_total"] =
          Ops::str(inst.countable->model.declared_var_total);
    }
    rep["model"] = std::move(model);
  }

  {
    json prim;
    json f = json::array();
    for (int s : home.cert.connecting_set.symbols) f.push_back(s);
    prim["F"] = std::move(f);
    prim["K0"] = home.cert.k0;
    prim["I_F"] = home.cert.max_connecting_symbol();
    rep["primitivity"] = std::move(prim);
  }

  {
    json sum;
    json vk = json::array();
    for (const auto& v : home.summary.var_k) vk.push_back(Ops::str(v));
    sum["var_k"] = std::move(vk);
    sum["var_total"] = Ops::str(home.summary.var_total);
    sum["sup_A"] = Ops::str(home.summary.sup);
    sum["inf_A_on_F"] = Ops::str(home.summary.inf_on_connecting);
    // Var_0 = sup - inf over the whole table; diagnostic only, nothing
    // downstream consumes it.
    Num inf_all = home.potential.weights.begin()->second;
    for (const auto& [w, v] : home.potential.weights)
      if (Ops::lt(v, inf_all)) inf_all = v;
    sum["var_0_diagnostic"] = Ops::str(home.summary.sup - inf_all);
    rep["summary"] = std::move(sum);
  }

  std::optional<int> level;
  if (cfg.countable) level = inst.countable->i_hat;
  rep["subaction"] = subaction_json<Ops>(bg, u, level);
  rep["minimal_subaction"] = subaction_json<Ops>(bg, u_min, level);

  {
    Num k0 = Ops::from_int(home.cert.k0);
    Num bound = home.summary.var_total +
                k0 * (home.summary.sup - home.summary.inf_on_connecting);
    json osc;
    osc["value"] = Ops::str(cert_rep.osc);
    osc["bound"] = Ops::str(bound);
    osc["holds"] = Ops::le(cert_rep.osc, bound);
    rep["osc"] = std::move(osc);
  }

  {
    json crit;
    json tight = json::array(), critical = json::array();
    for (int e : cs.tight_edges) tight.push_back(edge_json(bg, e));
    for (int e : cs.critical_edges) critical.push_back(edge_json(bg, e));
    crit["tight_edges"] = std::move(tight);
    crit["critical_edges"] = std::move(critical);
    json cls_arr = json::array();
    for (const auto& mc : classes) {
      json cls;
      json vs = json::array();
      for (int v : mc.members.vertices) vs.push_back(word_str(bg.vertices[v]));
      cls["vertices"] = std::move(vs);
      json es = json::array();
      for (int e : mc.members.edges) es.push_back(edge_json(bg, e));
      cls["edges"] = std::move(es);
      json orbit = json::array();
      for (int e : mc.orbit.cycle) orbit.push_back(edge_json(bg, e));
      cls["orbit"] = std::move(orbit);
      cls["measure"] = measure_json<Ops>(bg, mc.measure);
      cls["integral"] = Ops::str(mc.integral);
      cls_arr.push_back(std::move(cls));
    }
    crit["classes"] = std::move(cls_arr);
    rep["critical"] = std::move(crit);
  }

  {
    json cert_j;
    cert_j["max_defect"] = Ops::str(cert_rep.max_defect);
    cert_j["all_defects_nonpositive"] = cert_rep.all_nonpositive;
    cert_j["tight_cycle_exists"] = cert_rep.tight_cycle_exists;
    cert_j["osc_u"] = Ops::str(cert_rep.osc);
    cert_j["verdict"] = cert_rep.valid ? "VALID" : "INVALID";
    rep["certificate"] = std::move(cert_j);
  }

  {
    json fh = json::array();
    for (int k = 1; k <= cfg.horizon; ++k) {
      json row;
      row["k"] = k;
      row["bound"] = Ops::str(finite_horizon_bound(home.wg, k));
      fh.push_back(std::move(row));
    }
    rep["finite_horizon"] = std::move(fh);
  }

  {
    json tr;
    tr["I_F"] = home.cert.max_connecting_symbol();
    if (cfg.countable) {
      const CountableSide<Ops>& side = *inst.countable;
      tr["I_hat"] = side.i_hat;
      tr["window"] = cfg.plateau_window;
      tr["margin"] = Ops::str(side.slack);
      json betas = json::array();
      for (const auto& [level, b] : side.beta_by_level) {
        json row;
        row["I"] = level;
        row["beta"] = Ops::str(b);
        betas.push_back(std::move(row));
      }
      tr["beta_by_I"] = std::move(betas);
      tr["plateau_ok"] = true;
      json sup;
      sup["I"] = side.support_threshold;
      sup["eta"] = Ops::str(inst.eta);
      tr["support_threshold"] = std::move(sup);
    } else {
      // Degenerate section: the whole alphabet is the truncation.
      tr["I_hat"] = home.graph.vertices.max_symbol();
      tr["window"] = 0;
      tr["margin"] = nullptr;
      json betas = json::array();
      json row;
      row["I"] = home.graph.vertices.max_symbol();
      row["beta"] = Ops::str(beta);
      betas.push_back(std::move(row));
      tr["beta_by_I"] = std::move(betas);
      tr["plateau_ok"] = true;
      tr["support_threshold"] = nullptr;
    }
    rep["truncation"] = std::move(tr);
  }

  return rep;
}

// Emission-time audit: every reported inequality is re-checked from the
// report's own serialized strings against a freshly rebuilt instance.
template <class Ops>
std::vector<CheckResult> audit_impl(const AnalysisConfig& cfg, const json& rep) {
  using Num = typename Ops::Num;
  Auditor a;
  Instance<Ops> inst = build_instance<Ops>(cfg);
  const HomeLevel<Ops>& home = inst.home;
  const BlockGraph& bg = home.wg.graph;
  const VariationSummary<Ops>& sum = home.summary;
  int k0 = home.cert.k0;
  Num k0n = Ops::from_int(k0);

  Num beta = Ops::parse(rep.at("beta").get<std::string>());
  SubAction<Ops> u = parse_subaction<Ops>(bg, rep.at("subaction"));
  SubAction<Ops> u_min = parse_subaction<Ops>(bg, rep.at("minimal_subaction"));

  a.check("beta_matches_max_cycle_mean", Ops::eq(max_cycle_mean(home.wg), beta),
          "reported beta differs from the recomputed maximum cycle mean");
  a.check("subaction_beta_matches", Ops::eq(u.beta, beta),
          "sub-action certifies a different beta");

  {
    bool ok = true;
    for (int e = 0; e < bg.edge_count() && ok; ++e)
      ok = Ops::le(edge_defect(home.wg, u, e), Ops::zero());
    a.check("subaction_defects_nonpositive", ok, "an edge defect is positive");
    bool cal = true;
    for (int v = 0; v < bg.vertex_count() && cal; ++v) {
      bool tight_in = false;
      for (int x = bg.in_begin[v]; x < bg.in_begin[v + 1] && !tight_in; ++x)
        tight_in = Ops::eq(edge_defect(home.wg, u, bg.in_edge[x]), Ops::zero());
      cal = tight_in;
    }
    a.check("subaction_calibrated", cal, "a vertex has no calibrating in-edge");
  }

  {
    CertificateReport<Ops> cr = check_certificate(home.wg, u);
    bool reported_valid = rep.at("certificate").at("verdict") == "VALID";
    a.check("certificate_verdict_matches", cr.valid == reported_valid,
            "re-checked certificate verdict differs");
    a.check("certificate_valid", cr.valid, "certificate did not validate");
  }

  {
    bool nonneg = true, defects = true;
    for (const auto& v : u_min.u)
      if (Ops::lt(v, Ops::zero())) nonneg = false;
    for (int e = 0; e < bg.edge_count() && defects; ++e)
      defects = Ops::le(edge_defect(home.wg, u_min, e), Ops::zero());
    a.check("minimal_subaction_nonnegative", nonneg, "u_A takes a negative value");
    a.check("minimal_subaction_defects_nonpositive", defects,
            "u_A has a positive defect");

    Num umin_of_u = u.u[0];
    for (const auto& v : u.u)
      if (Ops::lt(v, umin_of_u)) umin_of_u = v;
    bool minimal = true;
    for (int v = 0; v < bg.vertex_count() && minimal; ++v)
      minimal = Ops::le(u_min.u[v], u.u[v] - umin_of_u);
    a.check("minimal_below_shifted_calibrated", minimal,
            "u_A exceeds the shifted calibrated sub-action");

    Num bound1 = sum.var_total + k0n * (sum.sup - sum.inf_on_connecting);
    Num bound2 = k0n * (sum.sup - beta);
    Num ubound = Ops::lt(bound1, bound2) ? bound2 : bound1;
    bool bounded = true;
    for (const auto& v : u_min.u)
      if (!Ops::le(v, ubound)) bounded = false;
    a.check("minimal_subaction_upper_bound", bounded,
            "u_A exceeds max{Var+K0(sup-infF), K0(sup-beta)}");

    bool varbound = true;
    for (int k = 1; k < bg.order && varbound; ++k) {
      Num tail = Ops::zero();
      for (int j = k; j <= static_cast<int>(sum.var_k.size()); ++j)
        tail = tail + sum.var_k[j - 1];
      varbound = Ops::le(vertex_function_variation<Ops>(bg, u_min.u, k), tail);
    }
    a.check("minimal_subaction_variation_bound", varbound,
            "Var_k(u_A) exceeds the summable-variations tail");

    if (cfg.hoelder.present) {
      HoelderModel<Ops> hm{Ops::parse(cfg.hoelder.h), Ops::parse(cfg.hoelder.lambda)};
      bool dominates = hoelder_dominates(hm, home.potential);
      a.check("hoelder_model_dominates_variations", dominates,
              "declared (H, lambda) does not dominate the computed Var_k");
      if (dominates) {
        bool hb = true;
        for (int k = 1; k < bg.order && hb; ++k)
          hb = Ops::le(vertex_function_variation<Ops>(bg, u_min.u, k),
                       hoelder_tail_bound(hm, k));
        a.check("minimal_subaction_hoelder_bound", hb,
                "Var_k(u_A) exceeds H lambda^k/(1-lambda)");
      }
    }
  }

  {
    Num osc_u = oscillation<Ops>(u.u);
    Num bound = sum.var_total + k0n * (sum.sup - sum.inf_on_connecting);
    a.check("oscillation_lemma", Ops::le(osc_u, bound),
            "osc(u) exceeds Var(A) + K0(sup A - inf A|F)");
    a.check("beta_at_least_inf_on_F", Ops::le(sum.inf_on_connecting, beta),
            "beta is below inf A|F");
  }

  {
    bool dominates = true, matches = true, converges = true;
    for (const auto& row : rep.at("finite_horizon")) {
      int k = row.at("k").get<int>();
      Num bound = Ops::parse(row.at("bound").get<std::string>());
      if (!Ops::le(beta, bound)) dominates = false;
      if (!Ops::eq(finite_horizon_bound(home.wg, k), bound)) matches = false;
      if (k > k0) {
        Num varsum = Ops::zero();
        for (int j = 1; j <= k && j <= static_cast<int>(sum.var_k.size()); ++j)
          varsum = varsum + sum.var_k[j - 1];
        Num rhs = Ops::div_int(
            varsum + k0n * (sum.sup - sum.inf_on_connecting), k);
        if (!Ops::le(bound - beta, rhs)) converges = false;
      }
    }
    a.check("finite_horizon_dominates_beta", dominates,
            "a finite-horizon bound fell below beta");
    a.check("finite_horizon_matches_recomputation", matches,
            "a finite-horizon entry differs from recomputation");
    a.check("finite_horizon_convergence", converges,
            "a finite-horizon bound violates the convergence estimate");
  }

  {
    CriticalStructure<Ops> cs = critical_structure(home.wg, u);
    auto edges_to_json = [&](const std::vector<int>& es) {
      json arr = json::array();
      for (int e : es) arr.push_back(edge_json(bg, e));
      return arr;
    };
    a.check("tight_edges_match", edges_to_json(cs.tight_edges) ==
                                     rep.at("critical").at("tight_edges"),
            "tight edge set differs from recomputation");
    a.check("critical_edges_match", edges_to_json(cs.critical_edges) ==
                                        rep.at("critical").at("critical_edges"),
            "critical edge set differs from recomputation");

    bool measures_ok = true, integrals_ok = true, characterization_ok = true;
    for (const auto& cls : rep.at("critical").at("classes")) {
      InvariantMeasure<Ops> mu;
      for (const auto& row : cls.at("measure").at("edges")) {
        Word sw = parse_word(row.at("edge")[0].get<std::string>());
        Word tw = parse_word(row.at("edge")[1].get<std::string>());
        int s = bg.vertex_index(sw), t = bg.vertex_index(tw);
        int e = (s >= 0 && t >= 0) ? edge_index(bg, s, t) : -1;
        if (e < 0) {
          measures_ok = false;
          continue;
        }
        mu.edge_freq[e] = Ops::parse(row.at("freq").get<std::string>());
      }
      if (!measure_is_valid(mu, bg)) measures_ok = false;
      Num integral = integrate(mu, home.wg);
      if (!Ops::eq(integral,
                   Ops::parse(cls.at("integral").get<std::string>())) ||
          !Ops::eq(integral, beta))
        integrals_ok = false;
      try {
        if (!verify_maximizing(mu, home.wg, cs)) characterization_ok = false;
      } catch (const Error&) {
        characterization_ok = false;
      }
    }
    a.check("class_measures_valid", measures_ok,
            "a reported measure is not a balanced probability");
    a.check("class_measures_integrate_to_beta", integrals_ok,
            "a reported measure does not integrate to beta");
    a.check("maximizing_characterization", characterization_ok,
            "support characterization failed on a reported measure");
  }

  if (cfg.countable) {
    const CountableSide<Ops>& side = *inst.countable;
    const json& tr = rep.at("truncation");
    a.check("i_hat_matches", tr.at("I_hat").get<int>() == side.i_hat,
            "reported I_hat differs from recomputation");
    a.check("i_hat_inequality_strict",
            Ops::strictly_below(Ops::zero(), side.slack, inst.margin),
            "the defining inequality for I_hat has no positive slack");
    a.check("i_hat_margin_matches",
            Ops::eq(Ops::parse(tr.at("margin").get<std::string>()), side.slack),
            "reported margin differs from the recomputed slack");

    bool monotone = true, constant = true, recomputed = true;
    Num beta_hat = Ops::zero();
    bool have_hat = false;
    Num prev = Ops::zero();
    bool have_prev = false;
    for (const auto& row : tr.at("beta_by_I")) {
      int level = row.at("I").get<int>();
      Num b = Ops::parse(row.at("beta").get<std::string>());
      MarkovGraph g = truncate(side.model, level);
      WeightedBlockGraph<Ops> wg =
          make_weighted(g, restrict_potential(side.model.potential, g));
      if (!Ops::eq(max_cycle_mean(wg), b)) recomputed = false;
      if (have_prev && Ops::lt(b, prev)) monotone = false;
      prev = b;
      have_prev = true;
      if (level == side.i_hat) {
        beta_hat = b;
        have_hat = true;
      }
      if (level >= side.i_hat && have_hat && !Ops::eq(b, beta_hat))
        constant = false;
    }
    a.check("plateau_betas_match_recomputation", recomputed,
            "a beta_by_I entry differs from recomputation");
    a.check("plateau_nondecreasing", monotone, "beta_A(I) decreased");
    a.check("plateau_constant_from_i_hat", constant,
            "beta_A(I) moves above I_hat");

    a.check("support_threshold_matches",
            tr.at("support_threshold").at("I").get<int>() ==
                side.support_threshold,
            "support threshold differs from recomputation");

    // The plateau scan already asserts that the top level localizes below
    // I_hat (it throws PlateauViolation otherwise); here the reported Omega
    // itself is checked against the truncation level.
    bool omega_local = true;
    for (const auto& cls : rep.at("critical").at("classes"))
      for (const auto& vw : cls.at("vertices"))
        for (int s : parse_word(vw.get<std::string>()))
          if (s > side.i_hat) omega_local = false;
    a.check("omega_within_i_hat", omega_local,
            "a critical class uses a symbol above I_hat");
  }

  return a.checks;
}

template <class Ops>
json analyze_and_audit(const AnalysisConfig& cfg, const std::string& cfg_hash) {
  json rep = analyze_impl<Ops>(cfg, cfg_hash);
  std::vector<CheckResult> checks = audit_impl<Ops>(cfg, rep);
  bool all = true;
  for (const auto& c : checks)
    if (!c.pass) all = false;
  rep["checks"] = checks_json(checks);
  rep["verdict"] = all ? "OK" : "FALSIFIED";
  return rep;
}

int falsified_exit(const Error& e) {
  switch (e.code()) {
    case ErrorCode::PlateauViolation:
    case ErrorCode::CharacterizationViolation:
    case ErrorCode::InternalCheckFailed:
      return kExitFalsified;
    case ErrorCode::TooLarge:
      return kExitTooLarge;
    default:
      return kExitBadInput;
  }
}

json error_json(const Error& e) {
  json out;
  out["error"] = {{"code", error_code_name(e.code())}, {"message", e.what()}};
  return out;
}

void apply_overrides(AnalysisConfig& cfg, const json& overrides) {
  if (overrides.contains("mode")) cfg.mode = overrides.at("mode").get<std::string>();
  if (overrides.contains("plateau_window"))
    cfg.plateau_window = overrides.at("plateau_window").get<int>();
  if (overrides.contains("eta")) cfg.eta = overrides.at("eta").get<std::string>();
  if (overrides.contains("horizon")) cfg.horizon = overrides.at("horizon").get<int>();
  if (overrides.contains("margin")) cfg.float_margin = overrides.at("margin").get<std::string>();
}

void write_csv_tables(const json& rep, const std::string& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir + "/beta_by_I.csv", std::ios::binary);
    out << "I,beta\n";
    for (const auto& row : rep.at("truncation").at("beta_by_I"))
      out << row.at("I").get<int>() << "," << row.at("beta").get<std::string>()
          << "\n";
  }
  {
    std::ofstream out(dir + "/finite_horizon.csv", std::ios::binary);
    out << "k,bound\n";
    for (const auto& row : rep.at("finite_horizon"))
      out << row.at("k").get<int>() << "," << row.at("bound").get<std::string>()
          << "\n";
  }
}

template <class Ops>
json verify_impl(const AnalysisConfig& cfg, const json& sub) {
  // Rebuild the graph the sub-action lives on.
  WeightedBlockGraph<Ops> wg;
  if (!cfg.countable) {
    MarkovGraph g = trim_essential(build_graph(cfg));
    wg = make_weighted(g, build_potential<Ops>(cfg));
  } else {
    if (!sub.contains("level"))
      throw Error(ErrorCode::ParseError,
                  "sub-actions for countable models need a \"level\"");
    CountableModel<Ops> model = build_countable<Ops>(cfg);
    MarkovGraph g = truncate(model, sub.at("level").get<int>());
    wg = make_weighted(g, restrict_potential(model.potential, g));
  }
  SubAction<Ops> sa = parse_subaction<Ops>(wg.graph, sub);
  CertificateReport<Ops> cr = check_certificate(wg, sa);
  json out;
  out["beta"] = Ops::str(sa.beta);
  out["max_defect"] = Ops::str(cr.max_defect);
  out["all_defects_nonpositive"] = cr.all_nonpositive;
  out["tight_cycle_exists"] = cr.tight_cycle_exists;
  out["osc"] = Ops::str(cr.osc);
  out["verdict"] = cr.valid ? "VALID" : "INVALID";
  return out;
}

template <class Ops>
json compare_instance(const WeightedBlockGraph<Ops>& wg, int fh_max,
                      bool& all_equal) {
  using Num = typename Ops::Num;
  json rows = json::array();
  auto row = [&](const std::string& name, const std::string& fast,
                 const std::string& brute, bool equal) {
    json r;
    r["quantity"] = name;
    r["fast"] = fast;
    r["brute"] = brute;
    r["equal"] = equal;
    if (!equal) all_equal = false;
    rows.push_back(std::move(r));
  };
  Num fast_beta = max_cycle_mean(wg);
  Num brute_beta = oracle::brute_beta(wg);
  row("beta", Ops::str(fast_beta), Ops::str(brute_beta),
      Ops::eq(fast_beta, brute_beta));

  SubAction<Ops> fast_min = minimal_subaction(wg, brute_beta);
  std::vector<Num> brute_min = oracle::brute_minimal_subaction(
      wg, brute_beta, 2 * wg.graph.vertex_count());
  bool min_eq = true;
  for (int v = 0; v < wg.graph.vertex_count(); ++v)
    if (!Ops::eq(fast_min.u[v], brute_min[v])) min_eq = false;
  auto vec_str = [&](const std::vector<Num>& vals) {
    std::string s = "(";
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (i) s += ",";
      s += Ops::str(vals[i]);
    }
    return s + ")";
  };
  row("minimal_subaction", vec_str(fast_min.u), vec_str(brute_min), min_eq);

  for (int k = 1; k <= fh_max; ++k) {
    Num fast = finite_horizon_bound(wg, k);
    Num brute = oracle::brute_finite_horizon(wg, k);
    row("finite_horizon_k" + std::to_string(k), Ops::str(fast), Ops::str(brute),
        Ops::eq(fast, brute));
  }
  return rows;
}

template <class Ops>
json oracle_impl(const AnalysisConfig& cfg, int seeds, bool& all_equal) {
  WeightedBlockGraph<Ops> wg;
  if (!cfg.countable) {
    MarkovGraph g = trim_essential(build_graph(cfg));
    wg = make_weighted(g, build_potential<Ops>(cfg));
  } else {
    CountableModel<Ops> model = build_countable<Ops>(cfg);
    MarkovGraph g = truncate(model, model.explicit_bound);
    wg = make_weighted(g, restrict_potential(model.potential, g));
  }
  json out;
  all_equal = true;
  out["instance"] = compare_instance<Ops>(wg, 6, all_equal);
  json random = json::array();
  for (int seed = 1; seed <= seeds; ++seed) {
    oracle::RandomInstance inst = oracle::random_instance(seed, 7, -9, 9);
    bool eq = true;
    json rows = compare_instance<ExactOps>(inst.graph, 4, eq);
    json entry;
    entry["seed"] = seed;
    entry["skips"] = inst.skips;
    entry["equal"] = eq;
    if (!eq) {
      entry["rows"] = std::move(rows);
      all_equal = false;
    }
    random.push_back(std::move(entry));
  }
  out["random"] = std::move(random);
  out["all_equal"] = all_equal;
  return out;
}

}  // namespace

RunResult run_analyze(const std::string& config_path,
                      const std::optional<std::string>& emit_path,
                      const std::optional<std::string>& csv_dir,
                      const json& overrides) {
  std::string bytes;
  AnalysisConfig cfg;
  try {
    bytes = read_file(config_path);
    json cfg_json;
    try {
      cfg_json = json::parse(bytes);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::ParseError, config_path + ": " + e.what());
    }
    cfg = parse_config(cfg_json);
    apply_overrides(cfg, overrides);
  } catch (const Error& e) {
    return RunResult{error_json(e), kExitBadInput};
  }

  try {
    json rep = cfg.mode == "float"
                   ? analyze_and_audit<FloatOps>(cfg, fnv1a_hex(bytes))
                   : analyze_and_audit<ExactOps>(cfg, fnv1a_hex(bytes));
    int code = rep.at("verdict") == "OK" ? kExitOk : kExitFalsified;
    if (emit_path.has_value()) {
      std::ofstream out(*emit_path, std::ios::binary);
      out << rep.dump(2) << "\n";
    }
    if (csv_dir.has_value()) write_csv_tables(rep, *csv_dir);
    return RunResult{std::move(rep), code};
  } catch (const Error& e) {
    return RunResult{error_json(e), falsified_exit(e)};
  }
}

RunResult run_verify(const std::string& config_path,
                     const std::string& subaction_path) {
  try {
    AnalysisConfig cfg = parse_config(load_json_file(config_path));
    json sub = load_json_file(subaction_path);
    json out = cfg.mode == "float" ? verify_impl<FloatOps>(cfg, sub)
                                   : verify_impl<ExactOps>(cfg, sub);
    int code = out.at("verdict") == "VALID" ? kExitOk : kExitInvalid;
    return RunResult{std::move(out), code};
  } catch (const Error& e) {
    return RunResult{error_json(e), kExitBadInput};
  }
}

RunResult run_oracle(const std::string& config_path, int seeds) {
  try {
    AnalysisConfig cfg = parse_config(load_json_file(config_path));
    bool all_equal = true;
    json out = cfg.mode == "float"
                   ? oracle_impl<FloatOps>(cfg, seeds, all_equal)
                   : oracle_impl<ExactOps>(cfg, seeds, all_equal);
    return RunResult{std::move(out), all_equal ? kExitOk : kExitInvalid};
  } catch (const Error& e) {
    return RunResult{error_json(e),
                     e.code() == ErrorCode::TooLarge ? kExitTooLarge
                                                     : kExitBadInput};
  }
}

}  // namespace ergopt
