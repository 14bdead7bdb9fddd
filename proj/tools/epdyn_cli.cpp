// epdyn: spectra, survival series and EP encirclement traces from the command line.
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "epdyn/encircle.hpp"
#include "epdyn/survival.hpp"

#ifndef EPDYN_VERSION
#define EPDYN_VERSION "dev"
#endif

using json = nlohmann::json;
using namespace epdyn;

namespace {

constexpr int kExitOk = 0, kExitValidation = 2, kExitNumerical = 3, kExitInternal = 4;

struct GridSpec {
  std::string kind = "log";
  double t_min = 0.1, t_max = 100.0;
  int n_points = 100;
};

struct RunConfig {
  std::string model = "I";
  double g = 0.5, eps_d = 0.0, V = 0.5;
  bool v_at_ep2b = false;  // V pinned to the EP2B value computed from g
  GridSpec grid;
  std::vector<std::string> methods{"contour"};
  std::string format = "csv";
  double abs_tol = 1e-12;
  double contour_t_max = 2.0e4;
  int chain_sites = 0;  // 0 -> light-cone minimum
  std::string preset;

  ModelParams params() const {
    if (model == "I") return ModelOneParams{g, eps_d};
    return ModelTwoParams{g, v_at_ep2b ? ep_locations_m2(g).ep2b.V_bar : V};
  }
};

// Figure presets: caption parameter values, methods and a grid covering the plotted window.
std::optional<RunConfig> preset(const std::string& name) {
  RunConfig c;
  c.preset = name;
  if (name == "fig3") {
    c.model = "I", c.g = 0.1, c.eps_d = -1.989974;
    c.grid = {"log", 1.0, 1.0e6, 200};
    c.methods = {"contour", "near_threshold", "longtime"};
  } else if (name == "fig4a") {
    c.model = "I", c.g = 0.5, c.eps_d = -1.7321;
    c.grid = {"log", 0.1, 1.0e4, 200};
    c.methods = {"contour", "near_threshold", "longtime"};
  } else if (name == "fig4b") {
    c.model = "I", c.g = 0.9, c.eps_d = -0.87;
    c.grid = {"linear", 0.0, 4.0, 201};
    c.methods = {"contour", "near_threshold", "zeno"};
  } else if (name == "fig5a") {
    c.model = "II", c.g = 0.1, c.V = 0.00501260;
    c.grid = {"linear", 0.0, 600.0, 601};
    c.methods = {"contour", "ep2b_pole", "zeno"};
  } else if (name == "fig5b") {
    c.model = "II", c.g = 0.1, c.v_at_ep2b = true;
    c.grid = {"linear", 0.0, 2000.0, 1001};
    c.methods = {"contour", "ep2b_longtime"};
  } else if (name == "fig5c") {
    c.model = "II", c.g = 0.75, c.V = 0.3385622;
    c.grid = {"linear", 0.0, 10.0, 201};
    c.methods = {"contour", "ep2b_pole", "zeno"};
  } else if (name == "fig5d") {
    c.model = "II", c.g = 0.75, c.v_at_ep2b = true;
    c.grid = {"linear", 0.0, 200.0, 801};
    c.methods = {"contour", "ep2b_longtime"};
  } else {
    return std::nullopt;
  }
  return c;
}

std::vector<double> make_grid(const GridSpec& g) {
  if (g.kind == "log") return log_grid(g.t_min, g.t_max, g.n_points);
  if (g.kind == "linear") return linear_grid(g.t_min, g.t_max, g.n_points);
  fail(ErrorKind::InvalidParameter, "grid must be log or linear");
}

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json jnum(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json meta_of(const RunConfig& c) {
  json m;
  m["command"] = "survival";
  m["version"] = EPDYN_VERSION;
  m["model"] = c.model;
  m["g"] = c.g;
  if (c.model == "I") {
    m["eps_d"] = c.eps_d;
  } else {
    m["V"] = std::get<ModelTwoParams>(c.params()).V;
    m["V_at_ep2b"] = c.v_at_ep2b;
  }
  m["grid"] = {{"kind", c.grid.kind}, {"t_min", c.grid.t_min}, {"t_max", c.grid.t_max}, {"n_points", c.grid.n_points}};
  m["methods"] = c.methods;
  m["tolerances"] = {{"abs_tol", c.abs_tol}, {"contour_t_max", c.contour_t_max}, {"max_evals", default_max_evals()}};
  m["chain_sites"] = c.chain_sites;
  if (!c.preset.empty()) m["preset"] = c.preset;
  return m;
}

RunConfig config_from_json(const json& j) {
  const json& m = j.contains("meta") ? j.at("meta") : j;
  RunConfig c;
  c.model = m.at("model").get<std::string>();
  c.g = m.at("g").get<double>();
  if (c.model == "I") {
    c.eps_d = m.at("eps_d").get<double>();
  } else {
    c.V = m.at("V").get<double>();
    c.v_at_ep2b = m.value("V_at_ep2b", false);
  }
  const auto& gr = m.at("grid");
  c.grid = {gr.at("kind").get<std::string>(), gr.at("t_min").get<double>(), gr.at("t_max").get<double>(),
            gr.at("n_points").get<int>()};
  c.methods = m.at("methods").get<std::vector<std::string>>();
  if (m.contains("tolerances")) {
    c.abs_tol = m["tolerances"].value("abs_tol", c.abs_tol);
    c.contour_t_max = m["tolerances"].value("contour_t_max", c.contour_t_max);
  }
  c.chain_sites = m.value("chain_sites", 0);
  c.preset = m.value("preset", std::string());
  c.format = "json";
  return c;
}

std::ostream* open_out(const std::string& path, std::ofstream& f) {
  if (path.empty() || path == "-") return &std::cout;
  f.open(path);
  if (!f) fail(ErrorKind::InvalidParameter, "cannot open output file " + path);
  return &f;
}

// ---- spectrum ----

int cmd_spectrum(const std::string& model, double g, double eps_d, double V, const std::string& format,
                 const std::string& out) {
  std::ofstream f;
  std::ostream& os = *open_out(out, f);
  json j;
  std::vector<std::string> warnings;
  struct Row {
    SpectralPoint p;
    double residual;
    int s = 0, branch = 0;
  };
  std::vector<Row> rows;
  if (model == "I") {
    const ModelOneParams p{g, eps_d};
    const auto sp = discrete_spectrum(p);
    const double q = 1.0 - g * g;
    for (const auto& pt : sp.points)
      rows.push_back({pt, std::abs((q * pt.lambda + eps_d) * pt.lambda + 1.0)});
    const auto lo = ep_location(g, EpBranch::Lower), up = ep_location(g, EpBranch::Upper);
    j["ep"] = {{"eps_bar_lower", lo.eps_bar}, {"eps_bar_upper", up.eps_bar}, {"E_bar_lower", lo.E_bar},
               {"lambda_bar_lower", lo.lambda_bar}, {"delta_ep", delta_ep(g)}};
    if (sp.at_exceptional_point) warnings.push_back("eigenvalues coalesce: parameters sit on an EP2A");
    else if (sp.near_exceptional_point) warnings.push_back("within 1e-6 of an EP2A: near-coalescence");
  } else if (model == "II") {
    const ModelTwoParams p{g, V};
    const auto sp = quartic_spectrum(p);
    for (const auto& pt : sp.points) rows.push_back({pt, std::abs(quartic_value(p, pt.energy)), pt.s, pt.branch});
    const auto ep = ep_locations_m2(g);
    j["ep"] = {{"V_bar_A", ep.ep2a}, {"V_bar_B", ep.ep2b.V_bar}, {"E_bar_B_im", ep.ep2b.E_bar.imag()},
               {"lambda_bar_B_im", ep.ep2b.lambda_bar.imag()}, {"gamma_bar", ep.ep2b.gamma_bar}};
    if (sp.at_exceptional_point) warnings.push_back("eigenvalues coalesce: parameters sit on an EP");
    else if (sp.near_exceptional_point) warnings.push_back("within 1e-6 of an EP: near-coalescence");
  } else {
    fail(ErrorKind::InvalidParameter, "model must be I or II");
  }
  if (format == "json") {
    j["model"] = model;
    j["warnings"] = warnings;
    for (const auto& r : rows) {
      json e = {{"lambda", {r.p.lambda.real(), r.p.lambda.imag()}},
                {"E", {r.p.energy.real(), r.p.energy.imag()}},
                {"k", {r.p.k.real(), r.p.k.imag()}},
                {"classification", to_string(r.p.classification)},
                {"residual", r.residual}};
      if (model == "II") e["s"] = r.s, e["branch"] = r.branch;
      j["states"].push_back(e);
    }
    os << j.dump(2) << "\n";
  } else {
    for (const auto& w : warnings) os << "# warning: " << w << "\n";
    for (auto it = j["ep"].begin(); it != j["ep"].end(); ++it) os << "# " << it.key() << ": " << it.value() << "\n";
    os << "re_lambda,im_lambda,re_E,im_E,re_k,im_k,classification,residual\n";
    for (const auto& r : rows)
      os << fmt(r.p.lambda.real()) << ',' << fmt(r.p.lambda.imag()) << ',' << fmt(r.p.energy.real()) << ','
         << fmt(r.p.energy.imag()) << ',' << fmt(r.p.k.real()) << ',' << fmt(r.p.k.imag()) << ','
         << to_string(r.p.classification) << ',' << fmt(r.residual) << "\n";
  }
  return kExitOk;
}

// ---- survival ----

SurvivalSeries run_method(const RunConfig& c, const std::string& name, const std::vector<double>& t) {
  const Method m = method_from_string(name);
  const auto p = c.params();
  if (m == Method::ContourExact) {
    SurvivalOptions o;
    o.abs_tol = c.abs_tol;
    o.contour_t_max = c.contour_t_max;
    if (c.model == "I") return amplitude_contour_m1(std::get<ModelOneParams>(p), t, o);
    return amplitude_contour_m2(std::get<ModelTwoParams>(p), t, o);
  }
  if (m == Method::FiniteChainOracle) {
    const int n = c.chain_sites > 0 ? c.chain_sites
                                    : static_cast<int>(std::ceil(2.0 * (t.empty() ? 0.0 : t.back()))) + kLightConeMargin;
    return amplitude_finite_chain(p, n, t);
  }
  return approximation_series(m, p, t);
}

int cmd_survival(const RunConfig& c, const std::string& out) {
  const auto t = make_grid(c.grid);
  if (c.methods.empty()) fail(ErrorKind::InvalidParameter, "no methods requested");
  std::vector<SurvivalSeries> all;
  for (const auto& m : c.methods) all.push_back(run_method(c, m, t));

  std::ofstream f;
  std::ostream& os = *open_out(out, f);
  const json meta = meta_of(c);
  if (c.format == "json") {
    json j;
    j["meta"] = meta;
    for (const auto& s : all) {
      json e;
      e["method"] = to_string(s.method);
      for (size_t i = 0; i < s.size(); ++i) {
        e["t"].push_back(s.times[i]);
        e["re_a"].push_back(jnum(s.amplitude[i].real()));
        e["im_a"].push_back(jnum(s.amplitude[i].imag()));
        e["p"].push_back(jnum(s.probability[i]));
        e["err_est"].push_back(jnum(s.err_est[i]));
        e["flags"].push_back(s.flags[i]);
      }
      j["series"].push_back(e);
    }
    os << j.dump(1) << "\n";
  } else if (c.format == "csv") {
    for (auto it = meta.begin(); it != meta.end(); ++it) os << "# " << it.key() << ": " << it.value().dump() << "\n";
    os << "t,re_a,im_a,p,method,err_est,flags\n";
    for (const auto& s : all)
      for (size_t i = 0; i < s.size(); ++i)
        os << fmt(s.times[i]) << ',' << fmt(s.amplitude[i].real()) << ',' << fmt(s.amplitude[i].imag()) << ','
           << fmt(s.probability[i]) << ',' << to_string(s.method) << ',' << fmt(s.err_est[i]) << ',' << s.flags[i]
           << "\n";
  } else {
    fail(ErrorKind::InvalidParameter, "format must be csv or json");
  }
  for (const auto& s : all)
    if (s.size() && s.failed_points() * 10 > s.size()) {
      std::cerr << "epdyn: " << s.failed_points() << " of " << s.size() << " points failed for method "
                << to_string(s.method) << "\n";
      return kExitNumerical;
    }
  return kExitOk;
}

// ---- encircle ----

const char* psi_name(const SignedLabel& s) {
  if (s.label == Branch::Plus) return s.sign > 0 ? "+Ψ₊" : "−Ψ₊";
  return s.sign > 0 ? "+Ψ₋" : "−Ψ₋";
}

int cmd_encircle(double g, double chi_ratio, std::optional<double> center_ratio, const std::string& dir, int steps,
                 int loops, const std::string& format, const std::string& out) {
  const Direction d = direction_from_string(dir);
  const double lb = ep_location(g, EpBranch::Lower).lambda_bar;
  // a loop of radius chi > lambda_bar takes in both EPs when centred between them
  const double cr = center_ratio ? *center_ratio : (chi_ratio > 1.0 ? 0.0 : 1.0);
  const auto tr = trace_lambda_loop(g, {cr * lb, chi_ratio * lb, d, steps});
  const auto once = encircle_once(g, d);
  auto cyc = revolution_cycle(g, d, loops);
  std::string report;
  if (tr.swapped) report = std::string("swap: Ψ₋ → ") + psi_name(once.minus_to);
  else report = tr.encloses_both_eps ? "no swap (both EPs enclosed)" : "no swap (no EP enclosed)";
  // without a swap every loop already returns the pair unchanged
  if (!tr.swapped) cyc.assign(std::max(loops, 1), {SignedLabel{1, Branch::Plus}, SignedLabel{1, Branch::Minus}});
  const auto& last = cyc.back();
  const bool identity = last[0] == SignedLabel{1, Branch::Plus} && last[1] == SignedLabel{1, Branch::Minus};

  std::ofstream f;
  std::ostream& os = *open_out(out, f);
  if (format == "json") {
    json j;
    j["meta"] = {{"command", "encircle"}, {"version", EPDYN_VERSION}, {"g", g}, {"chi_ratio", chi_ratio},
                 {"center_ratio", cr}, {"direction", to_string(d)}, {"steps", steps}, {"loops", loops}};
    j["report"] = report;
    j["swapped"] = tr.swapped;
    j["encloses_both_eps"] = tr.encloses_both_eps;
    for (const auto& e : cyc) j["cycle"].push_back({psi_name(e[0]), psi_name(e[1])});
    j["identity_restored"] = identity;
    for (size_t k = 0; k < tr.delta.size(); ++k)
      j["trace"].push_back({tr.delta[k], tr.xi[k].real(), tr.xi[k].imag(), tr.branch[0][k].real(),
                            tr.branch[0][k].imag(), tr.branch[1][k].real(), tr.branch[1][k].imag()});
    os << j.dump(1) << "\n";
  } else {
    os << "# " << report << "\n";
    for (size_t k = 0; k < cyc.size(); ++k)
      os << "# loop " << k + 1 << ": {" << psi_name(cyc[k][0]) << ", " << psi_name(cyc[k][1]) << "}\n";
    if (identity) os << "# identity restored after " << loops << " loops\n";
    os << "delta,re_xi,im_xi,re_lambda_a,im_lambda_a,re_lambda_b,im_lambda_b\n";
    for (size_t k = 0; k < tr.delta.size(); ++k)
      os << fmt(tr.delta[k]) << ',' << fmt(tr.xi[k].real()) << ',' << fmt(tr.xi[k].imag()) << ','
         << fmt(tr.branch[0][k].real()) << ',' << fmt(tr.branch[0][k].imag()) << ',' << fmt(tr.branch[1][k].real())
         << ',' << fmt(tr.branch[1][k].imag()) << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exceptional-point dynamics of an impurity coupled to a semi-infinite chain"};
  app.require_subcommand(1);
  app.set_version_flag("--version", EPDYN_VERSION);

  std::string model = "I", format = "csv", out;
  double g = 0.5, eps_d = 0.0, V = 0.5;

  auto* sp = app.add_subcommand("spectrum", "discrete eigenvalues, classification and EP data");
  sp->add_option("--model", model, "I or II")->check(CLI::IsMember({"I", "II"}));
  sp->add_option("--g", g, "chain coupling g");
  sp->add_option("--eps-d", eps_d, "impurity energy (model I)");
  sp->add_option("--V", V, "intra-qubit coupling (model II)");
  sp->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  sp->add_option("--out", out, "output path (default stdout)");

  RunConfig rc;
  std::string preset_name, config_path, methods_csv;
  bool v_ep = false;
  auto* sv = app.add_subcommand("survival", "survival amplitude / probability series");
  sv->add_option("--preset", preset_name, "fig3, fig4a, fig4b, fig5a, fig5b, fig5c, fig5d");
  sv->add_option("--config", config_path, "re-run from a JSON output or config file");
  sv->add_option("--model", rc.model)->check(CLI::IsMember({"I", "II"}));
  sv->add_option("--g", rc.g);
  sv->add_option("--eps-d", rc.eps_d);
  sv->add_option("--V", rc.V);
  sv->add_flag("--V-at-ep2b", v_ep, "pin V to the EP2B value for the given g");
  sv->add_option("--grid", rc.grid.kind)->check(CLI::IsMember({"log", "linear"}));
  sv->add_option("--t-min", rc.grid.t_min);
  sv->add_option("--t-max", rc.grid.t_max);
  sv->add_option("--n-points", rc.grid.n_points);
  sv->add_option("--methods", methods_csv, "comma list: contour, finite_chain, zeno, ep2a_pole, near_threshold, "
                                           "longtime, ep2b_pole, ep2b_longtime");
  sv->add_option("--abs-tol", rc.abs_tol);
  sv->add_option("--contour-t-max", rc.contour_t_max);
  sv->add_option("--chain-sites", rc.chain_sites);
  sv->add_option("--format", rc.format)->check(CLI::IsMember({"csv", "json"}));
  sv->add_option("--out", out);

  double chi_ratio = 0.5;
  std::optional<double> center_ratio;
  std::string dir = "ccw";
  int steps = 256, loops = 1;
  auto* en = app.add_subcommand("encircle", "quasi-static loop around the EP2A of model I");
  en->add_option("--g", g);
  en->add_option("--chi-ratio", chi_ratio, "loop radius in units of lambda_bar_A");
  en->add_option("--center-ratio", center_ratio, "loop centre in units of lambda_bar_A (default 1, or 0 if chi-ratio > 1)");
  en->add_option("--dir", dir)->check(CLI::IsMember({"cw", "ccw"}));
  en->add_option("--steps", steps);
  en->add_option("--loops", loops);
  en->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  en->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc_parse = app.exit(e);
    return rc_parse == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*sp) return cmd_spectrum(model, g, eps_d, V, format, out);
    if (*sv) {
      RunConfig c = rc;
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) fail(ErrorKind::InvalidParameter, "cannot read config " + config_path);
        c = config_from_json(json::parse(in));
        if (sv->count("--format")) c.format = rc.format;
      } else if (!preset_name.empty()) {
        auto p = preset(preset_name);
        if (!p) fail(ErrorKind::InvalidParameter, "unknown preset '" + preset_name + "'");
        c = *p;
        c.format = rc.format;
      }
      if (!config_path.empty() || !preset_name.empty()) {
        // explicit flags override the preset / config values
        auto given = [&](const char* f) { return sv->count(f) > 0; };
        if (given("--model")) c.model = rc.model;
        if (given("--g")) c.g = rc.g;
        if (given("--eps-d")) c.eps_d = rc.eps_d;
        if (given("--V")) c.V = rc.V, c.v_at_ep2b = false;
        if (given("--grid")) c.grid.kind = rc.grid.kind;
        if (given("--t-min")) c.grid.t_min = rc.grid.t_min;
        if (given("--t-max")) c.grid.t_max = rc.grid.t_max;
        if (given("--n-points")) c.grid.n_points = rc.grid.n_points;
        if (given("--abs-tol")) c.abs_tol = rc.abs_tol;
        if (given("--contour-t-max")) c.contour_t_max = rc.contour_t_max;
        if (given("--chain-sites")) c.chain_sites = rc.chain_sites;
      }
      if (v_ep) c.v_at_ep2b = true;
      if (!methods_csv.empty()) {
        c.methods.clear();
        std::stringstream ss(methods_csv);
        for (std::string m; std::getline(ss, m, ',');)
          if (!m.empty()) c.methods.push_back(m);
      }
      return cmd_survival(c, out);
    }
    if (*en) return cmd_encircle(g, chi_ratio, center_ratio, dir, steps, loops, format, out);
  } catch (const Error& e) {
    std::cerr << "epdyn: " << kind_name(e.kind()) << ": " << e.what() << "\n";
    return e.category() == ErrorCategory::Validation ? kExitValidation : kExitNumerical;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "epdyn: bad config: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "epdyn: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
