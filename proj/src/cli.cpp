#include "curvel2/cli.hpp"

#include <algorithm>
#include <sstream>

#include "CLI11.hpp"

#include "curvel2/acceptance.hpp"
#include "curvel2/curve_model.hpp"
#include "curvel2/errors.hpp"
#include "curvel2/l2_cohomology.hpp"
#include "curvel2/local_analysis.hpp"

namespace curvel2 {

namespace {

using json = nlohmann::json;

struct RunConfig {
  std::string command;
  std::string input;
  std::string bundle_degrees;
  std::string bundle_path;
  std::string output;
  int truncation = 0;
  int grid = 128;
  int s = 2;
  std::string mode = "exact";
  std::string format = "structured";
  std::uint64_t seed = kDefaultSeed;
};

struct Report {
  json results = json::object();
  json identities = json::array();
  std::vector<std::string> warnings;

  void add(const IdentityCheck& c) { identities.push_back(to_json(c)); }
  void add(const std::vector<IdentityCheck>& v) {
    for (const auto& c : v) add(c);
  }
  void add(const std::string& name, const std::string& lhs, const std::string& rhs, bool pass) {
    add(IdentityCheck{name, lhs, rhs, pass});
  }
  bool all_pass() const {
    return std::all_of(identities.begin(), identities.end(), [](const json& j) { return j["pass"].get<bool>(); });
  }
};

bool is_spec_text(const std::string& text) {
  const std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || text[first] != '{') return false;
  const json j = parse_json_text(text, "input");
  return j.is_object() && j.contains("components");
}

// A curve from either input kind; plane curves keep their analysis.
struct LoadedCurve {
  CurveSpec spec;
  std::optional<PlaneCurveAnalysis> plane;
};

LoadedCurve load_curve(const RunConfig& cfg) {
  if (cfg.input.empty()) throw InputError("--input is required for '" + cfg.command + "'");
  const std::string text = read_text_file(cfg.input);
  LoadedCurve lc;
  if (is_spec_text(text)) {
    lc.spec = curve_spec_from_json(parse_json_text(text, "curve spec"));
  } else {
    lc.plane = analyze_plane_curve(plane_curve_from_text(text), cfg.truncation);
    lc.spec = lc.plane->spec;
  }
  return lc;
}

int parse_int(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    throw InputError(what + ": '" + s + "' is not an integer");
  }
  if (pos != s.size()) throw InputError(what + ": '" + s + "' is not an integer");
  return v;
}

LineBundleSpec load_bundle(const RunConfig& cfg, const CheckedCurve& c) {
  if (!cfg.bundle_degrees.empty() && !cfg.bundle_path.empty()) {
    throw InputError("give either --bundle-degree or --bundle, not both");
  }
  if (!cfg.bundle_path.empty()) return line_bundle_from_json(parse_json_text(read_text_file(cfg.bundle_path), "line bundle"));
  if (cfg.bundle_degrees.empty()) return trivial_bundle();
  LineBundleSpec l;
  std::vector<std::string> items;
  std::stringstream ss(cfg.bundle_degrees);
  for (std::string item; std::getline(ss, item, ',');) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    items.push_back(item);
  }
  const bool named = std::any_of(items.begin(), items.end(), [](const std::string& s) { return s.find('=') != std::string::npos; });
  if (named) {
    for (const auto& it : items) {
      const std::size_t eq = it.find('=');
      if (eq == std::string::npos) throw InputError("--bundle-degree: mix of named and positional degrees");
      const std::string id = it.substr(0, eq);
      if (l.degrees.count(id)) throw InputError("--bundle-degree: component '" + id + "' given twice");
      l.degrees[id] = parse_int(it.substr(eq + 1), "--bundle-degree");
    }
  } else {
    if (static_cast<int>(items.size()) != c.m) {
      throw InputError("--bundle-degree: expected " + std::to_string(c.m) + " degrees (one per component), got " +
                       std::to_string(items.size()));
    }
    for (std::size_t i = 0; i < items.size(); ++i) l.degrees[c.spec.components[i].id] = parse_int(items[i], "--bundle-degree");
  }
  bundle_degree(c, l);  // rejects unknown components
  return l;
}

json spec_summary(const CheckedCurve& c) {
  json j;
  j["m"] = c.m;
  j["g"] = c.g;
  j["deg_Z_minus_absZ"] = c.deg_z_minus_absz;
  j["components"] = json::array();
  for (const auto& comp : c.spec.components) {
    j["components"].push_back({{"id", comp.id},
                               {"genus", comp.genus},
                               {"genus_source", comp.genus_source},
                               {"deg_Z_minus_absZ", c.correction_of.at(comp.id)}});
  }
  j["singular_points"] = json::array();
  for (const auto& p : c.spec.singular_points) {
    json pj = {{"id", p.id}, {"mult_prime", mult_prime(p)}, {"branches", json::array()}};
    for (const auto& b : p.branches) pj["branches"].push_back({{"component", b.component}, {"s", b.s}});
    pj["delta"] = p.delta ? json(*p.delta) : json(nullptr);
    pj["eta"] = p.eta ? json(*p.eta) : json(nullptr);
    j["singular_points"].push_back(std::move(pj));
  }
  return j;
}

json plane_summary(const PlaneCurveAnalysis& a, int truncation_override, std::vector<std::string>& warnings) {
  json j;
  j["chart"] = a.chart;
  j["degrees"] = json::object();
  for (std::size_t i = 0; i < a.degrees.size(); ++i) j["degrees"][a.spec.components[i].id] = a.degrees[i];
  int total_degree = 0;
  for (int d : a.degrees) total_degree += d;
  j["points"] = json::array();
  for (const auto& p : a.points) {
    json pj;
    pj["ids"] = p.ids;
    pj["x"] = p.x;
    pj["y"] = p.y;
    pj["field"] = json::array();
    for (const auto& [gen, poly] : p.tower) pj["field"].push_back({{"generator", gen}, {"minimal_polynomial", poly}});
    pj["multiplicity"] = p.invariants.multiplicity;
    pj["mult_prime"] = p.invariants.mult_prime;
    pj["delta"] = p.invariants.delta;
    pj["branch_count"] = p.invariants.branch_count;
    pj["conductor"] = p.invariants.conductor ? json(*p.invariants.conductor) : json(nullptr);
    pj["truncation"] = p.invariants.truncation;
    pj["branches"] = json::array();
    for (const auto& b : p.branches) {
      pj["branches"].push_back({{"component", b.component},
                                {"s", b.s},
                                {"multiplicity", b.multiplicity},
                                {"count", b.count},
                                {"series", b.series}});
    }
    if (truncation_override == 0 && p.invariants.truncation > default_truncation(total_degree, total_degree)) {
      warnings.push_back("truncation raised to " + std::to_string(p.invariants.truncation) + " at " + p.ids.front());
    }
    j["points"].push_back(std::move(pj));
  }
  return j;
}

json curve_input_echo(const LoadedCurve& lc) {
  if (lc.plane) return {{"kind", "plane_curve"}, {"spec", to_json(lc.spec)}};
  return {{"kind", "curve_spec"}, {"spec", to_json(lc.spec)}};
}

void run_analyze(const RunConfig& cfg, Report& r, json& echo) {
  const LoadedCurve lc = load_curve(cfg);
  echo["curve"] = curve_input_echo(lc);
  if (!lc.plane && cfg.truncation > 0) r.warnings.push_back("--truncation has no effect on a curve spec");
  const CheckedCurve c = validate(lc.spec);
  r.results = spec_summary(c);
  if (lc.plane) r.results["plane_curve"] = plane_summary(*lc.plane, cfg.truncation, r.warnings);
  for (const auto& p : c.spec.singular_points) {
    if (p.delta) {
      r.add("delta_bound_" + p.id, "delta = " + std::to_string(*p.delta), "mult' = " + std::to_string(mult_prime(p)),
            *p.delta >= mult_prime(p));
    }
    if (p.delta && p.eta && p.branches.size() == 1) {
      r.add("conductor_" + p.id, "eta = " + std::to_string(*p.eta), "2 delta = " + std::to_string(2 * *p.delta),
            *p.eta == 2 * *p.delta);
    }
  }
}

Mode parse_mode(const std::string& m) { return m == "generic" ? Mode::generic : Mode::exact; }

void run_cohomology(const RunConfig& cfg, Report& r, json& echo) {
  const LoadedCurve lc = load_curve(cfg);
  echo["curve"] = curve_input_echo(lc);
  const CheckedCurve c = validate(lc.spec);
  const LineBundleSpec l = load_bundle(cfg, c);
  echo["bundle"] = to_json(l);
  const Mode mode = parse_mode(cfg.mode);
  const CohomologyTable t = full_table(c, l, mode);
  r.results["table"] = to_json(t);
  r.add(check_rr_w(t));
  r.add(check_rr_s(t));
  r.add(check_serre_duality(c, l, mode));
  json th = json::object();
  for (const auto& [id, v] : vanishing_thresholds(c)) th[id] = v;
  r.results["vanishing_thresholds"] = th;
  if (c.m == 1) {
    const int v = vanishing_threshold(c);
    r.results["vanishing_threshold"] = v;
    if (t.degree > v) {
      const DimValue& h = t.at(Extension::w, 0, 1);
      r.add("vanishing", "h_w^{0,1} = " + h.to_string(),
            "0 since deg L = " + std::to_string(t.degree) + " > " + std::to_string(v), h.is_exact() && h.lo == 0);
    }
  }
  try {
    r.results["ample_degree_bound"] = ample_degree_bound(c);
  } catch (const InputError& e) {
    r.results["ample_degree_bound"] = nullptr;
    r.results["ample_degree_bound_unavailable"] = e.what();
  }
  for (Extension e : {Extension::w, Extension::s}) {
    for (int p = 0; p < 2; ++p) {
      for (int q = 0; q < 2; ++q) {
        const DimValue& v = t.at(e, p, q);
        if (v.class_dependent) {
          r.warnings.push_back("class_dependent: " + entry_name(e, p, q) + " = " + v.to_string() +
                               (mode == Mode::generic ? " (generic class)" : " (depends on the divisor class)"));
        }
      }
    }
  }
}

using C = std::complex<double>;

C bump(C t) {
  const double a = 1 - 4 * std::norm(t);
  return a > 0 ? a * a * a * a : 0.0;
}
C bump_dbar(C t) {
  const double a = 1 - 4 * std::norm(t);
  return a > 0 ? -16.0 * t * a * a * a : 0.0;
}
C conj_bump(C t) { return std::conj(t) * bump(t); }
C conj_bump_dbar(C t) {
  const double a = 1 - 4 * std::norm(t);
  return a > 0 ? a * a * a * a - 16 * std::norm(t) * a * a * a : 0.0;
}

void run_local(const RunConfig& cfg, Report& r, json& echo) {
  if (cfg.s < 1) throw InputError("--s must be at least 1");
  const int s = cfg.s;
  echo["s"] = s;
  echo["grid"] = cfg.grid;
  r.results["s"] = s;
  json exps = json::object();
  for (int p = 0; p < 2; ++p) {
    for (int q = 0; q < 2; ++q) exps["(" + std::to_string(p) + "," + std::to_string(q) + ")"] = pullback_weight_exponent(p, q, s);
  }
  r.results["pullback_exponents"] = exps;
  r.results["local_table"] = json::array();
  int weak = 0, strong = 0;
  for (const auto& g : local_table(s)) {
    r.results["local_table"].push_back(to_json(g));
    if (g.label == "H_w^{0,0}") weak = g.k_min;
    if (g.label == "H_{s,w}^{0,0}") strong = g.k_min;
  }
  r.add("dimension_witness", "k_min(H_{s,w}^{0,0}) - k_min(H_w^{0,0}) = " + std::to_string(strong - weak),
        "mult' = s - 1 = " + std::to_string(s - 1), strong - weak == s - 1);

  json matrix = json::array();
  int agree = 0, total = 0;
  for (int ss = 1; ss <= 6; ++ss) {
    const double alpha = pullback_weight_exponent(0, 0, ss);
    for (int k = -6; k <= 6; ++k) {
      const MembershipResult m = quadrature_membership(k, alpha, default_disk(alpha));
      const bool analytic = monomial_in_L2(k, alpha);
      const bool ok = (m.verdict == Membership::converged) == analytic && m.verdict != Membership::inconclusive;
      agree += ok;
      ++total;
      matrix.push_back({{"s", ss}, {"k", k}, {"alpha", alpha}, {"quadrature", to_string(m.verdict)},
                        {"analytic_in_L2", analytic}, {"agree", ok}});
    }
  }
  r.results["membership"] = matrix;
  r.add("membership_thresholds", std::to_string(agree) + " of " + std::to_string(total) + " quadrature verdicts agree",
        "k >= 1 - s", agree == total);

  json cauchy = json::object();
  cauchy["grid"] = cfg.grid;
  cauchy["pairs"] = json::array();
  const std::pair<const char*, std::pair<C (*)(C), C (*)(C)>> pairs[] = {{"bump", {bump, bump_dbar}},
                                                                        {"conj(t)*bump", {conj_bump, conj_bump_dbar}}};
  for (const auto& [name, fns] : pairs) {
    const GridFunction u = GridFunction::sample(cfg.grid, fns.first, 0.5);
    const GridFunction f = GridFunction::sample(cfg.grid, fns.second, 0.5);
    const GridFunction pu = cauchy_transform(f);
    const double err = l2_distance(pu, u) / l2_norm(u);
    const double res = verify_dbar_solution(pu, f).value;
    cauchy["pairs"].push_back({{"name", name}, {"relative_error", err}, {"dbar_residual", res}});
    // 1e-2 at n = 128, scaled with the second-order stencil
    const double tol = 1e-2 * (128.0 / cfg.grid) * (128.0 / cfg.grid);
    std::ostringstream lhs, rhs;
    lhs << "residual(" << name << ") = " << res;
    rhs << "<= " << tol;
    r.add(std::string("cauchy_residual_") + name, lhs.str(), rhs.str(), res <= tol);
  }
  if (!cfg.input.empty()) {
    const GridFunction f = read_grid(cfg.input);
    const GridFunction u = cauchy_transform(f);
    const DbarResidual res = verify_dbar_solution(u, f);
    cauchy["input"] = {{"n", f.n}, {"residual", res.value}, {"absolute", res.absolute}};
    if (!cfg.output.empty()) {
      write_grid(cfg.output, u);
      cauchy["input"]["output"] = cfg.output;
    }
  }
  r.results["cauchy"] = cauchy;

  json cut = json::array();
  double prev = INFINITY;
  bool decreasing = true;
  for (int k = 1; k <= 3; ++k) {
    const CutoffNorm c = cutoff_norm(k, INFINITY);
    cut.push_back({{"k", k}, {"exact", c.exact}, {"quadrature", c.quadrature}, {"relative_difference", c.relative_difference}});
    std::ostringstream lhs, rhs;
    lhs << "quadrature = " << c.quadrature;
    rhs << "2 pi e^-" << k << " = " << c.exact << " within 1%";
    r.add("cutoff_" + std::to_string(k), lhs.str(), rhs.str(), c.relative_difference <= 1e-2);
    decreasing = decreasing && c.quadrature < prev;
    prev = c.quadrature;
  }
  r.results["cutoff"] = cut;
  r.add("cutoff_decreasing", "cut-off norms for k = 1, 2, 3", "strictly decreasing", decreasing);
}

void run_verify(const RunConfig& cfg, Report& r, json& echo) {
  echo["seed"] = cfg.seed;
  if (!cfg.input.empty()) {
    const LoadedCurve lc = load_curve(cfg);
    echo["curve"] = curve_input_echo(lc);
    const CheckedCurve c = validate(lc.spec);
    const LineBundleSpec l = load_bundle(cfg, c);
    const CohomologyTable t = full_table(c, l, parse_mode(cfg.mode));
    r.add(check_rr_w(t));
    r.add(check_rr_s(t));
    r.add(check_serre_duality(c, l, parse_mode(cfg.mode)));
  }
  json crit = json::array();
  for (const auto& c : run_acceptance(cfg.seed)) {
    crit.push_back({{"id", c.id}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    r.add("criterion_" + std::to_string(c.id), c.name + ": " + c.detail, "pass", c.pass);
  }
  r.results["criteria"] = crit;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void render(const json& j, const std::string& indent, std::ostringstream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_structured() && !v.empty()) {
        out << indent << k << ":\n";
        render(v, indent + "  ", out);
      } else {
        out << indent << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      const json& v = j[i];
      if (v.is_structured() && !v.empty()) {
        out << indent << "- [" << i << "]\n";
        render(v, indent + "  ", out);
      } else {
        out << indent << "- " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else {
    out << indent << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace

std::string render_table(const json& report) {
  std::ostringstream out;
  out << report.value("tool", "curvel2") << " " << report.value("version", "") << "  " << report.value("command", "")
      << "\n";
  if (report.contains("results") && report["results"].contains("table")) {
    const json& e = report["results"]["table"]["entries"];
    auto cell = [&](const std::string& key) {
      const json& v = e[key];
      std::string s = v["lo"] == v["hi"] ? v["lo"].dump() : "[" + v["lo"].dump() + "," + v["hi"].dump() + "]";
      if (v["class_dependent"].get<bool>()) s += "*";
      return s;
    };
    out << "\n          q=0    q=1\n";
    for (const char* ext : {"w", "s"}) {
      for (int p = 0; p < 2; ++p) {
        out << "  h_" << ext << " p=" << p;
        for (int q = 0; q < 2; ++q) {
          std::string c = cell(std::string("h_") + ext + "^{" + std::to_string(p) + "," + std::to_string(q) + "}");
          out << "  " << c << std::string(c.size() < 5 ? 5 - c.size() : 0, ' ');
        }
        out << "\n";
      }
    }
    out << "  (* class dependent)\n";
  }
  if (report.contains("identities")) {
    out << "\nidentities:\n";
    for (const auto& c : report["identities"]) {
      out << "  [" << (c["pass"].get<bool>() ? "pass" : "FAIL") << "] " << c["name"].get<std::string>() << ": "
          << c["lhs"].get<std::string>() << "  vs  " << c["rhs"].get<std::string>() << "\n";
    }
  }
  for (const char* key : {"results", "error"}) {
    if (report.contains(key) && !report[key].is_null()) {
      out << "\n" << key << ":\n";
      render(report[key], "  ", out);
    }
  }
  if (report.contains("warnings") && !report["warnings"].empty()) {
    out << "\nwarnings:\n";
    for (const auto& w : report["warnings"]) out << "  " << w.get<std::string>() << "\n";
  }
  return out.str();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"L2-Dolbeault cohomology of singular complex curves", "curvel2"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "structured (JSON) or table")->check(CLI::IsMember({"structured", "table"}));
  };
  auto curve_input = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.input, "curve spec (JSON) or plane curve equation file");
    sub->add_option("--truncation", cfg.truncation, "initial series truncation order")->check(CLI::Range(1, 1 << 20));
  };
  auto bundle = [&](CLI::App* sub) {
    sub->add_option("--bundle-degree", cfg.bundle_degrees, "degrees per component: 'c1=3,c2=-1' or '3,-1'");
    sub->add_option("--bundle", cfg.bundle_path, "line bundle JSON file");
    sub->add_option("--mode", cfg.mode, "exact or generic")->check(CLI::IsMember({"exact", "generic"}));
  };

  CLI::App* analyze = app.add_subcommand("analyze", "singular points, invariants and genera");
  curve_input(analyze);
  common(analyze);
  CLI::App* cohom = app.add_subcommand("cohomology", "dimension tables and identity checks");
  curve_input(cohom);
  bundle(cohom);
  common(cohom);
  CLI::App* local = app.add_subcommand("local", "local weighted-disk checks at a unibranch point");
  local->add_option("--s", cfg.s, "branch multiplicity")->check(CLI::Range(1, 64));
  local->add_option("--grid", cfg.grid, "Cauchy solver grid size (power of two, 64..1024)");
  local->add_option("--input", cfg.input, "optional grid file with a right-hand side f");
  local->add_option("--output", cfg.output, "write the Cauchy transform of --input here");
  common(local);
  CLI::App* verify = app.add_subcommand("verify", "acceptance suite");
  verify->add_option("--seed", cfg.seed, "seed of the random spec corpus");
  curve_input(verify);
  bundle(verify);
  common(verify);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  for (CLI::App* sub : {analyze, cohom, local, verify}) {
    if (sub->parsed()) cfg.command = sub->get_name();
  }

  json report;
  report["tool"] = "curvel2";
  report["version"] = kToolVersion;
  report["command"] = cfg.command;
  json echo = json::object();
  if (!cfg.input.empty()) echo["path"] = cfg.input;
  if (cfg.command == "cohomology" || cfg.command == "verify") echo["mode"] = cfg.mode;
  if (cfg.truncation > 0) echo["truncation"] = cfg.truncation;

  Report r;
  int code = kExitOk;
  try {
    if (cfg.command == "local" && (!is_power_of_two(cfg.grid) || cfg.grid < 64 || cfg.grid > 1024)) {
      throw InputError("--grid must be a power of two in [64, 1024]");
    }
    if (cfg.command == "analyze") run_analyze(cfg, r, echo);
    if (cfg.command == "cohomology") run_cohomology(cfg, r, echo);
    if (cfg.command == "local") run_local(cfg, r, echo);
    if (cfg.command == "verify") run_verify(cfg, r, echo);
    report["input"] = echo;
    report["results"] = r.results;
    report["identities"] = r.identities;
    report["warnings"] = r.warnings;
    if (!r.all_pass()) {
      code = kExitFailure;
      err << "error: identity check failed\n";
    }
  } catch (const ValidationError& e) {
    report["input"] = echo;
    report["error"] = {{"kind", "validation"}, {"message", e.what()}, {"violations", e.violations()}};
    err << "error: " << e.what() << "\n";
    code = kExitInput;
  } catch (const InputError& e) {
    report["input"] = echo;
    report["error"] = {{"kind", "input"}, {"message", e.what()}};
    err << "error: " << e.what() << "\n";
    code = kExitInput;
  } catch (const Error& e) {
    report["input"] = echo;
    report["error"] = {{"kind", "math"}, {"message", e.what()}};
    err << "error: " << e.what() << "\n";
    code = kExitFailure;
  }
  if (cfg.format == "table") {
    out << render_table(report);
  } else {
    out << report.dump(2) << "\n";
  }
  return code;
}

}  // namespace curvel2
