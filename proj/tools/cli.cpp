#include "cli.hpp"

#include "io.hpp"
#include "verify.hpp"

#include "tw/errors.hpp"
#include "tw/synthesis.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>

namespace twcli {

using namespace tw;

namespace {

struct UsageError : ValidationError {
  using ValidationError::ValidationError;
};

// Sends text to --out when given, otherwise to the command's stdout.
void emit(const std::string &text, const std::string &out_path, std::ostream &out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f)
    throw ValidationError("cannot write '" + out_path + "'");
  f << text;
}

// ---- eval -----------------------------------------------------------------

struct EvalArgs {
  std::string harmonic = "ylm";
  int l = 0;
  int m = 0;
  std::string grid = "8x16";
  std::string format = "csv";
  std::string frame = "spherical";
  std::string out;
};

std::pair<int, int> parse_grid(const std::string &text) {
  static const std::regex re(R"((\d{1,6})x(\d{1,6}))");
  std::smatch m;
  if (!std::regex_match(text, m, re))
    throw ValidationError("--grid must look like NTHETAxNPHI, got '" + text + "'");
  const int nt = std::stoi(m[1]), np = std::stoi(m[2]);
  if (nt < 1 || np < 1)
    throw ValidationError("--grid needs at least one point per direction");
  return {nt, np};
}

using Rot = std::array<std::array<double, 3>, 3>;

CVec3 rotate(const Rot &t, const CVec3 &v) {
  CVec3 o;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      o[i] += t[std::size_t(i)][std::size_t(j)] * v[j];
  return o;
}

// Both factors of the dyadic carried to Cartesian components: R F R^T.
CTensor3 rotate(const Rot &t, const CTensor3 &f) {
  CTensor3 o;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          o(i, j) += t[std::size_t(i)][std::size_t(a)] * f(a, b) * t[std::size_t(j)][std::size_t(b)];
  return o;
}

int cmd_eval(const EvalArgs &a, std::ostream &out) {
  const ModeIndex mode(a.l, a.m);
  const auto [nt, np] = parse_grid(a.grid);
  const bool cart = a.frame == "cartesian";
  const char *axes = cart ? "xyz" : "rtp";
  auto axis_name = [&](int i) -> std::string {
    if (cart)
      return std::string(1, axes[i]);
    return i == 0 ? "r" : i == 1 ? "theta" : "phi";
  };

  // values[point] = flat list of complex components
  const std::size_t n = std::size_t(nt) * std::size_t(np);
  std::vector<AngularPoint> pts;
  pts.reserve(n);
  for (int i = 0; i < nt; ++i)
    for (int j = 0; j < np; ++j)
      pts.emplace_back((i + 0.5) * std::numbers::pi / nt, 2.0 * std::numbers::pi * j / np);
  std::vector<std::vector<cplx>> values(n);
  parallel_for(n, [&](std::size_t k) {
    const AngularPoint &p = pts[k];
    const Rot t = frame_to_cartesian(p);
    if (a.harmonic == "ylm") {
      values[k] = {ylm(mode, p.theta(), p.phi())};
    } else if (a.harmonic == "xlm") {
      const CVec3 x = cart ? rotate(t, xlm(mode, p)) : xlm(mode, p);
      values[k] = {x[0], x[1], x[2]};
    } else {
      const CTensor3 f = cart ? rotate(t, flm(mode, p)) : flm(mode, p);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
          values[k].push_back(f(r, c));
    }
  });

  std::vector<std::string> names;
  if (a.harmonic == "ylm")
    names = {"Y"};
  else if (a.harmonic == "xlm")
    for (int i = 0; i < 3; ++i)
      names.push_back("X_" + axis_name(i));
  else
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        names.push_back("F_" + axis_name(r) + "_" + axis_name(c));

  std::ostringstream os;
  if (a.format == "csv") {
    os << "theta,phi";
    for (const auto &nm : names)
      os << ',' << nm << "_re," << nm << "_im";
    os << '\n';
    for (std::size_t k = 0; k < n; ++k) {
      os << fmt(pts[k].theta()) << ',' << fmt(pts[k].phi());
      for (cplx v : values[k])
        os << ',' << fmt(v.real()) << ',' << fmt(v.imag());
      os << '\n';
    }
  } else {
    json rows = json::array();
    for (std::size_t k = 0; k < n; ++k) {
      json v = json::object();
      for (std::size_t c = 0; c < names.size(); ++c)
        v[names[c]] = to_json(values[k][c]);
      rows.push_back({{"theta", pts[k].theta()}, {"phi", pts[k].phi()}, {"values", v}});
    }
    json doc = {{"harmonic", a.harmonic}, {"l", a.l},       {"m", a.m},
                {"grid", {nt, np}},       {"frame", a.frame}, {"points", rows}};
    os << doc.dump(1) << '\n';
  }
  emit(os.str(), a.out, out);
  return 0;
}

// ---- verify ---------------------------------------------------------------

struct VerifyArgs {
  std::string suite;
  std::optional<int> lmax;
  std::optional<double> tol;
  std::string out;
};

int cmd_verify(const VerifyArgs &a, std::ostream &out, std::ostream &err) {
  if (a.tol && !(*a.tol > 0.0))
    throw ValidationError("--tol must be positive");
  std::vector<CheckResult> checks;
  int lmax = 0;
  if (a.suite == "ortho") {
    lmax = a.lmax.value_or(4);
    checks = verify_ortho(lmax, a.tol);
  } else if (a.suite == "invariants") {
    lmax = a.lmax.value_or(4);
    checks = verify_invariants(lmax, a.tol);
  } else {
    lmax = a.lmax.value_or(3);
    checks = verify_maxwell(lmax, a.tol);
  }

  json arr = json::array();
  const CheckResult *worst = nullptr;
  bool all = true;
  for (const auto &c : checks) {
    arr.push_back({{"check", c.check},
                   {"max_error", c.max_error},
                   {"tolerance", c.tolerance},
                   {"pass", c.pass()},
                   {"worst_case", c.worst_case}});
    if (!c.pass()) {
      all = false;
      const double ratio = c.max_error / c.tolerance;
      if (!worst || std::isnan(c.max_error) || ratio > worst->max_error / worst->tolerance)
        worst = &c;
    }
  }
  json doc = {{"suite", a.suite}, {"lmax", lmax}, {"pass", all}, {"checks", arr}};
  emit(doc.dump(1) + "\n", a.out, out);
  if (worst) {
    err << "verify " << a.suite << ": FAILED " << worst->check << ": max_error "
        << fmt(worst->max_error) << " exceeds tolerance " << fmt(worst->tolerance) << " at "
        << worst->worst_case << '\n';
    return 1;
  }
  return 0;
}

// ---- solve ----------------------------------------------------------------

struct SolveArgs {
  std::string config;
  std::string project;
  std::string format = "json";
  std::string out;
};

std::vector<PartialWave> get_waves(const json &v) {
  if (!v.is_array())
    throw ValidationError("'waves' must be an array");
  std::vector<PartialWave> waves;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string where = "waves[" + std::to_string(i) + "]";
    const auto &w = v[i];
    require_keys(w, {"l", "m", "c1", "c2", "kind1", "kind2"}, where);
    const ModeIndex mode(get_int(required(w, "l", where), where + ".l"),
                         get_int(required(w, "m", where), where + ".m"));
    const Coeff2 c1 = w.contains("c1") ? get_coeff2(w["c1"], where + ".c1") : Coeff2{};
    const Coeff2 c2 = w.contains("c2") ? get_coeff2(w["c2"], where + ".c2") : Coeff2{};
    const auto kind = [&](const char *key, RadialKind dflt) {
      if (!w.contains(key))
        return dflt;
      if (!w[key].is_string())
        throw ValidationError(where + "." + key + " must be a string");
      return parse_radial_kind(w[key].get<std::string>());
    };
    waves.emplace_back(mode, c1, c2, kind("kind1", RadialKind::Hankel1),
                       kind("kind2", RadialKind::Hankel2));
  }
  std::sort(waves.begin(), waves.end(),
            [](const PartialWave &a, const PartialWave &b) { return a.mode() < b.mode(); });
  return waves;
}

OdeOptions get_ode(const json &cfg) {
  OdeOptions o;
  if (cfg.contains("rtol"))
    o.rtol = get_double(cfg["rtol"], "rtol");
  if (cfg.contains("atol"))
    o.atol = get_double(cfg["atol"], "atol");
  if (!(o.rtol > 0.0) || !(o.atol > 0.0))
    throw ValidationError("rtol and atol must be positive");
  return o;
}

json solve_sphere(const json &cfg) {
  require_keys(cfg, {"task", "k", "radius", "sphere", "host", "lmax", "incident"}, "config");
  const WaveNumber k(get_double(required(cfg, "k", "config"), "k"));
  const double radius = get_double(required(cfg, "radius", "config"), "radius");
  const Medium sphere = get_medium(required(cfg, "sphere", "config"), "sphere");
  const Medium host = cfg.contains("host") ? get_medium(cfg["host"], "host") : Medium::vacuum();
  const double x = k.value() * radius * std::abs(host.n());
  const int lmax = cfg.contains("lmax") ? get_int(cfg["lmax"], "lmax") : default_lmax(x);
  if (lmax < 1)
    throw ValidationError("lmax must be at least 1 (l = 0 has no transverse field)");
  const Coeff2 inc =
      cfg.contains("incident") ? get_coeff2(cfg["incident"], "incident") : Coeff2{1.0, 1.0};

  json rows = json::array();
  for (int l = 1; l <= lmax; ++l) {
    const PartialWave wave(ModeIndex(l, 0), inc, {}, RadialKind::BesselJ,
                           RadialKind::BesselSecond);
    const auto m = match_sphere(l, k, sphere, host, radius, wave);
    json row = {{"l", l}, {"scattered", to_json(m.scattered)}, {"interior", to_json(m.interior)}};
    // textbook a_l, b_l: scattered/incident = -(a_l, b_l)
    row["mie_a"] = inc.theta == cplx{0.0} ? json(nullptr) : to_json(-m.scattered.theta / inc.theta);
    row["mie_b"] = inc.phi == cplx{0.0} ? json(nullptr) : to_json(-m.scattered.phi / inc.phi);
    rows.push_back(row);
  }
  return {{"task", "sphere"}, {"size_parameter", x}, {"lmax", lmax}, {"coefficients", rows}};
}

json solve_propagate(const json &cfg) {
  require_keys(cfg, {"task", "k", "l", "profile", "r_from", "r_to", "state", "rtol", "atol"},
               "config");
  const WaveNumber k(get_double(required(cfg, "k", "config"), "k"));
  const int l = get_int(required(cfg, "l", "config"), "l");
  const RadialProfile prof = get_profile(required(cfg, "profile", "config"));
  const double r0 = get_double(required(cfg, "r_from", "config"), "r_from");
  const double r1 = get_double(required(cfg, "r_to", "config"), "r_to");
  const TangentialState w0 = get_state(required(cfg, "state", "config"), "state");
  const TangentialState w1 = propagate(l, k, prof, r0, r1, w0, get_ode(cfg));
  return {{"task", "propagate"},
          {"l", l},
          {"r_from", r0},
          {"r_to", r1},
          {"state", to_json(w1)},
          {"power_from", radial_power(w0, r0)},
          {"power_to", radial_power(w1, r1)}};
}

std::vector<SphericalPosition> sphere_grid(const json &g) {
  require_keys(g, {"r", "lmax"}, "sphere_grid");
  const double r = get_double(required(g, "r", "sphere_grid"), "sphere_grid.r");
  const int lmax = get_int(required(g, "lmax", "sphere_grid"), "sphere_grid.lmax");
  if (lmax < 0)
    throw ValidationError("sphere_grid.lmax must be non-negative");
  std::vector<SphericalPosition> pts;
  for (const auto &n : QuadratureRule::for_degree(lmax).nodes())
    pts.push_back({r, n.point.theta(), n.point.phi()});
  return pts;
}

std::vector<FieldSample> solve_synthesize(const json &cfg) {
  require_keys(cfg, {"task", "k", "profile", "waves", "points", "sphere_grid", "rtol", "atol"},
               "config");
  const WaveNumber k(get_double(required(cfg, "k", "config"), "k"));
  const RadialProfile prof = get_profile(required(cfg, "profile", "config"));
  const auto waves = get_waves(required(cfg, "waves", "config"));
  std::vector<SphericalPosition> pts;
  if (cfg.contains("sphere_grid") == cfg.contains("points"))
    throw ValidationError("give exactly one of 'points' or 'sphere_grid'");
  if (cfg.contains("sphere_grid")) {
    pts = sphere_grid(cfg["sphere_grid"]);
  } else {
    if (!cfg["points"].is_array())
      throw ValidationError("'points' must be an array of [r, theta, phi]");
    for (const auto &p : cfg["points"]) {
      if (!p.is_array() || p.size() != 3)
        throw ValidationError("each point must be [r, theta, phi]");
      pts.push_back({get_double(p[0], "r"), get_double(p[1], "theta"), get_double(p[2], "phi")});
    }
  }
  const OdeOptions ode = get_ode(cfg);
  std::vector<FieldSample> samples(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    samples[i] = prof.shells().empty() ? synthesize(waves, k, prof.outer(), {pts[i]})[0]
                                       : synthesize(waves, k, prof, {pts[i]}, ode)[0];
  });
  return samples;
}

json solve_project(const json &cfg, const std::string &samples_path) {
  require_keys(cfg, {"task", "k", "medium", "modes", "lmax", "kind1", "kind2"}, "config");
  const WaveNumber k(get_double(required(cfg, "k", "config"), "k"));
  const Medium med = cfg.contains("medium") ? get_medium(cfg["medium"], "medium") : Medium::vacuum();
  auto kind = [&](const char *key, RadialKind dflt) {
    if (!cfg.contains(key))
      return dflt;
    if (!cfg[key].is_string())
      throw ValidationError(std::string(key) + " must be a string");
    return parse_radial_kind(cfg[key].get<std::string>());
  };
  const RadialKind k1 = kind("kind1", RadialKind::Hankel1), k2 = kind("kind2", RadialKind::Hankel2);

  std::vector<ModeIndex> modes;
  if (cfg.contains("modes")) {
    if (!cfg["modes"].is_array())
      throw ValidationError("'modes' must be an array of [l, m]");
    for (const auto &m : cfg["modes"]) {
      if (!m.is_array() || m.size() != 2)
        throw ValidationError("each mode must be [l, m]");
      modes.emplace_back(get_int(m[0], "l"), get_int(m[1], "m"));
    }
  } else {
    const int lmax = get_int(required(cfg, "lmax", "config"), "lmax");
    for (int l = 1; l <= lmax; ++l)
      for (int m = -l; m <= l; ++m)
        modes.emplace_back(l, m);
  }
  std::sort(modes.begin(), modes.end());
  for (const auto &m : modes)
    if (m.l() < 1)
      throw ValidationError("mode (l=0, m=0) has no transverse field and cannot be projected");

  const auto samples = read_samples(samples_path);
  const QuadratureRule rule = rule_from_samples(samples);
  const double r = samples.front().position.r;
  std::vector<json> rows(modes.size());
  parallel_for(modes.size(), [&](std::size_t i) {
    const auto proj = project(samples, modes[i], rule);
    const auto [c1, c2] = recover_coefficients(modes[i].l(), k1, k2, k, r, med, proj);
    rows[i] = {{"l", modes[i].l()}, {"m", modes[i].m()}, {"c1", to_json(c1)}, {"c2", to_json(c2)}};
  });
  return {{"task", "project"},
          {"r", r},
          {"kind1", std::string(to_string(k1))},
          {"kind2", std::string(to_string(k2))},
          {"coefficients", json(rows)}};
}

int cmd_solve(const SolveArgs &a, std::ostream &out) {
  const json cfg = load_json(a.config);
  if (!cfg.is_object())
    throw ValidationError("config must be a JSON object");
  const json &task_v = required(cfg, "task", "config");
  if (!task_v.is_string())
    throw ValidationError("'task' must be a string");
  const std::string task = task_v.get<std::string>();
  if (!a.project.empty() && task != "project")
    throw UsageError("--project needs a config with \"task\": \"project\"");

  std::string text;
  if (task == "sphere") {
    text = solve_sphere(cfg).dump(1) + "\n";
  } else if (task == "propagate") {
    text = solve_propagate(cfg).dump(1) + "\n";
  } else if (task == "synthesize") {
    const auto samples = solve_synthesize(cfg);
    if (a.format == "csv") {
      std::ostringstream os;
      write_samples_csv(os, samples);
      text = os.str();
    } else {
      text = samples_to_json(samples).dump(1) + "\n";
    }
  } else if (task == "project") {
    if (a.project.empty())
      throw UsageError("task 'project' needs --project SAMPLES");
    text = solve_project(cfg, a.project).dump(1) + "\n";
  } else {
    throw ValidationError("unknown task '" + task +
                          "' (expected sphere, propagate, synthesize or project)");
  }
  emit(text, a.out, out);
  return 0;
}

} // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Electrodynamic spherical harmonics: evaluation, checks and radial solvers", "tw"};
  app.require_subcommand(1);

  EvalArgs ea;
  auto *eval = app.add_subcommand("eval", "Evaluate Y_lm, X_lm or F_lm on a theta x phi grid");
  eval->add_option("--harmonic", ea.harmonic, "ylm, xlm or flm")
      ->check(CLI::IsMember({"ylm", "xlm", "flm"}));
  eval->add_option("--l", ea.l, "degree l >= 0")->required();
  eval->add_option("--m", ea.m, "order, |m| <= l")->required();
  eval->add_option("--grid", ea.grid, "NTHETAxNPHI, cell-centred in theta");
  eval->add_option("--format", ea.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  eval->add_option("--frame", ea.frame, "spherical or cartesian components")
      ->check(CLI::IsMember({"spherical", "cartesian"}));
  eval->add_option("--out", ea.out, "output file (default stdout)");

  VerifyArgs va;
  auto *verify = app.add_subcommand("verify", "Run an invariant suite and print a JSON report");
  verify->add_option("--suite", va.suite, "ortho, invariants or maxwell")
      ->required()
      ->check(CLI::IsMember({"ortho", "invariants", "maxwell"}));
  verify->add_option("--lmax", va.lmax, "largest degree (default 4, maxwell 3)");
  verify->add_option("--tol", va.tol, "tolerance applied to every check");
  verify->add_option("--out", va.out, "report file (default stdout)");

  SolveArgs sa;
  auto *solve = app.add_subcommand("solve", "Run a sphere, propagate, synthesize or project job");
  solve->add_option("--config", sa.config, "job description (JSON)")->required();
  solve->add_option("--project", sa.project, "field samples (CSV or JSON) to project");
  solve->add_option("--format", sa.format, "csv or json for field output")
      ->check(CLI::IsMember({"csv", "json"}));
  solve->add_option("--out", sa.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError &e) {
    err << "tw: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*eval)
      return cmd_eval(ea, out);
    if (*verify)
      return cmd_verify(va, out, err);
    return cmd_solve(sa, out);
  } catch (const ValidationError &e) {
    err << "tw: error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError &e) {
    err << "tw: numerical failure: " << e.what() << '\n';
    return 1;
  } catch (const std::domain_error &e) {
    err << "tw: numerical failure: " << e.what() << '\n';
    return 1;
  } catch (const std::overflow_error &e) {
    err << "tw: numerical failure: " << e.what() << '\n';
    return 1;
  } catch (const std::exception &e) {
    err << "tw: failure: " << e.what() << '\n';
    return 1;
  }
}

} // namespace twcli
