#include "randrk/cli.hpp"

#include "randrk/contour.hpp"
#include "randrk/csv.hpp"
#include "randrk/error.hpp"
#include "randrk/experiments.hpp"
#include "randrk/io.hpp"
#include "randrk/problems.hpp"
#include "randrk/schemes.hpp"
#include "randrk/svg.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace randrk::cli {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, sep))
    if (!cur.empty()) parts.push_back(cur);
  return parts;
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k) out += sep;
    out += parts[k];
  }
  return out;
}

std::string fmt(double x) { return io::format_double(x); }

SchemeId scheme_or_throw(const std::string& name) {
  auto id = parse_scheme(name);
  if (!id)
    throw UsageError("unknown scheme '" + name +
                     "' (expected det-rk2, rand-expl-rk2, det-s1, det-s2, s1, s2)");
  return *id;
}

StageMethod method_or_throw(const std::string& name) {
  if (name == "picard") return StageMethod::Picard;
  if (name == "affine") return StageMethod::Affine;
  if (name == "newton") return StageMethod::Newton;
  throw UsageError("unknown solver '" + name + "' (expected picard, affine, newton)");
}

stability::Functional functional_or_throw(const std::string& name) {
  if (name == "ms") return stability::Functional::MeanSquare;
  if (name == "as") return stability::Functional::Asymptotic;
  throw UsageError("unknown functional '" + name + "' (expected ms or as)");
}

const std::vector<std::string> kProblems = {"dahlquist", "dahlquist-complex", "stiff",
                                            "holder",    "holder-point",      "zero"};

std::pair<double, double> default_interval(const std::string& id) {
  if (id == "stiff") return {0.0, 50.0};
  return {0.0, 1.0};
}

Ivp build_problem(const RunConfig& cfg) {
  const auto [da, db] = default_interval(cfg.problem.id);
  const double a = cfg.a.value_or(da);
  const double b = cfg.b.value_or(db);
  const ProblemSpec& p = cfg.problem;
  if (p.id == "dahlquist") return problems::dahlquist(p.lambda, a, b);
  if (p.id == "dahlquist-complex") return problems::dahlquist_complex({p.lambda, p.lambda_im}, a, b);
  if (p.id == "stiff") return problems::stiff(a, b);
  if (p.id == "holder") return problems::holder_lacunary(p.lambda, p.rho, p.terms, a, b);
  if (p.id == "holder-point") return problems::holder_point(p.lambda, p.rho, p.c, a, b);
  if (p.id == "zero") return problems::zero_field(1, a, b);
  throw UsageError("unknown problem '" + p.id + "'");
}

StageSolverConfig solver_config(const RunConfig& cfg) {
  StageSolverConfig s;
  s.method = method_or_throw(cfg.solver);
  s.tol = cfg.tol;
  s.max_iter = cfg.max_iter;
  s.lipschitz_guard = cfg.lipschitz_guard;
  return s;
}

std::size_t steps_for(double span, double h) {
  const long long n = std::llround(span / h);
  if (!(h > 0.0) || n < 1 || std::abs(static_cast<double>(n) * h - span) > 1e-9 * span) {
    std::ostringstream os;
    os << "step size " << h << " does not divide an interval of length " << span;
    throw UsageError(os.str());
  }
  return static_cast<std::size_t>(n);
}

std::vector<double> step_list(const RunConfig& cfg) {
  std::vector<double> hs;
  if (!cfg.h_list.empty()) {
    for (const auto& s : cfg.h_list) hs.push_back(parse_real(s));
  } else {
    double h = parse_real(cfg.h0);
    for (int k = 0; k < cfg.levels; ++k, h /= 2.0) hs.push_back(h);
  }
  return hs;
}

void add_problem_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--problem", cfg.problem.id, "Problem id")
      ->check(CLI::IsMember(kProblems));
  sub->add_option("--lambda", cfg.problem.lambda, "Real part of lambda");
  sub->add_option("--lambda-im", cfg.problem.lambda_im, "Imaginary part (dahlquist-complex)");
  sub->add_option("--rho", cfg.problem.rho, "Hölder exponent (holder, holder-point)");
  sub->add_option("--c", cfg.problem.c, "Singularity location (holder-point)");
  sub->add_option("--terms", cfg.problem.terms, "Lacunary series length (holder)");
  sub->add_option("--a", cfg.a, "Interval start");
  sub->add_option("--b", cfg.b, "Interval end");
}

void add_solver_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--solver", cfg.solver, "Stage solver: picard | affine | newton");
  sub->add_option("--tol", cfg.tol, "Relative residual tolerance");
  sub->add_option("--max-iter", cfg.max_iter, "Stage solver iteration cap");
  sub->add_flag("!--no-lipschitz-guard", cfg.lipschitz_guard,
                "Skip the L h < 1 contraction check for Picard");
}

void validate(const RunConfig& cfg, const CLI::App& app) {
  if (cfg.command == "integrate") {
    const SchemeId id = scheme_or_throw(cfg.scheme);
    method_or_throw(cfg.solver);
    if (cfg.n.has_value() == cfg.h.has_value())
      throw UsageError("integrate: give exactly one of --n or --h");
    if (cfg.n && *cfg.n < 1) throw UsageError("integrate: --n must be positive");
    if (cfg.h) parse_real(*cfg.h);
    if (cfg.tau_fixed && !is_randomized(id))
      throw UsageError("integrate: --tau-fixed only applies to randomized schemes");
    if (cfg.tau_fixed && !(*cfg.tau_fixed >= 0.0 && *cfg.tau_fixed < 1.0))
      throw UsageError("integrate: --tau-fixed must lie in [0, 1)");
    const bool seeded = app.count("--seed") > 0 || cfg.seed.has_value();
    if (is_randomized(id) && !cfg.tau_fixed && !seeded)
      throw UsageError("integrate: randomized scheme '" + cfg.scheme + "' requires --seed");
  } else if (cfg.command == "converge") {
    scheme_or_throw(cfg.scheme);
    method_or_throw(cfg.solver);
    const std::size_t count = cfg.h_list.empty() ? static_cast<std::size_t>(std::max(cfg.levels, 0))
                                                 : cfg.h_list.size();
    if (count < 3) throw UsageError("converge: at least 3 levels are required");
    if (cfg.paths < 1) throw UsageError("converge: --paths must be positive");
    if (!(cfg.p >= 2.0)) throw UsageError("converge: --p must be at least 2");
    for (double h : step_list(cfg))
      if (!(h > 0.0)) throw UsageError("converge: step sizes must be positive");
  } else if (cfg.command == "stability") {
    if (cfg.mode != "region" && cfg.mode != "interval" && cfg.mode != "point")
      throw UsageError("stability: --mode must be region, interval or point");
    functional_or_throw(cfg.functional);
    if (cfg.nx < 2 || cfg.ny < 2) throw UsageError("stability: --nx and --ny must be >= 2");
    const auto& w = cfg.window;
    if (!(w.re_min < w.re_max && w.im_min < w.im_max))
      throw UsageError("stability: degenerate --window");
  } else if (cfg.command == "stiff-demo") {
    for (const auto& s : cfg.schemes) scheme_or_throw(s);
    for (const auto& s : cfg.h_list) steps_for(50.0, parse_real(s));
    if (cfg.paths < 1 || cfg.expl_paths < 1)
      throw UsageError("stiff-demo: path counts must be positive");
  }
}

}  // namespace

double parse_real(const std::string& text) {
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw UsageError("not a number: '" + text + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw UsageError("not a number: '" + text + "'");
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string::npos) return number(text);
  const double num = number(text.substr(0, slash));
  const double den = number(text.substr(slash + 1));
  if (den == 0.0) throw UsageError("zero denominator in '" + text + "'");
  return num / den;
}

std::string fraction_tag(double h) {
  for (long long q = 1; q <= 1000000; ++q) {
    const double pq = h * static_cast<double>(q);
    const double r = std::round(pq);
    if (r >= 1.0 && std::abs(pq - r) <= 1e-9 * pq) {
      const auto p = static_cast<long long>(r);
      return q == 1 ? std::to_string(p) : std::to_string(p) + "-" + std::to_string(q);
    }
  }
  return fmt(h);
}

std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out) {
  RunConfig cfg;
  std::string window_text;
  std::string h_list_text;
  std::string schemes_text;

  CLI::App app{"Randomized implicit two-stage Runge-Kutta schemes", "randrk"};
  app.require_subcommand(1, 1);
  app.add_option("--seed", cfg.seed, "Seed for every randomized output");

  CLI::App* integrate = app.add_subcommand("integrate", "Integrate one path and write a CSV");
  integrate->set_help_flag("--help", "Print this help message and exit");
  add_problem_options(integrate, cfg);
  integrate->add_option("--scheme", cfg.scheme, "det-rk2 | rand-expl-rk2 | det-s1 | det-s2 | s1 | s2");
  integrate->add_option("--n", cfg.n, "Number of steps");
  integrate->add_option("--h", cfg.h, "Step size, e.g. 1/8");
  integrate->add_option("--tau-fixed", cfg.tau_fixed, "Use a constant tau instead of draws");
  integrate->add_option("--output", cfg.output, "Trajectory CSV (default <out-dir>/trajectory.csv)");
  add_solver_options(integrate, cfg);

  CLI::App* converge = app.add_subcommand("converge", "Monte Carlo convergence-order study");
  add_problem_options(converge, cfg);
  converge->add_option("--scheme", cfg.scheme, "Scheme id");
  converge->add_option("--paths", cfg.paths, "Monte Carlo paths per level");
  converge->add_option("--p", cfg.p, "Moment order p >= 2");
  converge->add_option("--levels", cfg.levels, "Number of halvings starting at --h0");
  converge->add_option("--h0", cfg.h0, "Coarsest step size");
  converge->add_option("--h-list", h_list_text, "Explicit step sizes, comma separated");
  converge->add_option("--rate", cfg.rate, "Theoretical rate (default rho + 1/2, or 2 for det)");
  add_solver_options(converge, cfg);

  CLI::App* stab = app.add_subcommand("stability", "Stability functionals and regions");
  stab->add_option("--mode", cfg.mode, "region | interval | point");
  stab->add_option("--functional", cfg.functional, "ms | as (region mode)");
  stab->add_option("--window", window_text, "re_min,re_max,im_min,im_max");
  stab->add_option("--nx", cfg.nx, "Lattice points along Re z");
  stab->add_option("--ny", cfg.ny, "Lattice points along Im z");
  stab->add_option("--re", cfg.re, "Re z (point mode)");
  stab->add_option("--im", cfg.im, "Im z (point mode)");
  stab->add_flag("--svg", cfg.svg, "Also render the contour as SVG");
  stab->add_flag("--allow-empty", cfg.allow_empty, "Render an SVG even without contours");

  CLI::App* stiff = app.add_subcommand("stiff-demo", "Stiff problem z' = -50 (z - cos t)");
  stiff->add_option("--schemes", schemes_text, "Comma-separated scheme ids (default all)");
  stiff->add_option("--h-list", h_list_text, "Step sizes (default 1/2,1/4,1/8)");
  stiff->add_option("--paths", cfg.paths, "Paths per randomized implicit scheme (s1, s2)");
  stiff->add_option("--expl-paths", cfg.expl_paths, "Paths for rand-expl-rk2");

  for (CLI::App* sub : {integrate, converge, stab, stiff}) {
    sub->fallthrough();
    sub->add_option("--out-dir", cfg.out_dir, "Output directory");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    std::ostringstream ignored;
    app.exit(e, out, ignored);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    std::string usage = app.help();
    for (CLI::App* sub : app.get_subcommands()) usage = sub->help();
    throw UsageError(std::string(e.what()) + "\n\n" + usage);
  }

  CLI::App* chosen = app.get_subcommands().front();
  cfg.command = chosen->get_name();
  if (cfg.command == "stiff-demo") {
    cfg.paths = stiff->count("--paths") ? cfg.paths : 3;
    cfg.solver = "affine";
  }
  if (!window_text.empty()) {
    const auto parts = split(window_text, ',');
    if (parts.size() != 4) throw UsageError("--window needs four comma-separated numbers");
    cfg.window = {parse_real(parts[0]), parse_real(parts[1]), parse_real(parts[2]),
                  parse_real(parts[3])};
  }
  if (!h_list_text.empty()) cfg.h_list = split(h_list_text, ',');
  if (!schemes_text.empty()) cfg.schemes = split(schemes_text, ',');
  if (cfg.command == "converge" && !converge->count("--problem")) cfg.problem.id = "holder";

  try {
    validate(cfg, app);
  } catch (const UsageError& e) {
    throw UsageError(std::string(e.what()) + "\n\n" + chosen->help());
  }
  return cfg;
}

std::vector<std::string> to_args(const RunConfig& cfg) {
  std::vector<std::string> a{cfg.command};
  auto opt = [&](const char* flag, const std::string& value) {
    a.push_back(flag);
    a.push_back(value);
  };
  auto problem = [&] {
    opt("--problem", cfg.problem.id);
    opt("--lambda", fmt(cfg.problem.lambda));
    opt("--lambda-im", fmt(cfg.problem.lambda_im));
    opt("--rho", fmt(cfg.problem.rho));
    opt("--c", fmt(cfg.problem.c));
    opt("--terms", std::to_string(cfg.problem.terms));
    if (cfg.a) opt("--a", fmt(*cfg.a));
    if (cfg.b) opt("--b", fmt(*cfg.b));
  };
  auto solver = [&] {
    opt("--solver", cfg.solver);
    opt("--tol", fmt(cfg.tol));
    opt("--max-iter", std::to_string(cfg.max_iter));
    if (!cfg.lipschitz_guard) a.push_back("--no-lipschitz-guard");
  };
  if (cfg.command == "integrate") {
    problem();
    opt("--scheme", cfg.scheme);
    if (cfg.n) opt("--n", std::to_string(*cfg.n));
    if (cfg.h) opt("--h", *cfg.h);
    if (cfg.tau_fixed) opt("--tau-fixed", fmt(*cfg.tau_fixed));
    if (!cfg.output.empty()) opt("--output", cfg.output);
    solver();
  } else if (cfg.command == "converge") {
    problem();
    opt("--scheme", cfg.scheme);
    opt("--paths", std::to_string(cfg.paths));
    opt("--p", fmt(cfg.p));
    opt("--levels", std::to_string(cfg.levels));
    opt("--h0", cfg.h0);
    if (!cfg.h_list.empty()) opt("--h-list", join(cfg.h_list, ','));
    if (cfg.rate) opt("--rate", fmt(*cfg.rate));
    solver();
  } else if (cfg.command == "stability") {
    opt("--mode", cfg.mode);
    opt("--functional", cfg.functional);
    opt("--window", fmt(cfg.window.re_min) + "," + fmt(cfg.window.re_max) + "," +
                        fmt(cfg.window.im_min) + "," + fmt(cfg.window.im_max));
    opt("--nx", std::to_string(cfg.nx));
    opt("--ny", std::to_string(cfg.ny));
    opt("--re", fmt(cfg.re));
    opt("--im", fmt(cfg.im));
    if (cfg.svg) a.push_back("--svg");
    if (cfg.allow_empty) a.push_back("--allow-empty");
  } else if (cfg.command == "stiff-demo") {
    if (!cfg.schemes.empty()) opt("--schemes", join(cfg.schemes, ','));
    if (!cfg.h_list.empty()) opt("--h-list", join(cfg.h_list, ','));
    opt("--paths", std::to_string(cfg.paths));
    opt("--expl-paths", std::to_string(cfg.expl_paths));
  }
  if (cfg.seed) opt("--seed", std::to_string(*cfg.seed));
  opt("--out-dir", cfg.out_dir);
  return a;
}

namespace {

int cmd_integrate(const RunConfig& cfg, std::ostream& out) {
  const Ivp ivp = build_problem(cfg);
  const SchemeId scheme = scheme_or_throw(cfg.scheme);
  const StageSolverConfig solver = solver_config(cfg);
  const std::size_t n =
      cfg.n ? static_cast<std::size_t>(*cfg.n) : steps_for(ivp.t1() - ivp.t0(), parse_real(*cfg.h));
  const TimeGrid grid = make_grid(ivp.t0(), ivp.t1(), n);

  TauSource taus = std::monostate{};
  if (is_randomized(scheme)) {
    if (cfg.tau_fixed) taus = FixedTau{*cfg.tau_fixed};
    else taus = tau_stream(*cfg.seed, 0);
  }
  const Trajectory traj = integrate(ivp, scheme, grid, std::move(taus), solver);

  const fs::path path = cfg.output.empty() ? fs::path(cfg.out_dir) / "trajectory.csv"
                                           : fs::path(cfg.output);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  io::write_file_atomic(path, csv::trajectory(traj));

  const int max_iters =
      traj.stage_iters.empty() ? 0 : *std::max_element(traj.stage_iters.begin(), traj.stage_iters.end());
  out << "scheme " << to_string(scheme) << ", problem " << ivp.name() << ", n = " << n
      << ", h = " << fmt(grid.h()) << '\n';
  out << "final state:";
  for (Eigen::Index i = 0; i < traj.states.back().size(); ++i)
    out << ' ' << fmt(traj.states.back()[i]);
  out << "\nmax stage iterations: " << max_iters << "\nconverged: "
      << (traj.converged ? "true" : "false") << "\nwrote " << path.string() << '\n';
  return kExitOk;
}

int cmd_converge(const RunConfig& cfg, std::ostream& out) {
  const Ivp ivp = build_problem(cfg);
  const SchemeId scheme = scheme_or_throw(cfg.scheme);
  const StageSolverConfig solver = solver_config(cfg);
  const std::uint64_t seed = cfg.seed.value_or(kDefaultSeed);
  const bool randomized = is_randomized(scheme);

  const experiments::OrderFit fit =
      experiments::convergence_order(ivp, scheme, step_list(cfg), cfg.paths, cfg.p, seed, solver);

  fs::create_directories(cfg.out_dir);
  const fs::path levels_path = fs::path(cfg.out_dir) / "convergence_levels.csv";
  const fs::path fit_path = fs::path(cfg.out_dir) / "convergence_fit.csv";
  io::write_file_atomic(levels_path, csv::convergence_levels(fit));
  io::write_file_atomic(fit_path, csv::fit_summary(scheme, fit));

  const double rho = ivp.regularity().holder.value_or(1.0);
  const double rate = cfg.rate.value_or(randomized ? rho + 0.5 : 2.0);
  const double half_width = randomized ? 0.15 : 0.1;
  out << "scheme " << to_string(scheme) << ", problem " << ivp.name() << ", p = " << fmt(cfg.p)
      << ", paths = " << (randomized ? cfg.paths : 1) << ", seed = " << seed << '\n';
  out << std::setw(12) << "h" << std::setw(26) << "value" << std::setw(26) << "std_error" << '\n';
  for (const auto& e : fit.levels)
    out << std::setw(12) << fmt(e.h) << std::setw(26) << fmt(e.value) << std::setw(26)
        << fmt(e.std_error) << '\n';
  std::ostringstream slope;
  slope << std::fixed << std::setprecision(4) << fit.slope;
  out << "slope " << slope.str() << " (r2 = " << fmt(fit.r2) << "), expected rate "
      << fmt(rate) << ", window [" << fmt(rate - half_width) << ", " << fmt(rate + half_width)
      << "]\n";
  if (fit.slope < rate - half_width) {
    out << "verdict: FAIL\n";
  } else if (fit.slope > rate + half_width) {
    out << "verdict: ABOVE (informational: the error bounds are upper bounds)\n";
  } else {
    out << "verdict: PASS\n";
  }
  if (!randomized)
    out << "note: deterministic scheme; compared against the classical order 2, "
           "not the randomized rate rho + 1/2\n";
  out << "wrote " << levels_path.string() << ", " << fit_path.string() << '\n';
  return kExitOk;
}

int cmd_stability(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  using namespace stability;
  out << std::setprecision(17);
  if (cfg.mode == "interval") {
    const double x0 = find_ms_interval_endpoint();
    const double g = ms_interval_g(-x0);
    const bool bracket = x0 > 4.03 && x0 < 4.04;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12f", x0);
    out << "x0 = " << buf << " (computed root of g(-x) = 0)\n"
        << "g(-x0) = " << fmt(g) << '\n'
        << "mean-square interval: (-" << buf << ", 0)\n"
        << "bracket 4.03 < x0 < 4.04: " << (bracket ? "ok" : "VIOLATED") << '\n';
    return bracket ? kExitOk : kExitNumerical;
  }
  if (cfg.mode == "point") {
    const StabilityVerdict v = classify_point({cfg.re, cfg.im});
    auto yn = [](bool b) { return b ? "true" : "false"; };
    out << "z = " << fmt(v.z.re) << (v.z.im < 0 ? " - " : " + ") << fmt(std::abs(v.z.im)) << "i\n"
        << "ms_value = " << fmt(v.ms_value) << '\n'
        << "as_value = " << fmt(v.as_value) << '\n'
        << "in_ms = " << yn(v.in_ms) << '\n'
        << "on_ms_boundary = " << yn(v.on_ms_boundary) << '\n'
        << "in_as_sp = " << yn(v.in_as_sp) << '\n'
        << "in_det_ref = " << yn(v.in_det_ref) << '\n';
    return kExitOk;
  }

  const Functional functional = functional_or_throw(cfg.functional);
  const RegionGrid grid = scan_region(cfg.window, cfg.nx, cfg.ny, functional);
  std::vector<Polyline> lines;
  try {
    lines = contour_extract(grid, grid.level);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::EmptyContour) throw;
    if (cfg.svg && !cfg.allow_empty) {
      err << e.what() << '\n';
      return kExitNumerical;
    }
  }
  const std::string tag(to_string(functional));
  fs::create_directories(cfg.out_dir);
  const fs::path region_path = fs::path(cfg.out_dir) / ("region_" + tag + ".csv");
  const fs::path contour_path = fs::path(cfg.out_dir) / ("contour_" + tag + ".csv");
  io::write_file_atomic(region_path, csv::region(grid));
  io::write_file_atomic(contour_path, csv::contours(lines));
  std::size_t vertices = 0;
  for (const auto& l : lines) vertices += l.vertices.size();
  out << "functional " << tag << ", level " << fmt(grid.level) << ", lattice " << cfg.nx << "x"
      << cfg.ny << ", " << lines.size() << " polylines, " << vertices << " vertices\n"
      << "wrote " << region_path.string() << ", " << contour_path.string() << '\n';
  if (cfg.svg) {
    svg::PlotSpec spec;
    spec.window = cfg.window;
    spec.allow_empty = cfg.allow_empty;
    spec.title = functional == Functional::MeanSquare
                     ? "Mean-square stability region of S1/S2"
                     : "Asymptotic stability region of S1/S2";
    const std::string label = functional == Functional::MeanSquare ? "E|1+z/(1-z tau)|^2 = 1"
                                                                   : "E log|1+z/(1-z tau)| = 0";
    const fs::path svg_path = fs::path(cfg.out_dir) / ("region_" + tag + ".svg");
    svg::write_svg(svg_path, spec, {{label, "#1f4e9c", lines}});
    out << "wrote " << svg_path.string() << '\n';
  }
  return kExitOk;
}

int cmd_stiff_demo(const RunConfig& cfg, std::ostream& out) {
  std::vector<SchemeId> schemes;
  if (cfg.schemes.empty()) schemes.assign(std::begin(kAllSchemes), std::end(kAllSchemes));
  else
    for (const auto& s : cfg.schemes) schemes.push_back(scheme_or_throw(s));
  std::vector<double> hs;
  if (cfg.h_list.empty()) hs = {0.5, 0.25, 0.125};
  else
    for (const auto& s : cfg.h_list) hs.push_back(parse_real(s));
  const std::uint64_t seed = cfg.seed.value_or(kDefaultSeed);
  StageSolverConfig solver;
  solver.method = StageMethod::Affine;
  solver.tol = cfg.tol;

  fs::create_directories(cfg.out_dir);
  std::vector<csv::StiffSummaryRow> summary;
  std::size_t files = 0;
  for (SchemeId scheme : schemes) {
    for (double h : hs) {
      const auto paths = experiments::stiff_demo(
          scheme, h, scheme == SchemeId::RandExplRK2 ? cfg.expl_paths : cfg.paths, seed, solver);
      for (const auto& path : paths) {
        const std::string name = "stiff_" + std::string(to_string(scheme)) + "_" + fraction_tag(h) +
                                 "_path" + std::to_string(path.path) + ".csv";
        io::write_file_atomic(fs::path(cfg.out_dir) / name, csv::stiff_path(path));
        ++files;
        summary.push_back({scheme, h, path.path, path.max_error, path.finite});
      }
    }
  }
  const fs::path summary_path = fs::path(cfg.out_dir) / "stiff_summary.csv";
  io::write_file_atomic(summary_path, csv::stiff_summary(summary));
  out << std::left << std::setw(15) << "scheme" << std::setw(8) << "h" << std::setw(6) << "path"
      << std::setw(26) << "max_error" << "finite\n";
  for (const auto& r : summary)
    out << std::setw(15) << to_string(r.scheme) << std::setw(8) << fraction_tag(r.h)
        << std::setw(6) << r.path << std::setw(26) << fmt(r.max_error)
        << (r.finite ? "true" : "false") << '\n';
  out << "wrote " << files << " path CSVs and " << summary_path.string() << '\n';
  return kExitOk;
}

}  // namespace

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.command == "integrate") return cmd_integrate(cfg, out);
  if (cfg.command == "converge") return cmd_converge(cfg, out);
  if (cfg.command == "stability") return cmd_stability(cfg, out, err);
  if (cfg.command == "stiff-demo") return cmd_stiff_demo(cfg, out);
  throw UsageError("unknown subcommand '" + cfg.command + "'");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::optional<RunConfig> cfg;
  try {
    cfg = parse_args(args, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (!cfg) return kExitOk;
  try {
    return execute(*cfg, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::InvalidArgument ? kExitUsage : kExitNumerical;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace randrk::cli
