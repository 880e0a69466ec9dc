#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "vdw/analytic.hpp"
#include "vdw/config.hpp"
#include "vdw/errors.hpp"
#include "vdw/figures.hpp"
#include "vdw/force.hpp"
#include "vdw/node_cache.hpp"
#include "vdw/stress.hpp"
#include "vdw/waves.hpp"

namespace {

using namespace vdw;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Raw command-line values before they are folded into a RunConfig.
struct Flags {
  std::string profile;
  std::optional<double> chi0;
  std::optional<double> a;
  std::optional<int> N;
  std::string indices;
  std::string alpha;
  std::optional<double> kappa;
  std::string kappa_range;
  std::string x_range;
  std::optional<double> x;
  std::optional<double> x_start, x_end;
  std::optional<double> tol;
  std::optional<double> kappa_min_cutoff;
  std::optional<unsigned> threads;
  std::string out;
  std::string format;
  std::string config;
  std::string only;
  bool lifshitz = false;
  bool integrated = false;
};

std::vector<double> parse_list(const std::string& s, const char* what) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(std::string("cannot parse ") + what + " entry '" + item + "'");
    }
  }
  return v;
}

GridSpec parse_grid(const std::string& s, const char* what) {
  const auto v = parse_list(s, what);
  if (v.size() != 3 || v[2] < 1 || v[2] != std::floor(v[2]))
    throw ConfigError(std::string(what) + " expects lo,hi,count");
  return {v[0], v[1], int(v[2])};
}

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

SusceptibilityProfile profile_from_flag(const std::string& spec, double chi0, double a, int N,
                                        const RunConfig& cfg) {
  if (spec == "sech2") return SusceptibilityProfile::sech2(chi0, a);
  if (spec == "vacuum") return SusceptibilityProfile::vacuum();
  if (spec == "block") {
    // Cell-centred block: every particle stands for a slab of width delta.
    const double lo = cfg.x_start.value_or(0.0), hi = cfg.x_end.value_or(a);
    const double delta = N > 1 ? (hi - lo) / (N - 1) : 0.0;
    return SusceptibilityProfile::homogeneous_block(lo - 0.5 * delta, hi + 0.5 * delta, chi0);
  }
  if (spec == "three-layer") {
    if (cfg.indices.size() != 3) throw ConfigError("profile three-layer needs --n n1,n2,n3");
    return SusceptibilityProfile::three_layer(cfg.indices[0], cfg.indices[1], cfg.indices[2], a);
  }
  Json j;
  try {
    if (!spec.empty() && spec.front() == '{') {
      j = Json::parse(spec);
    } else {
      std::ifstream in(spec);
      if (!in) throw ConfigError("unknown profile '" + spec + "' (not a kind and not a readable file)");
      j = Json::parse(in);
    }
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("profile JSON: ") + e.what());
  }
  return profile_from_json(j);
}

RunConfig build_config(const std::string& sub, const Flags& f) {
  RunConfig c;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw ConfigError("cannot read config file '" + f.config + "'");
    Json j;
    try {
      j = Json::parse(in);
    } catch (const Json::exception& e) {
      throw ConfigError(std::string("config JSON: ") + e.what());
    }
    c = run_config_from_json(j);
    if (c.subcommand != sub)
      throw ConfigError("config file is for '" + c.subcommand + "', not '" + sub + "'");
  }
  c.subcommand = sub;
  if (f.N) c.N = *f.N;
  if (f.x_start) c.x_start = f.x_start;
  if (f.x_end) c.x_end = f.x_end;
  if (!f.alpha.empty()) c.alpha = parse_list(f.alpha, "--alpha");
  if (!c.alpha.empty()) {
    if (c.alpha.size() == 1 && f.N) c.alpha.assign(*f.N, c.alpha.front());
    c.N = int(c.alpha.size());
  }
  if (!f.indices.empty()) c.indices = parse_list(f.indices, "--n");
  if (f.a) c.a = *f.a;
  if (f.kappa) c.kappa = f.kappa;
  if (!f.kappa_range.empty()) c.kappa_range = parse_grid(f.kappa_range, "--kappa-range");
  if (!f.x_range.empty()) c.x_range = parse_grid(f.x_range, "--x-range");
  if (f.x) c.x_range = GridSpec{*f.x, *f.x, 1};
  if (f.integrated) c.integrated = true;
  if (f.lifshitz) c.lifshitz = true;
  if (f.tol) c.tol = *f.tol;
  if (f.kappa_min_cutoff) c.kappa_min_cutoff = f.kappa_min_cutoff;
  if (f.threads) c.threads = *f.threads;
  if (!f.out.empty()) c.out = f.out;
  if (!f.format.empty()) c.format = f.format;
  if (!f.only.empty()) c.figures = split_names(f.only);
  if (!f.profile.empty()) {
    c.profile = profile_from_flag(f.profile, f.chi0.value_or(1.0), c.a, c.N, c);
  } else if (sub == "sech2") {
    c.profile = SusceptibilityProfile::sech2(f.chi0.value_or(1.0), f.a.value_or(0.15));
  } else if (f.chi0 && c.alpha.empty()) {
    c.profile = SusceptibilityProfile::sech2(*f.chi0, f.a.value_or(0.15));
  }
  c.validate();
  return c;
}

QuadratureConfig quad_of(const RunConfig& c) {
  QuadratureConfig q;
  q.tol = c.tol;
  q.max_levels = c.max_levels;
  return q;
}

const SusceptibilityProfile& need_profile(const RunConfig& c) {
  if (!c.profile) throw ConfigError(c.subcommand + " needs a profile (--profile)");
  return *c.profile;
}

std::vector<double> kappas_of(const RunConfig& c) {
  if (c.kappa_range) return c.kappa_range->points();
  if (c.kappa) return {*c.kappa};
  throw ConfigError(c.subcommand + " needs --kappa or --kappa-range");
}

std::vector<double> xs_of(const RunConfig& c, double lo, double hi, int count) {
  if (c.x_range) return c.x_range->points();
  return GridSpec{lo, hi, count}.points();
}

FigureTable table_for(const RunConfig& c, std::string description) {
  FigureTable t;
  t.name = c.subcommand;
  t.description = std::move(description);
  t.parameters = run_config_to_json(c);
  t.parameters.erase("out");
  t.parameters.erase("threads");
  return t;
}

FigureTable run_chain_force(const RunConfig& c) {
  std::optional<ScattererChain> chain;
  if (!c.alpha.empty()) {
    const std::vector<double>& alpha = c.alpha;
    const double lo = c.x_start.value_or(0.0);
    const double hi = c.x_end.value_or(1.0);
    const double delta = alpha.size() > 1 ? (hi - lo) / double(alpha.size() - 1) : 1.0;
    chain = ScattererChain::uniform(lo, delta, alpha);
  } else {
    const auto& p = need_profile(c);
    const bool is_sech = std::holds_alternative<Sech2>(p.kind());
    const double lo = c.x_start.value_or(is_sech ? -0.5 : 0.0);
    const double hi = c.x_end.value_or(is_sech ? 0.5 : 1.0);
    chain = chain_from_profile(p, c.N, lo, hi);
  }
  SpectralCache cache;
  const ForceResult r = force_all(*chain, quad_of(c), c.threads, &cache);
  if (!r.ok()) {
    for (std::size_t j = 0; j < r.failed.size(); ++j)
      if (r.failed[j]) throw ConvergenceError(r.failure_messages[j]);
  }
  FigureTable t = table_for(c, "per-particle van der Waals forces (hbar c = 1)");
  t.columns = {"j", "x_j", "alpha_j", "F_j", "err_j"};
  for (std::size_t j = 0; j < chain->size(); ++j)
    t.rows.push_back({double(j), chain->position(j), chain->alpha(j), r.forces[j], r.errors[j]});
  return t;
}

FigureTable run_macro_density(const RunConfig& c) {
  const auto& p = need_profile(c);
  const auto xs = xs_of(c, -0.5, 0.5, 101);
  FigureTable t;
  if (c.integrated || (!c.kappa && !c.kappa_range)) {
    t = table_for(c, "frequency-integrated force density; divergent points report the "
                     "partial integral and the fitted linear growth");
    t.columns = {"x", "value", "est_error", "divergent", "kappa_max", "growth_coefficient",
                 "expected_growth"};
    DensityConfig dc;
    dc.quad = quad_of(c);
    for (double x : xs) {
      if (p.is_interface(x)) continue;
      const IntegratedDensity d = integrated_force_density(p, x, dc);
      t.rows.push_back({x, d.value, d.est_error, d.divergent ? 1.0 : 0.0, d.kappa_max,
                        d.divergent ? d.growth_coefficient : kNaN, d.expected_growth});
    }
    return t;
  }
  t = table_for(c, "spectral force density and its large-kappa asymptote");
  t.columns = {"x", "kappa", "f_spectral", "asymptote"};
  for (double k : kappas_of(c)) {
    const auto ws = solve_waves(p, k);
    for (double x : xs) {
      if (p.is_interface(x)) continue;
      t.rows.push_back({x, k, force_density_spectral(*ws, x), force_density_asymptotics(p, x, k)});
    }
  }
  return t;
}

FigureTable run_three_layer(const RunConfig& c) {
  if (c.indices.size() != 3) throw ConfigError("three-layer needs --n n1,n2,n3");
  const ThreeLayerConfig cfg{c.indices[0], c.indices[1], c.indices[2], c.a};
  cfg.validate();
  if (c.lifshitz) {
    const LifshitzForce f = lifshitz_force(cfg, quad_of(c));
    FigureTable t = table_for(c, "Casimir-Lifshitz forces on the two interfaces");
    t.columns = {"F_l", "F_r", "est_error", "closed_form", "rho_l", "rho_r"};
    t.rows.push_back({f.F_l, f.F_r, f.est_error, f.closed_form, cfg.rho_l(), cfg.rho_r()});
    return t;
  }
  const auto xs = xs_of(c, -0.5 * c.a, 1.5 * c.a, 81);
  FigureTable t = table_for(c, "three layers: closed-form force density (and g(x,x) per kappa)");
  if (c.kappa || c.kappa_range) {
    t.columns = {"x", "kappa", "g_diag", "f_closed_form"};
    for (double k : kappas_of(c))
      for (double x : xs) {
        if (x == 0.0 || x == c.a) continue;
        t.rows.push_back({x, k, three_layer_green_diag(cfg, k, x), lerch_force_density(cfg, x)});
      }
  } else {
    t.columns = {"x", "f_closed_form"};
    for (double x : xs) {
      if (x == 0.0 || x == c.a) continue;
      t.rows.push_back({x, lerch_force_density(cfg, x)});
    }
  }
  return t;
}

FigureTable run_sech2(const RunConfig& c) {
  const auto& p = need_profile(c);
  const auto* s = std::get_if<Sech2>(&p.kind());
  if (!s) throw ConfigError("sech2 subcommand needs a sech2 profile");
  const Sech2Config cfg{s->chi0, s->a};
  const auto xs = xs_of(c, -5.0 * s->a, 5.0 * s->a, 101);
  FigureTable t = table_for(c, "sech^2 closed-form waves, Green function and spectral density");
  t.columns = {"kappa", "x", "chi", "ln_psi_plus", "ln_psi_minus", "g_diag", "f_spectral",
               "ln_abs_wronskian"};
  for (double k : kappas_of(c)) {
    const Sech2Waves ws(cfg, k);
    const double lw = ws.log_abs_wronskian();
    for (double x : xs) {
      const WaveSample smp = ws.sample(x);
      t.rows.push_back({k, x, p.chi(x), smp.Lp, smp.Lm, green_diagonal(ws, x),
                        force_density_spectral(ws, x), lw});
    }
  }
  return t;
}

FigureTable run_renorm_stress(const RunConfig& c) {
  const auto& p = need_profile(c);
  const auto xs = xs_of(c, -0.5, 0.5, 101);
  FigureTable t = table_for(c, "spectral, local, anomaly and effective stresses");
  t.columns = {"x",        "kappa",    "sigma_E", "sigma_M",     "p_Ab",
               "sigma_E0", "sigma_M0", "anomaly", "sigma_E_eff", "sigma_M_eff"};
  EffectiveOptions eff;
  eff.margin = c.locality_margin;
  eff.kappa_min = c.kappa_min_cutoff;
  for (double k : kappas_of(c)) {
    const auto ws = solve_waves(p, k);
    for (double x : xs) {
      if (p.is_interface(x)) continue;
      const StressBundle b = effective_stresses(*ws, p, x, k, eff);
      t.rows.push_back({x, k, b.sigma_E, b.sigma_M, b.p_Ab, b.sigma_E0, b.sigma_M0, b.anomaly,
                        b.sigma_E_eff, b.sigma_M_eff});
    }
  }
  return t;
}

void emit(const FigureTable& t, const RunConfig& c, const std::string& path) {
  auto write = [&](std::ostream& os) {
    if (c.format == "json") {
      t.write_json(os);
    } else {
      t.write_csv(os);
    }
  };
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  write(out);
}

void run_figures(const RunConfig& c) {
  const std::filesystem::path dir = c.out.empty() ? "figures" : c.out;
  std::filesystem::create_directories(dir);
  std::vector<std::string> names = c.figures.empty() ? figure_names() : c.figures;
  FigureOptions opt;
  opt.tol = c.tol;
  opt.threads = c.threads;
  Json index = Json::array();
  for (const auto& name : names) {
    const FigureTable t = make_figure(name, opt);
    const auto file = dir / (name + (c.format == "json" ? ".json" : ".csv"));
    emit(t, c, file.string());
    index.push_back({{"figure", name}, {"file", file.string()}, {"rows", t.rows.size()},
                     {"config_hash", t.hash()}});
  }
  std::cout << index.dump(1) << '\n';
}

int fail(const std::string& kind, const std::string& message, int code) {
  const Json j = {{"error", {{"kind", kind}, {"message", message}}}};
  std::cerr << j.dump() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Casimir / van der Waals forces and stresses in 1D dielectric chains and media"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("vdwchain ") + kVersion);
  Flags f;

  auto common = [&f](CLI::App* s) {
    s->add_option("--profile", f.profile,
                  "sech2 | block | vacuum | three-layer | JSON file | inline JSON");
    s->add_option("--chi0", f.chi0, "peak (sech2) or block susceptibility");
    s->add_option("--a", f.a, "profile width (sech2), block length or central layer thickness");
    s->add_option("--N", f.N, "number of particles");
    s->add_option("--n", f.indices, "layer indices n1,n2,n3");
    s->add_option("--alpha", f.alpha, "polarizabilities (one value or a comma list)");
    s->add_option("--kappa", f.kappa, "imaginary wavenumber");
    s->add_option("--kappa-range", f.kappa_range, "lo,hi,count");
    s->add_option("--x", f.x, "single evaluation point");
    s->add_option("--x-range", f.x_range, "lo,hi,count");
    s->add_option("--x-start", f.x_start, "first particle position");
    s->add_option("--x-end", f.x_end, "last particle position");
    s->add_option("--tol", f.tol, "relative quadrature tolerance");
    s->add_option("--kappa-min-cutoff", f.kappa_min_cutoff, "low-frequency locality cutoff");
    s->add_option("--threads", f.threads, "worker threads");
    s->add_option("--out", f.out, "output file (directory for figures)");
    s->add_option("--format", f.format, "csv | json");
    s->add_option("--config", f.config, "RunConfig JSON file");
  };
  const std::pair<const char*, const char*> subcommands[] = {
      {"chain-force", "forces on every particle of a discrete chain"},
      {"macro-density", "spectral or kappa-integrated force density of a continuous profile"},
      {"three-layer", "closed-form three-layer density, stresses and Lifshitz forces"},
      {"sech2", "closed-form sech^2 waves and Green function"},
      {"renorm-stress", "spectral, local and effective stresses"},
      {"figures", "write the figure data tables"}};
  for (const auto& [name, help] : subcommands) {
    CLI::App* s = app.add_subcommand(name, help);
    common(s);
    if (std::string(name) == "three-layer") s->add_flag("--lifshitz", f.lifshitz, "Lifshitz forces");
    if (std::string(name) == "macro-density")
      s->add_flag("--integrated", f.integrated, "integrate over kappa");
    if (std::string(name) == "figures") s->add_option("--only", f.only, "comma list of figures");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return fail("usage", e.what(), 2);
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  try {
    const RunConfig c = build_config(sub, f);
    if (sub == "figures") {
      run_figures(c);
      return 0;
    }
    FigureTable t;
    if (sub == "chain-force") t = run_chain_force(c);
    if (sub == "macro-density") t = run_macro_density(c);
    if (sub == "three-layer") t = run_three_layer(c);
    if (sub == "sech2") t = run_sech2(c);
    if (sub == "renorm-stress") t = run_renorm_stress(c);
    emit(t, c, c.out);
    return 0;
  } catch (const ConfigError& e) {
    return fail(e.kind(), e.what(), 2);
  } catch (const vdw::Error& e) {
    return fail(e.kind(), e.what(), 1);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), 1);
  }
}
