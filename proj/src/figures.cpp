#include "vdw/figures.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "vdw/analytic.hpp"
#include "vdw/errors.hpp"
#include "vdw/force.hpp"
#include "vdw/stress.hpp"
#include "vdw/waves.hpp"

namespace vdw {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Shared setup of the inhomogeneous examples.
constexpr double kSechChi0 = 1.0;
constexpr double kSechA = 0.15;
constexpr double kSpanLo = -0.5;
constexpr double kSpanHi = 0.5;

QuadratureConfig quad(const FigureOptions& opt) {
  QuadratureConfig q;
  q.tol = opt.tol;
  return q;
}

Json tolerances(const FigureOptions& opt) {
  const WaveOptions w;
  return {{"quad_tol", opt.tol}, {"wave_rel_tol", w.rel_tol}, {"wave_abs_tol", w.abs_tol}};
}

std::vector<double> linspace(double lo, double hi, int count) {
  return GridSpec{lo, hi, count}.points();
}

FigureTable fig2a(const FigureOptions& opt) {
  constexpr int N = 51;
  constexpr double chi = 1.0;
  const double delta = 1.0 / (N - 1);
  FigureTable t;
  t.name = "fig2a";
  t.description = "homogeneous block in vacuum: discrete forces and the macroscopic density";
  t.parameters = {{"N", N}, {"chi", chi}, {"span", {0.0, 1.0}},
                  {"block", {-0.5 * delta, 1.0 + 0.5 * delta}}, {"tolerances", tolerances(opt)}};
  t.columns = {"j", "x", "chi", "force", "force_over_delta", "density_closed_form"};
  const auto chain = ScattererChain::uniform(0.0, delta, std::vector<double>(N, chi * delta));
  const ForceResult fr = force_all(chain, quad(opt), opt.threads);
  if (!fr.ok()) throw ConvergenceError("fig2a: " + fr.failure_messages.front());
  // Each particle stands for a cell of width delta, so the block edges sit
  // half a spacing outside the end particles.
  const ThreeLayerConfig layers{1.0, std::sqrt(1.0 + chi), 1.0, 1.0 + delta};
  for (int j = 0; j < N; ++j) {
    const double x = chain.position(j);
    t.rows.push_back({double(j), x, chi, fr.forces[j], fr.forces[j] / delta,
                      lerch_force_density(layers, x + 0.5 * delta)});
  }
  return t;
}

FigureTable fig2b(const FigureOptions& opt) {
  constexpr int N = 101;
  FigureTable t;
  t.name = "fig2b";
  t.description = "sech^2 profile: discrete forces";
  t.parameters = {{"N", N}, {"chi0", kSechChi0}, {"a", kSechA}, {"span", {kSpanLo, kSpanHi}},
                  {"tolerances", tolerances(opt)}};
  t.columns = {"j", "x", "chi", "force", "force_over_delta"};
  const auto profile = SusceptibilityProfile::sech2(kSechChi0, kSechA);
  const auto chain = chain_from_profile(profile, N, kSpanLo, kSpanHi);
  const ForceResult fr = force_all(chain, quad(opt), opt.threads);
  if (!fr.ok()) throw ConvergenceError("fig2b: " + fr.failure_messages.front());
  for (int j = 0; j < N; ++j) {
    t.rows.push_back({double(j), chain.position(j), chain.chi(j), fr.forces[j],
                      fr.forces[j] / chain.spacing()});
  }
  return t;
}

FigureTable fig4(const FigureOptions& opt) {
  constexpr double x = 0.1;
  constexpr int count = 61;
  FigureTable t;
  t.name = "fig4";
  t.description = "sech^2 total spectral stress minus kappa n and minus the full asymptote";
  t.parameters = {{"chi0", kSechChi0}, {"a", kSechA}, {"x", x},
                  {"kappa", {{"lo", 1.0}, {"hi", 200.0}, {"count", count}, {"spacing", "log"}}},
                  {"tolerances", tolerances(opt)}};
  t.columns = {"kappa", "sigma_total", "minus_kappa_n", "minus_asymptote"};
  const auto profile = SusceptibilityProfile::sech2(kSechChi0, kSechA);
  const double n = profile.n(x);
  for (double lk : linspace(0.0, std::log(200.0), count)) {
    const double kappa = std::exp(lk);
    const auto ws = solve_waves(profile, kappa);
    const double s = spectral_stresses(*ws, x).total();
    t.rows.push_back(
        {kappa, s, s - kappa * n, s - total_stress_asymptote(profile, x, kappa)});
  }
  return t;
}

FigureTable fig5(const FigureOptions& opt) {
  constexpr int count = 101;
  FigureTable t;
  t.name = "fig5";
  t.description = "sech^2 effective (renormalized) total spectral stress for kappa = 3..10";
  const EffectiveOptions eff;
  t.parameters = {{"chi0", kSechChi0}, {"a", kSechA}, {"x", {kSpanLo, kSpanHi, count}},
                  {"kappa", {3, 4, 5, 6, 7, 8, 9, 10}}, {"locality_margin", eff.margin},
                  {"tolerances", tolerances(opt)}};
  t.columns = {"kappa", "x", "chi", "sigma_eff", "sigma_E_eff", "sigma_M_eff", "anomaly",
               "kappa_min"};
  const auto profile = SusceptibilityProfile::sech2(kSechChi0, kSechA);
  for (int k = 3; k <= 10; ++k) {
    const auto ws = solve_waves(profile, k);
    for (double x : linspace(kSpanLo, kSpanHi, count)) {
      const double kmin = kappa_min_cutoff(profile, x, eff.margin);
      if (k < kmin) {
        t.rows.push_back({double(k), x, profile.chi(x), kNaN, kNaN, kNaN, kNaN, kmin});
        continue;
      }
      const StressBundle b = effective_stresses(*ws, profile, x, k, eff);
      t.rows.push_back({double(k), x, profile.chi(x), b.total_eff(), b.sigma_E_eff, b.sigma_M_eff,
                        b.anomaly, kmin});
    }
  }
  return t;
}

FigureTable fig6(const FigureOptions& opt) {
  constexpr int N = 101;
  constexpr double kappa = 8.0;
  FigureTable t;
  t.name = "fig6";
  t.description = "sech^2 spectral force: discrete, macroscopic limit and asymptote";
  t.parameters = {{"N", N}, {"chi0", kSechChi0}, {"a", kSechA}, {"span", {kSpanLo, kSpanHi}},
                  {"kappa", kappa}, {"tolerances", tolerances(opt)}};
  t.columns = {"j", "x", "chi", "spectral_force_over_delta", "macroscopic", "asymptote"};
  const auto profile = SusceptibilityProfile::sech2(kSechChi0, kSechA);
  const auto chain = chain_from_profile(profile, N, kSpanLo, kSpanHi);
  const auto ws = solve_waves(profile, kappa);
  for (int j = 0; j < N; ++j) {
    const double x = chain.position(j);
    t.rows.push_back({double(j), x, chain.chi(j), spectral_force(chain, j, kappa) / chain.spacing(),
                      force_density_spectral(*ws, x),
                      force_density_asymptotics(profile, x, kappa)});
  }
  return t;
}

// Three layers n1 < n2 < n3 (repulsive), chain over [-0.5, 1.5].
constexpr double kN1 = 1.2, kN2 = 1.5, kN3 = 1.8;

// Panel a: discrete forces on a chain over [-0.5, 1.5] with the macroscopic
// density of that finite sample and the closed form for half-infinite outer
// layers. Panel b: renormalized stress of the ideal three-layer system.
FigureTable fig7(const FigureOptions& opt) {
  constexpr int N = 101;
  constexpr int count = 81;
  const double lo = -0.5, hi = 1.5;
  const double delta = (hi - lo) / (N - 1);
  FigureTable t;
  t.name = "fig7";
  t.description = "three layers n1 < n2 < n3: panel 1 forces, panel 2 renormalized stress";
  t.parameters = {{"N", N}, {"n", {kN1, kN2, kN3}}, {"a", 1.0}, {"span", {lo, hi}},
                  {"stress_points", count}, {"tolerances", tolerances(opt)}};
  t.columns = {"panel", "x", "chi", "force_over_delta", "macroscopic", "closed_form",
               "sigma", "sigma_numeric"};
  const SusceptibilityProfile finite(PiecewiseConstant{
      {lo - 0.5 * delta, 0.0, 1.0, hi + 0.5 * delta},
      {0.0, kN1 * kN1 - 1.0, kN2 * kN2 - 1.0, kN3 * kN3 - 1.0, 0.0}});
  const auto chain = chain_from_profile(finite, N, lo, hi);
  const ForceResult fr = force_all(chain, quad(opt), opt.threads);
  if (!fr.ok()) throw ConvergenceError("fig7: " + fr.failure_messages.front());
  const ThreeLayerConfig layers{kN1, kN2, kN3, 1.0};
  DensityConfig dc;
  dc.quad = quad(opt);
  for (int j = 0; j < N; ++j) {
    const double x = chain.position(j);
    const bool edge = finite.is_interface(x);
    t.rows.push_back({1.0, x, chain.chi(j), fr.forces[j] / delta,
                      edge ? kNaN : integrated_force_density(finite, x, dc).value,
                      edge ? kNaN : lerch_force_density(layers, x), kNaN, kNaN});
  }

  const auto ideal = layers.profile();
  const double inside = lifshitz_force(layers, quad(opt)).closed_form;
  for (double x : linspace(lo, hi, count)) {
    if (ideal.is_interface(x)) continue;
    const double n = ideal.n(x);
    // sigma_E + sigma_M - n kappa = -v+ v- / (u+ - u-), free of cancellation.
    const std::function<double(double)> f = [&](double kappa) {
      const WaveSample s = solve_waves(ideal, kappa)->sample(x);
      return -s.vp * s.vm / s.gap();
    };
    const double numeric = romberg_integrate(f, quad(opt)).value / (2.0 * std::numbers::pi);
    t.rows.push_back({2.0, x, n * n - 1.0, kNaN, kNaN, kNaN,
                      (x > 0.0 && x < 1.0) ? inside : 0.0, numeric});
  }
  return t;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (v == 0.0) return "0";  // no negative zero
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string FigureTable::hash() const {
  const Json j = {{"name", name}, {"parameters", parameters}, {"version", kVersion}};
  return hex64(fnv1a64(j.dump()));
}

void FigureTable::write_csv(std::ostream& os) const {
  os << "# figure: " << name << '\n';
  os << "# description: " << description << '\n';
  os << "# config_hash: " << hash() << '\n';
  if (parameters.contains("tolerances")) os << "# tolerances: " << parameters["tolerances"].dump() << '\n';
  os << "# version: vdwchain " << kVersion << '\n';
  os << "# parameters: " << parameters.dump() << '\n';
  for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << columns[c];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_number(row[c]);
    os << '\n';
  }
}

void FigureTable::write_json(std::ostream& os) const {
  Json rows_json = Json::array();
  for (const auto& row : rows) {
    Json r = Json::array();
    for (double v : row) r.push_back(std::isnan(v) ? Json(nullptr) : Json(v));
    rows_json.push_back(std::move(r));
  }
  const Json j = {{"name", name},           {"description", description},
                  {"config_hash", hash()},  {"version", kVersion},
                  {"parameters", parameters}, {"columns", columns},
                  {"rows", std::move(rows_json)}};
  os << j.dump(1) << '\n';
}

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names = {"fig2a", "fig2b", "fig4", "fig5", "fig6",
                                                 "fig7"};
  return names;
}

FigureTable make_figure(const std::string& name, const FigureOptions& opt) {
  if (name == "fig2a") return fig2a(opt);
  if (name == "fig2b") return fig2b(opt);
  if (name == "fig4") return fig4(opt);
  if (name == "fig5") return fig5(opt);
  if (name == "fig6") return fig6(opt);
  if (name == "fig7") return fig7(opt);
  throw ConfigError("unknown figure '" + name + "'");
}

}  // namespace vdw
