#include "vdw/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "vdw/errors.hpp"

namespace vdw {
namespace {

// Below this kappa every integrand of interest contributes nothing measurable
// once multiplied by the jacobian, and some would underflow internally.
constexpr double kKappaFloor = 1e-280;
constexpr int kColumns = 4;  // Richardson extrapolations on top of the trapezoid

KappaNode canonical(double nu) {
  KappaNode node;
  node.nu = nu;
  node.kappa = mixed_rule_transform(nu).kappa;
  if (nu == 0.0) return node;
  int level = 0;
  double scaled = nu;
  if (scaled == std::trunc(scaled)) {
    while (std::fmod(scaled, 2.0) == 0.0) {
      scaled /= 2.0;
      --level;
    }
  } else {
    while (scaled != std::trunc(scaled)) {
      scaled *= 2.0;
      ++level;
    }
  }
  node.level = level;
  node.index = static_cast<std::int64_t>(scaled);
  return node;
}

struct Evaluator {
  const KappaIntegrand& f;
  bool keyed;
  std::unordered_map<double, IntegrandSample> memo;
  std::size_t calls = 0;

  // Integrand times jacobian, for both channels.
  IntegrandSample operator()(double nu) {
    auto it = memo.find(nu);
    if (it != memo.end()) return it->second;
    const MixedRulePoint p = mixed_rule_transform(nu);
    IntegrandSample out{0.0, 0.0};
    if (p.kappa >= kKappaFloor && std::isfinite(p.kappa)) {
      KappaNode node = keyed ? canonical(nu) : KappaNode::unkeyed(nu);
      const IntegrandSample s = f(node);
      ++calls;
      out.value = s.value * p.jacobian;
      out.magnitude = std::max(std::abs(s.value), s.magnitude) * p.jacobian;
      if (!std::isfinite(out.value) || !std::isfinite(out.magnitude)) {
        std::ostringstream os;
        os << "non-finite integrand at kappa = " << p.kappa;
        throw ConvergenceError(os.str());
      }
    }
    memo.emplace(nu, out);
    return out;
  }
};

// Walks from `start` in direction `dir` until probe_count consecutive probes
// are negligible against the running peak. Returns the last probe position.
double search_edge(Evaluator& eval, double start, int dir, const QuadratureConfig& cfg,
                   double& peak, std::optional<double> stop) {
  int quiet = 0;
  double nu = start;
  for (;;) {
    const double m = eval(nu).magnitude;
    peak = std::max(peak, m);
    quiet = (m <= cfg.tol * peak) ? quiet + 1 : 0;
    if (quiet >= cfg.probe_count) return nu;
    const double next = nu + dir * cfg.probe_step;
    if (stop && (dir > 0 ? next >= *stop : next <= *stop)) return *stop;
    if (std::abs(next) > cfg.nu_limit) {
      std::ostringstream os;
      os << "cutoff search reached |nu| = " << cfg.nu_limit
         << " without the integrand decaying (kappa = " << mixed_rule_transform(next).kappa
         << "); the integral may diverge";
      throw ConvergenceError(os.str());
    }
    nu = next;
  }
}

}  // namespace

KappaNode KappaNode::lattice(int level, std::int64_t index) {
  return canonical(std::ldexp(static_cast<double>(index), -level));
}

KappaNode KappaNode::unkeyed(double nu) {
  KappaNode node;
  node.nu = nu;
  node.kappa = mixed_rule_transform(nu).kappa;
  node.keyed = false;
  node.level = 0;
  node.index = 0;
  return node;
}

MixedRulePoint mixed_rule_transform(double nu) {
  const double e = std::exp(-nu);
  const double kappa = std::exp(nu - e);
  return {kappa, kappa * (1.0 + e)};
}

double mixed_rule_inverse(double kappa) {
  if (!(kappa > 0.0)) throw RangeError("mixed_rule_inverse: kappa must be positive");
  const double target = std::log(kappa);
  double nu = target > 0.0 ? target : -std::log1p(-target);
  for (int it = 0; it < 200; ++it) {
    const double e = std::exp(-nu);
    const double step = (nu - e - target) / (1.0 + e);
    nu -= step;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(nu))) break;
  }
  return nu;
}

QuadratureResult romberg_integrate(const KappaIntegrand& f, const QuadratureConfig& cfg) {
  if (!(cfg.tol > 0.0)) throw RangeError("romberg_integrate: tol must be positive");
  if (cfg.max_levels < 1) throw RangeError("romberg_integrate: max_levels must be >= 1");
  {
    int e = 0;
    if (!(cfg.probe_step > 0.0) || std::frexp(cfg.probe_step, &e) != 0.5)
      throw RangeError("romberg_integrate: probe_step must be a power of two");
  }

  const bool keyed = !cfg.kappa_lo && !cfg.kappa_hi;
  Evaluator eval{f, keyed, {}, 0};

  std::optional<double> lo_fixed, hi_fixed;
  if (cfg.kappa_lo) lo_fixed = mixed_rule_inverse(*cfg.kappa_lo);
  if (cfg.kappa_hi) hi_fixed = mixed_rule_inverse(*cfg.kappa_hi);
  if (lo_fixed && hi_fixed && !(*hi_fixed > *lo_fixed))
    throw RangeError("romberg_integrate: kappa_hi must exceed kappa_lo");

  double lo = 0.0, hi = 0.0, peak = 0.0;
  if (lo_fixed && hi_fixed) {
    lo = *lo_fixed;
    hi = *hi_fixed;
  } else if (lo_fixed) {
    lo = *lo_fixed;
    hi = search_edge(eval, lo, +1, cfg, peak, std::nullopt);
  } else if (hi_fixed) {
    hi = *hi_fixed;
    lo = search_edge(eval, hi, -1, cfg, peak, std::nullopt);
  } else {
    hi = search_edge(eval, 0.0, +1, cfg, peak, std::nullopt);
    lo = search_edge(eval, 0.0, -1, cfg, peak, std::nullopt);
    // The peak only grows during the search, so the right edge found first
    // stays valid. Widen to a power-of-two width (extending into the kappa -> 0 side) so
    // that every refinement node is a dyadic rational on the global lattice.
    const double width = hi - lo;
    const double pow2 = std::exp2(std::ceil(std::log2(std::max(width, cfg.probe_step))));
    lo = hi - pow2;
  }

  const double H = hi - lo;
  std::vector<std::array<double, kColumns + 1>> R;
  auto a = eval(lo), b = eval(hi);
  double trap = 0.5 * H * (a.value + b.value);
  double mag = 0.5 * H * (a.magnitude + b.magnitude);
  R.push_back({});
  R[0][0] = trap;
  std::size_t nodes = 2;

  int fine_levels = 0;
  for (int r = 1;; ++r) {
    const double h = std::ldexp(H, -r);
    const std::int64_t count = std::int64_t{1} << (r - 1);
    double sum = 0.0, msum = 0.0;
    for (std::int64_t i = 0; i < count; ++i) {
      const auto s = eval(lo + static_cast<double>(2 * i + 1) * h);
      sum += s.value;
      msum += s.magnitude;
    }
    nodes += static_cast<std::size_t>(count);
    trap = 0.5 * trap + h * sum;
    mag = 0.5 * mag + h * msum;
    R.push_back({});
    R[r][0] = trap;
    const int K = std::min(r, kColumns);
    for (int k = 1; k <= K; ++k) {
      const double f4 = std::ldexp(1.0, 2 * k) - 1.0;
      R[r][k] = R[r][k - 1] + (R[r][k - 1] - R[r - 1][k - 1]) / f4;
    }
    const double value = R[r][K];
    const double prev = R[r - 1][std::min(r - 1, kColumns)];
    const double diff = std::abs(value - prev);
    if (2.0 * h <= cfg.max_step) {
      ++fine_levels;
      const double scale = std::max(std::abs(value), 1e-4 * mag);
      if (diff <= cfg.tol * scale) {
        QuadratureResult out;
        out.value = value;
        out.est_error = diff;
        out.nodes_used = nodes;
        out.nu_min = lo;
        out.nu_max = hi;
        out.levels = r;
        out.magnitude = mag;
        return out;
      }
      if (fine_levels >= cfg.max_levels) {
        std::ostringstream os;
        os.precision(17);
        os << "Romberg did not converge after " << r << " levels on nu in [" << lo << ", " << hi
           << "]: last diagonal " << value << ", previous " << prev << ", |diff| " << diff
           << ", target " << cfg.tol * scale << ", tableau row:";
        for (int k = 0; k <= K; ++k) os << ' ' << R[r][k];
        throw ConvergenceError(os.str());
      }
    }
  }
}

QuadratureResult romberg_integrate(const std::function<double(double)>& f,
                                   const QuadratureConfig& cfg) {
  return romberg_integrate(
      KappaIntegrand([&f](const KappaNode& node) {
        const double v = f(node.kappa);
        return IntegrandSample{v, std::abs(v)};
      }),
      cfg);
}

}  // namespace vdw
