#include "vdw/config.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "vdw/errors.hpp"

namespace vdw {
namespace {

const std::set<std::string> kSubcommands = {"chain-force", "macro-density", "three-layer",
                                            "sech2",       "renorm-stress", "figures"};

void reject_unknown(const Json& j, std::initializer_list<const char*> allowed, const char* where) {
  if (!j.is_object()) throw ConfigError(std::string(where) + ": expected a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) throw ConfigError(std::string(where) + ": unknown key '" + it.key() + "'");
  }
}

template <class T>
T get(const Json& j, const char* key, const char* where) {
  if (!j.contains(key)) throw ConfigError(std::string(where) + ": missing key '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ConfigError(std::string(where) + ": bad value for '" + key + "': " + e.what());
  }
}

template <class T>
void get_if(const Json& j, const char* key, T& out, const char* where) {
  if (j.contains(key)) out = get<T>(j, key, where);
}

template <class T>
void get_opt(const Json& j, const char* key, std::optional<T>& out, const char* where) {
  if (j.contains(key) && !j.at(key).is_null()) out = get<T>(j, key, where);
}

Json grid_to_json(const GridSpec& g) { return {{"lo", g.lo}, {"hi", g.hi}, {"count", g.count}}; }

GridSpec grid_from_json(const Json& j) {
  reject_unknown(j, {"lo", "hi", "count"}, "grid");
  GridSpec g;
  g.lo = get<double>(j, "lo", "grid");
  g.hi = get<double>(j, "hi", "grid");
  g.count = get<int>(j, "count", "grid");
  return g;
}

}  // namespace

Json profile_to_json(const SusceptibilityProfile& profile) {
  return std::visit(
      [](const auto& k) -> Json {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Sech2>) {
          return {{"kind", "sech2"}, {"chi0", k.chi0}, {"a", k.a}};
        } else if constexpr (std::is_same_v<T, PiecewiseConstant>) {
          if (k.boundaries.empty() && k.chi.size() == 1 && k.chi[0] == 0.0) return {{"kind", "vacuum"}};
          return {{"kind", "piecewise"}, {"boundaries", k.boundaries}, {"chi", k.chi}};
        } else {
          return {{"kind", "tabulated"}, {"x", k.x}, {"chi", k.chi}, {"order", k.order}};
        }
      },
      profile.kind());
}

SusceptibilityProfile profile_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("profile: expected a JSON object");
  const std::string kind = get<std::string>(j, "kind", "profile");
  try {
    if (kind == "vacuum") {
      reject_unknown(j, {"kind"}, "profile");
      return SusceptibilityProfile::vacuum();
    }
    if (kind == "sech2") {
      reject_unknown(j, {"kind", "chi0", "a"}, "profile");
      return SusceptibilityProfile::sech2(get<double>(j, "chi0", "profile"),
                                          get<double>(j, "a", "profile"));
    }
    if (kind == "piecewise") {
      reject_unknown(j, {"kind", "boundaries", "chi"}, "profile");
      return SusceptibilityProfile(
          PiecewiseConstant{get<std::vector<double>>(j, "boundaries", "profile"),
                            get<std::vector<double>>(j, "chi", "profile")});
    }
    if (kind == "tabulated") {
      reject_unknown(j, {"kind", "x", "chi", "order"}, "profile");
      Tabulated t{get<std::vector<double>>(j, "x", "profile"),
                  get<std::vector<double>>(j, "chi", "profile"), 1};
      get_if(j, "order", t.order, "profile");
      return SusceptibilityProfile(std::move(t));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("profile: ") + e.what());
  }
  throw ConfigError("profile: unknown kind '" + kind + "'");
}

std::vector<double> GridSpec::points() const {
  std::vector<double> p;
  if (count <= 0) return p;
  p.reserve(count);
  if (count == 1) {
    p.push_back(lo);
    return p;
  }
  const double h = (hi - lo) / (count - 1);
  for (int i = 0; i < count; ++i) p.push_back(i + 1 == count ? hi : lo + i * h);
  return p;
}

void RunConfig::validate() const {
  if (!kSubcommands.count(subcommand)) throw ConfigError("unknown subcommand '" + subcommand + "'");
  if (N < 1) throw ConfigError("N must be at least 1");
  if (!(tol > 0.0 && tol < 1.0)) throw ConfigError("tol must lie in (0, 1)");
  if (max_levels < 2 || max_levels > 40) throw ConfigError("max_levels must lie in [2, 40]");
  if (format != "csv" && format != "json") throw ConfigError("format must be csv or json");
  if (threads < 1) throw ConfigError("threads must be at least 1");
  if (x_start && x_end && !(*x_end > *x_start)) throw ConfigError("x_end must exceed x_start");
  for (double v : alpha)
    if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError("alpha values must be finite and >= 0");
  if (!indices.empty() && indices.size() != 3) throw ConfigError("--n expects three indices n1,n2,n3");
  for (const auto* g : {&kappa_range, &x_range})
    if (*g && ((*g)->count < 1 || !((*g)->hi >= (*g)->lo)))
      throw ConfigError("grid ranges need count >= 1 and hi >= lo");
  if (kappa && !(*kappa > 0.0)) throw ConfigError("kappa must be positive");
  if (kappa_range && !(kappa_range->lo > 0.0)) throw ConfigError("kappa range must be positive");
  if (!(a > 0.0)) throw ConfigError("a must be positive");
}

Json run_config_to_json(const RunConfig& c) {
  Json j;
  j["subcommand"] = c.subcommand;
  j["profile"] = c.profile ? profile_to_json(*c.profile) : Json(nullptr);
  j["N"] = c.N;
  j["x_start"] = c.x_start ? Json(*c.x_start) : Json(nullptr);
  j["x_end"] = c.x_end ? Json(*c.x_end) : Json(nullptr);
  j["alpha"] = c.alpha;
  j["n"] = c.indices;
  j["a"] = c.a;
  j["kappa"] = c.kappa ? Json(*c.kappa) : Json(nullptr);
  j["kappa_range"] = c.kappa_range ? grid_to_json(*c.kappa_range) : Json(nullptr);
  j["x_range"] = c.x_range ? grid_to_json(*c.x_range) : Json(nullptr);
  j["integrated"] = c.integrated;
  j["lifshitz"] = c.lifshitz;
  j["tol"] = c.tol;
  j["max_levels"] = c.max_levels;
  j["kappa_min_cutoff"] = c.kappa_min_cutoff ? Json(*c.kappa_min_cutoff) : Json(nullptr);
  j["locality_margin"] = c.locality_margin;
  j["threads"] = c.threads;
  j["out"] = c.out;
  j["format"] = c.format;
  j["figures"] = c.figures;
  return j;
}

RunConfig run_config_from_json(const Json& j) {
  constexpr const char* w = "config";
  reject_unknown(j,
                 {"subcommand", "profile", "N", "x_start", "x_end", "alpha", "n", "a", "kappa",
                  "kappa_range", "x_range", "integrated", "lifshitz", "tol", "max_levels",
                  "kappa_min_cutoff", "locality_margin", "threads", "out", "format", "figures"},
                 w);
  RunConfig c;
  c.subcommand = get<std::string>(j, "subcommand", w);
  if (j.contains("profile") && !j["profile"].is_null()) c.profile = profile_from_json(j["profile"]);
  get_if(j, "N", c.N, w);
  get_opt(j, "x_start", c.x_start, w);
  get_opt(j, "x_end", c.x_end, w);
  get_if(j, "alpha", c.alpha, w);
  get_if(j, "n", c.indices, w);
  get_if(j, "a", c.a, w);
  get_opt(j, "kappa", c.kappa, w);
  if (j.contains("kappa_range") && !j["kappa_range"].is_null())
    c.kappa_range = grid_from_json(j["kappa_range"]);
  if (j.contains("x_range") && !j["x_range"].is_null()) c.x_range = grid_from_json(j["x_range"]);
  get_if(j, "integrated", c.integrated, w);
  get_if(j, "lifshitz", c.lifshitz, w);
  get_if(j, "tol", c.tol, w);
  get_if(j, "max_levels", c.max_levels, w);
  get_opt(j, "kappa_min_cutoff", c.kappa_min_cutoff, w);
  get_if(j, "locality_margin", c.locality_margin, w);
  get_if(j, "threads", c.threads, w);
  get_if(j, "out", c.out, w);
  get_if(j, "format", c.format, w);
  get_if(j, "figures", c.figures, w);
  c.validate();
  return c;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t config_hash(const RunConfig& cfg) {
  Json j = run_config_to_json(cfg);
  // Where the output goes and how many workers produce it do not change it.
  j.erase("out");
  j.erase("threads");
  return fnv1a64(j.dump());
}

std::string config_hash_hex(const RunConfig& cfg) { return hex64(config_hash(cfg)); }

}  // namespace vdw
