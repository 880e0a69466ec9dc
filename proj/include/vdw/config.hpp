#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "vdw/profile.hpp"

namespace vdw {

using Json = nlohmann::json;

// Profile <-> JSON. Kinds: {"kind":"vacuum"}, {"kind":"sech2","chi0":..,"a":..},
// {"kind":"piecewise","boundaries":[..],"chi":[..]},
// {"kind":"tabulated","x":[..],"chi":[..],"order":1|3}. Unknown keys throw
// ConfigError.
Json profile_to_json(const SusceptibilityProfile& profile);
SusceptibilityProfile profile_from_json(const Json& j);

struct GridSpec {
  double lo = 0.0;
  double hi = 1.0;
  int count = 1;

  std::vector<double> points() const;  // inclusive, uniform
  bool operator==(const GridSpec&) const = default;
};

struct RunConfig {
  std::string subcommand;
  std::optional<SusceptibilityProfile> profile;
  int N = 51;
  std::optional<double> x_start;
  std::optional<double> x_end;
  std::vector<double> alpha;    // explicit polarizabilities
  std::vector<double> indices;  // n1,n2,n3 for three-layer
  double a = 1.0;               // three-layer thickness
  std::optional<double> kappa;
  std::optional<GridSpec> kappa_range;
  std::optional<GridSpec> x_range;
  bool integrated = false;
  bool lifshitz = false;
  double tol = 1e-10;
  int max_levels = 20;
  std::optional<double> kappa_min_cutoff;
  double locality_margin = 10.0;
  unsigned threads = 1;
  std::string out;  // empty: stdout
  std::string format = "csv";
  std::vector<std::string> figures;  // subset for the figures subcommand

  void validate() const;  // throws ConfigError
};

Json run_config_to_json(const RunConfig& cfg);
RunConfig run_config_from_json(const Json& j);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

// FNV-1a over the canonical JSON dump; stable across runs and platforms.
std::uint64_t config_hash(const RunConfig& cfg);
std::string config_hash_hex(const RunConfig& cfg);

}  // namespace vdw
