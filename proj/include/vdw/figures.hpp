#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "vdw/config.hpp"

namespace vdw {

inline constexpr const char* kVersion = "1.0.0";

// Tabular data behind one figure, written as CSV with a commented header that
// records the parameters, tolerances, a hash of both and the code version.
struct FigureTable {
  std::string name;
  std::string description;
  Json parameters;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::string hash() const;
  void write_csv(std::ostream& os) const;
  // {"name", "description", "config_hash", "version", "parameters", "columns",
  //  "rows"}; NaN cells become null.
  void write_json(std::ostream& os) const;
};

struct FigureOptions {
  double tol = 1e-10;
  unsigned threads = 1;
};

// fig2a, fig2b, fig4, fig5, fig6, fig7.
const std::vector<std::string>& figure_names();
FigureTable make_figure(const std::string& name, const FigureOptions& opt = {});

// Formatting shared by every CSV writer: shortest exact decimal, "nan" for NaN.
std::string format_number(double v);

}  // namespace vdw
