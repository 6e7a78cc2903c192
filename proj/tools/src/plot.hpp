#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nrt::cli {

struct Series {
  std::string label;
  std::vector<double> y;
};

struct Panel {
  std::string y_label;
  std::vector<Series> series;
  std::vector<double> guides;  // horizontal reference lines
  bool log_y = false;
};

// Stacked line plots sharing one x axis, written as standalone SVG.
void write_svg(std::ostream& out, const std::string& x_label, const std::vector<double>& x,
               const std::vector<Panel>& panels);

}  // namespace nrt::cli
