#include "plot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace nrt::cli {

namespace {

constexpr double kWidth = 720.0;
constexpr double kPanelHeight = 220.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 20.0;
constexpr double kTop = 20.0;
constexpr double kGap = 40.0;
constexpr const char* kColours[] = {"#c0392b", "#2c6fbb", "#27ae60", "#8e44ad"};

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!std::isfinite(lo)) {
      lo = 0.0;
      hi = 1.0;
    } else if (hi - lo < 1e-300) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

double transform(double v, bool log_y) {
  if (!log_y) return v;
  return v > 0.0 ? std::log10(v) : std::numeric_limits<double>::quiet_NaN();
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

}  // namespace

void write_svg(std::ostream& out, const std::string& x_label, const std::vector<double>& x,
               const std::vector<Panel>& panels) {
  const double height = kTop + panels.size() * (kPanelHeight + kGap) + 20.0;
  out << fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n",
      kWidth, height);
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  Range xr;
  for (double v : x) xr.add(v);
  xr.pad();
  const double plot_w = kWidth - kLeft - kRight;
  auto px = [&](double v) { return kLeft + (v - xr.lo) / (xr.hi - xr.lo) * plot_w; };

  for (std::size_t p = 0; p < panels.size(); ++p) {
    const Panel& panel = panels[p];
    const double top = kTop + p * (kPanelHeight + kGap);
    Range yr;
    for (const auto& s : panel.series)
      for (double v : s.y) yr.add(transform(v, panel.log_y));
    for (double g : panel.guides) yr.add(transform(g, panel.log_y));
    yr.pad();
    auto py = [&](double v) { return top + kPanelHeight - (v - yr.lo) / (yr.hi - yr.lo) * kPanelHeight; };

    out << fmt::format(
        "<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" fill=\"none\" stroke=\"black\"/>\n",
        kLeft, top, plot_w, kPanelHeight);
    out << fmt::format(
        "<text x=\"14\" y=\"{:.1f}\" transform=\"rotate(-90 14 {:.1f})\" text-anchor=\"middle\">{}{}</text>\n",
        top + kPanelHeight / 2, top + kPanelHeight / 2, panel.log_y ? "log10 " : "", escape(panel.y_label));
    out << fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{:.4g}</text>\n", kLeft - 4,
                       top + 10, yr.hi);
    out << fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{:.4g}</text>\n", kLeft - 4,
                       top + kPanelHeight, yr.lo);
    for (double g : panel.guides) {
      const double gy = py(transform(g, panel.log_y));
      if (!std::isfinite(gy)) continue;
      out << fmt::format(
          "<line x1=\"{:.1f}\" x2=\"{:.1f}\" y1=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"gray\" stroke-dasharray=\"2,3\"/>\n",
          kLeft, kLeft + plot_w, gy, gy);
    }
    for (std::size_t s = 0; s < panel.series.size(); ++s) {
      const auto& series = panel.series[s];
      std::string path;
      bool pen_down = false;
      for (std::size_t i = 0; i < x.size() && i < series.y.size(); ++i) {
        const double v = transform(series.y[i], panel.log_y);
        if (!std::isfinite(v)) {
          pen_down = false;
          continue;
        }
        path += fmt::format("{}{:.2f},{:.2f} ", pen_down ? "L" : "M", px(x[i]), py(v));
        pen_down = true;
      }
      const char* colour = kColours[s % std::size(kColours)];
      out << fmt::format("<path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>\n", path, colour);
      out << fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" fill=\"{}\">{}</text>\n", kLeft + 8,
                         top + 16 + 14 * s, colour, escape(series.label));
    }
  }
  const double bottom = kTop + panels.size() * (kPanelHeight + kGap) - kGap;
  out << fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\">{:.6g}</text>\n", kLeft, bottom + 16, xr.lo);
  out << fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{:.6g}</text>\n", kLeft + plot_w,
                     bottom + 16, xr.hi);
  out << fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{}</text>\n", kLeft + plot_w / 2,
                     bottom + 30, escape(x_label));
  out << "</svg>\n";
}

}  // namespace nrt::cli
