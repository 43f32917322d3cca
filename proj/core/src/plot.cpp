#include "stylo/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "stylo/error.hpp"
#include "stylo/util.hpp"

namespace stylo {
namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  return s == "-0.00" ? "0.00" : s;
}

std::string tick_label(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string kde_overlay_svg(const std::string& title, std::span<const KdeCurve> curves, const PlotStyle& style) {
  if (curves.empty()) throw ContractError("kde_overlay_svg: no curves");
  if (style.palette.empty()) throw ContractError("kde_overlay_svg: empty palette");
  double x_min = HUGE_VAL;
  double x_max = -HUGE_VAL;
  double y_max = 0.0;
  for (const auto& c : curves) {
    if (c.grid.empty()) continue;
    x_min = std::min(x_min, c.grid.front());
    x_max = std::max(x_max, c.grid.back());
    for (double d : c.density) y_max = std::max(y_max, d);
  }
  if (!(x_max > x_min)) {
    x_min -= 0.5;
    x_max += 0.5;
  }
  if (!(y_max > 0.0)) y_max = 1.0;
  y_max *= 1.05;

  const double plot_w = style.width - style.margin_left - style.margin_right;
  const double plot_h = style.height - style.margin_top - style.margin_bottom;
  auto sx = [&](double x) { return style.margin_left + (x - x_min) / (x_max - x_min) * plot_w; };
  auto sy = [&](double y) { return style.margin_top + plot_h - y / y_max * plot_h; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(style.width) + "\" height=\"" +
         std::to_string(style.height) + "\" viewBox=\"0 0 " + std::to_string(style.width) + " " +
         std::to_string(style.height) + "\" font-family=\"" + xml_escape(style.font_family) + "\" font-size=\"" +
         std::to_string(style.font_size) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + num(style.margin_left + plot_w / 2) + "\" y=\"" + num(style.margin_top / 2.0 + 4) +
         "\" text-anchor=\"middle\">" + xml_escape(title) + "</text>\n";
  const double x0 = style.margin_left;
  const double y0 = style.margin_top + plot_h;
  svg += "<line x1=\"" + num(x0) + "\" y1=\"" + num(y0) + "\" x2=\"" + num(x0 + plot_w) + "\" y2=\"" + num(y0) +
         "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + num(x0) + "\" y1=\"" + num(style.margin_top) + "\" x2=\"" + num(x0) + "\" y2=\"" +
         num(y0) + "\" stroke=\"black\"/>\n";
  constexpr int kTicks = 5;
  for (int t = 0; t <= kTicks; ++t) {
    const double xv = x_min + (x_max - x_min) * t / kTicks;
    const double yv = y_max * t / kTicks;
    svg += "<line x1=\"" + num(sx(xv)) + "\" y1=\"" + num(y0) + "\" x2=\"" + num(sx(xv)) + "\" y2=\"" +
           num(y0 + 5) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + num(sx(xv)) + "\" y=\"" + num(y0 + 18) + "\" text-anchor=\"middle\">" +
           tick_label(xv) + "</text>\n";
    svg += "<line x1=\"" + num(x0 - 5) + "\" y1=\"" + num(sy(yv)) + "\" x2=\"" + num(x0) + "\" y2=\"" +
           num(sy(yv)) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + num(x0 - 8) + "\" y=\"" + num(sy(yv) + 4) + "\" text-anchor=\"end\">" +
           tick_label(yv) + "</text>\n";
  }
  svg += "<text x=\"" + num(x0 + plot_w / 2) + "\" y=\"" + num(style.height - 10.0) +
         "\" text-anchor=\"middle\">value</text>\n";
  svg += "<text x=\"15\" y=\"" + num(style.margin_top + plot_h / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 15 " +
         num(style.margin_top + plot_h / 2) + ")\">density</text>\n";

  for (std::size_t k = 0; k < curves.size(); ++k) {
    const std::string& color = style.palette[k % style.palette.size()];
    std::string points;
    for (std::size_t i = 0; i < curves[k].grid.size(); ++i) {
      if (i > 0) points += ' ';
      points += num(sx(curves[k].grid[i])) + "," + num(sy(curves[k].density[i]));
    }
    svg += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
    const double ly = style.margin_top + 10.0 + 20.0 * static_cast<double>(k);
    const double lx = x0 + plot_w + 15.0;
    svg += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(lx + 20) + "\" y2=\"" + num(ly) +
           "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + num(lx + 26) + "\" y=\"" + num(ly + 4) + "\">" + xml_escape(curves[k].group_key) +
           "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace stylo
