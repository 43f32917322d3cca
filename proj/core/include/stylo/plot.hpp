#pragma once

#include <span>
#include <string>
#include <vector>

#include "stylo/stats.hpp"

namespace stylo {

struct PlotStyle {
  int width = 720;
  int height = 440;
  int margin_left = 70;
  int margin_right = 160;
  int margin_top = 40;
  int margin_bottom = 50;
  std::vector<std::string> palette = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                      "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  std::string font_family = "sans-serif";
  int font_size = 12;
};

// One density curve per group on shared axes, with a legend keyed by
// group_key. Coordinates are printed with two decimals.
std::string kde_overlay_svg(const std::string& title, std::span<const KdeCurve> curves, const PlotStyle& style = {});

}  // namespace stylo
