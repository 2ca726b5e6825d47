#pragma once

#include "randrk/contour.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace randrk::svg {

struct ContourGroup {
  std::string label;
  std::string color;
  std::vector<stability::Polyline> lines;
};

struct PlotSpec {
  stability::Rect window;
  std::string title;
  int width = 640;
  int height = 640;
  bool allow_empty = false;
};

// Standalone SVG: frame, axes through the origin, ticks with labels, one <g>
// per group and a legend. Output depends only on the inputs.
// Throws EmptyContour when every group is empty and allow_empty is false.
std::string render(const PlotSpec& spec, const std::vector<ContourGroup>& groups);

void write_svg(const std::filesystem::path& path, const PlotSpec& spec,
               const std::vector<ContourGroup>& groups);

}  // namespace randrk::svg
