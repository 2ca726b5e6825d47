#pragma once

#include "randrk/stability.hpp"

#include <vector>

namespace randrk::stability {

struct Polyline {
  std::vector<ComplexPoint> vertices;
  bool closed = false;
};

// Marching squares at the given level with linear interpolation along cell
// edges. Segments are chained into polylines, closed where the chain returns
// to its start and otherwise terminated at the grid boundary or at a cell
// with a NaN corner. Non-finite (+inf) corners count as above the level.
// Throws EmptyContour when no cell edge crosses the level.
std::vector<Polyline> contour_extract(const RegionGrid& grid, double level);

}  // namespace randrk::stability
