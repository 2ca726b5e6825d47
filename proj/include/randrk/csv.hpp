#pragma once

#include "randrk/contour.hpp"
#include "randrk/experiments.hpp"
#include "randrk/stability.hpp"

#include <string>
#include <vector>

namespace randrk::csv {

// re,im,value in row-major (re outer, im inner) order.
std::string region(const stability::RegionGrid& grid);

// polyline_id,re,im
std::string contours(const std::vector<stability::Polyline>& lines);

// t,V[0..d),tau; the tau column is empty on row 0 and for deterministic schemes.
std::string trajectory(const Trajectory& traj);

// scheme,h,p,paths,value,std_error
std::string convergence_levels(const experiments::OrderFit& fit);

// scheme,slope,intercept,r2
std::string fit_summary(SchemeId scheme, const experiments::OrderFit& fit);

// t,V,exact,error
std::string stiff_path(const experiments::StiffPath& path);

struct StiffSummaryRow {
  SchemeId scheme;
  double h;
  std::uint64_t path;
  double max_error;
  bool finite;
};

// scheme,h,path,max_error,finite
std::string stiff_summary(const std::vector<StiffSummaryRow>& rows);

}  // namespace randrk::csv
