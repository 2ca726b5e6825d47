#include "randrk/csv.hpp"

#include "randrk/io.hpp"

#include <sstream>

namespace randrk::csv {

using io::format_double;

std::string region(const stability::RegionGrid& grid) {
  std::ostringstream os;
  os << "re,im,value\n";
  for (int i = 0; i < grid.nx; ++i)
    for (int j = 0; j < grid.ny; ++j)
      os << format_double(grid.re(i)) << ',' << format_double(grid.im(j)) << ','
         << format_double(grid.values(i, j)) << '\n';
  return os.str();
}

std::string contours(const std::vector<stability::Polyline>& lines) {
  std::ostringstream os;
  os << "polyline_id,re,im\n";
  for (std::size_t k = 0; k < lines.size(); ++k)
    for (const auto& v : lines[k].vertices)
      os << k << ',' << format_double(v.re) << ',' << format_double(v.im) << '\n';
  return os.str();
}

std::string trajectory(const Trajectory& traj) {
  std::ostringstream os;
  const auto d = traj.states.empty() ? 1 : traj.states.front().size();
  os << 't';
  if (d == 1) {
    os << ",V";
  } else {
    for (Eigen::Index i = 0; i < d; ++i) os << ",V" << i;
  }
  os << ",tau\n";
  const bool randomized = is_randomized(traj.scheme);
  for (std::size_t j = 0; j < traj.states.size(); ++j) {
    os << format_double(traj.grid.t(j));
    for (Eigen::Index i = 0; i < d; ++i) os << ',' << format_double(traj.states[j][i]);
    os << ',';
    // Deterministic schemes report their effective tau of 1/2.
    if (j > 0) os << format_double(randomized ? traj.taus[j - 1] : 0.5);
    os << '\n';
  }
  return os.str();
}

std::string convergence_levels(const experiments::OrderFit& fit) {
  std::ostringstream os;
  os << "scheme,h,p,paths,value,std_error\n";
  for (const auto& e : fit.levels)
    os << to_string(e.scheme) << ',' << format_double(e.h) << ',' << format_double(e.p) << ','
       << e.paths << ',' << format_double(e.value) << ',' << format_double(e.std_error) << '\n';
  return os.str();
}

std::string fit_summary(SchemeId scheme, const experiments::OrderFit& fit) {
  std::ostringstream os;
  os << "scheme,slope,intercept,r2\n"
     << to_string(scheme) << ',' << format_double(fit.slope) << ','
     << format_double(fit.intercept) << ',' << format_double(fit.r2) << '\n';
  return os.str();
}

std::string stiff_path(const experiments::StiffPath& path) {
  std::ostringstream os;
  os << "t,V,exact,error\n";
  for (const auto& r : path.rows)
    os << format_double(r.t) << ',' << format_double(r.v) << ',' << format_double(r.exact) << ','
       << format_double(r.error) << '\n';
  return os.str();
}

std::string stiff_summary(const std::vector<StiffSummaryRow>& rows) {
  std::ostringstream os;
  os << "scheme,h,path,max_error,finite\n";
  for (const auto& r : rows)
    os << to_string(r.scheme) << ',' << format_double(r.h) << ',' << r.path << ','
       << format_double(r.max_error) << ',' << (r.finite ? "true" : "false") << '\n';
  return os.str();
}

}  // namespace randrk::csv
