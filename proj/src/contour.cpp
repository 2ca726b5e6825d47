#include "randrk/contour.hpp"

#include "randrk/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <unordered_map>

namespace randrk::stability {

namespace {

struct Segment {
  long long e0;
  long long e1;
};

class EdgeIndex {
 public:
  EdgeIndex(int nx, int ny) : nx_(nx), horizontal_(static_cast<long long>(nx - 1) * ny) {}

  // Edge (i, j) -> (i + 1, j).
  long long horizontal(int i, int j) const { return static_cast<long long>(j) * (nx_ - 1) + i; }
  // Edge (i, j) -> (i, j + 1).
  long long vertical(int i, int j) const {
    return horizontal_ + static_cast<long long>(j) * nx_ + i;
  }

 private:
  int nx_;
  long long horizontal_;
};

double crossing_fraction(double va, double vb, double level) {
  if (!std::isfinite(va)) return 1.0;
  if (!std::isfinite(vb)) return 0.0;
  const double t = (level - va) / (vb - va);
  return std::clamp(t, 0.0, 1.0);
}

}  // namespace

std::vector<Polyline> contour_extract(const RegionGrid& grid, double level) {
  require(grid.nx >= 2 && grid.ny >= 2, "contour_extract: grid too small");
  require(grid.values.rows() == grid.nx && grid.values.cols() == grid.ny,
          "contour_extract: value matrix does not match grid size");

  const EdgeIndex edges(grid.nx, grid.ny);
  std::unordered_map<long long, ComplexPoint> points;
  std::vector<Segment> segments;

  auto edge_point = [&](long long id, int ia, int ja, int ib, int jb) {
    if (points.count(id)) return;
    const double va = grid.values(ia, ja);
    const double vb = grid.values(ib, jb);
    const double t = crossing_fraction(va, vb, level);
    const double ra = grid.re(ia), rb = grid.re(ib);
    const double ma = grid.im(ja), mb = grid.im(jb);
    points.emplace(id, ComplexPoint{ra + t * (rb - ra), ma + t * (mb - ma)});
  };

  for (int j = 0; j + 1 < grid.ny; ++j) {
    for (int i = 0; i + 1 < grid.nx; ++i) {
      const std::array<double, 4> v{grid.values(i, j), grid.values(i + 1, j),
                                    grid.values(i + 1, j + 1), grid.values(i, j + 1)};
      if (std::isnan(v[0]) || std::isnan(v[1]) || std::isnan(v[2]) || std::isnan(v[3])) continue;
      int mask = 0;
      for (int k = 0; k < 4; ++k)
        if (v[k] >= level) mask |= 1 << k;
      if (mask == 0 || mask == 15) continue;

      const long long bottom = edges.horizontal(i, j);
      const long long right = edges.vertical(i + 1, j);
      const long long top = edges.horizontal(i, j + 1);
      const long long left = edges.vertical(i, j);
      const bool b0 = mask & 1, b1 = mask & 2, b2 = mask & 4, b3 = mask & 8;
      if (b0 != b1) edge_point(bottom, i, j, i + 1, j);
      if (b1 != b2) edge_point(right, i + 1, j, i + 1, j + 1);
      if (b2 != b3) edge_point(top, i, j + 1, i + 1, j + 1);
      if (b3 != b0) edge_point(left, i, j, i, j + 1);

      if (mask == 5 || mask == 10) {
        // Saddle: the cell-centre average decides which corners connect.
        double centre = 0.0;
        for (double x : v) centre += x;
        const bool centre_above = centre / 4.0 >= level;
        const bool cut_corners_10_and_01 = (mask == 5) == centre_above;
        if (cut_corners_10_and_01) {
          segments.push_back({bottom, right});
          segments.push_back({top, left});
        } else {
          segments.push_back({left, bottom});
          segments.push_back({right, top});
        }
        continue;
      }
      std::array<long long, 2> hit{};
      int count = 0;
      if (b0 != b1) hit[count++] = bottom;
      if (b1 != b2) hit[count++] = right;
      if (b2 != b3) hit[count++] = top;
      if (b3 != b0) hit[count++] = left;
      segments.push_back({hit[0], hit[1]});
    }
  }

  if (segments.empty()) fail(ErrorKind::EmptyContour, "no cell edge crosses the contour level");

  std::unordered_map<long long, std::array<int, 2>> incident;
  for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
    for (long long e : {segments[s].e0, segments[s].e1}) {
      auto [it, inserted] = incident.try_emplace(e, std::array<int, 2>{-1, -1});
      auto& slots = it->second;
      (slots[0] < 0 ? slots[0] : slots[1]) = s;
    }
  }

  std::vector<bool> used(segments.size(), false);
  auto next_segment = [&](long long edge, int from) {
    const auto& slots = incident.at(edge);
    const int other = slots[0] == from ? slots[1] : slots[0];
    return (other >= 0 && !used[other]) ? other : -1;
  };
  auto far_end = [&](int s, long long edge) {
    return segments[s].e0 == edge ? segments[s].e1 : segments[s].e0;
  };

  std::vector<Polyline> lines;
  for (int s0 = 0; s0 < static_cast<int>(segments.size()); ++s0) {
    if (used[s0]) continue;
    used[s0] = true;
    std::deque<long long> chain{segments[s0].e0, segments[s0].e1};
    bool closed = false;

    int cur = s0;
    for (;;) {
      const int nxt = next_segment(chain.back(), cur);
      if (nxt < 0) break;
      used[nxt] = true;
      const long long e = far_end(nxt, chain.back());
      cur = nxt;
      if (e == chain.front()) {
        closed = true;
        chain.push_back(e);
        break;
      }
      chain.push_back(e);
    }
    if (!closed) {
      cur = s0;
      for (;;) {
        const int nxt = next_segment(chain.front(), cur);
        if (nxt < 0) break;
        used[nxt] = true;
        chain.push_front(far_end(nxt, chain.front()));
        cur = nxt;
      }
    }

    Polyline line;
    line.closed = closed;
    line.vertices.reserve(chain.size());
    for (long long e : chain) line.vertices.push_back(points.at(e));
    lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace randrk::stability
