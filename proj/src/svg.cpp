#include "randrk/svg.hpp"

#include "randrk/error.hpp"
#include "randrk/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace randrk::svg {

namespace {

constexpr double kMarginLeft = 64.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 48.0;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string label(double x) {
  if (std::abs(x) < 1e-12) x = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
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

double nice_step(double range) {
  const double raw = range / 8.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0})
    if (m * mag >= raw) return m * mag;
  return 10.0 * mag;
}

class Frame {
 public:
  Frame(const PlotSpec& spec)
      : w_(spec.window),
        left_(kMarginLeft),
        top_(kMarginTop),
        width_(spec.width - kMarginLeft - kMarginRight),
        height_(spec.height - kMarginTop - kMarginBottom) {}

  double x(double re) const { return left_ + (re - w_.re_min) / (w_.re_max - w_.re_min) * width_; }
  double y(double im) const { return top_ + (w_.im_max - im) / (w_.im_max - w_.im_min) * height_; }
  double left() const { return left_; }
  double top() const { return top_; }
  double right() const { return left_ + width_; }
  double bottom() const { return top_ + height_; }
  double width() const { return width_; }
  double height() const { return height_; }

 private:
  stability::Rect w_;
  double left_, top_, width_, height_;
};

}  // namespace

std::string render(const PlotSpec& spec, const std::vector<ContourGroup>& groups) {
  require(spec.width > kMarginLeft + kMarginRight && spec.height > kMarginTop + kMarginBottom,
          "svg: canvas too small");
  require(spec.window.re_min < spec.window.re_max && spec.window.im_min < spec.window.im_max,
          "svg: degenerate window");
  bool any = false;
  for (const auto& g : groups) any = any || !g.lines.empty();
  if (!any && !spec.allow_empty) fail(ErrorKind::EmptyContour, "svg: nothing to draw");

  const Frame f(spec);
  const auto& w = spec.window;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\""
     << spec.height << "\" viewBox=\"0 0 " << spec.width << ' ' << spec.height << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<defs><clipPath id=\"plot\"><rect x=\"" << num(f.left()) << "\" y=\"" << num(f.top())
     << "\" width=\"" << num(f.width()) << "\" height=\"" << num(f.height())
     << "\"/></clipPath></defs>\n";
  if (!spec.title.empty())
    os << "<text x=\"" << num(spec.width / 2.0) << "\" y=\"24\" text-anchor=\"middle\" "
       << "font-family=\"sans-serif\" font-size=\"15\">" << escape(spec.title) << "</text>\n";

  // Frame, axes and ticks.
  os << "<g id=\"axes\" stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n"
     << "<rect x=\"" << num(f.left()) << "\" y=\"" << num(f.top()) << "\" width=\""
     << num(f.width()) << "\" height=\"" << num(f.height()) << "\"/>\n";
  if (w.re_min <= 0.0 && 0.0 <= w.re_max)
    os << "<line x1=\"" << num(f.x(0)) << "\" y1=\"" << num(f.top()) << "\" x2=\""
       << num(f.x(0)) << "\" y2=\"" << num(f.bottom()) << "\" stroke=\"#888\"/>\n";
  if (w.im_min <= 0.0 && 0.0 <= w.im_max)
    os << "<line x1=\"" << num(f.left()) << "\" y1=\"" << num(f.y(0)) << "\" x2=\""
       << num(f.right()) << "\" y2=\"" << num(f.y(0)) << "\" stroke=\"#888\"/>\n";
  os << "</g>\n<g id=\"ticks\" font-family=\"sans-serif\" font-size=\"11\">\n";
  const double sx = nice_step(w.re_max - w.re_min);
  for (long k = std::lround(std::ceil(w.re_min / sx - 1e-9)); k * sx <= w.re_max + 1e-9 * sx; ++k) {
    const double v = k * sx;
    os << "<line x1=\"" << num(f.x(v)) << "\" y1=\"" << num(f.bottom()) << "\" x2=\""
       << num(f.x(v)) << "\" y2=\"" << num(f.bottom() + 5) << "\" stroke=\"black\"/>"
       << "<text x=\"" << num(f.x(v)) << "\" y=\"" << num(f.bottom() + 18)
       << "\" text-anchor=\"middle\">" << label(v) << "</text>\n";
  }
  const double sy = nice_step(w.im_max - w.im_min);
  for (long k = std::lround(std::ceil(w.im_min / sy - 1e-9)); k * sy <= w.im_max + 1e-9 * sy; ++k) {
    const double v = k * sy;
    os << "<line x1=\"" << num(f.left() - 5) << "\" y1=\"" << num(f.y(v)) << "\" x2=\""
       << num(f.left()) << "\" y2=\"" << num(f.y(v)) << "\" stroke=\"black\"/>"
       << "<text x=\"" << num(f.left() - 8) << "\" y=\"" << num(f.y(v) + 4)
       << "\" text-anchor=\"end\">" << label(v) << "</text>\n";
  }
  os << "<text x=\"" << num(f.left() + f.width() / 2) << "\" y=\"" << num(f.bottom() + 38)
     << "\" text-anchor=\"middle\">Re z</text>\n"
     << "<text x=\"16\" y=\"" << num(f.top() + f.height() / 2)
     << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << num(f.top() + f.height() / 2)
     << ")\">Im z</text>\n</g>\n";

  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto& group = groups[g];
    os << "<g id=\"contour-" << g << "\" stroke=\"" << escape(group.color)
       << "\" stroke-width=\"1.5\" fill=\"none\" clip-path=\"url(#plot)\">\n";
    for (const auto& line : group.lines) {
      if (line.vertices.empty()) continue;
      os << "<path d=\"";
      for (std::size_t k = 0; k < line.vertices.size(); ++k) {
        const auto& v = line.vertices[k];
        os << (k == 0 ? "M" : " L") << num(f.x(v.re)) << ',' << num(f.y(v.im));
      }
      if (line.closed) os << " Z";
      os << "\"/>\n";
    }
    os << "</g>\n";
  }

  os << "<g id=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const double y = f.top() + 16.0 + 16.0 * static_cast<double>(g);
    os << "<line x1=\"" << num(f.left() + 10) << "\" y1=\"" << num(y - 4) << "\" x2=\""
       << num(f.left() + 30) << "\" y2=\"" << num(y - 4) << "\" stroke=\""
       << escape(groups[g].color) << "\" stroke-width=\"2\"/>"
       << "<text x=\"" << num(f.left() + 36) << "\" y=\"" << num(y) << "\">"
       << escape(groups[g].label) << "</text>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

void write_svg(const std::filesystem::path& path, const PlotSpec& spec,
               const std::vector<ContourGroup>& groups) {
  io::write_file_atomic(path, render(spec, groups));
}

}  // namespace randrk::svg
