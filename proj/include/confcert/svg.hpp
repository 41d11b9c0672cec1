#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "confcert/geometry.hpp"

namespace confcert::svg {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

/// SVG path of the planar boundary using exact arcs.
inline std::string boundary_path(const BoundaryParam2D& bp) {
  std::ostringstream d;
  const auto& pieces = bp.pieces();
  const double r = bp.rounding();
  const auto start = bp.eval(0.0).position;
  d << "M " << num(start[0]) << ' ' << num(start[1]);
  for (const auto& p : pieces) {
    if (p.kind == BoundaryPiece2D::Kind::segment) {
      const Vec2 end = p.start + p.length * p.direction;
      d << " L " << num(end[0]) << ' ' << num(end[1]);
      continue;
    }
    // Split arcs so no single command spans more than half a turn.
    const int parts = p.span > std::numbers::pi - 1e-9 ? 2 : 1;
    for (int k = 1; k <= parts; ++k) {
      const double a = p.start_angle + p.span * k / parts;
      const Vec2 end = p.center + r * Vec2{std::cos(a), std::sin(a)};
      d << " A " << num(r) << ' ' << num(r) << " 0 0 1 " << num(end[0]) << ' ' << num(end[1]);
    }
  }
  d << " Z";
  return d.str();
}

/// Red below 1, through yellow at 1, to green at 2 and above.
inline std::string density_color(double normalized) {
  double t = std::clamp((normalized - 0.5) / 1.5, 0.0, 1.0);
  int red = 0, green = 0;
  if (t < 1.0 / 3.0) {
    red = 220;
    green = static_cast<int>(220 * 3 * t);
  } else {
    red = static_cast<int>(220 * (1.0 - (t - 1.0 / 3.0) * 1.5));
    green = 200;
  }
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", std::clamp(red, 0, 255), std::clamp(green, 0, 255), 40);
  return buf;
}

/// Document in math coordinates (y up) centered on the origin with half-width `extent`.
class Document {
 public:
  explicit Document(double extent, int pixels = 600) : extent_(extent), pixels_(pixels) {}

  void circle(const Vec2& c, double r, const std::string& stroke, const std::string& dash = "") {
    body_ << "  <circle cx=\"" << num(c[0]) << "\" cy=\"" << num(c[1]) << "\" r=\"" << num(r)
          << "\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << num(extent_ / 300) << '"';
    if (!dash.empty()) body_ << " stroke-dasharray=\"" << dash << '"';
    body_ << "/>\n";
  }

  void dot(const Vec2& c, const std::string& fill) {
    body_ << "  <circle cx=\"" << num(c[0]) << "\" cy=\"" << num(c[1]) << "\" r=\"" << num(extent_ / 80)
          << "\" fill=\"" << fill << "\" stroke=\"black\" stroke-width=\"" << num(extent_ / 600) << "\"/>\n";
  }

  void path(const std::string& d, const std::string& fill, const std::string& stroke) {
    body_ << "  <path d=\"" << d << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\" stroke-width=\""
          << num(extent_ / 200) << "\"/>\n";
  }

  void caption(const std::string& text) { captions_.push_back(text); }

  std::string str() const {
    std::ostringstream out;
    const double e = extent_;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << pixels_ << "\" height=\"" << pixels_ << "\" viewBox=\""
        << num(-e) << ' ' << num(-e) << ' ' << num(2 * e) << ' ' << num(2 * e) << "\">\n"
        << " <rect x=\"" << num(-e) << "\" y=\"" << num(-e) << "\" width=\"" << num(2 * e) << "\" height=\"" << num(2 * e)
        << "\" fill=\"white\"/>\n"
        << " <g transform=\"scale(1,-1)\">\n"
        << body_.str() << " </g>\n";
    double y = -e + e / 15;
    for (const auto& c : captions_) {
      out << " <text x=\"" << num(-e + e / 40) << "\" y=\"" << num(y) << "\" font-size=\"" << num(e / 22)
          << "\" font-family=\"monospace\">" << c << "</text>\n";
      y += e / 16;
    }
    out << "</svg>\n";
    return out.str();
  }

 private:
  double extent_;
  int pixels_;
  std::ostringstream body_;
  std::vector<std::string> captions_;
};

}  // namespace confcert::svg
