#include "cdb/svgout.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <limits>

#include "cdb/errors.hpp"

namespace cdb {

namespace {

constexpr std::array<const char*, 4> kFills = {"#dbe9f6", "#fbe3d5", "#e2f0d9",
                                               "#ece3f1"};
constexpr std::array<const char*, 4> kStrokes = {"#1f4e79", "#a34a1f", "#4a7a2a",
                                                 "#5b3a7e"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

struct Frame {
  double scale = 1.0;
  double ox = 0.0;  // world origin in pixel coordinates
  double oy = 0.0;
  double size = 480.0;

  double px(const Vec2& v) const { return ox + scale * v.x; }
  double py(const Vec2& v) const { return oy - scale * v.y; }  // y points up
};

Frame fit_frame(std::span<const Polygon2> bodies, const SvgOptions& opts) {
  double lo_x = std::numeric_limits<double>::infinity();
  double lo_y = lo_x;
  double hi_x = -lo_x;
  double hi_y = -lo_x;
  for (const Polygon2& b : bodies) {
    for (const Vec2& v : b.vertices()) {
      lo_x = std::min(lo_x, v.x);
      hi_x = std::max(hi_x, v.x);
      lo_y = std::min(lo_y, v.y);
      hi_y = std::max(hi_y, v.y);
    }
  }
  const double extent = std::max({hi_x - lo_x, hi_y - lo_y, 1e-6});
  Frame f;
  f.size = static_cast<double>(opts.size_px);
  const double usable = f.size * (1.0 - 2.0 * opts.margin);
  f.scale = usable / extent;
  const Vec2 center{0.5 * (lo_x + hi_x), 0.5 * (lo_y + hi_y)};
  f.ox = 0.5 * f.size - f.scale * center.x;
  f.oy = 0.5 * f.size + f.scale * center.y;
  return f;
}

void append_body(std::string& out, const Polygon2& b, const Frame& f,
                 std::size_t palette) {
  const char* fill = kFills[palette % kFills.size()];
  const char* stroke = kStrokes[palette % kStrokes.size()];
  if (b.is_point()) {
    const Vec2& v = b.vertices()[0];
    out += "  <circle cx=\"" + num(f.px(v)) + "\" cy=\"" + num(f.py(v)) +
           "\" r=\"3\" fill=\"" + std::string(stroke) + "\"/>\n";
    return;
  }
  std::string d = "M " + num(f.px(b.vertices()[0])) + " " +
                  num(f.py(b.vertices()[0]));
  for (std::size_t i = 1; i < b.size(); ++i)
    d += " L " + num(f.px(b.vertices()[i])) + " " + num(f.py(b.vertices()[i]));
  if (b.is_proper()) d += " Z";
  out += "  <path d=\"" + d + "\" fill=\"" +
         (b.is_proper() ? std::string(fill) : std::string("none")) +
         "\" fill-opacity=\"0.85\" stroke=\"" + std::string(stroke) +
         "\" stroke-width=\"2\" stroke-linejoin=\"round\"/>\n";
}

}  // namespace

std::string svg_document(std::span<const Polygon2> bodies, const SvgOptions& opts) {
  if (bodies.empty()) throw InvalidInput("svg: nothing to draw");
  for (const Polygon2& b : bodies)
    if (b.empty()) throw InvalidInput("svg: empty body");
  const Frame f = fit_frame(bodies, opts);
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(opts.size_px) + "\" height=\"" +
         std::to_string(opts.size_px) + "\" viewBox=\"0 0 " +
         std::to_string(opts.size_px) + " " + std::to_string(opts.size_px) +
         "\">\n";
  out += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (opts.draw_axes) {
    const double x0 = f.px({0.0, 0.0});
    const double y0 = f.py({0.0, 0.0});
    if (x0 >= 0.0 && x0 <= f.size)
      out += "  <line x1=\"" + num(x0) + "\" y1=\"0\" x2=\"" + num(x0) +
             "\" y2=\"" + num(f.size) + "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
    if (y0 >= 0.0 && y0 <= f.size)
      out += "  <line x1=\"0\" y1=\"" + num(y0) + "\" x2=\"" + num(f.size) +
             "\" y2=\"" + num(y0) + "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
  }
  // Draw back-to-front so the first body ends up on top.
  for (std::size_t i = bodies.size(); i-- > 0;)
    append_body(out, bodies[i], f, i);
  out += "</svg>\n";
  return out;
}

std::string svg_document(const Polygon2& body, const SvgOptions& opts) {
  return svg_document(std::span<const Polygon2>(&body, 1), opts);
}

void write_svg(const std::string& path, const std::string& document) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("svg: cannot write " + path);
  out << document;
  if (!out) throw InvalidInput("svg: write failed for " + path);
}

}  // namespace cdb
