#pragma once

#include <span>
#include <string>

#include "cdb/planar.hpp"

namespace cdb {

// Emit-only SVG rendering of planar convex bodies. Higher-dimensional
// bodies are drawn through their complex-line shadows, which are computed
// by the caller; this module only knows polygons. Output is a standalone
// document with fixed-precision coordinates, so a given input always
// produces the same bytes.
struct SvgOptions {
  int size_px = 480;      // square canvas side
  double margin = 0.08;   // blank border as a fraction of the canvas
  bool draw_axes = true;  // light coordinate axes through the world origin
};

// One or several bodies on a common scale; the first body is drawn last
// (on top). Degenerate bodies render as dots and strokes.
std::string svg_document(std::span<const Polygon2> bodies,
                         const SvgOptions& opts = {});
std::string svg_document(const Polygon2& body, const SvgOptions& opts = {});

// Writes the document; failures throw InvalidInput.
void write_svg(const std::string& path, const std::string& document);

}  // namespace cdb
