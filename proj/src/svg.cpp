#include "amoebot/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace amoebot {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;
constexpr double kScale = 14.0;
constexpr double kRadius = 5.6;

struct Pixel {
  double x, y;
};

Pixel to_pixel(AxialCoord c) {
  return {kScale * kSqrt3 * (c.q + c.r / 2.0), kScale * 1.5 * c.r};
}

const char* ring_color(const Particle& p) {
  if (p.crashed) return "#555555";
  if (p.role == Role::Root) return "#000000";
  if (p.stress) return "#d62728";
  if (p.inhibit) return "#e0a800";
  if (p.role == Role::Idle) return "#b0b0b0";
  return "#2ca02c";
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

std::string render_svg(const SystemState& s) {
  double min_x = 1e18, min_y = 1e18, max_x = -1e18, max_y = -1e18;
  for (const auto& [c, p] : s.occupancy()) {
    Pixel px = to_pixel(c);
    min_x = std::min(min_x, px.x);
    min_y = std::min(min_y, px.y);
    max_x = std::max(max_x, px.x);
    max_y = std::max(max_y, px.y);
  }
  if (s.occupancy().empty()) min_x = min_y = max_x = max_y = 0.0;
  double margin = 2.0 * kRadius + 4.0;

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"";
  out += fmt(min_x - margin) + " " + fmt(min_y - margin) + " " +
         fmt(max_x - min_x + 2 * margin) + " " +
         fmt(max_y - min_y + 2 * margin) + "\">\n";
  out += "<rect x=\"" + fmt(min_x - margin) + "\" y=\"" + fmt(min_y - margin) +
         "\" width=\"" + fmt(max_x - min_x + 2 * margin) + "\" height=\"" +
         fmt(max_y - min_y + 2 * margin) + "\" fill=\"white\"/>\n";

  for (const auto& [c, p] : s.occupancy()) {
    Pixel px = to_pixel(c);
    const char* color = ring_color(p);
    double intensity =
        std::clamp(p.e_bat / std::max(s.kappa(), 1e-12), 0.0, 1.0);
    out += "<circle class=\"particle\" data-q=\"" + std::to_string(c.q) +
           "\" data-r=\"" + std::to_string(c.r) + "\" cx=\"" + fmt(px.x) +
           "\" cy=\"" + fmt(px.y) + "\" r=\"" + fmt(kRadius) + "\" fill=\"" +
           color + "\" fill-opacity=\"" + fmt(p.crashed ? 0.35 : intensity) +
           "\" stroke=\"" + color + "\" stroke-width=\"1.7\"/>\n";
    if (p.parent && !p.crashed) {
      AxialCoord off = kDirectionOffsets[p.parent->label()];
      Pixel tip = to_pixel({c.q + off.q, c.r + off.r});
      double tx = px.x + 0.45 * (tip.x - px.x);
      double ty = px.y + 0.45 * (tip.y - px.y);
      out += "<line x1=\"" + fmt(px.x) + "\" y1=\"" + fmt(px.y) + "\" x2=\"" +
             fmt(tx) + "\" y2=\"" + fmt(ty) +
             "\" stroke=\"#333333\" stroke-width=\"1.1\"/>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace amoebot
