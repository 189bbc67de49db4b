#pragma once

#include <string>

#include "amoebot/system.hpp"

namespace amoebot {

// One frame in the style of the simulation figures: fill intensity tracks
// e_bat/kappa, ring color encodes state (root black, stress red,
// inhibit-only yellow, no flags green), a tick marks the parent direction.
std::string render_svg(const SystemState& s);

}  // namespace amoebot
