#pragma once

#include "waymark/instance_io.hpp"

#include <optional>
#include <span>
#include <string>

namespace waymark
{

/// Self-contained SVG overlay: candidate sites, path and targets, chosen
/// landmarks with their covered edge intervals, and optionally the true and
/// estimated trajectories.
std::string render_svg(const Instance& instance, const Placement* placement,
                       std::span<const TrajectoryPoint> trajectory = {});

} // namespace waymark
