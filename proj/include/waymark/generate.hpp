#pragma once

#include "waymark/instance_io.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace waymark
{

struct GenerateOptions
{
    double field_width = 4.0;
    double field_height = 8.0;
    std::size_t n_targets = 6;
    double grid_spacing = 0.5;
    std::uint64_t seed = 1;
    CameraSpec camera{2.0, deg_to_rad(50.0), 0.05};
};

/// Regular grid over [0, width] x [0, height], both boundaries included,
/// x varying fastest.
std::vector<CandidateSite> grid_sites(double width, double height, double spacing);

/// Open tour through all points: nearest neighbour from the first point,
/// then 2-opt segment reversals until no move shortens the path.
std::vector<Point2> order_tour(std::span<const Point2> points);

/// Uniform random targets ordered into a tour, with grid candidate sites.
/// Deterministic for a given seed.
Instance generate_instance(const GenerateOptions& options);

} // namespace waymark
