#include "waymark/generate.hpp"

#include "waymark/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace waymark
{

std::vector<CandidateSite> grid_sites(double width, double height, double spacing)
{
    if (!(width > 0.0) || !(height > 0.0) || !(spacing > 0.0))
        throw std::invalid_argument("grid_sites: dimensions and spacing must be positive");

    // The epsilon keeps 4.0 / 0.5 from landing one column short.
    const auto nx = static_cast<std::size_t>(std::floor(width / spacing + 1e-9)) + 1;
    const auto ny = static_cast<std::size_t>(std::floor(height / spacing + 1e-9)) + 1;
    std::vector<CandidateSite> sites;
    sites.reserve(nx * ny);
    for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t i = 0; i < nx; ++i)
            sites.push_back({static_cast<SiteId>(sites.size()),
                             Point2(static_cast<double>(i) * spacing, static_cast<double>(j) * spacing)});
    return sites;
}

std::vector<Point2> order_tour(std::span<const Point2> points)
{
    std::vector<Point2> tour;
    if (points.empty())
        return tour;

    std::vector<bool> visited(points.size(), false);
    std::size_t current = 0;
    visited[0] = true;
    tour.push_back(points[0]);
    for (std::size_t n = 1; n < points.size(); ++n)
    {
        std::size_t best = points.size();
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < points.size(); ++k)
        {
            if (!visited[k] && distance(points[current], points[k]) < best_dist)
            {
                best = k;
                best_dist = distance(points[current], points[k]);
            }
        }
        visited[best] = true;
        tour.push_back(points[best]);
        current = best;
    }

    // 2-opt on an open path: reversing tour[i..j] swaps edges (i-1, i) and
    // (j, j+1); either may be absent at the ends.
    const std::size_t n = tour.size();
    bool improved = true;
    while (improved)
    {
        improved = false;
        for (std::size_t i = 0; i + 1 < n; ++i)
        {
            for (std::size_t j = i + 1; j < n; ++j)
            {
                double before = 0.0;
                double after = 0.0;
                if (i > 0)
                {
                    before += distance(tour[i - 1], tour[i]);
                    after += distance(tour[i - 1], tour[j]);
                }
                if (j + 1 < n)
                {
                    before += distance(tour[j], tour[j + 1]);
                    after += distance(tour[i], tour[j + 1]);
                }
                if (after < before - 1e-12)
                {
                    std::reverse(tour.begin() + static_cast<std::ptrdiff_t>(i),
                                 tour.begin() + static_cast<std::ptrdiff_t>(j) + 1);
                    improved = true;
                }
            }
        }
    }
    return tour;
}

Instance generate_instance(const GenerateOptions& options)
{
    if (!(options.field_width > 0.0) || !(options.field_height > 0.0))
        throw std::invalid_argument("generate_instance: field dimensions must be positive");
    if (options.n_targets < 2)
        throw std::invalid_argument("generate_instance: at least two targets required");

    Rng rng(options.seed);
    std::vector<Point2> targets;
    while (targets.size() < options.n_targets)
    {
        const double x = rng.uniform(0.0, options.field_width);
        const double y = rng.uniform(0.0, options.field_height);
        const Point2 p(x, y);
        if (std::none_of(targets.begin(), targets.end(), [&](const Point2& q) { return distance(p, q) < 1e-9; }))
            targets.push_back(p);
    }

    Instance instance;
    instance.camera = options.camera;
    instance.path = PathPlan(order_tour(targets));
    instance.sites = grid_sites(options.field_width, options.field_height, options.grid_spacing);
    instance.seed = options.seed;
    return instance;
}

} // namespace waymark
