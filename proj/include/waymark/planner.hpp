#pragma once

#include "waymark/cover.hpp"
#include "waymark/geometry.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace waymark
{

enum class FieldOfView
{
    sector,   ///< forward cone of the camera's view angle
    circular, ///< omnidirectional disc of the camera's range
};

/// Path-level landmark selection. Edge indices are 0-based.
struct Placement
{
    /// Union over edges, ascending id, each site once.
    std::vector<CandidateSite> sites;
    /// Greedy selection order per edge.
    std::vector<std::vector<SiteId>> per_edge;
    /// Edge-local intervals of the chosen sites, parallel to `per_edge`.
    std::vector<std::vector<CoverInterval>> per_edge_intervals;

    std::size_t total() const { return sites.size(); }
    std::vector<SiteId> site_ids() const;

    friend bool operator==(const Placement&, const Placement&) = default;
};

class EdgeInfeasible : public std::runtime_error
{
public:
    EdgeInfeasible(std::size_t edge_index, double local_uncovered_at, Point2 world_uncovered_at);

    std::size_t edge_index() const { return edge_index_; }
    double local_uncovered_at() const { return local_; }
    const Point2& uncovered_at() const { return world_; }

private:
    std::size_t edge_index_;
    double local_;
    Point2 world_;
};

class AllSitesFiltered : public std::runtime_error
{
public:
    AllSitesFiltered();
};

/// Visibility intervals of every site on one edge, sites with no coverage
/// omitted.
CoverProblem build_cover_problem(const PathPlan& path, std::size_t edge, std::span<const CandidateSite> sites,
                                 const CameraSpec& cam, FieldOfView fov = FieldOfView::sector);

/// Clearance filter, then one greedy double cover per edge, then the union.
/// Throws EdgeInfeasible for the lowest-index edge without a cover.
Placement plan_placement(const PathPlan& path, std::span<const CandidateSite> sites, const CameraSpec& cam,
                         FieldOfView fov = FieldOfView::sector);

struct Violation
{
    std::size_t edge = 0;
    double local = 0.0;
    Point2 world;
    int visible = 0;
};

struct EdgeCoverage
{
    std::size_t samples = 0;
    int min_visible = 0;
    double mean_visible = 0.0;
    std::optional<Violation> first_violation;
};

struct PlacementReport
{
    std::vector<EdgeCoverage> edges;

    bool clean() const;
    std::optional<Violation> first_violation() const;
    std::size_t violation_count() const;
};

/// Verification step used when none is given: 1e-3 of the edge, at least 1 mm.
double default_verify_step(double edge_length);

/// Walks every edge with the heading locked to the edge direction and counts
/// the placed landmarks seen by the pointwise sensor test. Independent of the
/// interval arithmetic used for planning.
PlacementReport verify_placement(const PathPlan& path, const Placement& placement, const CameraSpec& cam,
                                 std::optional<double> step = std::nullopt, FieldOfView fov = FieldOfView::sector);

} // namespace waymark
