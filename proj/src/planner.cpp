#include "waymark/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace waymark
{

std::vector<SiteId> Placement::site_ids() const
{
    std::vector<SiteId> ids;
    ids.reserve(sites.size());
    for (const auto& s : sites)
        ids.push_back(s.id);
    return ids;
}

EdgeInfeasible::EdgeInfeasible(std::size_t edge_index, double local_uncovered_at, Point2 world_uncovered_at)
    : std::runtime_error("edge " + std::to_string(edge_index) + " cannot be double covered beyond (" +
                         std::to_string(world_uncovered_at.x()) + ", " + std::to_string(world_uncovered_at.y()) + ")"),
      edge_index_(edge_index), local_(local_uncovered_at), world_(world_uncovered_at)
{
}

AllSitesFiltered::AllSitesFiltered() : std::runtime_error("clearance filter removed every candidate site") {}

CoverProblem build_cover_problem(const PathPlan& path, std::size_t edge, std::span<const CandidateSite> sites,
                                 const CameraSpec& cam, FieldOfView fov)
{
    const EdgeFrame frame = path.frame(edge);
    std::vector<CoverInterval> intervals;
    for (const auto& site : sites)
    {
        const Point2 local = frame.to_local(site.position);
        auto iv = fov == FieldOfView::sector ? visibility_interval(local, frame.length(), cam, site.id)
                                             : visibility_interval_circular(local, frame.length(), cam, site.id);
        if (iv)
            intervals.push_back(*iv);
    }
    return CoverProblem(frame.length(), std::move(intervals));
}

Placement plan_placement(const PathPlan& path, std::span<const CandidateSite> sites, const CameraSpec& cam,
                         FieldOfView fov)
{
    if (sites.empty())
        throw std::invalid_argument("plan_placement: no candidate sites");

    const auto usable = filter_sites_by_clearance(sites, path, cam.clearance());
    if (usable.empty())
        throw AllSitesFiltered();

    Placement placement;
    placement.per_edge.resize(path.edge_count());
    placement.per_edge_intervals.resize(path.edge_count());

    for (std::size_t e = 0; e < path.edge_count(); ++e)
    {
        const CoverProblem problem = build_cover_problem(path, e, usable, cam, fov);
        CoverSolution solution;
        try
        {
            solution = greedy_two_cover(problem);
        }
        catch (const Infeasible& err)
        {
            const Point2 world = path.frame(e).to_world(Point2(err.uncovered_at(), 0.0));
            throw EdgeInfeasible(e, err.uncovered_at(), world);
        }

        for (SiteId id : solution.chosen)
            placement.per_edge_intervals[e].push_back(*problem.find(id));
        placement.per_edge[e] = std::move(solution.chosen);
    }

    std::vector<SiteId> chosen;
    for (const auto& ids : placement.per_edge)
        chosen.insert(chosen.end(), ids.begin(), ids.end());
    std::sort(chosen.begin(), chosen.end());
    chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());

    for (SiteId id : chosen)
    {
        auto it = std::find_if(usable.begin(), usable.end(), [id](const auto& s) { return s.id == id; });
        placement.sites.push_back(*it);
    }
    return placement;
}

bool PlacementReport::clean() const { return violation_count() == 0; }

std::optional<Violation> PlacementReport::first_violation() const
{
    for (const auto& e : edges)
        if (e.first_violation)
            return e.first_violation;
    return std::nullopt;
}

std::size_t PlacementReport::violation_count() const
{
    return static_cast<std::size_t>(
        std::count_if(edges.begin(), edges.end(), [](const auto& e) { return e.first_violation.has_value(); }));
}

double default_verify_step(double edge_length) { return std::max(1e-3 * edge_length, 1e-3); }

PlacementReport verify_placement(const PathPlan& path, const Placement& placement, const CameraSpec& cam,
                                 std::optional<double> step, FieldOfView fov)
{
    if (step && !(*step > 0.0))
        throw std::invalid_argument("verify_placement: step must be positive");

    PlacementReport report;
    for (std::size_t e = 0; e < path.edge_count(); ++e)
    {
        const Point2& start = path.edge_start(e);
        const Point2& end = path.edge_end(e);
        const double d = distance(start, end);
        const double heading = std::atan2(end.y() - start.y(), end.x() - start.x());
        const double h = step.value_or(default_verify_step(d));

        const auto n_steps = static_cast<std::size_t>(std::floor(d / h));
        std::vector<double> stations;
        for (std::size_t k = 0; k <= n_steps; ++k)
            stations.push_back(static_cast<double>(k) * h);
        if (stations.back() < d)
            stations.push_back(d);

        EdgeCoverage cov;
        cov.min_visible = std::numeric_limits<int>::max();
        double sum = 0.0;
        for (double s : stations)
        {
            const double t = std::min(s / d, 1.0);
            const Point2 at(start.x() + t * (end.x() - start.x()), start.y() + t * (end.y() - start.y()));
            int seen = 0;
            for (const auto& site : placement.sites)
            {
                const bool visible = fov == FieldOfView::sector ? is_visible(at, heading, site.position, cam)
                                                                : is_visible_circular(at, site.position, cam);
                seen += visible ? 1 : 0;
            }
            cov.min_visible = std::min(cov.min_visible, seen);
            sum += seen;
            if (seen < 2 && !cov.first_violation)
                cov.first_violation = Violation{e, s, at, seen};
        }
        cov.samples = stations.size();
        cov.mean_visible = sum / static_cast<double>(stations.size());
        report.edges.push_back(cov);
    }
    return report;
}

} // namespace waymark
