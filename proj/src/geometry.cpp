#include "waymark/geometry.hpp"

#include <algorithm>
#include <string>

namespace waymark
{

double wrap_angle(double angle)
{
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double wrapped = std::remainder(angle, two_pi);
    if (wrapped <= -std::numbers::pi)
        wrapped += two_pi;
    return wrapped;
}

Point2::Point2(double x, double y) : x_(x), y_(y)
{
    if (!std::isfinite(x) || !std::isfinite(y))
        throw std::invalid_argument("Point2: non-finite coordinate");
}

double distance(const Point2& a, const Point2& b) { return std::hypot(b.x() - a.x(), b.y() - a.y()); }

CameraSpec::CameraSpec(double range, double view_angle, double clearance)
    : range_(range), view_angle_(view_angle), clearance_(clearance)
{
    if (!(range > 0.0) || !std::isfinite(range))
        throw std::invalid_argument("CameraSpec: range must be positive, got " + std::to_string(range));
    if (!(view_angle > 0.0) || view_angle > std::numbers::pi)
        throw std::invalid_argument("CameraSpec: view angle must lie in (0, pi], got " + std::to_string(view_angle));
    if (!(clearance >= 0.0) || !(clearance < range))
        throw std::invalid_argument("CameraSpec: clearance must lie in [0, range), got " + std::to_string(clearance));
}

EdgeFrame::EdgeFrame(Point2 origin, double rotation, double length)
    : origin_(origin), rotation_(rotation), length_(length), cos_(std::cos(rotation)), sin_(std::sin(rotation))
{
    if (!(length > 0.0))
        throw DegenerateEdge("EdgeFrame: edge length must be positive");
}

Point2 EdgeFrame::to_local(const Point2& world) const
{
    const double dx = world.x() - origin_.x();
    const double dy = world.y() - origin_.y();
    return {cos_ * dx + sin_ * dy, -sin_ * dx + cos_ * dy};
}

Point2 EdgeFrame::to_world(const Point2& local) const
{
    return {origin_.x() + cos_ * local.x() - sin_ * local.y(), origin_.y() + sin_ * local.x() + cos_ * local.y()};
}

EdgeFrame edge_frame(const Point2& start, const Point2& end)
{
    const double dx = end.x() - start.x();
    const double dy = end.y() - start.y();
    const double length = std::hypot(dx, dy);
    if (!(length > 1e-12))
        throw DegenerateEdge("edge endpoints coincide");
    return EdgeFrame(start, std::atan2(dy, dx), length);
}

PathPlan::PathPlan(std::vector<Point2> waypoints) : waypoints_(std::move(waypoints))
{
    if (waypoints_.size() < 2)
        throw std::invalid_argument("PathPlan: at least two waypoints required");
    for (std::size_t i = 0; i + 1 < waypoints_.size(); ++i)
    {
        if (!(distance(waypoints_[i], waypoints_[i + 1]) > 1e-12))
            throw DegenerateEdge("PathPlan: waypoints " + std::to_string(i) + " and " + std::to_string(i + 1) +
                                 " coincide");
    }
}

double PathPlan::total_length() const
{
    double total = 0.0;
    for (std::size_t i = 0; i < edge_count(); ++i)
        total += distance(edge_start(i), edge_end(i));
    return total;
}

bool in_region_of_influence(const Point2& site_local, double d, const CameraSpec& cam)
{
    const double x = site_local.x();
    const double y = site_local.y();
    const double r = cam.range();
    const double half = cam.half_angle();

    if (std::abs(y) > r * std::sin(half))
        return false;
    if (!(x > 0.0))
        return false;
    if (std::abs(std::atan2(y, x)) > half)
        return false;
    if (x >= d && (x - d) * (x - d) + y * y > r * r)
        return false;
    return true;
}

std::optional<CoverInterval> visibility_interval(const Point2& site_local, double d, const CameraSpec& cam,
                                                 SiteId site)
{
    if (!in_region_of_influence(site_local, d, cam))
        return std::nullopt;

    const double x = site_local.x();
    const double y = site_local.y();
    const double r = cam.range();
    // cot(pi/2) evaluates to ~6e-17 rather than zero; the error is far below
    // any geometric tolerance.
    const double cot_half = 1.0 / std::tan(cam.half_angle());

    double a = std::max(x - std::sqrt(std::max(r * r - y * y, 0.0)), 0.0);
    double b = std::min(x - std::abs(y) * cot_half, d);
    // Rounding on the region boundary can invert a single-point interval.
    if (b < a)
        b = a;
    return CoverInterval{site, a, b};
}

std::optional<CoverInterval> visibility_interval_circular(const Point2& site_local, double d, const CameraSpec& cam,
                                                          SiteId site)
{
    const double x = site_local.x();
    const double y = site_local.y();
    const double r = cam.range();
    if (std::abs(y) > r)
        return std::nullopt;

    const double reach = std::sqrt(r * r - y * y);
    const double a = std::max(x - reach, 0.0);
    const double b = std::min(x + reach, d);
    if (a > b)
        return std::nullopt;
    return CoverInterval{site, a, b};
}

bool is_visible(const Point2& vehicle, double heading, const Point2& site, const CameraSpec& cam)
{
    const double dx = site.x() - vehicle.x();
    const double dy = site.y() - vehicle.y();
    const double range = std::hypot(dx, dy);
    if (range > cam.range() || range == 0.0)
        return false;
    return std::abs(wrap_angle(std::atan2(dy, dx) - heading)) <= cam.half_angle();
}

bool is_visible_circular(const Point2& vehicle, const Point2& site, const CameraSpec& cam)
{
    const double range = distance(vehicle, site);
    return range <= cam.range() && range > 0.0;
}

double point_segment_distance(const Point2& p, const Point2& seg_start, const Point2& seg_end)
{
    const double ux = seg_end.x() - seg_start.x();
    const double uy = seg_end.y() - seg_start.y();
    const double len2 = ux * ux + uy * uy;
    if (len2 == 0.0)
        return distance(p, seg_start);

    const double t = std::clamp(((p.x() - seg_start.x()) * ux + (p.y() - seg_start.y()) * uy) / len2, 0.0, 1.0);
    return std::hypot(p.x() - (seg_start.x() + t * ux), p.y() - (seg_start.y() + t * uy));
}

std::vector<CandidateSite> filter_sites_by_clearance(std::span<const CandidateSite> sites, const PathPlan& path,
                                                     double clearance)
{
    std::vector<CandidateSite> kept;
    kept.reserve(sites.size());
    for (const auto& site : sites)
    {
        bool clear = true;
        for (std::size_t e = 0; e < path.edge_count() && clear; ++e)
            clear = point_segment_distance(site.position, path.edge_start(e), path.edge_end(e)) > clearance;
        if (clear)
            kept.push_back(site);
    }
    return kept;
}

} // namespace waymark
