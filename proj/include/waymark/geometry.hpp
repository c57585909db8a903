#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace waymark
{

/// Wrap an angle into (-pi, pi].
double wrap_angle(double angle);

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

class Point2
{
public:
    constexpr Point2() = default;
    /// Throws std::invalid_argument on NaN or infinite coordinates.
    Point2(double x, double y);

    double x() const { return x_; }
    double y() const { return y_; }

    friend bool operator==(const Point2&, const Point2&) = default;

private:
    double x_ = 0.0;
    double y_ = 0.0;
};

double distance(const Point2& a, const Point2& b);

/// Sensing geometry of the forward-facing camera. Angles in radians.
class CameraSpec
{
public:
    /// Throws std::invalid_argument unless range > 0, 0 < view_angle <= pi
    /// and 0 <= clearance < range.
    CameraSpec(double range, double view_angle, double clearance = 0.0);

    double range() const { return range_; }
    double view_angle() const { return view_angle_; }
    double half_angle() const { return 0.5 * view_angle_; }
    double clearance() const { return clearance_; }

    friend bool operator==(const CameraSpec&, const CameraSpec&) = default;

private:
    double range_;
    double view_angle_;
    double clearance_;
};

enum class SiteId : std::uint32_t
{
};

constexpr std::uint32_t to_index(SiteId id) { return static_cast<std::uint32_t>(id); }

struct CandidateSite
{
    SiteId id{};
    Point2 position;

    friend bool operator==(const CandidateSite&, const CandidateSite&) = default;
};

/// Closed sub-segment [a, b] of an edge, in edge-local abscissa, over which
/// one site stays inside the field of view.
struct CoverInterval
{
    SiteId site{};
    double a = 0.0;
    double b = 0.0;

    double length() const { return b - a; }
    bool contains(double s) const { return a <= s && s <= b; }

    friend bool operator==(const CoverInterval&, const CoverInterval&) = default;
};

class DegenerateEdge : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Rigid frame attached to an edge: the edge start maps to the origin and
/// the edge end to (length, 0).
class EdgeFrame
{
public:
    EdgeFrame(Point2 origin, double rotation, double length);

    const Point2& origin() const { return origin_; }
    double rotation() const { return rotation_; }
    double length() const { return length_; }

    Point2 to_local(const Point2& world) const;
    Point2 to_world(const Point2& local) const;

private:
    Point2 origin_;
    double rotation_;
    double length_;
    double cos_;
    double sin_;
};

/// Throws DegenerateEdge when the endpoints are closer than 1e-12 m.
EdgeFrame edge_frame(const Point2& start, const Point2& end);

inline Point2 to_edge_frame(const EdgeFrame& frame, const Point2& p) { return frame.to_local(p); }

/// Ordered list of waypoints; edge i runs from waypoint i to waypoint i+1.
class PathPlan
{
public:
    /// Throws std::invalid_argument for fewer than two waypoints and
    /// DegenerateEdge when consecutive waypoints coincide.
    explicit PathPlan(std::vector<Point2> waypoints);

    std::span<const Point2> waypoints() const { return waypoints_; }
    std::size_t edge_count() const { return waypoints_.size() - 1; }
    const Point2& edge_start(std::size_t edge) const { return waypoints_.at(edge); }
    const Point2& edge_end(std::size_t edge) const { return waypoints_.at(edge + 1); }
    EdgeFrame frame(std::size_t edge) const { return edge_frame(edge_start(edge), edge_end(edge)); }
    double total_length() const;

    friend bool operator==(const PathPlan&, const PathPlan&) = default;

private:
    std::vector<Point2> waypoints_;
};

/// Necessary and sufficient condition for a site (in the edge frame) to be
/// seen from some point of the edge [0, d] with heading along the edge.
bool in_region_of_influence(const Point2& site_local, double d, const CameraSpec& cam);

/// Visibility sub-interval for the sector-shaped field of view. Empty
/// exactly when the site lies outside the region of influence.
std::optional<CoverInterval> visibility_interval(const Point2& site_local, double d, const CameraSpec& cam,
                                                 SiteId site = {});

/// Same for an omnidirectional sensor of radius R; the view angle is ignored.
std::optional<CoverInterval> visibility_interval_circular(const Point2& site_local, double d, const CameraSpec& cam,
                                                          SiteId site = {});

/// Pointwise field-of-view test. A site coincident with the vehicle has no
/// bearing and is never visible.
bool is_visible(const Point2& vehicle, double heading, const Point2& site, const CameraSpec& cam);

/// Same test with a full 360 degree field of view.
bool is_visible_circular(const Point2& vehicle, const Point2& site, const CameraSpec& cam);

double point_segment_distance(const Point2& p, const Point2& seg_start, const Point2& seg_end);

/// Keeps the sites strictly farther than `clearance` from every path edge.
std::vector<CandidateSite> filter_sites_by_clearance(std::span<const CandidateSite> sites, const PathPlan& path,
                                                     double clearance);

} // namespace waymark
