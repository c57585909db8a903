#pragma once

#include "waymark/planner.hpp"
#include "waymark/simulator.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace waymark
{

/// Malformed file content. The message names the offending line or field.
class ParseError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A planning instance. Site ids are positions in `sites`.
struct Instance
{
    CameraSpec camera{2.0, deg_to_rad(50.0), 0.05};
    PathPlan path{{Point2(0.0, 0.0), Point2(1.0, 0.0)}};
    std::vector<CandidateSite> sites;
    std::optional<SimConfig> sim;
    /// Generator seed, when the instance was produced by `generate`.
    std::optional<std::uint64_t> seed;
};

struct PlacementFile
{
    Placement placement;
    FieldOfView fov = FieldOfView::sector;

    friend bool operator==(const PlacementFile&, const PlacementFile&) = default;
};

/// Canonical text: fixed key order, two-space indent, shortest round-trip
/// decimals, trailing newline. Angles are written in degrees.
std::string dump_instance(const Instance& instance);
Instance parse_instance(std::string_view text);

std::string dump_placement(const PlacementFile& file);
PlacementFile parse_placement(std::string_view text);

/// Throws ParseError unless every placed site exists in the instance with
/// the same position and every edge index is valid.
void check_placement_matches(const Instance& instance, const Placement& placement);

/// File helpers; I/O failures surface as ParseError as well.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

Instance load_instance(const std::filesystem::path& path);
PlacementFile load_placement(const std::filesystem::path& path);

/// Trajectory columns of a trace CSV, as needed for plotting.
struct TrajectoryPoint
{
    double x_true = 0.0;
    double y_true = 0.0;
    double x_est = 0.0;
    double y_est = 0.0;
};

std::vector<TrajectoryPoint> parse_trace_csv(std::string_view text);

} // namespace waymark
