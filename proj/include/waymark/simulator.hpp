#pragma once

#include "waymark/filter.hpp"
#include "waymark/planner.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace waymark
{

struct SimConfig
{
    double speed = 0.2;        ///< m/s
    double dt = 0.05;          ///< s
    double heading_gain = 3.0; ///< 1/s
    ProcessNoise process_noise{0.01, 0.01, 0.005};
    double bearing_noise_std = deg_to_rad(1.0);
    Mat3 initial_covariance = Vec3(0.05 * 0.05, 0.05 * 0.05, deg_to_rad(2.0) * deg_to_rad(2.0)).asDiagonal();
    std::uint64_t rng_seed = 1;
    double waypoint_capture_radius = 0.02; ///< m
    /// Heading error below which a stationary turn ends.
    double align_tolerance = deg_to_rad(1.0);
    /// Draw the initial estimate from the initial covariance; when false the
    /// filter starts at the true pose.
    bool perturb_initial_estimate = true;
    /// Optional [start, end) time window in which measurements are dropped.
    std::optional<std::array<double, 2>> measurement_blackout;

    /// Throws std::invalid_argument for non-positive speed or dt, negative
    /// noise, or a covariance that is not symmetric positive definite.
    void validate() const;
};

/// Filter-side bearing standard deviation never drops below this, so a
/// noiseless sensor still yields a finite information gain.
inline constexpr double min_filter_bearing_std = 1e-4;

struct SimRecord
{
    double t = 0.0;
    RobotState truth;
    RobotState estimate;
    std::array<double, 3> variance{};
    std::array<double, 3> error{};
    std::array<double, 3> three_sigma{};
    int n_visible = 0;
    int n_measurements = 0;
};

struct SimTrace
{
    double dt = 0.0;
    std::vector<SimRecord> records;
};

class NonconvergentFilter : public std::runtime_error
{
public:
    explicit NonconvergentFilter(std::size_t step);
    std::size_t step() const { return step_; }

private:
    std::size_t step_;
};

class Rng;

/// Relative bearing from the true pose with additive Gaussian noise, wrapped.
double bearing_measurement(const RobotState& truth, const Point2& landmark, double noise_std, Rng& rng);

/// Closed-loop run along the path. The vehicle steers toward the current
/// waypoint with a proportional heading law, halts and turns in place at
/// each waypoint, and an information filter fuses the bearings of every
/// placed landmark inside the true field of view. The result is a pure
/// function of the inputs and `cfg.rng_seed`.
SimTrace simulate(const PathPlan& path, const Placement& placement, const CameraSpec& cam, const SimConfig& cfg);

struct AxisContainment
{
    double fraction_inside = 0.0;
    double max_abs_error = 0.0;
    double max_sigma = 0.0;
};

struct ContainmentReport
{
    std::array<AxisContainment, 3> axes{};
    bool all_at_least(double fraction) const;
};

ContainmentReport three_sigma_report(const SimTrace& trace);

/// Columns: t, x_true, y_true, psi_true, x_est, y_est, psi_est, p_xx, p_yy,
/// p_psipsi, err_x, err_y, err_psi, n_visible, n_meas.
void write_trace_csv(std::ostream& out, const SimTrace& trace);

} // namespace waymark
