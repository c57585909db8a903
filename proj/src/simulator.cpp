#include "waymark/simulator.hpp"

#include "waymark/rng.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

namespace waymark
{

void SimConfig::validate() const
{
    if (!(speed > 0.0) || !(dt > 0.0))
        throw std::invalid_argument("SimConfig: speed and dt must be positive");
    if (!(heading_gain > 0.0))
        throw std::invalid_argument("SimConfig: heading gain must be positive");
    if (!(process_noise.x >= 0.0 && process_noise.y >= 0.0 && process_noise.psi >= 0.0 && bearing_noise_std >= 0.0))
        throw std::invalid_argument("SimConfig: noise standard deviations must be non-negative");
    if (!(waypoint_capture_radius > 0.0) || !(align_tolerance > 0.0))
        throw std::invalid_argument("SimConfig: capture radius and align tolerance must be positive");
    if (!initial_covariance.allFinite() || !initial_covariance.isApprox(initial_covariance.transpose(), 1e-12))
        throw std::invalid_argument("SimConfig: initial covariance must be symmetric");
    if (Eigen::LLT<Mat3>(initial_covariance).info() != Eigen::Success)
        throw std::invalid_argument("SimConfig: initial covariance must be positive definite");
}

NonconvergentFilter::NonconvergentFilter(std::size_t step)
    : std::runtime_error("information matrix lost positive definiteness at step " + std::to_string(step)), step_(step)
{
}

double bearing_measurement(const RobotState& truth, const Point2& landmark, double noise_std, Rng& rng)
{
    return wrap_angle(predicted_bearing(truth, landmark) + rng.gaussian(noise_std));
}

namespace
{

SimRecord make_record(double t, const RobotState& truth, const InformationState& info, int visible, int used)
{
    SimRecord rec;
    rec.t = t;
    rec.truth = truth;
    rec.estimate = info.mean();
    const Mat3 cov = info.covariance();
    const std::array<double, 3> err{rec.estimate.x - truth.x, rec.estimate.y - truth.y,
                                    wrap_angle(rec.estimate.psi - truth.psi)};
    for (int i = 0; i < 3; ++i)
    {
        rec.variance[i] = cov(i, i);
        rec.error[i] = err[i];
        rec.three_sigma[i] = 3.0 * std::sqrt(cov(i, i));
    }
    rec.n_visible = visible;
    rec.n_measurements = used;
    return rec;
}

bool positive_definite(const Mat3& m)
{
    Eigen::SelfAdjointEigenSolver<Mat3> eig(m, Eigen::EigenvaluesOnly);
    return eig.info() == Eigen::Success && eig.eigenvalues().minCoeff() > 0.0;
}

} // namespace

SimTrace simulate(const PathPlan& path, const Placement& placement, const CameraSpec& cam, const SimConfig& cfg)
{
    cfg.validate();
    Rng rng(cfg.rng_seed);
    const auto waypoints = path.waypoints();
    const double filter_bearing_std = std::max(cfg.bearing_noise_std, min_filter_bearing_std);
    const double sqrt_dt = std::sqrt(cfg.dt);

    RobotState truth{waypoints[0].x(), waypoints[0].y(), path.frame(0).rotation()};

    RobotState initial_estimate = truth;
    if (cfg.perturb_initial_estimate)
    {
        const Mat3 chol = Eigen::LLT<Mat3>(cfg.initial_covariance).matrixL();
        const Vec3 draw(rng.gaussian(), rng.gaussian(), rng.gaussian());
        initial_estimate = RobotState::from_vector(truth.vector() + chol * draw);
    }
    InformationState info = InformationState::from_moments(initial_estimate, cfg.initial_covariance);

    SimTrace trace;
    trace.dt = cfg.dt;
    trace.records.push_back(make_record(0.0, truth, info, 0, 0));

    // Generous bound on the run length: ten times the straight-line travel
    // time plus a minute per waypoint for turning.
    const double time_budget = 10.0 * path.total_length() / cfg.speed + 60.0 * static_cast<double>(waypoints.size());
    const auto max_steps = static_cast<std::size_t>(std::ceil(time_budget / cfg.dt));

    std::size_t target = 1;
    bool turning = true;
    std::vector<BearingObservation> observations;

    for (std::size_t step = 1;; ++step)
    {
        if (step > max_steps)
            throw std::runtime_error("simulate: vehicle did not reach the final waypoint");

        if (!turning)
        {
            const Point2& from = waypoints[target - 1];
            const Point2& to = waypoints[target];
            const double along = (truth.x - to.x()) * (to.x() - from.x()) + (truth.y - to.y()) * (to.y() - from.y());
            if (std::hypot(truth.x - to.x(), truth.y - to.y()) <= cfg.waypoint_capture_radius || along >= 0.0)
            {
                if (++target == waypoints.size())
                    break;
                turning = true;
            }
        }

        const Point2& goal = waypoints[target];
        const double heading_error = wrap_angle(std::atan2(goal.y() - truth.y, goal.x() - truth.x) - truth.psi);
        if (turning && std::abs(heading_error) <= cfg.align_tolerance)
            turning = false;
        const Control u{turning ? 0.0 : cfg.speed, cfg.heading_gain * heading_error};

        RobotState moved = propagate(truth, u, cfg.dt);
        moved.x += rng.gaussian(cfg.process_noise.x * sqrt_dt);
        moved.y += rng.gaussian(cfg.process_noise.y * sqrt_dt);
        moved.psi = wrap_angle(moved.psi + rng.gaussian(cfg.process_noise.psi * sqrt_dt));
        truth = moved;

        const double t = static_cast<double>(step) * cfg.dt;
        const bool blacked_out =
            cfg.measurement_blackout && t >= (*cfg.measurement_blackout)[0] && t < (*cfg.measurement_blackout)[1];

        observations.clear();
        int visible = 0;
        for (const auto& site : placement.sites)
        {
            if (!is_visible(Point2(truth.x, truth.y), truth.psi, site.position, cam))
                continue;
            ++visible;
            if (!blacked_out)
                observations.push_back(
                    {site.position, bearing_measurement(truth, site.position, cfg.bearing_noise_std, rng)});
        }

        try
        {
            info = eif_predict(info, u, cfg.dt, cfg.process_noise);
            info = eif_update(info, observations, filter_bearing_std);
            if (!positive_definite(info.information()))
                throw NonconvergentFilter(step);
            trace.records.push_back(make_record(t, truth, info, visible, static_cast<int>(observations.size())));
        }
        catch (const SingularInformation&)
        {
            throw NonconvergentFilter(step);
        }
    }
    return trace;
}

bool ContainmentReport::all_at_least(double fraction) const
{
    for (const auto& a : axes)
        if (a.fraction_inside < fraction)
            return false;
    return true;
}

ContainmentReport three_sigma_report(const SimTrace& trace)
{
    if (trace.records.empty())
        throw std::invalid_argument("three_sigma_report: empty trace");

    ContainmentReport report;
    for (std::size_t i = 0; i < 3; ++i)
    {
        std::size_t inside = 0;
        auto& axis = report.axes[i];
        for (const auto& rec : trace.records)
        {
            const double err = std::abs(rec.error[i]);
            inside += err <= rec.three_sigma[i] ? 1 : 0;
            axis.max_abs_error = std::max(axis.max_abs_error, err);
            axis.max_sigma = std::max(axis.max_sigma, rec.three_sigma[i] / 3.0);
        }
        axis.fraction_inside = static_cast<double>(inside) / static_cast<double>(trace.records.size());
    }
    return report;
}

void write_trace_csv(std::ostream& out, const SimTrace& trace)
{
    out << "t,x_true,y_true,psi_true,x_est,y_est,psi_est,p_xx,p_yy,p_psipsi,err_x,err_y,err_psi,n_visible,n_meas\n";
    char buf[512];
    for (const auto& r : trace.records)
    {
        std::snprintf(buf, sizeof(buf), "%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%d,%d\n", r.t,
                      r.truth.x, r.truth.y, r.truth.psi, r.estimate.x, r.estimate.y, r.estimate.psi, r.variance[0],
                      r.variance[1], r.variance[2], r.error[0], r.error[1], r.error[2], r.n_visible, r.n_measurements);
        out << buf;
    }
}

} // namespace waymark
