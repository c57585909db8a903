#pragma once

#include "waymark/geometry.hpp"

#include <Eigen/Dense>

#include <span>
#include <stdexcept>

namespace waymark
{

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Planar pose; psi is kept in (-pi, pi].
struct RobotState
{
    double x = 0.0;
    double y = 0.0;
    double psi = 0.0;

    Vec3 vector() const { return {x, y, psi}; }
    static RobotState from_vector(const Vec3& v) { return {v(0), v(1), wrap_angle(v(2))}; }

    friend bool operator==(const RobotState&, const RobotState&) = default;
};

struct Control
{
    double v = 0.0;     ///< m/s
    double omega = 0.0; ///< rad/s
};

/// Standard deviations of the additive process noise, per square-root second.
struct ProcessNoise
{
    double x = 0.0;
    double y = 0.0;
    double psi = 0.0;

    /// Discrete covariance accumulated over one step of length dt.
    Mat3 covariance(double dt) const;
};

struct BearingObservation
{
    Point2 landmark;
    double bearing = 0.0; ///< relative to heading, radians
};

class SingularInformation : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Unicycle kinematics, Euler step.
RobotState propagate(const RobotState& s, const Control& u, double dt);

/// Jacobian of `propagate` with respect to the state.
Mat3 motion_jacobian(const RobotState& s, const Control& u, double dt);

/// Noise-free bearing of a landmark relative to the heading.
double predicted_bearing(const RobotState& s, const Point2& landmark);

/// Gradient of `predicted_bearing` with respect to (x, y, psi).
Eigen::RowVector3d bearing_jacobian(const RobotState& s, const Point2& landmark);

/// Gaussian in canonical form: information matrix and information vector.
class InformationState
{
public:
    InformationState(Mat3 information, Vec3 information_vector);

    /// Throws SingularInformation if the covariance is not positive definite.
    static InformationState from_moments(const RobotState& mean, const Mat3& covariance);

    const Mat3& information() const { return info_; }
    const Vec3& information_vector() const { return vec_; }

    /// Recovers the mean; throws SingularInformation.
    RobotState mean() const;
    Mat3 covariance() const;

private:
    Mat3 info_;
    Vec3 vec_;
};

InformationState eif_predict(const InformationState& state, const Control& u, double dt, const ProcessNoise& noise);

/// Adds every observation at once, linearised about the prior mean.
InformationState eif_update(const InformationState& state, std::span<const BearingObservation> observations,
                            double bearing_std);

} // namespace waymark
