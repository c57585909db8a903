#include "waymark/filter.hpp"

#include <cmath>

namespace waymark
{

namespace
{

Eigen::LLT<Mat3> checked_llt(const Mat3& m, const char* what)
{
    Eigen::LLT<Mat3> llt(m);
    if (llt.info() != Eigen::Success || !m.allFinite())
        throw SingularInformation(what);
    return llt;
}

Mat3 symmetrized(const Mat3& m) { return 0.5 * (m + m.transpose()); }

} // namespace

Mat3 ProcessNoise::covariance(double dt) const
{
    return Vec3(x * x * dt, y * y * dt, psi * psi * dt).asDiagonal();
}

RobotState propagate(const RobotState& s, const Control& u, double dt)
{
    return {s.x + u.v * std::cos(s.psi) * dt, s.y + u.v * std::sin(s.psi) * dt, wrap_angle(s.psi + u.omega * dt)};
}

Mat3 motion_jacobian(const RobotState& s, const Control& u, double dt)
{
    Mat3 f = Mat3::Identity();
    f(0, 2) = -u.v * std::sin(s.psi) * dt;
    f(1, 2) = u.v * std::cos(s.psi) * dt;
    return f;
}

double predicted_bearing(const RobotState& s, const Point2& landmark)
{
    return wrap_angle(std::atan2(landmark.y() - s.y, landmark.x() - s.x) - s.psi);
}

Eigen::RowVector3d bearing_jacobian(const RobotState& s, const Point2& landmark)
{
    const double dx = landmark.x() - s.x;
    const double dy = landmark.y() - s.y;
    const double q = dx * dx + dy * dy;
    return {dy / q, -dx / q, -1.0};
}

InformationState::InformationState(Mat3 information, Vec3 information_vector)
    : info_(std::move(information)), vec_(std::move(information_vector))
{
}

InformationState InformationState::from_moments(const RobotState& mean, const Mat3& covariance)
{
    const auto llt = checked_llt(covariance, "covariance is not positive definite");
    const Mat3 info = symmetrized(llt.solve(Mat3::Identity()));
    return InformationState(info, info * mean.vector());
}

RobotState InformationState::mean() const
{
    return RobotState::from_vector(checked_llt(info_, "information matrix is not positive definite").solve(vec_));
}

Mat3 InformationState::covariance() const
{
    return symmetrized(checked_llt(info_, "information matrix is not positive definite").solve(Mat3::Identity()));
}

InformationState eif_predict(const InformationState& state, const Control& u, double dt, const ProcessNoise& noise)
{
    const auto llt = checked_llt(state.information(), "information matrix is not positive definite");
    const RobotState mean = RobotState::from_vector(llt.solve(state.information_vector()));
    const Mat3 cov = llt.solve(Mat3::Identity());

    const Mat3 f = motion_jacobian(mean, u, dt);
    const Mat3 cov_next = symmetrized(f * cov * f.transpose() + noise.covariance(dt));
    return InformationState::from_moments(propagate(mean, u, dt), cov_next);
}

InformationState eif_update(const InformationState& state, std::span<const BearingObservation> observations,
                            double bearing_std)
{
    if (observations.empty())
        return state;
    if (!(bearing_std > 0.0))
        throw std::invalid_argument("eif_update: bearing noise must be positive");

    const RobotState prior = state.mean();
    const Vec3 prior_vec = prior.vector();
    const double inv_var = 1.0 / (bearing_std * bearing_std);

    Mat3 info = state.information();
    Vec3 vec = state.information_vector();
    for (const auto& obs : observations)
    {
        const Eigen::RowVector3d h = bearing_jacobian(prior, obs.landmark);
        const double innovation = wrap_angle(obs.bearing - predicted_bearing(prior, obs.landmark));
        info += inv_var * h.transpose() * h;
        vec += inv_var * h.transpose() * (innovation + h.dot(prior_vec));
    }
    info = symmetrized(info);

    // Re-express with the heading wrapped so the mean stays in (-pi, pi].
    const auto llt = checked_llt(info, "information matrix is not positive definite");
    const RobotState posterior = RobotState::from_vector(llt.solve(vec));
    return InformationState(info, info * posterior.vector());
}

} // namespace waymark
