#include "skymason/trajectory.hpp"

#include <cmath>
#include <stdexcept>

namespace skymason {

namespace {

void check_boundary(const BoundaryConditions& b) {
  if (!(b.t_f > 0.0)) throw std::domain_error("trajectory: t_f must be > 0");
  const Vec3* vecs[] = {&b.r0, &b.v0, &b.a0, &b.rf, &b.vf, &b.af};
  for (const Vec3* v : vecs) {
    if (!v->allFinite()) throw std::domain_error("trajectory: non-finite boundary state");
  }
}

}  // namespace

MinJerkTrajectory::MinJerkTrajectory(const BoundaryConditions& b) : boundary_(b) {
  check_boundary(b);
  const double T = b.t_f;
  const Vec3 z_r0 = b.r0 - b.rf + b.vf * T - 0.5 * b.af * T * T;
  const Vec3 z_v0 = b.v0 - b.vf + b.af * T;
  const Vec3 z_a0 = b.a0 - b.af;

  c1_ = 10.0 / (T * T * T) * z_r0 + 4.0 / (T * T) * z_v0 + 0.5 / T * z_a0;
  c2_ = -15.0 / std::pow(T, 4) * z_r0 - 7.0 / (T * T * T) * z_v0 - 1.0 / (T * T) * z_a0;
  c3_ = 6.0 / std::pow(T, 5) * z_r0 + 3.0 / std::pow(T, 4) * z_v0 + 0.5 / (T * T * T) * z_a0;
}

TrajectorySample MinJerkTrajectory::sample(double t) const {
  if (t < 0.0 || t > boundary_.t_f) {
    throw std::domain_error("trajectory: sample time outside [0, t_f]");
  }
  return sample_clamped(t);
}

TrajectorySample MinJerkTrajectory::sample_clamped(double t) const {
  const BoundaryConditions& b = boundary_;
  const double u = std::clamp(b.t_f - t, 0.0, b.t_f);  // t_go
  const double u2 = u * u, u3 = u2 * u, u4 = u3 * u, u5 = u4 * u;

  TrajectorySample s;
  s.position = c3_ * u5 + c2_ * u4 + c1_ * u3 + 0.5 * b.af * u2 - b.vf * u + b.rf;
  // d/dt = -d/dt_go
  s.velocity = -(5.0 * c3_ * u4 + 4.0 * c2_ * u3 + 3.0 * c1_ * u2 + b.af * u - b.vf);
  s.acceleration = 20.0 * c3_ * u3 + 12.0 * c2_ * u2 + 6.0 * c1_ * u + b.af;
  return s;
}

Vec3 MinJerkTrajectory::jerk(double t) const {
  const double u = std::clamp(boundary_.t_f - t, 0.0, boundary_.t_f);
  return -(60.0 * c3_ * u * u + 24.0 * c2_ * u + 6.0 * c1_);
}

MinJerkTrajectory plan_min_jerk(const BoundaryConditions& b) {
  return MinJerkTrajectory(b);
}

double jerk_cost(const MinJerkTrajectory& traj, double resolution) {
  if (!(resolution > 0.0)) throw std::domain_error("jerk_cost: resolution must be > 0");
  const double T = traj.duration();
  const int n = std::max(3, static_cast<int>(std::ceil(T / resolution)));
  const double h = T / n;

  double sum = 0.0;
  double prev = traj.jerk(0.0).squaredNorm();
  for (int i = 1; i <= n; ++i) {
    const double cur = traj.jerk(i * h).squaredNorm();
    sum += 0.5 * (prev + cur) * h;
    prev = cur;
  }
  return 0.5 * sum;
}

double jerk_cost(const std::vector<Vec3>& positions, double dt) {
  if (positions.size() < 4) throw std::domain_error("jerk_cost: need at least 4 samples");
  if (!(dt > 0.0)) throw std::domain_error("jerk_cost: dt must be > 0");

  // Third derivative by central differences on interior points:
  // r''' ~ (-r[i-2] + 2 r[i-1] - 2 r[i+1] + r[i+2]) / (2 dt^3)
  const std::size_t n = positions.size();
  std::vector<double> j2;
  j2.reserve(n);
  const double inv = 1.0 / (2.0 * dt * dt * dt);
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const Vec3 j = (-positions[i - 2] + 2.0 * positions[i - 1] -
                    2.0 * positions[i + 1] + positions[i + 2]) * inv;
    j2.push_back(j.squaredNorm());
  }
  if (j2.size() < 2) {
    // Too short for interior stencils; fall back to one-sided estimate.
    const Vec3 j = (positions[3] - 3.0 * positions[2] + 3.0 * positions[1] - positions[0]) /
                   (dt * dt * dt);
    return 0.5 * j.squaredNorm() * dt * static_cast<double>(n - 1);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < j2.size(); ++i) sum += 0.5 * (j2[i] + j2[i + 1]) * dt;
  return 0.5 * sum;
}

}  // namespace skymason
