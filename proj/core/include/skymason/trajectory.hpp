#pragma once

#include <vector>

#include "skymason/geometry.hpp"

namespace skymason {

/// Full state constraints at both ends of a maneuver.
struct BoundaryConditions {
  Vec3 r0 = Vec3::Zero();
  Vec3 v0 = Vec3::Zero();
  Vec3 a0 = Vec3::Zero();
  Vec3 rf = Vec3::Zero();
  Vec3 vf = Vec3::Zero();
  Vec3 af = Vec3::Zero();
  double t_f = 1.0;
};

struct TrajectorySample {
  Vec3 position;
  Vec3 velocity;
  Vec3 acceleration;
};

/// Jerk-minimal quintic between two full states, parameterized by the
/// remaining flight time t_go = t_f - t. Coefficients are fixed at planning
/// time, so the object is an immutable reference trajectory.
class MinJerkTrajectory {
 public:
  explicit MinJerkTrajectory(const BoundaryConditions& b);

  const BoundaryConditions& boundary() const { return boundary_; }
  const Vec3& c1() const { return c1_; }
  const Vec3& c2() const { return c2_; }
  const Vec3& c3() const { return c3_; }
  double duration() const { return boundary_.t_f; }

  /// State at time t in [0, t_f]. Throws std::domain_error outside the span.
  TrajectorySample sample(double t) const;

  /// Same, but clamps t into [0, t_f]; past the horizon the terminal state
  /// is held (velocity/acceleration from the boundary).
  TrajectorySample sample_clamped(double t) const;

  /// Jerk at time t (third time derivative of position).
  Vec3 jerk(double t) const;

 private:
  BoundaryConditions boundary_;
  Vec3 c1_, c2_, c3_;
};

MinJerkTrajectory plan_min_jerk(const BoundaryConditions& b);

/// 0.5 * integral of |jerk|^2 over [0, t_f], trapezoidal rule on the
/// analytic jerk at the given resolution.
double jerk_cost(const MinJerkTrajectory& traj, double resolution = 1e-3);

/// Same cost for an arbitrary position path sampled at fixed dt; the jerk is
/// taken by third-order central differences. Needs at least 4 samples.
double jerk_cost(const std::vector<Vec3>& positions, double dt);

}  // namespace skymason
