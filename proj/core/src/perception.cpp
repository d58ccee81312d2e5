#include "skymason/perception.hpp"

#include <cmath>
#include <stdexcept>

#include "skymason/bfgs.hpp"

namespace skymason {

namespace {

Vec3 tag_world_position(const BrickTruth& truth, const MarkerGeometry& geom,
                        const Vec2& offset) {
  // offset maps tag -> center, so the tag sits at center - R(yaw) * offset.
  const Vec2 horiz = rotate2(truth.yaw, offset);
  return {truth.center.x() - horiz.x(), truth.center.y() - horiz.y(), truth.top_z};
}

bool in_fov(const Vec3& camera, const Vec3& target, const CameraModel& model) {
  const double dz = camera.z() - target.z();
  if (dz < model.min_range) return false;
  const double half = std::tan(model.fov_half_angle) * dz;
  return std::abs(target.x() - camera.x()) <= half &&
         std::abs(target.y() - camera.y()) <= half;
}

}  // namespace

CameraBias draw_camera_bias(const CameraModel& model, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  CameraBias b;
  for (int i = 0; i < 3; ++i) b.tag1[i] = model.sigma_bias * n(rng);
  for (int i = 0; i < 3; ++i) b.tag2[i] = model.sigma_bias * n(rng);
  return b;
}

std::pair<TagDetection, TagDetection> simulate_camera(
    const Vec3& camera_position, const BrickTruth& truth,
    const MarkerGeometry& geom, const CameraModel& model,
    const CameraBias& bias, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  const Vec3 true1 = tag_world_position(truth, geom, geom.offset1);
  const Vec3 true2 = tag_world_position(truth, geom, geom.offset2);
  const double tag_yaw = truth.yaw + geom.delta;

  auto make = [&](int id, const Vec3& true_pos, const Vec3& tag_bias) {
    TagDetection det;
    det.tag_id = id;
    // Fixed draw order per tag keeps runs reproducible for a given seed.
    Vec3 noise;
    for (int i = 0; i < 3; ++i) noise[i] = model.sigma_jitter * n(rng);
    const double yaw_noise = model.sigma_yaw * n(rng);
    const bool occluded = u(rng) < model.p_occ;

    if (occluded || !in_fov(camera_position, true_pos, model)) {
      det.valid = false;
      return det;
    }
    det.position = true_pos + tag_bias + noise;
    det.yaw = wrap_angle(tag_yaw + yaw_noise);
    det.valid = true;
    return det;
  };

  return {make(truth.marker_ids.first, true1, bias.tag1),
          make(truth.marker_ids.second, true2, bias.tag2)};
}

double marker_pair_cost(const Vec3& p1, const Vec3& p2, const Vec3& p1_meas,
                        const Vec3& p2_meas, double d, const FilterWeights& w,
                        Eigen::VectorXd* grad) {
  const Vec3 q = p1 - p2;
  const double rho = q.norm();
  const double dist_res = rho - d;
  const double plane_res = q.z();

  const double cost = w.prox * ((p1 - p1_meas).squaredNorm() + (p2 - p2_meas).squaredNorm()) +
                      w.dist * dist_res * dist_res + w.plane * plane_res * plane_res;
  if (grad != nullptr) {
    grad->resize(6);
    // Direction of the separation; at rho ~ 0 the distance term is not
    // differentiable, tie-break along +x.
    const Vec3 dir = rho > 1e-12 ? Vec3(q / rho) : Vec3(1.0, 0.0, 0.0);
    const Vec3 g1 = 2.0 * w.prox * (p1 - p1_meas) + 2.0 * w.dist * dist_res * dir +
                    2.0 * w.plane * plane_res * Vec3(0, 0, 1);
    const Vec3 g2 = 2.0 * w.prox * (p2 - p2_meas) - 2.0 * w.dist * dist_res * dir -
                    2.0 * w.plane * plane_res * Vec3(0, 0, 1);
    grad->segment<3>(0) = g1;
    grad->segment<3>(3) = g2;
  }
  return cost;
}

RefinedPair refine_marker_pair(const Vec3& p1_meas, const Vec3& p2_meas,
                               const MarkerGeometry& geom,
                               const FilterWeights& weights) {
  if (!p1_meas.allFinite() || !p2_meas.allFinite()) {
    throw std::domain_error("refine_marker_pair: non-finite measurement");
  }
  if (!(weights.prox > 0.0 && weights.dist > 0.0 && weights.plane > 0.0)) {
    throw std::domain_error("refine_marker_pair: weights must be > 0");
  }

  Eigen::VectorXd x0(6);
  x0.segment<3>(0) = p1_meas;
  x0.segment<3>(3) = p2_meas;
  // Coincident measurements leave the separation direction undefined; nudge
  // the start along +x so the descent has somewhere to go.
  if ((p1_meas - p2_meas).norm() < 1e-9) {
    x0[0] += 1e-3 * geom.d;
    x0[3] -= 1e-3 * geom.d;
  }

  auto objective = [&](const Eigen::VectorXd& x, Eigen::VectorXd* grad) {
    return marker_pair_cost(x.segment<3>(0), x.segment<3>(3), p1_meas, p2_meas,
                            geom.d, weights, grad);
  };

  BfgsOptions opts;
  opts.max_iters = 100;
  opts.grad_tol = 1e-8;
  const BfgsResult res = minimize_bfgs(objective, x0, opts);

  RefinedPair out;
  if (!res.converged) {
    out.p1 = p1_meas;
    out.p2 = p2_meas;
    out.cost = marker_pair_cost(p1_meas, p2_meas, p1_meas, p2_meas, geom.d, weights);
    out.grad_norm = res.grad_norm;
    out.fallback = true;
    return out;
  }
  out.p1 = res.x.segment<3>(0);
  out.p2 = res.x.segment<3>(3);
  out.cost = res.f;
  out.grad_norm = res.grad_norm;
  out.fallback = false;
  return out;
}

std::optional<PoseSample> estimate_brick_pose(
    const std::optional<TagDetection>& t1, const std::optional<TagDetection>& t2,
    const MarkerGeometry& geom, const FilterWeights& weights) {
  const bool has1 = t1.has_value() && t1->valid;
  const bool has2 = t2.has_value() && t2->valid;

  if (has1 && has2) {
    const RefinedPair refined = refine_marker_pair(t1->position, t2->position, geom, weights);
    PoseSample s;
    s.center = 0.5 * (refined.p1 + refined.p2);
    s.yaw = std::atan2(refined.p1.y() - refined.p2.y(), refined.p1.x() - refined.p2.x());
    s.source = PoseSource::both_tags;
    s.fallback = refined.fallback;
    return s;
  }
  if (has1 || has2) {
    const TagDetection& det = has1 ? *t1 : *t2;
    const Vec2& offset = has1 ? geom.offset1 : geom.offset2;
    const Vec2 horiz = rotate2(det.yaw, offset);
    PoseSample s;
    s.center = det.position + Vec3(horiz.x(), horiz.y(), 0.0);
    s.yaw = wrap_angle(det.yaw - geom.delta);
    s.source = has1 ? PoseSource::tag1_only : PoseSource::tag2_only;
    return s;
  }
  return std::nullopt;
}

ConfidenceWindow::ConfidenceWindow(int capacity, double sigma_tol)
    : capacity_(capacity), sigma_tol_(sigma_tol) {
  if (capacity_ < 2) throw std::domain_error("ConfidenceWindow: capacity must be >= 2");
  if (!(sigma_tol_ > 0.0)) throw std::domain_error("ConfidenceWindow: sigma_tol must be > 0");
}

PoseEstimate ConfidenceWindow::update(const PoseSample& sample) {
  positions_.push_back(sample.center);
  yaws_.push_back(sample.yaw);
  last_source_ = sample.source;
  while (static_cast<int>(positions_.size()) > capacity_) {
    positions_.pop_front();
    yaws_.pop_front();
  }
  return current();
}

PoseEstimate ConfidenceWindow::current() const {
  PoseEstimate est;
  est.source = last_source_;
  const int n = static_cast<int>(positions_.size());
  if (n == 0) return est;

  Vec3 mean = Vec3::Zero();
  for (const Vec3& p : positions_) mean += p;
  mean /= n;

  double sin_sum = 0.0, cos_sum = 0.0;
  for (double y : yaws_) {
    sin_sum += std::sin(y);
    cos_sum += std::cos(y);
  }

  est.center = mean;
  est.yaw = std::atan2(sin_sum, cos_sum);

  if (n < 2) {
    est.sigma_max = 0.0;
    est.confidence = 0.0;  // a single sample carries no variability evidence
    return est;
  }

  Vec3 ss = Vec3::Zero();
  for (const Vec3& p : positions_) {
    const Vec3 d = p - mean;
    ss += d.cwiseProduct(d);
  }
  const Vec3 sigma = (ss / (n - 1)).cwiseSqrt();
  est.sigma_max = std::max(sigma.x(), sigma.y());
  est.confidence = 1.0 - std::min(1.0, est.sigma_max / sigma_tol_);
  return est;
}

void ConfidenceWindow::clear() {
  positions_.clear();
  yaws_.clear();
  last_source_ = PoseSource::none;
}

}  // namespace skymason
