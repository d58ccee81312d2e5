#pragma once

#include <deque>
#include <optional>
#include <random>
#include <utility>

#include "skymason/geometry.hpp"

namespace skymason {

/// One synthesized fiducial observation in the world frame.
struct TagDetection {
  int tag_id = -1;
  Vec3 position = Vec3::Zero();
  double yaw = 0.0;
  bool valid = false;
};

/// Fixed marker layout on a brick's top face.
struct MarkerGeometry {
  double d = 0.175;                 // inter-marker separation
  Vec2 offset1{-0.0875, 0.0};      // tag1 -> brick center, in the tag frame
  Vec2 offset2{0.0875, 0.0};
  double delta = 0.0;               // yaw correction between tag and brick axis

  static MarkerGeometry symmetric(double separation) {
    MarkerGeometry g;
    g.d = separation;
    g.offset1 = {-separation / 2.0, 0.0};
    g.offset2 = {separation / 2.0, 0.0};
    g.delta = 0.0;
    return g;
  }
};

struct FilterWeights {
  double prox = 2.0;
  double dist = 1.0;
  double plane = 1.0;
};

enum class PoseSource { both_tags, tag1_only, tag2_only, none };

/// Windowed pose estimate with the variability-based confidence score.
struct PoseEstimate {
  Vec3 center = Vec3::Zero();
  double yaw = 0.0;
  double confidence = 0.0;
  double sigma_max = 0.0;
  PoseSource source = PoseSource::none;
};

/// Ground truth of the brick a camera is looking at.
struct BrickTruth {
  Vec3 center = Vec3::Zero();   // geometric center
  double yaw = 0.0;
  double top_z = 0.0;           // z of the marker plane
  std::pair<int, int> marker_ids{0, 1};
};

/// Synthetic downward camera. The error model splits into a slow per-approach
/// bias (calibration/extrinsics) and fast per-frame jitter, so the windowed
/// confidence reacts to jitter while the absolute error keeps the full scale.
struct CameraModel {
  double fov_half_angle = kPi / 6.0;  // square FOV, per-axis check
  double sigma_jitter = 0.005;        // per frame, per axis
  double sigma_bias = 0.018;          // per approach, per axis
  double sigma_yaw = 0.03;
  double p_occ = 0.05;
  double min_range = 0.05;            // below this the tag leaves the FOV model
};

/// Per-approach camera state: bias vectors are redrawn whenever the carrier
/// re-enters the estimation phase.
struct CameraBias {
  Vec3 tag1 = Vec3::Zero();
  Vec3 tag2 = Vec3::Zero();
};

CameraBias draw_camera_bias(const CameraModel& model, std::mt19937_64& rng);

/// Synthesize the pair of tag detections for one frame. Invalid detections
/// are returned with valid = false (outside FOV or occluded).
std::pair<TagDetection, TagDetection> simulate_camera(
    const Vec3& camera_position, const BrickTruth& truth,
    const MarkerGeometry& geom, const CameraModel& model,
    const CameraBias& bias, std::mt19937_64& rng);

/// Result of the constrained least-squares refinement of a marker pair.
struct RefinedPair {
  Vec3 p1;
  Vec3 p2;
  double cost = 0.0;
  double grad_norm = 0.0;
  bool fallback = false;  // solver failed; raw measurements returned
};

/// Cost of a candidate pair against the measurements:
/// proximity + squared distance-constraint residual + squared planarity
/// residual, weighted. Gradient is filled when non-null (6 entries,
/// [p1; p2] order).
double marker_pair_cost(const Vec3& p1, const Vec3& p2, const Vec3& p1_meas,
                        const Vec3& p2_meas, double d, const FilterWeights& w,
                        Eigen::VectorXd* grad = nullptr);

RefinedPair refine_marker_pair(const Vec3& p1_meas, const Vec3& p2_meas,
                               const MarkerGeometry& geom,
                               const FilterWeights& weights);

/// Single-frame brick pose from whatever tags are visible. Returns nothing
/// when both tags are missing.
struct PoseSample {
  Vec3 center;
  double yaw;
  PoseSource source;
  bool fallback = false;
};

std::optional<PoseSample> estimate_brick_pose(
    const std::optional<TagDetection>& t1, const std::optional<TagDetection>& t2,
    const MarkerGeometry& geom, const FilterWeights& weights);

/// Rolling window of single-frame estimates; smooths position with the
/// arithmetic mean and yaw with the circular mean, and scores confidence from
/// the horizontal sample deviations.
class ConfidenceWindow {
 public:
  ConfidenceWindow(int capacity, double sigma_tol);

  PoseEstimate update(const PoseSample& sample);
  PoseEstimate current() const;

  void clear();
  int size() const { return static_cast<int>(positions_.size()); }
  bool full() const { return static_cast<int>(positions_.size()) >= capacity_; }

 private:
  int capacity_;
  double sigma_tol_;
  std::deque<Vec3> positions_;
  std::deque<double> yaws_;
  PoseSource last_source_ = PoseSource::none;
};

}  // namespace skymason
