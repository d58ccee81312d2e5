#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "skymason/errors.hpp"
#include "skymason/geometry.hpp"

namespace skymason {

struct BrickSpec {
  int id = 0;
  int layer = 0;
  Vec3 target_center = Vec3::Zero();
  double target_yaw = 0.0;
  Vec3 dims{0.4, 0.2, 0.2};  // length, width, height
  std::array<int, 2> marker_ids{0, 1};
  Vec3 pickup_approx = Vec3::Zero();
  bool has_pickup = false;
  bool pre_placed = false;

  double height() const { return dims.z(); }
  double top_z() const { return target_center.z() + dims.z() / 2.0; }
  double bottom_z() const { return target_center.z() - dims.z() / 2.0; }
  Rect2 footprint() const {
    return footprint_rect(target_center.x(), target_center.y(), dims.x(), dims.y(),
                          target_yaw);
  }
};

struct PickupSite {
  int id = 0;
  Vec3 position = Vec3::Zero();
};

enum class AgentKind { brick, adhesion };

struct AgentSpec {
  int id = 0;
  AgentKind kind = AgentKind::brick;
  Vec3 home = Vec3::Zero();
};

struct WallPlan {
  std::vector<BrickSpec> bricks;

  const BrickSpec* find(int brick_id) const;
  std::size_t pending_count() const;
  std::size_t pre_placed_count() const;
};

struct WorkspaceSetup {
  std::vector<PickupSite> pickup_sites;
  std::vector<AgentSpec> agents;
};

/// Mission-wide parameters; defaults match the deployed configuration.
struct MissionParams {
  double r_c = 1.5;        // minimum inter-UAV clearance [m]
  double h_cr = 1.2;       // cruise altitude [m]
  double t_f = 7.0;        // guided descent duration [s]
  double d = 0.175;        // marker separation [m]
  double w_prox = 2.0;
  double w_dist = 1.0;
  double w_plane = 1.0;
  int n_window = 30;       // smoothing window samples
  double sigma_tol = 0.04; // confidence deviation tolerance [m]
  double c_th = 0.75;      // confidence threshold
  double r_pl = 0.05;      // release proximity [m]
  double dt = 0.02;        // simulation step [s]
  std::uint64_t seed = 1;

  void validate() const;  // throws ValidationError
};

struct Blueprint {
  WallPlan plan;
  WorkspaceSetup setup;
  MissionParams params;
};

/// Parse and validate a blueprint file (JSON tree; see docs/blueprint.md).
/// Throws ParseError for schema problems and ValidationError for invariant
/// violations.
Blueprint parse_blueprint(const std::string& path);

/// Same, from an in-memory document.
Blueprint parse_blueprint_text(const std::string& text);

/// One machine-readable validation finding.
struct Finding {
  std::string kind;     // "parse" | "validation" | "layout"
  std::string subject;  // e.g. "brick 3"
  std::string message;
};

/// Non-throwing full check of a blueprint file: schema, invariants and layout
/// (derivability of the task set). Returns every finding instead of stopping
/// at the first.
std::vector<Finding> validate_blueprint(const std::string& path);

}  // namespace skymason
