#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "skymason/blueprint.hpp"
#include "skymason/geometry.hpp"

namespace skymason {

enum class TaskKind { brick, adhesion };

/// Linear adhesive pass over the horizontal overlap of a supported pair.
struct AdhesionSpec {
  int id = 0;             // index among adhesion tasks
  Vec3 start = Vec3::Zero();
  double length = 0.0;    // l_A
  Vec2 direction{1.0, 0.0};
  std::pair<int, int> between{0, 0};  // (upper brick id, lower brick id)

  Segment3 segment() const {
    return {start, start + Vec3(direction.x(), direction.y(), 0.0) * length};
  }
};

/// One schedulable unit: placing a brick or spraying one adhesion pass.
struct Task {
  int id = 0;                     // global node id in the dependency graph
  TaskKind kind = TaskKind::brick;
  std::string label;              // "B_0", "A_1", ...
  int brick_id = -1;              // brick tasks: BrickSpec id
  int adhesion_id = -1;           // adhesion tasks: AdhesionSpec id
  Vec3 location = Vec3::Zero();   // brick: drop-off target center
  std::optional<Segment3> segment;  // adhesion: full span
  bool pre_completed = false;     // pre-placed bricks enter complete
};

/// Directed acyclic graph; an edge (parent, child) means the parent needs the
/// child finished first.
class DependencyGraph {
 public:
  explicit DependencyGraph(int node_count = 0) : children_(node_count), parents_(node_count) {}

  int node_count() const { return static_cast<int>(children_.size()); }
  void add_edge(int parent, int child);

  const std::vector<int>& children(int node) const { return children_[node]; }
  const std::vector<int>& parents(int node) const { return parents_[node]; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  /// All nodes reachable through child edges (what must finish before node).
  std::vector<int> descendants(int node) const;
  bool has_path(int from, int to) const;
  bool connected_either_way(int a, int b) const;
  bool is_acyclic() const;

 private:
  std::vector<std::vector<int>> children_;
  std::vector<std::vector<int>> parents_;
  std::vector<std::pair<int, int>> edges_;
};

/// Unordered pairs of tasks that may not run concurrently, split into the
/// brick-brick and adhesion-brick families.
class ConflictGraph {
 public:
  void add_pair(int a, int b, bool adhesion_brick);

  bool conflicts(int a, int b) const;
  const std::set<std::pair<int, int>>& brick_brick() const { return brick_brick_; }
  const std::set<std::pair<int, int>>& adhesion_brick() const { return adhesion_brick_; }
  std::set<std::pair<int, int>> all_pairs() const;
  std::size_t size() const { return brick_brick_.size() + adhesion_brick_.size(); }

 private:
  std::set<std::pair<int, int>> brick_brick_;
  std::set<std::pair<int, int>> adhesion_brick_;
};

/// Tasks plus their dependency structure, as derived from a wall plan.
struct TaskSet {
  std::vector<Task> tasks;
  std::vector<AdhesionSpec> adhesions;
  DependencyGraph dependencies;

  const Task* find_label(const std::string& label) const;
  std::size_t pending_count() const;
};

/// Derive brick and adhesion tasks with their dependency graph.
/// Throws LayoutError for same-layer collisions or unsupported bricks.
TaskSet derive_tasks(const WallPlan& plan);

/// Non-throwing variant of the layout rules behind derive_tasks; reports
/// every defect instead of stopping at the first.
std::vector<Finding> layout_findings(const WallPlan& plan);

/// Distance between two task locations: point-to-point, point-to-segment or
/// segment-to-segment depending on the task kinds.
double task_distance(const Task& a, const Task& b);

/// Conflict pairs among tasks that can still execute: pair present iff the
/// task locations are within r_c and no dependency path links the two.
ConflictGraph build_conflict_graph(const TaskSet& set, double r_c);

/// DOT rendering of both graphs: solid directed dependency edges, dashed
/// undirected conflict edges; completed nodes filled.
std::string to_dot(const TaskSet& set, const ConflictGraph& conflicts);

}  // namespace skymason
