#include "skymason/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace skymason {

namespace {

constexpr double kMinOverlap = 0.01;   // slivers below 1 cm carry no adhesion
constexpr double kStackZTol = 1e-3;
constexpr double kCollisionArea = 1e-9;

struct Support {
  std::size_t lower_index;
  Rect2 overlap;
};

/// Overlapped supports one layer below the given brick.
std::vector<Support> supports_of(const WallPlan& plan, std::size_t upper_index) {
  const BrickSpec& upper = plan.bricks[upper_index];
  std::vector<Support> out;
  for (std::size_t j = 0; j < plan.bricks.size(); ++j) {
    const BrickSpec& lower = plan.bricks[j];
    if (lower.layer != upper.layer - 1) continue;
    if (std::abs(lower.top_z() - upper.bottom_z()) > kStackZTol) continue;
    const Rect2 overlap = intersect(upper.footprint(), lower.footprint());
    if (overlap.empty()) continue;
    if (std::max(overlap.width_x(), overlap.width_y()) < kMinOverlap) continue;
    out.push_back({j, overlap});
  }
  return out;
}

AdhesionSpec make_adhesion(const BrickSpec& upper, const BrickSpec& lower,
                           const Rect2& overlap) {
  AdhesionSpec a;
  a.between = {upper.id, lower.id};
  const double z = lower.top_z();
  if (overlap.width_x() >= overlap.width_y()) {
    a.start = {overlap.x0, 0.5 * (overlap.y0 + overlap.y1), z};
    a.direction = {1.0, 0.0};
    a.length = overlap.width_x();
  } else {
    a.start = {0.5 * (overlap.x0 + overlap.x1), overlap.y0, z};
    a.direction = {0.0, 1.0};
    a.length = overlap.width_y();
  }
  return a;
}

std::vector<std::size_t> sorted_brick_indices(const WallPlan& plan, bool pre_placed) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < plan.bricks.size(); ++i) {
    if (plan.bricks[i].pre_placed == pre_placed) idx.push_back(i);
  }
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const BrickSpec& ba = plan.bricks[a];
    const BrickSpec& bb = plan.bricks[b];
    return std::tie(ba.layer, ba.target_center.x(), ba.target_center.y(), ba.id) <
           std::tie(bb.layer, bb.target_center.x(), bb.target_center.y(), bb.id);
  });
  return idx;
}

}  // namespace

void DependencyGraph::add_edge(int parent, int child) {
  children_[parent].push_back(child);
  parents_[child].push_back(parent);
  edges_.emplace_back(parent, child);
}

std::vector<int> DependencyGraph::descendants(int node) const {
  std::vector<int> out;
  std::vector<bool> seen(children_.size(), false);
  std::vector<int> stack(children_[node].begin(), children_[node].end());
  while (!stack.empty()) {
    const int cur = stack.back();
    stack.pop_back();
    if (seen[cur]) continue;
    seen[cur] = true;
    out.push_back(cur);
    for (int next : children_[cur]) stack.push_back(next);
  }
  return out;
}

bool DependencyGraph::has_path(int from, int to) const {
  if (from == to) return false;
  std::vector<bool> seen(children_.size(), false);
  std::vector<int> stack{from};
  while (!stack.empty()) {
    const int cur = stack.back();
    stack.pop_back();
    for (int next : children_[cur]) {
      if (next == to) return true;
      if (!seen[next]) {
        seen[next] = true;
        stack.push_back(next);
      }
    }
  }
  return false;
}

bool DependencyGraph::connected_either_way(int a, int b) const {
  return has_path(a, b) || has_path(b, a);
}

bool DependencyGraph::is_acyclic() const {
  const int n = node_count();
  std::vector<int> indeg(n, 0);
  for (const auto& [parent, child] : edges_) {
    (void)parent;
    ++indeg[child];
  }
  std::vector<int> stack;
  for (int i = 0; i < n; ++i) {
    if (indeg[i] == 0) stack.push_back(i);
  }
  int visited = 0;
  while (!stack.empty()) {
    const int cur = stack.back();
    stack.pop_back();
    ++visited;
    for (int next : children_[cur]) {
      if (--indeg[next] == 0) stack.push_back(next);
    }
  }
  return visited == n;
}

void ConflictGraph::add_pair(int a, int b, bool adhesion_brick) {
  const auto key = std::minmax(a, b);
  (adhesion_brick ? adhesion_brick_ : brick_brick_).insert(key);
}

bool ConflictGraph::conflicts(int a, int b) const {
  const auto key = std::minmax(a, b);
  return brick_brick_.count(key) > 0 || adhesion_brick_.count(key) > 0;
}

std::set<std::pair<int, int>> ConflictGraph::all_pairs() const {
  std::set<std::pair<int, int>> out = brick_brick_;
  out.insert(adhesion_brick_.begin(), adhesion_brick_.end());
  return out;
}

const Task* TaskSet::find_label(const std::string& label) const {
  for (const Task& t : tasks) {
    if (t.label == label) return &t;
  }
  return nullptr;
}

std::size_t TaskSet::pending_count() const {
  std::size_t n = 0;
  for (const Task& t : tasks) n += t.pre_completed ? 0 : 1;
  return n;
}

std::vector<Finding> layout_findings(const WallPlan& plan) {
  std::vector<Finding> out;
  auto subject = [](const BrickSpec& b) {
    std::ostringstream ss;
    ss << "brick " << b.id;
    return ss.str();
  };

  for (std::size_t i = 0; i < plan.bricks.size(); ++i) {
    for (std::size_t j = i + 1; j < plan.bricks.size(); ++j) {
      const BrickSpec& a = plan.bricks[i];
      const BrickSpec& b = plan.bricks[j];
      if (a.layer != b.layer) continue;
      const Rect2 overlap = intersect(a.footprint(), b.footprint());
      if (!overlap.empty() && overlap.width_x() * overlap.width_y() > kCollisionArea) {
        std::ostringstream msg;
        msg << "intersects brick " << b.id << " in layer " << a.layer;
        out.push_back({"layout", subject(a), msg.str()});
      }
    }
  }

  for (std::size_t i = 0; i < plan.bricks.size(); ++i) {
    const BrickSpec& b = plan.bricks[i];
    if (b.layer == 0) continue;
    const std::vector<Support> sup = supports_of(plan, i);
    if (sup.empty()) {
      out.push_back({"layout", subject(b), "no supporting overlap one layer below"});
      continue;
    }
    if (b.pre_placed) {
      for (const Support& s : sup) {
        if (!plan.bricks[s.lower_index].pre_placed) {
          std::ostringstream msg;
          msg << "pre-placed brick rests on pending brick " << plan.bricks[s.lower_index].id;
          out.push_back({"layout", subject(b), msg.str()});
        }
      }
    }
  }
  return out;
}

TaskSet derive_tasks(const WallPlan& plan) {
  {
    const std::vector<Finding> defects = layout_findings(plan);
    if (!defects.empty()) {
      throw LayoutError(defects.front().subject + ": " + defects.front().message);
    }
  }

  TaskSet set;

  // Brick tasks: pending bricks first so the executable tasks carry the low
  // labels, then the pre-placed ones as already-complete nodes.
  std::map<int, int> brick_task_of;  // brick id -> task id
  int label_counter = 0;
  auto add_brick_task = [&](const BrickSpec& b) {
    Task t;
    t.id = static_cast<int>(set.tasks.size());
    t.kind = TaskKind::brick;
    t.brick_id = b.id;
    t.location = b.target_center;
    t.pre_completed = b.pre_placed;
    std::ostringstream label;
    label << "B_" << label_counter++;
    t.label = label.str();
    brick_task_of[b.id] = t.id;
    set.tasks.push_back(std::move(t));
  };
  for (std::size_t i : sorted_brick_indices(plan, false)) add_brick_task(plan.bricks[i]);
  for (std::size_t i : sorted_brick_indices(plan, true)) add_brick_task(plan.bricks[i]);

  // Adhesion tasks: one per pending brick per overlapped support.
  std::vector<AdhesionSpec> raw;
  for (std::size_t i = 0; i < plan.bricks.size(); ++i) {
    const BrickSpec& upper = plan.bricks[i];
    if (upper.pre_placed || upper.layer == 0) continue;
    for (const Support& s : supports_of(plan, i)) {
      raw.push_back(make_adhesion(upper, plan.bricks[s.lower_index], s.overlap));
    }
  }
  std::sort(raw.begin(), raw.end(), [](const AdhesionSpec& a, const AdhesionSpec& b) {
    return std::tie(a.start.z(), a.start.x(), a.start.y()) <
           std::tie(b.start.z(), b.start.x(), b.start.y());
  });

  DependencyGraph dep(static_cast<int>(set.tasks.size() + raw.size()));
  for (std::size_t m = 0; m < raw.size(); ++m) {
    AdhesionSpec spec = raw[m];
    spec.id = static_cast<int>(m);

    Task t;
    t.id = static_cast<int>(set.tasks.size());
    t.kind = TaskKind::adhesion;
    t.adhesion_id = spec.id;
    t.segment = spec.segment();
    t.location = spec.start;
    std::ostringstream label;
    label << "A_" << m;
    t.label = label.str();

    dep.add_edge(brick_task_of.at(spec.between.first), t.id);
    dep.add_edge(t.id, brick_task_of.at(spec.between.second));

    set.tasks.push_back(std::move(t));
    set.adhesions.push_back(std::move(spec));
  }

  set.dependencies = std::move(dep);
  if (!set.dependencies.is_acyclic()) {
    throw LayoutError("derived dependency graph has a cycle");  // unreachable for layered walls
  }
  return set;
}

double task_distance(const Task& a, const Task& b) {
  const bool a_seg = a.segment.has_value();
  const bool b_seg = b.segment.has_value();
  if (a_seg && b_seg) return segment_segment_distance(*a.segment, *b.segment);
  if (a_seg) return point_segment_distance(b.location, *a.segment);
  if (b_seg) return point_segment_distance(a.location, *b.segment);
  return (a.location - b.location).norm();
}

ConflictGraph build_conflict_graph(const TaskSet& set, double r_c) {
  ConflictGraph out;
  for (std::size_t i = 0; i < set.tasks.size(); ++i) {
    for (std::size_t j = i + 1; j < set.tasks.size(); ++j) {
      const Task& a = set.tasks[i];
      const Task& b = set.tasks[j];
      if (a.pre_completed || b.pre_completed) continue;  // never executed again
      if (a.kind == TaskKind::adhesion && b.kind == TaskKind::adhesion) continue;
      if (task_distance(a, b) > r_c) continue;
      if (set.dependencies.connected_either_way(a.id, b.id)) continue;
      const bool adhesion_brick = (a.kind != b.kind);
      out.add_pair(a.id, b.id, adhesion_brick);
    }
  }
  return out;
}

std::string to_dot(const TaskSet& set, const ConflictGraph& conflicts) {
  std::ostringstream os;
  os << "digraph mission_tasks {\n";
  os << "  node [fontname=\"Helvetica\"];\n";
  for (const Task& t : set.tasks) {
    os << "  \"" << t.label << "\" [shape="
       << (t.kind == TaskKind::brick ? "box" : "ellipse");
    if (t.pre_completed) os << ", style=filled, fillcolor=gray85";
    os << "];\n";
  }
  for (const auto& [parent, child] : set.dependencies.edges()) {
    os << "  \"" << set.tasks[parent].label << "\" -> \"" << set.tasks[child].label
       << "\";\n";
  }
  for (const auto& [a, b] : conflicts.all_pairs()) {
    os << "  \"" << set.tasks[a].label << "\" -> \"" << set.tasks[b].label
       << "\" [dir=none, style=dashed, constraint=false];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace skymason
