#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "skymason/graphs.hpp"

namespace skymason {

enum class TaskStatus { blocked, available, assigned, in_progress, complete, failed_retryable };

const char* to_string(TaskStatus s);

struct AgentHandle {
  int agent_id = 0;
  AgentKind kind = AgentKind::brick;
  bool busy = false;
  std::optional<int> current_task;
};

struct AvailableSets {
  std::vector<int> adhesion;  // ascending task id
  std::vector<int> brick;
};

struct Assignment {
  int agent_id;
  int task_id;
};

enum class TaskOutcome { success, fail };

struct PlannerOptions {
  int max_task_retries = 0;        // 0 = unlimited
  bool conflict_pruning = true;    // test harnesses may disable
};

/// Availability under the dependency graph: a task is returned iff every
/// descendant is complete and the task itself is not already assigned,
/// running or done.
AvailableSets available_tasks(const DependencyGraph& dep,
                              const std::map<int, TaskStatus>& status,
                              const std::vector<Task>& tasks);

/// Drop candidates that conflict with an active task, and resolve mutual
/// conflicts inside the candidate set by keeping the lowest id.
std::vector<int> prune_conflicting(const std::vector<int>& candidates,
                                   const ConflictGraph& conflicts,
                                   const std::set<int>& active);

/// Centralized reactive mission control. One owner drives it; queries return
/// value snapshots.
class Planner {
 public:
  Planner(const TaskSet& tasks, const ConflictGraph& conflicts, PlannerOptions opts = {});

  /// One reactive assignment round: every idle agent of each kind receives at
  /// most one available, non-conflicting task of its kind. Brick tasks are
  /// handed out before adhesion tasks; tasks assigned earlier in the round
  /// count as active for the later ones.
  std::vector<Assignment> assign_step(std::vector<AgentHandle>& agents);

  /// Agent picked up the task; assigned -> in_progress.
  void notify_started(int task_id);

  /// Terminal report for an in-progress task. Success completes it; failure
  /// sends it back to the pool (until the retry budget, if any, runs out).
  void notify_complete(int task_id, TaskOutcome outcome);

  AvailableSets available() const;
  TaskStatus status(int task_id) const;
  const std::map<int, TaskStatus>& status_map() const { return status_; }
  int retry_count(int task_id) const;

  bool mission_complete() const;
  /// True when nothing is running, nothing can be assigned anymore and the
  /// mission is not complete (exhausted retries or wrong agent mix).
  bool stalled(const std::vector<AgentHandle>& agents) const;

  /// Safety predicate: no two in-progress/assigned tasks form a conflict pair.
  bool active_set_conflict_free() const;

  const TaskSet& task_set() const { return tasks_; }
  const ConflictGraph& conflict_graph() const { return conflicts_; }

 private:
  std::set<int> active_tasks() const;
  bool retryable(int task_id) const;

  TaskSet tasks_;
  ConflictGraph conflicts_;
  PlannerOptions opts_;
  std::map<int, TaskStatus> status_;
  std::map<int, int> retries_;
};

}  // namespace skymason
