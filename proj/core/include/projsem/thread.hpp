#pragma once

// Finite-state threads: rooted graphs over the deadlock constant D, the
// termination constant S, and postconditional composition p <| a |> q.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "projsem/action.hpp"

namespace projsem {

using NodeRef = std::uint32_t;

struct Deadlock {
  friend bool operator==(const Deadlock&, const Deadlock&) = default;
};

struct Stop {
  friend bool operator==(const Stop&, const Stop&) = default;
};

/// Perform `action`; continue at `on_true` on a positive reply and at
/// `on_false` on a negative one.
struct Branch {
  Action action;
  NodeRef on_true = 0;
  NodeRef on_false = 0;

  friend bool operator==(const Branch&, const Branch&) = default;
};

using ThreadNode = std::variant<Deadlock, Stop, Branch>;

/// Immutable rooted thread graph.
///
/// Construction validates every reference and drops nodes unreachable from the
/// root. Surviving nodes are renumbered in breadth-first order from the root
/// (true-successor before false-successor), so the root is always node 0 and
/// equal inputs up to node numbering produce identical graphs.
class ThreadGraph {
 public:
  /// Throws Error on a dangling reference.
  ThreadGraph(std::vector<ThreadNode> nodes, NodeRef root);

  static ThreadGraph stop();
  static ThreadGraph deadlock();

  NodeRef root() const noexcept { return 0; }
  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<ThreadNode>& nodes() const noexcept { return nodes_; }
  const ThreadNode& node(NodeRef ref) const { return nodes_.at(ref); }
  const ThreadNode& root_node() const { return nodes_.front(); }

  friend bool operator==(const ThreadGraph&, const ThreadGraph&) = default;

 private:
  std::vector<ThreadNode> nodes_;
};

/// a o t, i.e. t <| a |> t.
ThreadGraph action_prefix(const Action& a, const ThreadGraph& t);

/// on_true <| a |> on_false, built as a disjoint union of the operands.
ThreadGraph postconditional(const Action& a, const ThreadGraph& on_true,
                            const ThreadGraph& on_false);

/// Evidence that two threads differ: following `replies` ('t'/'f') from both
/// roots reaches nodes that differ in kind or action.
struct Distinction {
  std::string replies;
  std::string left;
  std::string right;
};

/// Shortest distinguishing reply sequence, or nullopt when the roots are
/// bisimilar.
std::optional<Distinction> distinguish(const ThreadGraph& left, const ThreadGraph& right);

bool bisimilar(const ThreadGraph& left, const ThreadGraph& right);

/// Quotient by bisimilarity (partition refinement). Bisimilar inputs yield
/// identical outputs.
ThreadGraph minimize(const ThreadGraph& t);

enum class TraceEnd { Stopped, Deadlocked, CutOff };

std::string_view to_string(TraceEnd end) noexcept;

struct Trace {
  std::vector<Action> actions;
  TraceEnd end = TraceEnd::CutOff;
};

/// Walks from the root consuming one reply per branch.
Trace unfold_trace(const ThreadGraph& t, std::span<const bool> replies);

/// "S", "D", or the action of a branch node.
std::string describe(const ThreadNode& node);

}  // namespace projsem
