#include "projsem/thread.hpp"

#include <deque>
#include <limits>
#include <map>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "projsem/error.hpp"

namespace projsem {

namespace {

constexpr NodeRef kUnvisited = std::numeric_limits<NodeRef>::max();

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

// Appends a copy of `t` to `nodes`, returning the new index of its root.
NodeRef append(std::vector<ThreadNode>& nodes, const ThreadGraph& t) {
  const auto base = static_cast<NodeRef>(nodes.size());
  for (const auto& n : t.nodes()) {
    if (const auto* b = std::get_if<Branch>(&n)) {
      nodes.push_back(Branch{b->action, b->on_true + base, b->on_false + base});
    } else {
      nodes.push_back(n);
    }
  }
  return base;
}

}  // namespace

ThreadGraph::ThreadGraph(std::vector<ThreadNode> nodes, NodeRef root) {
  if (root >= nodes.size()) throw Error("thread graph root out of range");
  for (const auto& n : nodes) {
    if (const auto* b = std::get_if<Branch>(&n)) {
      if (b->on_true >= nodes.size() || b->on_false >= nodes.size()) {
        throw Error("thread graph has a dangling reference");
      }
    }
  }

  std::vector<NodeRef> renumber(nodes.size(), kUnvisited);
  std::vector<NodeRef> order;
  order.reserve(nodes.size());
  renumber[root] = 0;
  order.push_back(root);
  for (std::size_t head = 0; head < order.size(); ++head) {
    if (const auto* b = std::get_if<Branch>(&nodes[order[head]])) {
      for (NodeRef next : {b->on_true, b->on_false}) {
        if (renumber[next] == kUnvisited) {
          renumber[next] = static_cast<NodeRef>(order.size());
          order.push_back(next);
        }
      }
    }
  }

  nodes_.reserve(order.size());
  for (NodeRef old : order) {
    auto& n = nodes[old];
    if (auto* b = std::get_if<Branch>(&n)) {
      nodes_.push_back(Branch{std::move(b->action), renumber[b->on_true], renumber[b->on_false]});
    } else {
      nodes_.push_back(n);
    }
  }
}

ThreadGraph ThreadGraph::stop() { return ThreadGraph({Stop{}}, 0); }

ThreadGraph ThreadGraph::deadlock() { return ThreadGraph({Deadlock{}}, 0); }

ThreadGraph action_prefix(const Action& a, const ThreadGraph& t) {
  std::vector<ThreadNode> nodes;
  nodes.reserve(t.size() + 1);
  nodes.push_back(Deadlock{});
  const NodeRef body = append(nodes, t);
  nodes[0] = Branch{a, body, body};
  return ThreadGraph(std::move(nodes), 0);
}

ThreadGraph postconditional(const Action& a, const ThreadGraph& on_true,
                            const ThreadGraph& on_false) {
  std::vector<ThreadNode> nodes;
  nodes.reserve(on_true.size() + on_false.size() + 1);
  nodes.push_back(Deadlock{});
  const NodeRef t = append(nodes, on_true);
  const NodeRef f = append(nodes, on_false);
  nodes[0] = Branch{a, t, f};
  return ThreadGraph(std::move(nodes), 0);
}

std::string describe(const ThreadNode& node) {
  return std::visit(Overloaded{
                        [](const Deadlock&) -> std::string { return "D"; },
                        [](const Stop&) -> std::string { return "S"; },
                        [](const Branch& b) -> std::string { return b.action.str(); },
                    },
                    node);
}

std::optional<Distinction> distinguish(const ThreadGraph& left, const ThreadGraph& right) {
  struct Visit {
    NodeRef l;
    NodeRef r;
    std::size_t parent;
    char reply;
  };
  std::vector<Visit> queue{{left.root(), right.root(), 0, 0}};
  std::unordered_set<std::uint64_t> seen{0};

  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Visit v = queue[head];
    const ThreadNode& a = left.node(v.l);
    const ThreadNode& b = right.node(v.r);
    const auto* ba = std::get_if<Branch>(&a);
    const auto* bb = std::get_if<Branch>(&b);

    bool same = a.index() == b.index();
    if (same && ba != nullptr) same = ba->action == bb->action;
    if (!same) {
      std::string replies;
      for (std::size_t at = head; at != 0; at = queue[at].parent) replies.push_back(queue[at].reply);
      return Distinction{std::string(replies.rbegin(), replies.rend()), describe(a), describe(b)};
    }
    if (ba == nullptr) continue;

    for (const auto& [nl, nr, reply] : {std::tuple{ba->on_true, bb->on_true, 't'},
                                        std::tuple{ba->on_false, bb->on_false, 'f'}}) {
      const std::uint64_t key = (static_cast<std::uint64_t>(nl) << 32) | nr;
      if (seen.insert(key).second) queue.push_back({nl, nr, head, reply});
    }
  }
  return std::nullopt;
}

bool bisimilar(const ThreadGraph& left, const ThreadGraph& right) {
  return !distinguish(left, right).has_value();
}

ThreadGraph minimize(const ThreadGraph& t) {
  const auto& nodes = t.nodes();
  const std::size_t n = nodes.size();

  // Initial partition by kind and action.
  std::vector<std::uint32_t> block(n);
  std::uint32_t count = 0;
  {
    std::map<std::pair<std::size_t, std::string>, std::uint32_t> ids;
    for (std::size_t i = 0; i < n; ++i) {
      const auto* b = std::get_if<Branch>(&nodes[i]);
      auto key = std::pair{nodes[i].index(), b != nullptr ? b->action.str() : std::string()};
      auto [it, fresh] = ids.try_emplace(std::move(key), count);
      if (fresh) ++count;
      block[i] = it->second;
    }
  }

  // Moore refinement on (block, block of true-successor, block of false-successor).
  for (;;) {
    std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, std::uint32_t> ids;
    std::vector<std::uint32_t> next(n);
    std::uint32_t next_count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::tuple<std::uint32_t, std::uint32_t, std::uint32_t> key{block[i], 0, 0};
      if (const auto* b = std::get_if<Branch>(&nodes[i])) {
        key = {block[i], block[b->on_true], block[b->on_false]};
      }
      auto [it, fresh] = ids.try_emplace(key, next_count);
      if (fresh) ++next_count;
      next[i] = it->second;
    }
    block = std::move(next);
    if (next_count == count) break;
    count = next_count;
  }

  std::vector<ThreadNode> quotient(count, Deadlock{});
  std::vector<bool> filled(count, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (filled[block[i]]) continue;
    filled[block[i]] = true;
    if (const auto* b = std::get_if<Branch>(&nodes[i])) {
      quotient[block[i]] = Branch{b->action, block[b->on_true], block[b->on_false]};
    } else {
      quotient[block[i]] = nodes[i];
    }
  }
  return ThreadGraph(std::move(quotient), block[t.root()]);
}

std::string_view to_string(TraceEnd end) noexcept {
  switch (end) {
    case TraceEnd::Stopped:
      return "stopped";
    case TraceEnd::Deadlocked:
      return "deadlocked";
    case TraceEnd::CutOff:
      return "cut-off";
  }
  return "cut-off";
}

Trace unfold_trace(const ThreadGraph& t, std::span<const bool> replies) {
  Trace trace;
  NodeRef at = t.root();
  std::size_t used = 0;
  for (;;) {
    const ThreadNode& node = t.node(at);
    if (std::holds_alternative<Stop>(node)) {
      trace.end = TraceEnd::Stopped;
      return trace;
    }
    if (std::holds_alternative<Deadlock>(node)) {
      trace.end = TraceEnd::Deadlocked;
      return trace;
    }
    if (used == replies.size()) {
      trace.end = TraceEnd::CutOff;
      return trace;
    }
    const auto& b = std::get<Branch>(node);
    trace.actions.push_back(b.action);
    at = replies[used++] ? b.on_true : b.on_false;
  }
}

}  // namespace projsem
