#include "projsem/services.hpp"

#include <limits>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "lex.hpp"
#include "projsem/error.hpp"

namespace projsem {

std::string_view to_string(Reply r) noexcept {
  switch (r) {
    case Reply::True:
      return "True";
    case Reply::False:
      return "False";
    case Reply::Blocked:
      return "Blocked";
  }
  return "Blocked";
}

std::size_t ServiceStateHash::operator()(const ServiceState& s) const noexcept {
  std::size_t h = s.undef ? 0x51ed270b27ULL : 0x2545f4914f6cdd1dULL;
  for (std::uint32_t c : s.cells) h = (h ^ c) * 0x100000001b3ULL + (h >> 29);
  return h;
}

ServiceInstance::ServiceInstance(std::shared_ptr<const ServiceDescription> description,
                                 ServiceState state)
    : description_(std::move(description)), state_(std::move(state)) {
  if (!description_) throw Error("service instance without a description");
  if (!description_->contains(state_)) {
    throw Error("state is not in the state set of the " + std::string(description_->family()) +
                " family");
  }
}

Reply reply(const ServiceInstance& svc, std::string_view method) {
  return svc.description().yield(method, svc.state());
}

ServiceInstance step(const ServiceInstance& svc, std::string_view method) {
  return ServiceInstance(svc.description_ptr(), svc.description().effect(method, svc.state()));
}

ServiceState cumulative_effect(const ServiceDescription& d, ServiceState s,
                               std::span<const std::string> methods) {
  for (const auto& m : methods) s = d.effect(m, s);
  return s;
}

Reply replay_reply(const ServiceDescription& d, const ServiceState& s,
                   std::span<const std::string> methods) {
  if (methods.empty()) throw Error("reply functions are defined on non-empty sequences");
  return d.yield(methods.back(), cumulative_effect(d, s, methods.first(methods.size() - 1)));
}

namespace {

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    r *= base;
  }
  return r;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max()
                                                           : a + b;
}

// `name:<n>` with a canonical numeral in [0, bound].
std::optional<std::uint32_t> numeral_arg(std::string_view text, std::uint64_t lo, std::uint64_t hi) {
  const auto v = detail::parse_canonical_numeral(text);
  if (!v || *v < lo || *v > hi) return std::nullopt;
  return static_cast<std::uint32_t>(*v);
}

class RegisterFile final : public ServiceDescription {
 public:
  explicit RegisterFile(const EnvParams& env) : env_(env) {}

  std::string_view family() const noexcept override { return "register file"; }

  ServiceState effect(std::string_view method, const ServiceState& s) const override {
    const auto m = decode(method);
    if (s.undef || !m) return ServiceState::sink();
    if (!m->set) return s;
    ServiceState next = s;
    next.cells[m->reg - 1] = m->value;
    return next;
  }

  Reply yield(std::string_view method, const ServiceState& s) const override {
    const auto m = decode(method);
    if (s.undef || !m) return Reply::Blocked;
    if (m->set) return Reply::True;
    return s.cells[m->reg - 1] == m->value ? Reply::True : Reply::False;
  }

  bool contains(const ServiceState& s) const override {
    if (s.undef) return s.cells.empty();
    if (s.cells.size() != env_.maxr) return false;
    for (std::uint32_t c : s.cells) {
      if (c > env_.maxn) return false;
    }
    return true;
  }

  std::vector<ServiceState> states() const override {
    std::vector<ServiceState> out;
    ServiceState s{false, std::vector<std::uint32_t>(env_.maxr, 0)};
    for (;;) {
      out.push_back(s);
      std::size_t i = 0;
      while (i < s.cells.size() && s.cells[i] == env_.maxn) s.cells[i++] = 0;
      if (i == s.cells.size()) break;
      ++s.cells[i];
    }
    out.push_back(ServiceState::sink());
    return out;
  }

  std::uint64_t state_count() const override {
    return saturating_add(saturating_pow(std::uint64_t{env_.maxn} + 1, env_.maxr), 1);
  }

 private:
  struct Decoded {
    bool set;
    std::uint32_t reg;
    std::uint32_t value;
  };

  // set:<i>:<n> or eq:<i>:<n> with i in [1,maxr] and n in [0,maxn].
  std::optional<Decoded> decode(std::string_view method) const {
    bool set = false;
    if (method.starts_with("set:")) {
      set = true;
      method.remove_prefix(4);
    } else if (method.starts_with("eq:")) {
      method.remove_prefix(3);
    } else {
      return std::nullopt;
    }
    const auto colon = method.find(':');
    if (colon == std::string_view::npos) return std::nullopt;
    const auto reg = numeral_arg(method.substr(0, colon), 1, env_.maxr);
    const auto value = numeral_arg(method.substr(colon + 1), 0, env_.maxn);
    if (!reg || !value) return std::nullopt;
    return Decoded{set, *reg, *value};
  }

  EnvParams env_;
};

class Stack final : public ServiceDescription {
 public:
  explicit Stack(const EnvParams& env) : env_(env) {}

  std::string_view family() const noexcept override { return "stack"; }

  ServiceState effect(std::string_view method, const ServiceState& s) const override {
    const auto m = decode(method);
    if (s.undef || !m) return ServiceState::sink();
    ServiceState next = s;
    switch (m->kind) {
      case Kind::Push:
        if (next.cells.size() < env_.maxs) next.cells.push_back(m->value);
        break;
      case Kind::Pop:
        if (!next.cells.empty()) next.cells.pop_back();
        break;
      case Kind::TopEq:
        break;
    }
    return next;
  }

  Reply yield(std::string_view method, const ServiceState& s) const override {
    const auto m = decode(method);
    if (s.undef || !m) return Reply::Blocked;
    switch (m->kind) {
      case Kind::Push:
        return s.cells.size() < env_.maxs ? Reply::True : Reply::False;
      case Kind::Pop:
        return s.cells.empty() ? Reply::False : Reply::True;
      case Kind::TopEq:
        return !s.cells.empty() && s.cells.back() == m->value ? Reply::True : Reply::False;
    }
    return Reply::Blocked;
  }

  bool contains(const ServiceState& s) const override {
    if (s.undef) return s.cells.empty();
    if (s.cells.size() > env_.maxs) return false;
    for (std::uint32_t c : s.cells) {
      if (c > env_.maxn) return false;
    }
    return true;
  }

  std::vector<ServiceState> states() const override {
    std::vector<ServiceState> out{ServiceState{}};
    for (std::size_t head = 0; head < out.size(); ++head) {
      if (out[head].cells.size() == env_.maxs) continue;
      for (std::uint32_t v = 0; v <= env_.maxn; ++v) {
        ServiceState next = out[head];
        next.cells.push_back(v);
        out.push_back(std::move(next));
      }
    }
    out.push_back(ServiceState::sink());
    return out;
  }

  std::uint64_t state_count() const override {
    std::uint64_t total = 1;  // sink
    for (std::uint64_t d = 0; d <= env_.maxs; ++d) {
      total = saturating_add(total, saturating_pow(std::uint64_t{env_.maxn} + 1, d));
    }
    return total;
  }

 private:
  enum class Kind { Push, TopEq, Pop };
  struct Decoded {
    Kind kind;
    std::uint32_t value;
  };

  std::optional<Decoded> decode(std::string_view method) const {
    if (method == "pop") return Decoded{Kind::Pop, 0};
    Kind kind = Kind::Push;
    if (method.starts_with("push:")) {
      method.remove_prefix(5);
    } else if (method.starts_with("topeq:")) {
      kind = Kind::TopEq;
      method.remove_prefix(6);
    } else {
      return std::nullopt;
    }
    const auto value = numeral_arg(method, 0, env_.maxn);
    if (!value) return std::nullopt;
    return Decoded{kind, *value};
  }

  EnvParams env_;
};

}  // namespace

std::shared_ptr<const ServiceDescription> register_file_description(const EnvParams& env) {
  env.validate();
  return std::make_shared<const RegisterFile>(env);
}

ServiceInstance make_register_file(const EnvParams& env,
                                   const std::map<std::uint32_t, std::uint32_t>& initial) {
  env.validate();
  if (initial.size() != env.maxr) {
    throw ProgramError("register file initial state must define exactly registers 1.." +
                       std::to_string(env.maxr));
  }
  ServiceState s{false, std::vector<std::uint32_t>(env.maxr, 0)};
  for (const auto& [reg, value] : initial) {
    if (reg < 1 || reg > env.maxr) {
      throw ProgramError("register " + std::to_string(reg) + " outside [1," +
                         std::to_string(env.maxr) + "]");
    }
    if (value > env.maxn) {
      throw ProgramError("register value " + std::to_string(value) + " exceeds maxn");
    }
    s.cells[reg - 1] = value;
  }
  return ServiceInstance(register_file_description(env), std::move(s));
}

ServiceInstance register_file_init(const EnvParams& env) {
  env.validate();
  return ServiceInstance(register_file_description(env),
                         ServiceState{false, std::vector<std::uint32_t>(env.maxr, 0)});
}

std::shared_ptr<const ServiceDescription> stack_description(const EnvParams& env) {
  if (env.maxn < 1) throw ProgramError("maxn must be at least 1");
  return std::make_shared<const Stack>(env);
}

ServiceInstance make_stack(const EnvParams& env, const std::vector<std::uint32_t>& initial) {
  if (initial.size() > env.maxs) throw ProgramError("initial stack longer than maxs");
  for (std::uint32_t v : initial) {
    if (v > env.maxn) throw ProgramError("stack element " + std::to_string(v) + " exceeds maxn");
  }
  return ServiceInstance(stack_description(env),
                         ServiceState{false, std::vector<std::uint32_t>(initial.rbegin(), initial.rend())});
}

ServiceInstance stack_init(const EnvParams& env) { return make_stack(env, {}); }

namespace {

struct Pair {
  NodeRef node;
  ServiceState state;

  friend bool operator==(const Pair&, const Pair&) = default;
};

struct PairHash {
  std::size_t operator()(const Pair& p) const noexcept {
    return ServiceStateHash{}(p.state) * 31 + p.node;
  }
};

}  // namespace

ThreadGraph compose_use(const ThreadGraph& t, std::string_view focus, const ServiceInstance& svc) {
  const ServiceDescription& desc = svc.description();
  constexpr NodeRef kNone = std::numeric_limits<NodeRef>::max();

  std::vector<ThreadNode> out;
  NodeRef stop = kNone;
  NodeRef dead = kNone;
  auto constant = [&](NodeRef& slot, ThreadNode node) {
    if (slot == kNone) {
      slot = static_cast<NodeRef>(out.size());
      out.push_back(std::move(node));
    }
    return slot;
  };

  std::unordered_map<Pair, NodeRef, PairHash> resolved;
  std::vector<std::pair<NodeRef, Pair>> work;

  // Follows hidden steps from `start` to the first visible action or
  // constant; every pair on the way denotes the same output node.
  auto resolve = [&](Pair start) -> NodeRef {
    if (const auto it = resolved.find(start); it != resolved.end()) return it->second;
    std::vector<Pair> path;
    std::unordered_set<Pair, PairHash> on_path;
    Pair cur = std::move(start);
    NodeRef result = kNone;
    for (;;) {
      if (const auto it = resolved.find(cur); it != resolved.end()) {
        result = it->second;
        break;
      }
      if (on_path.contains(cur)) {
        result = constant(dead, Deadlock{});
        break;
      }
      const ThreadNode& node = t.node(cur.node);
      if (std::holds_alternative<Stop>(node)) {
        result = constant(stop, Stop{});
        path.push_back(std::move(cur));
        break;
      }
      if (std::holds_alternative<Deadlock>(node)) {
        result = constant(dead, Deadlock{});
        path.push_back(std::move(cur));
        break;
      }
      const auto& b = std::get<Branch>(node);
      if (b.action.focus != focus) {
        result = static_cast<NodeRef>(out.size());
        out.push_back(Branch{b.action, 0, 0});
        work.emplace_back(result, cur);
        path.push_back(std::move(cur));
        break;
      }
      const Reply r = desc.yield(b.action.method, cur.state);
      if (r == Reply::Blocked) {
        result = constant(dead, Deadlock{});
        path.push_back(std::move(cur));
        break;
      }
      Pair next{r == Reply::True ? b.on_true : b.on_false, desc.effect(b.action.method, cur.state)};
      on_path.insert(cur);
      path.push_back(std::move(cur));
      cur = std::move(next);
    }
    for (auto& p : path) resolved.emplace(std::move(p), result);
    return result;
  };

  const NodeRef root = resolve(Pair{t.root(), svc.state()});
  while (!work.empty()) {
    auto [id, pair] = std::move(work.back());
    work.pop_back();
    const auto& b = std::get<Branch>(t.node(pair.node));
    const NodeRef on_true = resolve(Pair{b.on_true, pair.state});
    const NodeRef on_false = resolve(Pair{b.on_false, pair.state});
    out[id] = Branch{b.action, on_true, on_false};
  }
  return ThreadGraph(std::move(out), root);
}

}  // namespace projsem
