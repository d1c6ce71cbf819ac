#include "projsem/interpreter.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>

#include "projsem/error.hpp"

namespace projsem {

namespace {

constexpr NodeRef kUnset = std::numeric_limits<NodeRef>::max();

struct Machine {
  std::uint64_t pc;
  std::vector<std::uint32_t> internal;

  friend auto operator<=>(const Machine&, const Machine&) = default;
};

// Canonical numeral: "0", or digits without a leading zero.
std::optional<std::uint64_t> numeral(std::string_view s) {
  if (s.empty() || s.size() > 18) return std::nullopt;
  if (s.size() > 1 && s.front() == '0') return std::nullopt;
  std::uint64_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

enum class Outcome { Yes, No, Blocked };

class Interpreter {
 public:
  Interpreter(const Program& p, const EnvParams& env)
      : p_(p), env_(env), k_(p.size()), registers_(uses_register_file(p.notation)) {}

  ThreadGraph run() {
    Machine start{1, {}};
    if (registers_) start.internal.assign(env_.maxr, 0);
    const NodeRef root = settle(start);
    while (!pending_.empty()) {
      const auto [id, m] = pending_.back();
      pending_.pop_back();
      const Instruction& u = p_.at(m.pc);
      const NodeRef yes = enter(after_reply(u, m.pc, true), m.internal);
      const NodeRef no = enter(after_reply(u, m.pc, false), m.internal);
      nodes_[id] = Branch{u.action, yes, no};
    }
    return ThreadGraph(std::move(nodes_), root);
  }

 private:
  // Next pc after a basic instruction at `pc` receiving `reply`; 0 = past end.
  std::uint64_t after_reply(const Instruction& u, std::uint64_t pc, bool reply) const {
    std::uint64_t next = pc + 1;
    if (u.op == Op::PosTest && !reply) next = pc + 2;
    if (u.op == Op::NegTest && reply) next = pc + 2;
    return next > k_ ? 0 : next;
  }

  NodeRef enter(std::uint64_t pc, const std::vector<std::uint32_t>& internal) {
    if (pc == 0) return stop();
    return settle(Machine{pc, internal});
  }

  NodeRef stop() {
    if (stop_ == kUnset) {
      stop_ = static_cast<NodeRef>(nodes_.size());
      nodes_.push_back(Stop{});
    }
    return stop_;
  }

  NodeRef dead() {
    if (dead_ == kUnset) {
      dead_ = static_cast<NodeRef>(nodes_.size());
      nodes_.push_back(Deadlock{});
    }
    return dead_;
  }

  bool hidden(const Action& a) const { return registers_ && a.focus == "rf"; }

  Outcome register_op(const std::string& method, std::vector<std::uint32_t>& regs) const {
    const bool set = method.rfind("set:", 0) == 0;
    const bool eq = method.rfind("eq:", 0) == 0;
    if (!set && !eq) return Outcome::Blocked;
    const std::string_view rest = std::string_view(method).substr(set ? 4 : 3);
    const auto colon = rest.find(':');
    if (colon == std::string_view::npos) return Outcome::Blocked;
    const auto i = numeral(rest.substr(0, colon));
    const auto n = numeral(rest.substr(colon + 1));
    if (!i || !n || *i < 1 || *i > env_.maxr || *n > env_.maxn) return Outcome::Blocked;
    if (set) {
      regs[*i - 1] = static_cast<std::uint32_t>(*n);
      return Outcome::Yes;
    }
    return regs[*i - 1] == *n ? Outcome::Yes : Outcome::No;
  }

  std::uint32_t reg(const Machine& m, std::uint64_t i) const { return m.internal.at(i - 1); }

  enum class Step { Continue, Stop, Dead, Visible };

  Step absolute(Machine& m, std::uint64_t l) const {
    if (l == m.pc) return Step::Dead;
    if (l == 0 || l > k_) return Step::Stop;
    m.pc = l;
    return Step::Continue;
  }

  Step forward(Machine& m, std::uint64_t l) const {
    if (l == 0) return Step::Dead;
    if (m.pc + l > k_) return Step::Stop;
    m.pc += l;
    return Step::Continue;
  }

  Step backward(Machine& m, std::uint64_t l) const {
    if (l == 0) return Step::Dead;
    if (l >= m.pc) return Step::Stop;
    m.pc -= l;
    return Step::Continue;
  }

  // Executes one silent instruction in place.
  Step advance(Machine& m) const {
    const Instruction& u = p_.at(m.pc);
    switch (u.op) {
      case Op::Plain:
      case Op::PosTest:
      case Op::NegTest: {
        if (!hidden(u.action)) return Step::Visible;
        const Outcome r = register_op(u.action.method, m.internal);
        if (r == Outcome::Blocked) return Step::Dead;
        const std::uint64_t next = after_reply(u, m.pc, r == Outcome::Yes);
        if (next == 0) return Step::Stop;
        m.pc = next;
        return Step::Continue;
      }
      case Op::Halt:
        return Step::Stop;
      case Op::FwdJump:
        return forward(m, u.arg);
      case Op::BwdJump:
        return backward(m, u.arg);
      case Op::AbsJump:
        return absolute(m, u.arg);
      case Op::IndAbsJump:
        return absolute(m, reg(m, u.arg));
      case Op::IndFwdJump:
        return forward(m, reg(m, u.arg));
      case Op::IndBwdJump:
        return backward(m, reg(m, u.arg));
      case Op::DblIndAbsJump: {
        const std::uint32_t target_reg = reg(m, u.arg);
        if (target_reg == 0 || target_reg > env_.maxr) return Step::Stop;
        return absolute(m, reg(m, target_reg));
      }
      case Op::RetAbsJump:
        if (u.arg == 0 || u.arg > k_) return Step::Stop;
        if (m.pc > env_.maxn || m.internal.size() >= env_.maxs) return Step::Dead;
        m.internal.push_back(static_cast<std::uint32_t>(m.pc));
        m.pc = u.arg;
        return Step::Continue;
      case Op::Return: {
        if (m.internal.empty()) return Step::Dead;
        const std::uint64_t back = m.internal.back();
        m.internal.pop_back();
        if (back + 1 > k_) return Step::Stop;
        m.pc = back + 1;
        return Step::Continue;
      }
    }
    return Step::Dead;
  }

  // Runs silently from `m` and returns the node it denotes.
  NodeRef settle(Machine m) {
    if (const auto it = memo_.find(m); it != memo_.end()) return it->second;
    std::set<Machine> seen;
    std::vector<Machine> trail;
    NodeRef result = kUnset;
    while (result == kUnset) {
      if (const auto it = memo_.find(m); it != memo_.end()) {
        result = it->second;
        break;
      }
      if (!seen.insert(m).second) {
        result = dead();
        break;
      }
      trail.push_back(m);
      switch (advance(m)) {
        case Step::Continue:
          break;
        case Step::Stop:
          result = stop();
          break;
        case Step::Dead:
          result = dead();
          break;
        case Step::Visible:
          result = static_cast<NodeRef>(nodes_.size());
          nodes_.push_back(Deadlock{});
          pending_.emplace_back(result, trail.back());
          break;
      }
    }
    for (auto& s : trail) memo_.emplace(std::move(s), result);
    return result;
  }

  const Program& p_;
  EnvParams env_;
  std::uint64_t k_;
  bool registers_;
  std::vector<ThreadNode> nodes_;
  NodeRef stop_ = kUnset;
  NodeRef dead_ = kUnset;
  std::map<Machine, NodeRef> memo_;
  std::vector<std::pair<NodeRef, Machine>> pending_;
};

}  // namespace

ThreadGraph interpret(const Program& p, const EnvParams& env) {
  if (p.notation == Notation::Pga) throw ProgramError("PGA terms have no direct interpreter");
  validate(p, env);
  return Interpreter(p, env).run();
}

namespace {

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}

  // Uniform in [lo, hi]; plain modulo keeps the stream identical across
  // standard libraries.
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
    return lo + rng_() % (hi - lo + 1);
  }

  bool coin() { return between(0, 1) == 1; }

 private:
  std::mt19937_64 rng_;
};

enum class Kind { Plain, PosTest, NegTest, Direct, Indirect, Register };

Instruction with_kind(Op basic, Action a) {
  switch (basic) {
    case Op::PosTest:
      return Instruction::pos_test(std::move(a));
    case Op::NegTest:
      return Instruction::neg_test(std::move(a));
    default:
      return Instruction::plain(std::move(a));
  }
}


// Points most jumps at positions holding visible actions. Counters and the
// values stored just before an indirect jump are rewritten in place.
void aim(Program& p, const std::vector<std::pair<std::size_t, std::size_t>>& preludes,
         const EnvParams& env, Draw& draw) {
  std::vector<std::uint64_t> targets;
  for (std::size_t q = 0; q < p.code.size(); ++q) {
    if (p.code[q].is_basic() && p.code[q].action.focus != "rf") targets.push_back(q + 1);
  }
  if (targets.empty()) return;
  auto want = [&] { return draw.between(0, 3) != 0; };
  auto pick = [&](std::uint64_t avoid) -> std::optional<std::uint64_t> {
    const std::uint64_t t = targets[draw.between(0, targets.size() - 1)];
    if (t == avoid) return std::nullopt;
    return t;
  };
  // Orients a relative jump at `pos` towards `t`; false if the distance does not fit.
  auto orient = [](Instruction& u, std::uint64_t pos, std::uint64_t t, std::uint64_t bound,
                   Op fwd, Op bwd, std::uint64_t& distance) {
    distance = t > pos ? t - pos : pos - t;
    if (distance > bound) return false;
    u.op = t > pos ? fwd : bwd;
    return true;
  };
  std::set<std::size_t> jumps;
  for (const auto& [set_at, jump_at] : preludes) {
    jumps.insert(jump_at);
    if (!want()) continue;
    const std::uint64_t pos = jump_at + 1;
    const auto t = pick(pos);
    if (!t) continue;
    Instruction& j = p.code[jump_at];
    std::uint64_t v = *t;
    if (j.op == Op::IndFwdJump || j.op == Op::IndBwdJump) {
      if (!orient(j, pos, *t, env.maxn, Op::IndFwdJump, Op::IndBwdJump, v)) continue;
    } else if (v > env.maxn) {
      continue;
    }
    Instruction& s = p.code[set_at];
    s.action.method = "set:" + std::to_string(j.arg) + ":" + std::to_string(v);
  }
  for (std::size_t q = 0; q < p.code.size(); ++q) {
    Instruction& u = p.code[q];
    const std::uint64_t pos = q + 1;
    if (jumps.count(q) || !want()) continue;
    if (u.op == Op::AbsJump || u.op == Op::RetAbsJump) {
      if (const auto t = pick(pos)) u.arg = *t;
    } else if (u.op == Op::FwdJump || u.op == Op::BwdJump) {
      std::uint64_t d = 0;
      if (const auto t = pick(pos); t && orient(u, pos, *t, ~0ULL, Op::FwdJump, Op::BwdJump, d)) u.arg = d;
    }
  }
}

}  // namespace

Program generate(const GenConfig& cfg) {
  if (cfg.notation == Notation::Pga) throw ProgramError("generate works on the jump notations");
  if (cfg.max_len < 1) throw ProgramError("max_len must be at least 1");
  cfg.env.validate();
  const Notation n = cfg.notation;
  const bool rf = uses_register_file(n);
  const bool indirect = n != Notation::Pglc && n != Notation::Pgld;

  std::vector<std::pair<Kind, unsigned>> table = {
      {Kind::Plain, cfg.weights.plain},
      {Kind::PosTest, cfg.weights.pos_test},
      {Kind::NegTest, cfg.weights.neg_test},
      {Kind::Direct, cfg.weights.direct_jump},
      {Kind::Indirect, indirect ? cfg.weights.indirect_jump : 0},
      {Kind::Register, rf ? cfg.weights.register_op : 0},
  };
  std::uint64_t total = 0;
  for (const auto& [kind, w] : table) total += w;
  if (total == 0) throw ProgramError("all generator weights are zero");

  Draw draw(cfg.seed);
  const std::uint64_t max_counter = 2 * cfg.max_len;
  const std::uint64_t len = draw.between(1, cfg.max_len);
  Program p{n, {}};
  const std::array<Action, 2> visible = {Action("a", "b"), Action("a", "c")};
  // Most counters, stored values and register choices stay small, so that
  // jumps land inside the program and registers get reused.
  auto mostly = [&] { return draw.between(0, 3) != 0; };
  auto counter = [&](std::uint64_t lo) {
    return mostly() ? draw.between(lo, std::max<std::uint64_t>(lo, len)) : draw.between(0, max_counter);
  };
  auto value = [&] {
    const std::uint64_t top = std::min<std::uint64_t>(cfg.env.maxn, len);
    return mostly() ? draw.between(1, top) : draw.between(0, cfg.env.maxn);
  };
  auto reg = [&] {
    return mostly() ? draw.between(1, std::min<std::uint64_t>(cfg.env.maxr, 2)) : draw.between(1, cfg.env.maxr);
  };
  auto set = [&](std::uint64_t i, std::uint64_t v) {
    return Instruction::plain(Action("rf", "set:" + std::to_string(i) + ":" + std::to_string(v)));
  };

  std::set<std::uint64_t> written;
  std::vector<std::pair<std::size_t, std::size_t>> preludes;  // (set, jump) indices
  while (p.code.size() < len) {
    std::uint64_t pick = draw.between(0, total - 1);
    Kind kind = Kind::Plain;
    for (const auto& [kd, w] : table) {
      if (pick < w) {
        kind = kd;
        break;
      }
      pick -= w;
    }
    switch (kind) {
      case Kind::Plain:
        p.code.push_back(Instruction::plain(visible[draw.between(0, 1)]));
        break;
      case Kind::PosTest:
        p.code.push_back(Instruction::pos_test(visible[draw.between(0, 1)]));
        break;
      case Kind::NegTest:
        p.code.push_back(Instruction::neg_test(visible[draw.between(0, 1)]));
        break;
      case Kind::Direct:
        if (n == Notation::Pglc || n == Notation::Pglcij) {
          const std::uint64_t l = counter(0);
          p.code.push_back(draw.coin() ? Instruction::fwd(l) : Instruction::bwd(l));
        } else {
          p.code.push_back(Instruction::abs(counter(1)));
        }
        break;
      case Kind::Indirect: {
        const std::uint64_t i = reg();
        const bool room = p.code.size() + 1 < len;
        if (n == Notation::Pgldrj) {
          p.code.push_back(draw.coin() ? Instruction::ret_abs(counter(1)) : Instruction::ret());
          break;
        }
        const bool twice = n == Notation::Pglddij && draw.coin();
        if (room && (!written.count(i) || draw.between(0, 3) == 0)) {
          p.code.push_back(set(i, twice ? draw.between(1, cfg.env.maxr) : value()));
          written.insert(i);
          if (!twice) preludes.emplace_back(p.code.size() - 1, p.code.size());
        }
        switch (n) {
          case Notation::Pgldij:
            p.code.push_back(Instruction::ind_abs(i));
            break;
          case Notation::Pglcij:
            p.code.push_back(draw.coin() ? Instruction::ind_fwd(i) : Instruction::ind_bwd(i));
            break;
          default:
            p.code.push_back(twice ? Instruction::dbl_ind_abs(i) : Instruction::ind_abs(i));
            break;
        }
        break;
      }
      case Kind::Register: {
        const std::uint64_t i = reg();
        const std::uint64_t v = value();
        const bool is_set = draw.between(0, 2) != 0;
        if (is_set) written.insert(i);
        const Op basic = std::array<Op, 3>{Op::Plain, Op::PosTest, Op::NegTest}[draw.between(0, 2)];
        const std::string method =
            std::string(is_set ? "set:" : "eq:") + std::to_string(i) + ":" + std::to_string(v);
        p.code.push_back(with_kind(basic, Action("rf", method)));
        break;
      }
    }
  }
  aim(p, preludes, cfg.env, draw);
  return p;
}

namespace {

bool counter_jump(Op op) {
  return op == Op::FwdJump || op == Op::BwdJump || op == Op::AbsJump || op == Op::RetAbsJump;
}

}  // namespace

Program shrink(const Program& p, const ProgramPredicate& holds) {
  Program best = p;
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < best.code.size() && best.code.size() > 1; ++i) {
      Program candidate = best;
      candidate.code.erase(candidate.code.begin() + static_cast<std::ptrdiff_t>(i));
      if (holds(candidate)) {
        best = std::move(candidate);
        progress = true;
        --i;
      }
    }
    for (std::size_t i = 0; i < best.code.size(); ++i) {
      if (!counter_jump(best.code[i].op)) continue;
      const std::uint64_t arg = best.code[i].arg;
      for (const std::uint64_t lower : {std::uint64_t{0}, arg / 2, arg == 0 ? 0 : arg - 1}) {
        if (lower >= best.code[i].arg) continue;
        Program candidate = best;
        candidate.code[i].arg = lower;
        if (holds(candidate)) {
          best = std::move(candidate);
          progress = true;
          break;
        }
      }
    }
  }
  return best;
}

}  // namespace projsem
