#include "projsem/indirect.hpp"

#include <algorithm>

#include "projsem/error.hpp"
#include "projsem/notations.hpp"
#include "projsem/services.hpp"

namespace projsem {

namespace {

void require(const Program& p, Notation n, const EnvParams& env) {
  if (p.notation != n) {
    throw ProgramError("expected a " + std::string(notation_name(n)) + " program, got " +
                       std::string(notation_name(p.notation)));
  }
  env.validate();
  validate(p, env);
}

Instruction rf_test(std::uint64_t reg, std::uint64_t value) {
  return Instruction::pos_test(
      Action("rf", "eq:" + std::to_string(reg) + ":" + std::to_string(value)));
}

Instruction capped(const Instruction& u, std::uint64_t k) {
  return u.arg > k ? Instruction::abs(0) : u;
}

}  // namespace

PgldijOffsets pgldij_offsets(std::uint64_t k, const EnvParams& env) {
  PgldijOffsets t;
  t.k = k;
  t.n = std::min<std::uint64_t>(k, env.maxn);
  for (std::uint64_t i = 1; i <= env.maxr; ++i) {
    t.block_start.push_back(k + 3 + (2 * t.n + 1) * (i - 1));
  }
  t.length = k + 2 + env.maxr * (2 * t.n + 1);
  return t;
}

Program pgldij_to_pgld(const Program& p, const EnvParams& env) {
  require(p, Notation::Pgldij, env);
  const std::uint64_t k = p.size();
  const PgldijOffsets t = pgldij_offsets(k, env);
  Program out{Notation::Pgld, {}};
  out.code.reserve(t.length);
  for (const Instruction& u : p.code) {
    if (u.op == Op::AbsJump) {
      out.code.push_back(capped(u, k));
    } else if (u.op == Op::IndAbsJump) {
      out.code.push_back(Instruction::abs(t.start(u.arg)));
    } else {
      out.code.push_back(u);
    }
  }
  out.code.push_back(Instruction::abs(0));
  out.code.push_back(Instruction::abs(0));
  for (std::uint64_t i = 1; i <= env.maxr; ++i) {
    for (std::uint64_t h = 1; h <= t.n; ++h) {
      out.code.push_back(rf_test(i, h));
      out.code.push_back(Instruction::abs(h));
    }
    out.code.push_back(Instruction::abs(0));
  }
  return out;
}

std::uint64_t PglcijOffsets::fwd_start(std::uint64_t i, std::uint64_t j) const {
  return k + 3 + 2 * (maxn + 1) * (k * (i - 1) + (j - 1));
}

std::uint64_t PglcijOffsets::bwd_start(std::uint64_t i, std::uint64_t j) const {
  return k + 3 + 2 * (maxn + 1) * (k * (maxr + i - 1) + (j - 1));
}

std::uint64_t PglcijOffsets::fwd_jump(std::uint64_t i, std::uint64_t j, std::uint64_t h) const {
  if (j + h > k) return fwd_sentinel;
  return fwd_start(i, j) + 2 * h + 1 - (j + h);
}

std::uint64_t PglcijOffsets::bwd_jump(std::uint64_t i, std::uint64_t j, std::uint64_t h) const {
  if (h > j) return bwd_sentinel;
  return bwd_start(i, j) + 2 * h + 1 - (j - h);
}

PglcijOffsets pglcij_offsets(std::uint64_t k, const EnvParams& env) {
  PglcijOffsets t;
  t.k = k;
  t.maxr = env.maxr;
  t.maxn = env.maxn;
  t.fwd_sentinel = k + 3 + 2 * (t.maxn + 1) * k * t.maxr;
  t.bwd_sentinel = k + 3 + 4 * (t.maxn + 1) * k * t.maxr;
  t.length = k + 2 + 4 * (t.maxn + 1) * k * t.maxr;
  return t;
}

Program pglcij_to_pglc(const Program& p, const EnvParams& env) {
  require(p, Notation::Pglcij, env);
  const std::uint64_t k = p.size();
  const PglcijOffsets t = pglcij_offsets(k, env);
  Program out{Notation::Pglc, {}};
  out.code.reserve(t.length);
  for (std::uint64_t j = 1; j <= k; ++j) {
    const Instruction& u = p.at(j);
    switch (u.op) {
      case Op::FwdJump:
        out.code.push_back(j + u.arg <= k ? u : Instruction::bwd(j));
        break;
      case Op::IndFwdJump:
        out.code.push_back(Instruction::fwd(t.fwd_start(u.arg, j) - j));
        break;
      case Op::IndBwdJump:
        out.code.push_back(Instruction::fwd(t.bwd_start(u.arg, j) - j));
        break;
      default:
        out.code.push_back(u);
        break;
    }
  }
  out.code.push_back(Instruction::bwd(k + 1));
  out.code.push_back(Instruction::bwd(k + 2));
  for (std::uint64_t i = 1; i <= env.maxr; ++i) {
    for (std::uint64_t j = 1; j <= k; ++j) {
      for (std::uint64_t h = 0; h <= env.maxn; ++h) {
        out.code.push_back(rf_test(i, h));
        out.code.push_back(Instruction::bwd(t.fwd_jump(i, j, h)));
      }
    }
  }
  for (std::uint64_t i = 1; i <= env.maxr; ++i) {
    for (std::uint64_t j = 1; j <= k; ++j) {
      for (std::uint64_t h = 0; h <= env.maxn; ++h) {
        out.code.push_back(rf_test(i, h));
        out.code.push_back(Instruction::bwd(t.bwd_jump(i, j, h)));
      }
    }
  }
  return out;
}

PglddijOffsets pglddij_offsets(std::uint64_t k, const EnvParams& env) {
  PglddijOffsets t;
  t.k = k;
  t.n = std::min<std::uint64_t>(env.maxr, env.maxn);
  const std::uint64_t base = std::max<std::uint64_t>(k + 2, env.maxn);
  t.padding = base - (k + 2);
  for (std::uint64_t i = 1; i <= env.maxr; ++i) {
    t.block_start.push_back(base + 1 + (2 * t.n + 1) * (i - 1));
    t.printed_start.push_back(env.maxn + 1 + (2 * t.n + 1) * (i - 1));
  }
  t.length = base + env.maxr * (2 * t.n + 1);
  return t;
}

Program pglddij_to_pgldij(const Program& p, const EnvParams& env) {
  require(p, Notation::Pglddij, env);
  const std::uint64_t k = p.size();
  const PglddijOffsets t = pglddij_offsets(k, env);
  Program out{Notation::Pgldij, {}};
  out.code.reserve(t.length);
  for (const Instruction& u : p.code) {
    if (u.op == Op::AbsJump) {
      out.code.push_back(capped(u, k));
    } else if (u.op == Op::DblIndAbsJump) {
      out.code.push_back(Instruction::abs(t.start(u.arg)));
    } else {
      out.code.push_back(u);
    }
  }
  out.code.insert(out.code.end(), 2 + t.padding, Instruction::abs(0));
  for (std::uint64_t i = 1; i <= env.maxr; ++i) {
    for (std::uint64_t h = 1; h <= t.n; ++h) {
      out.code.push_back(rf_test(i, h));
      out.code.push_back(Instruction::ind_abs(h));
    }
    out.code.push_back(Instruction::abs(0));
  }
  return out;
}

std::uint64_t PgldrjOffsets::triple_start(std::uint64_t value, std::uint64_t target) const {
  return k + 3 + 3 * (k * (value - 1) + (target - 1));
}

std::uint64_t PgldrjOffsets::returning_target(std::uint64_t j, std::uint64_t l) const {
  if (l == 0 || l > k) return 0;
  if (j > maxn) return j;
  return triple_start(j, l);
}

PgldrjOffsets pgldrj_offsets(std::uint64_t k, const EnvParams& env) {
  PgldrjOffsets t;
  t.k = k;
  t.maxn = env.maxn;
  t.n = std::min<std::uint64_t>(k, env.maxn);
  t.return_start = k + 3 + 3 * k * t.n;
  t.final_jump = t.return_start + 4 * t.n;
  t.length = t.final_jump;
  return t;
}

Program pgldrj_to_pgld(const Program& p, const EnvParams& env) {
  require(p, Notation::Pgldrj, env);
  const std::uint64_t k = p.size();
  const PgldrjOffsets t = pgldrj_offsets(k, env);
  Program out{Notation::Pgld, {}};
  out.code.reserve(t.length);
  for (std::uint64_t j = 1; j <= k; ++j) {
    const Instruction& u = p.at(j);
    switch (u.op) {
      case Op::AbsJump:
        out.code.push_back(capped(u, k));
        break;
      case Op::RetAbsJump:
        out.code.push_back(Instruction::abs(t.returning_target(j, u.arg)));
        break;
      case Op::Return:
        out.code.push_back(Instruction::abs(t.return_start));
        break;
      default:
        out.code.push_back(u);
        break;
    }
  }
  out.code.push_back(Instruction::abs(0));
  out.code.push_back(Instruction::abs(0));
  for (std::uint64_t v = 1; v <= t.n; ++v) {
    for (std::uint64_t l = 1; l <= k; ++l) {
      out.code.push_back(Instruction::pos_test(Action("st", "push:" + std::to_string(v))));
      out.code.push_back(Instruction::abs(l));
      out.code.push_back(Instruction::abs(t.final_jump));
    }
  }
  for (std::uint64_t h = 1; h <= t.n; ++h) {
    out.code.push_back(Instruction::neg_test(Action("st", "topeq:" + std::to_string(h))));
    out.code.push_back(Instruction::abs(t.return_next(h)));
    out.code.push_back(Instruction::plain(Action("st", "pop")));
    out.code.push_back(Instruction::abs(h + 1));
  }
  out.code.push_back(Instruction::abs(t.final_jump));
  return out;
}

ThreadGraph behavior_ij(const Program& p, const EnvParams& env) {
  switch (p.notation) {
    case Notation::Pgldij:
      return compose_use(behavior_pgld(pgldij_to_pgld(p, env)), "rf", register_file_init(env));
    case Notation::Pglcij:
      return compose_use(behavior_pglc(pglcij_to_pglc(p, env)), "rf", register_file_init(env));
    case Notation::Pglddij:
      return compose_use(behavior_pgld(pgldij_to_pgld(pglddij_to_pgldij(p, env), env)), "rf",
                         register_file_init(env));
    case Notation::Pgldrj:
      return compose_use(behavior_pgld(pgldrj_to_pgld(p, env)), "st", stack_init(env));
    default:
      throw ProgramError("behavior_ij expects an indirect or returning jump notation, got " +
                         std::string(notation_name(p.notation)));
  }
}

}  // namespace projsem
