#include "projsem/behavior.hpp"

#include "projsem/error.hpp"
#include "projsem/indirect.hpp"
#include "projsem/notations.hpp"

namespace projsem {

Projected project_step(const Program& p, const EnvParams& env) {
  switch (p.notation) {
    case Notation::Pglc:
      return pglc_to_pga(p);
    case Notation::Pgld:
      return pgld_to_pglc(p);
    case Notation::Pgldij:
      return pgldij_to_pgld(p, env);
    case Notation::Pglcij:
      return pglcij_to_pglc(p, env);
    case Notation::Pglddij:
      return pglddij_to_pgldij(p, env);
    case Notation::Pgldrj:
      return pgldrj_to_pgld(p, env);
    case Notation::Pga:
      break;
  }
  throw ProgramError("PGA is the end of every projection chain");
}

std::vector<Stage> projection_chain(const Program& p, const EnvParams& env) {
  std::vector<Stage> stages;
  Program cur = p;
  for (;;) {
    Projected next = project_step(cur, env);
    if (auto* term = std::get_if<PgaTerm>(&next)) {
      stages.push_back({Notation::Pga, format_canonical(normalize(*term))});
      return stages;
    }
    cur = std::move(std::get<Program>(next));
    stages.push_back({cur.notation, format_program(cur)});
  }
}

CanonicalForm project_to_pga(const Program& p, const EnvParams& env) {
  Program cur = p;
  for (;;) {
    Projected next = project_step(cur, env);
    if (auto* term = std::get_if<PgaTerm>(&next)) return normalize(*term);
    cur = std::move(std::get<Program>(next));
  }
}

ThreadGraph behavior(const Program& p, const EnvParams& env) {
  switch (p.notation) {
    case Notation::Pglc:
      return behavior_pglc(p);
    case Notation::Pgld:
      return behavior_pgld(p);
    case Notation::Pga:
      throw ProgramError("PGA programs are terms; extract them directly");
    default:
      return behavior_ij(p, env);
  }
}

}  // namespace projsem
