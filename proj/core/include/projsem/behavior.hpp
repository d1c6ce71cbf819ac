#pragma once

#include <string>
#include <variant>
#include <vector>

#include "projsem/env.hpp"
#include "projsem/instruction.hpp"
#include "projsem/pga.hpp"
#include "projsem/thread.hpp"

namespace projsem {

using Projected = std::variant<Program, PgaTerm>;

/// One projection step: PGLDdij -> PGLDij -> PGLD -> PGLC -> PGA, PGLCij ->
/// PGLC, PGLDrj -> PGLD.
Projected project_step(const Program& p, const EnvParams& env);

struct Stage {
  Notation notation;
  std::string text;
};

/// Every projection stage after the input, ending with the PGA canonical form.
std::vector<Stage> projection_chain(const Program& p, const EnvParams& env);

/// The PGA canonical form at the end of the chain.
CanonicalForm project_to_pga(const Program& p, const EnvParams& env);

/// Behaviour under projection semantics, composed with the notation's
/// service where it has one.
ThreadGraph behavior(const Program& p, const EnvParams& env);

}  // namespace projsem
