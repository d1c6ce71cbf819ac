#pragma once

// PGLC (relative jumps) and PGLD (absolute jumps) and their projections.

#include "projsem/instruction.hpp"
#include "projsem/pga.hpp"
#include "projsem/thread.hpp"

namespace projsem {

/// (ψ_1(u_1) ; ... ; ψ_k(u_k) ; ! ; !)^ω. Forward jumps past the end and
/// backward jumps before the start become `!`; a backward jump \l from
/// position j > l becomes #(k+2-l), which wraps round the repeated block.
PgaTerm pglc_to_pga(const Program& p);

/// Instruction-wise: ##l at position j becomes #(l-j) when l >= j and
/// \(j-l) otherwise.
Program pgld_to_pglc(const Program& p);

ThreadGraph behavior_pglc(const Program& p);
ThreadGraph behavior_pgld(const Program& p);

}  // namespace projsem
