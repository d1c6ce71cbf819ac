#pragma once

// Direct operational semantics for the six jump notations, independent of
// the projections, plus seeded program generation and shrinking for
// differential testing.

#include <cstdint>
#include <functional>

#include "projsem/env.hpp"
#include "projsem/instruction.hpp"
#include "projsem/thread.hpp"

namespace projsem {

/// Reachable-state thread of the program. Register-file (rf) instructions in
/// the indirect notations and the return stack of PGLDrj are internal state;
/// only other actions are visible. A silent stretch that revisits a machine
/// state is deadlock.
ThreadGraph interpret(const Program& p, const EnvParams& env);

/// Relative weights of instruction kinds drawn by generate().
struct GenWeights {
  unsigned plain = 4;
  unsigned pos_test = 3;
  unsigned neg_test = 3;
  unsigned direct_jump = 3;   ///< #l, \l, ##l
  unsigned indirect_jump = 3; ///< i##i, i#i, i\i, di##i, r##l, ret
  unsigned register_op = 3;   ///< rf.set / rf.eq basics (register-file notations)
};

struct GenConfig {
  Notation notation = Notation::Pgld;
  std::size_t max_len = 6;
  EnvParams env;
  std::uint64_t seed = 0;
  GenWeights weights;
};

/// Deterministic in the config. Length in [1, max_len], jump counters in
/// [0, 2·max_len], register indices in [1, maxr], register values in
/// [0, maxn]. Never emits st-focused basics for PGLDrj.
Program generate(const GenConfig& cfg);

using ProgramPredicate = std::function<bool(const Program&)>;

/// Greedy local minimisation keeping `holds` true: delete single
/// instructions (no renumbering), then lower jump counters (to 0, halved,
/// minus one). Returns `p` unchanged when no candidate satisfies `holds`.
Program shrink(const Program& p, const ProgramPredicate& holds);

}  // namespace projsem
