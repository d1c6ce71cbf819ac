#pragma once

// Notations with indirect, double indirect, and returning jumps, and their
// projections onto PGLD/PGLC plus a register file or stack.
//
// Landing-position tables are exposed so that emitted layouts can be audited
// independently of the emitters. Positions are 1-based.

#include <cstdint>
#include <vector>

#include "projsem/env.hpp"
#include "projsem/instruction.hpp"
#include "projsem/thread.hpp"

namespace projsem {

/// PGLDij -> PGLD. One search block per register:
///   +rf.eq:i:1 ; ##1 ; ... ; +rf.eq:i:n ; ##n ; ##0     (n = min(k,maxn))
struct PgldijOffsets {
  std::uint64_t k = 0;
  std::uint64_t n = 0;
  std::vector<std::uint64_t> block_start;  ///< [i-1] -> l_i
  std::uint64_t length = 0;                ///< k + 2 + maxr(2n+1)

  std::uint64_t start(std::uint64_t i) const { return block_start.at(i - 1); }
};

PgldijOffsets pgldij_offsets(std::uint64_t k, const EnvParams& env);
Program pgldij_to_pgld(const Program& p, const EnvParams& env);

/// PGLCij -> PGLC. For every register i and source position j a forward
/// block of maxn+1 entries `+rf.eq:i:h ; \fwd_jump(i,j,h)`, then the same
/// for backward blocks.
struct PglcijOffsets {
  std::uint64_t k = 0;
  std::uint64_t maxr = 0;
  std::uint64_t maxn = 0;
  std::uint64_t fwd_sentinel = 0;  ///< backward distance used when j+h > k
  std::uint64_t bwd_sentinel = 0;  ///< backward distance used when j-h < 0
  std::uint64_t length = 0;        ///< k + 2 + 4(maxn+1)k·maxr

  /// l_{i,j} and its backward twin: absolute start of block (i, j).
  std::uint64_t fwd_start(std::uint64_t i, std::uint64_t j) const;
  std::uint64_t bwd_start(std::uint64_t i, std::uint64_t j) const;
  /// l'_{i,j,h}: backward distance emitted at entry h of forward block (i,j).
  std::uint64_t fwd_jump(std::uint64_t i, std::uint64_t j, std::uint64_t h) const;
  std::uint64_t bwd_jump(std::uint64_t i, std::uint64_t j, std::uint64_t h) const;
};

PglcijOffsets pglcij_offsets(std::uint64_t k, const EnvParams& env);
Program pglcij_to_pglc(const Program& p, const EnvParams& env);

/// PGLDdij -> PGLDij. Padding with ##0 up to max(k+2, maxn) positions keeps
/// every register-valued target inside the original program or on a ##0;
/// one block per register:
///   +rf.eq:i:1 ; i##1 ; ... ; +rf.eq:i:n ; i##n ; ##0   (n = min(maxr,maxn))
struct PglddijOffsets {
  std::uint64_t k = 0;
  std::uint64_t n = 0;
  std::uint64_t padding = 0;               ///< max(k+2,maxn) - (k+2)
  std::vector<std::uint64_t> block_start;  ///< [i-1], counted from the emitted prefix
  std::vector<std::uint64_t> printed_start;  ///< maxn + 1 + (2n+1)(i-1)
  std::uint64_t length = 0;

  std::uint64_t start(std::uint64_t i) const { return block_start.at(i - 1); }
};

PglddijOffsets pglddij_offsets(std::uint64_t k, const EnvParams& env);
Program pglddij_to_pgldij(const Program& p, const EnvParams& env);

/// PGLDrj -> PGLD. Push triples `+st.push:v ; ##l ; ##final` for every value
/// v in [1,n] and target l in [1,k] (row-major by v), then return quads
/// `-st.topeq:h ; ##next(h) ; st.pop ; ##(h+1)` for h in [1,n], then the
/// self-jump ##final. n = min(k,maxn).
struct PgldrjOffsets {
  std::uint64_t k = 0;
  std::uint64_t maxn = 0;
  std::uint64_t n = 0;
  std::uint64_t return_start = 0;  ///< l'
  std::uint64_t final_jump = 0;    ///< l''
  std::uint64_t length = 0;

  /// Start of the triple pushing `value` and jumping to `target`.
  std::uint64_t triple_start(std::uint64_t value, std::uint64_t target) const;
  /// l''_h = l' + 4h: where the search continues when the top is not h.
  std::uint64_t return_next(std::uint64_t h) const { return return_start + 4 * h; }
  /// Start of the return quad testing h.
  std::uint64_t quad_start(std::uint64_t h) const { return return_start + 4 * (h - 1); }
  /// The direct jump target replacing r##l at position j: the triple start,
  /// j itself when j cannot be pushed, or 0 when l is 0 or beyond k.
  std::uint64_t returning_target(std::uint64_t j, std::uint64_t l) const;
};

PgldrjOffsets pgldrj_offsets(std::uint64_t k, const EnvParams& env);
Program pgldrj_to_pgld(const Program& p, const EnvParams& env);

/// Behaviour of a PGLDij, PGLCij, PGLDdij or PGLDrj program: the projection
/// chain down to PGA, extraction, and composition with RF_init (focus rf) or
/// St_init (focus st).
ThreadGraph behavior_ij(const Program& p, const EnvParams& env);

}  // namespace projsem
