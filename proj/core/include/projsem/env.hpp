#pragma once

#include <cstdint>

namespace projsem {

/// Execution-environment bounds shared by the register file and the stack.
struct EnvParams {
  std::uint32_t maxr = 3;  ///< number of registers
  std::uint32_t maxn = 8;  ///< greatest storable natural number
  std::uint32_t maxs = 4;  ///< greatest stack length

  /// Throws ProgramError unless maxr >= 1 and maxn >= 1.
  void validate() const;

  friend bool operator==(const EnvParams&, const EnvParams&) = default;
};

}  // namespace projsem
