#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "projsem/instruction.hpp"

namespace projsem::detail {

/// Lexes one trimmed instruction token; on failure returns nullopt and sets
/// `error`.
std::optional<Instruction> lex_instruction(std::string_view token, std::string& error);

/// Decimal natural without sign; nullopt on anything else or overflow.
std::optional<std::uint64_t> parse_natural(std::string_view digits) noexcept;

/// Canonical decimal numeral ("0" or no leading zero) as used in method
/// tokens; nullopt otherwise.
std::optional<std::uint64_t> parse_canonical_numeral(std::string_view digits) noexcept;

}  // namespace projsem::detail
