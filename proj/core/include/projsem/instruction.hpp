#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "projsem/action.hpp"
#include "projsem/env.hpp"

namespace projsem {

enum class Op : std::uint8_t {
  Plain,          ///< a
  PosTest,        ///< +a
  NegTest,        ///< -a
  Halt,           ///< !
  FwdJump,        ///< #l
  BwdJump,        ///< \l
  AbsJump,        ///< ##l
  IndAbsJump,     ///< i##i
  IndFwdJump,     ///< i#i
  IndBwdJump,     ///< i\i
  DblIndAbsJump,  ///< di##i
  RetAbsJump,     ///< r##l
  Return,         ///< ret
};

/// One primitive instruction. `action` is meaningful for the three basic
/// kinds, `arg` for the jumps (a counter, a position, or a register index).
struct Instruction {
  Op op = Op::Halt;
  Action action;
  std::uint64_t arg = 0;

  static Instruction plain(Action a) { return {Op::Plain, std::move(a), 0}; }
  static Instruction pos_test(Action a) { return {Op::PosTest, std::move(a), 0}; }
  static Instruction neg_test(Action a) { return {Op::NegTest, std::move(a), 0}; }
  static Instruction halt() { return {Op::Halt, {}, 0}; }
  static Instruction fwd(std::uint64_t l) { return {Op::FwdJump, {}, l}; }
  static Instruction bwd(std::uint64_t l) { return {Op::BwdJump, {}, l}; }
  static Instruction abs(std::uint64_t l) { return {Op::AbsJump, {}, l}; }
  static Instruction ind_abs(std::uint64_t i) { return {Op::IndAbsJump, {}, i}; }
  static Instruction ind_fwd(std::uint64_t i) { return {Op::IndFwdJump, {}, i}; }
  static Instruction ind_bwd(std::uint64_t i) { return {Op::IndBwdJump, {}, i}; }
  static Instruction dbl_ind_abs(std::uint64_t i) { return {Op::DblIndAbsJump, {}, i}; }
  static Instruction ret_abs(std::uint64_t l) { return {Op::RetAbsJump, {}, l}; }
  static Instruction ret() { return {Op::Return, {}, 0}; }

  bool is_basic() const noexcept {
    return op == Op::Plain || op == Op::PosTest || op == Op::NegTest;
  }
  bool is_jump() const noexcept { return !is_basic() && op != Op::Halt; }
  /// Jumps whose argument names a register rather than a distance/position.
  bool uses_register() const noexcept {
    return op == Op::IndAbsJump || op == Op::IndFwdJump || op == Op::IndBwdJump ||
           op == Op::DblIndAbsJump;
  }

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

std::string format_instruction(const Instruction& u);

enum class Notation : std::uint8_t { Pga, Pglc, Pgld, Pgldij, Pglcij, Pglddij, Pgldrj };

std::string_view notation_name(Notation n) noexcept;
std::optional<Notation> notation_from_name(std::string_view name) noexcept;

/// Whether an instruction kind belongs to the notation.
bool allows(Notation n, Op op) noexcept;

/// Whether the notation's behaviour is taken on interaction with a register
/// file (focus `rf`) or a stack (focus `st`).
bool uses_register_file(Notation n) noexcept;
bool uses_stack(Notation n) noexcept;

/// A non-empty instruction list u_1 ; ... ; u_k in one of the six jump
/// notations (PGA programs are PgaTerm values instead).
struct Program {
  Notation notation = Notation::Pglc;
  std::vector<Instruction> code;

  std::size_t size() const noexcept { return code.size(); }
  /// 1-based access.
  const Instruction& at(std::size_t position) const { return code.at(position - 1); }

  friend bool operator==(const Program&, const Program&) = default;
};

/// Throws ProgramError when the program is empty, uses an instruction kind
/// outside its notation, names a register outside [1,maxr] in an indirect
/// jump, or (PGLDrj) uses focus `st` in a basic instruction.
void validate(const Program& p, const EnvParams& env);

/// Same checks minus the register range (for contexts without an env).
void validate_shape(const Program& p);

/// Parses `u_1; u_2; ...` for a jump notation (not PGA). A trailing `;` is
/// accepted. Throws ParseError with line/column; when `env` is given, also
/// validates against it (ProgramError).
Program parse_program(std::string_view text, Notation n, const EnvParams* env = nullptr);

/// Instructions joined by "; ".
std::string format_program(const Program& p);
std::string format_instructions(const std::vector<Instruction>& code);

/// Lexes a single instruction token (for the PGA parser as well).
Instruction parse_instruction(std::string_view token);

}  // namespace projsem
