#include "projsem/instruction.hpp"

#include <array>
#include <limits>

#include "lex.hpp"
#include "projsem/error.hpp"

namespace projsem {

namespace detail {

std::optional<std::uint64_t> parse_natural(std::string_view digits) noexcept {
  if (digits.empty()) return std::nullopt;
  std::uint64_t v = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') return std::nullopt;
    const auto d = static_cast<std::uint64_t>(c - '0');
    if (v > (std::numeric_limits<std::uint64_t>::max() - d) / 10) return std::nullopt;
    v = v * 10 + d;
  }
  return v;
}

std::optional<std::uint64_t> parse_canonical_numeral(std::string_view digits) noexcept {
  if (digits.size() > 1 && digits.front() == '0') return std::nullopt;
  return parse_natural(digits);
}

std::optional<Instruction> lex_instruction(std::string_view token, std::string& error) {
  auto counter = [&](std::string_view digits, Instruction (*make)(std::uint64_t))
      -> std::optional<Instruction> {
    if (const auto v = parse_natural(digits)) return make(*v);
    error = "expected a decimal counter in '" + std::string(token) + "'";
    return std::nullopt;
  };
  auto starts = [&](std::string_view p) { return token.substr(0, p.size()) == p; };

  if (token.empty()) {
    error = "empty instruction";
    return std::nullopt;
  }
  if (token == "!") return Instruction::halt();
  if (token == "ret") return Instruction::ret();
  if (starts("##")) return counter(token.substr(2), &Instruction::abs);
  if (starts("#")) return counter(token.substr(1), &Instruction::fwd);
  if (starts("\\")) return counter(token.substr(1), &Instruction::bwd);
  if (starts("i##")) return counter(token.substr(3), &Instruction::ind_abs);
  if (starts("i#")) return counter(token.substr(2), &Instruction::ind_fwd);
  if (starts("i\\")) return counter(token.substr(2), &Instruction::ind_bwd);
  if (starts("di##")) return counter(token.substr(4), &Instruction::dbl_ind_abs);
  if (starts("r##")) return counter(token.substr(3), &Instruction::ret_abs);

  Op op = Op::Plain;
  std::string_view body = token;
  if (token.front() == '+' || token.front() == '-') {
    op = token.front() == '+' ? Op::PosTest : Op::NegTest;
    body.remove_prefix(1);
  }
  const auto dot = body.find('.');
  if (dot == std::string_view::npos || !is_focus_token(body.substr(0, dot)) ||
      !is_method_token(body.substr(dot + 1))) {
    error = "unrecognised instruction '" + std::string(token) + "'";
    return std::nullopt;
  }
  return Instruction{op, Action(std::string(body.substr(0, dot)), std::string(body.substr(dot + 1))),
                     0};
}

}  // namespace detail

std::string format_instruction(const Instruction& u) {
  const std::string n = std::to_string(u.arg);
  switch (u.op) {
    case Op::Plain:
      return u.action.str();
    case Op::PosTest:
      return "+" + u.action.str();
    case Op::NegTest:
      return "-" + u.action.str();
    case Op::Halt:
      return "!";
    case Op::FwdJump:
      return "#" + n;
    case Op::BwdJump:
      return "\\" + n;
    case Op::AbsJump:
      return "##" + n;
    case Op::IndAbsJump:
      return "i##" + n;
    case Op::IndFwdJump:
      return "i#" + n;
    case Op::IndBwdJump:
      return "i\\" + n;
    case Op::DblIndAbsJump:
      return "di##" + n;
    case Op::RetAbsJump:
      return "r##" + n;
    case Op::Return:
      return "ret";
  }
  return "?";
}

namespace {

constexpr std::array<std::pair<Notation, std::string_view>, 7> kNames{{
    {Notation::Pga, "pga"},
    {Notation::Pglc, "pglc"},
    {Notation::Pgld, "pgld"},
    {Notation::Pgldij, "pgldij"},
    {Notation::Pglcij, "pglcij"},
    {Notation::Pglddij, "pglddij"},
    {Notation::Pgldrj, "pgldrj"},
}};

}  // namespace

std::string_view notation_name(Notation n) noexcept {
  for (const auto& [tag, name] : kNames) {
    if (tag == n) return name;
  }
  return "?";
}

std::optional<Notation> notation_from_name(std::string_view name) noexcept {
  for (const auto& [tag, text] : kNames) {
    if (text == name) return tag;
  }
  return std::nullopt;
}

bool allows(Notation n, Op op) noexcept {
  if (op == Op::Plain || op == Op::PosTest || op == Op::NegTest) return true;
  switch (n) {
    case Notation::Pga:
      return op == Op::Halt || op == Op::FwdJump;
    case Notation::Pglc:
      return op == Op::FwdJump || op == Op::BwdJump;
    case Notation::Pgld:
      return op == Op::AbsJump;
    case Notation::Pgldij:
      return op == Op::AbsJump || op == Op::IndAbsJump;
    case Notation::Pglcij:
      return op == Op::FwdJump || op == Op::BwdJump || op == Op::IndFwdJump ||
             op == Op::IndBwdJump;
    case Notation::Pglddij:
      return op == Op::AbsJump || op == Op::IndAbsJump || op == Op::DblIndAbsJump;
    case Notation::Pgldrj:
      return op == Op::AbsJump || op == Op::RetAbsJump || op == Op::Return;
  }
  return false;
}

bool uses_register_file(Notation n) noexcept {
  return n == Notation::Pgldij || n == Notation::Pglcij || n == Notation::Pglddij;
}

bool uses_stack(Notation n) noexcept { return n == Notation::Pgldrj; }

namespace {

void check(const Program& p, const EnvParams* env) {
  if (p.notation == Notation::Pga) throw ProgramError("PGA programs are terms, not instruction lists");
  if (p.code.empty()) throw ProgramError("programs must contain at least one instruction");
  for (std::size_t j = 0; j < p.code.size(); ++j) {
    const Instruction& u = p.code[j];
    const std::string where = " at position " + std::to_string(j + 1);
    if (!allows(p.notation, u.op)) {
      throw ProgramError("instruction '" + format_instruction(u) + "' is not part of " +
                         std::string(notation_name(p.notation)) + where);
    }
    if (u.uses_register()) {
      if (u.arg < 1) throw ProgramError("register index 0 is not allowed" + where);
      if (env != nullptr && u.arg > env->maxr) {
        throw ProgramError("register index " + std::to_string(u.arg) + " exceeds maxr = " +
                           std::to_string(env->maxr) + where);
      }
    }
    if (p.notation == Notation::Pgldrj && u.is_basic() && u.action.focus == "st") {
      throw ProgramError("focus st is reserved for the return stack" + where);
    }
  }
}

}  // namespace

void validate(const Program& p, const EnvParams& env) { check(p, &env); }

void validate_shape(const Program& p) { check(p, nullptr); }

Program parse_program(std::string_view text, Notation n, const EnvParams* env) {
  if (n == Notation::Pga) throw ProgramError("use parse_pga for PGA text");
  Program p{n, {}};
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t pos = 0;

  auto advance = [&] {
    if (text[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  };
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };

  for (;;) {
    while (pos < text.size() && is_space(text[pos])) advance();
    if (pos >= text.size()) break;
    const std::size_t tok_line = line;
    const std::size_t tok_col = col;
    const std::size_t begin = pos;
    while (pos < text.size() && text[pos] != ';' && !is_space(text[pos])) advance();
    const std::string_view token = text.substr(begin, pos - begin);
    if (token.empty()) throw ParseError("empty instruction", tok_line, tok_col);
    std::string error;
    auto u = detail::lex_instruction(token, error);
    if (!u) throw ParseError(error, tok_line, tok_col);
    if (!allows(n, u->op)) {
      throw ParseError("instruction '" + std::string(token) + "' is not part of " +
                           std::string(notation_name(n)),
                       tok_line, tok_col);
    }
    p.code.push_back(std::move(*u));

    while (pos < text.size() && is_space(text[pos])) advance();
    if (pos >= text.size()) break;
    if (text[pos] != ';') throw ParseError("expected ';'", line, col);
    advance();
  }
  if (p.code.empty()) throw ParseError("empty program", line, col);
  if (env != nullptr) {
    validate(p, *env);
  } else {
    validate_shape(p);
  }
  return p;
}

std::string format_instructions(const std::vector<Instruction>& code) {
  std::string out;
  for (std::size_t i = 0; i < code.size(); ++i) {
    if (i != 0) out += "; ";
    out += format_instruction(code[i]);
  }
  return out;
}

std::string format_program(const Program& p) { return format_instructions(p.code); }

Instruction parse_instruction(std::string_view token) {
  std::string error;
  auto u = detail::lex_instruction(token, error);
  if (!u) throw ProgramError(error);
  return *u;
}

}  // namespace projsem
