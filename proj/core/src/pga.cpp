#include "projsem/pga.hpp"

#include <cctype>
#include <limits>
#include <optional>
#include <unordered_set>

#include "lex.hpp"
#include "projsem/error.hpp"

namespace projsem {

bool is_pga_instruction(const Instruction& u) noexcept { return allows(Notation::Pga, u.op); }

PgaTerm PgaTerm::instr(Instruction u) {
  if (!is_pga_instruction(u)) {
    throw ProgramError("'" + format_instruction(u) + "' is not a PGA instruction");
  }
  return PgaTerm(std::make_shared<const Node>(Node{Kind::Instr, std::move(u), {}, 1}));
}

PgaTerm PgaTerm::concat(PgaTerm left, PgaTerm right) {
  const std::size_t size = left.size() + right.size() + 1;
  return PgaTerm(std::make_shared<const Node>(
      Node{Kind::Concat, {}, {std::move(left), std::move(right)}, size}));
}

PgaTerm PgaTerm::repeat(PgaTerm body) {
  const std::size_t size = body.size() + 1;
  return PgaTerm(std::make_shared<const Node>(Node{Kind::Repeat, {}, {std::move(body)}, size}));
}

PgaTerm PgaTerm::sequence(const std::vector<Instruction>& code) {
  if (code.empty()) throw ProgramError("PGA terms are non-empty");
  PgaTerm t = instr(code.back());
  for (auto it = code.rbegin() + 1; it != code.rend(); ++it) t = concat(instr(*it), std::move(t));
  return t;
}

bool operator==(const PgaTerm& a, const PgaTerm& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.size() != b.size()) return false;
  if (a.kind() == PgaTerm::Kind::Instr) return a.instruction() == b.instruction();
  return a.node_->children == b.node_->children;
}

namespace {

// Shortest d dividing |s| with s = (s[0..d))^(|s|/d), via the KMP border.
std::vector<Instruction> primitive_root(std::vector<Instruction> s) {
  const std::size_t n = s.size();
  std::vector<std::size_t> border(n + 1, 0);
  for (std::size_t i = 1, k = 0; i < n; ++i) {
    while (k > 0 && !(s[i] == s[k])) k = border[k];
    if (s[i] == s[k]) ++k;
    border[i + 1] = k;
  }
  const std::size_t period = n - border[n];
  if (period < n && n % period == 0) s.resize(period);
  return s;
}

void normalize_into(const PgaTerm& term, CanonicalForm& out) {
  const PgaTerm* cur = &term;
  for (;;) {
    switch (cur->kind()) {
      case PgaTerm::Kind::Instr:
        out.prefix.push_back(cur->instruction());
        return;
      case PgaTerm::Kind::Concat:
        normalize_into(cur->left(), out);
        if (out.repeating()) return;  // x^ω ; y = x^ω
        cur = &cur->right();
        continue;
      case PgaTerm::Kind::Repeat: {
        CanonicalForm body;
        normalize_into(cur->body(), body);
        if (body.repeating()) {
          // (x ; y^ω)^ω = x ; y^ω
          out.prefix.insert(out.prefix.end(), body.prefix.begin(), body.prefix.end());
          out.cycle = std::move(body.cycle);
        } else {
          out.cycle = primitive_root(std::move(body.prefix));
        }
        return;
      }
    }
  }
}

// Positions of an ultimately periodic sequence, 0-based.
struct Layout {
  std::size_t prefix;
  std::size_t cycle;

  std::size_t length() const noexcept { return prefix + cycle; }

  /// Position reached by moving `distance` forward; nullopt past the end of a
  /// finite program.
  std::optional<std::size_t> advance(std::size_t pos, std::uint64_t distance) const noexcept {
    const unsigned __int128 q = static_cast<unsigned __int128>(pos) + distance;
    if (q < length()) return static_cast<std::size_t>(q);
    if (cycle == 0) return std::nullopt;
    return prefix + static_cast<std::size_t>((q - prefix) % cycle);
  }
};

const Instruction& at(const CanonicalForm& cf, std::size_t pos) {
  return pos < cf.prefix.size() ? cf.prefix[pos] : cf.cycle[pos - cf.prefix.size()];
}

std::string position_var(std::size_t pos) { return "P" + std::to_string(pos + 1); }

void check_instructions(const CanonicalForm& cf) {
  for (const auto* part : {&cf.prefix, &cf.cycle}) {
    for (const auto& u : *part) {
      if (!is_pga_instruction(u)) {
        throw ProgramError("'" + format_instruction(u) + "' is not a PGA instruction");
      }
    }
  }
  if (cf.length() == 0) throw ProgramError("canonical forms are non-empty");
}

}  // namespace

CanonicalForm normalize(const PgaTerm& term) {
  CanonicalForm out;
  normalize_into(term, out);
  return out;
}

CanonicalForm unfold_once(const CanonicalForm& cf) {
  if (!cf.repeating()) throw ProgramError("cannot unfold a finite program");
  CanonicalForm out = cf;
  out.prefix.insert(out.prefix.end(), cf.cycle.begin(), cf.cycle.end());
  return out;
}

CanonicalForm collapse_chains(const CanonicalForm& cf) {
  check_instructions(cf);
  const Layout layout{cf.prefix.size(), cf.cycle.size()};
  CanonicalForm out = cf;

  for (std::size_t p = 0; p < layout.length(); ++p) {
    const Instruction& u = at(cf, p);
    if (u.op != Op::FwdJump || u.arg == 0) continue;

    std::unordered_set<std::size_t> chain{p};
    std::size_t cur = p;
    unsigned __int128 travelled = 0;
    Instruction replacement = Instruction::fwd(0);
    for (;;) {
      const std::uint64_t step = at(cf, cur).arg;
      travelled += step;
      const auto target = layout.advance(cur, step);
      if (!target) {
        // Past the end of a finite program: keep the summed distance.
        const auto max = std::numeric_limits<std::uint64_t>::max();
        replacement = Instruction::fwd(travelled > max ? max : static_cast<std::uint64_t>(travelled));
        break;
      }
      const Instruction& v = at(cf, *target);
      if (v.op == Op::FwdJump) {
        if (v.arg == 0 || !chain.insert(*target).second) break;  // -> #0
        cur = *target;
        continue;
      }
      std::size_t distance = 0;
      if (*target > p) {
        distance = *target - p;
      } else {
        distance = (*target + layout.cycle - p) % layout.cycle;
      }
      replacement = Instruction::fwd(distance);
      break;
    }
    (p < cf.prefix.size() ? out.prefix[p] : out.cycle[p - cf.prefix.size()]) = replacement;
  }
  return out;
}

RecursiveSpec thread_extract(const CanonicalForm& cf) {
  check_instructions(cf);
  const Layout layout{cf.prefix.size(), cf.cycle.size()};

  // Where control ends up when it reaches `pos`: a constant or the variable
  // of a basic instruction. A revisited jump means a cyclic chain.
  auto resolve = [&](std::optional<std::size_t> pos) -> Expr {
    std::unordered_set<std::size_t> chain;
    while (pos) {
      const Instruction& u = at(cf, *pos);
      if (u.is_basic()) return Expr::var(position_var(*pos));
      if (u.op == Op::Halt) return Expr::stop();
      if (u.arg == 0 || !chain.insert(*pos).second) return Expr::deadlock();
      pos = layout.advance(*pos, u.arg);
    }
    return Expr::deadlock();
  };

  auto basic_rhs = [&](std::size_t pos) -> Expr {
    const Instruction& u = at(cf, pos);
    const Expr next = resolve(layout.advance(pos, 1));
    switch (u.op) {
      case Op::Plain:
        return Expr::prefix(u.action, next);
      case Op::PosTest:
        return Expr::branch(u.action, next, resolve(layout.advance(pos, 2)));
      default:
        return Expr::branch(u.action, resolve(layout.advance(pos, 2)), next);
    }
  };

  RecursiveSpec spec;
  std::vector<std::size_t> pending;
  std::unordered_set<std::size_t> emitted;
  auto need = [&](const Expr& e) {
    auto visit = [&](const Expr& x) {
      if (x.kind() != Expr::Kind::Var) return;
      const std::size_t pos = std::stoull(x.name().substr(1)) - 1;
      if (emitted.insert(pos).second) pending.push_back(pos);
    };
    if (e.kind() == Expr::Kind::Branch) {
      visit(e.on_true());
      visit(e.on_false());
    }
  };

  Expr first = resolve(std::size_t{0});
  if (first.kind() == Expr::Kind::Var) first = basic_rhs(std::stoull(first.name().substr(1)) - 1);
  emitted.insert(0);
  need(first);
  spec.define("P1", std::move(first));

  while (!pending.empty()) {
    const std::size_t pos = pending.back();
    pending.pop_back();
    Expr rhs = basic_rhs(pos);
    need(rhs);
    spec.define(position_var(pos), std::move(rhs));
  }
  return spec;
}

ThreadGraph extract_thread(const CanonicalForm& cf) { return solve_spec(thread_extract(cf), "P1"); }

std::vector<Instruction> denote(const CanonicalForm& cf, std::size_t count) {
  std::vector<Instruction> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (i < cf.prefix.size()) {
      out.push_back(cf.prefix[i]);
    } else if (cf.repeating()) {
      out.push_back(cf.cycle[(i - cf.prefix.size()) % cf.cycle.size()]);
    } else {
      break;
    }
  }
  return out;
}

PgaTerm to_term(const CanonicalForm& cf) {
  if (!cf.repeating()) return PgaTerm::sequence(cf.prefix);
  PgaTerm loop = PgaTerm::repeat(PgaTerm::sequence(cf.cycle));
  if (cf.prefix.empty()) return loop;
  PgaTerm t = std::move(loop);
  for (auto it = cf.prefix.rbegin(); it != cf.prefix.rend(); ++it) {
    t = PgaTerm::concat(PgaTerm::instr(*it), std::move(t));
  }
  return t;
}

namespace {

void format_into(std::string& out, const PgaTerm& t) {
  switch (t.kind()) {
    case PgaTerm::Kind::Instr:
      out += format_instruction(t.instruction());
      return;
    case PgaTerm::Kind::Repeat:
      out += '(';
      format_into(out, t.body());
      out += ")w";
      return;
    case PgaTerm::Kind::Concat: {
      const bool group = t.left().kind() == PgaTerm::Kind::Concat;
      if (group) out += '(';
      format_into(out, t.left());
      if (group) out += ')';
      out += "; ";
      format_into(out, t.right());
      return;
    }
  }
}

class PgaParser {
 public:
  explicit PgaParser(std::string_view text) : text_(text) {}

  PgaTerm run() {
    PgaTerm t = sequence();
    skip();
    if (pos_ < text_.size()) fail(text_[pos_] == ')' ? "unbalanced ')'" : "expected ';'");
    return t;
  }

 private:
  PgaTerm sequence() {
    std::vector<PgaTerm> items;
    for (;;) {
      items.push_back(item());
      skip();
      if (pos_ >= text_.size() || text_[pos_] != ';') break;
      advance();
      skip();
      if (pos_ >= text_.size() || text_[pos_] == ')') break;  // trailing ';'
    }
    PgaTerm t = std::move(items.back());
    for (auto it = items.rbegin() + 1; it != items.rend(); ++it) {
      t = PgaTerm::concat(std::move(*it), std::move(t));
    }
    return t;
  }

  PgaTerm item() {
    skip();
    if (pos_ >= text_.size()) fail("expected an instruction");
    if (text_[pos_] == '(') {
      advance();
      PgaTerm inner = sequence();
      skip();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
      advance();
      if (pos_ < text_.size() && text_[pos_] == 'w') {
        advance();
        return PgaTerm::repeat(std::move(inner));
      }
      return inner;
    }
    const std::size_t line = line_;
    const std::size_t col = col_;
    const std::size_t begin = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != ';' && text_[pos_] != '(' && text_[pos_] != ')') {
      advance();
    }
    const auto token = text_.substr(begin, pos_ - begin);
    if (token.empty()) fail("expected an instruction");
    std::string error;
    auto u = detail::lex_instruction(token, error);
    if (!u) throw ParseError(error, line, col);
    if (!is_pga_instruction(*u)) {
      throw ParseError("'" + std::string(token) + "' is not a PGA instruction", line, col);
    }
    return PgaTerm::instr(std::move(*u));
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, line_, col_); }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace

PgaTerm parse_pga(std::string_view text) { return PgaParser(text).run(); }

std::string format_pga(const PgaTerm& term) {
  std::string out;
  format_into(out, term);
  return out;
}

std::string format_canonical(const CanonicalForm& cf) {
  std::string out = format_instructions(cf.prefix);
  if (cf.repeating()) {
    if (!out.empty()) out += "; ";
    out += "(" + format_instructions(cf.cycle) + ")w";
  }
  return out;
}

}  // namespace projsem
