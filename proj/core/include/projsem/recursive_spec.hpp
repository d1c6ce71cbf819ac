#pragma once

// Guarded recursive specifications over threads and their textual form:
//
//   P1 = P2 < a.b > D
//   P2 = a.b ∘ P1
//   P3 = (S < c.d > D) < a.b > P1
//
// `∘` (U+2218) is action prefixing. Lines starting with `#` are comments.

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>

#include "projsem/action.hpp"
#include "projsem/thread.hpp"

namespace projsem {

/// Thread term: D, S, a variable, or on_true <| action |> on_false.
class Expr {
 public:
  enum class Kind { Deadlock, Stop, Var, Branch };

  static Expr deadlock();
  static Expr stop();
  static Expr var(std::string name);
  static Expr branch(Action action, Expr on_true, Expr on_false);
  static Expr prefix(Action action, Expr then);

  Kind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  const Action& action() const noexcept { return action_; }
  const Expr& on_true() const { return *on_true_; }
  const Expr& on_false() const { return *on_false_; }

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  Expr() = default;

  Kind kind_ = Kind::Deadlock;
  std::string name_;
  Action action_;
  std::shared_ptr<const Expr> on_true_;
  std::shared_ptr<const Expr> on_false_;
};

/// Orders names with embedded decimal runs numerically: P2 < P10.
struct NaturalLess {
  bool operator()(std::string_view a, std::string_view b) const noexcept;
  using is_transparent = void;
};

class RecursiveSpec {
 public:
  using Equations = std::map<std::string, Expr, NaturalLess>;

  /// Adds or replaces the equation for `name`.
  void define(std::string name, Expr rhs);

  bool defines(std::string_view name) const { return equations_.find(name) != equations_.end(); }
  const Expr& rhs(std::string_view name) const;
  const Equations& equations() const noexcept { return equations_; }
  std::size_t size() const noexcept { return equations_.size(); }

  /// Throws SpecError naming the first unguarded variable (whole right-hand
  /// side is a bare variable) or the first reference without an equation.
  void check() const;

  friend bool operator==(const RecursiveSpec&, const RecursiveSpec&) = default;

 private:
  Equations equations_;
};

/// The solution of `spec` for `start` as a graph with one node per variable
/// and one per nested branch term.
ThreadGraph solve_spec(const RecursiveSpec& spec, std::string_view start);

/// Names every branch node P1, P2, ... in node order (root first) and inlines
/// the constants.
RecursiveSpec spec_from_graph(const ThreadGraph& t);

/// Ascii writes branches as `p < a > q` (the parseable form); Math uses
/// `p ⊴ a ⊵ q`.
enum class SpecStyle { Ascii, Math };

std::string format_expr(const Expr& e, SpecStyle style = SpecStyle::Ascii);

/// One `VAR = RHS` line per equation in natural variable order.
std::string format_spec(const RecursiveSpec& spec, SpecStyle style = SpecStyle::Ascii);

struct ParsedSpec {
  RecursiveSpec spec;
  std::string start;  ///< left-hand side of the first equation
};

/// Throws ParseError on malformed text; does not check guardedness.
ParsedSpec parse_spec(std::string_view text);

}  // namespace projsem
