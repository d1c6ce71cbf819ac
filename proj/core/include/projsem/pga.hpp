#pragma once

// Program algebra: instruction sequences built from primitive
// instructions by concatenation and repetition.

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "projsem/instruction.hpp"
#include "projsem/recursive_spec.hpp"
#include "projsem/thread.hpp"

namespace projsem {

/// Immutable PGA term. Only Plain, PosTest, NegTest, FwdJump and Halt
/// instructions may appear.
class PgaTerm {
 public:
  enum class Kind { Instr, Concat, Repeat };

  /// Throws ProgramError for a non-PGA instruction kind.
  static PgaTerm instr(Instruction u);
  static PgaTerm concat(PgaTerm left, PgaTerm right);
  static PgaTerm repeat(PgaTerm body);
  /// Right-nested concatenation of a non-empty list.
  static PgaTerm sequence(const std::vector<Instruction>& code);

  Kind kind() const noexcept { return node_->kind; }
  const Instruction& instruction() const { return node_->instr; }
  const PgaTerm& left() const { return node_->children.at(0); }
  const PgaTerm& right() const { return node_->children.at(1); }
  const PgaTerm& body() const { return node_->children.at(0); }

  /// Number of operator and instruction nodes.
  std::size_t size() const noexcept { return node_->size; }

  friend bool operator==(const PgaTerm& a, const PgaTerm& b);

 private:
  struct Node {
    Kind kind;
    Instruction instr;
    std::vector<PgaTerm> children;
    std::size_t size;
  };
  explicit PgaTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

bool is_pga_instruction(const Instruction& u) noexcept;

/// `prefix` alone (finite program) or prefix ; cycle^ω.
struct CanonicalForm {
  std::vector<Instruction> prefix;
  std::vector<Instruction> cycle;

  bool repeating() const noexcept { return !cycle.empty(); }
  std::size_t length() const noexcept { return prefix.size() + cycle.size(); }

  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

/// Canonical form under PGA1-PGA4. Everything after a repetition is dropped,
/// the prefix is flattened, and the cycle is the innermost repeated block
/// reduced to its primitive root.
CanonicalForm normalize(const PgaTerm& term);

/// prefix ++ cycle with the same cycle. Throws ProgramError on a finite form.
CanonicalForm unfold_once(const CanonicalForm& cf);

/// Structural-congruence normal form: every forward jump is replaced by a
/// single jump to the end of its chain (#0 for a chain through #0 or a cyclic
/// chain), with distances reduced to the smallest forward distance reaching
/// the same instruction.
CanonicalForm collapse_chains(const CanonicalForm& cf);

/// Thread extraction as a guarded recursive specification over position
/// variables P1..Pn. Jump chains are resolved while building right-hand
/// sides; S and D are inlined; only variables reachable from P1 remain.
RecursiveSpec thread_extract(const CanonicalForm& cf);

/// solve_spec(thread_extract(cf), "P1").
ThreadGraph extract_thread(const CanonicalForm& cf);

/// The first `count` instructions of the denoted sequence (fewer for a short
/// finite program).
std::vector<Instruction> denote(const CanonicalForm& cf, std::size_t count);

/// Builds prefix ; (cycle)^ω as a term. Throws ProgramError when both lists
/// are empty.
PgaTerm to_term(const CanonicalForm& cf);

/// Text form `+a.b; #2; !; (c.d)w`. Parenthesized groups suffixed with `w`
/// are repetitions; bare parentheses only group.
PgaTerm parse_pga(std::string_view text);
std::string format_pga(const PgaTerm& term);
std::string format_canonical(const CanonicalForm& cf);

}  // namespace projsem
