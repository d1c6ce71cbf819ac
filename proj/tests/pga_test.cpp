#include <gtest/gtest.h>

#include "projsem/error.hpp"
#include "projsem/pga.hpp"
#include "support/testlib.hpp"

using namespace projsem;
using testlib::Rng;

namespace {

const Action a("a", "b");
const Action b("c", "d");

Instruction A() { return Instruction::plain(a); }
Instruction B() { return Instruction::plain(b); }
Instruction J(std::uint64_t l) { return Instruction::fwd(l); }
Instruction H() { return Instruction::halt(); }

PgaTerm I(Instruction u) { return PgaTerm::instr(std::move(u)); }

CanonicalForm cf(std::vector<Instruction> prefix, std::vector<Instruction> cycle = {}) {
  return CanonicalForm{std::move(prefix), std::move(cycle)};
}

std::string extracted(const CanonicalForm& c) { return format_spec(thread_extract(c)); }

}  // namespace

TEST(Normalize, Examples) {
  const PgaTerm ab = PgaTerm::concat(I(A()), I(B()));
  EXPECT_EQ(normalize(PgaTerm::repeat(PgaTerm::concat(ab, ab))), cf({}, {A(), B()}));
  EXPECT_EQ(normalize(PgaTerm::concat(PgaTerm::repeat(I(A())), I(B()))), cf({}, {A()}));
  EXPECT_EQ(normalize(PgaTerm::concat(I(A()), PgaTerm::repeat(PgaTerm::concat(I(B()), I(A()))))),
            cf({A()}, {B(), A()}));
}

TEST(Normalize, FlattensNestedConcatenation) {
  const PgaTerm t = PgaTerm::concat(PgaTerm::concat(I(A()), I(B())), PgaTerm::concat(I(H()), I(J(2))));
  EXPECT_EQ(normalize(t), cf({A(), B(), H(), J(2)}));
}

TEST(Normalize, KeepsRepeatedRepetitionBody) {
  const PgaTerm inner = PgaTerm::repeat(PgaTerm::concat(I(A()), I(B())));
  EXPECT_EQ(normalize(PgaTerm::repeat(inner)), cf({}, {A(), B()}));
}

TEST(UnfoldOnce, Examples) {
  EXPECT_EQ(unfold_once(cf({}, {A()})), cf({A()}, {A()}));
  EXPECT_EQ(unfold_once(cf({A()}, {B(), H()})), cf({A(), B(), H()}, {B(), H()}));
  EXPECT_EQ(unfold_once(cf({}, {J(1)})), cf({J(1)}, {J(1)}));
  EXPECT_THROW(unfold_once(cf({A()})), ProgramError);
}

TEST(CollapseChains, Examples) {
  EXPECT_EQ(collapse_chains(cf({J(2), A(), J(0)})), cf({J(0), A(), J(0)}));
  // Position 1 jumps to position 3, which jumps three further: 1 + 5 = 6.
  EXPECT_EQ(collapse_chains(cf({J(2), A(), J(3)})), cf({J(5), A(), J(3)}));
  EXPECT_EQ(collapse_chains(cf({}, {J(1)})), cf({}, {J(0)}));
}

TEST(CollapseChains, ReducesJumpsRoundTheCycle) {
  EXPECT_EQ(collapse_chains(cf({}, {J(4), A(), B()})), cf({}, {J(1), A(), B()}));
  EXPECT_EQ(collapse_chains(cf({J(6), A()}, {B(), H()})), cf({J(2), A()}, {B(), H()}));
}

TEST(ThreadExtract, Examples) {
  EXPECT_EQ(extracted(cf({H()})), "P1 = S\n");
  EXPECT_EQ(extracted(cf({J(0), A()})), "P1 = D\n");
  EXPECT_EQ(extracted(cf({}, {J(1)})), "P1 = D\n");
  EXPECT_EQ(extracted(cf({}, {A()})), "P1 = a.b \xE2\x88\x98 P1\n");
  EXPECT_EQ(extracted(cf({Instruction::pos_test(a), H(), J(0)})), "P1 = S < a.b > D\n");
}

TEST(ThreadExtract, RunningOffTheEndDeadlocks) {
  EXPECT_EQ(extracted(cf({A()})), "P1 = a.b \xE2\x88\x98 D\n");
  EXPECT_EQ(extracted(cf({J(5), A()})), "P1 = D\n");
}

TEST(ThreadExtract, NamesReachablePositionsOnly) {
  const RecursiveSpec s = thread_extract(cf({J(2), A(), B()}, {Instruction::neg_test(a), B(), J(1)}));
  EXPECT_EQ(format_spec(s),
            "P1 = c.d \xE2\x88\x98 P4\nP4 = P4 < a.b > P5\nP5 = c.d \xE2\x88\x98 P4\n");
}

TEST(PgaText, ParsesAndFormats) {
  const PgaTerm t = parse_pga("+a.b; #2; !; (c.d)w");
  EXPECT_EQ(normalize(t), cf({Instruction::pos_test(a), J(2), H()}, {B()}));
  EXPECT_EQ(normalize(parse_pga(format_pga(t))), normalize(t));
  EXPECT_EQ(format_canonical(normalize(t)), "+a.b; #2; !; (c.d)w");
  EXPECT_THROW(parse_pga("a.b; ##1"), Error);
  EXPECT_THROW(parse_pga("(a.b"), ParseError);
  EXPECT_THROW(parse_pga(""), ParseError);
}

TEST(PgaText, RejectsNonPgaInstructions) {
  EXPECT_THROW(PgaTerm::instr(Instruction::bwd(1)), ProgramError);
  EXPECT_THROW(PgaTerm::instr(Instruction::abs(1)), ProgramError);
}

TEST(NormalizeProperty, DenotesTheLazyExpansion) {
  Rng r(21);
  for (int i = 0; i < 800; ++i) {
    const PgaTerm t = testlib::random_pga_term(r, 6);
    const std::size_t n = std::max<std::size_t>(20, 3 * t.size());
    EXPECT_EQ(denote(normalize(t), n), testlib::expand(t, n)) << format_pga(t);
  }
}

TEST(NormalizeProperty, RoundTripsThroughTerms) {
  Rng r(22);
  for (int i = 0; i < 300; ++i) {
    const CanonicalForm c = normalize(testlib::random_pga_term(r, 5));
    EXPECT_EQ(normalize(to_term(c)), c);
    EXPECT_EQ(normalize(parse_pga(format_canonical(c))), c);
  }
}

TEST(ExtractProperty, MatchesDirectExecution) {
  Rng r(23);
  for (int i = 0; i < 800; ++i) {
    const CanonicalForm c = testlib::random_canonical(r, 10);
    EXPECT_TRUE(bisimilar(extract_thread(c), testlib::run_pga(c))) << format_canonical(c);
    EXPECT_LE(thread_extract(c).size(), c.length());
  }
}

TEST(ExtractProperty, InvariantUnderUnfoldingAndCollapsing) {
  Rng r(24);
  for (int i = 0; i < 800; ++i) {
    const CanonicalForm c = testlib::random_canonical(r, 10);
    const ThreadGraph t = extract_thread(c);
    const CanonicalForm collapsed = collapse_chains(c);
    EXPECT_TRUE(bisimilar(t, extract_thread(collapsed))) << format_canonical(c);
    EXPECT_EQ(collapse_chains(collapsed), collapsed) << format_canonical(c);
    if (c.repeating()) {
      EXPECT_TRUE(bisimilar(t, extract_thread(unfold_once(c)))) << format_canonical(c);
    }
  }
}

TEST(ExtractProperty, CollapsedJumpsNeverLandOnJumps) {
  Rng r(25);
  for (int i = 0; i < 500; ++i) {
    const CanonicalForm c = collapse_chains(testlib::random_canonical(r, 10));
    const auto seq = denote(c, 3 * c.length());
    for (std::size_t p = 0; p < c.length(); ++p) {
      if (seq[p].op != Op::FwdJump || seq[p].arg == 0) continue;
      const std::size_t target = p + seq[p].arg;
      if (target < seq.size()) {
        EXPECT_FALSE(seq[target].op == Op::FwdJump) << format_canonical(c) << " at " << p + 1;
      }
    }
  }
}
