#include <gtest/gtest.h>

#include "projsem/error.hpp"
#include "projsem/notations.hpp"
#include "projsem/recursive_spec.hpp"
#include "support/testlib.hpp"

using namespace projsem;
using testlib::Rng;

namespace {

Program pglc(const char* text) { return parse_program(text, Notation::Pglc); }
Program pgld(const char* text) { return parse_program(text, Notation::Pgld); }

std::string pga(const Program& p) { return format_canonical(normalize(pglc_to_pga(p))); }

std::string spec(const ThreadGraph& t) { return format_spec(spec_from_graph(minimize(t))); }

}  // namespace

TEST(ProgramText, ParsesEveryNotationToken) {
  const Program p = parse_program("a.b; +c.d; -e.f; #3; \\2", Notation::Pglc);
  ASSERT_EQ(p.size(), 5u);
  EXPECT_EQ(p.at(2), Instruction::pos_test(Action("c", "d")));
  EXPECT_EQ(p.at(5), Instruction::bwd(2));
  EXPECT_EQ(format_program(p), "a.b; +c.d; -e.f; #3; \\2");
  EXPECT_EQ(format_program(parse_program("i##2; di##1; ##0", Notation::Pglddij)), "i##2; di##1; ##0");
  EXPECT_EQ(format_program(parse_program("r##3;\n ret;", Notation::Pgldrj)), "r##3; ret");
  EXPECT_EQ(format_program(parse_program("i#1; i\\2", Notation::Pglcij)), "i#1; i\\2");
}

TEST(ProgramText, RejectsForeignTokensWithPosition) {
  EXPECT_THROW(parse_program("!", Notation::Pglc), Error);
  EXPECT_THROW(parse_program("##1", Notation::Pglc), Error);
  EXPECT_THROW(parse_program("#1", Notation::Pgld), Error);
  EXPECT_THROW(parse_program("#+1", Notation::Pglc), ParseError);
  EXPECT_THROW(parse_program("#-1", Notation::Pglc), ParseError);
  EXPECT_THROW(parse_program("", Notation::Pglc), ParseError);
  EXPECT_THROW(parse_program("a.b;; c.d", Notation::Pglc), ParseError);
  try {
    parse_program("a.b;\n  #x", Notation::Pglc);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
  }
}

TEST(ProgramText, ChecksRegistersAgainstEnvironment) {
  EnvParams env;
  env.maxr = 1;
  EXPECT_THROW(parse_program("i##2", Notation::Pgldij, &env), ProgramError);
  EXPECT_THROW(parse_program("i##0", Notation::Pgldij), Error);
  EXPECT_THROW(parse_program("st.pop", Notation::Pgldrj), ProgramError);
  EXPECT_NO_THROW(parse_program("st.pop", Notation::Pgld));
}

TEST(PglcToPga, Examples) {
  EXPECT_EQ(pga(pglc("a.b")), "(a.b; !; !)w");
  EXPECT_EQ(pga(pglc("#2; a.b")), "(!; a.b; !; !)w");
  EXPECT_EQ(pga(pglc("a.b; \\1")), "(a.b; #3; !; !)w");
  EXPECT_EQ(pga(pglc("\\1")), "(!)w");
  EXPECT_EQ(pglc_to_pga(pglc("\\1")),
            PgaTerm::repeat(PgaTerm::sequence({Instruction::halt(), Instruction::halt(),
                                               Instruction::halt()})));
}

TEST(PgldToPglc, Examples) {
  EXPECT_EQ(pgld_to_pglc(pgld("##2; a.b")), pglc("#1; a.b"));
  EXPECT_EQ(pgld_to_pglc(pgld("a.b; ##1")), pglc("a.b; \\1"));
  EXPECT_EQ(pgld_to_pglc(pgld("##0")), pglc("\\1"));
  EXPECT_EQ(pgld_to_pglc(pgld("##1")), pglc("#0"));
}

TEST(Behaviour, Examples) {
  EXPECT_EQ(spec(behavior_pglc(pglc("a.b"))), "P1 = a.b \xE2\x88\x98 S\n");
  EXPECT_EQ(spec(behavior_pgld(pgld("##1"))), "P1 = D\n");
  EXPECT_EQ(spec(behavior_pgld(pgld("##0"))), "P1 = S\n");
  EXPECT_EQ(spec(behavior_pglc(pglc("+a.b; \\1"))), "P1 = P1 < a.b > S\n");
}

TEST(Behaviour, RejectsWrongNotation) {
  EXPECT_THROW(pglc_to_pga(pgld("##1")), ProgramError);
  EXPECT_THROW(pgld_to_pglc(pglc("#1")), ProgramError);
}

TEST(NotationProperty, ShapesOfProjections) {
  Rng r(41);
  EnvParams env;
  for (int i = 0; i < 300; ++i) {
    const std::size_t k = r.between(1, 8);
    const Program d = testlib::random_program(r, Notation::Pgld, k, env);
    EXPECT_EQ(pgld_to_pglc(d).size(), k);
    const Program c = testlib::random_program(r, Notation::Pglc, k, env);
    const CanonicalForm cf = normalize(pglc_to_pga(c));
    // The cycle may shrink to a primitive root but always divides k + 2.
    EXPECT_TRUE(cf.prefix.empty());
    EXPECT_EQ((k + 2) % cf.cycle.size(), 0u);
    std::vector<Instruction> expect;
    for (std::size_t j = 1; j <= k; ++j) {
      const Instruction& u = c.at(j);
      if (u.op == Op::FwdJump) {
        expect.push_back(j + u.arg <= k ? u : Instruction::halt());
      } else if (u.op == Op::BwdJump) {
        expect.push_back(u.arg < j ? Instruction::fwd(k + 2 - u.arg) : Instruction::halt());
      } else {
        expect.push_back(u);
      }
    }
    expect.push_back(Instruction::halt());
    expect.push_back(Instruction::halt());
    EXPECT_EQ(denote(cf, k + 2), expect);
  }
}

TEST(NotationProperty, TerminatesAfterTrailingPlainInstruction) {
  Rng r(42);
  EnvParams env;
  for (int i = 0; i < 300; ++i) {
    Program c = testlib::random_program(r, Notation::Pglc, r.between(0, 6), env);
    c.code.push_back(Instruction::plain(Action("z", "z")));
    const ThreadGraph t = behavior_pglc(c);
    // Every z.z step leads to S.
    for (const auto& n : t.nodes()) {
      const auto* b = std::get_if<Branch>(&n);
      if (b == nullptr || b->action != Action("z", "z")) continue;
      EXPECT_TRUE(std::holds_alternative<Stop>(t.node(b->on_true))) << format_program(c);
    }
  }
}
