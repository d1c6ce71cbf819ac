#include <gtest/gtest.h>

#include "projsem/behavior.hpp"
#include "projsem/error.hpp"
#include "projsem/interpreter.hpp"
#include "projsem/recursive_spec.hpp"
#include "support/testlib.hpp"

using namespace projsem;
using testlib::Rng;

namespace {

EnvParams env(std::uint32_t maxr, std::uint32_t maxn, std::uint32_t maxs = 4) {
  EnvParams e;
  e.maxr = maxr;
  e.maxn = maxn;
  e.maxs = maxs;
  return e;
}

std::string run(const char* text, Notation n, const EnvParams& e = EnvParams{}) {
  return format_spec(spec_from_graph(minimize(interpret(parse_program(text, n), e))));
}

const char* kAbD = "P1 = a.b \xE2\x88\x98 D\n";

}  // namespace

TEST(Interpret, Examples) {
  EXPECT_EQ(run("##1", Notation::Pgld), "P1 = D\n");
  EXPECT_EQ(run("rf.set:1:0; i##1", Notation::Pgldij, env(1, 2)), "P1 = S\n");
  EXPECT_EQ(run("r##3; a.b; ret", Notation::Pgldrj, env(1, 4, 2)), kAbD);
  EXPECT_EQ(run("rf.set:1:0; i\\1", Notation::Pglcij, env(1, 1)), "P1 = D\n");
}

TEST(Interpret, DirectJumpRules) {
  EXPECT_EQ(run("#0", Notation::Pglc), "P1 = D\n");
  EXPECT_EQ(run("#1", Notation::Pglc), "P1 = S\n");
  EXPECT_EQ(run("\\1", Notation::Pglc), "P1 = S\n");
  EXPECT_EQ(run("\\0", Notation::Pglc), "P1 = D\n");
  EXPECT_EQ(run("##0", Notation::Pgld), "P1 = S\n");
  EXPECT_EQ(run("##5; a.b", Notation::Pgld), "P1 = S\n");
  EXPECT_EQ(run("a.b; ##1", Notation::Pgld), "P1 = a.b \xE2\x88\x98 P1\n");
  EXPECT_EQ(run("+a.b; c.d", Notation::Pglc), "P1 = P2 < a.b > S\nP2 = c.d \xE2\x88\x98 S\n");
  EXPECT_EQ(run("-a.b", Notation::Pglc), "P1 = a.b \xE2\x88\x98 S\n");
}

TEST(Interpret, RegisterFileIsInternal) {
  EXPECT_EQ(run("rf.set:1:4; i##1; c.d; a.b", Notation::Pgldij, env(1, 4)), "P1 = a.b \xE2\x88\x98 S\n");
  EXPECT_EQ(run("+rf.eq:1:0; a.b; c.d", Notation::Pgldij, env(1, 4)), "P1 = a.b \xE2\x88\x98 P2\nP2 = c.d \xE2\x88\x98 S\n");
  // A method outside the register file blocks.
  EXPECT_EQ(run("rf.set:1:9; a.b", Notation::Pgldij, env(1, 4)), "P1 = D\n");
  // rf is an ordinary focus where there is no register file.
  EXPECT_EQ(run("rf.set:1:9", Notation::Pgld), "P1 = rf.set:1:9 \xE2\x88\x98 S\n");
}

TEST(Interpret, DoubleIndirection) {
  EXPECT_EQ(run("rf.set:1:2; rf.set:2:4; di##1; a.b", Notation::Pglddij, env(2, 4)),
            "P1 = a.b \xE2\x88\x98 S\n");
  EXPECT_EQ(run("rf.set:1:0; di##1; a.b", Notation::Pglddij, env(2, 4)), "P1 = S\n");
  EXPECT_EQ(run("rf.set:1:3; di##1; a.b", Notation::Pglddij, env(2, 4)), "P1 = S\n");
  EXPECT_EQ(run("rf.set:1:1; rf.set:1:2; rf.set:2:3; di##1", Notation::Pglddij, env(2, 4)), "P1 = D\n");
}

TEST(Interpret, ReturnStack) {
  EXPECT_EQ(run("r##3; a.b; ##0", Notation::Pgldrj, env(1, 4, 1)), "P1 = S\n");
  EXPECT_EQ(run("r##2; a.b", Notation::Pgldrj, env(1, 4, 0)), "P1 = D\n");
  EXPECT_EQ(run("ret", Notation::Pgldrj), "P1 = D\n");
  EXPECT_EQ(run("a.b; r##4; ##0; ret", Notation::Pgldrj, env(1, 1, 2)), kAbD);
  EXPECT_EQ(run("r##3; ##0; c.d; ret", Notation::Pgldrj, env(1, 4, 2)), "P1 = c.d \xE2\x88\x98 S\n");
}

TEST(Interpret, InternalLoopsDeadlock) {
  EXPECT_EQ(run("rf.set:1:1; i##1", Notation::Pgldij, env(1, 4)), "P1 = D\n");
  EXPECT_EQ(run("+rf.eq:1:0; \\1", Notation::Pglcij, env(1, 4)), "P1 = D\n");
}

TEST(Generate, IsDeterministicAndWellFormed) {
  for (Notation n : {Notation::Pglc, Notation::Pgld, Notation::Pgldij, Notation::Pglcij,
                     Notation::Pglddij, Notation::Pgldrj}) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      GenConfig cfg;
      cfg.notation = n;
      cfg.seed = seed;
      cfg.max_len = 5;
      const Program p = generate(cfg);
      EXPECT_EQ(generate(cfg), p);
      ASSERT_GE(p.size(), 1u);
      ASSERT_LE(p.size(), 5u);
      EXPECT_EQ(parse_program(format_program(p), n, &cfg.env), p) << format_program(p);
      for (const auto& u : p.code) {
        if (u.uses_register()) EXPECT_LE(u.arg, cfg.env.maxr);
        if (u.is_jump() && !u.uses_register()) EXPECT_LE(u.arg, 10u);
        if (n == Notation::Pgldrj && u.is_basic()) EXPECT_NE(u.action.focus, "st");
      }
    }
  }
  GenConfig one;
  one.max_len = 1;
  one.seed = 99;
  EXPECT_EQ(generate(one).size(), 1u);
}

TEST(Generate, SeedsGiveDifferentPrograms) {
  GenConfig a, b;
  a.notation = b.notation = Notation::Pgldij;
  a.seed = 1;
  b.seed = 2;
  int differ = 0;
  for (int i = 0; i < 20; ++i) {
    a.seed += 7;
    b.seed += 7;
    differ += generate(a) == generate(b) ? 0 : 1;
  }
  EXPECT_GT(differ, 10);
}

TEST(Shrink, DeletesAndLowersCounters) {
  const Program p = parse_program("a.b; c.d; #7; a.e; c.d; a.b", Notation::Pglc);
  auto has_bad = [](const Program& q) {
    for (const auto& u : q.code) {
      if (u.action == Action("a", "e")) return true;
    }
    return false;
  };
  const Program small = shrink(p, has_bad);
  EXPECT_EQ(format_program(small), "a.e");
  auto has_jump = [](const Program& q) {
    for (const auto& u : q.code) {
      if (u.op == Op::FwdJump) return true;
    }
    return false;
  };
  EXPECT_EQ(format_program(shrink(p, has_jump)), "#0");
  auto never = [](const Program&) { return false; };
  EXPECT_EQ(shrink(p, never), p);
  auto long_enough = [](const Program& q) { return q.size() >= 5; };
  EXPECT_EQ(shrink(p, long_enough).size(), 5u);
}

TEST(InterpreterProperty, AgreesWithProjectionOnRandomPrograms) {
  Rng r(61);
  for (Notation n : {Notation::Pglc, Notation::Pgld, Notation::Pgldij, Notation::Pglcij,
                     Notation::Pglddij, Notation::Pgldrj}) {
    for (int i = 0; i < 120; ++i) {
      const EnvParams e = env(static_cast<std::uint32_t>(r.between(1, 3)),
                              static_cast<std::uint32_t>(r.between(1, 5)),
                              static_cast<std::uint32_t>(r.between(1, 3)));
      const Program p = testlib::random_program(r, n, r.between(1, 6), e);
      EXPECT_TRUE(bisimilar(interpret(p, e), behavior(p, e)))
          << notation_name(n) << ": " << format_program(p);
    }
  }
}

TEST(InterpreterProperty, TerminatesWithinStateBound) {
  Rng r(62);
  for (int i = 0; i < 100; ++i) {
    const EnvParams e = env(2, 3, 3);
    const Program p = testlib::random_program(r, Notation::Pgldrj, r.between(1, 6), e);
    // Stack contents are at most maxs values from [1,min(k,maxn)]: a crude cap.
    EXPECT_LE(interpret(p, e).size(), p.size() * 200 + 2);
  }
}
