#pragma once

// Command-line front end. Everything the executable does is reachable
// in-process through run_cli so that tests can drive it without a shell.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "projsem/env.hpp"
#include "projsem/instruction.hpp"
#include "projsem/thread.hpp"

namespace projsem::cli {

/// Behaviour under projection semantics. difftest compares it against the
/// direct interpreter; tests substitute a corrupted chain here.
using BehaviourChain = std::function<ThreadGraph(const Program&, const EnvParams&)>;

struct DifftestOptions {
  Notation notation = Notation::Pgldij;
  std::size_t count = 100;
  std::size_t max_len = 6;
  std::uint64_t seed = 0;
  EnvParams env;
  /// Draw a fresh environment (maxr <= env.maxr etc.) for every case.
  bool sample_env = false;
};

struct DifftestFailure {
  std::size_t index = 0;
  EnvParams env;
  Program original;
  Program witness;
  std::string projected;    ///< minimised spec of the chain's behaviour, or the error
  std::string interpreted;  ///< minimised spec of the interpreter's behaviour
  std::optional<Distinction> distinction;
};

struct DifftestReport {
  std::size_t total = 0;
  std::size_t passed = 0;
  std::vector<DifftestFailure> failures;

  bool ok() const noexcept { return passed == total; }
};

/// Seed of case `index` in a run seeded with `seed`.
std::uint64_t case_seed(std::uint64_t seed, std::size_t index) noexcept;

/// Environment drawn for case `index` when sampling is on.
EnvParams case_env(const DifftestOptions& opts, std::size_t index);

DifftestReport difftest(const DifftestOptions& opts, const BehaviourChain& chain = {});

/// Minimised behaviour as equations.
std::string behaviour_text(const ThreadGraph& t, bool math = false);

/// Runs one command line (without the program name). Returns the exit
/// status: 0 success, 1 negative verdict, 2 usage or input error.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err, const BehaviourChain& chain = {});

}  // namespace projsem::cli
