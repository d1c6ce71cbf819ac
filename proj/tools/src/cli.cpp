#include "projsem/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include "projsem/behavior.hpp"
#include "projsem/error.hpp"
#include "projsem/interpreter.hpp"
#include "projsem/pga.hpp"
#include "projsem/recursive_spec.hpp"

namespace projsem::cli {

namespace {

std::uint64_t splitmix(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string spec_or_error(const BehaviourChain& f, const Program& p, const EnvParams& env) {
  try {
    return behaviour_text(f(p, env));
  } catch (const std::exception& e) {
    return std::string("error: ") + e.what() + "\n";
  }
}

}  // namespace

std::uint64_t case_seed(std::uint64_t seed, std::size_t index) noexcept {
  return splitmix(splitmix(seed) ^ static_cast<std::uint64_t>(index));
}

EnvParams case_env(const DifftestOptions& opts, std::size_t index) {
  if (!opts.sample_env) return opts.env;
  std::uint64_t x = splitmix(case_seed(opts.seed, index) + 1);
  auto pick = [&x](std::uint32_t hi) {
    x = splitmix(x);
    return static_cast<std::uint32_t>(1 + x % hi);
  };
  EnvParams env;
  env.maxr = pick(opts.env.maxr);
  env.maxn = pick(opts.env.maxn);
  env.maxs = pick(std::max<std::uint32_t>(opts.env.maxs, 1));
  return env;
}

std::string behaviour_text(const ThreadGraph& t, bool math) {
  return format_spec(spec_from_graph(minimize(t)), math ? SpecStyle::Math : SpecStyle::Ascii);
}

DifftestReport difftest(const DifftestOptions& opts, const BehaviourChain& chain) {
  const BehaviourChain projected = chain ? chain : BehaviourChain(behavior);
  DifftestReport report;
  report.total = opts.count;
  for (std::size_t i = 0; i < opts.count; ++i) {
    GenConfig cfg;
    cfg.notation = opts.notation;
    cfg.max_len = opts.max_len;
    cfg.env = case_env(opts, i);
    cfg.seed = case_seed(opts.seed, i);
    const Program p = generate(cfg);
    const EnvParams env = cfg.env;
    auto mismatch = [&](const Program& q) {
      try {
        return !bisimilar(projected(q, env), interpret(q, env));
      } catch (const std::exception&) {
        return true;
      }
    };
    if (!mismatch(p)) {
      ++report.passed;
      continue;
    }
    DifftestFailure f;
    f.index = i;
    f.env = env;
    f.original = p;
    f.witness = shrink(p, mismatch);
    f.projected = spec_or_error(projected, f.witness, env);
    f.interpreted = spec_or_error(BehaviourChain(interpret), f.witness, env);
    try {
      f.distinction = distinguish(projected(f.witness, env), interpret(f.witness, env));
    } catch (const std::exception&) {
    }
    report.failures.push_back(std::move(f));
  }
  return report;
}

namespace {

// Raised for bad input; carries the message for stderr.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Session {
  std::string notation;
  std::vector<std::string> notations;
  EnvParams env;
  std::vector<std::string> files;
  std::vector<std::string> exprs;
  std::string format = "text";
  bool all = false;
  std::string replies;
  std::size_t count = 100;
  std::size_t max_len = 6;
  std::uint64_t seed = 0;
};

using Loaded = std::variant<Program, PgaTerm, ParsedSpec>;

std::string read_source(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream file(path);
  if (!file) throw UsageError("cannot open " + path);
  buf << file.rdbuf();
  return buf.str();
}

std::vector<std::string> sources(const Session& s, std::istream& in) {
  std::vector<std::string> out;
  for (const auto& f : s.files) out.push_back(read_source(f, in));
  for (const auto& e : s.exprs) out.push_back(e);
  return out;
}

Loaded load(const std::string& notation, const std::string& text, const EnvParams& env) {
  if (notation == "spec") return parse_spec(text);
  const auto n = notation_from_name(notation);
  if (!n) throw UsageError("unknown notation '" + notation + "'");
  if (*n == Notation::Pga) return parse_pga(text);
  return parse_program(text, *n, &env);
}

ThreadGraph behaviour_of(const Loaded& l, const EnvParams& env) {
  if (const auto* p = std::get_if<Program>(&l)) return behavior(*p, env);
  if (const auto* t = std::get_if<PgaTerm>(&l)) return extract_thread(normalize(*t));
  const auto& s = std::get<ParsedSpec>(l);
  return solve_spec(s.spec, s.start);
}

const std::string& single(const std::vector<std::string>& items, const char* what) {
  if (items.size() != 1) {
    throw UsageError(std::string("expected exactly one ") + what + ", got " +
                     std::to_string(items.size()));
  }
  return items.front();
}

Loaded load_single(const Session& s, std::istream& in) {
  const auto texts = sources(s, in);
  return load(s.notation, single(texts, "program"), s.env);
}

const Program& require_program(const Loaded& l) {
  if (const auto* p = std::get_if<Program>(&l)) return *p;
  throw UsageError("this command needs a jump-notation program");
}

int cmd_project(const Session& s, std::istream& in, std::ostream& out) {
  const Loaded l = load_single(s, in);
  if (const auto* t = std::get_if<PgaTerm>(&l)) {
    out << (s.all ? "pga: " : "") << format_canonical(normalize(*t)) << '\n';
    return 0;
  }
  const Program& p = require_program(l);
  const auto stages = projection_chain(p, s.env);
  if (!s.all) {
    out << stages.front().text << '\n';
    return 0;
  }
  for (const auto& st : stages) out << notation_name(st.notation) << ": " << st.text << '\n';
  return 0;
}

int cmd_behave(const Session& s, std::istream& in, std::ostream& out) {
  out << behaviour_text(behaviour_of(load_single(s, in), s.env), s.format == "text");
  return 0;
}

int cmd_extract(const Session& s, std::istream& in, std::ostream& out) {
  const Loaded l = load_single(s, in);
  CanonicalForm cf;
  if (const auto* t = std::get_if<PgaTerm>(&l)) {
    cf = normalize(*t);
  } else {
    cf = project_to_pga(require_program(l), s.env);
  }
  out << format_spec(thread_extract(cf), s.format == "text" ? SpecStyle::Math : SpecStyle::Ascii);
  return 0;
}

int cmd_equiv(const Session& s, std::istream& in, std::ostream& out) {
  const auto texts = sources(s, in);
  if (texts.size() != 2) {
    throw UsageError("equiv expects two programs, got " + std::to_string(texts.size()));
  }
  std::vector<std::string> notations = s.notations;
  if (notations.size() == 1) notations.push_back(notations.front());
  if (notations.size() != 2) throw UsageError("equiv takes one or two --notation flags");
  const ThreadGraph left = behaviour_of(load(notations[0], texts[0], s.env), s.env);
  const ThreadGraph right = behaviour_of(load(notations[1], texts[1], s.env), s.env);
  const auto d = distinguish(left, right);
  if (!d) {
    out << "equivalent\n";
    return 0;
  }
  out << "inequivalent\n";
  out << "witness: " << (d->replies.empty() ? "(empty)" : d->replies) << '\n';
  out << "left: " << d->left << '\n';
  out << "right: " << d->right << '\n';
  return 1;
}

int cmd_trace(const Session& s, std::istream& in, std::ostream& out) {
  std::vector<bool> replies;
  for (char c : s.replies) {
    if (c != 't' && c != 'f') throw UsageError("--replies takes a string over t and f");
    replies.push_back(c == 't');
  }
  const ThreadGraph t = behaviour_of(load_single(s, in), s.env);
  std::unique_ptr<bool[]> flat(new bool[replies.size() + 1]);
  for (std::size_t i = 0; i < replies.size(); ++i) flat[i] = replies[i];
  const Trace tr = unfold_trace(t, std::span<const bool>(flat.get(), replies.size()));
  for (const auto& a : tr.actions) out << a.str() << '\n';
  out << to_string(tr.end) << '\n';
  return 0;
}

int cmd_difftest(const Session& s, std::ostream& out, const BehaviourChain& chain) {
  const auto n = notation_from_name(s.notation);
  if (!n || *n == Notation::Pga) {
    throw UsageError("difftest needs a jump notation, got '" + s.notation + "'");
  }
  DifftestOptions opts;
  opts.notation = *n;
  opts.count = s.count;
  opts.max_len = s.max_len;
  opts.seed = s.seed;
  opts.env = s.env;
  const DifftestReport r = difftest(opts, chain);
  for (const auto& f : r.failures) {
    out << "case " << f.index << " failed: " << format_program(f.original) << '\n';
    out << "  witness: " << format_program(f.witness) << '\n';
    out << "  projection:\n";
    std::istringstream a(f.projected);
    for (std::string line; std::getline(a, line);) out << "    " << line << '\n';
    out << "  interpreter:\n";
    std::istringstream b(f.interpreted);
    for (std::string line; std::getline(b, line);) out << "    " << line << '\n';
    if (f.distinction) {
      out << "  replies: " << (f.distinction->replies.empty() ? "(empty)" : f.distinction->replies)
          << '\n';
    }
  }
  out << r.passed << '/' << r.total << " ok\n";
  return r.ok() ? 0 : 1;
}

void add_env(CLI::App* cmd, Session& s) {
  cmd->add_option("--maxr", s.env.maxr, "number of registers")->check(CLI::Range(1u, 1000u));
  cmd->add_option("--maxn", s.env.maxn, "largest register or stack value")
      ->check(CLI::Range(1u, 1000u));
  cmd->add_option("--maxs", s.env.maxs, "stack capacity")->check(CLI::Range(1u, 1000u));
}

void add_input(CLI::App* cmd, Session& s) {
  cmd->add_option("files", s.files, "program files, - for standard input");
  cmd->add_option("-e,--expr", s.exprs, "inline program text");
}

void add_notation(CLI::App* cmd, Session& s) {
  cmd->add_option("--notation", s.notation,
                  "pga, pglc, pgld, pgldij, pglcij, pglddij, pgldrj (spec for equations)")
      ->required();
}

void add_format(CLI::App* cmd, Session& s) {
  cmd->add_option("--format", s.format, "text or eqns")
      ->check(CLI::IsMember({"text", "eqns"}));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err, const BehaviourChain& chain) {
  CLI::App app{"Projection semantics for instruction sequences with indirect jumps", "projsem"};
  app.require_subcommand(1);
  Session s;

  auto* project = app.add_subcommand("project", "print the projection of a program");
  add_notation(project, s);
  add_env(project, s);
  add_input(project, s);
  project->add_flag("--all", s.all, "print every stage down to PGA");

  auto* behave = app.add_subcommand("behave", "print the behaviour as recursive equations");
  add_notation(behave, s);
  add_env(behave, s);
  add_input(behave, s);
  add_format(behave, s);

  auto* extract = app.add_subcommand("extract", "print the raw extraction of the PGA projection");
  add_notation(extract, s);
  add_env(extract, s);
  add_input(extract, s);
  add_format(extract, s);

  auto* equiv = app.add_subcommand("equiv", "decide whether two programs behave alike");
  equiv->add_option("--notation", s.notations, "notation of each program (one applies to both)")
      ->required();
  add_env(equiv, s);
  add_input(equiv, s);

  auto* trace = app.add_subcommand("trace", "follow the behaviour along a reply string");
  add_notation(trace, s);
  add_env(trace, s);
  add_input(trace, s);
  trace->add_option("--replies", s.replies, "replies as a string over t and f");

  auto* diff = app.add_subcommand("difftest", "compare projections against the interpreter");
  add_notation(diff, s);
  add_env(diff, s);
  diff->add_option("--count", s.count, "number of programs");
  diff->add_option("--max-len", s.max_len, "largest program length")->check(CLI::Range(1, 1000));
  diff->add_option("--seed", s.seed, "generator seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (project->parsed()) return cmd_project(s, in, out);
    if (behave->parsed()) return cmd_behave(s, in, out);
    if (extract->parsed()) return cmd_extract(s, in, out);
    if (equiv->parsed()) return cmd_equiv(s, in, out);
    if (trace->parsed()) return cmd_trace(s, in, out);
    if (diff->parsed()) return cmd_difftest(s, out, chain);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace projsem::cli
