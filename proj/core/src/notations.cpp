#include "projsem/notations.hpp"

#include "projsem/error.hpp"

namespace projsem {

namespace {

void require(const Program& p, Notation n) {
  if (p.notation != n) {
    throw ProgramError("expected a " + std::string(notation_name(n)) + " program, got " +
                       std::string(notation_name(p.notation)));
  }
  validate_shape(p);
}

}  // namespace

PgaTerm pglc_to_pga(const Program& p) {
  require(p, Notation::Pglc);
  const std::uint64_t k = p.size();
  std::vector<Instruction> body;
  body.reserve(k + 2);
  for (std::uint64_t j = 1; j <= k; ++j) {
    const Instruction& u = p.at(j);
    switch (u.op) {
      case Op::FwdJump:
        body.push_back(j + u.arg <= k ? u : Instruction::halt());
        break;
      case Op::BwdJump:
        // Going round the (k+2)-cycle forward reaches j-l.
        body.push_back(u.arg < j ? Instruction::fwd(k + 2 - u.arg) : Instruction::halt());
        break;
      default:
        body.push_back(u);
        break;
    }
  }
  body.push_back(Instruction::halt());
  body.push_back(Instruction::halt());
  return PgaTerm::repeat(PgaTerm::sequence(body));
}

Program pgld_to_pglc(const Program& p) {
  require(p, Notation::Pgld);
  Program out{Notation::Pglc, {}};
  out.code.reserve(p.size());
  for (std::uint64_t j = 1; j <= p.size(); ++j) {
    const Instruction& u = p.at(j);
    if (u.op != Op::AbsJump) {
      out.code.push_back(u);
    } else if (u.arg >= j) {
      out.code.push_back(Instruction::fwd(u.arg - j));
    } else {
      out.code.push_back(Instruction::bwd(j - u.arg));
    }
  }
  return out;
}

ThreadGraph behavior_pglc(const Program& p) { return extract_thread(normalize(pglc_to_pga(p))); }

ThreadGraph behavior_pgld(const Program& p) { return behavior_pglc(pgld_to_pglc(p)); }

}  // namespace projsem
