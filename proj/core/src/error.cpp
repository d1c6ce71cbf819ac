#include "projsem/error.hpp"

#include "projsem/env.hpp"

namespace projsem {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      detail_(message),
      line_(line),
      column_(column) {}

void EnvParams::validate() const {
  if (maxr < 1) throw ProgramError("maxr must be at least 1");
  if (maxn < 1) throw ProgramError("maxn must be at least 1");
}

}  // namespace projsem
