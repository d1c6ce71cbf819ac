#include "projsem/action.hpp"

#include <cctype>

#include "projsem/error.hpp"

namespace projsem {

namespace {

bool ident_char(char c) noexcept {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

}  // namespace

bool is_focus_token(std::string_view s) noexcept {
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s.front())) != 0) return false;
  for (char c : s) {
    if (!ident_char(c)) return false;
  }
  return true;
}

bool is_method_token(std::string_view s) noexcept {
  if (s.empty()) return false;
  for (char c : s) {
    if (!ident_char(c) && c != ':') return false;
  }
  return true;
}

Action::Action(std::string f, std::string m) : focus(std::move(f)), method(std::move(m)) {
  if (!is_focus_token(focus)) throw ProgramError("invalid focus '" + focus + "'");
  if (!is_method_token(method)) throw ProgramError("invalid method '" + method + "'");
}

Action Action::parse(std::string_view text) {
  const auto dot = text.find('.');
  if (dot == std::string_view::npos) {
    throw ProgramError("action '" + std::string(text) + "' lacks a focus");
  }
  return Action(std::string(text.substr(0, dot)), std::string(text.substr(dot + 1)));
}

}  // namespace projsem
