#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

namespace projsem {

/// A basic action `focus.method`: a request to the service named `focus` to
/// process `method`.
struct Action {
  std::string focus;
  std::string method;

  Action() = default;
  Action(std::string f, std::string m);

  /// Parses `f.m`. Throws ProgramError on a malformed token.
  static Action parse(std::string_view text);

  std::string str() const { return focus + "." + method; }

  friend auto operator<=>(const Action&, const Action&) = default;
  friend bool operator==(const Action&, const Action&) = default;
};

bool is_focus_token(std::string_view s) noexcept;
bool is_method_token(std::string_view s) noexcept;

}  // namespace projsem

template <>
struct std::hash<projsem::Action> {
  std::size_t operator()(const projsem::Action& a) const noexcept {
    std::size_t h = std::hash<std::string>{}(a.focus);
    return h ^ (std::hash<std::string>{}(a.method) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }
};
