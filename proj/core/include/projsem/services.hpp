#pragma once

// State-based services, the register file and stack families, and
// thread-service composition p /f H.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "projsem/env.hpp"
#include "projsem/thread.hpp"

namespace projsem {

enum class Reply { True, False, Blocked };

std::string_view to_string(Reply r) noexcept;

/// Service state: either the distinguished `undef` sink or a vector of
/// naturals whose meaning belongs to the service family.
struct ServiceState {
  bool undef = false;
  std::vector<std::uint32_t> cells;

  static ServiceState sink() { return {true, {}}; }

  friend bool operator==(const ServiceState&, const ServiceState&) = default;
};

struct ServiceStateHash {
  std::size_t operator()(const ServiceState& s) const noexcept;
};

/// A family of deterministic services given by a state set, an effect
/// function and a yield function. Implementations must send every blocked
/// request to ServiceState::sink() and block every method there.
class ServiceDescription {
 public:
  virtual ~ServiceDescription() = default;

  virtual std::string_view family() const noexcept = 0;
  virtual ServiceState effect(std::string_view method, const ServiceState& s) const = 0;
  virtual Reply yield(std::string_view method, const ServiceState& s) const = 0;
  virtual bool contains(const ServiceState& s) const = 0;
  /// Enumerates the state set, sink included. Intended for small bounds.
  virtual std::vector<ServiceState> states() const = 0;
  /// |states()| without enumerating.
  virtual std::uint64_t state_count() const = 0;
};

/// H_s: the service described by `description` with current state `state`.
class ServiceInstance {
 public:
  /// Throws Error when the state is outside the description's state set.
  ServiceInstance(std::shared_ptr<const ServiceDescription> description, ServiceState state);

  const ServiceDescription& description() const noexcept { return *description_; }
  const std::shared_ptr<const ServiceDescription>& description_ptr() const noexcept {
    return description_;
  }
  const ServiceState& state() const noexcept { return state_; }

  friend bool operator==(const ServiceInstance& a, const ServiceInstance& b) {
    return a.description_ == b.description_ && a.state_ == b.state_;
  }

 private:
  std::shared_ptr<const ServiceDescription> description_;
  ServiceState state_;
};

/// H_s(<m>) = yld(m, s).
Reply reply(const ServiceInstance& svc, std::string_view method);

/// The derived service after processing `method`: H_eff(m,s).
ServiceInstance step(const ServiceInstance& svc, std::string_view method);

/// ceff_s(α): cumulative effect of a method sequence from state s.
ServiceState cumulative_effect(const ServiceDescription& d, ServiceState s,
                               std::span<const std::string> methods);

/// H_s(α ⌢ <m>) = yld(m, ceff_s(α)). Throws Error on an empty sequence.
Reply replay_reply(const ServiceDescription& d, const ServiceState& s,
                   std::span<const std::string> methods);

/// Register file over registers [1,maxr] holding values in [0,maxn]. State
/// cells[i-1] is the content of register i.
std::shared_ptr<const ServiceDescription> register_file_description(const EnvParams& env);

/// RF_s. `initial` must map exactly [1,maxr] into [0,maxn].
ServiceInstance make_register_file(const EnvParams& env,
                                   const std::map<std::uint32_t, std::uint32_t>& initial);

/// RF_init: every register holds 0.
ServiceInstance register_file_init(const EnvParams& env);

/// Bounded stack of naturals in [0,maxn] of length at most maxs. State cells
/// hold the stack bottom-to-top.
std::shared_ptr<const ServiceDescription> stack_description(const EnvParams& env);

/// St_s with `initial` listed top first (the sequence <n> ⌢ σ has top n).
ServiceInstance make_stack(const EnvParams& env, const std::vector<std::uint32_t>& initial);

/// St_init: the empty stack.
ServiceInstance stack_init(const EnvParams& env);

/// t /f svc: every action with focus `focus` is processed by the service and
/// hidden. A blocked reply deadlocks, and a reachable cycle of hidden steps
/// (no visible action, no constant) denotes D.
ThreadGraph compose_use(const ThreadGraph& t, std::string_view focus, const ServiceInstance& svc);

}  // namespace projsem
