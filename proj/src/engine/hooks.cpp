#include <algorithm>
#include <stdexcept>

#include "crowdkit/engine.hpp"

namespace crowdkit::engine {

void HookRegistry::claim(const std::string& name) {
  if (name.empty()) throw std::invalid_argument("hook name must be non-empty");
  if (name == node_counts_name) throw std::invalid_argument("hook name 'node_counts' is reserved");
  if (name.find_first_of("/\\") != std::string::npos || name == "." || name == "..")
    throw std::invalid_argument("hook name '" + name + "' cannot be used as a file name");
  if (std::find(names_.begin(), names_.end(), name) != names_.end())
    throw std::invalid_argument("duplicate hook name '" + name + "'");
  names_.push_back(name);
}

HookRegistry& HookRegistry::on_setup(std::string name, SetupHook fn) {
  claim(name);
  setup_.push_back({std::move(name), std::move(fn)});
  return *this;
}

HookRegistry& HookRegistry::before_iteration(std::string name, ContextHook fn) {
  claim(name);
  before_.push_back({std::move(name), std::move(fn)});
  return *this;
}

HookRegistry& HookRegistry::every_agent(std::string name, AgentHook fn) {
  claim(name);
  agent_.push_back({std::move(name), std::move(fn)});
  return *this;
}

HookRegistry& HookRegistry::after_iteration(std::string name, ContextHook fn, bool include_initial) {
  claim(name);
  after_.push_back({std::move(name), std::move(fn), include_initial});
  return *this;
}

HookRegistry& HookRegistry::after_simulation(std::string name, ContextHook fn) {
  claim(name);
  finish_.push_back({std::move(name), std::move(fn)});
  return *this;
}

}  // namespace crowdkit::engine
