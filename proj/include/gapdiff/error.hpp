#pragma once

#include <stdexcept>
#include <string>

namespace gapdiff {

/// Error raised by any pipeline stage. The message is prefixed with the
/// module that detected the problem, e.g. "chain_model: rate must be positive".
class Error : public std::runtime_error {
public:
  Error(std::string module, const std::string& what)
      : std::runtime_error(module + ": " + what), module_(std::move(module)) {}

  const std::string& module() const noexcept { return module_; }

private:
  std::string module_;
};

}  // namespace gapdiff
