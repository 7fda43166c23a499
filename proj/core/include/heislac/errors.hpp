#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace heislac {

/// A discretization does not resolve the features it must; `required` is
/// the minimum number of grid points that would.
class ResolutionError : public std::runtime_error {
 public:
  ResolutionError(const std::string& what, std::size_t required)
      : std::runtime_error(what + " (requires at least " + std::to_string(required) + " points)"),
        required_(required) {}
  std::size_t required() const { return required_; }

 private:
  std::size_t required_;
};

}  // namespace heislac
