#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace splitkdv {

// Numerical failure inside a sub-flow (shock formation, non-finite values).
class BlowUpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Failure during a splitting run, tagged with the step that failed.
class SplitRunError : public std::runtime_error {
 public:
  SplitRunError(std::size_t step, const std::string& what)
      : std::runtime_error("step " + std::to_string(step) + ": " + what), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

}  // namespace splitkdv
