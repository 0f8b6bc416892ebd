#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace manapprox {

/// Dimension or index out of the supported range.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A required hypothesis (strict inclusion, component bound) does not hold.
class HypothesisViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A level passed to level-set extraction coincides with a vertex value.
class RegularityViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No admissible regular value was found by the bounded perturbation search.
class SelectionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace manapprox
