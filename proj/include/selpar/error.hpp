#pragma once

#include <stdexcept>
#include <string>

namespace selpar {

// Values double as CLI exit codes.
enum class ErrorKind {
  input = 1,
  hypothesis = 2,
  exhaustion = 3,
  property = 4,
  inconclusive = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error input_error(const std::string& what) { return {ErrorKind::input, what}; }
inline Error hypothesis_error(const std::string& what) { return {ErrorKind::hypothesis, what}; }
inline Error exhaustion_error(const std::string& what) { return {ErrorKind::exhaustion, what}; }
inline Error property_error(const std::string& what) { return {ErrorKind::property, what}; }
inline Error inconclusive_error(const std::string& what) { return {ErrorKind::inconclusive, what}; }

}  // namespace selpar
