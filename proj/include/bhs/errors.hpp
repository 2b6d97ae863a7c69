#pragma once

#include <stdexcept>
#include <string>

namespace bhs {

/// A time step larger than the explicit stability limit was requested.
struct CflError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The explicit scheme produced a negative or non-finite density.
struct SchemeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// No n = 1/2 crossing exists in the state.
struct FrontAbsentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Configuration problem; key() names the offending dotted key when known.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}

  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

}  // namespace bhs
