#pragma once

#include <stdexcept>
#include <string>

namespace esyz {

/// Domain error carrying a stable, machine-readable name (e.g. "SingularCurve").
/// The CLI prints the name and exits with status 1.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& message)
      : std::runtime_error(name + ": " + message), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

inline void require(bool condition, const char* name, const std::string& message) {
  if (!condition) throw Error(name, message);
}

}  // namespace esyz
