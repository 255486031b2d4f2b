#pragma once

#include <stdexcept>
#include <string>

namespace infodist {

// Every domain failure carries a stable kind string ("ShapeMismatch",
// "NotNormalized", ...) that the CLI copies verbatim into its error JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace infodist
