#pragma once

#include <stdexcept>
#include <string>

namespace ssalt {

// Error categories; values line up with the CLI exit-code map and the C API
// status codes.
enum class errc {
  io = 1,
  insufficient_data = 2,
  infeasible_scheme = 3,
  numerical = 4,
  invalid_argument = 5,
};

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw error(code, what); }

}  // namespace ssalt
