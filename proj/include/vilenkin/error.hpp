#pragma once

#include <stdexcept>
#include <string>

namespace vilenkin {

enum class ErrorKind {
  Domain,    // argument outside the mathematical domain of an operation
  Capacity,  // index or size beyond the stored radix / resolution / budget
  Usage,     // mismatched operands or malformed request
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_domain(const std::string& what) {
  throw Error(ErrorKind::Domain, what);
}
[[noreturn]] inline void throw_capacity(const std::string& what) {
  throw Error(ErrorKind::Capacity, what);
}
[[noreturn]] inline void throw_usage(const std::string& what) {
  throw Error(ErrorKind::Usage, what);
}
[[noreturn]] inline void throw_io(const std::string& what) {
  throw Error(ErrorKind::Io, what);
}

}  // namespace vilenkin
