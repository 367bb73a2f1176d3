#pragma once

#include <stdexcept>
#include <string>

namespace qowf {

enum class ErrorKind {
    InvalidInput,
    CapExceeded,
    PromiseViolated,
    NotUnitary,
    Internal,
};

const char* to_string(ErrorKind kind);

/// Error raised by every public operation on invalid input. `field` names the
/// offending argument or JSON field when there is one.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message, std::string field = {});

    ErrorKind kind() const { return kind_; }
    const std::string& field() const { return field_; }

  private:
    ErrorKind kind_;
    std::string field_;
};

[[noreturn]] void fail(const std::string& message, std::string field = {});
[[noreturn]] void fail(ErrorKind kind, const std::string& message, std::string field = {});

inline void require(bool condition, const std::string& message, std::string field = {}) {
    if (!condition) {
        fail(message, std::move(field));
    }
}

}  // namespace qowf
