#include "qowf/util/error.h"

namespace qowf {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidInput:
            return "invalid_input";
        case ErrorKind::CapExceeded:
            return "cap_exceeded";
        case ErrorKind::PromiseViolated:
            return "promise_violated";
        case ErrorKind::NotUnitary:
            return "not_unitary";
        case ErrorKind::Internal:
            return "internal";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message, std::string field)
    : std::runtime_error(message), kind_(kind), field_(std::move(field)) {}

void fail(const std::string& message, std::string field) {
    throw Error(ErrorKind::InvalidInput, message, std::move(field));
}

void fail(ErrorKind kind, const std::string& message, std::string field) {
    throw Error(kind, message, std::move(field));
}

}  // namespace qowf
