#pragma once

#include <stdexcept>
#include <string>

namespace flp {

enum class ErrorKind {
    invalid_argument,
    precondition,              // input outside the algorithm's domain
    extraction_exhausted,      // freeness certified, basis search gave up
    factorization_incomplete,  // divisor factoring bounds exceeded
    parse,
    not_member,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

}  // namespace flp
