#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace symdyn {

/// Base of every exception thrown by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-domain input. The CLI maps this family to exit code 3.
class invalid_argument : public error {
public:
    using error::error;
};

/// A parse failure with the offending (1-based) line number.
class parse_error : public invalid_argument {
public:
    parse_error(std::size_t line, const std::string& what)
        : invalid_argument("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A hard size guard was hit before any work was done.
class size_limit : public invalid_argument {
public:
    using invalid_argument::invalid_argument;
};

class unsupported_operation : public invalid_argument {
public:
    using invalid_argument::invalid_argument;
};

class precondition_failure : public invalid_argument {
public:
    using invalid_argument::invalid_argument;
};

/// A mathematical guarantee was violated. Never expected to fire; exit code 2.
class invariant_failure : public error {
public:
    using error::error;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
    if (!ok) throw invalid_argument(what);
}

inline void ensure(bool ok, const std::string& what) {
    if (!ok) throw invariant_failure(what);
}

} // namespace detail
} // namespace symdyn
