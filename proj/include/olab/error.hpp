#pragma once

#include <stdexcept>
#include <string>

namespace olab {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Malformed text input (cycle notation, origami files, words).
class ParseError : public Error {
  public:
    using Error::Error;
};

// Well-formed input that violates an operation's precondition.
class DomainError : public Error {
  public:
    using Error::Error;
};

// A broken internal invariant. Never caused by user input.
class InternalError : public Error {
  public:
    using Error::Error;
};

#define OLAB_ASSERT(cond, msg)                                                 \
    do {                                                                       \
        if (!(cond))                                                           \
            throw ::olab::InternalError(std::string("assertion failed: ") +    \
                                        (msg));                                \
    } while (0)

} // namespace olab
