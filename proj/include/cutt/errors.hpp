#pragma once

#include "cutt/syntax.hpp"

#include <stdexcept>
#include <string>

namespace cutt {

enum class ErrorKind { Mismatch, Boundary, IncompatibleSystem, Scope, NotAType, Stuck };

const char* errorKindName(ErrorKind k);

struct TypeError : std::runtime_error {
    ErrorKind kind;
    Span span;
    TypeError(ErrorKind k, Span s, const std::string& msg) : std::runtime_error(msg), kind(k), span(s) {}
};

}  // namespace cutt
