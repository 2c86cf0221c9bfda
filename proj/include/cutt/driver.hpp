#pragma once

#include "cutt/typecheck.hpp"

#include <string>
#include <vector>

namespace cutt {

// text of prelude.cutt, compiled in at build time
const char* preludeSource();

struct Program {
    GlobalsPtr globals;
    std::vector<std::string> names;  // definitions of the last loaded source, in order
};

// Parses and checks a source on top of the given globals.
// Throws ParseError or TypeError.
Program loadSource(const std::string& source, const GlobalsPtr& base);

// The checked prelude, loaded once per process.
const GlobalsPtr& preludeGlobals();

// Globals to start from: the prelude, or nothing.
GlobalsPtr startGlobals(bool withPrelude);

// normal form of a global definition in concrete syntax
std::string normalForm(const GlobalsPtr& globals, const std::string& name);
std::string normalType(const GlobalsPtr& globals, const std::string& name);

// infers and normalizes a standalone expression
struct Evaluated {
    std::string term;
    std::string type;
};
Evaluated evaluateExpression(const GlobalsPtr& globals, const std::string& expr);

}  // namespace cutt
