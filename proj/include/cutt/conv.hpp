#pragma once

#include "cutt/value.hpp"

#include <map>
#include <string>

namespace cutt {

// Type-directed conversion with eta for Pi, Sigma and Path.
bool conv(const Value& type, const Value& a, const Value& b);
bool convType(const Value& a, const Value& b);

// Names used when reading values back into syntax.
struct Names {
    std::map<uint64_t, std::string> vars;  // neutral variable id -> name
    std::map<uint32_t, std::string> dirs;  // direction id -> name
    int nextVar = 0;
    int nextDir = 0;

    std::string freshVarName();
    std::string freshDirName();
};

TermPtr readback(const Value& type, const Value& v, Names& names);
TermPtr readbackType(const Value& v, Names& names);
IntervalTerm readbackInterval(const IntervalDnf& r, const Names& names);
FaceTermPtr readbackFace(const Face& f, const Names& names);

}  // namespace cutt
