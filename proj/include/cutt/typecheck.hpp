#pragma once

#include "cutt/errors.hpp"
#include "cutt/value.hpp"

namespace cutt {

// Typing context: the evaluation environment, where every term variable is a
// fresh neutral carrying its type and every direction a fresh direction.
struct Context {
    Env env;

    explicit Context(GlobalsPtr g) : env(std::move(g)) {}
    explicit Context(Env e) : env(std::move(e)) {}

    Context bindVar(const std::string& name, const Value& type, Value* var = nullptr) const;
    Context bindDir(const std::string& name, Direction* dir = nullptr) const;
    Context restrict(const Conjunct& c) const { return Context(env.restrict(c.asSubst())); }
};

void check(const Context& ctx, const Term& t, const Value& type);
Value infer(const Context& ctx, const Term& t);
// checks that t is a type and returns its value
Value checkType(const Context& ctx, const Term& t);

// Checks one definition against the globals and returns the extended globals.
// A name already present is shadowed.
GlobalsPtr checkDefinition(const GlobalsPtr& globals, const Definition& def);

// pretty form of a value for messages and normal forms
std::string showValue(const Value& type, const Value& v);
std::string showType(const Value& v);

}  // namespace cutt
