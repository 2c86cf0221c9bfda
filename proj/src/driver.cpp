#include "cutt/driver.hpp"

#include "cutt/conv.hpp"
#include "cutt/eval.hpp"

#include <mutex>
#include <stdexcept>

namespace cutt {

Program loadSource(const std::string& source, const GlobalsPtr& base) {
    Program prog{base ? base : std::make_shared<const Globals>(), {}};
    for (const auto& def : parseProgram(source)) {
        prog.globals = checkDefinition(prog.globals, def);
        prog.names.push_back(def.name);
    }
    return prog;
}

const GlobalsPtr& preludeGlobals() {
    static GlobalsPtr globals;
    static std::once_flag once;
    std::call_once(once, [] { globals = loadSource(preludeSource(), nullptr).globals; });
    return globals;
}

GlobalsPtr startGlobals(bool withPrelude) {
    return withPrelude ? preludeGlobals() : std::make_shared<const Globals>();
}

namespace {

const GlobalEntry& lookup(const GlobalsPtr& globals, const std::string& name) {
    auto it = globals->find(name);
    if (it == globals->end()) throw std::out_of_range("no definition named '" + name + "'");
    return it->second;
}

}  // namespace

std::string normalForm(const GlobalsPtr& globals, const std::string& name) {
    const GlobalEntry& g = lookup(globals, name);
    Names names;
    return printTerm(*readback(g.type, g.value, names));
}

std::string normalType(const GlobalsPtr& globals, const std::string& name) {
    Names names;
    return printTerm(*readbackType(lookup(globals, name).type, names));
}

Evaluated evaluateExpression(const GlobalsPtr& globals, const std::string& expr) {
    TermPtr t = parseTerm(expr);
    Context ctx(globals);
    Value type = infer(ctx, *t);
    Value v = eval(*t, ctx.env);
    Names n1, n2;
    return {printTerm(*readback(type, v, n1)), printTerm(*readbackType(type, n2))};
}

}  // namespace cutt
