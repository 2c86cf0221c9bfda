#include "cutt/driver.hpp"
#include "cutt/eval.hpp"
#include "cutt/selftest.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kOk = 0;
constexpr int kTypeError = 1;
constexpr int kParseError = 2;
constexpr int kSelftestFailure = 3;

bool readFile(const std::string& path, std::string* out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    *out = ss.str();
    return true;
}

void report(const std::string& file, const cutt::Span& sp, const char* kind, const std::string& msg) {
    std::cerr << file << ":" << sp.line << ":" << sp.col << ": " << kind << ": " << msg << "\n";
}

// Runs fn, turning kernel exceptions into the documented message and exit code.
template <class F>
int guarded(const std::string& file, F&& fn) {
    try {
        return fn();
    } catch (const cutt::ParseError& e) {
        report(file, e.span, "parse", e.what());
        return kParseError;
    } catch (const cutt::TypeError& e) {
        report(file, e.span, cutt::errorKindName(e.kind), e.what());
        return kTypeError;
    }
}

int prelude(bool use, cutt::GlobalsPtr* out) {
    return guarded("prelude.cutt", [&] {
        *out = cutt::startGlobals(use);
        return kOk;
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cutt: checker for a small cubical type theory"};
    app.require_subcommand(1);
    bool noPrelude = false, traceComp = false;
    app.add_flag("--no-prelude", noPrelude, "do not load prelude.cutt");
    app.add_flag("--trace-comp", traceComp, "print one line per composition dispatch to stderr");

    std::vector<std::string> checkFiles;
    auto* check = app.add_subcommand("check", "typecheck every definition of the given files");
    check->add_option("files", checkFiles, "source files")->required();

    std::string normFile, normDef;
    auto* normalize = app.add_subcommand("normalize", "print normal forms of definitions");
    normalize->add_option("file", normFile, "source file")->required();
    normalize->add_option("--def", normDef, "only this definition");

    std::string expr;
    std::vector<std::string> evalFiles;
    auto* evalCmd = app.add_subcommand("eval", "infer the type of an expression and print its normal form");
    evalCmd->add_option("expr", expr, "expression")->required();
    evalCmd->add_option("files", evalFiles, "files whose definitions are in scope");

    uint64_t seed = 0;
    auto* selftest = app.add_subcommand("selftest", "run the randomized property suites");
    selftest->add_option("--seed", seed, "random seed");

    for (auto* sub : {check, normalize, evalCmd, selftest}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kParseError;
    }

    if (*selftest) {
        if (traceComp) cutt::setCompTrace(&std::cerr);
        bool ok = true;
        for (const auto& r : cutt::runSelftest(seed, std::cout)) ok = ok && r.passed;
        return ok ? kOk : kSelftestFailure;
    }

    cutt::GlobalsPtr base;
    if (int rc = prelude(!noPrelude, &base)) return rc;
    // after the prelude, so only the user's compositions are traced
    if (traceComp) cutt::setCompTrace(&std::cerr);

    if (*check) {
        int worst = kOk;
        for (const auto& file : checkFiles) {
            std::string src;
            if (!readFile(file, &src)) {
                std::cerr << file << ":0:0: io: cannot read file\n";
                worst = std::max(worst, kParseError);
                continue;
            }
            int rc = guarded(file, [&] {
                cutt::Program prog = cutt::loadSource(src, base);
                std::cout << file << ": ok (" << prog.names.size() << " definitions)\n";
                return kOk;
            });
            worst = std::max(worst, rc);
        }
        return worst;
    }

    if (*normalize) {
        std::string src;
        if (!readFile(normFile, &src)) {
            std::cerr << normFile << ":0:0: io: cannot read file\n";
            return kParseError;
        }
        return guarded(normFile, [&] {
            cutt::Program prog = cutt::loadSource(src, base);
            if (!normDef.empty()) {
                if (!prog.globals->count(normDef)) {
                    std::cerr << normFile << ":0:0: scope: no definition named '" << normDef << "'\n";
                    return kTypeError;
                }
                std::cout << cutt::normalForm(prog.globals, normDef) << "\n";
                return kOk;
            }
            for (const auto& name : prog.names)
                std::cout << "def " << name << " : " << cutt::normalType(prog.globals, name) << " = "
                          << cutt::normalForm(prog.globals, name) << "\n";
            return kOk;
        });
    }

    // eval
    cutt::GlobalsPtr globals = base;
    for (const auto& file : evalFiles) {
        std::string src;
        if (!readFile(file, &src)) {
            std::cerr << file << ":0:0: io: cannot read file\n";
            return kParseError;
        }
        int rc = guarded(file, [&] {
            globals = cutt::loadSource(src, globals).globals;
            return kOk;
        });
        if (rc) return rc;
    }
    return guarded("<expr>", [&] {
        cutt::Evaluated r = cutt::evaluateExpression(globals, expr);
        std::cout << r.term << " : " << r.type << "\n";
        return kOk;
    });
}
