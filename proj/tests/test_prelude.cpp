#include "cutt/driver.hpp"

#include <doctest.h>

using namespace cutt;

namespace {

Evaluated ev(const std::string& expr) { return evaluateExpression(preludeGlobals(), expr); }

}  // namespace

TEST_CASE("prelude checks") {
    Program p = loadSource(preludeSource(), nullptr);
    for (const char* name : {"ctr", "subst", "H", "funext", "isEquiv", "gradLemma", "pathToEquiv", "equivToPath",
                             "uaCoherence", "coerceIdZero"})
        CHECK(p.globals->count(name) == 1);
}

TEST_CASE("contraction of singletons") {
    CHECK(ev("ctr Nat zero zero (<_> zero) @ 0").term == "(zero, <i0> zero)");
    CHECK(ev("ctr Nat zero zero (<_> zero)").type ==
          "Path ((x0 : Nat) * Path Nat zero x0) (zero, <i0> zero) (zero, <i1> zero)");
}

TEST_CASE("transport") {
    CHECK(ev("subst Nat (\\_. Nat) zero zero (<_> zero) (suc zero)").term == "suc zero");
    CHECK(ev("H Nat (\\_. Nat) zero (suc zero) @ 1").term == "suc zero");
}

TEST_CASE("function extensionality") {
    CHECK(ev("funext Nat (\\_. Nat) (\\x. x) (\\x. x) (\\x. <_> x) @ 0").term == "\\x0. x0");
}

TEST_CASE("univalence") {
    CHECK(normalForm(preludeGlobals(), "coerceIdZero") == "zero");
    CHECK(ev("coerce Nat Nat (equivToPath Nat Nat (idEquiv Nat)) (suc (suc zero))").term == "suc (suc zero)");
    CHECK(ev("(pathToEquiv Nat Nat (<_> Nat)).1 zero").term == "zero");
    CHECK(ev("equivToId Nat Nat (idEquiv Nat)").type == "Id U Nat Nat");
}
