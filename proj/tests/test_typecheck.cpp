#include "cutt/driver.hpp"

#include <doctest.h>

#include <optional>

using namespace cutt;

namespace {

// kind of the first error when checking src, none when it checks
std::optional<ErrorKind> errorOf(const std::string& src, bool prelude = false) {
    try {
        loadSource(src, startGlobals(prelude));
    } catch (const TypeError& e) {
        return e.kind;
    }
    return std::nullopt;
}

bool checks(const std::string& src, bool prelude = false) { return !errorOf(src, prelude).has_value(); }

}  // namespace

TEST_CASE("constant paths check against their boundary") {
    CHECK(checks("def z : Path Nat zero zero = <i> zero"));
    CHECK(errorOf("def z : Path Nat zero (suc zero) = <i> zero") == ErrorKind::Boundary);
}

TEST_CASE("path endpoints are checked after substitution") {
    CHECK(checks("def s : (A : U) (a b : A) (p : Path A a b) -> Path A b a = \\A a b p. <i> p @ ~i"));
    CHECK(errorOf("def s : (A : U) (a b : A) (p : Path A a b) -> Path A b a = \\A a b p. <i> p @ i") ==
          ErrorKind::Boundary);
}

TEST_CASE("compositions") {
    CHECK(checks("def t : (A : U) (a b : A) (p : Path A a b) -> A = \\A a b p. comp 0 <_> A [(0 = 0) -> p] a"));
    // tube disagrees with the cap
    CHECK(errorOf("def t : (A : U) (a b : A) (p : Path A a b) -> A = \\A a b p. comp 0 <_> A [(0 = 0) -> p] b") ==
          ErrorKind::Boundary);
    // tubes disagree where their faces overlap
    CHECK(errorOf("def t : (A : U) (a b : A) (p : Path A a b) -> Path A a a\n"
                  "  = \\A a b p. <i> comp 0 <_> A [(i = 0) -> <_> a, (i = 0) -> p] a") ==
          ErrorKind::IncompatibleSystem);
    // the bound direction may not appear in a tube face
    CHECK(errorOf("def t : (A : U) (a : A) -> A = \\A a. comp 0 <i> A [(i = 0) -> <_> a] a").has_value());
}

TEST_CASE("error kinds") {
    CHECK(errorOf("def x : Nat = y") == ErrorKind::Scope);
    CHECK(errorOf("def x : zero = zero") == ErrorKind::NotAType);
    CHECK(errorOf("def x : Nat = \\y. y") == ErrorKind::Mismatch);
    CHECK(errorOf("def x : Nat = zero zero") == ErrorKind::Mismatch);
    CHECK(errorOf("def x : (A : U) -> A -> A = \\A a. a @ 0") == ErrorKind::Mismatch);
}

TEST_CASE("errors point at the offending term") {
    try {
        loadSource("def one : Nat = suc zero\ndef bad : Nat = suc one one\n", nullptr);
        FAIL("expected an error");
    } catch (const TypeError& e) {
        CHECK(e.span.line == 2);
        CHECK(e.kind == ErrorKind::Mismatch);
    }
}

TEST_CASE("Sigma, Sum and Id") {
    CHECK(checks("def p : (x : Nat) * Path Nat x x = (zero, <_> zero)"));
    CHECK(checks("def s : Sum Nat U = inr Nat"));
    CHECK(checks("def r : Id Nat zero zero = refl zero"));
    CHECK(checks("def r : (A : U) (a b : A) (p : Path A a b) -> Id A a b = \\A a b p. idPair p (0 = 1)"));
    // the flag must be a face where the path is constant
    CHECK(errorOf("def r : (A : U) (a b : A) (p : Path A a b) -> Id A a b = \\A a b p. idPair p (0 = 0)")
              .has_value());
}

TEST_CASE("Glue typing") {
    CHECK(checks("def g : (i : Nat) -> U = \\_. Glue Nat [(0 = 1) -> (Nat, \\x. x, idIsEquiv Nat)]", true));
    // the map must go into the base
    CHECK(errorOf("def g : U = Glue Nat [(0 = 0) -> (Nat * Nat, \\x. x, idIsEquiv Nat)]", true).has_value());
    CHECK(checks("def g : (A : U) (a : A) -> Path U A A\n"
                 "  = \\A a. <i> Glue A [(i = 0) -> (A, \\x. x, idIsEquiv A)]",
                 true));
}

TEST_CASE("a later file shadows earlier definitions, one file may not repeat a name") {
    Program first = loadSource("def x : Nat = zero\n", nullptr);
    Program second = loadSource("def x : U = Nat\n", first.globals);
    CHECK(normalType(second.globals, "x") == "U");
    CHECK(normalType(first.globals, "x") == "Nat");
    CHECK_THROWS(loadSource("def x : Nat = zero\ndef x : U = Nat\n", nullptr));
}
