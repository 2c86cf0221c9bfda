#include "cutt/syntax.hpp"

#include <doctest.h>

using namespace cutt;

namespace {

// printing then parsing gives back the same tree
void roundTrip(const std::string& src) {
    TermPtr t = parseTerm(src);
    std::string printed = printTerm(*t);
    TermPtr again = parseTerm(printed);
    INFO(src << "  printed as  " << printed);
    CHECK(sameTerm(*t, *again));
    CHECK(printTerm(*again) == printed);
}

Span errorAt(const std::string& src) {
    try {
        parseProgram(src);
    } catch (const ParseError& e) {
        return e.span;
    }
    FAIL("no parse error for " << src);
    return {};
}

}  // namespace

TEST_CASE("round trips") {
    for (const char* src : {
             "\\A a. <i> a",
             "(A : U) (a b : A) -> Path A a b",
             "(x : A) * Path A a x",
             "A -> B -> A",
             "(A -> B) -> A",
             "f x @ i",
             "(p @ ~i).1",
             "p @ ((i /\\ j) \\/ ~k)",
             "comp 0 <i> P @ i [(i = 1) /\\ (j = 0) -> <i> u, (k = 0) \\/ (k = 1) -> q] x",
             "fill 1 <_> A [] x @ i",
             "natrec (\\_. Nat) zero (\\_ m. suc m) n",
             "case (\\_. Nat) (\\x. x) (\\_. zero) (inl (suc zero))",
             "idJ B b (refl a)",
             "idPair p ((i = 0) \\/ (i = 1))",
             "Glue B [(i = 0) -> (A, f, e)]",
             "glue [(i = 0) -> a] b",
             "unglue [(i = 0) -> f] g",
             "Sum Nat (Nat * U)",
         })
        roundTrip(src);
}

TEST_CASE("application binds tighter than path application") {
    TermPtr t = parseTerm("f x @ i");
    CHECK(t->kind == Term::Kind::PApp);
    CHECK(t->args[0]->kind == Term::Kind::App);
}

TEST_CASE("telescopes expand to nested binders") {
    TermPtr t = parseTerm("(a b : A) -> B");
    REQUIRE(t->kind == Term::Kind::Pi);
    CHECK(t->name == "a");
    CHECK(t->args[1]->kind == Term::Kind::Pi);
    CHECK(t->args[1]->name == "b");
}

TEST_CASE("programs") {
    auto defs = parseProgram(
        "-- comment\n"
        "def one : Nat = suc zero\n"
        "def id : (A : U) -> A -> A\n"
        "  = \\A a. a\n");
    REQUIRE(defs.size() == 2);
    CHECK(defs[0].name == "one");
    CHECK(defs[1].span.line == 3);
    CHECK(printDefinition(defs[0]) == "def one : Nat =\n  suc zero\n");
}

TEST_CASE("parse errors carry positions") {
    Span s = errorAt("def x : Nat = (suc\n");
    CHECK(s.line == 2);
    s = errorAt("def x : Nat = comp 2 <i> Nat [] zero");
    CHECK(s.line == 1);
    CHECK(s.col > 1);
    CHECK_THROWS_AS(parseTerm("def"), ParseError);
    CHECK_THROWS_AS(parseInterval("i /\\"), ParseError);
    CHECK_THROWS_AS(parseFace("(i = 2)"), ParseError);
}

TEST_CASE("faces and intervals") {
    CHECK(printFaceTerm(*parseFace("(i = 0) \\/ (j = 1) /\\ (k = 0)")) == "(i = 0) \\/ (j = 1) /\\ (k = 0)");
    CHECK(parseInterval("~i /\\ j").kind() == IntervalTerm::Kind::Meet);
}
