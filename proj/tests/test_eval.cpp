#include "cutt/conv.hpp"
#include "cutt/driver.hpp"
#include "cutt/eval.hpp"

#include <doctest.h>

#include <sstream>

using namespace cutt;

namespace {

std::string nf(const std::string& expr) { return evaluateExpression(preludeGlobals(), expr).term; }

// normal form of a closed definition checked on top of the prelude
std::string nfDef(const std::string& src, const std::string& name) {
    return normalForm(loadSource(src, preludeGlobals()).globals, name);
}

}  // namespace

TEST_CASE("beta and projections") {
    CHECK(nf("(suc zero, zero).1") == "suc zero");
    CHECK(nf("natrec (\\_. Nat) zero (\\_ m. suc (suc m)) (suc (suc zero))") == "suc (suc (suc (suc zero)))");
    CHECK(nfDef("def s : Sum Nat Nat = inl zero\n"
                "def t : Nat = case (\\_. Nat) (\\x. suc x) (\\_. zero) s",
                "t") == "suc zero");
}

TEST_CASE("path application at the endpoints") {
    CHECK(nf("ctr Nat zero zero (<_> zero) @ 0") == "(zero, <i0> zero)");
    CHECK(nfDef("def e : (A : U) (a b : A) (p : Path A a b) -> A = \\A a b p. p @ 1", "e") == "\\x0. \\x1. \\x2. \\x3. x2");
}

TEST_CASE("composition with a total tube returns the tube") {
    CHECK(nfDef("def t : (A : U) (a : A) -> A = \\A a. comp 0 <_> A [(0 = 0) -> <_> a] a", "t") ==
          "\\x0. \\x1. x1");
}

TEST_CASE("composition in Nat pushes through constructors only") {
    CHECK(nf("comp 0 <_> Nat [] (suc zero)") == "suc zero");
    CHECK(nfDef("def t : (n : Nat) -> Nat = \\n. comp 0 <_> Nat [] (suc n)", "t") ==
          "\\x0. suc (comp 0 <i0> Nat [] x0)");
    // a tube that is not a constructor blocks the computation
    CHECK(nfDef("def t : (m : Nat) (p : Path Nat zero m) -> Path Nat zero m\n"
                "  = \\m p. <i> comp 0 <_> Nat [(i = 1) -> p] zero",
                "t") == "\\x0. \\x1. <i0> comp 0 <i1> Nat [ (i0 = 1) -> <i1> x1 @ i1 ] zero");
}

TEST_CASE("composition in Sigma, Sum and Path is structural") {
    CHECK(nf("comp 0 <_> (Nat * Nat) [] (zero, suc zero)") == "(zero, suc zero)");
    CHECK(nf("comp 1 <_> Sum Nat Nat [] (inl (suc zero))") == "inl (suc zero)");
    CHECK(nf("trans Nat zero zero zero (<_> zero) (<_> zero)") == "<i0> zero");
}

TEST_CASE("fill starts at the cap") {
    CHECK(nf("H Nat (\\_. Nat) zero zero @ 0") == "zero");
    CHECK(nfDef("def t : (A : U) (a : A) -> A = \\A a. (fill 0 <_> A [] a) @ 0", "t") == "\\x0. \\x1. x1");
}

TEST_CASE("idJ computes on refl") {
    CHECK(nf("idJ (\\u v. Nat) (suc zero) (refl zero)") == "suc zero");
}

TEST_CASE("Glue is strict on its face") {
    CHECK(nf("Glue Nat [(0 = 0) -> (Nat, \\x. x, idIsEquiv Nat)]") == "Nat");
    CHECK(nf("Glue Nat [(0 = 1) -> (Nat, \\x. x, idIsEquiv Nat)]") == "Nat");
    CHECK(nf("equivToPath Nat Nat (idEquiv Nat) @ 0") == "Nat");
    CHECK(nf("equivToPath Nat Nat (idEquiv Nat) @ 1") == "Nat");
    CHECK(nfDef("def g : (A : U) -> Path U A A = \\A. <i> Glue A [(i = 0) -> (A, \\x. x, idIsEquiv A)]", "g")
              .find("Glue x0 [ (i0 = 0) -> (x0, ") != std::string::npos);
}

TEST_CASE("composition trace") {
    std::ostringstream trace;
    struct Reset {
        ~Reset() { setCompTrace(nullptr); }
    } reset;
    setCompTrace(&trace);
    nf("comp 0 <_> (Nat * Nat) [] (zero, suc zero)");
    CHECK(trace.str().find("Sigma") != std::string::npos);
}
