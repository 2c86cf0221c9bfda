#include "cutt/interval.hpp"
#include "cutt/syntax.hpp"

#include <doctest.h>

using namespace cutt;

namespace {

IntervalTerm I(const char* s) { return parseInterval(s); }
bool same(const char* a, const char* b) { return iequal(I(a), I(b)); }

}  // namespace

TEST_CASE("constants and units") {
    CHECK(normalize(I("0")).isBottom());
    CHECK(normalize(I("1")).isTop());
    CHECK(same("i /\\ 1", "i"));
    CHECK(same("i \\/ 0", "i"));
    CHECK(same("i /\\ 0", "0"));
    CHECK(same("i \\/ 1", "1"));
    CHECK(same("~0", "1"));
}

TEST_CASE("de Morgan laws hold, excluded middle does not") {
    CHECK(same("~(i /\\ j)", "~i \\/ ~j"));
    CHECK(same("~(i \\/ j)", "~i /\\ ~j"));
    CHECK(same("~~i", "i"));
    CHECK_FALSE(same("i /\\ ~i", "0"));
    CHECK_FALSE(same("i \\/ ~i", "1"));
    CHECK_FALSE(same("i", "j"));
    CHECK_FALSE(same("i", "~i"));
}

TEST_CASE("lattice laws") {
    CHECK(same("i /\\ j", "j /\\ i"));
    CHECK(same("i /\\ (j \\/ k)", "(i /\\ j) \\/ (i /\\ k)"));
    CHECK(same("i \\/ (j /\\ k)", "(i \\/ j) /\\ (i \\/ k)"));
    CHECK(same("i \\/ (i /\\ j)", "i"));
    CHECK(same("i /\\ (i \\/ j)", "i"));
    CHECK(same("i /\\ i", "i"));
    // absorption does not apply across a negated literal
    CHECK_FALSE(same("i \\/ (~i /\\ j)", "i \\/ j"));
}

TEST_CASE("normal form is canonical and printable") {
    IntervalDnf a = normalize(I("(j /\\ i) \\/ (i /\\ j /\\ k)"));
    IntervalDnf b = normalize(I("i /\\ j"));
    CHECK(a == b);
    CHECK(normalize(a.toTerm()) == a);
    CHECK(a.clauses().size() == 1);
    CHECK(a.mentions(Direction::named("i")));
    CHECK_FALSE(a.mentions(Direction::named("k")));
}

TEST_CASE("substitution") {
    Direction i = Direction::named("i"), j = Direction::named("j");
    std::map<Direction, IntervalTerm> s{{i, I("~j")}};
    CHECK(iequal(isubst(I("i /\\ j"), s), I("~j /\\ j")));
    IntervalDnf r = normalize(I("i \\/ j"));
    CHECK(r.substitute(Subst::single(i, IntervalDnf::top())).isTop());
    CHECK(r.substitute(Subst::single(i, IntervalDnf::bottom())) == IntervalDnf::dir(j));
    // composition of substitutions
    Subst first = Subst::single(i, IntervalDnf::dir(j));
    Subst second = Subst::single(j, IntervalDnf::bottom());
    CHECK(r.substitute(first.then(second)) == r.substitute(first).substitute(second));
}

TEST_CASE("fresh directions are distinct from named ones") {
    Direction f = Direction::fresh("i");
    CHECK(f != Direction::named("i"));
    CHECK(f.display() == "i");
    CHECK(Direction::fresh() != Direction::fresh());
}
