#include "cutt/face.hpp"
#include "cutt/syntax.hpp"

#include <doctest.h>

using namespace cutt;

namespace {

Direction i = Direction::named("i"), j = Direction::named("j"), k = Direction::named("k");

Face atom(Direction d, bool v) { return Face::of(Conjunct::atom(d, v)); }

}  // namespace

TEST_CASE("face equations from intervals") {
    CHECK(faceEq(IntervalDnf::top(), true).isTop());
    CHECK(faceEq(IntervalDnf::top(), false).isBottom());
    IntervalDnf ij = IntervalDnf::dir(i).meet(IntervalDnf::dir(j));
    // i /\ j = 1 needs both, i /\ j = 0 needs either
    CHECK(faceEq(ij, true) == faceAnd(atom(i, true), atom(j, true)));
    CHECK(faceEq(ij, false) == faceOr(atom(i, false), atom(j, false)));
    // i /\ ~i = 1 cannot hold
    CHECK(faceEq(IntervalDnf::dir(i).meet(IntervalDnf::dir(i).negate()), true).isBottom());
}

TEST_CASE("inconsistent conjuncts vanish") {
    CHECK(faceAnd(atom(i, true), atom(i, false)).isBottom());
    CHECK_FALSE(Conjunct::make({{i, true}, {i, false}}).has_value());
    CHECK(faceOr(atom(i, true), Face::bottom()) == atom(i, true));
    CHECK(faceOr(atom(i, true), Face::top()).isTop());
}

TEST_CASE("antichains absorb") {
    Face f = faceOr(atom(i, true), faceAnd(atom(i, true), atom(j, false)));
    CHECK(f == atom(i, true));
    CHECK(f.conjuncts().size() == 1);
}

TEST_CASE("order") {
    Face ij = faceAnd(atom(i, true), atom(j, true));
    CHECK(faceLeq(ij, atom(i, true)));
    CHECK_FALSE(faceLeq(atom(i, true), ij));
    CHECK(faceLeq(Face::bottom(), ij));
    CHECK(faceLeq(ij, Face::top()));
    // (i = 0) \/ (i = 1) is not top: faces are not Boolean
    CHECK_FALSE(faceOr(atom(i, false), atom(i, true)).isTop());
    CHECK(truth(faceOr(atom(i, false), atom(i, true))) == Truth::Neither);
    CHECK(truth(Face::top()) == Truth::True);
    CHECK(truth(Face::bottom()) == Truth::False);
}

TEST_CASE("universal quantification over a direction") {
    Face f = faceOr(faceOr(atom(i, false), atom(i, true)), atom(j, true));
    CHECK(forallDir(i, f) == atom(j, true));
    CHECK(forallDir(i, atom(i, true)).isBottom());
    CHECK(forallDir(i, atom(j, false)) == atom(j, false));
    Face g = faceOr(faceAnd(atom(i, true), atom(k, true)), atom(j, true));
    CHECK(forallDir(i, g) == atom(j, true));
}

TEST_CASE("substitution into faces") {
    Face f = faceAnd(atom(i, true), atom(j, false));
    CHECK(faceSubst(f, Subst::single(i, IntervalDnf::top())) == atom(j, false));
    CHECK(faceSubst(f, Subst::single(i, IntervalDnf::bottom())).isBottom());
    Face g = faceSubst(atom(i, true), Subst::single(i, IntervalDnf::dir(j).join(IntervalDnf::dir(k))));
    CHECK(g == faceOr(atom(j, true), atom(k, true)));
}

TEST_CASE("printing") {
    CHECK(printFace(Face::top()) == "(0 = 0)");
    CHECK(printFace(Face::bottom()) == "(0 = 1)");
    CHECK(printFace(faceAnd(atom(i, true), atom(j, false))) == "(i = 1) /\\ (j = 0)");
}
