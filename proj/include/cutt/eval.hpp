#pragma once

#include "cutt/errors.hpp"
#include "cutt/value.hpp"

#include <iosfwd>

namespace cutt {

Value eval(const Term& t, const Env& env);
IntervalDnf evalInterval(const IntervalTerm& r, const Env& env);
Face evalFace(const FaceTerm& f, const Env& env);
// evaluate a kernel-built term in an environment holding only the given values
Value evalWith(const TermPtr& t, std::initializer_list<std::pair<const char*, Value>> binds);
Value closureApply(const Closure& c, const Value& arg);

// eliminators
Value app(const Value& f, const Value& a);
Value fst(const Value& p);
Value snd(const Value& p);
Value pathApp(const Value& p, const IntervalDnf& r);
Value natRec(const Value& motive, const Value& z, const Value& s, const Value& n);
Value caseSum(const Value& motive, const Value& l, const Value& r, const Value& s);
Value idJ(const Value& family, const Value& base, const Value& target);

// restriction along a direction substitution
Value restrict(const Value& v, const Subst& s);
Value restrict(const Value& v, const Conjunct& c);
System restrictSystem(const System& sys, const Subst& s);
GlueSystem restrictGlueSystem(const GlueSystem& sys, const Subst& s);
CompProblem restrictProblem(const CompProblem& pb, const Subst& s);
// value of a system on a conjunct where it is total, or null
Value systemAt(const System& sys, const Conjunct& c);

// composition and filling
Value compose(const CompProblem& pb);
Value fill(const CompProblem& pb, const IntervalDnf& at);
Value composeGlue(const CompProblem& pb, const Value& base, const GlueSystem& branches);

// Glue
Value glueType(const Value& base, GlueSystem branches);
Value glueIntro(System partial, const Value& base);
Value unglue(const Value& g, const System& funs);
System glueFuns(const GlueSystem& sys);

bool glueAt(const GlueSystem& sys, const Conjunct& c, GlueParts* out);

Value arrowType(const Value& a, const Value& b);
Value reflValue(const Value& a);
Value equivType(const Value& a, const Value& b, const Value& f);
Value fiberType(const Value& a, const Value& b, const Value& f, const Value& y);
// eliminator argument types
Value natMotiveType();
Value natStepType(const Value& motive);
Value sumMotiveType(const Value& a, const Value& b);
Value inlBranchType(const Value& a, const Value& motive);
Value inrBranchType(const Value& b, const Value& motive);
Value jFamilyType(const Value& a, const Value& x);

Value inferNeutralType(const Value& n);

// one line per composition dispatch when set (thread local)
void setCompTrace(std::ostream* out);

}  // namespace cutt
