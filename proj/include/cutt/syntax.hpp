#pragma once

#include "cutt/interval.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cutt {

struct Span {
    int line = 0;
    int col = 0;
};

struct FaceTerm;
using FaceTermPtr = std::shared_ptr<const FaceTerm>;

struct FaceTerm {
    enum class Kind { Eq, Or, And, Forall };
    Kind kind = Kind::Eq;
    Span span;
    std::optional<IntervalTerm> lhs;  // Eq
    bool value = false;               // Eq
    std::string binder;               // Forall
    FaceTermPtr a, b;                 // Or/And use both, Forall uses a

    static FaceTermPtr eq(IntervalTerm r, bool v, Span s = {});
    static FaceTermPtr disj(FaceTermPtr x, FaceTermPtr y, Span s = {});
    static FaceTermPtr conj(FaceTermPtr x, FaceTermPtr y, Span s = {});
    static FaceTermPtr forall(std::string d, FaceTermPtr body, Span s = {});
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// One branch of a system: a face and one term (three for Glue branches).
struct SystemBranch {
    FaceTermPtr face;
    std::vector<TermPtr> parts;
};

struct Term {
    enum class Kind {
        Var, U,
        Pi, Sigma, Lam, App, Pair, Fst, Snd,
        Nat, Zero, Suc, NatRec,
        Sum, Inl, Inr, Case,
        Path, PLam, PApp,
        Id, IdPair, Refl, IdJ,
        Comp, Fill,
        Glue, GlueElem, Unglue,
    };

    Kind kind = Kind::U;
    Span span;
    std::string name;             // variable, binder, or bound direction
    std::vector<TermPtr> args;    // children in constructor order
    std::optional<IntervalTerm> interval;  // PApp
    FaceTermPtr face;             // IdPair
    int endpoint = 0;             // Comp/Fill
    std::vector<SystemBranch> system;

    static TermPtr make(Kind k, Span s, std::string name, std::vector<TermPtr> args);
};

namespace mk {
TermPtr var(const std::string& x);
TermPtr universe();
TermPtr pi(const std::string& x, TermPtr a, TermPtr b);
TermPtr sigma(const std::string& x, TermPtr a, TermPtr b);
TermPtr lam(const std::string& x, TermPtr body);
TermPtr app(TermPtr f, TermPtr a);
TermPtr app(TermPtr f, std::initializer_list<TermPtr> as);
TermPtr pair(TermPtr a, TermPtr b);
TermPtr fst(TermPtr t);
TermPtr snd(TermPtr t);
TermPtr nat();
TermPtr zero();
TermPtr suc(TermPtr t);
TermPtr path(TermPtr a, TermPtr x, TermPtr y);
TermPtr plam(const std::string& i, TermPtr body);
TermPtr papp(TermPtr t, IntervalTerm r);
}  // namespace mk

struct Definition {
    std::string name;
    Span span;
    TermPtr type;
    TermPtr body;
};

struct ParseError : std::runtime_error {
    Span span;
    ParseError(Span s, const std::string& msg) : std::runtime_error(msg), span(s) {}
};

bool isReserved(const std::string& word);

std::vector<Definition> parseProgram(const std::string& source);
TermPtr parseTerm(const std::string& source);
FaceTermPtr parseFace(const std::string& source);
IntervalTerm parseInterval(const std::string& source);

std::string printTerm(const Term& t);
std::string printFaceTerm(const FaceTerm& f);
std::string printDefinition(const Definition& d);

// structural equality ignoring spans
bool sameTerm(const Term& a, const Term& b);
bool sameFaceTerm(const FaceTerm& a, const FaceTerm& b);

}  // namespace cutt
