#include "cutt/syntax.hpp"

namespace cutt {

namespace {

enum Prec { kTerm = 0, kArrowDom = 1, kProdLhs = 2, kApp = 3, kAtom = 4 };

std::string paren(bool p, const std::string& s) { return p ? "(" + s + ")" : s; }

std::string intervalAtom(const IntervalTerm& r) {
    std::string s = printInterval(r);
    bool atomic = r.kind() == IntervalTerm::Kind::Zero || r.kind() == IntervalTerm::Kind::One ||
                  r.kind() == IntervalTerm::Kind::Dir || r.kind() == IntervalTerm::Kind::Neg;
    return atomic ? s : "(" + s + ")";
}

// 0 disjunction, 1 conjunction, 2 atom
std::string face(const FaceTerm& f, int ctx) {
    switch (f.kind) {
    case FaceTerm::Kind::Eq: return "(" + printInterval(*f.lhs) + " = " + (f.value ? "1" : "0") + ")";
    case FaceTerm::Kind::Or: return paren(ctx > 0, face(*f.a, 0) + " \\/ " + face(*f.b, 1));
    case FaceTerm::Kind::And: return paren(ctx > 1, face(*f.a, 1) + " /\\ " + face(*f.b, 2));
    case FaceTerm::Kind::Forall: return paren(ctx > 0, "forall " + f.binder + ". " + face(*f.a, 0));
    }
    return "?";
}

std::string print(const Term& t, int ctx);

std::string system(const std::vector<SystemBranch>& sys) {
    if (sys.empty()) return "[]";
    std::string s = "[ ";
    for (size_t k = 0; k < sys.size(); ++k) {
        if (k) s += ", ";
        s += face(*sys[k].face, 0) + " -> ";
        if (sys[k].parts.size() == 1) {
            s += print(*sys[k].parts[0], kTerm);
        } else {
            s += "(";
            for (size_t j = 0; j < sys[k].parts.size(); ++j) s += (j ? ", " : "") + print(*sys[k].parts[j], kTerm);
            s += ")";
        }
    }
    return s + " ]";
}

std::string keyword(const char* w, const Term& t, int ctx) {
    std::string s = w;
    for (const auto& a : t.args) s += " " + print(*a, kAtom);
    return paren(ctx > kApp, s);
}

std::string print(const Term& t, int ctx) {
    using K = Term::Kind;
    switch (t.kind) {
    case K::Var: return t.name;
    case K::U: return "U";
    case K::Nat: return "Nat";
    case K::Zero: return "zero";
    case K::Pi:
        if (t.name == "_")
            return paren(ctx > kTerm, print(*t.args[0], kArrowDom) + " -> " + print(*t.args[1], kTerm));
        return paren(ctx > kTerm, "(" + t.name + " : " + print(*t.args[0], kTerm) + ") -> " + print(*t.args[1], kTerm));
    case K::Sigma:
        if (t.name == "_")
            return paren(ctx > kArrowDom, print(*t.args[0], kProdLhs) + " * " + print(*t.args[1], kArrowDom));
        return paren(ctx > kArrowDom,
                     "(" + t.name + " : " + print(*t.args[0], kTerm) + ") * " + print(*t.args[1], kArrowDom));
    case K::Lam: {
        std::string binder = t.args.size() > 1 ? "(" + t.name + " : " + print(*t.args[1], kTerm) + ")" : t.name;
        return paren(ctx > kTerm, "\\" + binder + ". " + print(*t.args[0], kTerm));
    }
    case K::PLam: return paren(ctx > kTerm, "<" + t.name + "> " + print(*t.args[0], kTerm));
    case K::App: return paren(ctx > kApp, print(*t.args[0], kApp) + " " + print(*t.args[1], kAtom));
    case K::PApp: return paren(ctx > kApp, print(*t.args[0], kApp) + " @ " + intervalAtom(*t.interval));
    case K::Pair: return "(" + print(*t.args[0], kTerm) + ", " + print(*t.args[1], kTerm) + ")";
    case K::Fst: return print(*t.args[0], kAtom) + ".1";
    case K::Snd: return print(*t.args[0], kAtom) + ".2";
    case K::Suc: return keyword("suc", t, ctx);
    case K::NatRec: return keyword("natrec", t, ctx);
    case K::Sum: return keyword("Sum", t, ctx);
    case K::Inl: return keyword("inl", t, ctx);
    case K::Inr: return keyword("inr", t, ctx);
    case K::Case: return keyword("case", t, ctx);
    case K::Path: return keyword("Path", t, ctx);
    case K::Id: return keyword("Id", t, ctx);
    case K::Refl: return keyword("refl", t, ctx);
    case K::IdJ: return keyword("idJ", t, ctx);
    case K::IdPair: return paren(ctx > kApp, "idPair " + print(*t.args[0], kAtom) + " " + face(*t.face, 2));
    case K::Comp:
    case K::Fill: {
        std::string s = std::string(t.kind == K::Comp ? "comp " : "fill ") + (t.endpoint ? "1" : "0") + " <" +
                        t.name + "> " + print(*t.args[0], kApp) + " " + system(t.system) + " " +
                        print(*t.args[1], kAtom);
        return paren(ctx > kApp, s);
    }
    case K::Glue: return paren(ctx > kApp, "Glue " + print(*t.args[0], kAtom) + " " + system(t.system));
    case K::GlueElem: return paren(ctx > kApp, "glue " + system(t.system) + " " + print(*t.args[0], kAtom));
    case K::Unglue: return paren(ctx > kApp, "unglue " + system(t.system) + " " + print(*t.args[0], kAtom));
    }
    return "?";
}

}  // namespace

std::string printTerm(const Term& t) { return print(t, kTerm); }
std::string printFaceTerm(const FaceTerm& f) { return face(f, 0); }

std::string printDefinition(const Definition& d) {
    return "def " + d.name + " : " + printTerm(*d.type) + " =\n  " + printTerm(*d.body) + "\n";
}

bool sameFaceTerm(const FaceTerm& a, const FaceTerm& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case FaceTerm::Kind::Eq: return a.value == b.value && a.lhs->sameShape(*b.lhs);
    case FaceTerm::Kind::Forall: return a.binder == b.binder && sameFaceTerm(*a.a, *b.a);
    default: return sameFaceTerm(*a.a, *b.a) && sameFaceTerm(*a.b, *b.b);
    }
}

bool sameTerm(const Term& a, const Term& b) {
    if (a.kind != b.kind || a.name != b.name || a.endpoint != b.endpoint || a.args.size() != b.args.size() ||
        a.system.size() != b.system.size())
        return false;
    if (a.interval.has_value() != b.interval.has_value()) return false;
    if (a.interval && !a.interval->sameShape(*b.interval)) return false;
    if ((a.face == nullptr) != (b.face == nullptr)) return false;
    if (a.face && !sameFaceTerm(*a.face, *b.face)) return false;
    for (size_t k = 0; k < a.args.size(); ++k)
        if (!sameTerm(*a.args[k], *b.args[k])) return false;
    for (size_t k = 0; k < a.system.size(); ++k) {
        const auto& x = a.system[k];
        const auto& y = b.system[k];
        if (!sameFaceTerm(*x.face, *y.face) || x.parts.size() != y.parts.size()) return false;
        for (size_t j = 0; j < x.parts.size(); ++j)
            if (!sameTerm(*x.parts[j], *y.parts[j])) return false;
    }
    return true;
}

}  // namespace cutt
