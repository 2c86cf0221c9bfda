#include "cutt/syntax.hpp"

#include <cctype>
#include <set>
#include <unordered_set>

namespace cutt {

FaceTermPtr FaceTerm::eq(IntervalTerm r, bool v, Span s) {
    auto f = std::make_shared<FaceTerm>();
    f->kind = Kind::Eq;
    f->lhs = std::move(r);
    f->value = v;
    f->span = s;
    return f;
}

FaceTermPtr FaceTerm::disj(FaceTermPtr x, FaceTermPtr y, Span s) {
    auto f = std::make_shared<FaceTerm>();
    f->kind = Kind::Or;
    f->a = std::move(x);
    f->b = std::move(y);
    f->span = s;
    return f;
}

FaceTermPtr FaceTerm::conj(FaceTermPtr x, FaceTermPtr y, Span s) {
    auto f = std::make_shared<FaceTerm>();
    f->kind = Kind::And;
    f->a = std::move(x);
    f->b = std::move(y);
    f->span = s;
    return f;
}

FaceTermPtr FaceTerm::forall(std::string d, FaceTermPtr body, Span s) {
    auto f = std::make_shared<FaceTerm>();
    f->kind = Kind::Forall;
    f->binder = std::move(d);
    f->a = std::move(body);
    f->span = s;
    return f;
}

TermPtr Term::make(Kind k, Span s, std::string name, std::vector<TermPtr> args) {
    auto t = std::make_shared<Term>();
    t->kind = k;
    t->span = s;
    t->name = std::move(name);
    t->args = std::move(args);
    return t;
}

namespace mk {
using K = Term::Kind;
TermPtr var(const std::string& x) { return Term::make(K::Var, {}, x, {}); }
TermPtr universe() { return Term::make(K::U, {}, "", {}); }
TermPtr pi(const std::string& x, TermPtr a, TermPtr b) { return Term::make(K::Pi, {}, x, {std::move(a), std::move(b)}); }
TermPtr sigma(const std::string& x, TermPtr a, TermPtr b) {
    return Term::make(K::Sigma, {}, x, {std::move(a), std::move(b)});
}
TermPtr lam(const std::string& x, TermPtr body) { return Term::make(K::Lam, {}, x, {std::move(body)}); }
TermPtr app(TermPtr f, TermPtr a) { return Term::make(K::App, {}, "", {std::move(f), std::move(a)}); }
TermPtr app(TermPtr f, std::initializer_list<TermPtr> as) {
    for (const auto& a : as) f = app(f, a);
    return f;
}
TermPtr pair(TermPtr a, TermPtr b) { return Term::make(K::Pair, {}, "", {std::move(a), std::move(b)}); }
TermPtr fst(TermPtr t) { return Term::make(K::Fst, {}, "", {std::move(t)}); }
TermPtr snd(TermPtr t) { return Term::make(K::Snd, {}, "", {std::move(t)}); }
TermPtr nat() { return Term::make(K::Nat, {}, "", {}); }
TermPtr zero() { return Term::make(K::Zero, {}, "", {}); }
TermPtr suc(TermPtr t) { return Term::make(K::Suc, {}, "", {std::move(t)}); }
TermPtr path(TermPtr a, TermPtr x, TermPtr y) {
    return Term::make(K::Path, {}, "", {std::move(a), std::move(x), std::move(y)});
}
TermPtr plam(const std::string& i, TermPtr body) { return Term::make(K::PLam, {}, i, {std::move(body)}); }
TermPtr papp(TermPtr t, IntervalTerm r) {
    auto n = std::make_shared<Term>();
    n->kind = K::PApp;
    n->args = {std::move(t)};
    n->interval = std::move(r);
    return n;
}
}  // namespace mk

namespace {

const std::unordered_set<std::string> kReserved = {
    "def",  "U",    "Nat",  "zero", "suc",  "natrec", "Sum",  "inl",  "inr",    "case",  "Path",
    "Id",   "idPair", "refl", "idJ", "comp", "fill",   "Glue", "glue", "unglue", "forall",
};

enum class Tok { Ident, Number, Sym, Proj, End };

struct Token {
    Tok kind;
    std::string text;
    Span span;
};

bool identStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool identChar(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto adv = [&](size_t n) {
        for (size_t k = 0; k < n && i < src.size(); ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            adv(1);
            continue;
        }
        if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
            while (i < src.size() && src[i] != '\n') adv(1);
            continue;
        }
        Span sp{line, col};
        if (identStart(c)) {
            size_t j = i;
            while (j < src.size() && identChar(src[j])) ++j;
            out.push_back({Tok::Ident, src.substr(i, j - i), sp});
            adv(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            out.push_back({Tok::Number, src.substr(i, j - i), sp});
            adv(j - i);
            continue;
        }
        // projection: a dot glued to the previous token and followed by 1 or 2
        if (c == '.' && i > 0 && !std::isspace(static_cast<unsigned char>(src[i - 1])) && i + 1 < src.size() &&
            (src[i + 1] == '1' || src[i + 1] == '2') && (i + 2 >= src.size() || !identChar(src[i + 2]))) {
            out.push_back({Tok::Proj, std::string(1, src[i + 1]), sp});
            adv(2);
            continue;
        }
        static const char* twoChar[] = {"->", "/\\", "\\/"};
        bool matched = false;
        for (const char* s : twoChar) {
            if (src.compare(i, 2, s) == 0) {
                out.push_back({Tok::Sym, s, sp});
                adv(2);
                matched = true;
                break;
            }
        }
        if (matched) continue;
        static const std::string single = "()[]<>,:=\\.@~*";
        if (single.find(c) != std::string::npos) {
            out.push_back({Tok::Sym, std::string(1, c), sp});
            adv(1);
            continue;
        }
        throw ParseError(sp, std::string("unexpected character '") + c + "'");
    }
    out.push_back({Tok::End, "", {line, col}});
    return out;
}

class Parser {
public:
    explicit Parser(const std::string& src) : toks_(lex(src)) {}

    std::vector<Definition> program() {
        std::vector<Definition> defs;
        std::set<std::string> seen;
        while (!at(Tok::End)) {
            Span sp = peek().span;
            expectWord("def");
            std::string name = ident("definition name");
            if (!seen.insert(name).second) throw ParseError(sp, "duplicate top-level name '" + name + "'");
            expectSym(":");
            TermPtr ty = term();
            expectSym("=");
            TermPtr body = term();
            defs.push_back({name, sp, ty, body});
        }
        return defs;
    }

    TermPtr wholeTerm() {
        TermPtr t = term();
        expectEnd();
        return t;
    }

    FaceTermPtr wholeFace() {
        FaceTermPtr f = face();
        expectEnd();
        return f;
    }

    IntervalTerm wholeInterval() {
        IntervalTerm r = interval();
        expectEnd();
        return r;
    }

private:
    std::vector<Token> toks_;
    size_t pos_ = 0;

    const Token& peek(size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    bool at(Tok k) const { return peek().kind == k; }
    bool atSym(const char* s, size_t k = 0) const { return peek(k).kind == Tok::Sym && peek(k).text == s; }
    bool atWord(const char* w) const { return peek().kind == Tok::Ident && peek().text == w; }
    const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    [[noreturn]] void fail(const std::string& what) const {
        const Token& t = peek();
        std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
        throw ParseError(t.span, "expected " + what + ", found " + got);
    }

    void expectSym(const char* s) {
        if (!atSym(s)) fail(std::string("'") + s + "'");
        next();
    }
    void expectWord(const char* w) {
        if (!atWord(w)) fail(std::string("'") + w + "'");
        next();
    }
    void expectEnd() {
        if (!at(Tok::End)) fail("end of input");
    }

    std::string ident(const char* what) {
        if (!at(Tok::Ident)) fail(what);
        if (kReserved.count(peek().text))
            throw ParseError(peek().span, "reserved word '" + peek().text + "' cannot be used as " + what);
        return next().text;
    }

    // ---- intervals ----

    IntervalTerm interval() {
        IntervalTerm r = intervalMeet();
        while (atSym("\\/")) {
            next();
            r = IntervalTerm::join(r, intervalMeet());
        }
        return r;
    }

    IntervalTerm intervalMeet() {
        IntervalTerm r = intervalAtom();
        while (atSym("/\\")) {
            next();
            r = IntervalTerm::meet(r, intervalAtom());
        }
        return r;
    }

    IntervalTerm intervalAtom() {
        if (at(Tok::Number)) {
            std::string n = peek().text;
            if (n != "0" && n != "1") fail("interval endpoint 0 or 1");
            next();
            return n == "0" ? IntervalTerm::zero() : IntervalTerm::one();
        }
        if (atSym("~")) {
            next();
            return IntervalTerm::neg(intervalAtom());
        }
        if (atSym("(")) {
            next();
            IntervalTerm r = interval();
            expectSym(")");
            return r;
        }
        return IntervalTerm::dir(Direction::named(ident("direction")));
    }

    // ---- faces ----

    FaceTermPtr face() {
        Span sp = peek().span;
        FaceTermPtr f = faceConj();
        while (atSym("\\/")) {
            next();
            f = FaceTerm::disj(f, faceConj(), sp);
        }
        return f;
    }

    FaceTermPtr faceConj() {
        Span sp = peek().span;
        FaceTermPtr f = faceAtom();
        while (atSym("/\\")) {
            next();
            f = FaceTerm::conj(f, faceAtom(), sp);
        }
        return f;
    }

    FaceTermPtr faceAtom() {
        Span sp = peek().span;
        if (atWord("forall")) {
            next();
            std::string d = ident("direction");
            expectSym(".");
            return FaceTerm::forall(d, face(), sp);
        }
        if (!atSym("(")) fail("face");
        size_t save = pos_;
        try {
            next();
            IntervalTerm r = interval();
            expectSym("=");
            if (!at(Tok::Number) || (peek().text != "0" && peek().text != "1")) fail("0 or 1");
            bool v = next().text == "1";
            expectSym(")");
            return FaceTerm::eq(r, v, sp);
        } catch (const ParseError&) {
            pos_ = save;
        }
        next();
        FaceTermPtr f = face();
        expectSym(")");
        return f;
    }

    std::vector<SystemBranch> system(size_t parts) {
        std::vector<SystemBranch> out;
        expectSym("[");
        if (atSym("]")) {
            next();
            return out;
        }
        for (;;) {
            SystemBranch b;
            b.face = face();
            expectSym("->");
            if (parts == 1) {
                b.parts.push_back(term());
            } else {
                expectSym("(");
                for (size_t k = 0; k < parts; ++k) {
                    if (k) expectSym(",");
                    b.parts.push_back(term());
                }
                expectSym(")");
            }
            out.push_back(std::move(b));
            if (atSym(",")) {
                next();
                continue;
            }
            expectSym("]");
            return out;
        }
    }

    // ---- terms ----

    TermPtr term() {
        Span sp = peek().span;
        if (atSym("\\")) {
            next();
            struct Binder {
                std::string name;
                TermPtr type;
            };
            std::vector<Binder> bs;
            while (!atSym(".")) {
                if (atSym("(")) {
                    next();
                    std::vector<std::string> names;
                    while (!atSym(":")) names.push_back(ident("binder"));
                    if (names.empty()) fail("binder");
                    next();
                    TermPtr ty = term();
                    expectSym(")");
                    for (auto& n : names) bs.push_back({n, ty});
                } else {
                    bs.push_back({ident("binder"), nullptr});
                }
            }
            if (bs.empty()) fail("binder");
            next();
            TermPtr body = term();
            for (auto it = bs.rbegin(); it != bs.rend(); ++it) {
                std::vector<TermPtr> args{body};
                if (it->type) args.push_back(it->type);
                body = Term::make(Term::Kind::Lam, sp, it->name, std::move(args));
            }
            return body;
        }
        if (atSym("<")) {
            next();
            std::string i = ident("direction");
            expectSym(">");
            TermPtr body = term();
            return Term::make(Term::Kind::PLam, sp, i, {body});
        }
        return arrow();
    }

    bool atTelescope() const {
        if (!atSym("(")) return false;
        size_t k = 1;
        while (peek(k).kind == Tok::Ident) ++k;
        return k > 1 && peek(k).kind == Tok::Sym && peek(k).text == ":";
    }

    TermPtr arrow() {
        Span sp = peek().span;
        if (atTelescope()) {
            // (x y : A) -> B  or  (x : A) * B
            std::vector<std::pair<std::string, TermPtr>> bs;
            while (atTelescope()) {
                next();
                std::vector<std::string> names;
                while (!atSym(":")) names.push_back(ident("binder"));
                next();
                TermPtr ty = term();
                expectSym(")");
                for (auto& n : names) bs.emplace_back(n, ty);
            }
            Term::Kind k;
            TermPtr rest;
            if (atSym("->")) {
                next();
                k = Term::Kind::Pi;
                rest = term();
            } else if (atSym("*")) {
                next();
                k = Term::Kind::Sigma;
                rest = product();
            } else {
                fail("'->' or '*'");
            }
            for (auto it = bs.rbegin(); it != bs.rend(); ++it) rest = Term::make(k, sp, it->first, {it->second, rest});
            if (k == Term::Kind::Sigma && atSym("->")) {
                next();
                return Term::make(Term::Kind::Pi, sp, "_", {rest, term()});
            }
            return rest;
        }
        TermPtr lhs = product();
        if (atSym("->")) {
            next();
            return Term::make(Term::Kind::Pi, sp, "_", {lhs, term()});
        }
        return lhs;
    }

    TermPtr product() {
        Span sp = peek().span;
        if (atTelescope()) {
            // dependent sigma in the right operand of '*'
            std::vector<std::pair<std::string, TermPtr>> bs;
            while (atTelescope()) {
                next();
                std::vector<std::string> names;
                while (!atSym(":")) names.push_back(ident("binder"));
                next();
                TermPtr ty = term();
                expectSym(")");
                for (auto& n : names) bs.emplace_back(n, ty);
            }
            expectSym("*");
            TermPtr rest = product();
            for (auto it = bs.rbegin(); it != bs.rend(); ++it)
                rest = Term::make(Term::Kind::Sigma, sp, it->first, {it->second, rest});
            return rest;
        }
        TermPtr lhs = application();
        if (atSym("*")) {
            next();
            return Term::make(Term::Kind::Sigma, sp, "_", {lhs, product()});
        }
        return lhs;
    }

    bool atAtomStart() const {
        const Token& t = peek();
        if (t.kind == Tok::Ident) return true;  // identifiers and keyword forms
        if (t.kind == Tok::Sym) return t.text == "(";
        return false;
    }

    TermPtr application() {
        Span sp = peek().span;
        TermPtr t = appHead();
        for (;;) {
            if (atSym("@")) {
                next();
                auto n = std::make_shared<Term>();
                n->kind = Term::Kind::PApp;
                n->span = sp;
                n->args = {t};
                n->interval = intervalAtom();
                t = n;
            } else if (atAtomStart() && !atWord("def")) {
                t = Term::make(Term::Kind::App, sp, "", {t, atom()});
            } else {
                return t;
            }
        }
    }

    TermPtr keyword(Term::Kind k, Span sp, size_t arity) {
        next();
        std::vector<TermPtr> args;
        for (size_t i = 0; i < arity; ++i) args.push_back(atom());
        return Term::make(k, sp, "", std::move(args));
    }

    TermPtr compLike(Term::Kind k, Span sp) {
        next();
        if (!at(Tok::Number) || (peek().text != "0" && peek().text != "1")) fail("endpoint 0 or 1");
        int e = next().text == "1" ? 1 : 0;
        expectSym("<");
        std::string i = ident("direction");
        expectSym(">");
        TermPtr line = application();
        auto sys = system(1);
        TermPtr cap = atom();
        auto n = std::make_shared<Term>();
        n->kind = k;
        n->span = sp;
        n->name = i;
        n->endpoint = e;
        n->args = {line, cap};
        n->system = std::move(sys);
        return n;
    }

    // keyword forms take a fixed number of atomic arguments
    TermPtr appHead() {
        Span sp = peek().span;
        if (peek().kind == Tok::Ident) {
            const std::string& w = peek().text;
            using K = Term::Kind;
            if (w == "suc") return keyword(K::Suc, sp, 1);
            if (w == "inl") return keyword(K::Inl, sp, 1);
            if (w == "inr") return keyword(K::Inr, sp, 1);
            if (w == "refl") return keyword(K::Refl, sp, 1);
            if (w == "natrec") return keyword(K::NatRec, sp, 4);
            if (w == "case") return keyword(K::Case, sp, 4);
            if (w == "Sum") return keyword(K::Sum, sp, 2);
            if (w == "Path") return keyword(K::Path, sp, 3);
            if (w == "Id") return keyword(K::Id, sp, 3);
            if (w == "idJ") return keyword(K::IdJ, sp, 3);
            if (w == "idPair") {
                next();
                TermPtr p = atom();
                FaceTermPtr f = faceAtom();
                auto n = std::make_shared<Term>();
                n->kind = K::IdPair;
                n->span = sp;
                n->args = {p};
                n->face = f;
                return n;
            }
            if (w == "comp") return compLike(K::Comp, sp);
            if (w == "fill") return compLike(K::Fill, sp);
            if (w == "Glue") {
                next();
                TermPtr b = atom();
                auto n = std::make_shared<Term>();
                n->kind = K::Glue;
                n->span = sp;
                n->args = {b};
                n->system = system(3);
                return n;
            }
            if (w == "glue" || w == "unglue") {
                K k = w == "glue" ? K::GlueElem : K::Unglue;
                next();
                auto sys = system(1);
                TermPtr b = atom();
                auto n = std::make_shared<Term>();
                n->kind = k;
                n->span = sp;
                n->args = {b};
                n->system = std::move(sys);
                return n;
            }
        }
        return atom();
    }

    TermPtr atom() {
        Span sp = peek().span;
        TermPtr t;
        if (atSym("(")) {
            next();
            TermPtr first = term();
            if (atSym(",")) {
                std::vector<TermPtr> items{first};
                while (atSym(",")) {
                    next();
                    items.push_back(term());
                }
                expectSym(")");
                t = items.back();
                for (size_t k = items.size() - 1; k-- > 0;) t = Term::make(Term::Kind::Pair, sp, "", {items[k], t});
            } else {
                expectSym(")");
                t = first;
            }
        } else if (at(Tok::Ident)) {
            const std::string& w = peek().text;
            if (w == "U") {
                next();
                t = Term::make(Term::Kind::U, sp, "", {});
            } else if (w == "Nat") {
                next();
                t = Term::make(Term::Kind::Nat, sp, "", {});
            } else if (w == "zero") {
                next();
                t = Term::make(Term::Kind::Zero, sp, "", {});
            } else if (kReserved.count(w) && w != "def") {
                // keyword form used as an argument needs parentheses
                throw ParseError(sp, "'" + w + "' form must be parenthesized here");
            } else {
                t = Term::make(Term::Kind::Var, sp, ident("term"), {});
            }
        } else {
            fail("term");
        }
        while (at(Tok::Proj)) {
            bool first = next().text == "1";
            t = Term::make(first ? Term::Kind::Fst : Term::Kind::Snd, sp, "", {t});
        }
        return t;
    }
};

}  // namespace

bool isReserved(const std::string& word) { return kReserved.count(word) != 0; }

std::vector<Definition> parseProgram(const std::string& source) { return Parser(source).program(); }
TermPtr parseTerm(const std::string& source) { return Parser(source).wholeTerm(); }
FaceTermPtr parseFace(const std::string& source) { return Parser(source).wholeFace(); }
IntervalTerm parseInterval(const std::string& source) { return Parser(source).wholeInterval(); }

}  // namespace cutt
