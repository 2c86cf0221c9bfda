#include "cutt/typecheck.hpp"

#include "cutt/conv.hpp"
#include "cutt/eval.hpp"

#include <functional>

namespace cutt {

Context Context::bindVar(const std::string& name, const Value& type, Value* var) const {
    Value x = freshVar(type, name);
    if (var) *var = x;
    return Context(env.bind(name, x, type));
}

Context Context::bindDir(const std::string& name, Direction* dir) const {
    Direction d = Direction::fresh(name);
    if (dir) *dir = d;
    return Context(env.bindDir(name, IntervalDnf::dir(d)));
}

std::string showType(const Value& v) {
    try {
        Names names;
        return printTerm(*readbackType(v, names));
    } catch (const TypeError&) {
        return headName(v);
    }
}

std::string showValue(const Value& type, const Value& v) {
    try {
        Names names;
        return printTerm(*readback(type, v, names));
    } catch (const TypeError&) {
        return headName(v);
    }
}

namespace {

using K = Term::Kind;

[[noreturn]] void fail(ErrorKind k, const Term& t, const std::string& msg) { throw TypeError(k, t.span, msg); }

Subst at(Direction d, int e) { return Subst::single(d, IntervalDnf::constant(e != 0)); }
Subst rename(Direction from, Direction to) { return Subst::single(from, IntervalDnf::dir(to)); }

Value evalIn(const Context& ctx, const Term& t) { return eval(t, ctx.env); }

void expectConv(ErrorKind k, const Term& t, const Value& type, const Value& got, const Value& want,
                const std::string& what) {
    if (!conv(type, got, want))
        fail(k, t, what + ": expected " + showValue(type, want) + ", found " + showValue(type, got));
}

void expectType(const Term& t, const Value& got, const Value& want) {
    if (!convType(got, want))
        fail(ErrorKind::Mismatch, t, "expected type " + showType(want) + ", found " + showType(got));
}

// a checked system branch restricted to one conjunct of its face
struct Piece {
    size_t branch;
    Conjunct when;
    Value value;
};

// Checks each branch under every conjunct of its face, then compares branches
// pairwise on their overlaps.
std::vector<Piece> checkSystem(const Context& ctx, const Term& owner, const std::vector<SystemBranch>& branches,
                               const std::function<Value(const Context&, const Conjunct&, const SystemBranch&)>& part,
                               const std::function<bool(const Conjunct&, const Value&, const Value&)>& agree) {
    std::vector<Piece> pieces;
    for (size_t n = 0; n < branches.size(); ++n) {
        Face phi;
        try {
            phi = evalFace(*branches[n].face, ctx.env);
        } catch (const TypeError& e) {
            throw TypeError(e.kind, branches[n].face->span.line ? branches[n].face->span : owner.span, e.what());
        }
        for (const auto& c : phi.conjuncts()) pieces.push_back({n, c, part(ctx.restrict(c), c, branches[n])});
    }
    for (size_t x = 0; x < pieces.size(); ++x)
        for (size_t y = x + 1; y < pieces.size(); ++y) {
            if (pieces[x].branch == pieces[y].branch) continue;
            auto m = pieces[x].when.meet(pieces[y].when);
            if (!m) continue;
            if (!agree(*m, restrict(pieces[x].value, *m), restrict(pieces[y].value, *m)))
                fail(ErrorKind::IncompatibleSystem, *branches[pieces[y].branch].parts[0],
                     "system branches disagree where " + printFace(Face::of(*m)) + " holds");
        }
    return pieces;
}

Face piecesFace(const std::vector<Piece>& pieces) {
    std::vector<Conjunct> cs;
    for (const auto& p : pieces) cs.push_back(p.when);
    return Face::fromConjuncts(std::move(cs));
}

struct CheckedProblem {
    CompProblem pb;
};

CheckedProblem checkProblem(const Context& ctx, const Term& t) {
    CompProblem pb;
    pb.endpoint = t.endpoint;
    Context lineCtx = ctx.bindDir(t.name, &pb.dir);
    checkType(lineCtx, *t.args[0]);
    pb.line = evalIn(lineCtx, *t.args[0]);
    Direction i = pb.dir;
    check(ctx, *t.args[1], restrict(pb.line, at(i, pb.endpoint)));
    pb.cap = evalIn(ctx, *t.args[1]);

    auto tube = [&](const Context& cc, const Conjunct& c, const SystemBranch& b) -> Value {
        const Term& u = *b.parts[0];
        Value lineC = restrict(pb.line, c);
        if (u.kind == K::PLam) {
            Direction k;
            Context inner = cc.bindDir(u.name, &k);
            check(inner, *u.args[0], restrict(lineC, rename(i, k)));
        } else {
            Value ty = infer(cc, u);
            auto p = ty->as<VPath>();
            if (!p) fail(ErrorKind::Mismatch, u, "a tube must be a path, found an element of " + showType(ty));
            expectType(u, p->type, lineC);
        }
        Value v = pathApp(evalIn(cc, u), IntervalDnf::dir(i));
        Value capC = restrict(pb.cap, c);
        expectConv(ErrorKind::Boundary, u, restrict(lineC, at(i, pb.endpoint)), restrict(v, at(i, pb.endpoint)), capC,
                   "tube does not meet the cap");
        return v;
    };
    auto agree = [&](const Conjunct& m, const Value& a, const Value& b) { return conv(restrict(pb.line, m), a, b); };
    for (const auto& p : checkSystem(ctx, t, t.system, tube, agree)) pb.tubes.push_back({p.when, p.value});
    return {pb};
}

Value checkedGlueType(const Context& ctx, const Term& t) {
    Value baseV = checkType(ctx, *t.args[0]);
    auto part = [&](const Context& cc, const Conjunct& c, const SystemBranch& b) -> Value {
        Value baseC = restrict(baseV, c);
        checkType(cc, *b.parts[0]);
        Value a = evalIn(cc, *b.parts[0]);
        check(cc, *b.parts[1], arrowType(a, baseC));
        Value f = evalIn(cc, *b.parts[1]);
        check(cc, *b.parts[2], equivType(a, baseC, f));
        Value e = evalIn(cc, *b.parts[2]);
        // packed so the overlap check sees all three parts
        return make(VPair{a, make(VPair{f, e})});
    };
    auto agree = [&](const Conjunct& m, const Value& x, const Value& y) {
        Value a = fst(x), b = fst(y);
        if (!convType(a, b)) return false;
        Value baseM = restrict(baseV, m);
        Value f = fst(snd(x));
        return conv(arrowType(a, baseM), f, fst(snd(y))) && conv(equivType(a, baseM, f), snd(snd(x)), snd(snd(y)));
    };
    checkSystem(ctx, t, t.system, part, agree);
    return baseV;
}

Value nondependentPair(const Value& a, const Value& b) {
    static const TermPtr body = mk::var("%cod");
    return make(VSigma{a, Closure{"_", body, Env().bind("%cod", b)}});
}

void checkImpl(const Context& ctx, const Term& t, const Value& type);
Value inferImpl(const Context& ctx, const Term& t);

}  // namespace

void check(const Context& ctx, const Term& t, const Value& type) {
    try {
        checkImpl(ctx, t, type);
    } catch (const TypeError& e) {
        if (e.span.line == 0 && t.span.line != 0) throw TypeError(e.kind, t.span, e.what());
        throw;
    }
}

Value infer(const Context& ctx, const Term& t) {
    try {
        return inferImpl(ctx, t);
    } catch (const TypeError& e) {
        if (e.span.line == 0 && t.span.line != 0) throw TypeError(e.kind, t.span, e.what());
        throw;
    }
}

Value checkType(const Context& ctx, const Term& t) {
    Value ty = infer(ctx, t);
    if (!ty->is<VU>()) fail(ErrorKind::NotAType, t, "expected a type, found an element of " + showType(ty));
    return evalIn(ctx, t);
}

namespace {

void checkImpl(const Context& ctx, const Term& t, const Value& type) {
    switch (t.kind) {
    case K::Lam: {
        auto pi = type->as<VPi>();
        if (!pi) fail(ErrorKind::Mismatch, t, "a lambda cannot have type " + showType(type));
        if (t.args.size() > 1) expectType(*t.args[1], checkType(ctx, *t.args[1]), pi->dom);
        Value x;
        Context inner = ctx.bindVar(t.name, pi->dom, &x);
        check(inner, *t.args[0], closureApply(pi->cod, x));
        return;
    }
    case K::Pair: {
        auto sg = type->as<VSigma>();
        if (!sg) fail(ErrorKind::Mismatch, t, "a pair cannot have type " + showType(type));
        check(ctx, *t.args[0], sg->dom);
        check(ctx, *t.args[1], closureApply(sg->cod, evalIn(ctx, *t.args[0])));
        return;
    }
    case K::PLam: {
        auto p = type->as<VPath>();
        if (!p) fail(ErrorKind::Mismatch, t, "a path abstraction cannot have type " + showType(type));
        check(ctx.bindDir(t.name), *t.args[0], p->type);
        Value v0 = eval(*t.args[0], ctx.env.bindDir(t.name, IntervalDnf::bottom()));
        Value v1 = eval(*t.args[0], ctx.env.bindDir(t.name, IntervalDnf::top()));
        expectConv(ErrorKind::Boundary, t, p->type, v0, p->lhs, "path start");
        expectConv(ErrorKind::Boundary, t, p->type, v1, p->rhs, "path end");
        return;
    }
    case K::Inl:
    case K::Inr: {
        auto s = type->as<VSum>();
        if (!s) fail(ErrorKind::Mismatch, t, "an injection cannot have type " + showType(type));
        check(ctx, *t.args[0], t.kind == K::Inl ? s->left : s->right);
        return;
    }
    case K::IdPair: {
        auto id = type->as<VId>();
        if (!id) fail(ErrorKind::Mismatch, t, "idPair cannot have type " + showType(type));
        Value pathTy = make(VPath{id->type, id->lhs, id->rhs});
        check(ctx, *t.args[0], pathTy);
        Value p = evalIn(ctx, *t.args[0]);
        Face flag = evalFace(*t.face, ctx.env);
        for (const auto& c : flag.conjuncts()) {
            Value constant = make(VPLam{Direction::fresh(), restrict(id->lhs, c)});
            expectConv(ErrorKind::Boundary, t, restrict(pathTy, c), restrict(p, c), constant,
                       "path is not constant where the flag holds");
        }
        return;
    }
    case K::Refl: {
        auto id = type->as<VId>();
        if (!id) break;
        check(ctx, *t.args[0], id->type);
        Value a = evalIn(ctx, *t.args[0]);
        expectConv(ErrorKind::Boundary, t, id->type, a, id->lhs, "refl start");
        expectConv(ErrorKind::Boundary, t, id->type, a, id->rhs, "refl end");
        return;
    }
    case K::GlueElem: {
        auto g = type->as<VGlue>();
        if (!g) {
            // the Glue type collapsed: its face is already decided
            Face f;
            auto part = [&](const Context& cc, const Conjunct& c, const SystemBranch& b) {
                check(cc, *b.parts[0], restrict(type, c));
                return evalIn(cc, *b.parts[0]);
            };
            auto agree = [&](const Conjunct& m, const Value& x, const Value& y) { return conv(restrict(type, m), x, y); };
            f = piecesFace(checkSystem(ctx, t, t.system, part, agree));
            if (f.isBottom())
                check(ctx, *t.args[0], type);
            else if (!f.isTop())
                fail(ErrorKind::Mismatch, t, "glue checked against " + showType(type) + ", which is not a Glue type");
            return;
        }
        check(ctx, *t.args[0], g->base);
        Value b = evalIn(ctx, *t.args[0]);
        auto part = [&](const Context& cc, const Conjunct& c, const SystemBranch& br) -> Value {
            GlueParts parts;
            if (!glueAt(g->branches, c, &parts))
                fail(ErrorKind::Mismatch, *br.parts[0], "glue branch lies outside the face of the Glue type");
            check(cc, *br.parts[0], parts.type);
            Value a = evalIn(cc, *br.parts[0]);
            expectConv(ErrorKind::Boundary, *br.parts[0], restrict(g->base, c), app(parts.fun, a), restrict(b, c),
                       "glued element does not map onto the base");
            return a;
        };
        auto agree = [&](const Conjunct& m, const Value& x, const Value& y) {
            GlueParts parts;
            glueAt(g->branches, m, &parts);
            return conv(parts.type, x, y);
        };
        Face got = piecesFace(checkSystem(ctx, t, t.system, part, agree));
        if (got != systemFace(g->branches))
            fail(ErrorKind::Mismatch, t, "glue face " + printFace(got) + " differs from the Glue type's face " +
                                             printFace(systemFace(g->branches)));
        return;
    }
    default: break;
    }
    expectType(t, infer(ctx, t), type);
}

Value inferImpl(const Context& ctx, const Term& t) {
    Value U = make(VU{});
    switch (t.kind) {
    case K::Var: {
        if (const EnvEntry* e = ctx.env.find(t.name)) {
            if (e->isDir) fail(ErrorKind::Scope, t, "direction '" + t.name + "' used as a term");
            if (!e->type) fail(ErrorKind::Scope, t, "variable '" + t.name + "' has no type");
            return e->type;
        }
        if (const GlobalEntry* g = ctx.env.global(t.name)) return g->type;
        fail(ErrorKind::Scope, t, "unbound variable '" + t.name + "'");
    }
    case K::U: return U;
    case K::Pi:
    case K::Sigma: {
        Value a = checkType(ctx, *t.args[0]);
        checkType(ctx.bindVar(t.name, a), *t.args[1]);
        return U;
    }
    case K::Lam:
        fail(ErrorKind::Mismatch, t, "cannot infer the type of a lambda; give it a type in a definition");
    case K::App: {
        Value f = infer(ctx, *t.args[0]);
        auto pi = f->as<VPi>();
        if (!pi) fail(ErrorKind::Mismatch, *t.args[0], "applied term has type " + showType(f) + ", not a function type");
        check(ctx, *t.args[1], pi->dom);
        return closureApply(pi->cod, evalIn(ctx, *t.args[1]));
    }
    case K::Pair: return nondependentPair(infer(ctx, *t.args[0]), infer(ctx, *t.args[1]));
    case K::Fst:
    case K::Snd: {
        Value ty = infer(ctx, *t.args[0]);
        auto sg = ty->as<VSigma>();
        if (!sg) fail(ErrorKind::Mismatch, t, "projection from a term of type " + showType(ty));
        if (t.kind == K::Fst) return sg->dom;
        return closureApply(sg->cod, fst(evalIn(ctx, *t.args[0])));
    }
    case K::Nat: return U;
    case K::Zero: return make(VNat{});
    case K::Suc: check(ctx, *t.args[0], make(VNat{})); return make(VNat{});
    case K::NatRec: {
        check(ctx, *t.args[0], natMotiveType());
        Value motive = evalIn(ctx, *t.args[0]);
        check(ctx, *t.args[1], app(motive, make(VZero{})));
        check(ctx, *t.args[2], natStepType(motive));
        check(ctx, *t.args[3], make(VNat{}));
        return app(motive, evalIn(ctx, *t.args[3]));
    }
    case K::Sum:
        checkType(ctx, *t.args[0]);
        checkType(ctx, *t.args[1]);
        return U;
    case K::Inl:
    case K::Inr: fail(ErrorKind::Mismatch, t, "cannot infer the type of an injection; check it against a Sum type");
    case K::Case: {
        Value st = infer(ctx, *t.args[3]);
        auto sum = st->as<VSum>();
        if (!sum) fail(ErrorKind::Mismatch, *t.args[3], "case on a term of type " + showType(st));
        check(ctx, *t.args[0], sumMotiveType(sum->left, sum->right));
        Value motive = evalIn(ctx, *t.args[0]);
        check(ctx, *t.args[1], inlBranchType(sum->left, motive));
        check(ctx, *t.args[2], inrBranchType(sum->right, motive));
        return app(motive, evalIn(ctx, *t.args[3]));
    }
    case K::Path:
    case K::Id: {
        Value a = checkType(ctx, *t.args[0]);
        check(ctx, *t.args[1], a);
        check(ctx, *t.args[2], a);
        return U;
    }
    case K::PLam: {
        Direction k;
        Value ty = infer(ctx.bindDir(t.name, &k), *t.args[0]);
        if (supportHas(ty->support, k))
            fail(ErrorKind::Mismatch, t, "cannot infer the type of a path whose type varies along it");
        Value v0 = eval(*t.args[0], ctx.env.bindDir(t.name, IntervalDnf::bottom()));
        Value v1 = eval(*t.args[0], ctx.env.bindDir(t.name, IntervalDnf::top()));
        return make(VPath{ty, v0, v1});
    }
    case K::PApp: {
        IntervalDnf r = evalInterval(*t.interval, ctx.env);
        if (t.args[0]->kind == K::Fill) {
            CheckedProblem cp = checkProblem(ctx, *t.args[0]);
            return restrict(cp.pb.line, Subst::single(cp.pb.dir, r));
        }
        Value ty = infer(ctx, *t.args[0]);
        auto p = ty->as<VPath>();
        if (!p) fail(ErrorKind::Mismatch, *t.args[0], "path application to a term of type " + showType(ty));
        return p->type;
    }
    case K::IdPair: fail(ErrorKind::Mismatch, t, "cannot infer the type of idPair; check it against an Id type");
    case K::Refl: {
        Value a = infer(ctx, *t.args[0]);
        Value v = evalIn(ctx, *t.args[0]);
        return make(VId{a, v, v});
    }
    case K::IdJ: {
        Value pt = infer(ctx, *t.args[2]);
        auto id = pt->as<VId>();
        if (!id) fail(ErrorKind::Mismatch, *t.args[2], "idJ on a term of type " + showType(pt));
        check(ctx, *t.args[0], jFamilyType(id->type, id->lhs));
        Value family = evalIn(ctx, *t.args[0]);
        check(ctx, *t.args[1], app(app(family, id->lhs), reflValue(id->lhs)));
        return app(app(family, id->rhs), evalIn(ctx, *t.args[2]));
    }
    case K::Comp: {
        CheckedProblem cp = checkProblem(ctx, t);
        return restrict(cp.pb.line, at(cp.pb.dir, 1 - cp.pb.endpoint));
    }
    case K::Fill: {
        CheckedProblem cp = checkProblem(ctx, t);
        if (supportHas(cp.pb.line->support, cp.pb.dir))
            fail(ErrorKind::Mismatch, t, "fill along a varying type line has no Path type; apply it with @");
        return make(VPath{cp.pb.line, cp.pb.cap, compose(cp.pb)});
    }
    case K::Glue: checkedGlueType(ctx, t); return U;
    case K::GlueElem: fail(ErrorKind::Mismatch, t, "cannot infer the type of glue; check it against a Glue type");
    case K::Unglue: {
        Value gt = infer(ctx, *t.args[0]);
        Value g = evalIn(ctx, *t.args[0]);
        if (auto glue = gt->as<VGlue>()) {
            auto part = [&](const Context& cc, const Conjunct& c, const SystemBranch& b) -> Value {
                GlueParts parts;
                if (!glueAt(glue->branches, c, &parts))
                    fail(ErrorKind::Mismatch, *b.parts[0], "unglue branch lies outside the face of the Glue type");
                Value arrow = arrowType(parts.type, restrict(glue->base, c));
                check(cc, *b.parts[0], arrow);
                Value f = evalIn(cc, *b.parts[0]);
                expectConv(ErrorKind::Mismatch, *b.parts[0], arrow, f, parts.fun, "unglue map");
                return f;
            };
            auto agree = [](const Conjunct&, const Value&, const Value&) { return true; };
            Face got = piecesFace(checkSystem(ctx, t, t.system, part, agree));
            if (got != systemFace(glue->branches))
                fail(ErrorKind::Mismatch, t, "unglue face " + printFace(got) + " differs from the Glue type's face " +
                                                 printFace(systemFace(glue->branches)));
            return glue->base;
        }
        // collapsed Glue type: either the base itself or the partial type on a true face
        Value result;
        auto part = [&](const Context& cc, const Conjunct& c, const SystemBranch& b) -> Value {
            Value ft = infer(cc, *b.parts[0]);
            auto pi = ft->as<VPi>();
            if (!pi) fail(ErrorKind::Mismatch, *b.parts[0], "unglue map has type " + showType(ft));
            expectType(*b.parts[0], restrict(gt, c), pi->dom);
            if (c.empty()) result = closureApply(pi->cod, g);
            return evalIn(cc, *b.parts[0]);
        };
        auto agree = [](const Conjunct&, const Value&, const Value&) { return true; };
        Face got = piecesFace(checkSystem(ctx, t, t.system, part, agree));
        if (got.isBottom()) return gt;
        if (got.isTop() && result) return result;
        fail(ErrorKind::Mismatch, *t.args[0], "unglue of a term of type " + showType(gt) + ", not a Glue type");
    }
    }
    fail(ErrorKind::Mismatch, t, "cannot infer a type");
}

}  // namespace

GlobalsPtr checkDefinition(const GlobalsPtr& globals, const Definition& def) {
    try {
        Context ctx(globals);
        Value type = checkType(ctx, *def.type);
        check(ctx, *def.body, type);
        Value value = evalIn(ctx, *def.body);
        auto out = std::make_shared<Globals>(globals ? *globals : Globals{});
        (*out)[def.name] = GlobalEntry{type, value};
        return out;
    } catch (const TypeError& e) {
        if (e.span.line == 0) throw TypeError(e.kind, def.span, def.name + ": " + e.what());
        throw;
    }
}

}  // namespace cutt
