#include "cutt/conv.hpp"

#include "cutt/eval.hpp"

#include <algorithm>
#include <functional>

namespace cutt {

namespace {

IntervalDnf dirDnf(Direction d) { return IntervalDnf::dir(d); }
Subst at(Direction d, int e) { return Subst::single(d, IntervalDnf::constant(e != 0)); }

bool convNeutral(const Value& a, const Value& b);

// the line of a composition problem instantiated at a given direction
Value lineAt(const CompProblem& pb, Direction k) { return restrict(pb.line, Subst::single(pb.dir, dirDnf(k))); }
Value tubeAt(const Value& tube, const CompProblem& pb, Direction k) {
    return restrict(tube, Subst::single(pb.dir, dirDnf(k)));
}

bool convProblem(const CompProblem& p, const CompProblem& q) {
    if (p.endpoint != q.endpoint) return false;
    Direction k = Direction::fresh();
    Value lp = lineAt(p, k), lq = lineAt(q, k);
    if (!convType(lp, lq)) return false;
    if (!conv(restrict(p.line, at(p.dir, p.endpoint)), p.cap, q.cap)) return false;
    Face fp = systemFace(p.tubes), fq = systemFace(q.tubes);
    if (fp != fq) return false;
    for (const auto& c : fp.conjuncts()) {
        // compare both systems where this conjunct holds
        Value u = systemAt(p.tubes, c), v = systemAt(q.tubes, c);
        if (!u || !v) return false;
        if (!conv(restrict(lp, c), tubeAt(u, p, k), tubeAt(v, q, k))) return false;
    }
    return true;
}

bool convNeutral(const Value& a, const Value& b) {
    if (a == b) return true;
    if (a->data.index() != b->data.index()) return false;
    if (auto x = a->as<NVar>()) return x->id == b->as<NVar>()->id;
    if (auto x = a->as<NApp>()) {
        auto y = b->as<NApp>();
        if (!convNeutral(x->head, y->head)) return false;
        auto pi = inferNeutralType(x->head)->as<VPi>();
        return pi && conv(pi->dom, x->arg, y->arg);
    }
    if (auto x = a->as<NFst>()) return convNeutral(x->head, b->as<NFst>()->head);
    if (auto x = a->as<NSnd>()) return convNeutral(x->head, b->as<NSnd>()->head);
    if (auto x = a->as<NPathApp>()) {
        auto y = b->as<NPathApp>();
        return x->at == y->at && convNeutral(x->head, y->head);
    }
    if (auto x = a->as<NNatRec>()) {
        auto y = b->as<NNatRec>();
        return convNeutral(x->head, y->head) && conv(natMotiveType(), x->motive, y->motive) &&
               conv(app(x->motive, make(VZero{})), x->zeroCase, y->zeroCase) &&
               conv(natStepType(x->motive), x->sucCase, y->sucCase);
    }
    if (auto x = a->as<NCase>()) {
        auto y = b->as<NCase>();
        if (!convNeutral(x->head, y->head)) return false;
        auto sum = inferNeutralType(x->head)->as<VSum>();
        return sum && conv(sumMotiveType(sum->left, sum->right), x->motive, y->motive) &&
               conv(inlBranchType(sum->left, x->motive), x->left, y->left) &&
               conv(inrBranchType(sum->right, x->motive), x->right, y->right);
    }
    if (auto x = a->as<NIdJ>()) {
        auto y = b->as<NIdJ>();
        if (!convNeutral(x->head, y->head)) return false;
        auto id = inferNeutralType(x->head)->as<VId>();
        return id && conv(jFamilyType(id->type, id->lhs), x->family, y->family) &&
               conv(app(app(x->family, id->lhs), reflValue(id->lhs)), x->base, y->base);
    }
    if (auto x = a->as<NComp>()) return convProblem(x->problem, b->as<NComp>()->problem);
    if (auto x = a->as<NUnglue>()) return convNeutral(x->head, b->as<NUnglue>()->head);
    return false;
}

}  // namespace

bool conv(const Value& type, const Value& a, const Value& b) {
    if (a == b) return true;
    if (auto pi = type->as<VPi>()) {
        Value x = freshVar(pi->dom, "x");
        return conv(closureApply(pi->cod, x), app(a, x), app(b, x));
    }
    if (auto sg = type->as<VSigma>()) {
        Value a1 = fst(a);
        return conv(sg->dom, a1, fst(b)) && conv(closureApply(sg->cod, a1), snd(a), snd(b));
    }
    if (auto p = type->as<VPath>()) {
        IntervalDnf k = dirDnf(Direction::fresh());
        return conv(p->type, pathApp(a, k), pathApp(b, k));
    }
    if (type->is<VU>()) return convType(a, b);
    if (type->is<VNat>()) {
        if (a->is<VZero>() && b->is<VZero>()) return true;
        if (auto x = a->as<VSuc>()) {
            auto y = b->as<VSuc>();
            return y && conv(type, x->pred, y->pred);
        }
        return a->isNeutral() && b->isNeutral() && convNeutral(a, b);
    }
    if (auto s = type->as<VSum>()) {
        if (auto x = a->as<VInl>()) {
            auto y = b->as<VInl>();
            return y && conv(s->left, x->value, y->value);
        }
        if (auto x = a->as<VInr>()) {
            auto y = b->as<VInr>();
            return y && conv(s->right, x->value, y->value);
        }
        return a->isNeutral() && b->isNeutral() && convNeutral(a, b);
    }
    if (auto id = type->as<VId>()) {
        auto x = a->as<VIdPair>();
        auto y = b->as<VIdPair>();
        if (x && y) return x->flag == y->flag && conv(make(VPath{id->type, id->lhs, id->rhs}), x->path, y->path);
        return a->isNeutral() && b->isNeutral() && convNeutral(a, b);
    }
    if (auto g = type->as<VGlue>()) {
        // glue values are determined by their base component and their restrictions to the glued face
        System funs = glueFuns(g->branches);
        if (!conv(g->base, unglue(a, funs), unglue(b, funs))) return false;
        for (Face range = systemFace(g->branches); const auto& c : range.conjuncts()) {
            GlueParts parts;
            if (!glueAt(g->branches, c, &parts)) return false;
            if (!conv(parts.type, restrict(a, c), restrict(b, c))) return false;
        }
        return true;
    }
    return a->isNeutral() && b->isNeutral() && convNeutral(a, b);
}

bool convType(const Value& a, const Value& b) {
    if (a == b) return true;
    if (a->data.index() != b->data.index()) return false;
    if (a->is<VU>() || a->is<VNat>()) return true;
    if (auto x = a->as<VPi>()) {
        auto y = b->as<VPi>();
        if (!convType(x->dom, y->dom)) return false;
        Value v = freshVar(x->dom, "x");
        return convType(closureApply(x->cod, v), closureApply(y->cod, v));
    }
    if (auto x = a->as<VSigma>()) {
        auto y = b->as<VSigma>();
        if (!convType(x->dom, y->dom)) return false;
        Value v = freshVar(x->dom, "x");
        return convType(closureApply(x->cod, v), closureApply(y->cod, v));
    }
    if (auto x = a->as<VSum>()) {
        auto y = b->as<VSum>();
        return convType(x->left, y->left) && convType(x->right, y->right);
    }
    if (auto x = a->as<VPath>()) {
        auto y = b->as<VPath>();
        return convType(x->type, y->type) && conv(x->type, x->lhs, y->lhs) && conv(x->type, x->rhs, y->rhs);
    }
    if (auto x = a->as<VId>()) {
        auto y = b->as<VId>();
        return convType(x->type, y->type) && conv(x->type, x->lhs, y->lhs) && conv(x->type, x->rhs, y->rhs);
    }
    if (auto x = a->as<VGlue>()) {
        auto y = b->as<VGlue>();
        if (!convType(x->base, y->base)) return false;
        Face f = systemFace(x->branches);
        if (f != systemFace(y->branches)) return false;
        for (const auto& c : f.conjuncts()) {
            GlueParts p, q;
            if (!glueAt(x->branches, c, &p) || !glueAt(y->branches, c, &q)) return false;
            Value base = restrict(x->base, c);
            if (!convType(p.type, q.type)) return false;
            if (!conv(arrowType(p.type, base), p.fun, q.fun)) return false;
            if (!conv(equivType(p.type, base, p.fun), p.equiv, q.equiv)) return false;
        }
        return true;
    }
    if (a->isNeutral()) return convNeutral(a, b);
    return false;
}

// ---- readback ----

std::string Names::freshVarName() { return "x" + std::to_string(nextVar++); }
std::string Names::freshDirName() { return "i" + std::to_string(nextDir++); }

IntervalTerm readbackInterval(const IntervalDnf& r, const Names& names) {
    Subst ren;
    for (const auto& c : r.clauses())
        for (auto l : c) {
            Direction d = IntervalDnf::literalDir(l);
            auto it = names.dirs.find(d.id);
            if (it != names.dirs.end())
                ren.set(d, IntervalDnf::dir(Direction::named(it->second)));
            else if (d.display() != d.name())
                ren.set(d, IntervalDnf::dir(Direction::named(d.display())));
        }
    IntervalDnf renamed = r.substitute(ren);
    // order clauses and literals by printed name so output is stable
    std::vector<std::pair<std::string, IntervalTerm>> clauses;
    for (const auto& c : renamed.clauses()) {
        std::vector<std::pair<std::string, IntervalTerm>> lits;
        for (auto l : c) {
            Direction d = IntervalDnf::literalDir(l);
            IntervalTerm t = IntervalTerm::dir(d);
            if (IntervalDnf::literalNegated(l)) t = IntervalTerm::neg(t);
            lits.emplace_back(d.name() + (IntervalDnf::literalNegated(l) ? "~" : ""), t);
        }
        std::sort(lits.begin(), lits.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        if (lits.empty()) return IntervalTerm::one();
        IntervalTerm m = lits[0].second;
        std::string key = lits[0].first;
        for (size_t k = 1; k < lits.size(); ++k) {
            m = IntervalTerm::meet(m, lits[k].second);
            key += "," + lits[k].first;
        }
        clauses.emplace_back(key, m);
    }
    if (clauses.empty()) return IntervalTerm::zero();
    std::sort(clauses.begin(), clauses.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    IntervalTerm j = clauses[0].second;
    for (size_t k = 1; k < clauses.size(); ++k) j = IntervalTerm::join(j, clauses[k].second);
    return j;
}

FaceTermPtr readbackFace(const Face& f, const Names& names) {
    if (f.isBottom()) return FaceTerm::eq(IntervalTerm::zero(), true);
    if (f.isTop()) return FaceTerm::eq(IntervalTerm::zero(), false);
    auto dirName = [&](Direction d) {
        auto it = names.dirs.find(d.id);
        return it != names.dirs.end() ? it->second : d.display();
    };
    std::vector<std::pair<std::string, FaceTermPtr>> parts;
    for (const auto& c : f.conjuncts()) {
        std::vector<std::pair<std::string, FaceTermPtr>> atoms;
        for (const auto& [d, v] : c.atoms()) {
            std::string n = dirName(d);
            atoms.emplace_back(n + (v ? "1" : "0"), FaceTerm::eq(IntervalTerm::dir(Direction::named(n)), v));
        }
        std::sort(atoms.begin(), atoms.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        FaceTermPtr m = atoms[0].second;
        std::string key = atoms[0].first;
        for (size_t k = 1; k < atoms.size(); ++k) {
            m = FaceTerm::conj(m, atoms[k].second);
            key += "," + atoms[k].first;
        }
        parts.emplace_back(key, m);
    }
    std::sort(parts.begin(), parts.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    FaceTermPtr out = parts[0].second;
    for (size_t k = 1; k < parts.size(); ++k) out = FaceTerm::disj(out, parts[k].second);
    return out;
}

namespace {

TermPtr node(Term::Kind k, std::vector<TermPtr> args, std::string name = "") {
    return Term::make(k, {}, std::move(name), std::move(args));
}

bool mentionsVar(const Term& t, const std::string& x) {
    if (t.kind == Term::Kind::Var && t.name == x) return true;
    for (const auto& a : t.args)
        if (mentionsVar(*a, x)) return true;
    for (const auto& b : t.system)
        for (const auto& p : b.parts)
            if (mentionsVar(*p, x)) return true;
    return false;
}

TermPtr readbackNeutral(const Value& v, Names& names);

// binder for a dependent type former, anonymous when the body ignores it
TermPtr binderForm(Term::Kind k, const Value& dom, const Closure& cod, Names& names) {
    std::string x = names.freshVarName();
    Value var = freshVar(dom, x);
    names.vars[var->as<NVar>()->id] = x;
    TermPtr d = readbackType(dom, names);
    TermPtr body = readbackType(closureApply(cod, var), names);
    return node(k, {d, body}, mentionsVar(*body, x) ? x : "_");
}

std::vector<SystemBranch> readbackSystem(const System& sys, const Names& names,
                                         const std::function<TermPtr(const Branch<Value>&)>& part) {
    std::vector<SystemBranch> out;
    for (const auto& b : sys) out.push_back({readbackFace(Face::of(b.when), names), {part(b)}});
    return out;
}

TermPtr readbackNeutral(const Value& v, Names& names) {
    using K = Term::Kind;
    if (auto x = v->as<NVar>()) {
        auto it = names.vars.find(x->id);
        return node(K::Var, {}, it != names.vars.end() ? it->second : x->hint);
    }
    if (auto x = v->as<NApp>()) {
        auto pi = inferNeutralType(x->head)->as<VPi>();
        if (!pi) throw TypeError(ErrorKind::Stuck, {}, "ill-typed application in readback");
        return node(K::App, {readbackNeutral(x->head, names), readback(pi->dom, x->arg, names)});
    }
    if (auto x = v->as<NFst>()) return node(K::Fst, {readbackNeutral(x->head, names)});
    if (auto x = v->as<NSnd>()) return node(K::Snd, {readbackNeutral(x->head, names)});
    if (auto x = v->as<NPathApp>()) return mk::papp(readbackNeutral(x->head, names), readbackInterval(x->at, names));
    if (auto x = v->as<NNatRec>()) {
        return node(K::NatRec, {readback(natMotiveType(), x->motive, names),
                                readback(app(x->motive, make(VZero{})), x->zeroCase, names),
                                readback(natStepType(x->motive), x->sucCase, names), readbackNeutral(x->head, names)});
    }
    if (auto x = v->as<NCase>()) {
        auto sum = inferNeutralType(x->head)->as<VSum>();
        if (!sum) throw TypeError(ErrorKind::Stuck, {}, "ill-typed case in readback");
        return node(K::Case, {readback(sumMotiveType(sum->left, sum->right), x->motive, names),
                              readback(inlBranchType(sum->left, x->motive), x->left, names),
                              readback(inrBranchType(sum->right, x->motive), x->right, names),
                              readbackNeutral(x->head, names)});
    }
    if (auto x = v->as<NIdJ>()) {
        auto id = inferNeutralType(x->head)->as<VId>();
        if (!id) throw TypeError(ErrorKind::Stuck, {}, "ill-typed idJ in readback");
        return node(K::IdJ, {readback(jFamilyType(id->type, id->lhs), x->family, names),
                             readback(app(app(x->family, id->lhs), reflValue(id->lhs)), x->base, names),
                             readbackNeutral(x->head, names)});
    }
    if (auto x = v->as<NComp>()) {
        const CompProblem& pb = x->problem;
        std::string name = names.freshDirName();
        Direction k = Direction::fresh();
        names.dirs[k.id] = name;
        Value line = lineAt(pb, k);
        auto t = std::make_shared<Term>();
        t->kind = K::Comp;
        t->endpoint = pb.endpoint;
        t->name = name;
        t->args = {readbackType(line, names), readback(restrict(pb.line, at(pb.dir, pb.endpoint)), pb.cap, names)};
        t->system = readbackSystem(pb.tubes, names, [&](const Branch<Value>& b) {
            return mk::plam(name, readback(restrict(line, b.when), tubeAt(b.value, pb, k), names));
        });
        return t;
    }
    if (auto x = v->as<NUnglue>()) {
        auto g = inferNeutralType(x->head)->as<VGlue>();
        if (!g) throw TypeError(ErrorKind::Stuck, {}, "ill-typed unglue in readback");
        auto t = std::make_shared<Term>();
        t->kind = K::Unglue;
        t->args = {readbackNeutral(x->head, names)};
        t->system = readbackSystem(x->funs, names, [&](const Branch<Value>& b) {
            GlueParts parts;
            glueAt(g->branches, b.when, &parts);
            return readback(arrowType(parts.type, restrict(g->base, b.when)), b.value, names);
        });
        return t;
    }
    throw TypeError(ErrorKind::Stuck, {}, std::string("cannot read back ") + headName(v));
}

}  // namespace

TermPtr readback(const Value& type, const Value& v, Names& names) {
    using K = Term::Kind;
    if (auto pi = type->as<VPi>()) {
        std::string x = names.freshVarName();
        Value var = freshVar(pi->dom, x);
        names.vars[var->as<NVar>()->id] = x;
        return node(K::Lam, {readback(closureApply(pi->cod, var), app(v, var), names)}, x);
    }
    if (auto sg = type->as<VSigma>()) {
        Value a = fst(v);
        return node(K::Pair, {readback(sg->dom, a, names), readback(closureApply(sg->cod, a), snd(v), names)});
    }
    if (auto p = type->as<VPath>()) {
        std::string name = names.freshDirName();
        Direction k = Direction::fresh();
        names.dirs[k.id] = name;
        return mk::plam(name, readback(p->type, pathApp(v, dirDnf(k)), names));
    }
    if (type->is<VU>()) return readbackType(v, names);
    if (type->is<VNat>()) {
        if (v->is<VZero>()) return node(K::Zero, {});
        if (auto x = v->as<VSuc>()) return node(K::Suc, {readback(type, x->pred, names)});
    }
    if (auto s = type->as<VSum>()) {
        if (auto x = v->as<VInl>()) return node(K::Inl, {readback(s->left, x->value, names)});
        if (auto x = v->as<VInr>()) return node(K::Inr, {readback(s->right, x->value, names)});
    }
    if (auto id = type->as<VId>()) {
        if (auto x = v->as<VIdPair>()) {
            auto t = std::make_shared<Term>();
            t->kind = K::IdPair;
            t->args = {readback(make(VPath{id->type, id->lhs, id->rhs}), x->path, names)};
            t->face = readbackFace(x->flag, names);
            return t;
        }
    }
    if (auto g = type->as<VGlue>()) {
        if (auto x = v->as<VGlueElem>()) {
            auto t = std::make_shared<Term>();
            t->kind = K::GlueElem;
            t->args = {readback(g->base, x->base, names)};
            t->system = readbackSystem(x->partial, names, [&](const Branch<Value>& b) {
                GlueParts parts;
                glueAt(g->branches, b.when, &parts);
                return readback(parts.type, b.value, names);
            });
            return t;
        }
    }
    if (v->isNeutral()) return readbackNeutral(v, names);
    throw TypeError(ErrorKind::Stuck, {}, std::string("cannot read back ") + headName(v) + " at type " + headName(type));
}

TermPtr readbackType(const Value& v, Names& names) {
    using K = Term::Kind;
    if (v->is<VU>()) return node(K::U, {});
    if (v->is<VNat>()) return node(K::Nat, {});
    if (auto x = v->as<VPi>()) return binderForm(K::Pi, x->dom, x->cod, names);
    if (auto x = v->as<VSigma>()) return binderForm(K::Sigma, x->dom, x->cod, names);
    if (auto x = v->as<VSum>()) return node(K::Sum, {readbackType(x->left, names), readbackType(x->right, names)});
    if (auto x = v->as<VPath>())
        return node(K::Path, {readbackType(x->type, names), readback(x->type, x->lhs, names),
                              readback(x->type, x->rhs, names)});
    if (auto x = v->as<VId>())
        return node(K::Id, {readbackType(x->type, names), readback(x->type, x->lhs, names),
                            readback(x->type, x->rhs, names)});
    if (auto x = v->as<VGlue>()) {
        auto t = std::make_shared<Term>();
        t->kind = K::Glue;
        t->args = {readbackType(x->base, names)};
        for (const auto& b : x->branches) {
            Value base = restrict(x->base, b.when);
            t->system.push_back({readbackFace(Face::of(b.when), names),
                                 {readbackType(b.value.type, names),
                                  readback(arrowType(b.value.type, base), b.value.fun, names),
                                  readback(equivType(b.value.type, base, b.value.fun), b.value.equiv, names)}});
        }
        return t;
    }
    if (v->isNeutral()) return readbackNeutral(v, names);
    throw TypeError(ErrorKind::NotAType, {}, std::string("expected a type, found ") + headName(v));
}

}  // namespace cutt
