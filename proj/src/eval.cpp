#include "cutt/eval.hpp"

#include <functional>
#include <ostream>

namespace cutt {

const char* errorKindName(ErrorKind k) {
    switch (k) {
    case ErrorKind::Mismatch: return "mismatch";
    case ErrorKind::Boundary: return "boundary";
    case ErrorKind::IncompatibleSystem: return "incompatibleSystem";
    case ErrorKind::Scope: return "scope";
    case ErrorKind::NotAType: return "notAType";
    case ErrorKind::Stuck: return "stuck";
    }
    return "error";
}

namespace {

thread_local std::ostream* gTrace = nullptr;
thread_local int gDepth = 0;

[[noreturn]] void stuck(const std::string& msg) { throw TypeError(ErrorKind::Stuck, {}, msg); }

IntervalDnf dirDnf(Direction d) { return IntervalDnf::dir(d); }
Subst at(Direction d, int e) { return Subst::single(d, IntervalDnf::constant(e != 0)); }

bool touches(const Support& sup, const Subst& s) {
    for (const auto& [d, r] : s.entries())
        if (supportHas(sup, d)) return true;
    return false;
}

Value synth(const TermPtr& t, std::initializer_list<std::pair<const char*, Value>> binds) {
    return evalWith(t, binds);
}

}  // namespace

Value evalWith(const TermPtr& t, std::initializer_list<std::pair<const char*, Value>> binds) {
    Env env;
    for (const auto& [n, v] : binds) env = env.bind(n, v);
    return eval(*t, env);
}

void setCompTrace(std::ostream* out) { gTrace = out; }

// ---- Env restriction ----

Env Env::restrict(const Subst& s) const {
    if (s.empty() || !touches(support(), s)) return *this;
    // rebuild the prefix of the chain that mentions the substituted directions
    std::vector<const EnvNode*> prefix;
    const EnvNode* n = head_.get();
    std::shared_ptr<const EnvNode> shared;
    for (; n; n = n->next.get()) {
        if (!touches(n->support, s)) break;
        prefix.push_back(n);
    }
    Env out(globals_);
    if (n) {
        // n is the first untouched node; find its owning pointer
        shared = prefix.empty() ? head_ : prefix.back()->next;
    }
    out.head_ = shared;
    for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
        const EnvEntry& e = (*it)->entry;
        if (e.isDir)
            out = out.bindDir(e.name, e.dir.substitute(s));
        else
            out = out.bind(e.name, e.value ? cutt::restrict(e.value, s) : nullptr,
                           e.type ? cutt::restrict(e.type, s) : nullptr);
    }
    return out;
}

// ---- evaluation ----

IntervalDnf evalInterval(const IntervalTerm& r, const Env& env) {
    switch (r.kind()) {
    case IntervalTerm::Kind::Zero: return IntervalDnf::bottom();
    case IntervalTerm::Kind::One: return IntervalDnf::top();
    case IntervalTerm::Kind::Dir: {
        const std::string& n = r.direction().name();
        const EnvEntry* e = env.find(n);
        if (!e || !e->isDir) throw TypeError(ErrorKind::Scope, {}, "unbound direction '" + n + "'");
        return e->dir;
    }
    case IntervalTerm::Kind::Neg: return evalInterval(r.lhs(), env).negate();
    case IntervalTerm::Kind::Meet: return evalInterval(r.lhs(), env).meet(evalInterval(r.rhs(), env));
    case IntervalTerm::Kind::Join: return evalInterval(r.lhs(), env).join(evalInterval(r.rhs(), env));
    }
    return {};
}

// fresh direction for a source binder, remembering its name for messages
Direction binderDir(const std::string& name) { return Direction::fresh(name == "_" ? "" : name); }

Face evalFace(const FaceTerm& f, const Env& env) {
    switch (f.kind) {
    case FaceTerm::Kind::Eq: return faceEq(evalInterval(*f.lhs, env), f.value);
    case FaceTerm::Kind::Or: return faceOr(evalFace(*f.a, env), evalFace(*f.b, env));
    case FaceTerm::Kind::And: return faceAnd(evalFace(*f.a, env), evalFace(*f.b, env));
    case FaceTerm::Kind::Forall: {
        Direction d = binderDir(f.binder);
        return forallDir(d, evalFace(*f.a, env.bindDir(f.binder, dirDnf(d))));
    }
    }
    return {};
}

namespace {

template <class F>
System evalSystem(const std::vector<SystemBranch>& branches, const Env& env, F&& part) {
    System out;
    for (const auto& b : branches) {
        Face phi = evalFace(*b.face, env);
        for (const auto& c : phi.conjuncts()) out.push_back({c, part(*b.parts[0], env.restrict(c.asSubst()))});
    }
    return out;
}

CompProblem evalProblem(const Term& t, const Env& env) {
    CompProblem pb;
    pb.endpoint = t.endpoint;
    pb.dir = binderDir(t.name);
    Env inner = env.bindDir(t.name, dirDnf(pb.dir));
    pb.line = eval(*t.args[0], inner);
    pb.tubes = evalSystem(t.system, env,
                          [&](const Term& u, const Env& e) { return pathApp(eval(u, e), dirDnf(pb.dir)); });
    pb.cap = eval(*t.args[1], env);
    return pb;
}

}  // namespace

Value eval(const Term& t, const Env& env) {
    using K = Term::Kind;
    switch (t.kind) {
    case K::Var: {
        if (const EnvEntry* e = env.find(t.name)) {
            if (e->isDir) throw TypeError(ErrorKind::Scope, t.span, "direction '" + t.name + "' used as a term");
            return e->value;
        }
        if (const GlobalEntry* g = env.global(t.name)) return g->value;
        throw TypeError(ErrorKind::Scope, t.span, "unbound variable '" + t.name + "'");
    }
    case K::U: return make(VU{});
    case K::Pi: return make(VPi{eval(*t.args[0], env), Closure{t.name, t.args[1], env}});
    case K::Sigma: return make(VSigma{eval(*t.args[0], env), Closure{t.name, t.args[1], env}});
    case K::Lam: return make(VLam{Closure{t.name, t.args[0], env}});
    case K::App: return app(eval(*t.args[0], env), eval(*t.args[1], env));
    case K::Pair: return make(VPair{eval(*t.args[0], env), eval(*t.args[1], env)});
    case K::Fst: return fst(eval(*t.args[0], env));
    case K::Snd: return snd(eval(*t.args[0], env));
    case K::Nat: return make(VNat{});
    case K::Zero: return make(VZero{});
    case K::Suc: return make(VSuc{eval(*t.args[0], env)});
    case K::NatRec:
        return natRec(eval(*t.args[0], env), eval(*t.args[1], env), eval(*t.args[2], env), eval(*t.args[3], env));
    case K::Sum: return make(VSum{eval(*t.args[0], env), eval(*t.args[1], env)});
    case K::Inl: return make(VInl{eval(*t.args[0], env)});
    case K::Inr: return make(VInr{eval(*t.args[0], env)});
    case K::Case:
        return caseSum(eval(*t.args[0], env), eval(*t.args[1], env), eval(*t.args[2], env), eval(*t.args[3], env));
    case K::Path: return make(VPath{eval(*t.args[0], env), eval(*t.args[1], env), eval(*t.args[2], env)});
    case K::PLam: {
        Direction d = binderDir(t.name);
        return make(VPLam{d, eval(*t.args[0], env.bindDir(t.name, dirDnf(d)))});
    }
    case K::PApp: return pathApp(eval(*t.args[0], env), evalInterval(*t.interval, env));
    case K::Id: return make(VId{eval(*t.args[0], env), eval(*t.args[1], env), eval(*t.args[2], env)});
    case K::IdPair: return make(VIdPair{eval(*t.args[0], env), evalFace(*t.face, env)});
    case K::Refl: return reflValue(eval(*t.args[0], env));
    case K::IdJ: return idJ(eval(*t.args[0], env), eval(*t.args[1], env), eval(*t.args[2], env));
    case K::Comp: return compose(evalProblem(t, env));
    case K::Fill: {
        CompProblem pb = evalProblem(t, env);
        Direction k = Direction::fresh();
        return make(VPLam{k, fill(pb, dirDnf(k))});
    }
    case K::Glue: {
        GlueSystem sys;
        for (const auto& b : t.system) {
            Face phi = evalFace(*b.face, env);
            for (const auto& c : phi.conjuncts()) {
                Env e = env.restrict(c.asSubst());
                sys.push_back({c, GlueParts{eval(*b.parts[0], e), eval(*b.parts[1], e), eval(*b.parts[2], e)}});
            }
        }
        return glueType(eval(*t.args[0], env), std::move(sys));
    }
    case K::GlueElem:
        return glueIntro(evalSystem(t.system, env, [](const Term& u, const Env& e) { return eval(u, e); }),
                         eval(*t.args[0], env));
    case K::Unglue:
        return unglue(eval(*t.args[0], env),
                      evalSystem(t.system, env, [](const Term& u, const Env& e) { return eval(u, e); }));
    }
    stuck("unknown term");
}

Value closureApply(const Closure& c, const Value& arg) { return eval(*c.body, c.env.bind(c.binder, arg)); }

// ---- eliminators ----

Value app(const Value& f, const Value& a) {
    if (auto l = f->as<VLam>()) return closureApply(l->body, a);
    if (auto c = f->as<VCompFn>()) {
        // composition in a Pi line: fill the argument backwards, then compose in the codomain
        CompProblem pb = c->problem;
        if (supportHas(a->support, pb.dir)) pb = restrictProblem(pb, Subst::single(pb.dir, dirDnf(Direction::fresh())));
        const VPi* pi = pb.line->as<VPi>();
        Direction i = pb.dir;
        int e = pb.endpoint;
        CompProblem back{1 - e, i, pi->dom, {}, a};
        Value along = fill(back, dirDnf(i));
        CompProblem out;
        out.endpoint = e;
        out.dir = i;
        out.line = closureApply(pi->cod, along);
        for (const auto& b : pb.tubes) out.tubes.push_back({b.when, app(b.value, restrict(along, b.when))});
        out.cap = app(pb.cap, restrict(along, at(i, e)));
        return compose(out);
    }
    if (f->isNeutral()) return make(NApp{f, a});
    stuck(std::string("application of a non-function (") + headName(f) + ")");
}

Value fst(const Value& p) {
    if (auto x = p->as<VPair>()) return x->first;
    if (p->isNeutral()) return make(NFst{p});
    stuck(std::string("first projection of a non-pair (") + headName(p) + ")");
}

Value snd(const Value& p) {
    if (auto x = p->as<VPair>()) return x->second;
    if (p->isNeutral()) return make(NSnd{p});
    stuck(std::string("second projection of a non-pair (") + headName(p) + ")");
}

Value pathApp(const Value& p, const IntervalDnf& r) {
    if (auto l = p->as<VPLam>()) return restrict(l->body, Subst::single(l->dir, r));
    if (p->isNeutral()) {
        int c = r.constantValue();
        if (c < 0) return make(NPathApp{p, r});
        Value ty = inferNeutralType(p);
        auto path = ty->as<VPath>();
        if (!path) stuck(std::string("path application on a value of type ") + headName(ty));
        return c == 0 ? path->lhs : path->rhs;
    }
    stuck(std::string("path application of a non-path (") + headName(p) + ")");
}

Value natRec(const Value& motive, const Value& z, const Value& s, const Value& n) {
    if (n->is<VZero>()) return z;
    if (auto x = n->as<VSuc>()) return app(app(s, x->pred), natRec(motive, z, s, x->pred));
    if (n->isNeutral()) return make(NNatRec{motive, z, s, n});
    stuck(std::string("natrec on ") + headName(n));
}

Value caseSum(const Value& motive, const Value& l, const Value& r, const Value& s) {
    if (auto x = s->as<VInl>()) return app(l, x->value);
    if (auto x = s->as<VInr>()) return app(r, x->value);
    if (s->isNeutral()) return make(NCase{motive, l, r, s});
    stuck(std::string("case on ") + headName(s));
}

Value reflValue(const Value& a) { return make(VIdPair{make(VPLam{Direction::fresh(), a}), Face::top()}); }

Value idJ(const Value& family, const Value& base, const Value& target) {
    if (auto t = target->as<VIdPair>()) {
        // transport the base along the path, contracting it onto its start with a connection
        Direction i = Direction::fresh();
        Direction j = Direction::fresh();
        IntervalDnf id = dirDnf(i);
        Value contracted = make(VPLam{j, pathApp(t->path, id.meet(dirDnf(j)))});
        Value q = make(VIdPair{contracted, faceOr(t->flag, faceEq(id, false))});
        CompProblem pb;
        pb.endpoint = 0;
        pb.dir = i;
        pb.line = app(app(family, pathApp(t->path, id)), q);
        for (const auto& c : t->flag.conjuncts()) pb.tubes.push_back({c, restrict(base, c)});
        pb.cap = base;
        return compose(pb);
    }
    if (target->isNeutral()) return make(NIdJ{family, base, target});
    stuck(std::string("idJ on ") + headName(target));
}

// ---- restriction ----

Value restrict(const Value& v, const Conjunct& c) { return c.empty() ? v : restrict(v, c.asSubst()); }

namespace {

Closure restrictClosure(const Closure& c, const Subst& s) { return Closure{c.binder, c.body, c.env.restrict(s)}; }

struct Restrict {
    const Value& self;
    const Subst& s;

    Value r(const Value& v) const { return restrict(v, s); }

    Value operator()(const VU&) const { return self; }
    Value operator()(const VNat&) const { return self; }
    Value operator()(const VZero&) const { return self; }
    Value operator()(const VPi& x) const { return make(VPi{r(x.dom), restrictClosure(x.cod, s)}); }
    Value operator()(const VSigma& x) const { return make(VSigma{r(x.dom), restrictClosure(x.cod, s)}); }
    Value operator()(const VLam& x) const { return make(VLam{restrictClosure(x.body, s)}); }
    Value operator()(const VPair& x) const { return make(VPair{r(x.first), r(x.second)}); }
    Value operator()(const VSuc& x) const { return make(VSuc{r(x.pred)}); }
    Value operator()(const VSum& x) const { return make(VSum{r(x.left), r(x.right)}); }
    Value operator()(const VInl& x) const { return make(VInl{r(x.value)}); }
    Value operator()(const VInr& x) const { return make(VInr{r(x.value)}); }
    Value operator()(const VPath& x) const { return make(VPath{r(x.type), r(x.lhs), r(x.rhs)}); }
    Value operator()(const VPLam& x) const {
        if (!s.involves(x.dir)) return make(VPLam{x.dir, r(x.body)});
        Direction d = Direction::fresh();
        Value body = restrict(x.body, Subst::single(x.dir, dirDnf(d)));
        return make(VPLam{d, restrict(body, s)});
    }
    Value operator()(const VId& x) const { return make(VId{r(x.type), r(x.lhs), r(x.rhs)}); }
    Value operator()(const VIdPair& x) const { return make(VIdPair{r(x.path), faceSubst(x.flag, s)}); }
    Value operator()(const VGlue& x) const { return glueType(r(x.base), restrictGlueSystem(x.branches, s)); }
    Value operator()(const VGlueElem& x) const { return glueIntro(restrictSystem(x.partial, s), r(x.base)); }
    Value operator()(const VCompFn& x) const { return compose(restrictProblem(x.problem, s)); }
    Value operator()(const NVar& x) const { return make(NVar{x.id, x.hint, x.type ? r(x.type) : nullptr}); }
    Value operator()(const NApp& x) const { return app(r(x.head), r(x.arg)); }
    Value operator()(const NFst& x) const { return fst(r(x.head)); }
    Value operator()(const NSnd& x) const { return snd(r(x.head)); }
    Value operator()(const NPathApp& x) const { return pathApp(r(x.head), x.at.substitute(s)); }
    Value operator()(const NNatRec& x) const { return natRec(r(x.motive), r(x.zeroCase), r(x.sucCase), r(x.head)); }
    Value operator()(const NCase& x) const { return caseSum(r(x.motive), r(x.left), r(x.right), r(x.head)); }
    Value operator()(const NIdJ& x) const { return idJ(r(x.family), r(x.base), r(x.head)); }
    Value operator()(const NComp& x) const { return compose(restrictProblem(x.problem, s)); }
    Value operator()(const NUnglue& x) const { return unglue(r(x.head), restrictSystem(x.funs, s)); }
};

template <class T, class F>
std::vector<Branch<T>> restrictBranches(const std::vector<Branch<T>>& sys, const Subst& s, F&& onValue,
                                        const std::function<bool(const T&)>& untouched) {
    std::vector<Branch<T>> out;
    for (const auto& b : sys) {
        bool faceTouched = false;
        for (const auto& a : b.when.atoms())
            if (s.find(a.first)) faceTouched = true;
        if (!faceTouched && untouched(b.value)) {
            out.push_back(b);
            continue;
        }
        Face img = faceSubst(Face::of(b.when), s);
        for (const auto& c : img.conjuncts()) out.push_back({c, onValue(b.value, s.then(c.asSubst()))});
    }
    return out;
}

}  // namespace

Value restrict(const Value& v, const Subst& s) {
    if (s.empty() || !touches(v->support, s)) return v;
    return std::visit(Restrict{v, s}, v->data);
}

System restrictSystem(const System& sys, const Subst& s) {
    if (s.empty()) return sys;
    return restrictBranches<Value>(
        sys, s, [](const Value& v, const Subst& t) { return restrict(v, t); },
        [&](const Value& v) { return !touches(v->support, s); });
}

GlueSystem restrictGlueSystem(const GlueSystem& sys, const Subst& s) {
    if (s.empty()) return sys;
    return restrictBranches<GlueParts>(
        sys, s,
        [](const GlueParts& p, const Subst& t) {
            return GlueParts{restrict(p.type, t), restrict(p.fun, t), restrict(p.equiv, t)};
        },
        [&](const GlueParts& p) {
            return !touches(p.type->support, s) && !touches(p.fun->support, s) && !touches(p.equiv->support, s);
        });
}

CompProblem restrictProblem(const CompProblem& in, const Subst& s) {
    CompProblem pb = in;
    if (s.involves(pb.dir)) {
        Direction d = Direction::fresh();
        Subst ren = Subst::single(pb.dir, dirDnf(d));
        pb.dir = d;
        pb.line = restrict(pb.line, ren);
        pb.tubes = restrictSystem(pb.tubes, ren);
    }
    pb.line = restrict(pb.line, s);
    pb.tubes = restrictSystem(pb.tubes, s);
    pb.cap = restrict(pb.cap, s);
    return pb;
}

Value systemAt(const System& sys, const Conjunct& c) {
    Subst s = c.asSubst();
    for (const auto& b : sys) {
        // the branch covers c when its conjunct holds under c
        bool covers = true;
        for (const auto& [d, v] : b.when.atoms()) {
            const bool* w = c.lookup(d);
            if (!w || *w != v) {
                covers = false;
                break;
            }
        }
        if (covers) return restrict(b.value, s);
    }
    return nullptr;
}

// ---- composition ----

namespace {

struct TraceScope {
    TraceScope(const char* head, const CompProblem& pb) {
        ++gDepth;
        if (gTrace) *gTrace << "comp " << head << " face=" << printFace(systemFace(pb.tubes)) << " depth=" << gDepth << "\n";
    }
    ~TraceScope() { --gDepth; }
};

template <class F>
System mapSystem(const System& sys, F&& f) {
    System out;
    out.reserve(sys.size());
    for (const auto& b : sys) out.push_back({b.when, f(b.value)});
    return out;
}

Value composeSigma(const CompProblem& pb, const VSigma& sg) {
    CompProblem first{pb.endpoint, pb.dir, sg.dom, mapSystem(pb.tubes, [](const Value& v) { return fst(v); }),
                      fst(pb.cap)};
    Value along = fill(first, dirDnf(pb.dir));
    CompProblem second{pb.endpoint, pb.dir, closureApply(sg.cod, along),
                       mapSystem(pb.tubes, [](const Value& v) { return snd(v); }), snd(pb.cap)};
    return make(VPair{compose(first), compose(second)});
}

Value composePath(const CompProblem& pb, const VPath& p) {
    Direction k = Direction::fresh();
    IntervalDnf kd = dirDnf(k);
    CompProblem inner;
    inner.endpoint = pb.endpoint;
    inner.dir = pb.dir;
    inner.line = p.type;
    inner.tubes = mapSystem(pb.tubes, [&](const Value& v) { return pathApp(v, kd); });
    inner.tubes.push_back({Conjunct::atom(k, false), p.lhs});
    inner.tubes.push_back({Conjunct::atom(k, true), p.rhs});
    inner.cap = pathApp(pb.cap, kd);
    return make(VPLam{k, compose(inner)});
}

// zero and suc pass through only when every tube has the same head as the cap
Value composeNat(const CompProblem& pb) {
    if (pb.cap->is<VZero>()) {
        for (const auto& b : pb.tubes)
            if (!b.value->is<VZero>()) return make(NComp{pb});
        return pb.cap;
    }
    auto s = pb.cap->as<VSuc>();
    if (!s) return make(NComp{pb});
    System preds;
    for (const auto& b : pb.tubes) {
        auto x = b.value->as<VSuc>();
        if (!x) return make(NComp{pb});
        preds.push_back({b.when, x->pred});
    }
    return make(VSuc{compose({pb.endpoint, pb.dir, pb.line, std::move(preds), s->pred})});
}

Value composeSum(const CompProblem& pb, const VSum& sum) {
    bool left = pb.cap->is<VInl>();
    if (!left && !pb.cap->is<VInr>()) return make(NComp{pb});
    System tubes;
    for (const auto& b : pb.tubes) {
        if (left) {
            auto x = b.value->as<VInl>();
            if (!x) return make(NComp{pb});
            tubes.push_back({b.when, x->value});
        } else {
            auto x = b.value->as<VInr>();
            if (!x) return make(NComp{pb});
            tubes.push_back({b.when, x->value});
        }
    }
    Value inner = left ? pb.cap->as<VInl>()->value : pb.cap->as<VInr>()->value;
    CompProblem sub{pb.endpoint, pb.dir, left ? sum.left : sum.right, std::move(tubes), inner};
    Value r = compose(sub);
    return left ? make(VInl{r}) : make(VInr{r});
}

Value composeId(const CompProblem& pb, const VId& id) {
    auto cap = pb.cap->as<VIdPair>();
    if (!cap) return make(NComp{pb});
    System paths;
    Face flag;
    Subst atEnd = at(pb.dir, 1 - pb.endpoint);
    for (const auto& b : pb.tubes) {
        auto x = b.value->as<VIdPair>();
        if (!x) return make(NComp{pb});
        paths.push_back({b.when, x->path});
        flag = faceOr(flag, faceAnd(Face::of(b.when), faceSubst(x->flag, atEnd)));
    }
    CompProblem sub{pb.endpoint, pb.dir, make(VPath{id.type, id.lhs, id.rhs}), std::move(paths), cap->path};
    return make(VIdPair{compose(sub), flag});
}

}  // namespace

Value compose(const CompProblem& pb) {
    for (const auto& b : pb.tubes)
        if (b.when.empty()) return restrict(b.value, at(pb.dir, 1 - pb.endpoint));
    const Value& line = pb.line;
    TraceScope trace(headName(line), pb);
    if (line->is<VNat>()) return composeNat(pb);
    if (auto x = line->as<VSigma>()) return composeSigma(pb, *x);
    if (line->is<VPi>()) return make(VCompFn{pb});
    if (auto x = line->as<VPath>()) return composePath(pb, *x);
    if (auto x = line->as<VSum>()) return composeSum(pb, *x);
    if (auto x = line->as<VId>()) return composeId(pb, *x);
    if (auto x = line->as<VGlue>()) return composeGlue(pb, x->base, x->branches);
    return make(NComp{pb});
}

Value fill(const CompProblem& pb, const IntervalDnf& r) {
    Direction k = Direction::fresh();
    IntervalDnf kd = dirDnf(k);
    Subst s = Subst::single(pb.dir, pb.endpoint == 0 ? r.meet(kd) : r.join(kd));
    CompProblem out;
    out.endpoint = pb.endpoint;
    out.dir = k;
    out.line = restrict(pb.line, s);
    out.tubes = restrictSystem(pb.tubes, s);
    for (Face range = faceEq(r, pb.endpoint == 1); const auto& c : range.conjuncts())
        out.tubes.push_back({c, restrict(pb.cap, c)});
    out.cap = pb.cap;
    return compose(out);
}

System glueFuns(const GlueSystem& sys) {
    System out;
    for (const auto& b : sys) out.push_back({b.when, b.value.fun});
    return out;
}

Value composeGlue(const CompProblem& pbIn, const Value& base, const GlueSystem& branches) {
    CompProblem pb = pbIn;
    pb.line = glueType(base, branches);
    Direction i = pb.dir;
    int e = pb.endpoint;
    Subst atE = at(i, e), atEnd = at(i, 1 - e);

    // where the glued face holds along the whole line, add the filler in the partial type
    // (each from the original tubes, so it restricts to the plain filler there)
    Face everywhere = forallDir(i, systemFace(branches));
    System adapted;
    for (const auto& c : everywhere.conjuncts()) {
        CompProblem sub = restrictProblem(pbIn, c.asSubst());
        Value filled = fill(sub, dirDnf(sub.dir));
        if (sub.dir != i) filled = restrict(filled, Subst::single(sub.dir, dirDnf(i)));
        adapted.push_back({c, filled});
    }
    pb.tubes.insert(pb.tubes.end(), adapted.begin(), adapted.end());

    System funs = glueFuns(branches);
    System baseTubes;
    for (const auto& b : pb.tubes) baseTubes.push_back({b.when, unglue(b.value, restrictSystem(funs, b.when.asSubst()))});
    Value baseCap = unglue(pb.cap, restrictSystem(funs, atE));
    Value b1 = compose({e, i, base, baseTubes, baseCap});

    GlueSystem atEndSys = restrictGlueSystem(branches, atEnd);
    Value baseEnd = restrict(base, atEnd);
    System tubesEnd, baseTubesEnd;
    for (const auto& b : pb.tubes) tubesEnd.push_back({b.when, restrict(b.value, atEnd)});
    for (const auto& b : baseTubes) baseTubesEnd.push_back({b.when, restrict(b.value, atEnd)});

    System partial, paths;
    for (const auto& g : atEndSys) {
        Value bg = restrict(b1, g.when);
        Value fiber = fiberType(g.value.type, restrict(baseEnd, g.when), g.value.fun, bg);
        Value contr = app(g.value.equiv, bg);
        Value centre = fst(contr), contraction = snd(contr);
        Direction k = Direction::fresh();
        CompProblem ext;
        ext.endpoint = 0;
        ext.dir = k;
        ext.line = fiber;
        ext.cap = centre;
        for (size_t n = 0; n < tubesEnd.size(); ++n) {
            auto m = g.when.meet(tubesEnd[n].when);
            if (!m) continue;
            Value a = restrict(tubesEnd[n].value, *m);
            Value b = restrict(baseTubesEnd[n].value, *m);
            Value elem = make(VPair{a, make(VPLam{Direction::fresh(), b})});
            ext.tubes.push_back({*m, pathApp(app(restrict(contraction, *m), elem), dirDnf(k))});
        }
        Value c1 = compose(ext);
        partial.push_back({g.when, fst(c1)});
        paths.push_back({g.when, snd(c1)});
    }

    Direction k = Direction::fresh();
    CompProblem fix;
    fix.endpoint = 1;
    fix.dir = k;
    fix.line = baseEnd;
    fix.cap = b1;
    for (const auto& p : paths) fix.tubes.push_back({p.when, pathApp(p.value, dirDnf(k))});
    for (const auto& b : baseTubesEnd) fix.tubes.push_back(b);
    return glueIntro(std::move(partial), compose(fix));
}

// ---- Glue ----

Value glueType(const Value& base, GlueSystem branches) {
    for (const auto& b : branches)
        if (b.when.empty()) return b.value.type;
    if (branches.empty()) return base;
    return make(VGlue{base, std::move(branches)});
}

Value glueIntro(System partial, const Value& base) {
    for (const auto& b : partial)
        if (b.when.empty()) return b.value;
    if (partial.empty()) return base;
    return make(VGlueElem{std::move(partial), base});
}

Value unglue(const Value& g, const System& funs) {
    for (const auto& b : funs)
        if (b.when.empty()) return app(b.value, g);
    if (funs.empty()) return g;
    if (auto x = g->as<VGlueElem>()) return x->base;
    if (g->isNeutral()) return make(NUnglue{g, funs});
    stuck(std::string("unglue of ") + headName(g));
}

Value equivType(const Value& a, const Value& b, const Value& f) {
    static const TermPtr t = parseTerm(
        "(y : B) -> (c : (x : A) * Path B (f x) y) * ((d : (x : A) * Path B (f x) y) -> "
        "Path ((x : A) * Path B (f x) y) c d)");
    return synth(t, {{"A", a}, {"B", b}, {"f", f}});
}

Value arrowType(const Value& a, const Value& b) {
    static const TermPtr t = parseTerm("A -> B");
    return synth(t, {{"A", a}, {"B", b}});
}

bool glueAt(const GlueSystem& sys, const Conjunct& c, GlueParts* out) {
    Subst s = c.asSubst();
    for (const auto& b : sys) {
        bool covers = true;
        for (const auto& [d, v] : b.when.atoms()) {
            const bool* w = c.lookup(d);
            if (!w || *w != v) {
                covers = false;
                break;
            }
        }
        if (covers) {
            *out = GlueParts{restrict(b.value.type, s), restrict(b.value.fun, s), restrict(b.value.equiv, s)};
            return true;
        }
    }
    return false;
}

Value fiberType(const Value& a, const Value& b, const Value& f, const Value& y) {
    static const TermPtr t = parseTerm("(x : A) * Path B (f x) y");
    return synth(t, {{"A", a}, {"B", b}, {"f", f}, {"y", y}});
}

Value natMotiveType() {
    static const TermPtr t = parseTerm("Nat -> U");
    return synth(t, {});
}

Value natStepType(const Value& motive) {
    static const TermPtr t = parseTerm("(n : Nat) -> P n -> P (suc n)");
    return synth(t, {{"P", motive}});
}

Value sumMotiveType(const Value& a, const Value& b) {
    static const TermPtr t = parseTerm("Sum A B -> U");
    return synth(t, {{"A", a}, {"B", b}});
}

Value inlBranchType(const Value& a, const Value& motive) {
    static const TermPtr t = parseTerm("(x : A) -> P (inl x)");
    return synth(t, {{"A", a}, {"P", motive}});
}

Value inrBranchType(const Value& b, const Value& motive) {
    static const TermPtr t = parseTerm("(x : B) -> P (inr x)");
    return synth(t, {{"B", b}, {"P", motive}});
}

Value jFamilyType(const Value& a, const Value& x) {
    static const TermPtr t = parseTerm("(y : A) -> Id A x y -> U");
    return synth(t, {{"A", a}, {"x", x}});
}

// ---- types of neutral values ----

Value inferNeutralType(const Value& n) {
    if (auto x = n->as<NVar>()) {
        if (!x->type) stuck("variable without a type");
        return x->type;
    }
    if (auto x = n->as<NApp>()) {
        Value t = inferNeutralType(x->head);
        if (auto pi = t->as<VPi>()) return closureApply(pi->cod, x->arg);
        stuck("application head is not a function");
    }
    if (auto x = n->as<NFst>()) {
        Value t = inferNeutralType(x->head);
        if (auto sg = t->as<VSigma>()) return sg->dom;
        stuck("projection head is not a pair");
    }
    if (auto x = n->as<NSnd>()) {
        Value t = inferNeutralType(x->head);
        if (auto sg = t->as<VSigma>()) return closureApply(sg->cod, fst(x->head));
        stuck("projection head is not a pair");
    }
    if (auto x = n->as<NPathApp>()) {
        Value t = inferNeutralType(x->head);
        if (auto p = t->as<VPath>()) return p->type;
        stuck("path application head is not a path");
    }
    if (auto x = n->as<NNatRec>()) return app(x->motive, x->head);
    if (auto x = n->as<NCase>()) return app(x->motive, x->head);
    if (auto x = n->as<NIdJ>()) {
        Value t = inferNeutralType(x->head);
        if (auto id = t->as<VId>()) return app(app(x->family, id->rhs), x->head);
        stuck("idJ target is not an identity proof");
    }
    if (auto x = n->as<NComp>()) return restrict(x->problem.line, at(x->problem.dir, 1 - x->problem.endpoint));
    if (auto x = n->as<NUnglue>()) {
        Value t = inferNeutralType(x->head);
        if (auto g = t->as<VGlue>()) return g->base;
        stuck("unglue of a value outside a Glue type");
    }
    stuck("not a neutral value");
}

}  // namespace cutt
