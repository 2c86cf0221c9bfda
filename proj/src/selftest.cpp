#include "cutt/selftest.hpp"

#include "cutt/conv.hpp"
#include "cutt/driver.hpp"
#include "cutt/eval.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <regex>
#include <set>
#include <sstream>

namespace cutt {

namespace {

using Clock = std::chrono::steady_clock;

struct Tally {
    SuiteResult r;
    Clock::time_point start = Clock::now();

    explicit Tally(std::string name) { r.name = std::move(name); }

    void pass() { ++r.cases; }
    void fail(const std::string& why) {
        ++r.cases;
        if (r.failures++ == 0) r.firstFailure = why;
    }
    void expect(bool ok, const std::function<std::string()>& why) { ok ? pass() : fail(why()); }

    SuiteResult finish() {
        r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
        r.passed = r.failures == 0 && r.cases > 0;
        return r;
    }
};

class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}
    int below(int n) { return std::uniform_int_distribution<int>(0, n - 1)(gen_); }
    bool chance(double p) { return std::uniform_real_distribution<double>(0, 1)(gen_) < p; }
    template <class T>
    const T& pick(const std::vector<T>& xs) {
        return xs[below(static_cast<int>(xs.size()))];
    }

private:
    std::mt19937_64 gen_;
};

uint64_t salt(uint64_t seed, uint64_t suite) { return seed * 0x9E3779B97F4A7C15ULL + suite; }

Subst at(Direction d, int e) { return Subst::single(d, IntervalDnf::constant(e != 0)); }

// ---------------------------------------------------------------- DM4 oracle

// Elements of the four-element de Morgan algebra as bit pairs: 0 = 00, 1 = 11,
// and two middle elements 01, 10, each fixed by the involution.
using DM = uint8_t;
DM dmNeg(DM v) { return static_cast<DM>(((~v & 1) << 1) | ((~v >> 1) & 1)); }

DM dmEval(const IntervalTerm& t, const std::map<uint32_t, DM>& rho) {
    switch (t.kind()) {
    case IntervalTerm::Kind::Zero: return 0;
    case IntervalTerm::Kind::One: return 3;
    case IntervalTerm::Kind::Dir: return rho.at(t.direction().id);
    case IntervalTerm::Kind::Neg: return dmNeg(dmEval(t.lhs(), rho));
    case IntervalTerm::Kind::Meet: return dmEval(t.lhs(), rho) & dmEval(t.rhs(), rho);
    case IntervalTerm::Kind::Join: return dmEval(t.lhs(), rho) | dmEval(t.rhs(), rho);
    }
    return 0;
}

std::vector<DM> dmTable(const IntervalTerm& t, const std::vector<Direction>& dirs) {
    std::vector<DM> out;
    size_t total = 1;
    for (size_t k = 0; k < dirs.size(); ++k) total *= 4;
    for (size_t code = 0; code < total; ++code) {
        std::map<uint32_t, DM> rho;
        size_t c = code;
        for (auto d : dirs) {
            rho[d.id] = static_cast<DM>(c % 4);
            c /= 4;
        }
        out.push_back(dmEval(t, rho));
    }
    return out;
}

IntervalTerm randomInterval(Rng& rng, const std::vector<Direction>& dirs, int depth) {
    if (depth <= 0 || rng.chance(0.3)) {
        if (rng.chance(0.08)) return rng.chance(0.5) ? IntervalTerm::zero() : IntervalTerm::one();
        return IntervalTerm::dir(rng.pick(dirs));
    }
    switch (rng.below(3)) {
    case 0: return IntervalTerm::neg(randomInterval(rng, dirs, depth - 1));
    case 1: return IntervalTerm::meet(randomInterval(rng, dirs, depth - 1), randomInterval(rng, dirs, depth - 1));
    default: return IntervalTerm::join(randomInterval(rng, dirs, depth - 1), randomInterval(rng, dirs, depth - 1));
    }
}

// one equivalence-preserving rewrite somewhere in t
IntervalTerm rewriteOnce(Rng& rng, const IntervalTerm& t, const std::vector<Direction>& dirs) {
    using IK = IntervalTerm::Kind;
    bool compound = t.kind() == IK::Neg || t.kind() == IK::Meet || t.kind() == IK::Join;
    if (compound && rng.chance(0.5)) {
        if (t.kind() == IK::Neg) return IntervalTerm::neg(rewriteOnce(rng, t.lhs(), dirs));
        bool left = rng.chance(0.5);
        IntervalTerm a = left ? rewriteOnce(rng, t.lhs(), dirs) : t.lhs();
        IntervalTerm b = left ? t.rhs() : rewriteOnce(rng, t.rhs(), dirs);
        return t.kind() == IK::Meet ? IntervalTerm::meet(a, b) : IntervalTerm::join(a, b);
    }
    IntervalTerm r = randomInterval(rng, dirs, 1);
    switch (t.kind()) {
    case IK::Meet:
        switch (rng.below(3)) {
        case 0: return IntervalTerm::meet(t.rhs(), t.lhs());
        case 1: return IntervalTerm::neg(IntervalTerm::join(IntervalTerm::neg(t.lhs()), IntervalTerm::neg(t.rhs())));
        default:
            if (t.rhs().kind() == IK::Join)
                return IntervalTerm::join(IntervalTerm::meet(t.lhs(), t.rhs().lhs()),
                                          IntervalTerm::meet(t.lhs(), t.rhs().rhs()));
            break;
        }
        break;
    case IK::Join:
        switch (rng.below(3)) {
        case 0: return IntervalTerm::join(t.rhs(), t.lhs());
        case 1: return IntervalTerm::neg(IntervalTerm::meet(IntervalTerm::neg(t.lhs()), IntervalTerm::neg(t.rhs())));
        default:
            if (t.rhs().kind() == IK::Meet)
                return IntervalTerm::meet(IntervalTerm::join(t.lhs(), t.rhs().lhs()),
                                          IntervalTerm::join(t.lhs(), t.rhs().rhs()));
            break;
        }
        break;
    case IK::Neg: {
        const IntervalTerm& u = t.lhs();
        if (u.kind() == IK::Neg) return u.lhs();
        if (u.kind() == IK::Meet) return IntervalTerm::join(IntervalTerm::neg(u.lhs()), IntervalTerm::neg(u.rhs()));
        if (u.kind() == IK::Join) return IntervalTerm::meet(IntervalTerm::neg(u.lhs()), IntervalTerm::neg(u.rhs()));
        if (u.kind() == IK::Zero) return IntervalTerm::one();
        if (u.kind() == IK::One) return IntervalTerm::zero();
        break;
    }
    default: break;
    }
    switch (rng.below(6)) {
    case 0: return IntervalTerm::neg(IntervalTerm::neg(t));
    case 1: return IntervalTerm::meet(t, t);
    case 2: return IntervalTerm::join(t, IntervalTerm::meet(t, r));
    case 3: return IntervalTerm::meet(t, IntervalTerm::join(r, t));
    case 4: return IntervalTerm::meet(IntervalTerm::one(), t);
    default: return IntervalTerm::join(t, IntervalTerm::zero());
    }
}

// a term that usually differs from t in the free algebra
IntervalTerm perturb(Rng& rng, const IntervalTerm& t, const std::vector<Direction>& dirs) {
    Direction d = rng.pick(dirs);
    switch (rng.below(4)) {
    case 0: return IntervalTerm::meet(t, IntervalTerm::dir(d));
    case 1: return IntervalTerm::join(t, IntervalTerm::neg(IntervalTerm::dir(d)));
    case 2: return IntervalTerm::meet(IntervalTerm::dir(d), IntervalTerm::neg(IntervalTerm::dir(d)));
    default: return IntervalTerm::neg(t);
    }
}

}  // namespace

SuiteResult dm4Suite(uint64_t seed, int pairs) {
    Tally tally("dm4-oracle");
    Rng rng(salt(seed, 1));
    std::vector<Direction> all = {Direction::named("a"), Direction::named("b"), Direction::named("c"),
                                  Direction::named("d")};
    int equalPairs = 0;
    for (int n = 0; n < pairs; ++n) {
        std::vector<Direction> dirs(all.begin(), all.begin() + 1 + rng.below(4));
        IntervalTerm a = randomInterval(rng, dirs, 1 + rng.below(4));
        IntervalTerm b = a;
        int kind = rng.below(10);
        if (kind < 5) {
            for (int k = 1 + rng.below(4); k > 0; --k) b = rewriteOnce(rng, b, dirs);
        } else if (kind < 8) {
            b = randomInterval(rng, dirs, 1 + rng.below(4));
        } else {
            b = perturb(rng, a, dirs);
        }
        bool oracle = dmTable(a, dirs) == dmTable(b, dirs);
        equalPairs += oracle;
        bool got = iequal(a, b);
        tally.expect(got == oracle, [&] {
            return "iequal(" + printInterval(a) + ", " + printInterval(b) + ") = " + (got ? "true" : "false") +
                   ", oracle says " + (oracle ? "equal" : "different");
        });
        // the canonical form denotes the same element and is a fixed point
        IntervalDnf na = normalize(a);
        IntervalTerm back = na.toTerm();
        tally.expect(dmTable(back, dirs) == dmTable(a, dirs) && normalize(back) == na,
                     [&] { return "normal form of " + printInterval(a) + " is not faithful or not idempotent"; });
        // substitution is a homomorphism and commutes with normalization
        std::map<Direction, IntervalTerm> sigma;
        for (auto d : dirs) sigma.emplace(d, randomInterval(rng, dirs, 2));
        IntervalTerm sa = isubst(a, sigma);
        std::vector<DM> direct, composed;
        for (const auto& row : dmTable(sa, dirs)) direct.push_back(row);
        size_t total = direct.size();
        for (size_t code = 0; code < total; ++code) {
            std::map<uint32_t, DM> rho, image;
            size_t c = code;
            for (auto d : dirs) {
                rho[d.id] = static_cast<DM>(c % 4);
                c /= 4;
            }
            for (auto d : dirs) image[d.id] = dmEval(sigma.at(d), rho);
            composed.push_back(dmEval(a, image));
        }
        tally.expect(direct == composed && normalize(isubst(back, sigma)) == normalize(sa),
                     [&] { return "substitution into " + printInterval(a) + " is not a homomorphism"; });
    }
    tally.r.detail = std::to_string(pairs) + " pairs, " + std::to_string(equalPairs) + " equal";
    return tally.finish();
}

// ---------------------------------------------------------------- face oracle

namespace {

// 3-state assignments over up to three directions: each is 0, 1 or neither
struct FaceOracle {
    std::vector<Direction> dirs;

    uint32_t sem(const Face& f) const {
        uint32_t mask = 0;
        for (int code = 0; code < 27; ++code) {
            int state[3] = {code % 3, (code / 3) % 3, code / 9};
            for (const auto& c : f.conjuncts()) {
                bool holds = true;
                for (const auto& [d, v] : c.atoms()) {
                    size_t k = 0;
                    while (k < dirs.size() && dirs[k] != d) ++k;
                    if (k == dirs.size() || state[k] != (v ? 1 : 0)) {
                        holds = false;
                        break;
                    }
                }
                if (holds) {
                    mask |= 1u << code;
                    break;
                }
            }
        }
        return mask;
    }
};

// every face built from at most maxAtoms atoms by binary joins and meets
std::vector<std::vector<Face>> faceLevels(const std::vector<Direction>& dirs, int maxAtoms,
                                          const std::function<void(const Face&, const Face&, const Face&, bool)>& seen) {
    std::vector<std::vector<Face>> levels(maxAtoms + 1);
    std::set<Face> known;
    for (auto d : dirs)
        for (bool v : {false, true}) {
            Face f = Face::of(Conjunct::atom(d, v));
            if (known.insert(f).second) levels[1].push_back(f);
        }
    for (int n = 2; n <= maxAtoms; ++n)
        for (int k = 1; k < n; ++k)
            for (const auto& a : levels[k])
                for (const auto& b : levels[n - k])
                    for (bool isOr : {true, false}) {
                        Face f = isOr ? faceOr(a, b) : faceAnd(a, b);
                        seen(a, b, f, isOr);
                        if (known.insert(f).second) levels[n].push_back(f);
                    }
    return levels;
}

}  // namespace

SuiteResult faceSuite() {
    Tally tally("face-oracle");
    Direction x = Direction::named("x"), y = Direction::named("y"), z = Direction::named("z");
    FaceOracle oracle{{x, y, z}};

    tally.expect(oracle.sem(Face::top()) == (1u << 27) - 1 && oracle.sem(Face::bottom()) == 0,
                 [] { return "constants have the wrong semantics"; });
    tally.expect(faceEq(IntervalDnf::bottom(), false).isTop() && faceEq(IntervalDnf::bottom(), true).isBottom(),
                 [] { return "(0 = 0) or (0 = 1) is not constant"; });

    std::map<Face, uint32_t> semOf;
    auto record = [&](const Face& a, const Face& b, const Face& f, bool isOr) {
        uint32_t sa = oracle.sem(a), sb = oracle.sem(b), sf = oracle.sem(f);
        uint32_t want = isOr ? (sa | sb) : (sa & sb);
        tally.expect(sf == want, [&] {
            return std::string(isOr ? "join" : "meet") + " of " + printFace(a) + " and " + printFace(b) +
                   " gave " + printFace(f);
        });
        semOf.emplace(f, sf);
    };
    auto levels = faceLevels({x, y, z}, 6, record);
    std::vector<Face> all;
    for (const auto& lvl : levels)
        for (const auto& f : lvl) {
            all.push_back(f);
            semOf.emplace(f, oracle.sem(f));
        }

    // canonical forms are unique: equal semantics means equal faces
    std::map<uint32_t, Face> bySem;
    for (const auto& [f, s] : semOf) {
        auto [it, fresh] = bySem.emplace(s, f);
        tally.expect(fresh || it->second == f,
                     [&] { return "faces " + printFace(it->second) + " and " + printFace(f) + " agree everywhere"; });
    }

    // forall x is right adjoint to weakening: psi <= forall x. phi  iff  psi <= phi
    std::vector<Face> small{Face::top(), Face::bottom()};
    {
        std::set<Face> closed(small.begin(), small.end());
        for (auto d : {y, z})
            for (bool v : {false, true}) closed.insert(Face::of(Conjunct::atom(d, v)));
        for (bool grew = true; grew;) {
            grew = false;
            std::vector<Face> cur(closed.begin(), closed.end());
            for (const auto& a : cur)
                for (const auto& b : cur)
                    for (const Face& f : {faceOr(a, b), faceAnd(a, b)}) grew |= closed.insert(f).second;
        }
        small.assign(closed.begin(), closed.end());
    }
    all.push_back(Face::top());
    all.push_back(Face::bottom());
    for (const auto& phi : all) {
        Face q = forallDir(x, phi);
        uint32_t sq = oracle.sem(q), sphi = oracle.sem(phi);
        tally.expect(!q.mentions(x), [&] { return "forall x. " + printFace(phi) + " still mentions x"; });
        for (const auto& psi : small) {
            uint32_t spsi = oracle.sem(psi);
            bool lhs = (spsi & ~sq) == 0, rhs = (spsi & ~sphi) == 0;
            bool ok = lhs == rhs && faceLeq(psi, q) == lhs && faceLeq(psi, phi) == rhs;
            if (ok)
                tally.pass();
            else
                tally.fail("adjunction fails for psi = " + printFace(psi) + ", phi = " + printFace(phi));
        }
    }
    tally.r.detail = std::to_string(all.size()) + " faces over 3 directions, " + std::to_string(small.size()) +
                     " over 2";
    return tally.finish();
}

// ---------------------------------------------------------------- random problems

namespace {

// Source fragments for a type and an element of it.
struct Sample {
    std::string type;
    std::string elem;
};

std::string substWord(const std::string& text, const std::string& word, const std::string& by) {
    return std::regex_replace(text, std::regex("\\b" + word + "\\b"), by);
}

// Generates well-typed pairs in the context of the bench (see Bench::kContext).
class Gen {
public:
    explicit Gen(Rng& rng) : rng_(rng) {}

    std::string fresh(const char* base) { return base + std::to_string(counter_++); }

    std::string interval(const std::vector<std::string>& dirs, int depth) {
        if (dirs.empty() || rng_.chance(0.05)) return rng_.chance(0.5) ? "0" : "1";
        if (depth <= 0 || rng_.chance(0.45)) return rng_.pick(dirs);
        switch (rng_.below(3)) {
        case 0: return "~" + interval(dirs, depth - 1);
        case 1: return "(" + interval(dirs, depth - 1) + " /\\ " + interval(dirs, depth - 1) + ")";
        default: return "(" + interval(dirs, depth - 1) + " \\/ " + interval(dirs, depth - 1) + ")";
        }
    }

    std::string face(const std::vector<std::string>& dirs) {
        if (dirs.empty() || rng_.chance(0.05)) return rng_.chance(0.5) ? "(0 = 0)" : "(0 = 1)";
        auto atom = [&] { return "(" + rng_.pick(dirs) + " = " + (rng_.chance(0.5) ? "1" : "0") + ")"; };
        switch (rng_.below(4)) {
        case 0:
        case 1: return atom();
        case 2: return atom() + " /\\ " + atom();
        default: return atom() + " \\/ " + atom() + (rng_.chance(0.3) ? " /\\ " + atom() : "");
        }
    }

    std::string natElem(const std::vector<std::string>& dirs) {
        static const std::vector<std::string> xs = {"zero", "suc zero", "n", "fn n",
                                                    "natrec (\\_. Nat) zero (\\_ m. suc m) n", "suc (fn (suc n))"};
        switch (rng_.below(4)) {
        case 0: return "(r @ " + interval(dirs, 2) + ")";
        case 1: return "suc (r @ " + interval(dirs, 1) + ")";
        default: return rng_.pick(xs);
        }
    }

    std::string aElem(const std::vector<std::string>& dirs, int depth) {
        switch (rng_.below(depth > 0 ? 6 : 5)) {
        case 0: return rng_.chance(0.5) ? "a" : "c";
        case 1: return "p @ " + interval(dirs, 2);
        case 2: return "q @ " + interval(dirs, 2);
        case 3: return "(fill 0 <u> A [] b) @ " + interval(dirs, 1);
        case 4: return "(p @ " + interval(dirs, 1) + ")";
        default: return "h (" + aElem(dirs, depth - 1) + ")";
        }
    }

    // typeDirs may occur in the type; elemDirs (a superset) in the element
    Sample sample(int depth, const std::vector<std::string>& typeDirs, const std::vector<std::string>& elemDirs) {
        bool pathOk = typeDirs.size() == elemDirs.size();
        int choice = depth <= 0 ? rng_.below(2) : rng_.below(pathOk ? 9 : 7);
        switch (choice) {
        case 0: return {"Nat", natElem(elemDirs)};
        case 1: return {"A", aElem(elemDirs, 2)};
        case 2: {
            Sample l = sample(depth - 1, typeDirs, elemDirs), r = sample(depth - 1, typeDirs, elemDirs);
            return {"(" + l.type + ") * (" + r.type + ")", "(" + l.elem + ", " + r.elem + ")"};
        }
        case 3: {
            std::string w = fresh("w"), k = fresh("k"), r = interval(elemDirs, 2);
            return {"(" + w + " : A) * Path A a " + w, "(p @ " + r + ", <" + k + "> p @ (" + r + " /\\ " + k + "))"};
        }
        case 4: {
            Sample s = sample(depth - 1, typeDirs, elemDirs);
            std::string v = fresh("v");
            switch (rng_.below(3)) {
            case 0: return {"Nat -> " + paren(s.type), "\\" + v + ". " + s.elem};
            case 1: return {"A -> " + paren(s.type), "\\" + v + ". " + s.elem};
            default: return {"(" + v + " : A) -> Path A (h " + v + ") (h " + v + ")", "\\" + v + ". <" + fresh("k") + "> h " + v};
            }
        }
        case 5: {
            Sample l = sample(depth - 1, typeDirs, elemDirs), r = sample(depth - 1, typeDirs, elemDirs);
            bool left = rng_.chance(0.5);
            return {"Sum (" + l.type + ") (" + r.type + ")", left ? "inl (" + l.elem + ")" : "inr (" + r.elem + ")"};
        }
        case 6: {
            std::string v = fresh("v");
            return {"A -> A", rng_.chance(0.5) ? "\\" + v + ". " + v : "\\" + v + ". h " + v};
        }
        default: {
            std::string k = fresh("k");
            std::vector<std::string> inner = elemDirs;
            inner.push_back(k);
            Sample s = sample(depth - 1, typeDirs, inner);
            return {"Path (" + s.type + ") (" + substWord(s.elem, k, "0") + ") (" + substWord(s.elem, k, "1") + ")",
                    "<" + k + "> " + s.elem};
        }
        }
    }

private:
    static std::string paren(const std::string& s) { return "(" + s + ")"; }
    Rng& rng_;
    int counter_ = 0;
};

// A context of neutral variables with named directions.
struct Bench {
    static constexpr const char* kContext[][2] = {
        {"A", "U"},          {"a", "A"},          {"b", "A"},         {"c", "A"},
        {"p", "Path A a b"}, {"q", "Path A b c"}, {"h", "A -> A"},    {"n", "Nat"},
        {"fn", "Nat -> Nat"}, {"r", "Path Nat n (fn n)"},
    };

    Context ctx;
    std::map<std::string, Direction> dirs;

    Bench(const GlobalsPtr& globals, const std::vector<std::string>& dirNames) : ctx(globals) {
        for (const auto& [name, type] : kContext) ctx = ctx.bindVar(name, checkType(ctx, *parseTerm(type)));
        for (const auto& d : dirNames) {
            Direction fresh;
            ctx = ctx.bindDir(d, &fresh);
            dirs[d] = fresh;
        }
    }

    Face face(const std::string& text) const { return evalFace(*parseFace(text), ctx.env); }
};

// a checked random problem whose tubes and cap are restrictions of one element
struct Problem {
    CompProblem pb;
    Value element;  // total element along the line, in pb.dir
    std::string text;
};

std::vector<std::string> someAmbient(Rng& rng, int most) {
    std::vector<std::string> pool = {"x", "y", "z"}, out;
    int count = rng.below(most + 1);
    while (static_cast<int>(out.size()) < count) {
        std::string d = rng.pick(pool);
        if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
    }
    return out;
}

Problem makeProblem(const Bench& bench, Gen& gen, Rng& rng, const std::vector<std::string>& ambient) {
    std::vector<std::string> dirs = ambient;
    dirs.push_back("i");
    Sample s = gen.sample(1 + rng.below(3), dirs, dirs);
    Problem out;
    CompProblem& pb = out.pb;
    pb.endpoint = rng.below(2);
    Context lineCtx = bench.ctx.bindDir("i", &pb.dir);
    pb.line = checkType(lineCtx, *parseTerm(s.type));
    TermPtr elem = parseTerm(s.elem);
    check(lineCtx, *elem, pb.line);
    out.element = eval(*elem, lineCtx.env);
    std::string system;
    int tubes = rng.below(4);
    for (int k = 0; k < tubes; ++k) {
        std::string f = gen.face(ambient);
        for (Face range = bench.face(f); const auto& c : range.conjuncts())
            pb.tubes.push_back({c, restrict(out.element, c)});
        system += (k ? ", " : "") + f + " -> <i> " + s.elem;
    }
    pb.cap = restrict(out.element, at(pb.dir, pb.endpoint));
    out.text = "comp " + std::to_string(pb.endpoint) + " <i> (" + s.type + ") [" + system + "] (" +
               substWord(s.elem, "i", std::to_string(pb.endpoint)) + ")";
    return out;
}

template <class F>
void guardedCase(Tally& tally, const std::string& what, F&& body) {
    try {
        body();
    } catch (const std::exception& e) {
        tally.fail(what + ": raised " + e.what());
    }
}

}  // namespace

SuiteResult compositionSuite(uint64_t seed, int problems) {
    Tally tally("composition-contracts");
    Rng rng(salt(seed, 3));
    Gen gen(rng);
    Bench bench(std::make_shared<const Globals>(), {"x", "y", "z"});
    for (int n = 0; n < problems; ++n) {
        std::vector<std::string> ambient = someAmbient(rng, 2);
        Problem P;
        try {
            P = makeProblem(bench, gen, rng, ambient);
        } catch (const std::exception& e) {
            tally.fail(std::string("generated problem does not check: ") + e.what());
            continue;
        }
        guardedCase(tally, P.text, [&] {
            const CompProblem& pb = P.pb;
            Direction i = pb.dir;
            int e = pb.endpoint;
            Value endType = restrict(pb.line, at(i, 1 - e));
            Value v = compose(pb);
            // extension: the result restricts to every tube at the far end
            bool ok = true;
            for (const auto& t : pb.tubes)
                ok = ok && conv(restrict(endType, t.when), restrict(v, t.when), restrict(t.value, at(i, 1 - e)));
            tally.expect(ok, [&] { return "extension contract fails for " + P.text; });
            // fill at e is the cap, at the far end it is the composition, and it extends the tubes throughout
            Value atStart = fill(pb, IntervalDnf::constant(e != 0));
            tally.expect(conv(restrict(pb.line, at(i, e)), atStart, pb.cap),
                         [&] { return "fill at e differs from the cap for " + P.text; });
            Value atEnd = fill(pb, IntervalDnf::constant(e == 0));
            tally.expect(conv(endType, atEnd, v), [&] { return "fill at the far end differs from comp for " + P.text; });
            Direction j = Direction::fresh();
            Value mid = fill(pb, IntervalDnf::dir(j));
            Subst toJ = Subst::single(i, IntervalDnf::dir(j));
            Value lineJ = restrict(pb.line, toJ);
            bool extends = true;
            for (const auto& t : pb.tubes)
                extends = extends && conv(restrict(lineJ, t.when), restrict(mid, t.when), restrict(t.value, toJ));
            tally.expect(extends, [&] { return "fill does not extend the tubes for " + P.text; });
            // the same problem written in the surface language checks and computes the same value
            TermPtr surface = parseTerm(P.text);
            Value ty = infer(bench.ctx, *surface);
            tally.expect(convType(ty, endType) && conv(endType, eval(*surface, bench.ctx.env), v),
                         [&] { return "surface composition disagrees for " + P.text; });
        });
    }
    return tally.finish();
}

SuiteResult uniformitySuite(uint64_t seed, int problems) {
    Tally tally("uniformity");
    Rng rng(salt(seed, 4));
    Gen gen(rng);
    Bench bench(std::make_shared<const Globals>(), {"x", "y", "z", "w"});
    for (int n = 0; n < problems; ++n) {
        std::vector<std::string> ambient = someAmbient(rng, 2);
        Problem P;
        try {
            P = makeProblem(bench, gen, rng, ambient);
        } catch (const std::exception& e) {
            tally.fail(std::string("generated problem does not check: ") + e.what());
            continue;
        }
        // a random substitution of the ambient directions
        Subst sigma;
        std::string shown;
        for (const auto& d : ambient) {
            std::string img = gen.interval({"x", "y", "z", "w"}, 2);
            shown += d + " := " + img + "; ";
            sigma.set(bench.dirs.at(d), evalInterval(parseInterval(img), bench.ctx.env));
        }
        guardedCase(tally, P.text, [&] {
            const CompProblem& pb = P.pb;
            Value endType = restrict(restrict(pb.line, at(pb.dir, 1 - pb.endpoint)), sigma);
            Value lhs = restrict(compose(pb), sigma);
            Value rhs = compose(restrictProblem(pb, sigma));
            tally.expect(conv(endType, lhs, rhs), [&] { return "not uniform under " + shown + "for " + P.text; });
        });
    }
    return tally.finish();
}

// ---------------------------------------------------------------- J, Glue, univalence

namespace {

// helpers for the Glue suites, checked on top of the prelude
const char* kGlueBench = R"(
def idFun : (X : U) -> X -> X = \X v. v
def swapFun : (X Y : U) -> X * Y -> Y * X = \X Y v. (v.2, v.1)
def swapIsEquiv : (X Y : U) -> isEquiv (X * Y) (Y * X) (swapFun X Y)
  = \X Y. gradLemma (X * Y) (Y * X) (swapFun X Y) (swapFun Y X) (\w. <_> w) (\w. <_> w)
)";

const GlobalsPtr& glueGlobals() {
    static GlobalsPtr g = loadSource(kGlueBench, preludeGlobals()).globals;
    return g;
}

// a Glue branch: partial type, map into the base, its equivalence proof, and an element
struct Glued {
    std::string partial, base, fun, equiv, elem;
};

Glued randomGlued(Gen& gen, Rng& rng, const std::vector<std::string>& dirs) {
    if (rng.chance(0.5)) {
        Sample s = gen.sample(1 + rng.below(2), dirs, dirs);
        return {s.type, s.type, "idFun (" + s.type + ")", "idIsEquiv (" + s.type + ")", s.elem};
    }
    Sample l = gen.sample(rng.below(2), dirs, dirs), r = gen.sample(rng.below(2), dirs, dirs);
    return {"(" + l.type + ") * (" + r.type + ")", "(" + r.type + ") * (" + l.type + ")",
            "swapFun (" + l.type + ") (" + r.type + ")", "swapIsEquiv (" + l.type + ") (" + r.type + ")",
            "(" + l.elem + ", " + r.elem + ")"};
}

}  // namespace

SuiteResult idJSuite(uint64_t seed, int instances) {
    Tally tally("idJ-refl");
    Rng rng(salt(seed, 5));
    Gen gen(rng);
    Bench bench(std::make_shared<const Globals>(), {"x"});
    for (int n = 0; n < instances; ++n) {
        Sample s = gen.sample(1 + rng.below(3), {"x"}, {"x"});
        Sample other = gen.sample(1 + rng.below(2), {"x"}, {"x"});
        std::string family, base;
        switch (rng.below(4)) {
        case 0: family = "\\u v. " + other.type; base = other.elem; break;
        case 1: family = "\\u v. Path (" + s.type + ") (" + s.elem + ") u"; base = "<_> " + s.elem; break;
        case 2: family = "\\u v. Id (" + s.type + ") (" + s.elem + ") u"; base = "refl (" + s.elem + ")"; break;
        default:
            family = "\\u v. (" + other.type + ") * Path (" + s.type + ") (" + s.elem + ") u";
            base = "(" + other.elem + ", <_> " + s.elem + ")";
            break;
        }
        std::string text = "idJ (" + family + ") (" + base + ") (refl (" + s.elem + "))";
        guardedCase(tally, text, [&] {
            const Context& ctx = bench.ctx;
            Value T = checkType(ctx, *parseTerm(s.type));
            check(ctx, *parseTerm(s.elem), T);
            Value a = eval(*parseTerm(s.elem), ctx.env);
            check(ctx, *parseTerm(family), jFamilyType(T, a));
            Value B = eval(*parseTerm(family), ctx.env);
            Value baseType = app(app(B, a), reflValue(a));
            check(ctx, *parseTerm(base), baseType);
            Value b = eval(*parseTerm(base), ctx.env);
            Value j = eval(*parseTerm(text), ctx.env);
            tally.expect(conv(baseType, j, b), [&] { return "idJ on refl does not reduce: " + text; });
        });
    }
    return tally.finish();
}

SuiteResult glueSuite(uint64_t seed, int instances) {
    Tally tally("strict-glue");
    Rng rng(salt(seed, 6));
    Gen gen(rng);
    Bench bench(glueGlobals(), {"x", "y"});
    for (int n = 0; n < instances; ++n) {
        Glued g = randomGlued(gen, rng, {"x", "y"});
        std::string phi = gen.face({"x", "y"});
        std::string glueType = "Glue (" + g.base + ") [" + phi + " -> (" + g.partial + ", " + g.fun + ", " + g.equiv + ")]";
        std::string glued = "glue [" + phi + " -> " + g.elem + "] (" + g.fun + " (" + g.elem + "))";
        std::string unglued = "unglue [" + phi + " -> " + g.fun + "] g";
        guardedCase(tally, glueType, [&] {
            const Context& ctx = bench.ctx;
            Value G = checkType(ctx, *parseTerm(glueType));
            Value A = checkType(ctx, *parseTerm(g.partial));
            Value B = checkType(ctx, *parseTerm(g.base));
            Face face = bench.face(phi);
            // the Glue type is the partial type wherever its face holds, and the base where it fails
            bool strict = true;
            for (const auto& c : face.conjuncts()) strict = strict && convType(restrict(G, c), restrict(A, c));
            if (face.isBottom()) strict = strict && convType(G, B);
            tally.expect(strict, [&] { return "Glue does not restrict strictly: " + glueType + " on " + phi; });

            check(ctx, *parseTerm(glued), G);
            Value gv = eval(*parseTerm(glued), ctx.env);
            Value a = eval(*parseTerm(g.elem), ctx.env);
            bool restricts = true;
            for (const auto& c : face.conjuncts())
                restricts = restricts && conv(restrict(A, c), restrict(gv, c), restrict(a, c));
            tally.expect(restricts, [&] { return "glue does not restrict to its partial element: " + glued; });

            // glue is not inferable, so unglue a variable of the Glue type bound to it
            Value gvar;
            Context withG = ctx.bindVar("g", G, &gvar);
            TermPtr ungl = parseTerm(unglued);
            Value ty = infer(withG, *ungl);
            Value fa = eval(*parseTerm(g.fun + " (" + g.elem + ")"), ctx.env);
            tally.expect(convType(ty, B) && conv(B, eval(*ungl, ctx.env.bind("g", gv, G)), fa),
                         [&] { return "unglue of glue is not the base component: " + unglued; });
        });
    }
    return tally.finish();
}

SuiteResult adaptationSuite(uint64_t seed, int instances) {
    Tally tally("glue-adaptation");
    Rng rng(salt(seed, 7));
    Gen gen(rng);
    Bench bench(glueGlobals(), {"x", "y"});
    for (int n = 0; n < instances; ++n) {
        std::vector<std::string> dirs = {"x", "y", "i"};
        Glued g = randomGlued(gen, rng, dirs);
        std::string phi;
        do {
            phi = gen.face({"x", "y"});
        } while (bench.face(phi).isBottom());
        std::string glueType = "Glue (" + g.base + ") [" + phi + " -> (" + g.partial + ", " + g.fun + ", " + g.equiv + ")]";
        std::string glued = "glue [" + phi + " -> " + g.elem + "] (" + g.fun + " (" + g.elem + "))";
        guardedCase(tally, glueType, [&] {
            CompProblem pb, partial;
            pb.endpoint = partial.endpoint = rng.below(2);
            Context lineCtx = bench.ctx.bindDir("i", &pb.dir);
            partial.dir = pb.dir;
            pb.line = checkType(lineCtx, *parseTerm(glueType));
            partial.line = checkType(lineCtx, *parseTerm(g.partial));
            check(lineCtx, *parseTerm(glued), pb.line);
            Value element = eval(*parseTerm(glued), lineCtx.env);
            Value a = eval(*parseTerm(g.elem), lineCtx.env);
            int tubes = rng.below(3);
            for (int k = 0; k < tubes; ++k)
                for (Face range = bench.face(gen.face({"x", "y"})); const auto& c : range.conjuncts()) {
                    pb.tubes.push_back({c, restrict(element, c)});
                    partial.tubes.push_back({c, restrict(a, c)});
                }
            Subst start = at(pb.dir, pb.endpoint), end = at(pb.dir, 1 - pb.endpoint);
            pb.cap = restrict(element, start);
            partial.cap = restrict(a, start);

            Value v = compose(pb);
            Value endType = restrict(pb.line, end);
            bool ok = true;
            for (const auto& t : pb.tubes)
                ok = ok && conv(restrict(endType, t.when), restrict(v, t.when), restrict(t.value, end));
            tally.expect(ok, [&] { return "extension contract fails in Glue: " + glueType; });
            // where the face holds along the whole line, the Glue composition is the one in the partial type
            // phi does not mention i, so it holds along the whole line
            Face everywhere = bench.face(phi);
            for (const auto& c : everywhere.conjuncts()) {
                Value want = compose(restrictProblem(partial, c.asSubst()));
                Value ty = restrict(restrict(partial.line, end), c);
                Value got = restrict(v, c);
                tally.expect(conv(ty, got, want), [&] {
                    return "Glue composition does not adapt on " + phi + ": " + glueType + "\n  got  " +
                           showValue(ty, got) + "\n  want " + showValue(ty, want);
                });
            }
        });
    }
    return tally.finish();
}

SuiteResult univalenceSuite() {
    Tally tally("univalence");
    guardedCase(tally, "prelude", [&] {
        // check the prelude from scratch so its cost is measured here
        Program prelude = loadSource(preludeSource(), nullptr);
        tally.pass();
        tally.expect(prelude.globals->count("uaCoherence") == 1, [] { return "coherence path missing"; });
        std::string zero = normalForm(prelude.globals, "coerceIdZero");
        tally.expect(zero == "zero", [&] { return "coerce zero along the identity glue gives " + zero; });
        GlobalsPtr g = loadSource(kGlueBench, prelude.globals).globals;
        struct Case {
            const char* expr;
            const char* want;
        } cases[] = {
            {"coerce Nat Nat (equivToPath Nat Nat (idEquiv Nat)) (suc (suc zero))", "suc (suc zero)"},
            {"coerce (Nat * Nat) (Nat * Nat) (equivToPath (Nat * Nat) (Nat * Nat) (swapFun Nat Nat, swapIsEquiv Nat Nat)) "
             "(zero, suc zero)",
             "(suc zero, zero)"},
            {"(pathToEquiv Nat Nat (equivToPath Nat Nat (idEquiv Nat))).1 (suc zero)", "suc zero"},
            {"uaCoherence Nat Nat (idEquiv Nat) @ 1", "coerce Nat Nat (equivToPath Nat Nat (idEquiv Nat))"},
            {"uaCoherence Nat Nat (idEquiv Nat) @ 0", "(idEquiv Nat).1"},
        };
        for (const auto& c : cases) {
            Evaluated r = evaluateExpression(g, c.expr), want = evaluateExpression(g, c.want);
            tally.expect(r.term == want.term && r.type == want.type,
                         [&] { return std::string(c.expr) + " normalizes to " + r.term; });
        }
    });
    return tally.finish();
}

std::string formatResult(const SuiteResult& r) {
    std::ostringstream out;
    out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << (r.cases - r.failures) << "/" << r.cases << " in ";
    out.precision(2);
    out << std::fixed << r.seconds << "s";
    if (!r.detail.empty()) out << " (" << r.detail << ")";
    if (!r.firstFailure.empty()) out << "\n  first failure: " << r.firstFailure;
    return out.str();
}

std::vector<SuiteResult> runSelftest(uint64_t seed, std::ostream& out) {
    std::vector<std::function<SuiteResult()>> suites = {
        [&] { return dm4Suite(seed); },          [] { return faceSuite(); },
        [&] { return compositionSuite(seed); },  [&] { return uniformitySuite(seed); },
        [&] { return idJSuite(seed); },          [&] { return glueSuite(seed); },
        [&] { return adaptationSuite(seed); },   [] { return univalenceSuite(); },
    };
    std::vector<SuiteResult> results;
    for (auto& s : suites) {
        results.push_back(s());
        out << formatResult(results.back()) << std::endl;
    }
    return results;
}

}  // namespace cutt
