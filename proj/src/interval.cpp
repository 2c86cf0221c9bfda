#include "cutt/interval.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <mutex>
#include <unordered_map>

namespace cutt {

namespace {

struct DirectionTable {
    std::mutex mu;
    std::unordered_map<std::string, uint32_t> byName;
    std::deque<std::string> names;  // deque keeps references stable
    std::atomic<uint32_t> freshCount{0};
    std::unordered_map<uint32_t, std::string> hints;  // source names of fresh directions
};

DirectionTable& table() {
    static DirectionTable t;
    return t;
}

}  // namespace

Direction Direction::named(const std::string& name) {
    auto& t = table();
    std::lock_guard<std::mutex> lock(t.mu);
    auto it = t.byName.find(name);
    if (it != t.byName.end()) return Direction{it->second};
    uint32_t id = static_cast<uint32_t>(t.names.size());
    t.names.push_back(name);
    t.byName.emplace(name, id);
    return Direction{id};
}

Direction Direction::fresh(const std::string& hint) {
    auto& t = table();
    uint32_t n = t.freshCount.fetch_add(1);
    std::lock_guard<std::mutex> lock(t.mu);
    uint32_t id = static_cast<uint32_t>(t.names.size());
    // '%' cannot start an identifier, so fresh names never parse back as user names
    t.names.push_back("%" + std::to_string(n));
    if (!hint.empty()) t.hints.emplace(id, hint);
    return Direction{id};
}

std::string Direction::display() const {
    auto& t = table();
    std::lock_guard<std::mutex> lock(t.mu);
    auto it = t.hints.find(id);
    return it != t.hints.end() ? it->second : t.names.at(id);
}

const std::string& Direction::name() const {
    auto& t = table();
    std::lock_guard<std::mutex> lock(t.mu);
    return t.names.at(id);
}

// ---- IntervalTerm ----

IntervalTerm IntervalTerm::zero() { return IntervalTerm(std::make_shared<Node>(Node{Kind::Zero, {}, nullptr, nullptr})); }
IntervalTerm IntervalTerm::one() { return IntervalTerm(std::make_shared<Node>(Node{Kind::One, {}, nullptr, nullptr})); }
IntervalTerm IntervalTerm::dir(Direction d) { return IntervalTerm(std::make_shared<Node>(Node{Kind::Dir, d, nullptr, nullptr})); }
IntervalTerm IntervalTerm::neg(IntervalTerm t) {
    return IntervalTerm(std::make_shared<Node>(Node{Kind::Neg, {}, std::make_shared<IntervalTerm>(std::move(t)), nullptr}));
}
IntervalTerm IntervalTerm::meet(IntervalTerm a, IntervalTerm b) {
    return IntervalTerm(std::make_shared<Node>(Node{Kind::Meet, {}, std::make_shared<IntervalTerm>(std::move(a)),
                                                    std::make_shared<IntervalTerm>(std::move(b))}));
}
IntervalTerm IntervalTerm::join(IntervalTerm a, IntervalTerm b) {
    return IntervalTerm(std::make_shared<Node>(Node{Kind::Join, {}, std::make_shared<IntervalTerm>(std::move(a)),
                                                    std::make_shared<IntervalTerm>(std::move(b))}));
}

bool IntervalTerm::sameShape(const IntervalTerm& o) const {
    if (kind() != o.kind()) return false;
    switch (kind()) {
    case Kind::Zero:
    case Kind::One: return true;
    case Kind::Dir: return direction() == o.direction();
    case Kind::Neg: return lhs().sameShape(o.lhs());
    default: return lhs().sameShape(o.lhs()) && rhs().sameShape(o.rhs());
    }
}

// ---- IntervalDnf ----

namespace {

bool isSubset(const IntervalDnf::Clause& small, const IntervalDnf::Clause& big) {
    return small.size() <= big.size() && std::includes(big.begin(), big.end(), small.begin(), small.end());
}

// sort, dedupe and drop clauses absorbed by smaller ones
std::vector<IntervalDnf::Clause> antichain(std::vector<IntervalDnf::Clause> cs) {
    for (auto& c : cs) {
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
    }
    std::sort(cs.begin(), cs.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    std::vector<IntervalDnf::Clause> kept;
    for (auto& c : cs) {
        bool absorbed = false;
        for (const auto& k : kept)
            if (isSubset(k, c)) {
                absorbed = true;
                break;
            }
        if (!absorbed) kept.push_back(std::move(c));
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

}  // namespace

IntervalDnf IntervalDnf::top() {
    IntervalDnf r;
    r.clauses_.push_back({});
    return r;
}

IntervalDnf IntervalDnf::dir(Direction d) {
    IntervalDnf r;
    r.clauses_.push_back({literal(d, false)});
    return r;
}

IntervalDnf IntervalDnf::fromClauses(std::vector<Clause> clauses) {
    IntervalDnf r;
    r.clauses_ = antichain(std::move(clauses));
    return r;
}

bool IntervalDnf::isDirection(Direction* out) const {
    if (clauses_.size() != 1 || clauses_[0].size() != 1 || literalNegated(clauses_[0][0])) return false;
    if (out) *out = literalDir(clauses_[0][0]);
    return true;
}

IntervalDnf IntervalDnf::meet(const IntervalDnf& o) const {
    if (isTop()) return o;
    if (o.isTop()) return *this;
    std::vector<Clause> out;
    out.reserve(clauses_.size() * o.clauses_.size());
    for (const auto& a : clauses_)
        for (const auto& b : o.clauses_) {
            Clause c;
            c.reserve(a.size() + b.size());
            std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(c));
            out.push_back(std::move(c));
        }
    return fromClauses(std::move(out));
}

IntervalDnf IntervalDnf::join(const IntervalDnf& o) const {
    if (isBottom()) return o;
    if (o.isBottom()) return *this;
    std::vector<Clause> out = clauses_;
    out.insert(out.end(), o.clauses_.begin(), o.clauses_.end());
    return fromClauses(std::move(out));
}

IntervalDnf IntervalDnf::negate() const {
    // not (c1 or c2 ...) = (not c1) and (not c2) ..., each (not c) a join of flipped literals
    IntervalDnf acc = top();
    for (const auto& c : clauses_) {
        std::vector<Clause> flipped;
        for (Literal l : c) flipped.push_back({l ^ 1u});
        acc = acc.meet(fromClauses(std::move(flipped)));
        if (acc.isBottom()) break;
    }
    return acc;
}

IntervalDnf IntervalDnf::substitute(const Subst& s) const {
    if (s.empty()) return *this;
    bool touched = false;
    for (const auto& c : clauses_)
        for (Literal l : c)
            if (s.find(literalDir(l))) touched = true;
    if (!touched) return *this;
    IntervalDnf acc;
    for (const auto& c : clauses_) {
        IntervalDnf term = top();
        for (Literal l : c) {
            IntervalDnf img;
            if (const IntervalDnf* r = s.find(literalDir(l)))
                img = literalNegated(l) ? r->negate() : *r;
            else
                img = fromClauses({{l}});
            term = term.meet(img);
            if (term.isBottom()) break;
        }
        acc = acc.join(term);
        if (acc.isTop()) break;
    }
    return acc;
}

bool IntervalDnf::mentions(Direction d) const {
    for (const auto& c : clauses_)
        for (Literal l : c)
            if (literalDir(l) == d) return true;
    return false;
}

void IntervalDnf::collectSupport(std::vector<Direction>& out) const {
    for (const auto& c : clauses_)
        for (Literal l : c) out.push_back(literalDir(l));
}

IntervalTerm IntervalDnf::toTerm() const {
    if (isBottom()) return IntervalTerm::zero();
    std::vector<IntervalTerm> parts;
    for (const auto& c : clauses_) {
        if (c.empty()) return IntervalTerm::one();
        std::vector<IntervalTerm> lits;
        for (Literal l : c) {
            IntervalTerm t = IntervalTerm::dir(literalDir(l));
            lits.push_back(literalNegated(l) ? IntervalTerm::neg(t) : t);
        }
        IntervalTerm m = lits[0];
        for (size_t k = 1; k < lits.size(); ++k) m = IntervalTerm::meet(m, lits[k]);
        parts.push_back(m);
    }
    IntervalTerm j = parts[0];
    for (size_t k = 1; k < parts.size(); ++k) j = IntervalTerm::join(j, parts[k]);
    return j;
}

// ---- Subst ----

Subst Subst::single(Direction d, IntervalDnf r) {
    Subst s;
    s.entries_.emplace_back(d, std::move(r));
    return s;
}

void Subst::set(Direction d, IntervalDnf r) {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), d,
                               [](const auto& e, Direction k) { return e.first < k; });
    if (it != entries_.end() && it->first == d)
        it->second = std::move(r);
    else
        entries_.insert(it, {d, std::move(r)});
}

const IntervalDnf* Subst::find(Direction d) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), d,
                               [](const auto& e, Direction k) { return e.first < k; });
    if (it != entries_.end() && it->first == d) return &it->second;
    return nullptr;
}

bool Subst::involves(Direction d) const {
    for (const auto& [k, r] : entries_)
        if (k == d || r.mentions(d)) return true;
    return false;
}

Subst Subst::then(const Subst& after) const {
    Subst out;
    for (const auto& [k, r] : entries_) out.entries_.emplace_back(k, r.substitute(after));
    for (const auto& [k, r] : after.entries_)
        if (!find(k)) out.set(k, r);
    return out;
}

// ---- free functions ----

IntervalDnf normalize(const IntervalTerm& t) {
    switch (t.kind()) {
    case IntervalTerm::Kind::Zero: return IntervalDnf::bottom();
    case IntervalTerm::Kind::One: return IntervalDnf::top();
    case IntervalTerm::Kind::Dir: return IntervalDnf::dir(t.direction());
    case IntervalTerm::Kind::Neg: return normalize(t.lhs()).negate();
    case IntervalTerm::Kind::Meet: return normalize(t.lhs()).meet(normalize(t.rhs()));
    case IntervalTerm::Kind::Join: return normalize(t.lhs()).join(normalize(t.rhs()));
    }
    return {};
}

bool iequal(const IntervalTerm& a, const IntervalTerm& b) { return normalize(a) == normalize(b); }

IntervalTerm isubst(const IntervalTerm& t, const std::map<Direction, IntervalTerm>& s) {
    switch (t.kind()) {
    case IntervalTerm::Kind::Zero:
    case IntervalTerm::Kind::One: return t;
    case IntervalTerm::Kind::Dir: {
        auto it = s.find(t.direction());
        return it == s.end() ? t : it->second;
    }
    case IntervalTerm::Kind::Neg: return IntervalTerm::neg(isubst(t.lhs(), s));
    case IntervalTerm::Kind::Meet: return IntervalTerm::meet(isubst(t.lhs(), s), isubst(t.rhs(), s));
    case IntervalTerm::Kind::Join: return IntervalTerm::join(isubst(t.lhs(), s), isubst(t.rhs(), s));
    }
    return t;
}

namespace {

// precedence: 0 join, 1 meet, 2 atom
std::string printPrec(const IntervalTerm& t, int ctx) {
    switch (t.kind()) {
    case IntervalTerm::Kind::Zero: return "0";
    case IntervalTerm::Kind::One: return "1";
    case IntervalTerm::Kind::Dir: return t.direction().display();
    case IntervalTerm::Kind::Neg: return "~" + printPrec(t.lhs(), 2);
    case IntervalTerm::Kind::Meet: {
        std::string s = printPrec(t.lhs(), 1) + " /\\ " + printPrec(t.rhs(), 2);
        return ctx > 1 ? "(" + s + ")" : s;
    }
    case IntervalTerm::Kind::Join: {
        std::string s = printPrec(t.lhs(), 0) + " \\/ " + printPrec(t.rhs(), 1);
        return ctx > 0 ? "(" + s + ")" : s;
    }
    }
    return "?";
}

}  // namespace

std::string printInterval(const IntervalTerm& t) { return printPrec(t, 0); }

std::string printInterval(const IntervalDnf& r) {
    if (r.isBottom()) return "0";
    if (r.isTop()) return "1";
    std::vector<std::string> clauses;
    for (const auto& c : r.clauses()) {
        std::vector<std::string> lits;
        for (auto l : c)
            lits.push_back((IntervalDnf::literalNegated(l) ? "~" : "") + IntervalDnf::literalDir(l).display());
        std::sort(lits.begin(), lits.end());
        std::string s;
        for (size_t k = 0; k < lits.size(); ++k) s += (k ? " /\\ " : "") + lits[k];
        clauses.push_back(s);
    }
    std::sort(clauses.begin(), clauses.end());
    std::string out;
    for (size_t k = 0; k < clauses.size(); ++k) out += (k ? " \\/ " : "") + clauses[k];
    return out;
}

}  // namespace cutt
