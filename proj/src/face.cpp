#include "cutt/face.hpp"

#include <algorithm>

namespace cutt {

std::optional<Conjunct> Conjunct::make(std::vector<std::pair<Direction, bool>> atoms) {
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
    for (size_t k = 1; k < atoms.size(); ++k)
        if (atoms[k].first == atoms[k - 1].first) return std::nullopt;
    return Conjunct(std::move(atoms));
}

bool Conjunct::mentions(Direction d) const { return lookup(d) != nullptr; }

const bool* Conjunct::lookup(Direction d) const {
    for (const auto& a : atoms_)
        if (a.first == d) return &a.second;
    return nullptr;
}

bool Conjunct::subsetOf(const Conjunct& other) const {
    return atoms_.size() <= other.atoms_.size() &&
           std::includes(other.atoms_.begin(), other.atoms_.end(), atoms_.begin(), atoms_.end());
}

std::optional<Conjunct> Conjunct::meet(const Conjunct& other) const {
    std::vector<std::pair<Direction, bool>> all = atoms_;
    all.insert(all.end(), other.atoms_.begin(), other.atoms_.end());
    return make(std::move(all));
}

Subst Conjunct::asSubst() const {
    Subst s;
    for (const auto& [d, v] : atoms_) s.set(d, IntervalDnf::constant(v));
    return s;
}

Face Face::top() {
    Face f;
    f.conjuncts_.push_back(Conjunct());
    return f;
}

Face Face::of(const Conjunct& c) {
    Face f;
    f.conjuncts_.push_back(c);
    return f;
}

Face Face::fromConjuncts(std::vector<Conjunct> cs) {
    std::sort(cs.begin(), cs.end(), [](const Conjunct& a, const Conjunct& b) {
        if (a.atoms().size() != b.atoms().size()) return a.atoms().size() < b.atoms().size();
        return a < b;
    });
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    Face f;
    for (auto& c : cs) {
        bool absorbed = false;
        for (const auto& k : f.conjuncts_)
            if (k.subsetOf(c)) {
                absorbed = true;
                break;
            }
        if (!absorbed) f.conjuncts_.push_back(std::move(c));
    }
    std::sort(f.conjuncts_.begin(), f.conjuncts_.end());
    return f;
}

bool Face::mentions(Direction d) const {
    for (const auto& c : conjuncts_)
        if (c.mentions(d)) return true;
    return false;
}

void Face::collectSupport(std::vector<Direction>& out) const {
    for (const auto& c : conjuncts_)
        for (const auto& a : c.atoms()) out.push_back(a.first);
}

Face faceEq(const IntervalDnf& r, bool value) {
    // (r = 1) reads the clauses of r directly: x gives x=1, ~x gives x=0.
    // (r = 0) is (~r = 1).
    const IntervalDnf src = value ? r : r.negate();
    std::vector<Conjunct> cs;
    for (const auto& clause : src.clauses()) {
        std::vector<std::pair<Direction, bool>> atoms;
        for (auto l : clause) atoms.emplace_back(IntervalDnf::literalDir(l), !IntervalDnf::literalNegated(l));
        if (auto c = Conjunct::make(std::move(atoms))) cs.push_back(std::move(*c));
    }
    return Face::fromConjuncts(std::move(cs));
}

Face faceOr(const Face& a, const Face& b) {
    if (a.isBottom() || b.isTop()) return b;
    if (b.isBottom() || a.isTop()) return a;
    std::vector<Conjunct> cs = a.conjuncts();
    cs.insert(cs.end(), b.conjuncts().begin(), b.conjuncts().end());
    return Face::fromConjuncts(std::move(cs));
}

Face faceAnd(const Face& a, const Face& b) {
    if (a.isTop() || b.isBottom()) return b;
    if (b.isTop() || a.isBottom()) return a;
    std::vector<Conjunct> cs;
    for (const auto& x : a.conjuncts())
        for (const auto& y : b.conjuncts())
            if (auto m = x.meet(y)) cs.push_back(std::move(*m));
    return Face::fromConjuncts(std::move(cs));
}

Face faceSubst(const Face& f, const Subst& s) {
    if (s.empty()) return f;
    Face acc;
    for (const auto& c : f.conjuncts()) {
        Face part = Face::top();
        for (const auto& [d, v] : c.atoms()) {
            const IntervalDnf* r = s.find(d);
            part = faceAnd(part, r ? faceEq(*r, v) : Face::of(Conjunct::atom(d, v)));
            if (part.isBottom()) break;
        }
        acc = faceOr(acc, part);
        if (acc.isTop()) break;
    }
    return acc;
}

Face forallDir(Direction d, const Face& f) {
    std::vector<Conjunct> kept;
    for (const auto& c : f.conjuncts())
        if (!c.mentions(d)) kept.push_back(c);
    return Face::fromConjuncts(std::move(kept));
}

Truth truth(const Face& f) {
    if (f.isTop()) return Truth::True;
    if (f.isBottom()) return Truth::False;
    return Truth::Neither;
}

bool faceLeq(const Face& a, const Face& b) {
    // conjuncts are join-prime, so a <= b iff each conjunct of a lies under one of b
    for (const auto& x : a.conjuncts()) {
        bool covered = false;
        for (const auto& y : b.conjuncts())
            if (y.subsetOf(x)) {
                covered = true;
                break;
            }
        if (!covered) return false;
    }
    return true;
}

std::string printFace(const Face& f) {
    if (f.isBottom()) return "(0 = 1)";
    if (f.isTop()) return "(0 = 0)";
    std::vector<std::string> parts;
    for (const auto& c : f.conjuncts()) {
        std::vector<std::string> atoms;
        for (const auto& [d, v] : c.atoms()) atoms.push_back("(" + d.display() + " = " + (v ? "1" : "0") + ")");
        std::sort(atoms.begin(), atoms.end());
        std::string s;
        for (size_t k = 0; k < atoms.size(); ++k) s += (k ? " /\\ " : "") + atoms[k];
        parts.push_back(s);
    }
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (size_t k = 0; k < parts.size(); ++k) out += (k ? " \\/ " : "") + parts[k];
    return out;
}

}  // namespace cutt
