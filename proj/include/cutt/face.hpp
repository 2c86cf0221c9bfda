#pragma once

#include "cutt/interval.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cutt {

// A consistent conjunction of atoms (x = 0) / (x = 1), sorted by direction.
// The empty conjunct is Top.
class Conjunct {
public:
    Conjunct() = default;
    static std::optional<Conjunct> make(std::vector<std::pair<Direction, bool>> atoms);
    static Conjunct atom(Direction d, bool value) { return Conjunct({{d, value}}); }

    const std::vector<std::pair<Direction, bool>>& atoms() const { return atoms_; }
    bool empty() const { return atoms_.empty(); }
    bool mentions(Direction d) const;
    const bool* lookup(Direction d) const;

    // every atom of *this also occurs in other (so other implies *this)
    bool subsetOf(const Conjunct& other) const;
    std::optional<Conjunct> meet(const Conjunct& other) const;
    Subst asSubst() const;

    friend bool operator==(const Conjunct& a, const Conjunct& b) { return a.atoms_ == b.atoms_; }
    friend bool operator!=(const Conjunct& a, const Conjunct& b) { return !(a == b); }
    friend bool operator<(const Conjunct& a, const Conjunct& b) { return a.atoms_ < b.atoms_; }

private:
    explicit Conjunct(std::vector<std::pair<Direction, bool>> a) : atoms_(std::move(a)) {}
    std::vector<std::pair<Direction, bool>> atoms_;
};

enum class Truth { False, True, Neither };

// Element of the face lattice: an antichain of consistent conjuncts.
// No conjuncts is Bottom; a single empty conjunct is Top.
class Face {
public:
    Face() = default;  // bottom
    static Face bottom() { return {}; }
    static Face top();
    static Face of(const Conjunct& c);
    static Face fromConjuncts(std::vector<Conjunct> cs);

    bool isTop() const { return conjuncts_.size() == 1 && conjuncts_[0].empty(); }
    bool isBottom() const { return conjuncts_.empty(); }
    const std::vector<Conjunct>& conjuncts() const { return conjuncts_; }

    bool mentions(Direction d) const;
    void collectSupport(std::vector<Direction>& out) const;

    friend bool operator==(const Face& a, const Face& b) { return a.conjuncts_ == b.conjuncts_; }
    friend bool operator!=(const Face& a, const Face& b) { return !(a == b); }
    friend bool operator<(const Face& a, const Face& b) { return a.conjuncts_ < b.conjuncts_; }

private:
    std::vector<Conjunct> conjuncts_;
};

Face faceEq(const IntervalDnf& r, bool value);
Face faceOr(const Face& a, const Face& b);
Face faceAnd(const Face& a, const Face& b);
Face faceSubst(const Face& f, const Subst& s);
Face forallDir(Direction d, const Face& f);
Truth truth(const Face& f);
bool faceLeq(const Face& a, const Face& b);

std::string printFace(const Face& f);

}  // namespace cutt
