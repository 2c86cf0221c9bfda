#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace cutt {

// Interned direction symbol. Named directions come from source text,
// fresh ones are generated during evaluation and never collide with names.
struct Direction {
    uint32_t id = 0;

    static Direction named(const std::string& name);
    // hint is only used when printing a free occurrence
    static Direction fresh(const std::string& hint = "");
    const std::string& name() const;
    std::string display() const;

    friend bool operator==(Direction a, Direction b) { return a.id == b.id; }
    friend bool operator!=(Direction a, Direction b) { return a.id != b.id; }
    friend bool operator<(Direction a, Direction b) { return a.id < b.id; }
};

class IntervalTerm {
public:
    enum class Kind { Zero, One, Dir, Neg, Meet, Join };

    static IntervalTerm zero();
    static IntervalTerm one();
    static IntervalTerm dir(Direction d);
    static IntervalTerm neg(IntervalTerm t);
    static IntervalTerm meet(IntervalTerm a, IntervalTerm b);
    static IntervalTerm join(IntervalTerm a, IntervalTerm b);

    Kind kind() const { return node_->kind; }
    Direction direction() const { return node_->d; }
    const IntervalTerm& lhs() const { return *node_->a; }
    const IntervalTerm& rhs() const { return *node_->b; }

    bool sameShape(const IntervalTerm& other) const;

private:
    struct Node {
        Kind kind;
        Direction d;
        std::shared_ptr<const IntervalTerm> a, b;
    };
    explicit IntervalTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

class Subst;

// Canonical form of an element of the free de Morgan algebra: an antichain
// of clauses, each clause a sorted set of literals. Bottom is the empty
// antichain, Top the antichain holding only the empty clause.
class IntervalDnf {
public:
    // literal code: (direction id << 1) | negated
    using Literal = uint32_t;
    using Clause = std::vector<Literal>;

    static Literal literal(Direction d, bool negated) { return (d.id << 1) | (negated ? 1u : 0u); }
    static Direction literalDir(Literal l) { return Direction{l >> 1}; }
    static bool literalNegated(Literal l) { return (l & 1u) != 0; }

    IntervalDnf() = default;  // bottom
    static IntervalDnf bottom() { return {}; }
    static IntervalDnf top();
    static IntervalDnf constant(bool b) { return b ? top() : bottom(); }
    static IntervalDnf dir(Direction d);
    static IntervalDnf fromClauses(std::vector<Clause> clauses);

    bool isTop() const { return clauses_.size() == 1 && clauses_[0].empty(); }
    bool isBottom() const { return clauses_.empty(); }
    // 0 or 1 when constant, -1 otherwise
    int constantValue() const { return isBottom() ? 0 : isTop() ? 1 : -1; }
    // the direction when this is a bare positive literal
    bool isDirection(Direction* out = nullptr) const;

    const std::vector<Clause>& clauses() const { return clauses_; }

    IntervalDnf meet(const IntervalDnf& o) const;
    IntervalDnf join(const IntervalDnf& o) const;
    IntervalDnf negate() const;
    IntervalDnf substitute(const Subst& s) const;

    bool mentions(Direction d) const;
    void collectSupport(std::vector<Direction>& out) const;
    IntervalTerm toTerm() const;

    friend bool operator==(const IntervalDnf& a, const IntervalDnf& b) { return a.clauses_ == b.clauses_; }
    friend bool operator!=(const IntervalDnf& a, const IntervalDnf& b) { return !(a == b); }
    friend bool operator<(const IntervalDnf& a, const IntervalDnf& b) { return a.clauses_ < b.clauses_; }

private:
    std::vector<Clause> clauses_;
};

// Finite map from directions to interval elements, identity elsewhere.
class Subst {
public:
    Subst() = default;
    static Subst single(Direction d, IntervalDnf r);

    void set(Direction d, IntervalDnf r);
    const IntervalDnf* find(Direction d) const;
    bool empty() const { return entries_.empty(); }
    const std::vector<std::pair<Direction, IntervalDnf>>& entries() const { return entries_; }

    // true when the substitution touches d, either as a key or inside an image
    bool involves(Direction d) const;
    // apply this, then after
    Subst then(const Subst& after) const;

private:
    std::vector<std::pair<Direction, IntervalDnf>> entries_;  // sorted by direction
};

IntervalDnf normalize(const IntervalTerm& t);
bool iequal(const IntervalTerm& a, const IntervalTerm& b);
IntervalTerm isubst(const IntervalTerm& t, const std::map<Direction, IntervalTerm>& s);

std::string printInterval(const IntervalTerm& t);
std::string printInterval(const IntervalDnf& r);

}  // namespace cutt
