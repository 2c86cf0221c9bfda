#pragma once

#include "cutt/face.hpp"
#include "cutt/interval.hpp"
#include "cutt/syntax.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace cutt {

struct ValueNode;
using Value = std::shared_ptr<const ValueNode>;

// Sorted set of direction ids a value may mention.
using Support = std::vector<uint32_t>;
Support mergeSupport(const Support& a, const Support& b);
bool supportHas(const Support& s, Direction d);

struct GlobalEntry {
    Value type;
    Value value;
};
using Globals = std::map<std::string, GlobalEntry>;
using GlobalsPtr = std::shared_ptr<const Globals>;

struct EnvEntry {
    std::string name;
    bool isDir = false;
    Value value;      // term variable
    Value type;       // its type, when known
    IntervalDnf dir;  // direction variable
};

struct EnvNode {
    EnvEntry entry;
    std::shared_ptr<const EnvNode> next;
    Support support;
};

class Env {
public:
    Env() = default;
    explicit Env(GlobalsPtr g) : globals_(std::move(g)) {}

    Env bind(const std::string& name, Value v, Value type = nullptr) const;
    Env bindDir(const std::string& name, IntervalDnf r) const;
    const EnvEntry* find(const std::string& name) const;
    const GlobalEntry* global(const std::string& name) const;
    Env restrict(const Subst& s) const;

    const Support& support() const;
    const std::shared_ptr<const EnvNode>& head() const { return head_; }
    const GlobalsPtr& globals() const { return globals_; }

private:
    std::shared_ptr<const EnvNode> head_;
    GlobalsPtr globals_;
};

struct Closure {
    std::string binder;
    TermPtr body;
    Env env;
};

template <class T>
struct Branch {
    Conjunct when;
    T value;
};
using System = std::vector<Branch<Value>>;

struct GlueParts {
    Value type;   // partial type on the face
    Value fun;    // map into the base
    Value equiv;  // proof that fun is an equivalence
};
using GlueSystem = std::vector<Branch<GlueParts>>;

template <class T>
Face systemFace(const std::vector<Branch<T>>& sys) {
    std::vector<Conjunct> cs;
    for (const auto& b : sys) cs.push_back(b.when);
    return Face::fromConjuncts(std::move(cs));
}

// Composition problem: a type line bound by `dir`, tubes (each a line in `dir`
// living under its conjunct) and a cap at `dir = endpoint`.
struct CompProblem {
    int endpoint = 0;
    Direction dir;
    Value line;
    System tubes;
    Value cap;
};

// ---- value forms ----

struct VU {};
struct VPi { Value dom; Closure cod; };
struct VSigma { Value dom; Closure cod; };
struct VLam { Closure body; };
struct VPair { Value first, second; };
struct VNat {};
struct VZero {};
struct VSuc { Value pred; };
struct VSum { Value left, right; };
struct VInl { Value value; };
struct VInr { Value value; };
struct VPath { Value type, lhs, rhs; };
struct VPLam { Direction dir; Value body; };
struct VId { Value type, lhs, rhs; };
struct VIdPair { Value path; Face flag; };
struct VGlue { Value base; GlueSystem branches; };
struct VGlueElem { System partial; Value base; };
struct VCompFn { CompProblem problem; };  // composition in a Pi line, computed on application

// neutral forms
struct NVar { uint64_t id; std::string hint; Value type; };
struct NApp { Value head; Value arg; };
struct NFst { Value head; };
struct NSnd { Value head; };
struct NPathApp { Value head; IntervalDnf at; };
struct NNatRec { Value motive, zeroCase, sucCase, head; };
struct NCase { Value motive, left, right, head; };
struct NIdJ { Value family, base, head; };
struct NComp { CompProblem problem; };
struct NUnglue { Value head; System funs; };

struct ValueNode {
    using Data = std::variant<VU, VPi, VSigma, VLam, VPair, VNat, VZero, VSuc, VSum, VInl, VInr, VPath, VPLam, VId,
                              VIdPair, VGlue, VGlueElem, VCompFn, NVar, NApp, NFst, NSnd, NPathApp, NNatRec, NCase,
                              NIdJ, NComp, NUnglue>;
    Data data;
    Support support;

    template <class T>
    const T* as() const {
        return std::get_if<T>(&data);
    }
    template <class T>
    bool is() const {
        return std::holds_alternative<T>(data);
    }
    bool isNeutral() const { return data.index() >= std::variant_size_v<Data> - 10; }
};

Value makeValue(ValueNode::Data d);

template <class T>
Value make(T x) {
    return makeValue(ValueNode::Data(std::move(x)));
}

Value freshVar(Value type, const std::string& hint);

const char* headName(const Value& v);

}  // namespace cutt
