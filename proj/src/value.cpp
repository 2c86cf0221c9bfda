#include "cutt/value.hpp"

#include <algorithm>
#include <atomic>

namespace cutt {

Support mergeSupport(const Support& a, const Support& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    Support out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool supportHas(const Support& s, Direction d) { return std::binary_search(s.begin(), s.end(), d.id); }

namespace {

Support fromDirs(std::vector<Direction> ds) {
    Support s;
    for (auto d : ds) s.push_back(d.id);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

Support ofInterval(const IntervalDnf& r) {
    std::vector<Direction> ds;
    r.collectSupport(ds);
    return fromDirs(std::move(ds));
}

Support ofConjunct(const Conjunct& c) {
    Support s;
    for (const auto& a : c.atoms()) s.push_back(a.first.id);
    return s;  // atoms are sorted by direction
}

Support ofFace(const Face& f) {
    std::vector<Direction> ds;
    f.collectSupport(ds);
    return fromDirs(std::move(ds));
}

Support without(Support s, Direction d) {
    auto it = std::lower_bound(s.begin(), s.end(), d.id);
    if (it != s.end() && *it == d.id) s.erase(it);
    return s;
}

const Support& sup(const Value& v) {
    static const Support empty;
    return v ? v->support : empty;
}

Support ofSystem(const System& sys) {
    Support s;
    for (const auto& b : sys) s = mergeSupport(s, mergeSupport(ofConjunct(b.when), sup(b.value)));
    return s;
}

Support ofProblem(const CompProblem& pb) {
    Support inner = mergeSupport(mergeSupport(sup(pb.line), ofSystem(pb.tubes)), sup(pb.cap));
    return without(std::move(inner), pb.dir);
}

struct SupportOf {
    Support operator()(const VU&) const { return {}; }
    Support operator()(const VPi& x) const { return mergeSupport(sup(x.dom), x.cod.env.support()); }
    Support operator()(const VSigma& x) const { return mergeSupport(sup(x.dom), x.cod.env.support()); }
    Support operator()(const VLam& x) const { return x.body.env.support(); }
    Support operator()(const VPair& x) const { return mergeSupport(sup(x.first), sup(x.second)); }
    Support operator()(const VNat&) const { return {}; }
    Support operator()(const VZero&) const { return {}; }
    Support operator()(const VSuc& x) const { return sup(x.pred); }
    Support operator()(const VSum& x) const { return mergeSupport(sup(x.left), sup(x.right)); }
    Support operator()(const VInl& x) const { return sup(x.value); }
    Support operator()(const VInr& x) const { return sup(x.value); }
    Support operator()(const VPath& x) const {
        return mergeSupport(sup(x.type), mergeSupport(sup(x.lhs), sup(x.rhs)));
    }
    Support operator()(const VPLam& x) const { return without(sup(x.body), x.dir); }
    Support operator()(const VId& x) const { return mergeSupport(sup(x.type), mergeSupport(sup(x.lhs), sup(x.rhs))); }
    Support operator()(const VIdPair& x) const { return mergeSupport(sup(x.path), ofFace(x.flag)); }
    Support operator()(const VGlue& x) const {
        Support s = sup(x.base);
        for (const auto& b : x.branches) {
            s = mergeSupport(s, ofConjunct(b.when));
            s = mergeSupport(s, mergeSupport(sup(b.value.type), mergeSupport(sup(b.value.fun), sup(b.value.equiv))));
        }
        return s;
    }
    Support operator()(const VGlueElem& x) const { return mergeSupport(ofSystem(x.partial), sup(x.base)); }
    Support operator()(const VCompFn& x) const { return ofProblem(x.problem); }
    Support operator()(const NVar& x) const { return sup(x.type); }
    Support operator()(const NApp& x) const { return mergeSupport(sup(x.head), sup(x.arg)); }
    Support operator()(const NFst& x) const { return sup(x.head); }
    Support operator()(const NSnd& x) const { return sup(x.head); }
    Support operator()(const NPathApp& x) const { return mergeSupport(sup(x.head), ofInterval(x.at)); }
    Support operator()(const NNatRec& x) const {
        return mergeSupport(mergeSupport(sup(x.motive), sup(x.zeroCase)), mergeSupport(sup(x.sucCase), sup(x.head)));
    }
    Support operator()(const NCase& x) const {
        return mergeSupport(mergeSupport(sup(x.motive), sup(x.left)), mergeSupport(sup(x.right), sup(x.head)));
    }
    Support operator()(const NIdJ& x) const {
        return mergeSupport(sup(x.family), mergeSupport(sup(x.base), sup(x.head)));
    }
    Support operator()(const NComp& x) const { return ofProblem(x.problem); }
    Support operator()(const NUnglue& x) const { return mergeSupport(sup(x.head), ofSystem(x.funs)); }
};

Support ofEntry(const EnvEntry& e) {
    if (e.isDir) return ofInterval(e.dir);
    return mergeSupport(sup(e.value), sup(e.type));
}

}  // namespace

Value makeValue(ValueNode::Data d) {
    auto node = std::make_shared<ValueNode>();
    node->support = std::visit(SupportOf{}, d);
    node->data = std::move(d);
    return node;
}

Value freshVar(Value type, const std::string& hint) {
    static std::atomic<uint64_t> counter{0};
    return make(NVar{counter.fetch_add(1) + 1, hint, std::move(type)});
}

const char* headName(const Value& v) {
    static const char* names[] = {"U",     "Pi",       "Sigma", "lambda", "pair",   "Nat",   "zero",
                                  "suc",   "Sum",      "inl",   "inr",    "Path",   "<i>",   "Id",
                                  "idPair", "Glue",    "glue",  "comp-fn", "var",   "app",   "fst",
                                  "snd",   "path-app", "natrec", "case",  "idJ",    "comp",  "unglue"};
    return names[v->data.index()];
}

// ---- Env ----

Env Env::bind(const std::string& name, Value v, Value type) const {
    auto n = std::make_shared<EnvNode>();
    n->entry.name = name;
    n->entry.value = std::move(v);
    n->entry.type = std::move(type);
    n->next = head_;
    n->support = mergeSupport(ofEntry(n->entry), support());
    Env e(globals_);
    e.head_ = std::move(n);
    return e;
}

Env Env::bindDir(const std::string& name, IntervalDnf r) const {
    auto n = std::make_shared<EnvNode>();
    n->entry.name = name;
    n->entry.isDir = true;
    n->entry.dir = std::move(r);
    n->next = head_;
    n->support = mergeSupport(ofEntry(n->entry), support());
    Env e(globals_);
    e.head_ = std::move(n);
    return e;
}

const EnvEntry* Env::find(const std::string& name) const {
    for (const EnvNode* n = head_.get(); n; n = n->next.get())
        if (n->entry.name == name) return &n->entry;
    return nullptr;
}

const GlobalEntry* Env::global(const std::string& name) const {
    if (!globals_) return nullptr;
    auto it = globals_->find(name);
    return it == globals_->end() ? nullptr : &it->second;
}

const Support& Env::support() const {
    static const Support empty;
    return head_ ? head_->support : empty;
}

}  // namespace cutt
