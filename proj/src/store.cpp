#include "aplog/store.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace aplog {

Term Store::walk(Term t) const {
    while (t.isVar()) {
        const Term* b = bind_.find(t.varId().id);
        if (!b) break;
        t = permute(t.perm(), *b);
    }
    return t;
}

Term Store::resolve(const Term& t) const {
    if (t.ground()) return t;
    switch (t.kind()) {
        case TermKind::Var: {
            const Term* b = bind_.find(t.varId().id);
            if (!b) return t;
            return resolve(permute(t.perm(), *b));
        }
        case TermKind::Abs: return Term::abs(resolve(t.binder()), resolve(t.body()));
        case TermKind::App: {
            std::vector<Term> args;
            args.reserve(t.args().size());
            for (const auto& a : t.args()) args.push_back(resolve(a));
            return Term::app(t.ctor(), std::move(args));
        }
        default: return t;
    }
}

void Store::addFreshAtom(Name a, VarId x) {
    const std::vector<Name>* cur = fresh_.find(x.id);
    if (cur && std::find(cur->begin(), cur->end(), a) != cur->end()) return;
    std::vector<Name> next = cur ? *cur : std::vector<Name>{};
    next.push_back(a);
    fresh_.insert(x.id, std::move(next));
    ++freshCount_;
}

void Store::suspend(bool equation, const Term& l, const Term& r) {
    auto next = susp_ ? std::make_shared<std::vector<Suspension>>(*susp_) : std::make_shared<std::vector<Suspension>>();
    next->push_back({equation, l, r});
    susp_ = std::move(next);
}

void Store::bindVar(VarId x, const Term& t, std::vector<Work>& work) {
    bind_.insert(x.id, t);
    if (const std::vector<Name>* fs = fresh_.find(x.id)) {
        for (Name a : *fs) work.push_back({false, Term::name(a), t});
        freshCount_ -= fs->size();
        fresh_.erase(x.id);
    }
    // suspended constraints are retried on every binding; there are few
    if (susp_ && !susp_->empty()) {
        for (const auto& s : *susp_) work.push_back({s.equation, s.lhs, s.rhs});
        susp_.reset();
    }
}

bool Store::stepEq(const Term& l0, const Term& r0, std::vector<Work>& work) {
    Term l = walk(l0);
    Term r = walk(r0);
    if (l.isVar() && r.isVar() && l.varId() == r.varId()) {
        for (Name a : l.perm().disagreement(r.perm())) work.push_back({false, Term::name(a), Term::var(l.varId())});
        return true;
    }
    if (l.isVar() || r.isVar()) {
        const Term& v = l.isVar() ? l : r;
        const Term& o = l.isVar() ? r : l;
        Term val = permute(v.perm().inverse(), o);
        if (occurs(v.varId(), resolve(val))) return false;
        bindVar(v.varId(), val, work);
        return true;
    }
    if (l.kind() != r.kind()) return false;
    switch (l.kind()) {
        case TermKind::Name: return l.nameValue() == r.nameValue();
        case TermKind::Int:
        case TermKind::Char: return l.value() == r.value();
        case TermKind::App:
            if (l.ctor() != r.ctor() || l.args().size() != r.args().size()) return false;
            for (std::size_t i = 0; i < l.args().size(); ++i) work.push_back({true, l.args()[i], r.args()[i]});
            return true;
        case TermKind::Abs: {
            Term bl = walk(l.binder());
            Term br = walk(r.binder());
            if (bl.isName() && br.isName()) {
                Name a = bl.nameValue(), b = br.nameValue();
                if (a == b) {
                    work.push_back({true, l.body(), r.body()});
                } else {
                    work.push_back({false, Term::name(a), r.body()});
                    work.push_back({true, l.body(), swap(a, b, r.body())});
                }
                return true;
            }
            if (bl.isVar() && br.isVar() && bl.varId() == br.varId() && bl.perm() == br.perm()) {
                work.push_back({true, l.body(), r.body()});
                return true;
            }
            suspend(true, l, r);
            return true;
        }
        case TermKind::Var: break;
    }
    return false;
}

bool Store::stepFresh(const Term& a0, const Term& t0, std::vector<Work>& work) {
    Term a = walk(a0);
    Term t = walk(t0);
    if (a.isName()) {
        Name n = a.nameValue();
        switch (t.kind()) {
            case TermKind::Name: return t.nameValue() != n;
            case TermKind::Var: addFreshAtom(t.perm().applyInverse(n), t.varId()); return true;
            case TermKind::Abs: {
                Term b = walk(t.binder());
                if (b.isName()) {
                    if (b.nameValue() == n) return true;
                    work.push_back({false, a, t.body()});
                    return true;
                }
                suspend(false, a, t);
                return true;
            }
            case TermKind::App:
                for (const auto& x : t.args()) work.push_back({false, a, x});
                return true;
            default: return true;
        }
    }
    if (!a.isVar()) throw std::invalid_argument("freshness: left-hand side is not a name");
    switch (t.kind()) {
        case TermKind::App:
            for (const auto& x : t.args()) work.push_back({false, a, x});
            return true;
        case TermKind::Int:
        case TermKind::Char: return true;
        case TermKind::Var:
            if (t.varId() == a.varId() && t.perm() == a.perm()) return false;
            suspend(false, a, t);
            return true;
        default: suspend(false, a, t); return true;
    }
}

bool Store::run(std::vector<Work>& work) {
    for (std::size_t i = 0; i < work.size(); ++i) {
        Work w = work[i];
        bool ok = w.equation ? stepEq(w.lhs, w.rhs, work) : stepFresh(w.lhs, w.rhs, work);
        if (!ok) return false;
    }
    return true;
}

bool Store::unify(const Term& t, const Term& u) {
    std::vector<Work> work{{true, t, u}};
    return run(work);
}

bool Store::fresh(const Term& a, const Term& t) {
    std::vector<Work> work{{false, a, t}};
    return run(work);
}

bool Store::add(const Goal& g) {
    switch (g.kind) {
        case GoalKind::True: return true;
        case GoalKind::Eq: return unify(g.lhs, g.rhs);
        case GoalKind::Fresh: return fresh(g.lhs, g.rhs);
        default: throw std::invalid_argument("not a solvable constraint");
    }
}

std::map<VarId, Term> Store::solvedForm() const {
    std::map<VarId, Term> out;
    bind_.forEach([&](std::uint32_t k, const Term& v) { out.emplace(VarId{k}, resolve(v)); });
    return out;
}

std::vector<std::pair<Name, VarId>> Store::freshAtoms() const {
    std::vector<std::pair<Name, VarId>> out;
    fresh_.forEach([&](std::uint32_t k, const std::vector<Name>& ns) {
        for (Name a : ns) out.emplace_back(a, VarId{k});
    });
    return out;
}

std::vector<Name> Store::freshAtomsOf(VarId x) const {
    const std::vector<Name>* ns = fresh_.find(x.id);
    return ns ? *ns : std::vector<Name>{};
}

std::vector<Store::Suspension> Store::suspensions() const {
    std::vector<Suspension> out;
    if (susp_)
        for (const auto& s : *susp_) out.push_back({s.equation, resolve(s.lhs), resolve(s.rhs)});
    return out;
}

namespace {

bool satisfiable(const Store& s) {
    auto sus = s.suspensions();
    if (sus.empty()) return true;
    std::optional<VarId> pick;
    for (const auto& x : sus) {
        for (const Term* t : {&x.lhs, &x.rhs}) {
            for (VarId v : vars(*t))
                if (varNameType(v) != 0) {
                    pick = v;
                    break;
                }
            if (pick) break;
        }
        if (pick) break;
    }
    // every suspension has a name variable in name position
    if (!pick) return false;
    NameTypeId nt = varNameType(*pick);
    std::set<Name> cands;
    for (const auto& x : sus)
        for (const Term* t : {&x.lhs, &x.rhs})
            for (Name a : allNames(*t))
                if (a.type == nt) cands.insert(a);
    for (const auto& [a, v] : s.freshAtoms())
        if (a.type == nt) cands.insert(a);
    std::vector<Name> order(cands.begin(), cands.end());
    order.push_back(freshName("s", nt));
    for (Name a : order) {
        Store c = s;
        if (c.unify(Term::var(*pick), Term::name(a)) && satisfiable(c)) return true;
    }
    return false;
}

}  // namespace

bool Store::checkSatisfiable() const { return satisfiable(*this); }

std::string showSuspension(const Store::Suspension& s, const PrintOptions& opts) {
    return show(s.lhs, opts) + (s.equation ? " = " : " # ") + show(s.rhs, opts);
}

}  // namespace aplog
