#include "aplog/engine.hpp"

#include <algorithm>
#include <set>

#include "aplog/elaborate.hpp"

namespace aplog {

const char* transitionName(Rule9 r) {
    switch (r) {
        case Rule9::Backchain: return "B";
        case Rule9::Constraint: return "C";
        case Rule9::Top: return "top";
        case Rule9::And: return "and";
        case Rule9::Or1: return "or1";
        case Rule9::Or2: return "or2";
        case Rule9::Exists: return "exists";
        case Rule9::New: return "new";
    }
    return "?";
}

std::string Answer::text() const {
    if (lines.empty()) return "Yes.";
    std::string out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (i) out += ",\n";
        out += lines[i];
    }
    return out;
}

namespace {

void boundInGoal(const GoalPtr& g, std::vector<VarId>& vs, std::vector<Name>& ns) {
    switch (g->kind) {
        case GoalKind::And:
        case GoalKind::Or:
            boundInGoal(g->left, vs, ns);
            boundInGoal(g->right, vs, ns);
            break;
        case GoalKind::Exists:
            vs.push_back(g->var);
            boundInGoal(g->left, vs, ns);
            break;
        case GoalKind::New:
            ns.push_back(g->name);
            boundInGoal(g->left, vs, ns);
            break;
        default: break;
    }
}

void boundInClause(const ClausePtr& d, std::vector<VarId>& vs, std::vector<Name>& ns) {
    switch (d->kind) {
        case ClauseKind::And:
            boundInClause(d->left, vs, ns);
            boundInClause(d->right, vs, ns);
            break;
        case ClauseKind::Imp:
            boundInGoal(d->guard, vs, ns);
            boundInClause(d->left, vs, ns);
            break;
        case ClauseKind::Forall:
            vs.push_back(d->var);
            boundInClause(d->left, vs, ns);
            break;
        case ClauseKind::New:
            ns.push_back(d->name);
            boundInClause(d->left, vs, ns);
            break;
        default: break;
    }
}

std::map<VarId, Term> asSubst(const std::map<VarId, VarId>& ren) {
    std::map<VarId, Term> out;
    for (const auto& [x, y] : ren) out.emplace(x, Term::var(y));
    return out;
}

VarId renamed(VarId x, const std::map<VarId, VarId>& ren) {
    auto it = ren.find(x);
    return it == ren.end() ? x : it->second;
}

void goalVars(const GoalPtr& g, std::set<VarId>& out) {
    switch (g->kind) {
        case GoalKind::Atom:
            for (VarId v : vars(g->lhs)) out.insert(v);
            break;
        case GoalKind::Eq:
        case GoalKind::Fresh:
        case GoalKind::Equiv:
            for (VarId v : vars(g->lhs)) out.insert(v);
            for (VarId v : vars(g->rhs)) out.insert(v);
            break;
        case GoalKind::And:
        case GoalKind::Or:
            goalVars(g->left, out);
            goalVars(g->right, out);
            break;
        case GoalKind::Exists: {
            // only free occurrences count
            std::set<VarId> inner;
            goalVars(g->left, inner);
            inner.erase(g->var);
            out.insert(inner.begin(), inner.end());
            break;
        }
        case GoalKind::New: goalVars(g->left, out); break;
        default: break;
    }
}

// Clause-level new-names are already renamed apart; a name under a forall
// must still be fresh for the variables bound outside it.
std::vector<GoalPtr> focus(const ClausePtr& d, const Term& atom, std::vector<VarId>& scope) {
    switch (d->kind) {
        case ClauseKind::Atom:
            if (d->atom.ctor() == atom.ctor() && d->atom.args().size() == atom.args().size())
                return {gEq(d->atom, atom)};
            return {};
        case ClauseKind::True: return {};
        case ClauseKind::And: {
            auto l = focus(d->left, atom, scope);
            auto r = focus(d->right, atom, scope);
            l.insert(l.end(), r.begin(), r.end());
            return l;
        }
        case ClauseKind::Imp: {
            std::vector<GoalPtr> out;
            for (auto& r : focus(d->left, atom, scope)) out.push_back(gAnd(r, d->guard));
            return out;
        }
        case ClauseKind::Forall: {
            std::vector<GoalPtr> out;
            scope.push_back(d->var);
            auto rs = focus(d->left, atom, scope);
            scope.pop_back();
            for (auto& r : rs) out.push_back(gExists(d->var, r));
            return out;
        }
        case ClauseKind::New: {
            std::vector<GoalPtr> out;
            for (auto& r : focus(d->left, atom, scope)) {
                GoalPtr g = r;
                for (VarId v : scope) g = gAnd(g, gFresh(Term::name(d->name), Term::var(v)));
                out.push_back(g);
            }
            return out;
        }
    }
    return {};
}

void headPreds(const ClausePtr& d, std::set<Symbol>& out) {
    switch (d->kind) {
        case ClauseKind::Atom: out.insert(d->atom.ctor()); break;
        case ClauseKind::And:
            headPreds(d->left, out);
            headPreds(d->right, out);
            break;
        case ClauseKind::Imp:
        case ClauseKind::Forall:
        case ClauseKind::New: headPreds(d->left, out); break;
        default: break;
    }
}

GoalList push(GoalPtr g, GoalList rest) { return std::make_shared<const GoalNode>(GoalNode{std::move(g), std::move(rest)}); }

}  // namespace

GoalPtr renameGoalVars(const GoalPtr& g, const std::map<VarId, VarId>& ren) {
    if (ren.empty()) return g;
    auto sub = asSubst(ren);
    std::function<GoalPtr(const GoalPtr&)> go = [&](const GoalPtr& h) -> GoalPtr {
        switch (h->kind) {
            case GoalKind::True: return h;
            case GoalKind::Atom: return gAtom(substVars(h->lhs, sub));
            case GoalKind::Eq: return gEq(substVars(h->lhs, sub), substVars(h->rhs, sub));
            case GoalKind::Fresh: return gFresh(substVars(h->lhs, sub), substVars(h->rhs, sub));
            case GoalKind::Equiv: return gEquiv(substVars(h->lhs, sub), substVars(h->rhs, sub));
            case GoalKind::And: return gAnd(go(h->left), go(h->right));
            case GoalKind::Or: return gOr(go(h->left), go(h->right));
            case GoalKind::Exists: return gExists(renamed(h->var, ren), go(h->left));
            case GoalKind::New: return gNew(h->name, go(h->left));
        }
        return h;
    };
    return go(g);
}

ClausePtr renameClauseVars(const ClausePtr& d, const std::map<VarId, VarId>& ren) {
    if (ren.empty()) return d;
    auto sub = asSubst(ren);
    std::function<ClausePtr(const ClausePtr&)> go = [&](const ClausePtr& e) -> ClausePtr {
        switch (e->kind) {
            case ClauseKind::True: return e;
            case ClauseKind::Atom: return dAtom(substVars(e->atom, sub));
            case ClauseKind::And: return dAnd(go(e->left), go(e->right));
            case ClauseKind::Imp: return dImp(renameGoalVars(e->guard, ren), go(e->left));
            case ClauseKind::Forall: return dForall(renamed(e->var, ren), go(e->left));
            case ClauseKind::New: return dNew(e->name, go(e->left));
        }
        return e;
    };
    return go(d);
}

ElaboratedClause freshenClause(const ElaboratedClause& c) {
    std::vector<VarId> vs = c.vars;
    std::vector<Name> ns = c.names;
    if (c.body) boundInGoal(c.body, vs, ns);
    std::map<VarId, VarId> vr;
    std::map<Name, Name> nr;
    for (VarId v : vs) vr.emplace(v, freshVarLike(v));
    for (Name a : ns) nr.emplace(a, freshNameLike(a));
    ElaboratedClause out = c;
    for (auto& v : out.vars) v = vr.at(v);
    for (auto& a : out.names) a = nr.at(a);
    out.head = substVars(renameNames(c.head, nr), asSubst(vr));
    out.body = c.body ? renameGoalVars(renameGoalNames(c.body, nr), vr) : gTrue();
    return out;
}

GoalPtr backchain(const Term& atom, const ElaboratedClause& c0) {
    ElaboratedClause c = freshenClause(c0);
    GoalPtr g = gEq(c.head, atom);
    if (c.body && c.body->kind != GoalKind::True) g = gAnd(g, c.body);
    // the clause is closed, so its new-names act as universally quantified;
    // the renamed copies are brand-new constants and need no freshness facts
    for (std::size_t i = c.vars.size(); i-- > 0;) g = gExists(c.vars[i], g);
    return g;
}

Engine::Engine(const Program& prog, EngineOptions opts) : prog_(prog), opts_(std::move(opts)) {
    if (opts_.raw) {
        raw_ = prog.closed;
        for (std::size_t i = 0; i < raw_.size(); ++i) {
            std::set<Symbol> ps;
            headPreds(raw_[i], ps);
            for (Symbol p : ps) byPred_[p].push_back(i);
        }
        return;
    }
    clauses_ = prog.clauses;
    if (opts_.nuGoal) {
        std::vector<ElaboratedClause> tr;
        for (const auto& c : clauses_) {
            ElaboratedClause t = fromNormal(nuGoalTranslate(c));
            t.loc = c.loc;
            tr.push_back(std::move(t));
        }
        clauses_ = std::move(tr);
    }
    for (std::size_t i = 0; i < clauses_.size(); ++i) byPred_[clauses_[i].head.ctor()].push_back(i);
}

void Engine::traceLine(Rule9 r, const GoalPtr& g, const Store& s) const {
    if (!opts_.trace) return;
    opts_.trace(std::string(transitionName(r)) + " | " + showGoal(g) + " | " + std::to_string(s.size()));
}

std::vector<GoalPtr> Engine::residuals(const Term& atom, std::size_t i) const {
    if (!opts_.raw) return {backchain(atom, clauses_[i])};
    std::vector<VarId> vs;
    std::vector<Name> ns;
    boundInClause(raw_[i], vs, ns);
    std::map<VarId, VarId> vr;
    std::map<Name, Name> nr;
    for (VarId v : vs) vr.emplace(v, freshVarLike(v));
    for (Name a : ns) nr.emplace(a, freshNameLike(a));
    std::vector<VarId> scope;
    return focus(renameClauseVars(renameClauseNames(raw_[i], nr), vr), atom, scope);
}

bool Engine::quickClash(const Term& atom, std::size_t i, const Store& s) const {
    if (opts_.raw || opts_.nuGoal) return false;
    const Term& head = clauses_[i].head;
    if (head.args().size() != atom.args().size()) return true;
    for (std::size_t k = 0; k < head.args().size(); ++k) {
        const Term& h = head.args()[k];
        Term a = s.walk(atom.args()[k]);
        auto rigid = [](const Term& t) {
            return t.kind() == TermKind::App || t.kind() == TermKind::Int || t.kind() == TermKind::Char;
        };
        if (!rigid(h) || !rigid(a)) continue;
        if (h.kind() != a.kind()) return true;
        if (h.kind() == TermKind::App && (h.ctor() != a.ctor() || h.args().size() != a.args().size())) return true;
        if (h.kind() != TermKind::App && h.value() != a.value()) return true;
    }
    return false;
}

MachineState Engine::newName(MachineState st, const GoalPtr& g, const GoalList& rest) const {
    // the new name must be fresh for every variable introduced before it;
    // only variables still reachable can be constrained later
    std::set<VarId> live;
    goalVars(g->left, live);
    for (const GoalNode* n = rest.get(); n; n = n->next.get()) goalVars(n->goal, live);
    if (st.roots)
        for (VarId v : *st.roots) live.insert(v);
    for (const auto& s : st.store.suspensions()) {
        for (VarId v : vars(s.lhs)) live.insert(v);
        for (VarId v : vars(s.rhs)) live.insert(v);
    }
    std::set<VarId> unbound;
    for (VarId v : live)
        for (VarId w : vars(st.store.resolve(Term::var(v)))) unbound.insert(w);
    Term a = Term::name(g->name);
    for (VarId v : unbound) st.store.fresh(a, Term::var(v));
    st.goals = push(g->left, rest);
    return st;
}

std::vector<MachineState> Engine::step(const MachineState& s) const {
    std::vector<MachineState> out;
    if (!s.goals) return out;
    const GoalPtr& g = s.goals->goal;
    const GoalList& rest = s.goals->next;
    MachineState base = s;
    base.steps = s.steps + 1;
    switch (g->kind) {
        case GoalKind::True:
            traceLine(Rule9::Top, g, s.store);
            base.goals = rest;
            out.push_back(base);
            break;
        case GoalKind::And:
            traceLine(Rule9::And, g, s.store);
            base.goals = push(g->left, push(g->right, rest));
            out.push_back(base);
            break;
        case GoalKind::Or: {
            traceLine(Rule9::Or1, g, s.store);
            MachineState l = base, r = base;
            l.goals = push(g->left, rest);
            r.goals = push(g->right, rest);
            out.push_back(l);
            traceLine(Rule9::Or2, g, s.store);
            out.push_back(r);
            break;
        }
        case GoalKind::Exists:
            // binders are unique per clause copy, so no renaming is needed
            traceLine(Rule9::Exists, g, s.store);
            base.goals = push(g->left, rest);
            out.push_back(base);
            break;
        case GoalKind::New:
            traceLine(Rule9::New, g, s.store);
            out.push_back(newName(base, g, rest));
            break;
        case GoalKind::Eq:
        case GoalKind::Fresh: {
            traceLine(Rule9::Constraint, g, s.store);
            if (!base.store.add(*g)) break;
            if (!base.store.suspensions().empty() && !base.store.checkSatisfiable()) break;
            base.goals = rest;
            out.push_back(base);
            break;
        }
        case GoalKind::Equiv: throw std::invalid_argument("equivariance goals are not supported by the engine");
        case GoalKind::Atom: {
            auto it = byPred_.find(g->lhs.ctor());
            if (it == byPred_.end()) break;
            for (std::size_t i : it->second) {
                if (quickClash(g->lhs, i, s.store)) continue;
                for (auto& r : residuals(g->lhs, i)) {
                    traceLine(Rule9::Backchain, g, s.store);
                    MachineState n = base;
                    n.goals = push(r, rest);
                    out.push_back(std::move(n));
                }
            }
            break;
        }
    }
    return out;
}

AnswerStream Engine::solve(const Query& q) const {
    AnswerStream st;
    st.engine_ = this;
    st.queryVars_ = q.vars;
    MachineState init;
    init.goals = push(q.goal, nullptr);
    auto roots = std::make_shared<std::vector<VarId>>();
    for (const auto& [n, v] : q.vars) roots->push_back(v);
    // anonymous query variables are free too; ∃-bound ones are not roots
    std::set<VarId> free;
    goalVars(q.goal, free);
    for (VarId v : free)
        if (std::find(roots->begin(), roots->end(), v) == roots->end()) roots->push_back(v);
    init.roots = roots;
    st.stack_.push_back({init, Term(), nullptr, 0});
    return st;
}

void AnswerStream::expand(MachineState st) {
    const Engine& e = *engine_;
    const GoalPtr& g = st.goals->goal;
    if (g->kind == GoalKind::Atom) {
        auto it = e.byPred_.find(g->lhs.ctor());
        if (it == e.byPred_.end()) return;
        stack_.push_back({std::move(st), g->lhs, &it->second, 0});
        return;
    }
    auto succ = e.step(st);
    transitions_ += succ.size();
    for (std::size_t i = succ.size(); i-- > 0;) stack_.push_back({std::move(succ[i]), Term(), nullptr, 0});
}

AnswerStream::Status AnswerStream::next(Answer& out) {
    const Engine& e = *engine_;
    while (!stack_.empty()) {
        Frame f = std::move(stack_.back());
        stack_.pop_back();
        if (f.cands) {
            // try clause f.idx for the atom, keep the rest as a choice point
            if (f.idx + 1 < f.cands->size()) stack_.push_back({f.state, f.atom, f.cands, f.idx + 1});
            std::size_t ci = (*f.cands)[f.idx];
            if (e.quickClash(f.atom, ci, f.state.store)) continue;
            const GoalPtr& g = f.state.goals->goal;
            auto rs = e.residuals(f.atom, ci);
            for (std::size_t k = rs.size(); k-- > 0;) {
                e.traceLine(Rule9::Backchain, g, f.state.store);
                MachineState n = f.state;
                n.steps += 1;
                n.goals = push(rs[k], f.state.goals->next);
                ++transitions_;
                stack_.push_back({std::move(n), Term(), nullptr, 0});
            }
            continue;
        }
        MachineState& st = f.state;
        if (!st.goals) {
            if (!st.store.checkSatisfiable()) continue;
            out = makeAnswer(st.store);
            return Status::Answer;
        }
        if (st.steps >= e.opts_.maxSteps) {
            cut_ = true;
            continue;
        }
        expand(std::move(st));
    }
    return cut_ ? Status::DepthLimit : Status::Exhausted;
}

namespace {

class Renamer {
public:
    explicit Renamer(const std::vector<std::pair<std::string, VarId>>& qv) {
        for (const auto& [n, v] : qv) {
            varText_.emplace(v, n);
            taken_.insert(n);
        }
    }

    std::string var(VarId v) {
        auto it = varText_.find(v);
        if (it != varText_.end()) return it->second;
        return varText_.emplace(v, fresh(varStem(v))).first->second;
    }

    std::string name(Name a) {
        if (!isInternal(a)) return nameStem(a);
        auto it = nameText_.find(a);
        if (it != nameText_.end()) return it->second;
        return nameText_.emplace(a, fresh(nameStem(a))).first->second;
    }

    bool seenVar(VarId v) const { return varText_.count(v) > 0; }
    bool seenName(Name a) const { return !isInternal(a) || nameText_.count(a) > 0; }

    void reserve(const std::string& s) { taken_.insert(s); }

private:
    std::map<VarId, std::string> varText_;
    std::map<Name, std::string> nameText_;
    std::set<std::string> taken_;
    std::map<std::string, int> counters_;

    std::string fresh(const std::string& stem) {
        for (;;) {
            std::string s = stem + "_" + std::to_string(++counters_[stem]);
            if (taken_.insert(s).second) return s;
        }
    }
};

void collectSourceNames(const Term& t, std::set<std::string>& out) {
    for (Name a : allNames(t))
        if (!isInternal(a)) out.insert(nameStem(a));
}

}  // namespace

Answer AnswerStream::makeAnswer(const Store& s) const {
    Answer a;
    a.store = s;
    Renamer ren(queryVars_);
    std::vector<std::pair<std::string, Term>> shown;
    std::set<std::string> sourceNames;
    for (const auto& [n, v] : queryVars_) {
        Term t = s.resolve(Term::var(v));
        a.bindings.emplace_back(n, t);
        collectSourceNames(t, sourceNames);
    }
    for (const auto& n : sourceNames) ren.reserve(n);
    std::function<std::string(Name)> nt = [&](Name x) { return ren.name(x); };
    std::function<std::string(VarId)> vt = [&](VarId x) { return ren.var(x); };
    PrintOptions opts;
    opts.nameText = &nt;
    opts.varText = &vt;
    std::set<VarId> visible;
    for (const auto& [n, v] : queryVars_) visible.insert(v);
    for (const auto& [n, t] : a.bindings) {
        for (VarId v : vars(t)) visible.insert(v);
        if (t.isVar() && t.perm().isIdentity() && ren.var(t.varId()) == n) continue;
        a.lines.push_back(n + " = " + show(t, opts));
    }
    for (const auto& [x, v] : s.freshAtoms()) {
        if (!visible.count(v) || !ren.seenName(x)) continue;
        a.lines.push_back(ren.name(x) + " # " + ren.var(v));
    }
    for (const auto& sp : s.suspensions()) {
        bool touches = false;
        for (const Term* t : {&sp.lhs, &sp.rhs})
            for (VarId v : vars(*t))
                if (visible.count(v)) touches = true;
        if (touches) a.lines.push_back(showSuspension(sp, opts));
    }
    return a;
}

SolveResult solveAll(const Engine& e, const Query& q, std::size_t limit) {
    SolveResult r;
    AnswerStream st = e.solve(q);
    Answer a;
    for (;;) {
        auto status = st.next(a);
        if (status == AnswerStream::Status::Answer) {
            r.answers.push_back(a);
            if (limit && r.answers.size() >= limit) break;
            continue;
        }
        r.depthLimit = status == AnswerStream::Status::DepthLimit;
        break;
    }
    return r;
}

}  // namespace aplog
