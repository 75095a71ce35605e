#include "aplog/syntax.hpp"

namespace aplog {

std::string SourceLoc::str() const {
    return file + ":" + std::to_string(line) + ":" + std::to_string(col);
}

namespace {

GoalPtr mk(GoalKind k) {
    auto g = std::make_shared<Goal>();
    g->kind = k;
    return g;
}

ClausePtr mkD(ClauseKind k) {
    auto d = std::make_shared<Clause>();
    d->kind = k;
    return d;
}

}  // namespace

GoalPtr gTrue() {
    static const GoalPtr t = mk(GoalKind::True);
    return t;
}

GoalPtr gAtom(Term atom) {
    auto g = std::make_shared<Goal>();
    g->kind = GoalKind::Atom;
    g->lhs = std::move(atom);
    return g;
}

GoalPtr gEq(Term t, Term u) {
    auto g = std::make_shared<Goal>();
    g->kind = GoalKind::Eq;
    g->lhs = std::move(t);
    g->rhs = std::move(u);
    return g;
}

GoalPtr gFresh(Term a, Term t) {
    auto g = std::make_shared<Goal>();
    g->kind = GoalKind::Fresh;
    g->lhs = std::move(a);
    g->rhs = std::move(t);
    return g;
}

GoalPtr gEquiv(Term t, Term u) {
    auto g = std::make_shared<Goal>();
    g->kind = GoalKind::Equiv;
    g->lhs = std::move(t);
    g->rhs = std::move(u);
    return g;
}

GoalPtr gAnd(GoalPtr a, GoalPtr b) {
    auto g = std::make_shared<Goal>();
    g->kind = GoalKind::And;
    g->left = std::move(a);
    g->right = std::move(b);
    return g;
}

GoalPtr gOr(GoalPtr a, GoalPtr b) {
    auto g = std::make_shared<Goal>();
    g->kind = GoalKind::Or;
    g->left = std::move(a);
    g->right = std::move(b);
    return g;
}

GoalPtr gExists(VarId x, GoalPtr body) {
    auto g = std::make_shared<Goal>();
    g->kind = GoalKind::Exists;
    g->var = x;
    g->left = std::move(body);
    return g;
}

GoalPtr gNew(Name a, GoalPtr body) {
    auto g = std::make_shared<Goal>();
    g->kind = GoalKind::New;
    g->name = a;
    g->left = std::move(body);
    return g;
}

GoalPtr gConj(const std::vector<GoalPtr>& gs) {
    if (gs.empty()) return gTrue();
    GoalPtr acc = gs.back();
    for (std::size_t i = gs.size() - 1; i-- > 0;) acc = gAnd(gs[i], acc);
    return acc;
}

bool isConstraint(const Goal& g) {
    return g.kind == GoalKind::Eq || g.kind == GoalKind::Fresh || g.kind == GoalKind::Equiv;
}

ClausePtr dTrue() {
    static const ClausePtr t = mkD(ClauseKind::True);
    return t;
}

ClausePtr dAtom(Term atom) {
    auto d = std::make_shared<Clause>();
    d->kind = ClauseKind::Atom;
    d->atom = std::move(atom);
    return d;
}

ClausePtr dAnd(ClausePtr a, ClausePtr b) {
    auto d = std::make_shared<Clause>();
    d->kind = ClauseKind::And;
    d->left = std::move(a);
    d->right = std::move(b);
    return d;
}

ClausePtr dImp(GoalPtr g, ClausePtr body) {
    auto d = std::make_shared<Clause>();
    d->kind = ClauseKind::Imp;
    d->guard = std::move(g);
    d->left = std::move(body);
    return d;
}

ClausePtr dForall(VarId x, ClausePtr body) {
    auto d = std::make_shared<Clause>();
    d->kind = ClauseKind::Forall;
    d->var = x;
    d->left = std::move(body);
    return d;
}

ClausePtr dNew(Name a, ClausePtr body) {
    auto d = std::make_shared<Clause>();
    d->kind = ClauseKind::New;
    d->name = a;
    d->left = std::move(body);
    return d;
}

ClausePtr toClause(const ElaboratedClause& c) {
    ClausePtr d = dAtom(c.head);
    if (c.body && c.body->kind != GoalKind::True) d = dImp(c.body, d);
    for (std::size_t i = c.vars.size(); i-- > 0;) d = dForall(c.vars[i], d);
    for (std::size_t i = c.names.size(); i-- > 0;) d = dNew(c.names[i], d);
    return d;
}

Symbol headPredicate(const Term& atom) { return atom.ctor(); }

GoalPtr substGoal(const GoalPtr& g, const std::map<VarId, Term>& sub) {
    if (sub.empty()) return g;
    switch (g->kind) {
        case GoalKind::True: return g;
        case GoalKind::Atom: return gAtom(substVars(g->lhs, sub));
        case GoalKind::Eq: return gEq(substVars(g->lhs, sub), substVars(g->rhs, sub));
        case GoalKind::Fresh: return gFresh(substVars(g->lhs, sub), substVars(g->rhs, sub));
        case GoalKind::Equiv: return gEquiv(substVars(g->lhs, sub), substVars(g->rhs, sub));
        case GoalKind::And: return gAnd(substGoal(g->left, sub), substGoal(g->right, sub));
        case GoalKind::Or: return gOr(substGoal(g->left, sub), substGoal(g->right, sub));
        case GoalKind::Exists: {
            if (sub.count(g->var)) {
                auto inner = sub;
                inner.erase(g->var);
                return gExists(g->var, substGoal(g->left, inner));
            }
            return gExists(g->var, substGoal(g->left, sub));
        }
        case GoalKind::New: return gNew(g->name, substGoal(g->left, sub));
    }
    return g;
}

GoalPtr renameGoalNames(const GoalPtr& g, const std::map<Name, Name>& ren) {
    if (ren.empty()) return g;
    switch (g->kind) {
        case GoalKind::True: return g;
        case GoalKind::Atom: return gAtom(renameNames(g->lhs, ren));
        case GoalKind::Eq: return gEq(renameNames(g->lhs, ren), renameNames(g->rhs, ren));
        case GoalKind::Fresh: return gFresh(renameNames(g->lhs, ren), renameNames(g->rhs, ren));
        case GoalKind::Equiv: return gEquiv(renameNames(g->lhs, ren), renameNames(g->rhs, ren));
        case GoalKind::And: return gAnd(renameGoalNames(g->left, ren), renameGoalNames(g->right, ren));
        case GoalKind::Or: return gOr(renameGoalNames(g->left, ren), renameGoalNames(g->right, ren));
        case GoalKind::Exists: return gExists(g->var, renameGoalNames(g->left, ren));
        case GoalKind::New: {
            auto it = ren.find(g->name);
            Name a = it == ren.end() ? g->name : it->second;
            return gNew(a, renameGoalNames(g->left, ren));
        }
    }
    return g;
}

ClausePtr substClause(const ClausePtr& d, const std::map<VarId, Term>& sub) {
    if (sub.empty()) return d;
    switch (d->kind) {
        case ClauseKind::True: return d;
        case ClauseKind::Atom: return dAtom(substVars(d->atom, sub));
        case ClauseKind::And: return dAnd(substClause(d->left, sub), substClause(d->right, sub));
        case ClauseKind::Imp: return dImp(substGoal(d->guard, sub), substClause(d->left, sub));
        case ClauseKind::Forall: {
            if (sub.count(d->var)) {
                auto inner = sub;
                inner.erase(d->var);
                return dForall(d->var, substClause(d->left, inner));
            }
            return dForall(d->var, substClause(d->left, sub));
        }
        case ClauseKind::New: return dNew(d->name, substClause(d->left, sub));
    }
    return d;
}

ClausePtr renameClauseNames(const ClausePtr& d, const std::map<Name, Name>& ren) {
    if (ren.empty()) return d;
    switch (d->kind) {
        case ClauseKind::True: return d;
        case ClauseKind::Atom: return dAtom(renameNames(d->atom, ren));
        case ClauseKind::And: return dAnd(renameClauseNames(d->left, ren), renameClauseNames(d->right, ren));
        case ClauseKind::Imp: return dImp(renameGoalNames(d->guard, ren), renameClauseNames(d->left, ren));
        case ClauseKind::Forall: return dForall(d->var, renameClauseNames(d->left, ren));
        case ClauseKind::New: {
            auto it = ren.find(d->name);
            Name a = it == ren.end() ? d->name : it->second;
            return dNew(a, renameClauseNames(d->left, ren));
        }
    }
    return d;
}

namespace {

void fvGoal(const GoalPtr& g, std::set<VarId>& bound, std::set<VarId>& out) {
    auto term = [&](const Term& t) {
        for (VarId v : vars(t))
            if (!bound.count(v)) out.insert(v);
    };
    switch (g->kind) {
        case GoalKind::True: break;
        case GoalKind::Atom: term(g->lhs); break;
        case GoalKind::Eq:
        case GoalKind::Fresh:
        case GoalKind::Equiv:
            term(g->lhs);
            term(g->rhs);
            break;
        case GoalKind::And:
        case GoalKind::Or:
            fvGoal(g->left, bound, out);
            fvGoal(g->right, bound, out);
            break;
        case GoalKind::Exists: {
            bool had = bound.count(g->var);
            bound.insert(g->var);
            fvGoal(g->left, bound, out);
            if (!had) bound.erase(g->var);
            break;
        }
        case GoalKind::New: fvGoal(g->left, bound, out); break;
    }
}

void fnGoal(const GoalPtr& g, std::set<Name>& bound, std::set<Name>& out) {
    auto term = [&](const Term& t) {
        for (Name n : freeNames(t))
            if (!bound.count(n)) out.insert(n);
    };
    switch (g->kind) {
        case GoalKind::True: break;
        case GoalKind::Atom: term(g->lhs); break;
        case GoalKind::Eq:
        case GoalKind::Fresh:
        case GoalKind::Equiv:
            term(g->lhs);
            term(g->rhs);
            break;
        case GoalKind::And:
        case GoalKind::Or:
            fnGoal(g->left, bound, out);
            fnGoal(g->right, bound, out);
            break;
        case GoalKind::Exists: fnGoal(g->left, bound, out); break;
        case GoalKind::New: {
            bool had = bound.count(g->name);
            bound.insert(g->name);
            fnGoal(g->left, bound, out);
            if (!had) bound.erase(g->name);
            break;
        }
    }
}

void fvClause(const ClausePtr& d, std::set<VarId>& bound, std::set<VarId>& out) {
    switch (d->kind) {
        case ClauseKind::True: break;
        case ClauseKind::Atom:
            for (VarId v : vars(d->atom))
                if (!bound.count(v)) out.insert(v);
            break;
        case ClauseKind::And:
            fvClause(d->left, bound, out);
            fvClause(d->right, bound, out);
            break;
        case ClauseKind::Imp:
            fvGoal(d->guard, bound, out);
            fvClause(d->left, bound, out);
            break;
        case ClauseKind::Forall: {
            bool had = bound.count(d->var);
            bound.insert(d->var);
            fvClause(d->left, bound, out);
            if (!had) bound.erase(d->var);
            break;
        }
        case ClauseKind::New: fvClause(d->left, bound, out); break;
    }
}

void fnClause(const ClausePtr& d, std::set<Name>& bound, std::set<Name>& out) {
    switch (d->kind) {
        case ClauseKind::True: break;
        case ClauseKind::Atom:
            for (Name n : freeNames(d->atom))
                if (!bound.count(n)) out.insert(n);
            break;
        case ClauseKind::And:
            fnClause(d->left, bound, out);
            fnClause(d->right, bound, out);
            break;
        case ClauseKind::Imp:
            fnGoal(d->guard, bound, out);
            fnClause(d->left, bound, out);
            break;
        case ClauseKind::Forall: fnClause(d->left, bound, out); break;
        case ClauseKind::New: {
            bool had = bound.count(d->name);
            bound.insert(d->name);
            fnClause(d->left, bound, out);
            if (!had) bound.erase(d->name);
            break;
        }
    }
}

}  // namespace

std::set<VarId> freeVarsGoal(const GoalPtr& g) {
    std::set<VarId> bound, out;
    fvGoal(g, bound, out);
    return out;
}

std::set<Name> freeNamesGoal(const GoalPtr& g) {
    std::set<Name> bound, out;
    fnGoal(g, bound, out);
    return out;
}

std::set<VarId> freeVarsClause(const ClausePtr& d) {
    std::set<VarId> bound, out;
    fvClause(d, bound, out);
    return out;
}

std::set<Name> freeNamesClause(const ClausePtr& d) {
    std::set<Name> bound, out;
    fnClause(d, bound, out);
    return out;
}

namespace {

std::string nameText(Name n, const PrintOptions& o) { return o.nameText ? (*o.nameText)(n) : nameDisplay(n); }
std::string varText(VarId v, const PrintOptions& o) { return o.varText ? (*o.varText)(v) : varDisplay(v); }

// prec: 0 disjunction, 1 conjunction, 2 atomic
void printGoal(const GoalPtr& g, int prec, const PrintOptions& o, std::string& out) {
    switch (g->kind) {
        case GoalKind::True: out += "true"; break;
        case GoalKind::Atom: out += show(g->lhs, o); break;
        case GoalKind::Eq: out += show(g->lhs, o) + " = " + show(g->rhs, o); break;
        case GoalKind::Fresh: out += show(g->lhs, o) + " # " + show(g->rhs, o); break;
        case GoalKind::Equiv: out += show(g->lhs, o) + " ~ " + show(g->rhs, o); break;
        case GoalKind::And:
            if (prec > 1) out += "(";
            printGoal(g->left, 2, o, out);
            out += ", ";
            printGoal(g->right, 1, o, out);
            if (prec > 1) out += ")";
            break;
        case GoalKind::Or:
            if (prec > 0) out += "(";
            printGoal(g->left, 1, o, out);
            out += "; ";
            printGoal(g->right, 0, o, out);
            if (prec > 0) out += ")";
            break;
        case GoalKind::Exists:
        case GoalKind::New: {
            if (prec > 0) out += "(";
            GoalPtr cur = g;
            GoalKind k = g->kind;
            out += k == GoalKind::Exists ? "exists " : "new ";
            bool first = true;
            while (cur->kind == k) {
                if (!first) out += ", ";
                first = false;
                out += k == GoalKind::Exists ? varText(cur->var, o) : nameText(cur->name, o);
                cur = cur->left;
            }
            out += ". ";
            printGoal(cur, 0, o, out);
            if (prec > 0) out += ")";
            break;
        }
    }
}

void printClause(const ClausePtr& d, int prec, const PrintOptions& o, std::string& out) {
    switch (d->kind) {
        case ClauseKind::True: out += "true"; break;
        case ClauseKind::Atom: out += show(d->atom, o); break;
        case ClauseKind::And:
            if (prec > 0) out += "(";
            printClause(d->left, 1, o, out);
            out += " & ";
            printClause(d->right, 0, o, out);
            if (prec > 0) out += ")";
            break;
        case ClauseKind::Imp:
            if (prec > 0) out += "(";
            out += "[";
            printGoal(d->guard, 0, o, out);
            out += "] => ";
            printClause(d->left, 0, o, out);
            if (prec > 0) out += ")";
            break;
        case ClauseKind::Forall:
            if (prec > 0) out += "(";
            out += "forall " + varText(d->var, o) + ". ";
            printClause(d->left, 0, o, out);
            if (prec > 0) out += ")";
            break;
        case ClauseKind::New:
            if (prec > 0) out += "(";
            out += "new " + nameText(d->name, o) + ". ";
            printClause(d->left, 0, o, out);
            if (prec > 0) out += ")";
            break;
    }
}

}  // namespace

std::string showGoal(const GoalPtr& g, const PrintOptions& opts) {
    std::string out;
    printGoal(g, 0, opts, out);
    return out;
}

std::string showClause(const ClausePtr& d, const PrintOptions& opts) {
    std::string out;
    printClause(d, 0, opts, out);
    return out;
}

std::string showElaborated(const ElaboratedClause& c, const PrintOptions& opts) {
    std::string out;
    if (!c.names.empty()) {
        out += "new ";
        for (std::size_t i = 0; i < c.names.size(); ++i) {
            if (i) out += ", ";
            out += nameText(c.names[i], opts);
        }
        out += ". ";
    }
    if (!c.vars.empty()) {
        out += "forall ";
        for (std::size_t i = 0; i < c.vars.size(); ++i) {
            if (i) out += ", ";
            out += varText(c.vars[i], opts);
        }
        out += ". ";
    }
    out += show(c.head, opts);
    if (c.body && c.body->kind != GoalKind::True) {
        out += " :- ";
        printGoal(c.body, 0, opts, out);
    }
    out += ".";
    return out;
}

bool goalEqual(const GoalPtr& a, const GoalPtr& b) {
    if (a == b) return true;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case GoalKind::True: return true;
        case GoalKind::Atom: return a->lhs == b->lhs;
        case GoalKind::Eq:
        case GoalKind::Fresh:
        case GoalKind::Equiv: return a->lhs == b->lhs && a->rhs == b->rhs;
        case GoalKind::And:
        case GoalKind::Or: return goalEqual(a->left, b->left) && goalEqual(a->right, b->right);
        case GoalKind::Exists: return a->var == b->var && goalEqual(a->left, b->left);
        case GoalKind::New: return a->name == b->name && goalEqual(a->left, b->left);
    }
    return false;
}

bool clauseEqual(const ClausePtr& a, const ClausePtr& b) {
    if (a == b) return true;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case ClauseKind::True: return true;
        case ClauseKind::Atom: return a->atom == b->atom;
        case ClauseKind::And: return clauseEqual(a->left, b->left) && clauseEqual(a->right, b->right);
        case ClauseKind::Imp: return goalEqual(a->guard, b->guard) && clauseEqual(a->left, b->left);
        case ClauseKind::Forall: return a->var == b->var && clauseEqual(a->left, b->left);
        case ClauseKind::New: return a->name == b->name && clauseEqual(a->left, b->left);
    }
    return false;
}

}  // namespace aplog
