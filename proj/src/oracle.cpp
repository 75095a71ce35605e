#include <algorithm>

#include "aplog/oracle.hpp"

namespace aplog {

namespace {

void literals(const Term& t, std::vector<std::int64_t>& ints, std::vector<std::int64_t>& chars) {
    switch (t.kind()) {
        case TermKind::Int: ints.push_back(t.value()); break;
        case TermKind::Char: chars.push_back(t.value()); break;
        case TermKind::Abs:
            literals(t.binder(), ints, chars);
            literals(t.body(), ints, chars);
            break;
        case TermKind::App:
            for (const auto& a : t.args()) literals(a, ints, chars);
            break;
        default: break;
    }
}

void literals(const GoalPtr& g, std::vector<std::int64_t>& ints, std::vector<std::int64_t>& chars) {
    if (!g) return;
    switch (g->kind) {
        case GoalKind::Atom: literals(g->lhs, ints, chars); break;
        case GoalKind::Eq:
        case GoalKind::Fresh:
        case GoalKind::Equiv:
            literals(g->lhs, ints, chars);
            literals(g->rhs, ints, chars);
            break;
        case GoalKind::And:
        case GoalKind::Or:
            literals(g->left, ints, chars);
            literals(g->right, ints, chars);
            break;
        case GoalKind::Exists:
        case GoalKind::New: literals(g->left, ints, chars); break;
        default: break;
    }
}

Universe makeUniverse(const Program& prog, const OracleConfig& cfg) {
    std::vector<std::int64_t> ints, chars;
    for (const auto& c : prog.clauses) {
        literals(c.head, ints, chars);
        literals(c.body, ints, chars);
    }
    return Universe(prog.sig, cfg.depth, cfg.pool, ints, chars);
}

using Theta = Oracle::Theta;
using K = std::function<bool(const Theta&)>;

Term applyTheta(const Term& t, const Theta& th) { return th.empty() || t.ground() ? t : substVars(t, th); }

// Matches an open pattern against a ground term. Binder variables range
// over the name pool.
bool match(const Term& p, const Term& g, const Theta& th, const Universe& u, const K& k);

bool matchArgs(const std::vector<Term>& ps, const std::vector<Term>& gs, std::size_t i, const Theta& th,
               const Universe& u, const K& k) {
    if (i == ps.size()) return k(th);
    return match(ps[i], gs[i], th, u, [&](const Theta& t2) { return matchArgs(ps, gs, i + 1, t2, u, k); });
}

bool match(const Term& p0, const Term& g, const Theta& th, const Universe& u, const K& k) {
    Term p = applyTheta(p0, th);
    if (p.ground()) return alphaEq(p, g) ? k(th) : false;
    switch (p.kind()) {
        case TermKind::Var: {
            Theta t2 = th;
            t2[p.varId()] = permute(p.perm().inverse(), g);
            return k(t2);
        }
        case TermKind::App:
            if (!g.isApp() || g.ctor() != p.ctor() || g.args().size() != p.args().size()) return false;
            return matchArgs(p.args(), g.args(), 0, th, u, k);
        case TermKind::Abs: {
            if (!g.isAbs()) return false;
            Name b = g.binder().nameValue();
            auto withBinder = [&](Name a, const Theta& t2) {
                if (a == b) return match(p.body(), g.body(), t2, u, k);
                if (!freshFor(a, g)) return false;
                return match(p.body(), swap(a, b, g.body()), t2, u, k);
            };
            if (p.binder().isName()) return withBinder(p.binder().nameValue(), th);
            const Term& bv = p.binder();
            for (Name c : u.pool(b.type)) {
                Theta t2 = th;
                t2[bv.varId()] = Term::name(bv.perm().applyInverse(c));
                // re-apply so the body sees the binder choice
                Term body = applyTheta(p.body(), t2);
                if (c == b) {
                    if (match(body, g.body(), t2, u, k)) return true;
                } else if (freshFor(c, g)) {
                    if (match(body, swap(c, b, g.body()), t2, u, k)) return true;
                }
            }
            return false;
        }
        default: return false;
    }
}

void flatten(const GoalPtr& g, std::vector<GoalPtr>& out) {
    switch (g->kind) {
        case GoalKind::True: break;
        case GoalKind::And:
            flatten(g->left, out);
            flatten(g->right, out);
            break;
        case GoalKind::Exists: flatten(g->left, out); break;
        default: out.push_back(g);
    }
}

std::vector<Name> goalNames(const GoalPtr& g, const Theta& th) {
    std::vector<Name> out;
    std::function<void(const GoalPtr&)> go = [&](const GoalPtr& h) {
        switch (h->kind) {
            case GoalKind::Atom:
                for (Name a : allNames(applyTheta(h->lhs, th))) out.push_back(a);
                break;
            case GoalKind::Eq:
            case GoalKind::Fresh:
            case GoalKind::Equiv:
                for (Name a : allNames(applyTheta(h->lhs, th))) out.push_back(a);
                for (Name a : allNames(applyTheta(h->rhs, th))) out.push_back(a);
                break;
            case GoalKind::And:
            case GoalKind::Or:
                go(h->left);
                go(h->right);
                break;
            case GoalKind::Exists: go(h->left); break;
            case GoalKind::New:
                out.push_back(h->name);
                go(h->left);
                break;
            default: break;
        }
    };
    go(g);
    return out;
}

void goalVarsOpen(const GoalPtr& h, const Theta& th, std::set<VarId>& out) {
    switch (h->kind) {
        case GoalKind::Atom:
            for (VarId v : vars(applyTheta(h->lhs, th))) out.insert(v);
            break;
        case GoalKind::Eq:
        case GoalKind::Fresh:
        case GoalKind::Equiv:
            for (VarId v : vars(applyTheta(h->lhs, th))) out.insert(v);
            for (VarId v : vars(applyTheta(h->rhs, th))) out.insert(v);
            break;
        case GoalKind::And:
        case GoalKind::Or:
            goalVarsOpen(h->left, th, out);
            goalVarsOpen(h->right, th, out);
            break;
        case GoalKind::Exists:
        case GoalKind::New: goalVarsOpen(h->left, th, out); break;
        default: break;
    }
}

}  // namespace

Oracle::Oracle(const Program& prog, OracleConfig cfg)
    : prog_(prog), cfg_(cfg), universe_(makeUniverse(prog, cfg)) {
    monomorphise();
}

void Oracle::monomorphise() {
    std::vector<std::pair<Symbol, std::vector<Type>>> work;
    for (const auto& [p, d] : prog_.sig.preds)
        if (std::all_of(d.args.begin(), d.args.end(), closedType)) work.emplace_back(p, d.args);
    while (!work.empty()) {
        auto item = work.back();
        work.pop_back();
        if (!preds_.insert(item).second) continue;
        for (const auto& c : prog_.clauses) {
            if (c.head.ctor() != item.first) continue;
            TypeSubst s;
            bool ok = c.headArgTypes.size() == item.second.size();
            for (std::size_t i = 0; ok && i < item.second.size(); ++i) ok = matchType(c.headArgTypes[i], item.second[i], s);
            if (!ok) throw OracleError(c.loc.str() + ": clause head does not match predicate type");
            Instance inst{&c, {}, item.second};
            for (const auto& [v, t] : c.varTypes) {
                Type vt = applySubst(s, t);
                if (!closedType(vt))
                    throw OracleError(c.loc.str() + ": cannot monomorphise variable " + varDisplay(v) + " of type " +
                                      showType(vt));
                inst.varTypes.emplace(v, vt);
            }
            for (const auto& cs : c.calls) {
                std::vector<Type> ts;
                for (const auto& t : cs.argTypes) {
                    Type ct = applySubst(s, t);
                    if (!closedType(ct))
                        throw OracleError(c.loc.str() + ": cannot monomorphise call to " + symbolText(cs.pred));
                    ts.push_back(ct);
                }
                work.emplace_back(cs.pred, std::move(ts));
            }
            instances_.push_back(std::move(inst));
        }
    }
}

bool Oracle::solve(std::vector<GoalPtr> todo0, Theta th, const std::map<VarId, Type>& types, const AtomSet& s,
                   const std::function<bool(const Theta&)>& k) const {
    std::vector<GoalPtr> todo;
    for (const auto& g : todo0) flatten(g, todo);
    if (todo.empty()) return k(th);
    auto without = [&](std::size_t i) {
        std::vector<GoalPtr> r = todo;
        r.erase(r.begin() + static_cast<std::ptrdiff_t>(i));
        return r;
    };
    // ground constraints filter first
    for (std::size_t i = 0; i < todo.size(); ++i) {
        const GoalPtr& g = todo[i];
        if (g->kind != GoalKind::Eq && g->kind != GoalKind::Fresh) continue;
        Term l = applyTheta(g->lhs, th), r = applyTheta(g->rhs, th);
        if (!l.ground() || !r.ground()) continue;
        bool holds = g->kind == GoalKind::Eq ? alphaEq(l, r) : freshFor(l.nameValue(), r);
        if (!holds) return false;
        return solve(without(i), th, types, s, k);
    }
    // equations with one ground side are matched
    for (std::size_t i = 0; i < todo.size(); ++i) {
        const GoalPtr& g = todo[i];
        if (g->kind != GoalKind::Eq) continue;
        Term l = applyTheta(g->lhs, th), r = applyTheta(g->rhs, th);
        if (!l.ground() && !r.ground()) continue;
        const Term& pat = l.ground() ? r : l;
        const Term& gr = l.ground() ? l : r;
        auto rest = without(i);
        return match(pat, gr, th, universe_, [&](const Theta& t2) { return solve(rest, t2, types, s, k); });
    }
    for (std::size_t i = 0; i < todo.size(); ++i) {
        const GoalPtr& g = todo[i];
        if (g->kind != GoalKind::New) continue;
        // wait until the goal is ground: any pool name fresh for it then
        // serves as the witness, and running out of names is an error
        // rather than a silent miss
        std::set<VarId> open;
        goalVarsOpen(g, th, open);
        if (!open.empty()) continue;
        std::vector<Name> used = goalNames(g->left, th);
        std::optional<Name> pick;
        for (Name b : universe_.pool(g->name.type))
            if (std::find(used.begin(), used.end(), b) == used.end()) {
                pick = b;
                break;
            }
        if (!pick)
            throw OracleError("name pool of " + symbolText(g->name.type) + " exhausted by a new-quantified goal");
        auto rest = without(i);
        rest.push_back(renameGoalNames(g->left, {{g->name, *pick}}));
        return solve(rest, th, types, s, k);
    }
    for (std::size_t i = 0; i < todo.size(); ++i) {
        const GoalPtr& g = todo[i];
        if (g->kind != GoalKind::Atom) continue;
        Term a = applyTheta(g->lhs, th);
        auto rest = without(i);
        if (a.ground()) return s.contains(a) ? solve(rest, th, types, s, k) : false;
        for (const auto& fact : s.withPredicate(a.ctor()))
            if (match(a, fact, th, universe_, [&](const Theta& t2) { return solve(rest, t2, types, s, k); }))
                return true;
        return false;
    }
    for (std::size_t i = 0; i < todo.size(); ++i) {
        const GoalPtr& g = todo[i];
        if (g->kind != GoalKind::Or) continue;
        auto l = without(i), r = without(i);
        l.push_back(g->left);
        r.push_back(g->right);
        return solve(l, th, types, s, k) || solve(r, th, types, s, k);
    }
    if (todo[0]->kind == GoalKind::Equiv) {
        // only ground equivariance is decidable here
        for (std::size_t i = 0; i < todo.size(); ++i) {
            Term l = applyTheta(todo[i]->lhs, th), r = applyTheta(todo[i]->rhs, th);
            if (todo[i]->kind == GoalKind::Equiv && l.ground() && r.ground())
                return groundEquivariant(l, r) ? solve(without(i), th, types, s, k) : false;
        }
    }
    // nothing is ready: enumerate one variable over the universe
    std::set<VarId> open;
    goalVarsOpen(todo[0], th, open);
    for (const auto& g : todo)
        if (open.empty()) goalVarsOpen(g, th, open);
    if (open.empty()) throw OracleError("oracle: stuck goal " + showGoal(todo[0]));
    VarId x = *open.begin();
    auto it = types.find(x);
    if (it == types.end()) throw OracleError("oracle: no type for variable " + varDisplay(x));
    for (const auto& v : universe_.terms(it->second)) {
        Theta t2 = th;
        t2[x] = v;
        if (solve(todo, t2, types, s, k)) return true;
    }
    return false;
}

AtomSet Oracle::tStepClause(const Instance& inst, const AtomSet& s) const {
    const ElaboratedClause& c = *inst.clause;
    std::map<Name, Name> ren;
    std::map<NameTypeId, std::size_t> next;
    for (Name a : c.names) {
        const auto& pool = universe_.pool(a.type);
        std::size_t& i = next[a.type];
        if (i >= pool.size())
            throw OracleError(c.loc.str() + ": name pool of " + symbolText(a.type) + " too small for the clause");
        ren.emplace(a, pool[i++]);
    }
    Term head = renameNames(c.head, ren);
    GoalPtr body = c.body ? renameGoalNames(c.body, ren) : gTrue();
    AtomSet out;
    solve({body}, {}, inst.varTypes, s, [&](const Theta& th) {
        Term h = applyTheta(head, th);
        // remaining depth per open variable; a bound part that is already
        // too deep rules the solution out
        std::map<VarId, std::size_t> budget;
        std::function<bool(const Term&, std::size_t)> fits = [&](const Term& t, std::size_t b) {
            switch (t.kind()) {
                case TermKind::Var: {
                    auto [it, fresh] = budget.emplace(t.varId(), b);
                    if (!fresh) it->second = std::min(it->second, b);
                    return true;
                }
                case TermKind::Abs: return b > 0 && fits(t.binder(), b - 1) && fits(t.body(), b - 1);
                case TermKind::App:
                    if (t.args().empty()) return true;
                    if (b == 0) return false;
                    for (const auto& a : t.args())
                        if (!fits(a, b - 1)) return false;
                    return true;
                default: return true;
            }
        };
        for (const auto& a : h.args())
            if (!fits(a, universe_.depth())) return false;
        std::vector<VarId> open;
        for (VarId v : vars(h)) open.push_back(v);
        std::function<void(std::size_t, const Theta&)> fill = [&](std::size_t i, const Theta& t2) {
            if (i == open.size()) {
                Term g = applyTheta(head, t2);
                for (std::size_t j = 0; j < g.args().size(); ++j)
                    if (!universe_.contains(inst.argTypes[j], g.args()[j])) return;
                out.insert(g);
                return;
            }
            auto it = inst.varTypes.find(open[i]);
            if (it == inst.varTypes.end()) throw OracleError("oracle: no type for head variable");
            for (const auto& v : universe_.terms(it->second, budget.at(open[i]))) {
                Theta t3 = t2;
                t3[open[i]] = v;
                fill(i + 1, t3);
            }
        };
        fill(0, th);
        return false;
    });
    return out;
}

AtomSet Oracle::equivariantClosure(const AtomSet& s) const {
    AtomSet out;
    auto perms = universe_.poolPermutations();
    for (const auto& a : s.atoms())
        for (const auto& pi : perms) out.insert(permute(pi, a));
    return out;
}

AtomSet Oracle::tStep(const AtomSet& s) const {
    AtomSet next = s;
    for (const auto& inst : instances_)
        for (const auto& a : tStepClause(inst, s).atoms()) next.insert(a);
    return equivariantClosure(next);
}

AtomSet Oracle::fixpoint(std::size_t* iterations) const {
    AtomSet cur;
    for (std::size_t i = 0; i < cfg_.maxIter; ++i) {
        AtomSet nxt = tStep(cur);
        if (nxt.size() == cur.size()) {
            if (iterations) *iterations = i + 1;
            return cur;
        }
        cur = std::move(nxt);
    }
    throw OracleError("fixpoint did not converge within " + std::to_string(cfg_.maxIter) + " iterations");
}

bool Oracle::satisfies(const AtomSet& s, const GoalPtr& g, const Theta& theta,
                       const std::map<VarId, Type>& types) const {
    return solve({g}, theta, types, s, [](const Theta&) { return true; });
}

std::vector<Term> Oracle::base() const {
    std::vector<Term> out;
    for (const auto& [p, ts] : preds_) {
        std::vector<const std::vector<Term>*> choices;
        for (const auto& t : ts) choices.push_back(&universe_.terms(t));
        if (std::any_of(choices.begin(), choices.end(), [](auto* v) { return v->empty(); })) continue;
        std::vector<std::size_t> idx(choices.size(), 0);
        for (;;) {
            std::vector<Term> args;
            for (std::size_t i = 0; i < idx.size(); ++i) args.push_back((*choices[i])[idx[i]]);
            out.push_back(Term::app(p, std::move(args)));
            std::size_t k = idx.size();
            while (k-- > 0) {
                if (++idx[k] < choices[k]->size()) break;
                idx[k] = 0;
            }
            if (k == static_cast<std::size_t>(-1)) break;
        }
    }
    return out;
}

std::vector<std::string> Oracle::render(const AtomSet& s) {
    std::vector<std::pair<std::string, std::string>> rows;
    for (const auto& a : s.atoms()) rows.emplace_back(symbolText(a.ctor()), show(a));
    std::sort(rows.begin(), rows.end());
    std::vector<std::string> out;
    for (auto& r : rows) out.push_back(std::move(r.second));
    return out;
}

}  // namespace aplog
