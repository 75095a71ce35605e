#include "aplog/elaborate.hpp"

#include <algorithm>
#include <stdexcept>

namespace aplog {

const char* ruleName(Rule r) {
    switch (r) {
        case Rule::ImpTrue: return "imp-true";
        case Rule::AndTrueR: return "and-true-r";
        case Rule::AndTrueL: return "and-true-l";
        case Rule::ForallTrue: return "forall-true";
        case Rule::NewTrue: return "new-true";
        case Rule::ImpImp: return "imp-imp";
        case Rule::ImpAnd: return "imp-and";
        case Rule::ImpForall: return "imp-forall";
        case Rule::ImpNew: return "imp-new";
        case Rule::ForallAnd: return "forall-and";
        case Rule::NewAnd: return "new-and";
        case Rule::ForallNew: return "forall-new";
        case Rule::SplitAnd: return "split-and";
        case Rule::DropTrue: return "drop-true";
    }
    return "?";
}

namespace {

bool isTrue(const ClausePtr& d) { return d->kind == ClauseKind::True; }

// Root rule that applies to d, if any. Order follows the Rule enum.
std::optional<Rule> rootRule(const ClausePtr& d) {
    switch (d->kind) {
        case ClauseKind::Imp: {
            const ClausePtr& b = d->left;
            switch (b->kind) {
                case ClauseKind::True: return Rule::ImpTrue;
                case ClauseKind::Imp: return Rule::ImpImp;
                case ClauseKind::And: return Rule::ImpAnd;
                case ClauseKind::Forall: return Rule::ImpForall;
                case ClauseKind::New: return Rule::ImpNew;
                default: return std::nullopt;
            }
        }
        case ClauseKind::And:
            if (isTrue(d->right)) return Rule::AndTrueR;
            if (isTrue(d->left)) return Rule::AndTrueL;
            return std::nullopt;
        case ClauseKind::Forall:
            switch (d->left->kind) {
                case ClauseKind::True: return Rule::ForallTrue;
                case ClauseKind::And: return Rule::ForallAnd;
                case ClauseKind::New: return Rule::ForallNew;
                default: return std::nullopt;
            }
        case ClauseKind::New:
            if (isTrue(d->left)) return Rule::NewTrue;
            if (d->left->kind == ClauseKind::And) return Rule::NewAnd;
            return std::nullopt;
        default: return std::nullopt;
    }
}

ClausePtr applyRoot(const ClausePtr& d, Rule r) {
    switch (r) {
        case Rule::ImpTrue:
        case Rule::ForallTrue:
        case Rule::NewTrue: return dTrue();
        case Rule::AndTrueR: return d->left;
        case Rule::AndTrueL: return d->right;
        case Rule::ImpImp: return dImp(gAnd(d->guard, d->left->guard), d->left->left);
        case Rule::ImpAnd: return dAnd(dImp(d->guard, d->left->left), dImp(d->guard, d->left->right));
        case Rule::ImpForall: {
            VarId x = d->left->var;
            ClausePtr body = d->left->left;
            if (freeVarsGoal(d->guard).count(x)) {
                VarId y = freshVarLike(x);
                body = substClause(body, {{x, Term::var(y)}});
                x = y;
            }
            return dForall(x, dImp(d->guard, body));
        }
        case Rule::ImpNew: {
            Name a = d->left->name;
            ClausePtr body = d->left->left;
            if (freeNamesGoal(d->guard).count(a)) {
                Name b = freshNameLike(a);
                body = renameClauseNames(body, {{a, b}});
                a = b;
            }
            return dNew(a, dImp(d->guard, body));
        }
        case Rule::ForallAnd: {
            VarId x = d->var;
            return dAnd(dForall(x, d->left->left), dForall(x, d->left->right));
        }
        case Rule::NewAnd: {
            Name a = d->name;
            return dAnd(dNew(a, d->left->left), dNew(a, d->left->right));
        }
        case Rule::ForallNew: {
            VarId x = d->var;
            Name a = d->left->name;
            ClausePtr body = d->left->left;
            return dNew(a, dForall(x, dImp(gFresh(Term::name(a), Term::var(x)), body)));
        }
        case Rule::SplitAnd:
        case Rule::DropTrue: break;
    }
    throw std::logic_error("program-level rule applied to a clause");
}

std::size_t count(const ClausePtr& d) {
    std::size_t n = rootRule(d) ? 1 : 0;
    switch (d->kind) {
        case ClauseKind::And: return n + count(d->left) + count(d->right);
        case ClauseKind::Imp:
        case ClauseKind::Forall:
        case ClauseKind::New: return n + count(d->left);
        default: return n;
    }
}

ClausePtr rebuild(const ClausePtr& d, ClausePtr left, ClausePtr right) {
    switch (d->kind) {
        case ClauseKind::And: return dAnd(std::move(left), std::move(right));
        case ClauseKind::Imp: return dImp(d->guard, std::move(left));
        case ClauseKind::Forall: return dForall(d->var, std::move(left));
        case ClauseKind::New: return dNew(d->name, std::move(left));
        default: return d;
    }
}

std::optional<ClausePtr> rewriteK(const ClausePtr& d, std::size_t& k, Rule* applied) {
    if (auto r = rootRule(d)) {
        if (k == 0) {
            if (applied) *applied = *r;
            return applyRoot(d, *r);
        }
        --k;
    }
    switch (d->kind) {
        case ClauseKind::And: {
            if (auto l = rewriteK(d->left, k, applied)) return rebuild(d, *l, d->right);
            if (auto r = rewriteK(d->right, k, applied)) return rebuild(d, d->left, *r);
            return std::nullopt;
        }
        case ClauseKind::Imp:
        case ClauseKind::Forall:
        case ClauseKind::New:
            if (auto l = rewriteK(d->left, k, applied)) return rebuild(d, *l, nullptr);
            return std::nullopt;
        default: return std::nullopt;
    }
}

}  // namespace

std::size_t countRedexes(const ClausePtr& d) { return count(d); }

std::optional<ClausePtr> rewriteAt(const ClausePtr& d, std::size_t k, Rule* applied) {
    return rewriteK(d, k, applied);
}

bool isNormalProgram(const std::vector<ClausePtr>& prog) {
    for (const auto& d : prog)
        if (isTrue(d) || d->kind == ClauseKind::And || count(d) > 0) return false;
    return true;
}

std::vector<ClausePtr> normalizeProgram(std::vector<ClausePtr> prog, std::mt19937* rng, std::size_t* steps) {
    std::size_t n = 0;
    for (;;) {
        // every available step: program-level ones first, then clause redexes
        std::vector<std::pair<std::size_t, std::size_t>> moves;  // (clause, redex or npos)
        constexpr std::size_t prog_level = static_cast<std::size_t>(-1);
        for (std::size_t i = 0; i < prog.size(); ++i) {
            if (isTrue(prog[i]) || prog[i]->kind == ClauseKind::And) moves.emplace_back(i, prog_level);
            std::size_t c = count(prog[i]);
            for (std::size_t k = 0; k < c; ++k) moves.emplace_back(i, k);
            if (!rng && !moves.empty()) break;
        }
        if (moves.empty()) break;
        auto [i, k] = rng ? moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(*rng)] : moves[0];
        if (k == prog_level) {
            ClausePtr d = prog[i];
            prog.erase(prog.begin() + static_cast<std::ptrdiff_t>(i));
            if (d->kind == ClauseKind::And) {
                prog.insert(prog.begin() + static_cast<std::ptrdiff_t>(i), d->right);
                prog.insert(prog.begin() + static_cast<std::ptrdiff_t>(i), d->left);
            }
        } else {
            prog[i] = *rewriteAt(prog[i], k);
        }
        ++n;
    }
    if (steps) *steps = n;
    return prog;
}

ElaboratedClause fromNormal(const ClausePtr& clause) {
    ElaboratedClause c;
    ClausePtr d = clause;
    while (d->kind == ClauseKind::New) {
        c.names.push_back(d->name);
        d = d->left;
    }
    while (d->kind == ClauseKind::Forall) {
        c.vars.push_back(d->var);
        d = d->left;
    }
    c.body = gTrue();
    if (d->kind == ClauseKind::Imp) {
        c.body = d->guard;
        d = d->left;
    }
    if (d->kind != ClauseKind::Atom) throw std::invalid_argument("clause is not in normal form: " + showClause(clause));
    c.head = d->atom;
    return c;
}

std::vector<ElaboratedClause> elaborate(const std::vector<ClausePtr>& prog) {
    std::vector<ElaboratedClause> out;
    for (const auto& d : normalizeProgram(prog)) out.push_back(fromNormal(d));
    return out;
}

namespace {

void conjuncts(const GoalPtr& g, std::vector<GoalPtr>& out) {
    if (g->kind == GoalKind::And) {
        conjuncts(g->left, out);
        conjuncts(g->right, out);
    } else if (g->kind != GoalKind::True) {
        out.push_back(g);
    }
}

}  // namespace

std::string canonicalKey(const ElaboratedClause& c) {
    std::map<Name, std::string> nt;
    std::map<VarId, std::string> vt;
    for (std::size_t i = 0; i < c.names.size(); ++i) nt.emplace(c.names[i], "n" + std::to_string(i));
    for (std::size_t i = 0; i < c.vars.size(); ++i) vt.emplace(c.vars[i], "V" + std::to_string(i));
    std::function<std::string(Name)> nameText = [&](Name a) {
        auto it = nt.find(a);
        return it == nt.end() ? nameDisplay(a) : it->second;
    };
    std::function<std::string(VarId)> varText = [&](VarId x) {
        auto it = vt.find(x);
        return it == vt.end() ? varDisplay(x) : it->second;
    };
    PrintOptions opts;
    opts.nameText = &nameText;
    opts.varText = &varText;
    std::vector<GoalPtr> parts;
    conjuncts(c.body, parts);
    std::vector<std::string> keys;
    for (const auto& g : parts) keys.push_back(showGoal(g, opts));
    std::sort(keys.begin(), keys.end());
    std::string out = std::to_string(c.names.size()) + "/" + std::to_string(c.vars.size()) + " " + show(c.head, opts);
    for (const auto& k : keys) out += " | " + k;
    return out;
}

// ---- ν-goal analysis

bool isNuGoal(const ClausePtr& d) {
    switch (d->kind) {
        case ClauseKind::New: return false;
        case ClauseKind::And: return isNuGoal(d->left) && isNuGoal(d->right);
        case ClauseKind::Imp:
        case ClauseKind::Forall: return isNuGoal(d->left);
        default: return true;
    }
}

bool isNuGoal(const ElaboratedClause& c) { return c.names.empty(); }

ClausePtr nuGoalTranslate(const ElaboratedClause& c) {
    std::vector<VarId> zs;
    std::vector<GoalPtr> eqs;
    std::vector<Term> zargs;
    for (const auto& t : c.head.args()) {
        NameTypeId nt = t.isName() ? t.nameValue().type : t.isVar() ? varNameType(t.varId()) : 0;
        VarId z = freshVar("Z", nt);
        zs.push_back(z);
        zargs.push_back(Term::var(z));
        eqs.push_back(gEq(t, Term::var(z)));
    }
    if (c.body && c.body->kind != GoalKind::True) eqs.push_back(c.body);
    GoalPtr g = gConj(eqs.empty() ? std::vector<GoalPtr>{gTrue()} : eqs);
    for (std::size_t i = c.vars.size(); i-- > 0;) g = gExists(c.vars[i], g);
    for (std::size_t i = c.names.size(); i-- > 0;) g = gNew(c.names[i], g);
    ClausePtr d = dImp(g, dAtom(Term::app(c.head.ctor(), zargs)));
    for (std::size_t i = zs.size(); i-- > 0;) d = dForall(zs[i], d);
    return d;
}

namespace {

// Occurrences of a and of variables in t, split by whether they sit
// under some abstraction binding a.
struct Scan {
    bool nameOutside = false;
    std::set<VarId> inside, outside;
};

void scan(const Term& t, Name a, bool under, Scan& s) {
    switch (t.kind()) {
        case TermKind::Name:
            if (!under && t.nameValue() == a) s.nameOutside = true;
            break;
        case TermKind::Var:
            (under ? s.inside : s.outside).insert(t.varId());
            if (!under && !t.perm().isIdentity() && t.perm().apply(a) != a) s.nameOutside = true;
            break;
        case TermKind::Abs: {
            const Term& b = t.binder();
            bool binds = b.isName() && b.nameValue() == a;
            if (!binds) scan(b, a, under, s);
            scan(t.body(), a, under || binds, s);
            break;
        }
        case TermKind::App:
            for (const auto& x : t.args()) scan(x, a, under, s);
            break;
        default: break;
    }
}

bool mentionsFree(const Term& t, Name a) {
    Scan s;
    scan(t, a, false, s);
    return s.nameOutside;
}

}  // namespace

std::optional<std::string> incompletenessReason(const ElaboratedClause& c) {
    std::vector<GoalPtr> parts;
    conjuncts(c.body, parts);
    for (Name a : c.names) {
        Scan s;
        scan(c.head, a, false, s);
        std::string an = nameDisplay(a);
        if (s.nameOutside) return "new-name " + an + " occurs unabstracted in the head";
        for (VarId x : s.inside) {
            if (!s.outside.count(x)) continue;
            bool guarded = false;
            for (const auto& g : parts)
                if (g->kind == GoalKind::Fresh && g->lhs.isName() && g->lhs.nameValue() == a && occurs(x, g->rhs))
                    guarded = true;
            if (!guarded)
                return "variable " + varStem(x) + " occurs both inside and outside the scope of " + an +
                       " in the head without a freshness guard";
        }
        for (const auto& g : parts) {
            if (g->kind != GoalKind::Eq) continue;
            auto check = [&](const Term& l, const Term& r) {
                return l.isVar() && s.outside.count(l.varId()) && mentionsFree(r, a);
            };
            if (check(g->lhs, g->rhs) || check(g->rhs, g->lhs))
                return "a head variable is equated to a term mentioning new-name " + an;
        }
    }
    return std::nullopt;
}

std::vector<Diagnostic> warnIncomplete(const std::vector<ElaboratedClause>& prog) {
    std::vector<Diagnostic> out;
    for (const auto& c : prog) {
        if (isNuGoal(c)) continue;
        if (auto why = incompletenessReason(c))
            out.push_back({c.loc, "clause for " + symbolText(c.head.ctor()) +
                                      " may be incomplete under resolution by alpha-equality: " + *why});
    }
    return out;
}

}  // namespace aplog
