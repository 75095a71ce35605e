#include "aplog/typecheck.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "aplog/elaborate.hpp"
#include "aplog/error.hpp"

namespace aplog {

bool Signature::isNameType(Symbol s) const {
    auto it = typeCons.find(s);
    return it != typeCons.end() && it->second.nameType;
}

bool Signature::isNameType(const Type& t) const { return !t.isVar() && t.args().empty() && isNameType(t.con()); }

std::vector<const CtorInfo*> Signature::constructorsOf(Symbol c) const {
    std::vector<const CtorInfo*> out;
    for (const auto& [sym, info] : ctors)
        if (!info.result.isVar() && info.result.con() == c) out.push_back(&info);
    return out;
}

namespace {

bool isRigid(const Type& t) { return !t.isVar() && symbolText(t.con()).starts_with("'"); }

Type convertType(const Signature& sig, const STypePtr& st, std::map<std::string, Type>& tvars, bool allowNew) {
    switch (st->kind) {
        case SType::Kind::Var: {
            auto it = tvars.find(st->text);
            if (it != tvars.end()) return it->second;
            if (!allowNew) throw LoadError(st->loc, "unbound type variable " + st->text);
            Type v = Type::freshVar();
            tvars.emplace(st->text, v);
            return v;
        }
        case SType::Kind::List: return Type::con(tyList(), {convertType(sig, st->args[0], tvars, allowNew)});
        case SType::Kind::Prod: {
            Type acc = convertType(sig, st->args.back(), tvars, allowNew);
            for (std::size_t i = st->args.size() - 1; i-- > 0;)
                acc = Type::con(tyProd(), {convertType(sig, st->args[i], tvars, allowNew), acc});
            return acc;
        }
        case SType::Kind::Abs: {
            Type n = convertType(sig, st->args[0], tvars, allowNew);
            if (!sig.isNameType(n))
                throw LoadError(st->args[0]->loc, "abstraction type needs a name type on the left, found " + showType(n));
            return Type::con(tyAbs(), {n, convertType(sig, st->args[1], tvars, allowNew)});
        }
        case SType::Kind::Arrow: throw LoadError(st->loc, "function type not allowed here");
        case SType::Kind::Con: break;
    }
    std::vector<Type> args;
    for (const auto& a : st->args) args.push_back(convertType(sig, a, tvars, allowNew));
    const std::string& n = st->text;
    auto arity = [&](std::size_t k) {
        if (args.size() != k)
            throw LoadError(st->loc, "type constructor " + n + " expects " + std::to_string(k) + " argument(s)");
    };
    if (n == "int") return arity(0), Type::con(tyInt());
    if (n == "char") return arity(0), Type::con(tyChar());
    if (n == "o") return arity(0), Type::con(tyProp());
    if (n == "unit") return arity(0), Type::con(tyUnitT());
    if (n == "list") return arity(1), Type::con(tyList(), args);
    Symbol s = intern(n);
    if (auto it = sig.abbrevs.find(s); it != sig.abbrevs.end()) {
        arity(it->second.params.size());
        TypeSubst sub;
        for (std::size_t i = 0; i < args.size(); ++i) sub.emplace(it->second.params[i], args[i]);
        return applySubst(sub, it->second.body);
    }
    auto it = sig.typeCons.find(s);
    if (it == sig.typeCons.end()) throw LoadError(st->loc, "unknown type " + n);
    arity(it->second.paramNameType.size());
    for (std::size_t i = 0; i < args.size(); ++i)
        if (it->second.paramNameType[i] && !sig.isNameType(args[i]) && !args[i].isVar())
            throw LoadError(st->args[i]->loc, "type constructor " + n + " expects a name type argument");
    return Type::con(s, std::move(args));
}

struct VarEntry {
    std::string ident;
    Type type = Type::con(0);
    VarId id;
    bool clauseLevel = false;
    bool anonymous = false;
};

struct NameEntry {
    std::string ident;
    Type type = Type::con(0);
    Name name;
    bool bound = false;
    SourceLoc loc;
};

struct CallRecord {
    Symbol pred;
    std::vector<Type> argTypes;
};

struct Emits {
    std::vector<GoalPtr> goals;
    std::vector<VarId> vars;
};

class ClauseChecker {
public:
    explicit ClauseChecker(const Signature& sig) : sig_(sig) {}

    // ---- pass 1: inference

    void unify(const Type& a, const Type& b, const SourceLoc& loc) {
        Type x = applySubst(sub_, a);
        Type y = applySubst(sub_, b);
        if (x.isVar() && y.isVar() && x.varId() == y.varId()) return;
        if (x.isVar()) return bindVar(x.varId(), y, loc, a, b);
        if (y.isVar()) return bindVar(y.varId(), x, loc, a, b);
        if (x.con() != y.con() || x.args().size() != y.args().size()) mismatch(loc, x, y);
        for (std::size_t i = 0; i < x.args().size(); ++i) unify(x.args()[i], y.args()[i], loc);
    }

    Type instantiateTerm(const std::vector<std::uint32_t>& params, const Type& t, TypeSubst& inst) {
        for (auto p : params)
            if (!inst.count(p)) inst.emplace(p, Type::freshVar());
        return applySubst(inst, t);
    }

    Type inferTerm(const SExprPtr& e) {
        switch (e->kind) {
            case SExpr::Kind::Var: return lookupVar(e)->type;
            case SExpr::Kind::Wild: {
                VarEntry* v = newVar("_", true);
                v->anonymous = true;
                varOf_[e.get()] = v;
                return v->type;
            }
            case SExpr::Kind::Int: return Type::con(tyInt());
            case SExpr::Kind::Char: return Type::con(tyChar());
            case SExpr::Kind::Unit: return Type::con(tyUnitT());
            case SExpr::Kind::Ident:
            case SExpr::Kind::Call: return inferApp(e);
            case SExpr::Kind::List: {
                Type elem = Type::freshVar();
                for (const auto& it : e->items) unify(inferTerm(it), elem, it->loc);
                Type lt = Type::con(tyList(), {elem});
                if (e->tail) unify(inferTerm(e->tail), lt, e->tail->loc);
                return lt;
            }
            case SExpr::Kind::Paren: return inferTerm(e->items[0]);
            case SExpr::Kind::Abs: {
                const SExprPtr& b = e->items[0];
                Type bt = b->kind == SExpr::Kind::Var ? lookupVar(b)->type : lookupName(b)->type;
                nameChecks_.push_back({bt, b->loc, "abstraction binder"});
                Type body = inferTerm(e->items[1]);
                return Type::con(tyAbs(), {bt, body});
            }
            case SExpr::Kind::Swap: {
                Type a = lookupName(e->items[0])->type;
                Type b = lookupName(e->items[1])->type;
                unify(a, b, e->items[1]->loc);
                nameChecks_.push_back({a, e->items[0]->loc, "swapping"});
                return inferTerm(e->items[2]);
            }
            case SExpr::Kind::Binary:
                if (e->text == "::") {
                    Type h = inferTerm(e->items[0]);
                    Type lt = Type::con(tyList(), {h});
                    unify(inferTerm(e->items[1]), lt, e->items[1]->loc);
                    return lt;
                }
                if (e->text == ",") {
                    Type a = inferTerm(e->items[0]);
                    Type b = inferTerm(e->items[1]);
                    return Type::con(tyProd(), {a, b});
                }
                throw LoadError(e->loc, "goal '" + e->text + "' where a term was expected");
            case SExpr::Kind::New:
            case SExpr::Kind::Exists: throw LoadError(e->loc, "quantifier where a term was expected");
        }
        throw LoadError(e->loc, "unexpected expression");
    }

    void inferGoal(const SExprPtr& e) {
        switch (e->kind) {
            case SExpr::Kind::Ident:
                if (e->text == "true") return;
                [[fallthrough]];
            case SExpr::Kind::Call: {
                Symbol s = intern(e->text);
                auto it = sig_.defs.find(s);
                const DefInfo* dp = nullptr;
                if (it != sig_.defs.end() && it->second.predicate) dp = &it->second;
                // flattened function predicates (substp for subst) are callable too
                if (!dp) {
                    auto pit = sig_.preds.find(s);
                    if (pit != sig_.preds.end()) dp = &pit->second;
                }
                if (!dp) {
                    if (sig_.ctors.count(s) || it != sig_.defs.end())
                        throw LoadError(e->loc, e->text + " is not a predicate");
                    throw LoadError(e->loc, "unknown predicate " + e->text + "/" + std::to_string(e->items.size()));
                }
                const DefInfo& d = *dp;
                checkArity(e, d.args.size());
                TypeSubst inst;
                std::vector<Type> argTypes;
                for (std::size_t i = 0; i < e->items.size(); ++i) {
                    Type expected = instantiateTerm(d.params, d.args[i], inst);
                    unify(inferTerm(e->items[i]), expected, e->items[i]->loc);
                    argTypes.push_back(expected);
                }
                calls_[e.get()] = {d.pred, argTypes};
                return;
            }
            case SExpr::Kind::Paren: return inferGoal(e->items[0]);
            case SExpr::Kind::Binary: {
                const std::string& op = e->text;
                if (op == "," || op == ";") {
                    inferGoal(e->items[0]);
                    inferGoal(e->items[1]);
                    return;
                }
                if (op == "=") {
                    unify(inferTerm(e->items[0]), inferTerm(e->items[1]), e->loc);
                    return;
                }
                if (op == "#") {
                    const SExprPtr& l = e->items[0];
                    Type lt = Type::con(0);
                    if (l->kind == SExpr::Kind::Var)
                        lt = lookupVar(l)->type;
                    else if (l->kind == SExpr::Kind::Ident && !isTermSymbol(l->text))
                        lt = lookupName(l)->type;
                    else
                        throw LoadError(l->loc, "left-hand side of # must be a name or a name variable");
                    nameChecks_.push_back({lt, l->loc, "freshness"});
                    inferTerm(e->items[1]);
                    return;
                }
                if (op == "~") throw LoadError(e->loc, "equivariance constraints are not allowed in programs");
                throw LoadError(e->loc, "term where a goal was expected");
            }
            case SExpr::Kind::New: {
                nameScopes_.emplace_back();
                std::vector<NameEntry*> entries;
                for (const auto& b : e->binders) {
                    NameEntry* n = newName(b.ident, e->loc, true);
                    if (b.type) {
                        std::map<std::string, Type> tv;
                        unify(n->type, convertType(sig_, b.type, tv, false), e->loc);
                    }
                    nameScopes_.back()[b.ident] = n;
                    entries.push_back(n);
                }
                binderNames_[e.get()] = entries;
                inferGoal(e->items[0]);
                nameScopes_.pop_back();
                return;
            }
            case SExpr::Kind::Exists: {
                varScopes_.emplace_back();
                std::vector<VarEntry*> entries;
                for (const auto& b : e->binders) {
                    VarEntry* v = newVar(b.ident, false);
                    if (b.type) {
                        std::map<std::string, Type> tv;
                        unify(v->type, convertType(sig_, b.type, tv, false), e->loc);
                    }
                    varScopes_.back()[b.ident] = v;
                    entries.push_back(v);
                }
                binderVars_[e.get()] = entries;
                inferGoal(e->items[0]);
                varScopes_.pop_back();
                return;
            }
            default: throw LoadError(e->loc, "expected a goal");
        }
    }

    // head of `p(args)` or `f(args) = u`, checked against the rigid declared type
    void inferHead(const SExprPtr& head) {
        SExprPtr atom = head;
        SExprPtr result;
        if (head->kind == SExpr::Kind::Binary && head->text == "=") {
            atom = head->items[0];
            result = head->items[1];
        }
        if (atom->kind != SExpr::Kind::Call && atom->kind != SExpr::Kind::Ident)
            throw LoadError(head->loc, "clause head must be an atom");
        Symbol s = intern(atom->text);
        auto it = sig_.defs.find(s);
        if (it == sig_.defs.end()) throw LoadError(atom->loc, "undeclared predicate " + atom->text);
        const DefInfo& d = it->second;
        if (result && d.predicate) throw LoadError(head->loc, atom->text + " is a predicate, not a function");
        if (!result && !d.predicate)
            throw LoadError(head->loc, atom->text + " is a function; define it with " + atom->text + "(...) = t");
        checkArity(atom, d.args.size());
        TypeSubst rigid;
        for (auto p : d.params) rigid.emplace(p, Type::con(intern("'p" + std::to_string(p))));
        for (std::size_t i = 0; i < atom->items.size(); ++i) {
            Type expected = applySubst(rigid, d.args[i]);
            unify(inferTerm(atom->items[i]), expected, atom->items[i]->loc);
            headArgTypes_.push_back(expected);
        }
        if (result) {
            Type expected = applySubst(rigid, d.result);
            unify(inferTerm(result), expected, result->loc);
            headArgTypes_.push_back(expected);
        }
        headPred_ = d.pred;
        headAtom_ = atom;
        headResult_ = result;
    }

    // ---- between passes

    void finalize() {
        for (const auto& c : nameChecks_) {
            Type t = applySubst(sub_, c.type);
            if (!sig_.isNameType(t)) {
                if (t.isVar()) throw LoadError(c.loc, "cannot infer a name type for the " + c.what);
                throw LoadError(c.loc, c.what + " needs a name type, found " + showType(derigid(t)));
            }
        }
        for (auto& n : names_) {
            Type t = applySubst(sub_, n.type);
            if (!sig_.isNameType(t)) {
                if (t.isVar()) throw LoadError(n.loc, "cannot infer a name type for '" + n.ident + "'");
                throw LoadError(n.loc, "unknown identifier '" + n.ident + "' (of type " + showType(derigid(t)) +
                                           "; names must have a name type)");
            }
            n.name = n.bound ? freshName(n.ident, t.con()) : sourceName(n.ident, t.con());
        }
        for (auto& v : vars_) {
            Type t = applySubst(sub_, v.type);
            v.id = freshVar(v.ident == "_" ? "_G" : v.ident, sig_.isNameType(t) ? t.con() : 0);
            varTypes_.emplace(v.id, derigid(t));
        }
    }

    // ---- pass 2: construction

    Term buildTerm(const SExprPtr& e, Emits& em) {
        switch (e->kind) {
            case SExpr::Kind::Var:
            case SExpr::Kind::Wild: return Term::var(varOf_.at(e.get())->id);
            case SExpr::Kind::Int: return Term::integer(e->value);
            case SExpr::Kind::Char: return Term::character(e->value);
            case SExpr::Kind::Unit: return Term::unit();
            case SExpr::Kind::Ident:
            case SExpr::Kind::Call: {
                if (auto it = nameOf_.find(e.get()); it != nameOf_.end()) return Term::name(it->second->name);
                std::vector<Term> args;
                for (const auto& a : e->items) args.push_back(buildTerm(a, em));
                Symbol s = intern(e->text);
                if (sig_.ctors.count(s)) return Term::app(s, std::move(args));
                const DefInfo& d = sig_.defs.at(s);
                const CallRecord& rec = calls_.at(e.get());
                Type rt = derigid(applySubst(sub_, rec.argTypes.back()));
                VarId r = freshVar("R", sig_.isNameType(rt) ? rt.con() : 0);
                varTypes_.emplace(r, rt);
                args.push_back(Term::var(r));
                em.goals.push_back(gAtom(Term::app(d.pred, std::move(args))));
                em.vars.push_back(r);
                recordCall(rec);
                return Term::var(r);
            }
            case SExpr::Kind::List: {
                Term acc = e->tail ? buildTerm(e->tail, em) : Term::nil();
                std::vector<Term> items;
                for (const auto& it : e->items) items.push_back(buildTerm(it, em));
                for (std::size_t i = items.size(); i-- > 0;) acc = Term::cons(items[i], acc);
                return acc;
            }
            case SExpr::Kind::Paren: return buildTerm(e->items[0], em);
            case SExpr::Kind::Abs: {
                Term b = buildTerm(e->items[0], em);
                return Term::abs(b, buildTerm(e->items[1], em));
            }
            case SExpr::Kind::Swap: {
                Name a = nameOf_.at(e->items[0].get())->name;
                Name b = nameOf_.at(e->items[1].get())->name;
                return swap(a, b, buildTerm(e->items[2], em));
            }
            case SExpr::Kind::Binary: {
                Term l = buildTerm(e->items[0], em);
                Term r = buildTerm(e->items[1], em);
                return e->text == "::" ? Term::cons(l, r) : Term::pair(l, r);
            }
            default: throw LoadError(e->loc, "unexpected expression");
        }
    }

    GoalPtr buildGoal(const SExprPtr& e) {
        switch (e->kind) {
            case SExpr::Kind::Ident:
                if (e->text == "true") return gTrue();
                [[fallthrough]];
            case SExpr::Kind::Call: {
                Emits em;
                std::vector<Term> args;
                for (const auto& a : e->items) args.push_back(buildTerm(a, em));
                const CallRecord& rec = calls_.at(e.get());
                recordCall(rec);
                return wrap(em, gAtom(Term::app(rec.pred, std::move(args))));
            }
            case SExpr::Kind::Paren: return buildGoal(e->items[0]);
            case SExpr::Kind::Binary: {
                const std::string& op = e->text;
                if (op == ",") return gAnd(buildGoal(e->items[0]), buildGoal(e->items[1]));
                if (op == ";") return gOr(buildGoal(e->items[0]), buildGoal(e->items[1]));
                Emits em;
                Term l = buildTerm(e->items[0], em);
                Term r = buildTerm(e->items[1], em);
                return wrap(em, op == "=" ? gEq(l, r) : gFresh(l, r));
            }
            case SExpr::Kind::New: {
                GoalPtr body = buildGoal(e->items[0]);
                const auto& entries = binderNames_.at(e.get());
                for (std::size_t i = entries.size(); i-- > 0;) body = gNew(entries[i]->name, body);
                return body;
            }
            case SExpr::Kind::Exists: {
                GoalPtr body = buildGoal(e->items[0]);
                const auto& entries = binderVars_.at(e.get());
                for (std::size_t i = entries.size(); i-- > 0;) body = gExists(entries[i]->id, body);
                return body;
            }
            default: throw LoadError(e->loc, "expected a goal");
        }
    }

    Term buildHead(Emits& em) {
        std::vector<Term> args;
        for (const auto& a : headAtom_->items) args.push_back(buildTerm(a, em));
        if (headResult_) args.push_back(buildTerm(headResult_, em));
        return Term::app(headPred_, std::move(args));
    }

    std::vector<VarId> clauseVars() const {
        std::vector<VarId> out;
        for (const auto& v : vars_)
            if (v.clauseLevel) out.push_back(v.id);
        return out;
    }

    std::vector<std::pair<std::string, VarId>> queryVars() const {
        std::vector<std::pair<std::string, VarId>> out;
        for (const auto& v : vars_)
            if (v.clauseLevel && !v.anonymous) out.emplace_back(v.ident, v.id);
        return out;
    }

    std::vector<Name> clauseNames() const {
        std::vector<Name> out;
        for (const auto& n : names_)
            if (!n.bound) out.push_back(n.name);
        return out;
    }

    std::vector<Type> headArgTypes() const {
        std::vector<Type> out;
        for (const auto& t : headArgTypes_) out.push_back(derigid(applySubst(sub_, t)));
        return out;
    }

    const std::map<VarId, Type>& varTypes() const { return varTypes_; }
    const std::vector<ElaboratedClause::CallSite>& callSites() const { return callSites_; }

private:
    const Signature& sig_;
    TypeSubst sub_;
    std::deque<VarEntry> vars_;
    std::deque<NameEntry> names_;
    std::vector<std::map<std::string, VarEntry*>> varScopes_{1};
    std::vector<std::map<std::string, NameEntry*>> nameScopes_{1};
    std::map<const SExpr*, VarEntry*> varOf_;
    std::map<const SExpr*, NameEntry*> nameOf_;
    std::map<const SExpr*, CallRecord> calls_;
    std::map<const SExpr*, std::vector<VarEntry*>> binderVars_;
    std::map<const SExpr*, std::vector<NameEntry*>> binderNames_;
    struct NameCheck {
        Type type;
        SourceLoc loc;
        std::string what;
    };
    std::vector<NameCheck> nameChecks_;
    std::vector<Type> headArgTypes_;
    Symbol headPred_ = 0;
    SExprPtr headAtom_;
    SExprPtr headResult_;
    std::map<VarId, Type> varTypes_;
    std::vector<ElaboratedClause::CallSite> callSites_;
    mutable std::map<Symbol, Type> rigidVars_;

    [[noreturn]] void mismatch(const SourceLoc& loc, const Type& x, const Type& y) {
        std::string msg = "type mismatch: " + showType(derigid(x)) + " vs " + showType(derigid(y));
        if (isRigid(x) || isRigid(y)) msg += " (a clause may not specialise the declared type of its head)";
        throw LoadError(loc, msg);
    }

    void bindVar(std::uint32_t v, const Type& t, const SourceLoc& loc, const Type& a, const Type& b) {
        if (typeOccurs(v, t, sub_)) mismatch(loc, applySubst(sub_, a), applySubst(sub_, b));
        sub_.emplace(v, t);
    }

    Type derigid(const Type& t) const {
        if (t.isVar()) return t;
        if (isRigid(t)) {
            auto it = rigidVars_.find(t.con());
            if (it == rigidVars_.end()) it = rigidVars_.emplace(t.con(), Type::freshVar()).first;
            return it->second;
        }
        if (t.args().empty()) return t;
        std::vector<Type> args;
        for (const auto& a : t.args()) args.push_back(derigid(a));
        return Type::con(t.con(), std::move(args));
    }

    void recordCall(const CallRecord& rec) {
        ElaboratedClause::CallSite cs;
        cs.pred = rec.pred;
        for (const auto& t : rec.argTypes) cs.argTypes.push_back(derigid(applySubst(sub_, t)));
        callSites_.push_back(std::move(cs));
    }

    static GoalPtr wrap(const Emits& em, GoalPtr g) {
        std::vector<GoalPtr> parts = em.goals;
        parts.push_back(std::move(g));
        GoalPtr body = gConj(parts);
        for (std::size_t i = em.vars.size(); i-- > 0;) body = gExists(em.vars[i], body);
        return body;
    }

    bool isTermSymbol(const std::string& ident) const {
        Symbol s = intern(ident);
        return sig_.ctors.count(s) || sig_.defs.count(s);
    }

    void checkArity(const SExprPtr& e, std::size_t n) {
        if (e->items.size() != n)
            throw LoadError(e->loc, e->text + " expects " + std::to_string(n) + " argument(s), given " +
                                        std::to_string(e->items.size()));
    }

    VarEntry* newVar(const std::string& ident, bool clauseLevel) {
        vars_.push_back({ident, Type::freshVar(), VarId{}, clauseLevel, false});
        return &vars_.back();
    }

    NameEntry* newName(const std::string& ident, const SourceLoc& loc, bool bound) {
        names_.push_back({ident, Type::freshVar(), Name{}, bound, loc});
        return &names_.back();
    }

    VarEntry* lookupVar(const SExprPtr& e) {
        for (auto it = varScopes_.rbegin(); it != varScopes_.rend(); ++it) {
            auto f = it->find(e->text);
            if (f != it->end()) return varOf_[e.get()] = f->second;
        }
        VarEntry* v = newVar(e->text, true);
        varScopes_.front()[e->text] = v;
        return varOf_[e.get()] = v;
    }

    NameEntry* lookupName(const SExprPtr& e) {
        if (e->kind != SExpr::Kind::Ident) throw LoadError(e->loc, "expected a name");
        if (isTermSymbol(e->text))
            throw LoadError(e->loc, e->text + " is a declared symbol and cannot be used as a name");
        for (auto it = nameScopes_.rbegin(); it != nameScopes_.rend(); ++it) {
            auto f = it->find(e->text);
            if (f != it->end()) return nameOf_[e.get()] = f->second;
        }
        NameEntry* n = newName(e->text, e->loc, false);
        nameScopes_.front()[e->text] = n;
        return nameOf_[e.get()] = n;
    }

    Type inferApp(const SExprPtr& e) {
        Symbol s = intern(e->text);
        if (auto it = sig_.ctors.find(s); it != sig_.ctors.end()) {
            const CtorInfo& c = it->second;
            checkArity(e, c.args.size());
            TypeSubst inst;
            for (std::size_t i = 0; i < e->items.size(); ++i)
                unify(inferTerm(e->items[i]), instantiateTerm(c.params, c.args[i], inst), e->items[i]->loc);
            return instantiateTerm(c.params, c.result, inst);
        }
        if (auto it = sig_.defs.find(s); it != sig_.defs.end()) {
            const DefInfo& d = it->second;
            if (d.predicate) throw LoadError(e->loc, "predicate " + e->text + " used as a term");
            checkArity(e, d.args.size());
            TypeSubst inst;
            std::vector<Type> argTypes;
            for (std::size_t i = 0; i < e->items.size(); ++i) {
                Type expected = instantiateTerm(d.params, d.args[i], inst);
                unify(inferTerm(e->items[i]), expected, e->items[i]->loc);
                argTypes.push_back(expected);
            }
            Type rt = instantiateTerm(d.params, d.result, inst);
            argTypes.push_back(rt);
            calls_[e.get()] = {d.pred, argTypes};
            return rt;
        }
        if (e->kind == SExpr::Kind::Call)
            throw LoadError(e->loc, "unknown function symbol " + e->text + "/" + std::to_string(e->items.size()));
        return lookupName(e)->type;
    }
};

// Declared type `σ1 * ... * σn -> τ` or `τ`.
void splitDeclType(const Signature& sig, const STypePtr& st, std::map<std::string, Type>& tv, std::vector<Type>& args,
                   Type& result) {
    if (st->kind == SType::Kind::Arrow) {
        for (std::size_t i = 0; i + 1 < st->args.size(); ++i) args.push_back(convertType(sig, st->args[i], tv, true));
        result = convertType(sig, st->args.back(), tv, true);
    } else {
        result = convertType(sig, st, tv, true);
    }
}

std::vector<std::uint32_t> paramIds(const std::map<std::string, Type>& tv) {
    std::vector<std::uint32_t> out;
    for (const auto& [k, t] : tv) out.push_back(t.varId());
    return out;
}

}  // namespace

void Loader::declareKinds(const Statement& s) {
    for (const auto& id : s.idents) {
        if (id == "int" || id == "char" || id == "o" || id == "list" || id == "unit")
            throw LoadError(s.loc, "cannot redeclare built-in type " + id);
        Symbol sym = intern(id);
        if (prog_.sig.typeCons.count(sym) || prog_.sig.abbrevs.count(sym))
            throw LoadError(s.loc, "type " + id + " already declared");
        if (s.resultNameType && !s.paramIsNameType.empty())
            throw LoadError(s.loc, "name types cannot take parameters");
        prog_.sig.typeCons[sym] = {sym, s.paramIsNameType, s.resultNameType, s.loc};
    }
}

void Loader::declareCtor(const Statement& s) {
    for (const auto& id : s.idents) {
        Symbol sym = intern(id);
        if (prog_.sig.ctors.count(sym) || prog_.sig.defs.count(sym))
            throw LoadError(s.loc, "symbol " + id + " already declared");
        std::map<std::string, Type> tv;
        CtorInfo c;
        c.name = sym;
        c.loc = s.loc;
        splitDeclType(prog_.sig, s.type, tv, c.args, c.result);
        const Type& r = c.result;
        if (r.isVar() || r.con() == tyProp() || r.con() == tyInt() || r.con() == tyChar() || r.con() == tyList() ||
            r.con() == tyProd() || r.con() == tyAbs() || r.con() == tyUnitT() || prog_.sig.isNameType(r.con()))
            throw LoadError(s.loc, "constructor " + id + " must build a declared data type");
        std::vector<std::uint32_t> resultVars;
        for (const auto& a : r.args()) {
            if (!a.isVar() || std::find(resultVars.begin(), resultVars.end(), a.varId()) != resultVars.end())
                throw LoadError(s.loc, "constructor " + id + " must return its type applied to distinct type variables");
            resultVars.push_back(a.varId());
        }
        for (const auto& a : c.args) {
            std::vector<std::uint32_t> vs;
            typeVars(a, vs);
            for (auto v : vs)
                if (std::find(resultVars.begin(), resultVars.end(), v) == resultVars.end())
                    throw LoadError(s.loc, "constructor " + id +
                                               " is not type-preserving: an argument type variable is missing from "
                                               "the result type");
        }
        c.params = resultVars;
        prog_.sig.ctors[sym] = std::move(c);
    }
}

void Loader::declareDef(const Statement& s) {
    for (const auto& id : s.idents) {
        Symbol sym = intern(id);
        if (prog_.sig.ctors.count(sym) || prog_.sig.defs.count(sym))
            throw LoadError(s.loc, "symbol " + id + " already declared");
        std::map<std::string, Type> tv;
        DefInfo d;
        d.name = sym;
        d.loc = s.loc;
        splitDeclType(prog_.sig, s.type, tv, d.args, d.result);
        d.params = paramIds(tv);
        d.predicate = !d.result.isVar() && d.result.con() == tyProp();
        for (const auto& a : d.args)
            if (!a.isVar() && a.con() == tyProp()) throw LoadError(s.loc, "argument of type o in " + id);
        if (d.predicate) {
            d.pred = sym;
        } else {
            std::string pn = id + "p";
            d.pred = intern(pn);
            if (prog_.sig.defs.count(d.pred) || prog_.sig.preds.count(d.pred))
                throw LoadError(s.loc, "flattened predicate name " + pn + " for function " + id + " is already taken");
        }
        if (prog_.sig.preds.count(sym)) throw LoadError(s.loc, "symbol " + id + " already declared");
        DefInfo p = d;
        if (!d.predicate) {
            p.name = d.pred;
            p.args.push_back(d.result);
            p.result = Type::con(tyProp());
            p.predicate = true;
        }
        prog_.sig.preds[d.pred] = p;
        prog_.sig.defs[sym] = std::move(d);
    }
}

void Loader::declareAbbrev(const Statement& s) {
    Symbol sym = intern(s.idents[0]);
    if (prog_.sig.typeCons.count(sym) || prog_.sig.abbrevs.count(sym))
        throw LoadError(s.loc, "type " + s.idents[0] + " already declared");
    std::map<std::string, Type> tv;
    Abbrev a;
    for (const auto& p : s.params) {
        Type v = Type::freshVar();
        tv.emplace(p, v);
        a.params.push_back(v.varId());
    }
    a.body = convertType(prog_.sig, s.type, tv, false);
    prog_.sig.abbrevs[sym] = std::move(a);
}

void Loader::addClause(const Statement& s) {
    ClauseChecker cc(prog_.sig);
    cc.inferHead(s.head);
    if (s.body) cc.inferGoal(s.body);
    cc.finalize();
    GoalPtr body = s.body ? cc.buildGoal(s.body) : gTrue();
    Emits em;
    Term head = cc.buildHead(em);
    if (!em.goals.empty()) {
        std::vector<GoalPtr> parts;
        if (body->kind != GoalKind::True) parts.push_back(body);
        for (const auto& g : em.goals) parts.push_back(g);
        body = gConj(parts);
    }
    std::vector<VarId> vs = cc.clauseVars();
    for (VarId r : em.vars) vs.push_back(r);
    std::vector<Name> ns = cc.clauseNames();

    ClausePtr d = dAtom(head);
    if (body->kind != GoalKind::True) d = dImp(body, d);
    for (std::size_t i = vs.size(); i-- > 0;) d = dForall(vs[i], d);
    for (std::size_t i = ns.size(); i-- > 0;) d = dNew(ns[i], d);

    auto elaborated = elaborate({d});
    for (auto& ec : elaborated) {
        ec.loc = s.loc;
        ec.varTypes = cc.varTypes();
        ec.headArgTypes = cc.headArgTypes();
        ec.calls = cc.callSites();
        prog_.clauses.push_back(std::move(ec));
    }
    prog_.closed.push_back(d);
    prog_.closedLocs.push_back(s.loc);
}

void Loader::load(const SurfaceProgram& sp) {
    for (const auto& s : sp.statements) {
        switch (s.kind) {
            case Statement::Kind::KindDecl: declareKinds(s); break;
            case Statement::Kind::CtorDecl: declareCtor(s); break;
            case Statement::Kind::DefDecl: declareDef(s); break;
            case Statement::Kind::TypeAbbrev: declareAbbrev(s); break;
            case Statement::Kind::Clause: addClause(s); break;
            case Statement::Kind::Query: queries_.push_back(s); break;
        }
    }
}

Query Loader::query(const SExprPtr& goal, const SourceLoc& loc) const {
    ClauseChecker cc(prog_.sig);
    cc.inferGoal(goal);
    cc.finalize();
    Query q;
    q.goal = cc.buildGoal(goal);
    q.vars = cc.queryVars();
    q.varTypes = cc.varTypes();
    q.loc = loc;
    return q;
}

Program loadProgramText(const std::string& text, const std::string& file) {
    Program p;
    Loader l(p);
    l.load(parseProgram(text, file));
    return p;
}

Query parseQuery(const Program& prog, const std::string& text, const std::string& file) {
    SExprPtr g = parseGoal(text, file);
    Program& mut = const_cast<Program&>(prog);
    Loader l(mut);
    return l.query(g, g->loc);
}

}  // namespace aplog
