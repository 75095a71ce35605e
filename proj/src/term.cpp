#include "aplog/term.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace aplog {

Symbol symNil() {
    static const Symbol s = intern("[]");
    return s;
}
Symbol symCons() {
    static const Symbol s = intern("::");
    return s;
}
Symbol symPair() {
    static const Symbol s = intern(",");
    return s;
}
Symbol symUnit() {
    static const Symbol s = intern("()");
    return s;
}

Term::Term() : Term(unit()) {}

Term Term::name(Name a) {
    auto n = std::make_shared<Node>();
    n->kind = TermKind::Name;
    n->name = a;
    return Term(std::move(n));
}

Term Term::var(VarId x, Permutation pi) {
    auto n = std::make_shared<Node>();
    n->kind = TermKind::Var;
    n->ground = false;
    n->var = x;
    n->perm = std::move(pi);
    return Term(std::move(n));
}

Term Term::abs(Term binder, Term body) {
    auto n = std::make_shared<Node>();
    n->kind = TermKind::Abs;
    n->ground = binder.ground() && body.ground();
    n->args = {std::move(binder), std::move(body)};
    return Term(std::move(n));
}

Term Term::app(Symbol f, std::vector<Term> args) {
    auto n = std::make_shared<Node>();
    n->kind = TermKind::App;
    n->ctor = f;
    n->ground = std::all_of(args.begin(), args.end(), [](const Term& t) { return t.ground(); });
    n->args = std::move(args);
    return Term(std::move(n));
}

Term Term::integer(std::int64_t v) {
    auto n = std::make_shared<Node>();
    n->kind = TermKind::Int;
    n->value = v;
    return Term(std::move(n));
}

Term Term::character(std::int64_t c) {
    auto n = std::make_shared<Node>();
    n->kind = TermKind::Char;
    n->value = c;
    return Term(std::move(n));
}

Term Term::nil() { return app(symNil()); }
Term Term::cons(Term head, Term tail) { return app(symCons(), {std::move(head), std::move(tail)}); }
Term Term::pair(Term a, Term b) { return app(symPair(), {std::move(a), std::move(b)}); }
Term Term::unit() {
    static const Term u = [] {
        auto n = std::make_shared<Node>();
        n->kind = TermKind::App;
        n->ctor = symUnit();
        return Term(std::shared_ptr<const Node>(std::move(n)));
    }();
    return u;
}

bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case TermKind::Name: return a.nameValue() == b.nameValue();
        case TermKind::Var: return a.varId() == b.varId() && a.perm() == b.perm();
        case TermKind::Int:
        case TermKind::Char: return a.value() == b.value();
        case TermKind::Abs:
        case TermKind::App:
            return a.ctor() == b.ctor() && a.args() == b.args();
    }
    return false;
}

Term permute(const Permutation& pi, const Term& t) {
    if (pi.isIdentity()) return t;
    switch (t.kind()) {
        case TermKind::Name: {
            Name b = pi.apply(t.nameValue());
            return b == t.nameValue() ? t : Term::name(b);
        }
        case TermKind::Var: return Term::var(t.varId(), pi.compose(t.perm()));
        case TermKind::Abs: return Term::abs(permute(pi, t.binder()), permute(pi, t.body()));
        case TermKind::App: {
            if (t.args().empty()) return t;
            std::vector<Term> args;
            args.reserve(t.args().size());
            for (const auto& a : t.args()) args.push_back(permute(pi, a));
            return Term::app(t.ctor(), std::move(args));
        }
        default: return t;
    }
}

Term swap(Name a, Name b, const Term& t) { return permute(Permutation::swap(a, b), t); }

namespace {

void requireGround(const Term& t, const char* op) {
    if (!t.ground()) throw std::invalid_argument(std::string(op) + ": term is not ground");
}

bool freshGround(Name a, const Term& t) {
    switch (t.kind()) {
        case TermKind::Name: return t.nameValue() != a;
        case TermKind::Abs:
            if (t.binder().nameValue() == a) return true;
            return freshGround(a, t.body());
        case TermKind::App:
            for (const auto& x : t.args())
                if (!freshGround(a, x)) return false;
            return true;
        default: return true;
    }
}

bool alphaGround(const Term& t, const Term& u) {
    if (t.kind() != u.kind()) return false;
    switch (t.kind()) {
        case TermKind::Name: return t.nameValue() == u.nameValue();
        case TermKind::Int:
        case TermKind::Char: return t.value() == u.value();
        case TermKind::Abs: {
            Name a = t.binder().nameValue();
            Name b = u.binder().nameValue();
            if (a == b) return alphaGround(t.body(), u.body());
            return freshGround(a, u.body()) && alphaGround(t.body(), swap(a, b, u.body()));
        }
        case TermKind::App:
            if (t.ctor() != u.ctor() || t.args().size() != u.args().size()) return false;
            for (std::size_t i = 0; i < t.args().size(); ++i)
                if (!alphaGround(t.args()[i], u.args()[i])) return false;
            return true;
        default: return false;
    }
}

void suppGround(const Term& t, std::vector<Name>& bound, std::set<Name>& out) {
    switch (t.kind()) {
        case TermKind::Name:
            if (std::find(bound.begin(), bound.end(), t.nameValue()) == bound.end()) out.insert(t.nameValue());
            break;
        case TermKind::Abs:
            bound.push_back(t.binder().nameValue());
            suppGround(t.body(), bound, out);
            bound.pop_back();
            break;
        case TermKind::App:
            for (const auto& x : t.args()) suppGround(x, bound, out);
            break;
        default: break;
    }
}

void keyOf(const Term& t, std::vector<Name>& bound, std::string& out) {
    switch (t.kind()) {
        case TermKind::Name: {
            Name a = t.nameValue();
            for (std::size_t i = bound.size(); i-- > 0;) {
                if (bound[i] == a) {
                    out += "#" + std::to_string(i);
                    return;
                }
            }
            out += "n" + std::to_string(a.id);
            break;
        }
        case TermKind::Int: out += "i" + std::to_string(t.value()); break;
        case TermKind::Char: out += "c" + std::to_string(t.value()); break;
        case TermKind::Abs:
            out += "\\";
            bound.push_back(t.binder().nameValue());
            keyOf(t.body(), bound, out);
            bound.pop_back();
            break;
        case TermKind::App:
            out += symbolText(t.ctor());
            if (!t.args().empty()) {
                out += "(";
                for (std::size_t i = 0; i < t.args().size(); ++i) {
                    if (i) out += ",";
                    keyOf(t.args()[i], bound, out);
                }
                out += ")";
            }
            break;
        default: throw std::invalid_argument("alphaKey: variable");
    }
}

}  // namespace

bool freshFor(Name a, const Term& t) {
    requireGround(t, "freshFor");
    return freshGround(a, t);
}

bool alphaEq(const Term& t, const Term& u) {
    requireGround(t, "alphaEq");
    requireGround(u, "alphaEq");
    return alphaGround(t, u);
}

std::set<Name> supp(const Term& t) {
    requireGround(t, "supp");
    std::set<Name> out;
    std::vector<Name> bound;
    suppGround(t, bound, out);
    return out;
}

std::string alphaKey(const Term& t) {
    requireGround(t, "alphaKey");
    std::string out;
    std::vector<Name> bound;
    keyOf(t, bound, out);
    return out;
}

std::optional<Permutation> groundEquivariant(const Term& t, const Term& u) {
    auto st = supp(t);
    auto su = supp(u);
    if (st.size() != su.size()) return std::nullopt;
    std::vector<Name> from(st.begin(), st.end());
    std::vector<Name> to(su.begin(), su.end());
    std::vector<bool> used(to.size(), false);
    std::vector<Name> image(from.size());

    // Extends the bijection from -> image to a permutation; each swap fixes
    // one more pair without disturbing the earlier ones.
    auto build = [&]() {
        Permutation pi;
        for (std::size_t i = 0; i < from.size(); ++i) {
            Name where = pi.apply(from[i]);
            if (where != image[i]) pi = Permutation::swap(where, image[i]).compose(pi);
        }
        return pi;
    };

    std::function<std::optional<Permutation>(std::size_t)> go = [&](std::size_t i) -> std::optional<Permutation> {
        if (i == from.size()) {
            Permutation pi = build();
            if (alphaGround(permute(pi, t), u)) return pi;
            return std::nullopt;
        }
        for (std::size_t j = 0; j < to.size(); ++j) {
            if (used[j] || to[j].type != from[i].type) continue;
            used[j] = true;
            image[i] = to[j];
            if (auto r = go(i + 1)) return r;
            used[j] = false;
        }
        return std::nullopt;
    };
    return go(0);
}

namespace {

void collectAllNames(const Term& t, std::set<Name>& out) {
    switch (t.kind()) {
        case TermKind::Name: out.insert(t.nameValue()); break;
        case TermKind::Var:
            for (Name n : t.perm().support()) out.insert(n);
            break;
        case TermKind::Abs:
        case TermKind::App:
            for (const auto& x : t.args()) collectAllNames(x, out);
            break;
        default: break;
    }
}

void collectFreeNames(const Term& t, std::vector<Name>& bound, std::set<Name>& out) {
    switch (t.kind()) {
        case TermKind::Name:
            if (std::find(bound.begin(), bound.end(), t.nameValue()) == bound.end()) out.insert(t.nameValue());
            break;
        case TermKind::Var:
            for (Name n : t.perm().support()) out.insert(n);
            break;
        case TermKind::Abs:
            if (t.binder().isName()) {
                bound.push_back(t.binder().nameValue());
                collectFreeNames(t.body(), bound, out);
                bound.pop_back();
            } else {
                collectFreeNames(t.binder(), bound, out);
                collectFreeNames(t.body(), bound, out);
            }
            break;
        case TermKind::App:
            for (const auto& x : t.args()) collectFreeNames(x, bound, out);
            break;
        default: break;
    }
}

void collectVars(const Term& t, std::set<VarId>& out) {
    if (t.ground()) return;
    switch (t.kind()) {
        case TermKind::Var: out.insert(t.varId()); break;
        case TermKind::Abs:
        case TermKind::App:
            for (const auto& x : t.args()) collectVars(x, out);
            break;
        default: break;
    }
}

}  // namespace

std::set<Name> allNames(const Term& t) {
    std::set<Name> out;
    collectAllNames(t, out);
    return out;
}

std::set<Name> freeNames(const Term& t) {
    std::set<Name> out;
    std::vector<Name> bound;
    collectFreeNames(t, bound, out);
    return out;
}

std::set<VarId> vars(const Term& t) {
    std::set<VarId> out;
    collectVars(t, out);
    return out;
}

bool occurs(VarId x, const Term& t) {
    if (t.ground()) return false;
    switch (t.kind()) {
        case TermKind::Var: return t.varId() == x;
        case TermKind::Abs:
        case TermKind::App:
            for (const auto& a : t.args())
                if (occurs(x, a)) return true;
            return false;
        default: return false;
    }
}

std::size_t termSize(const Term& t) {
    std::size_t n = 1;
    if (t.isAbs() || t.isApp())
        for (const auto& a : t.args()) n += termSize(a);
    return n;
}

std::size_t termDepth(const Term& t) {
    if (t.isAbs()) return 1 + termDepth(t.body());
    if (t.isApp() && !t.args().empty()) {
        std::size_t d = 0;
        for (const auto& a : t.args()) d = std::max(d, termDepth(a));
        return 1 + d;
    }
    return 0;
}

Permutation renamePerm(const Permutation& pi, const std::map<Name, Name>& ren) {
    auto r = [&](Name n) {
        auto it = ren.find(n);
        return it == ren.end() ? n : it->second;
    };
    Permutation out;
    auto sw = pi.swaps();
    for (auto it = sw.rbegin(); it != sw.rend(); ++it) out = Permutation::swap(r(it->first), r(it->second)).compose(out);
    return out;
}

Term renameNames(const Term& t, const std::map<Name, Name>& ren) {
    if (ren.empty()) return t;
    switch (t.kind()) {
        case TermKind::Name: {
            auto it = ren.find(t.nameValue());
            return it == ren.end() ? t : Term::name(it->second);
        }
        case TermKind::Var:
            if (t.perm().isIdentity()) return t;
            return Term::var(t.varId(), renamePerm(t.perm(), ren));
        case TermKind::Abs: return Term::abs(renameNames(t.binder(), ren), renameNames(t.body(), ren));
        case TermKind::App: {
            if (t.args().empty()) return t;
            std::vector<Term> args;
            for (const auto& a : t.args()) args.push_back(renameNames(a, ren));
            return Term::app(t.ctor(), std::move(args));
        }
        default: return t;
    }
}

Term substVars(const Term& t, const std::map<VarId, Term>& sub) {
    if (t.ground() || sub.empty()) return t;
    switch (t.kind()) {
        case TermKind::Var: {
            auto it = sub.find(t.varId());
            if (it == sub.end()) return t;
            return permute(t.perm(), it->second);
        }
        case TermKind::Abs: return Term::abs(substVars(t.binder(), sub), substVars(t.body(), sub));
        case TermKind::App: {
            std::vector<Term> args;
            for (const auto& a : t.args()) args.push_back(substVars(a, sub));
            return Term::app(t.ctor(), std::move(args));
        }
        default: return t;
    }
}

Term substVar(const Term& t, VarId x, const Term& s) { return substVars(t, {{x, s}}); }

namespace {

void print(const Term& t, const PrintOptions& o, std::string& out);

void printName(Name n, const PrintOptions& o, std::string& out) {
    out += o.nameText ? (*o.nameText)(n) : nameDisplay(n);
}

void printChar(std::int64_t c, std::string& out) {
    out += '\'';
    switch (c) {
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\'': out += "\\'"; break;
        case '\\': out += "\\\\"; break;
        default: out += static_cast<char>(c);
    }
    out += '\'';
}

void print(const Term& t, const PrintOptions& o, std::string& out) {
    switch (t.kind()) {
        case TermKind::Name: printName(t.nameValue(), o, out); break;
        case TermKind::Var:
            for (const auto& [a, b] : t.perm().swaps()) {
                out += "(";
                printName(a, o, out);
                out += "~";
                printName(b, o, out);
                out += ")";
            }
            out += o.varText ? (*o.varText)(t.varId()) : varDisplay(t.varId());
            break;
        case TermKind::Int: out += std::to_string(t.value()); break;
        case TermKind::Char: printChar(t.value(), out); break;
        case TermKind::Abs:
            print(t.binder(), o, out);
            out += "\\";
            print(t.body(), o, out);
            break;
        case TermKind::App: {
            Symbol f = t.ctor();
            if (f == symUnit()) {
                out += "()";
            } else if (f == symNil()) {
                out += "[]";
            } else if (f == symCons()) {
                out += "[";
                const Term* cur = &t;
                bool first = true;
                while (cur->isApp() && cur->ctor() == symCons()) {
                    if (!first) out += ",";
                    first = false;
                    print(cur->args()[0], o, out);
                    cur = &cur->args()[1];
                }
                if (!(cur->isApp() && cur->ctor() == symNil())) {
                    out += "|";
                    print(*cur, o, out);
                }
                out += "]";
            } else if (f == symPair()) {
                out += "(";
                const Term* cur = &t;
                while (cur->isApp() && cur->ctor() == symPair()) {
                    print(cur->args()[0], o, out);
                    out += ",";
                    cur = &cur->args()[1];
                }
                print(*cur, o, out);
                out += ")";
            } else {
                out += symbolText(f);
                if (!t.args().empty()) {
                    out += "(";
                    for (std::size_t i = 0; i < t.args().size(); ++i) {
                        if (i) out += ",";
                        print(t.args()[i], o, out);
                    }
                    out += ")";
                }
            }
            break;
        }
    }
}

}  // namespace

std::string show(const Term& t, const PrintOptions& opts) {
    std::string out;
    print(t, opts, out);
    return out;
}

}  // namespace aplog
