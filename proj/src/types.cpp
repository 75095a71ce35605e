#include "aplog/types.hpp"

#include <algorithm>
#include <atomic>

namespace aplog {

Symbol tyInt() {
    static const Symbol s = intern("int");
    return s;
}
Symbol tyChar() {
    static const Symbol s = intern("char");
    return s;
}
Symbol tyProp() {
    static const Symbol s = intern("o");
    return s;
}
Symbol tyList() {
    static const Symbol s = intern("list");
    return s;
}
Symbol tyProd() {
    static const Symbol s = intern("*");
    return s;
}
Symbol tyAbs() {
    static const Symbol s = intern("\\");
    return s;
}
Symbol tyUnitT() {
    static const Symbol s = intern("unit");
    return s;
}

Type Type::var(std::uint32_t id) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Var;
    n->id = id;
    return Type(std::move(n));
}

Type Type::con(Symbol c, std::vector<Type> args) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Con;
    n->con = c;
    n->args = std::move(args);
    return Type(std::move(n));
}

Type Type::freshVar() {
    static std::atomic<std::uint32_t> next{1};
    return var(next++);
}

bool operator==(const Type& a, const Type& b) {
    if (a.n_ == b.n_) return true;
    if (a.kind() != b.kind()) return false;
    if (a.isVar()) return a.varId() == b.varId();
    return a.con() == b.con() && a.args() == b.args();
}

bool operator<(const Type& a, const Type& b) {
    if (a.kind() != b.kind()) return a.kind() < b.kind();
    if (a.isVar()) return a.varId() < b.varId();
    if (a.con() != b.con()) return symbolText(a.con()) < symbolText(b.con());
    return std::lexicographical_compare(a.args().begin(), a.args().end(), b.args().begin(), b.args().end());
}

Type applySubst(const TypeSubst& s, const Type& t) {
    if (t.isVar()) {
        auto it = s.find(t.varId());
        if (it == s.end()) return t;
        return applySubst(s, it->second);
    }
    if (t.args().empty()) return t;
    std::vector<Type> args;
    for (const auto& a : t.args()) args.push_back(applySubst(s, a));
    return Type::con(t.con(), std::move(args));
}

bool typeOccurs(std::uint32_t v, const Type& t, const TypeSubst& s) {
    Type r = applySubst(s, t);
    if (r.isVar()) return r.varId() == v;
    return std::any_of(r.args().begin(), r.args().end(), [&](const Type& a) { return typeOccurs(v, a, s); });
}

bool closedType(const Type& t) {
    if (t.isVar()) return false;
    return std::all_of(t.args().begin(), t.args().end(), closedType);
}

void typeVars(const Type& t, std::vector<std::uint32_t>& out) {
    if (t.isVar()) {
        if (std::find(out.begin(), out.end(), t.varId()) == out.end()) out.push_back(t.varId());
        return;
    }
    for (const auto& a : t.args()) typeVars(a, out);
}

bool matchType(const Type& pattern, const Type& target, TypeSubst& s) {
    if (pattern.isVar()) {
        auto it = s.find(pattern.varId());
        if (it != s.end()) return it->second == target;
        s.emplace(pattern.varId(), target);
        return true;
    }
    if (target.isVar() || pattern.con() != target.con() || pattern.args().size() != target.args().size())
        return false;
    for (std::size_t i = 0; i < pattern.args().size(); ++i)
        if (!matchType(pattern.args()[i], target.args()[i], s)) return false;
    return true;
}

namespace {

// prec 0: anywhere, 1: argument of a type application
void show(const Type& t, int prec, std::string& out) {
    if (t.isVar()) {
        out += "'t" + std::to_string(t.varId());
        return;
    }
    if (t.con() == tyProd()) {
        out += "(";
        show(t.args()[0], 0, out);
        out += " * ";
        show(t.args()[1], 0, out);
        out += ")";
        return;
    }
    bool compound = !t.args().empty();
    if (compound && prec > 0) out += "(";
    if (t.con() == tyAbs()) {
        show(t.args()[0], 1, out);
        out += "\\";
        show(t.args()[1], 0, out);
    } else {
        out += symbolText(t.con());
        for (const auto& a : t.args()) {
            out += " ";
            show(a, 1, out);
        }
    }
    if (compound && prec > 0) out += ")";
}

}  // namespace

std::string showType(const Type& t) {
    std::string out;
    show(t, 0, out);
    return out;
}

}  // namespace aplog
