#include "nominal_ref.hpp"

#include <stdexcept>
#include <string_view>

namespace reftest {

R::R() {
    static const auto unit = std::make_shared<const Node>(Node{Const, 0, "unit", {}});
    n_ = unit;
}

bool operator==(const R& a, const R& b) {
    if (a.n_ == b.n_) return true;
    return a.n_->kind == b.n_->kind && a.n_->name == b.n_->name && a.n_->f == b.n_->f && a.n_->args == b.n_->args;
}

R rname(int a) { return R(std::make_shared<const R::Node>(R::Node{R::Name, a, {}, {}})); }
R rconst(std::string c) { return R(std::make_shared<const R::Node>(R::Node{R::Const, 0, std::move(c), {}})); }
R rapp(std::string f, std::vector<R> args) {
    return R(std::make_shared<const R::Node>(R::Node{R::App, 0, std::move(f), std::move(args)}));
}
R rabs(int a, R body) { return R(std::make_shared<const R::Node>(R::Node{R::Abs, a, {}, {std::move(body)}})); }

std::string show(const R& t) {
    switch (t.kind()) {
        case R::Name: return "n" + std::to_string(t.name());
        case R::Const: return t.f();
        case R::Abs: return "<n" + std::to_string(t.name()) + ">" + show(t.body());
        case R::App: {
            std::string s = t.f() + "(";
            for (std::size_t i = 0; i < t.args().size(); ++i) s += (i ? "," : "") + show(t.args()[i]);
            return s + ")";
        }
    }
    return "?";
}

int swapName(int a, int b, int c) { return c == a ? b : c == b ? a : c; }

R swapR(int a, int b, const R& t) {
    switch (t.kind()) {
        case R::Name: return rname(swapName(a, b, t.name()));
        case R::Const: return t;
        case R::Abs: return rabs(swapName(a, b, t.name()), swapR(a, b, t.body()));
        case R::App: {
            std::vector<R> as;
            for (const auto& x : t.args()) as.push_back(swapR(a, b, x));
            return rapp(t.f(), std::move(as));
        }
    }
    return t;
}

namespace {

Judgement jFresh(int a, const R& t) {
    Judgement j;
    j.kind = Judgement::Fresh;
    j.a = a;
    j.t = t;
    return j;
}
Judgement jEq(const R& t, const R& u) {
    Judgement j;
    j.kind = Judgement::Eq;
    j.t = t;
    j.u = u;
    return j;
}

// Premises a rule demands for a conclusion, or nullopt if the rule does
// not apply to it.
std::optional<std::vector<Judgement>> premisesFor(std::string_view rule, const Judgement& c) {
    using V = std::vector<Judgement>;
    if (c.kind == Judgement::Fresh) {
        const R& t = c.t;
        if (rule == "fresh-name") {
            if (t.kind() == R::Name && t.name() != c.a) return V{};
        } else if (rule == "fresh-const") {
            if (t.kind() == R::Const) return V{};
        } else if (rule == "fresh-app") {
            if (t.kind() == R::App) {
                V ps;
                for (const auto& x : t.args()) ps.push_back(jFresh(c.a, x));
                return ps;
            }
        } else if (rule == "fresh-abs") {
            if (t.kind() == R::Abs && t.name() != c.a) return V{jFresh(c.a, rname(t.name())), jFresh(c.a, t.body())};
        } else if (rule == "fresh-abs-same") {
            if (t.kind() == R::Abs && t.name() == c.a) return V{};
        }
        return std::nullopt;
    }
    const R& t = c.t;
    const R& u = c.u;
    if (rule == "eq-name") {
        if (t.kind() == R::Name && u.kind() == R::Name && t.name() == u.name()) return V{};
    } else if (rule == "eq-const") {
        if (t.kind() == R::Const && u.kind() == R::Const && t.f() == u.f()) return V{};
    } else if (rule == "eq-app") {
        if (t.kind() == R::App && u.kind() == R::App && t.f() == u.f() && t.args().size() == u.args().size()) {
            V ps;
            for (std::size_t i = 0; i < t.args().size(); ++i) ps.push_back(jEq(t.args()[i], u.args()[i]));
            return ps;
        }
    } else if (rule == "eq-abs-same") {
        if (t.kind() == R::Abs && u.kind() == R::Abs && t.name() == u.name()) return V{jEq(t.body(), u.body())};
    } else if (rule == "eq-abs") {
        if (t.kind() == R::Abs && u.kind() == R::Abs && t.name() != u.name()) {
            R whole = u;
            return V{jFresh(t.name(), whole), jEq(t.body(), swapR(t.name(), u.name(), u.body()))};
        }
    }
    return std::nullopt;
}

// The rules are syntax-directed: the shape of the judgement selects the
// only rule that can conclude it.
const char* ruleFor(const Judgement& j) {
    const R& t = j.t;
    if (j.kind == Judgement::Fresh) {
        switch (t.kind()) {
            case R::Name: return "fresh-name";
            case R::Const: return "fresh-const";
            case R::App: return "fresh-app";
            case R::Abs: return t.name() == j.a ? "fresh-abs-same" : "fresh-abs";
        }
        return nullptr;
    }
    const R& u = j.u;
    if (t.kind() != u.kind()) return nullptr;
    switch (t.kind()) {
        case R::Name: return "eq-name";
        case R::Const: return "eq-const";
        case R::App: return "eq-app";
        case R::Abs: return t.name() == u.name() ? "eq-abs-same" : "eq-abs";
    }
    return nullptr;
}

std::optional<Derivation> prove(const Judgement& j) {
    const char* r = ruleFor(j);
    if (!r) return std::nullopt;
    auto ps = premisesFor(r, j);
    if (!ps) return std::nullopt;
    Derivation d;
    d.rule = r;
    d.concl = j;
    d.premises.reserve(ps->size());
    for (const auto& p : *ps) {
        auto sub = prove(p);
        if (!sub) return std::nullopt;
        d.premises.push_back(std::move(*sub));
    }
    return d;
}

}  // namespace

std::optional<Derivation> proveFresh(int a, const R& t) { return prove(jFresh(a, t)); }
std::optional<Derivation> proveEq(const R& t, const R& u) { return prove(jEq(t, u)); }

bool checkDerivation(const Derivation& d, std::string* why) {
    auto ps = premisesFor(d.rule, d.concl);
    if (!ps) {
        if (why) *why = "rule " + std::string(d.rule) + " does not apply";
        return false;
    }
    if (ps->size() != d.premises.size()) {
        if (why) *why = "rule " + std::string(d.rule) + ": wrong number of premises";
        return false;
    }
    for (std::size_t i = 0; i < ps->size(); ++i) {
        if (!((*ps)[i] == d.premises[i].concl)) {
            if (why) *why = "rule " + std::string(d.rule) + ": premise " + std::to_string(i) + " mismatch";
            return false;
        }
        if (!checkDerivation(d.premises[i], why)) return false;
    }
    return true;
}

R fromTerm(const aplog::Term& t) {
    using aplog::TermKind;
    switch (t.kind()) {
        case TermKind::Name: return rname(static_cast<int>(t.nameValue().id));
        case TermKind::Abs:
            if (!t.binder().isName()) throw std::invalid_argument("open binder");
            return rabs(static_cast<int>(t.binder().nameValue().id), fromTerm(t.body()));
        case TermKind::App: {
            if (t.args().empty()) return rconst(aplog::symbolText(t.ctor()));
            std::vector<R> as;
            for (const auto& a : t.args()) as.push_back(fromTerm(a));
            return rapp(aplog::symbolText(t.ctor()), std::move(as));
        }
        case TermKind::Int: return rconst("#" + std::to_string(t.value()));
        case TermKind::Char: return rconst("'" + std::to_string(t.value()));
        case TermKind::Var: throw std::invalid_argument("open term");
    }
    throw std::invalid_argument("bad term");
}

aplog::NameTypeId nmType() {
    static const aplog::NameTypeId t = aplog::intern("nm");
    return t;
}

aplog::Name pname(int i) {
    std::string s(1, static_cast<char>('a' + i));
    return aplog::sourceName(s, nmType());
}

std::vector<aplog::Name> pool(int k) {
    std::vector<aplog::Name> out;
    for (int i = 0; i < k; ++i) out.push_back(pname(i));
    return out;
}

void forEachNextLayer(const Sig& sig, const std::vector<aplog::Term>& below,
                      const std::function<void(const aplog::Term&)>& f) {
    using aplog::Term;
    static const aplog::Symbol sf = aplog::intern("f"), sg = aplog::intern("g");
    if (sig.unary)
        for (const auto& t : below) f(Term::app(sf, {t}));
    if (sig.abstraction)
        for (int i = 0; i < sig.names; ++i)
            for (const auto& t : below) f(Term::abs(pname(i), t));
    if (sig.binary)
        for (const auto& t : below)
            for (const auto& u : below) f(Term::app(sg, {t, u}));
}

std::vector<aplog::Term> groundTerms(const Sig& sig, int depth) {
    using aplog::Term;
    std::vector<Term> out;
    for (int i = 0; i < sig.names; ++i) out.push_back(Term::name(pname(i)));
    if (sig.constant) out.push_back(Term::app(aplog::intern("k")));
    for (int d = 0; d < depth; ++d) {
        std::vector<Term> next = {out.begin(), out.begin() + (sig.names + (sig.constant ? 1 : 0))};
        forEachNextLayer(sig, out, [&](const Term& t) { next.push_back(t); });
        out = std::move(next);
    }
    return out;
}

}  // namespace reftest
