#include <algorithm>
#include <numeric>

#include "aplog/oracle.hpp"

namespace aplog {

Universe::Universe(const Signature& sig, std::size_t depth, std::size_t pool, std::vector<std::int64_t> ints,
                   std::vector<std::int64_t> chars)
    : sig_(sig), depth_(depth), poolSize_(pool), ints_(std::move(ints)), chars_(std::move(chars)) {
    std::sort(ints_.begin(), ints_.end());
    ints_.erase(std::unique(ints_.begin(), ints_.end()), ints_.end());
    std::sort(chars_.begin(), chars_.end());
    chars_.erase(std::unique(chars_.begin(), chars_.end()), chars_.end());
}

const std::vector<Name>& Universe::pool(NameTypeId nt) const {
    auto it = pools_.find(nt);
    if (it != pools_.end()) return it->second;
    std::vector<Name> ns;
    for (std::size_t i = 0; i < poolSize_; ++i) ns.push_back(sourceName(symbolText(nt) + std::to_string(i + 1), nt));
    return pools_.emplace(nt, std::move(ns)).first->second;
}

const std::vector<Term>& Universe::terms(const Type& t, std::size_t d) const {
    if (!closedType(t)) throw OracleError("universe: open type " + showType(t));
    auto key = std::make_pair(showType(t), d);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    std::vector<Term> out;
    std::set<std::string> seen;
    auto add = [&](Term x) {
        if (seen.insert(alphaKey(x)).second) out.push_back(std::move(x));
    };
    Symbol c = t.con();
    if (c == tyProp()) throw OracleError("universe: no terms of type o");
    if (c == tyInt()) {
        for (auto v : ints_) add(Term::integer(v));
    } else if (c == tyChar()) {
        for (auto v : chars_) add(Term::character(v));
    } else if (c == tyUnitT()) {
        add(Term::unit());
    } else if (sig_.isNameType(c)) {
        for (Name a : pool(c)) add(Term::name(a));
    } else if (c == tyList()) {
        add(Term::nil());
        if (d > 0) {
            const auto& hs = terms(t.args()[0], d - 1);
            const auto& ts = terms(t, d - 1);
            for (const auto& h : hs)
                for (const auto& tl : ts) add(Term::cons(h, tl));
        }
    } else if (c == tyProd()) {
        if (d > 0) {
            const auto& as = terms(t.args()[0], d - 1);
            const auto& bs = terms(t.args()[1], d - 1);
            for (const auto& a : as)
                for (const auto& b : bs) add(Term::pair(a, b));
        }
    } else if (c == tyAbs()) {
        if (d > 0) {
            NameTypeId nt = t.args()[0].con();
            const auto& bodies = terms(t.args()[1], d - 1);
            for (Name a : pool(nt))
                for (const auto& b : bodies) add(Term::abs(a, b));
        }
    } else {
        auto it = sig_.typeCons.find(c);
        if (it == sig_.typeCons.end()) throw OracleError("universe: unknown type " + showType(t));
        for (const CtorInfo* ci : sig_.constructorsOf(c)) {
            TypeSubst s;
            for (std::size_t i = 0; i < ci->params.size() && i < t.args().size(); ++i)
                s.emplace(ci->params[i], t.args()[i]);
            if (ci->args.empty()) {
                add(Term::app(ci->name));
                continue;
            }
            if (d == 0) continue;
            std::vector<const std::vector<Term>*> choices;
            for (const auto& a : ci->args) choices.push_back(&terms(applySubst(s, a), d - 1));
            std::vector<std::size_t> idx(choices.size(), 0);
            bool empty = std::any_of(choices.begin(), choices.end(), [](auto* v) { return v->empty(); });
            while (!empty) {
                std::vector<Term> args;
                for (std::size_t i = 0; i < idx.size(); ++i) args.push_back((*choices[i])[idx[i]]);
                add(Term::app(ci->name, std::move(args)));
                std::size_t k = idx.size();
                while (k-- > 0) {
                    if (++idx[k] < choices[k]->size()) break;
                    idx[k] = 0;
                }
                if (k == static_cast<std::size_t>(-1)) break;
            }
        }
    }
    return memo_.emplace(key, std::move(out)).first->second;
}

bool Universe::contains(const Type& t, const Term& g) const {
    std::string tk = showType(t);
    auto it = keys_.find(tk);
    if (it == keys_.end()) {
        std::set<std::string> ks;
        for (const auto& x : terms(t)) ks.insert(alphaKey(x));
        it = keys_.emplace(tk, std::move(ks)).first;
    }
    return it->second.count(alphaKey(g)) > 0;
}

std::vector<Permutation> Universe::poolPermutations() const {
    std::vector<Permutation> acc{Permutation{}};
    for (const auto& [sym, info] : sig_.typeCons) {
        if (!info.nameType) continue;
        const auto& ns = pool(sym);
        std::vector<std::size_t> perm(ns.size());
        std::iota(perm.begin(), perm.end(), 0);
        std::vector<Permutation> local;
        do {
            Permutation pi;
            for (std::size_t i = 0; i < ns.size(); ++i) {
                Name c = pi.apply(ns[i]);
                pi = Permutation::swap(c, ns[perm[i]]).compose(pi);
            }
            local.push_back(pi);
        } while (std::next_permutation(perm.begin(), perm.end()));
        std::vector<Permutation> next;
        for (const auto& p : acc)
            for (const auto& q : local) next.push_back(p.compose(q));
        acc = std::move(next);
    }
    return acc;
}

bool AtomSet::insert(const Term& atom) {
    if (!byKey_.emplace(alphaKey(atom), atom).second) return false;
    byPred_[atom.ctor()].push_back(atom);
    return true;
}

const std::vector<Term>& AtomSet::withPredicate(Symbol p) const {
    static const std::vector<Term> none;
    auto it = byPred_.find(p);
    return it == byPred_.end() ? none : it->second;
}

std::vector<Term> AtomSet::atoms() const {
    std::vector<Term> out;
    for (const auto& [k, t] : byKey_) out.push_back(t);
    return out;
}

bool AtomSet::operator==(const AtomSet& o) const {
    if (byKey_.size() != o.byKey_.size()) return false;
    for (const auto& [k, t] : byKey_)
        if (!o.byKey_.count(k)) return false;
    return true;
}

}  // namespace aplog
