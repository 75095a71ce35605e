#include "aplog/permutation.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace aplog {

Permutation::Permutation(std::vector<std::pair<Name, Name>> m) : map_(std::move(m)) {
    std::erase_if(map_, [](const auto& p) { return p.first == p.second; });
    std::sort(map_.begin(), map_.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
}

Permutation Permutation::swap(Name a, Name b) {
    if (a == b) return {};
    return Permutation({{a, b}, {b, a}});
}

Name Permutation::apply(Name a) const {
    auto it = std::lower_bound(map_.begin(), map_.end(), a,
                               [](const auto& p, const Name& n) { return p.first < n; });
    if (it != map_.end() && it->first == a) return it->second;
    return a;
}

Name Permutation::applyInverse(Name a) const {
    for (const auto& [from, to] : map_)
        if (to == a) return from;
    return a;
}

Permutation Permutation::inverse() const {
    std::vector<std::pair<Name, Name>> m;
    m.reserve(map_.size());
    for (const auto& [from, to] : map_) m.emplace_back(to, from);
    return Permutation(std::move(m));
}

Permutation Permutation::compose(const Permutation& inner) const {
    std::set<Name> dom;
    for (const auto& p : map_) dom.insert(p.first);
    for (const auto& p : inner.map_) dom.insert(p.first);
    std::vector<std::pair<Name, Name>> m;
    for (Name a : dom) m.emplace_back(a, apply(inner.apply(a)));
    return Permutation(std::move(m));
}

Permutation Permutation::prependSwap(Name a, Name b) const { return swap(a, b).compose(*this); }

std::vector<Name> Permutation::support() const {
    std::vector<Name> out;
    for (const auto& p : map_) out.push_back(p.first);
    return out;
}

std::vector<Name> Permutation::disagreement(const Permutation& other) const {
    std::set<Name> dom;
    for (const auto& p : map_) dom.insert(p.first);
    for (const auto& p : other.map_) dom.insert(p.first);
    std::vector<Name> out;
    for (Name a : dom)
        if (apply(a) != other.apply(a)) out.push_back(a);
    return out;
}

std::vector<std::pair<Name, Name>> Permutation::swaps() const {
    std::vector<std::pair<Name, Name>> out;
    std::set<Name> seen;
    for (const auto& [start, unused] : map_) {
        if (seen.count(start)) continue;
        std::vector<Name> cycle{start};
        seen.insert(start);
        for (Name n = apply(start); n != start; n = apply(n)) {
            cycle.push_back(n);
            seen.insert(n);
        }
        // (c0 c1 ... ck) = (c0 ck) ... (c0 c2)(c0 c1)
        for (std::size_t i = cycle.size() - 1; i >= 1; --i) out.emplace_back(cycle[0], cycle[i]);
    }
    return out;
}

}  // namespace aplog
