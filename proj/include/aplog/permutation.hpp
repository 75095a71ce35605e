#pragma once

#include <utility>
#include <vector>

#include "aplog/symbols.hpp"

namespace aplog {

// Finite permutation of names. Stored as its action on the moved names,
// sorted by source name, so equal permutations compare equal.
class Permutation {
public:
    Permutation() = default;
    static Permutation swap(Name a, Name b);

    Name apply(Name a) const;
    Name applyInverse(Name a) const;

    Permutation inverse() const;
    // (this ∘ inner)(a) = this(inner(a))
    Permutation compose(const Permutation& inner) const;
    Permutation prependSwap(Name a, Name b) const;

    bool isIdentity() const { return map_.empty(); }
    std::vector<Name> support() const;
    std::vector<Name> disagreement(const Permutation& other) const;

    // Swap list, leftmost applied last.
    std::vector<std::pair<Name, Name>> swaps() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    explicit Permutation(std::vector<std::pair<Name, Name>> m);
    std::vector<std::pair<Name, Name>> map_;
};

}  // namespace aplog
