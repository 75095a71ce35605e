#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "aplog/program.hpp"

namespace aplog {

class OracleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Ground terms of depth <= d per type over a pool of k names per name type.
class Universe {
public:
    Universe(const Signature& sig, std::size_t depth, std::size_t pool, std::vector<std::int64_t> ints,
             std::vector<std::int64_t> chars);

    const std::vector<Term>& terms(const Type& t) const { return terms(t, depth_); }
    const std::vector<Term>& terms(const Type& t, std::size_t depth) const;
    bool contains(const Type& t, const Term& g) const;
    const std::vector<Name>& pool(NameTypeId nt) const;
    std::size_t depth() const { return depth_; }
    std::size_t poolSize() const { return poolSize_; }
    // one entry per permutation of the pools (all name types at once)
    std::vector<Permutation> poolPermutations() const;

private:
    const Signature& sig_;
    std::size_t depth_, poolSize_;
    std::vector<std::int64_t> ints_, chars_;
    mutable std::map<std::pair<std::string, std::size_t>, std::vector<Term>> memo_;
    mutable std::map<std::string, std::set<std::string>> keys_;
    mutable std::map<NameTypeId, std::vector<Name>> pools_;
};

// Ground atoms, identified up to α-equivalence.
class AtomSet {
public:
    bool insert(const Term& atom);
    bool contains(const Term& atom) const { return byKey_.count(alphaKey(atom)) > 0; }
    std::size_t size() const { return byKey_.size(); }
    const std::vector<Term>& withPredicate(Symbol p) const;
    std::vector<Term> atoms() const;
    bool operator==(const AtomSet& o) const;

private:
    std::map<std::string, Term> byKey_;
    std::map<Symbol, std::vector<Term>> byPred_;
};

struct OracleConfig {
    std::size_t depth = 3;
    std::size_t pool = 3;
    std::size_t maxIter = 200;
};

class Oracle {
public:
    // clause instantiated at one monomorphic typing
    struct Instance {
        const ElaboratedClause* clause;
        std::map<VarId, Type> varTypes;
        std::vector<Type> argTypes;
    };
    using Theta = std::map<VarId, Term>;

    Oracle(const Program& prog, OracleConfig cfg);

    const Universe& universe() const { return universe_; }
    const std::vector<Instance>& instances() const { return instances_; }
    // predicate instances (predicate, argument types) in the base
    const std::set<std::pair<Symbol, std::vector<Type>>>& predicates() const { return preds_; }

    // T for one clause instance, before equivariant closure
    AtomSet tStepClause(const Instance& inst, const AtomSet& s) const;
    // S together with every clause contribution, closed under pool permutations
    AtomSet tStep(const AtomSet& s) const;
    AtomSet fixpoint(std::size_t* iterations = nullptr) const;
    AtomSet equivariantClosure(const AtomSet& s) const;

    // Ground satisfaction of g under θ; remaining ∃ range over the universe.
    bool satisfies(const AtomSet& s, const GoalPtr& g, const Theta& theta, const std::map<VarId, Type>& types) const;

    // every ground atom of every predicate instance over the universe
    std::vector<Term> base() const;

    static std::vector<std::string> render(const AtomSet& s);

private:
    const Program& prog_;
    OracleConfig cfg_;
    Universe universe_;
    std::vector<Instance> instances_;
    std::set<std::pair<Symbol, std::vector<Type>>> preds_;

    void monomorphise();
    // calls k on each solution; k returns true to stop, which is propagated
    bool solve(std::vector<GoalPtr> todo, Theta theta, const std::map<VarId, Type>& types, const AtomSet& s,
               const std::function<bool(const Theta&)>& k) const;
};

}  // namespace aplog
