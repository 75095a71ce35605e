#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "aplog/pmap.hpp"
#include "aplog/syntax.hpp"
#include "aplog/term.hpp"

namespace aplog {

// Constraint store for one search branch. Copying is cheap; every
// mutating call either succeeds or reports inconsistency, after which
// the store must be discarded.
class Store {
public:
    struct Suspension {
        bool equation = false;  // lhs = rhs, otherwise lhs # rhs
        Term lhs, rhs;
    };

    bool unify(const Term& t, const Term& u);
    // a is a ground name or a name-typed variable term
    bool fresh(const Term& a, const Term& t);
    // equation or freshness goal
    bool add(const Goal& g);

    // Exhaustive search over name-variable assignments for the suspended
    // constraints. Plain a # X constraints are always satisfiable.
    bool checkSatisfiable() const;

    Term resolve(const Term& t) const;
    // follows bindings at the root only
    Term walk(Term t) const;
    bool isBound(VarId x) const { return bind_.find(x.id) != nullptr; }
    std::map<VarId, Term> solvedForm() const;
    // a # X with X unbound
    std::vector<std::pair<Name, VarId>> freshAtoms() const;
    std::vector<Name> freshAtomsOf(VarId x) const;
    // resolved
    std::vector<Suspension> suspensions() const;
    std::size_t size() const { return bind_.size() + freshCount_ + (susp_ ? susp_->size() : 0); }

private:
    PMap<Term> bind_;
    PMap<std::vector<Name>> fresh_;
    std::size_t freshCount_ = 0;
    std::shared_ptr<const std::vector<Suspension>> susp_;

    struct Work {
        bool equation;
        Term lhs, rhs;
    };

    bool run(std::vector<Work>& work);
    bool stepEq(const Term& l, const Term& r, std::vector<Work>& work);
    bool stepFresh(const Term& a, const Term& t, std::vector<Work>& work);
    void bindVar(VarId x, const Term& t, std::vector<Work>& work);
    void suspend(bool equation, const Term& l, const Term& r);
    void addFreshAtom(Name a, VarId x);
};

std::string showSuspension(const Store::Suspension& s, const PrintOptions& opts = {});

}  // namespace aplog
