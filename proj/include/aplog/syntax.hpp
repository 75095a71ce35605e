#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "aplog/term.hpp"
#include "aplog/types.hpp"

namespace aplog {

struct SourceLoc {
    std::string file;
    int line = 0;
    int col = 0;

    std::string str() const;
};

enum class GoalKind { True, Atom, Eq, Fresh, Equiv, And, Or, Exists, New };

struct Goal;
using GoalPtr = std::shared_ptr<const Goal>;

// Atoms are stored as the term p(t1,...,tn).
struct Goal {
    GoalKind kind = GoalKind::True;
    Term lhs;
    Term rhs;
    GoalPtr left;
    GoalPtr right;
    VarId var;
    Name name;
};

GoalPtr gTrue();
GoalPtr gAtom(Term atom);
GoalPtr gEq(Term t, Term u);
GoalPtr gFresh(Term a, Term t);
GoalPtr gEquiv(Term t, Term u);
GoalPtr gAnd(GoalPtr g, GoalPtr h);
GoalPtr gOr(GoalPtr g, GoalPtr h);
GoalPtr gExists(VarId x, GoalPtr g);
GoalPtr gNew(Name a, GoalPtr g);
GoalPtr gConj(const std::vector<GoalPtr>& gs);

bool isConstraint(const Goal& g);

enum class ClauseKind { True, Atom, And, Imp, Forall, New };

struct Clause;
using ClausePtr = std::shared_ptr<const Clause>;

struct Clause {
    ClauseKind kind = ClauseKind::True;
    Term atom;
    GoalPtr guard;
    ClausePtr left;
    ClausePtr right;
    VarId var;
    Name name;
};

ClausePtr dTrue();
ClausePtr dAtom(Term atom);
ClausePtr dAnd(ClausePtr d, ClausePtr e);
ClausePtr dImp(GoalPtr g, ClausePtr d);
ClausePtr dForall(VarId x, ClausePtr d);
ClausePtr dNew(Name a, ClausePtr d);

// Normal form Ͷā ∀X̄ [body ⇒ head].
struct ElaboratedClause {
    std::vector<Name> names;
    std::vector<VarId> vars;
    GoalPtr body;
    Term head;
    SourceLoc loc;
    // type bookkeeping for the Herbrand oracle
    std::map<VarId, Type> varTypes;
    std::vector<Type> headArgTypes;
    struct CallSite {
        Symbol pred;
        std::vector<Type> argTypes;
    };
    std::vector<CallSite> calls;
};

ClausePtr toClause(const ElaboratedClause& c);
Symbol headPredicate(const Term& atom);

// Substitutions on syntax.
GoalPtr substGoal(const GoalPtr& g, const std::map<VarId, Term>& sub);
GoalPtr renameGoalNames(const GoalPtr& g, const std::map<Name, Name>& ren);
ClausePtr substClause(const ClausePtr& d, const std::map<VarId, Term>& sub);
ClausePtr renameClauseNames(const ClausePtr& d, const std::map<Name, Name>& ren);

// Free variables / names; bound ones excluded.
std::set<VarId> freeVarsGoal(const GoalPtr& g);
std::set<Name> freeNamesGoal(const GoalPtr& g);
std::set<VarId> freeVarsClause(const ClausePtr& d);
std::set<Name> freeNamesClause(const ClausePtr& d);

std::string showGoal(const GoalPtr& g, const PrintOptions& opts = {});
std::string showClause(const ClausePtr& d, const PrintOptions& opts = {});
std::string showElaborated(const ElaboratedClause& c, const PrintOptions& opts = {});

// Structural equality (no α-renaming).
bool goalEqual(const GoalPtr& a, const GoalPtr& b);
bool clauseEqual(const ClausePtr& a, const ClausePtr& b);

}  // namespace aplog
