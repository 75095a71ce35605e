#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "aplog/syntax.hpp"

namespace aplog {

// ---- clause normalisation

enum class Rule {
    ImpTrue,        // G => T          ~> T
    AndTrueR,       // D & T           ~> D
    AndTrueL,       // T & D           ~> D
    ForallTrue,     // forall X. T     ~> T
    NewTrue,        // new a. T        ~> T
    ImpImp,         // G => G' => D    ~> G & G' => D
    ImpAnd,         // G => D & D'     ~> (G => D) & (G => D')
    ImpForall,      // G => forall X.D ~> forall X.(G => D)
    ImpNew,         // G => new a.D    ~> new a.(G => D)
    ForallAnd,      // forall X.(D & D') ~> forall X.D & forall X.D'
    NewAnd,         // new a.(D & D')  ~> new a.D & new a.D'
    ForallNew,      // forall X.new a.D ~> new a.forall X.(a # X => D)
    SplitAnd,       // program level: D & D' becomes two clauses
    DropTrue,       // program level: T is removed
};

const char* ruleName(Rule r);

// Redexes of a single clause in preorder. Side conditions that would
// capture are met by renaming the bound variable or name first.
std::size_t countRedexes(const ClausePtr& d);
// Rewrites the k-th redex; nullopt when k >= countRedexes(d).
std::optional<ClausePtr> rewriteAt(const ClausePtr& d, std::size_t k, Rule* applied = nullptr);

// Applies rewrite steps until normal. With an rng the redex (and the
// program-level step) is chosen uniformly at random each time.
std::vector<ClausePtr> normalizeProgram(std::vector<ClausePtr> prog, std::mt19937* rng = nullptr,
                                        std::size_t* steps = nullptr);
bool isNormalProgram(const std::vector<ClausePtr>& prog);

// Reads a normal-form clause new a..forall X..[G => A]. Throws
// std::invalid_argument when the shape is wrong.
ElaboratedClause fromNormal(const ClausePtr& d);
std::vector<ElaboratedClause> elaborate(const std::vector<ClausePtr>& prog);

// α- and multiset-insensitive key of an elaborated clause, used to
// compare normal forms reached by different rewrite orders.
std::string canonicalKey(const ElaboratedClause& c);

// ---- ν-goal analysis

// No new-quantifier in clause position.
bool isNuGoal(const ClausePtr& d);
bool isNuGoal(const ElaboratedClause& c);

// forall Z.[(new a. exists X. t = Z & G) => p(Z)]
ClausePtr nuGoalTranslate(const ElaboratedClause& c);

struct Diagnostic {
    SourceLoc loc;
    std::string message;
};

// One warning per clause whose new-names may make resolution with
// plain α-equality incomplete.
std::vector<Diagnostic> warnIncomplete(const std::vector<ElaboratedClause>& prog);
std::optional<std::string> incompletenessReason(const ElaboratedClause& c);

}  // namespace aplog
