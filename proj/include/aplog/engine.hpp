#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "aplog/program.hpp"
#include "aplog/store.hpp"

namespace aplog {

struct EngineOptions {
    // transitions allowed on one branch before it is cut
    std::size_t maxSteps = 10000;
    // backchain the closed clauses as written instead of the elaborated ones
    bool raw = false;
    // translate every clause with nuGoalTranslate before use
    bool nuGoal = false;
    std::function<void(const std::string&)> trace;
};

// Persistent goal stack.
struct GoalNode;
using GoalList = std::shared_ptr<const GoalNode>;
struct GoalNode {
    GoalPtr goal;
    GoalList next;
};

struct MachineState {
    GoalList goals;
    Store store;
    std::size_t steps = 0;
    // variables whose values are observed from outside (the query)
    std::shared_ptr<const std::vector<VarId>> roots;
};

struct Answer {
    // query variable -> resolved value (unrenamed)
    std::vector<std::pair<std::string, Term>> bindings;
    Store store;
    // display lines, canonical renaming applied per answer
    std::vector<std::string> lines;

    std::string text() const;  // lines joined with ",\n", or "Yes."
};

ElaboratedClause freshenClause(const ElaboratedClause& c);
// ∃X̄.(head ≈ atom ∧ body) over a freshened copy of c; the copy's
// new-names are brand-new constants
GoalPtr backchain(const Term& atom, const ElaboratedClause& c);
GoalPtr renameGoalVars(const GoalPtr& g, const std::map<VarId, VarId>& ren);
ClausePtr renameClauseVars(const ClausePtr& d, const std::map<VarId, VarId>& ren);

enum class Rule9 { Backchain, Constraint, Top, And, Or1, Or2, Exists, New };
const char* transitionName(Rule9 r);

class Engine;

class AnswerStream {
public:
    enum class Status { Answer, Exhausted, DepthLimit };

    Status next(Answer& out);
    // some branch hit the step limit so far
    bool cut() const { return cut_; }
    std::size_t transitions() const { return transitions_; }

private:
    friend class Engine;
    struct Frame {
        MachineState state;
        // pending clause alternatives for an atom goal
        Term atom;
        const std::vector<std::size_t>* cands = nullptr;
        std::size_t idx = 0;
    };

    const Engine* engine_ = nullptr;
    std::vector<std::pair<std::string, VarId>> queryVars_;
    std::vector<Frame> stack_;
    bool cut_ = false;
    std::size_t transitions_ = 0;

    void expand(MachineState st);
    Answer makeAnswer(const Store& s) const;
};

class Engine {
public:
    Engine(const Program& prog, EngineOptions opts = {});

    AnswerStream solve(const Query& q) const;
    // successor states of the leftmost goal, in search order
    std::vector<MachineState> step(const MachineState& s) const;
    const EngineOptions& options() const { return opts_; }

private:
    friend class AnswerStream;
    const Program& prog_;
    EngineOptions opts_;
    std::vector<ElaboratedClause> clauses_;
    std::vector<ClausePtr> raw_;
    std::map<Symbol, std::vector<std::size_t>> byPred_;

    void traceLine(Rule9 r, const GoalPtr& g, const Store& s) const;
    std::vector<GoalPtr> residuals(const Term& atom, std::size_t clause) const;
    bool quickClash(const Term& atom, std::size_t clause, const Store& s) const;
    MachineState newName(MachineState st, const GoalPtr& g, const GoalList& rest) const;
};

// Collects the query answers, up to limit (0 = all).
struct SolveResult {
    std::vector<Answer> answers;
    bool depthLimit = false;
};
SolveResult solveAll(const Engine& e, const Query& q, std::size_t limit = 0);

}  // namespace aplog
