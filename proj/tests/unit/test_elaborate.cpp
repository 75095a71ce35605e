#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "aplog/elaborate.hpp"
#include "aplog/engine.hpp"
#include "aplog/typecheck.hpp"
#include "checks.hpp"
#include "cli.hpp"
#include "nominal_ref.hpp"

using namespace aplog;

namespace {

// Random clauses over p/1, q/1, with binders drawn from a small set so
// shadowing and capture situations come up often.
struct ClauseGen {
    std::mt19937 rng;
    std::vector<VarId> varPool = {freshVar("X"), freshVar("Y"), freshVar("Z")};
    std::vector<Name> namePool = {reftest::pname(0), reftest::pname(1)};

    explicit ClauseGen(unsigned seed) : rng(seed) {}

    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

    Term term(const std::vector<VarId>& vs, const std::vector<Name>& ns, int depth) {
        int choice = pick(depth > 0 ? 4 : 3);
        if (choice == 0 && !vs.empty()) return Term::var(vs[static_cast<std::size_t>(pick(static_cast<int>(vs.size())))]);
        if (choice == 1 && !ns.empty()) return Term::name(ns[static_cast<std::size_t>(pick(static_cast<int>(ns.size())))]);
        if (choice == 3) return Term::app(intern("f"), {term(vs, ns, depth - 1)});
        return Term::app(intern("k"));
    }

    GoalPtr goal(const std::vector<VarId>& vs, const std::vector<Name>& ns, int depth) {
        switch (pick(depth > 0 ? 5 : 4)) {
            case 0: return gTrue();
            case 1: return gAtom(Term::app(intern("q"), {term(vs, ns, 1)}));
            case 2: return gEq(term(vs, ns, 1), term(vs, ns, 1));
            case 3:
                if (!ns.empty()) return gFresh(Term::name(ns[0]), term(vs, ns, 1));
                return gTrue();
            default: return gAnd(goal(vs, ns, depth - 1), goal(vs, ns, depth - 1));
        }
    }

    ClausePtr clause(std::vector<VarId> vs, std::vector<Name> ns, int depth) {
        int choice = depth > 0 ? pick(6) : pick(2);
        switch (choice) {
            case 0: return dAtom(Term::app(intern("p"), {term(vs, ns, 1)}));
            case 1: return pick(4) == 0 ? dTrue() : dAtom(Term::app(intern("p"), {term(vs, ns, 2)}));
            case 2: return dAnd(clause(vs, ns, depth - 1), clause(vs, ns, depth - 1));
            case 3: return dImp(goal(vs, ns, 2), clause(vs, ns, depth - 1));
            case 4: {
                VarId x = varPool[static_cast<std::size_t>(pick(3))];
                vs.push_back(x);
                return dForall(x, clause(vs, ns, depth - 1));
            }
            default: {
                Name a = namePool[static_cast<std::size_t>(pick(2))];
                ns.push_back(a);
                return dNew(a, clause(vs, ns, depth - 1));
            }
        }
    }
};

std::size_t clauseSize(const ClausePtr& d) {
    switch (d->kind) {
        case ClauseKind::True:
        case ClauseKind::Atom: return 1;
        case ClauseKind::And: return 1 + clauseSize(d->left) + clauseSize(d->right);
        default: return 1 + clauseSize(d->right ? d->right : d->left);
    }
}

std::vector<std::string> keys(const std::vector<ClausePtr>& normal) {
    std::vector<std::string> out;
    for (const auto& d : normal) out.push_back(canonicalKey(fromNormal(d)));
    std::sort(out.begin(), out.end());
    return out;
}

Program loadCorpus(const std::string& f) { return loadProgramText(reftest::readFile(reftest::corpusPath(f)), f); }

}  // namespace

TEST(Elaboration, RandomClausesTerminateConfluentlyAndStayFixed) {
    ClauseGen gen(99);
    std::mt19937 order1(1), order2(2);
    std::size_t worst = 0;
    for (int i = 0; i < 400; ++i) {
        ClausePtr d = gen.clause({}, {}, 6);
        std::size_t n = clauseSize(d);
        std::size_t s1 = 0, s2 = 0, s0 = 0;
        auto a = normalizeProgram({d}, &order1, &s1);
        auto b = normalizeProgram({d}, &order2, &s2);
        auto c = normalizeProgram({d}, nullptr, &s0);
        ASSERT_TRUE(isNormalProgram(a));
        ASSERT_TRUE(isNormalProgram(b));
        EXPECT_EQ(keys(a), keys(b)) << showClause(d);
        EXPECT_EQ(keys(a), keys(c)) << showClause(d);
        // each step removes a redex or moves a quantifier past a connective
        // that sits above it; no more than n*n such moves exist
        EXPECT_LE(std::max({s0, s1, s2}), n * n + n) << showClause(d);
        worst = std::max({worst, s0, s1, s2});
        for (const auto& e : elaborate({d})) {
            std::size_t again = 0;
            auto re = normalizeProgram({toClause(e)}, nullptr, &again);
            EXPECT_EQ(again, 0u) << showElaborated(e);
            ASSERT_EQ(re.size(), 1u);
            EXPECT_EQ(canonicalKey(fromNormal(re[0])), canonicalKey(e));
            EXPECT_TRUE(isNuGoal(nuGoalTranslate(e))) << showElaborated(e);
        }
    }
    EXPECT_GT(worst, 3u);  // the generator does produce non-trivial clauses
}

TEST(Elaboration, ForallNewInsertsFreshnessGuard) {
    VarId x = freshVar("X");
    Name a = reftest::pname(0);
    ClausePtr d = dForall(x, dNew(a, dAtom(Term::app(intern("p"), {Term::var(x), Term::name(a)}))));
    ASSERT_EQ(countRedexes(d), 1u);
    Rule r;
    auto out = rewriteAt(d, 0, &r);
    ASSERT_TRUE(out.has_value());
    EXPECT_EQ(r, Rule::ForallNew);
    const ClausePtr& n = *out;
    ASSERT_EQ(n->kind, ClauseKind::New);
    ASSERT_EQ(n->left ? n->left->kind : n->right->kind, ClauseKind::Forall);
    EXPECT_FALSE(rewriteAt(d, 1).has_value());
    auto e = elaborate({d});
    ASSERT_EQ(e.size(), 1u);
    EXPECT_EQ(e[0].names.size(), 1u);
    EXPECT_EQ(e[0].vars.size(), 1u);
    EXPECT_NE(showElaborated(e[0]).find("#"), std::string::npos) << showElaborated(e[0]);
}

TEST(Elaboration, ImplicationOverConjunctionSplits) {
    GoalPtr g = gAtom(Term::app(intern("q"), {Term::app(intern("k"))}));
    ClausePtr d = dImp(g, dAnd(dAtom(Term::app(intern("p"), {Term::app(intern("k"))})), dTrue()));
    auto e = elaborate({d});
    ASSERT_EQ(e.size(), 1u);
    EXPECT_EQ(symbolText(headPredicate(e[0].head)), "p");
}

TEST(Elaboration, CorpusNormalFormsAreFixedPoints) {
    for (const char* f : {"lambda.apl", "pi.apl", "references.apl", "dependent.apl", "linear.apl", "dyadic.apl", "cbv.apl"}) {
        Program prog = loadCorpus(f);
        EXPECT_TRUE(warnIncomplete(prog.clauses).empty()) << f;
        for (const auto& c : prog.clauses) {
            std::size_t steps = 0;
            normalizeProgram({toClause(c)}, nullptr, &steps);
            EXPECT_EQ(steps, 0u) << f << ": " << showElaborated(c);
            EXPECT_TRUE(isNuGoal(nuGoalTranslate(c)));
        }
    }
}

TEST(Elaboration, IncompleteClausesAreFlagged) {
    Program prog = loadCorpus("incomplete.apl");
    auto ds = warnIncomplete(prog.clauses);
    std::size_t withNames = 0;
    for (const auto& c : prog.clauses) withNames += !c.names.empty();
    EXPECT_EQ(ds.size(), withNames);
    EXPECT_EQ(ds.size(), 4u);
    for (const auto& d : ds) {
        EXPECT_EQ(d.loc.file, "incomplete.apl");
        EXPECT_GT(d.loc.line, 0);
        EXPECT_FALSE(d.message.empty());
    }
}

TEST(Elaboration, AnswersAgreeWithRawClauses) {
    for (const char* name : {"lambda", "pi", "references", "dependent", "linear", "dyadic", "cbv", "incomplete"}) {
        std::string batchPath = std::string(APLOG_BATCH_DIR) + "/" + name + ".batch";
        auto bf = cli::parseBatch(reftest::readFile(batchPath), APLOG_BATCH_DIR);
        Program prog = loadCorpus(std::string(name) + ".apl");
        EngineOptions raw;
        raw.raw = true;
        Engine eRaw(prog, raw), eElab(prog);
        for (const auto& q : bf.queries) {
            Query query = parseQuery(prog, q.goal);
            auto a = solveAll(eElab, query, 20);
            auto b = solveAll(eRaw, query, 20);
            ASSERT_EQ(a.answers.size(), b.answers.size()) << name << ": " << q.goal;
            EXPECT_EQ(a.depthLimit, b.depthLimit) << q.goal;
            for (std::size_t i = 0; i < a.answers.size(); ++i)
                EXPECT_EQ(a.answers[i].text(), b.answers[i].text()) << name << ": " << q.goal;
        }
    }
}
