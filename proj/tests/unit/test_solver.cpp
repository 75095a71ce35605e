#include <gtest/gtest.h>

#include "aplog/store.hpp"
#include "checks.hpp"
#include "nominal_ref.hpp"

using namespace aplog;
using reftest::pname;

namespace {

Term nm(int i) { return Term::name(pname(i)); }
Term f(Term t) { return Term::app(intern("f"), {std::move(t)}); }
Term g(Term t, Term u) { return Term::app(intern("g"), {std::move(t), std::move(u)}); }
Term k() { return Term::app(intern("k")); }

bool solvable(Store& s) { return s.checkSatisfiable(); }

}  // namespace

TEST(Unifier, BruteForceAtSmallScale) {
    reftest::UnifierScale sc;
    sc.oneVarDepth = 2;
    sc.witnessDepth = 1;
    sc.freshDepth = 1;
    auto r = reftest::unifierBruteForce(sc);
    EXPECT_TRUE(r.ok()) << r.summary();
    EXPECT_GT(r.checked, 100000u);
}

TEST(Unifier, BindsAndResolves) {
    Store s;
    VarId x = freshVar("X");
    ASSERT_TRUE(s.unify(g(Term::var(x), k()), g(f(nm(0)), k())));
    EXPECT_EQ(s.resolve(Term::var(x)), f(nm(0)));
    EXPECT_TRUE(s.isBound(x));
}

TEST(Unifier, OccursCheck) {
    Store s;
    VarId x = freshVar("X");
    EXPECT_FALSE(s.unify(Term::var(x), f(Term::var(x))));
}

TEST(Unifier, AbstractionsRenameThroughSwapping) {
    // <a>X = <b>f(b) gives X = f(a) and a # f(b)
    Store s;
    VarId x = freshVar("X");
    ASSERT_TRUE(s.unify(Term::abs(pname(0), Term::var(x)), Term::abs(pname(1), f(nm(1)))));
    EXPECT_TRUE(alphaEq(s.resolve(Term::var(x)), f(nm(0))));
    // <a>X = <b>a has no solution: a is not fresh for <b>a
    Store t;
    EXPECT_FALSE(t.unify(Term::abs(pname(0), Term::var(x)), Term::abs(pname(1), nm(0))));
}

TEST(Unifier, SuspensionAgainstItselfRecordsFreshness) {
    // (a b)X = X holds iff a # X and b # X
    Store s;
    VarId x = freshVar("X");
    ASSERT_TRUE(s.unify(Term::var(x, Permutation::swap(pname(0), pname(1))), Term::var(x)));
    auto fs = s.freshAtomsOf(x);
    EXPECT_EQ(std::set<Name>(fs.begin(), fs.end()), (std::set<Name>{pname(0), pname(1)}));
    Store c = s;
    EXPECT_FALSE(c.unify(Term::var(x), nm(0)));
    Store d = s;
    EXPECT_TRUE(d.unify(Term::var(x), nm(2)));
}

TEST(Unifier, FreshnessThenBinding) {
    Store s;
    VarId x = freshVar("X");
    ASSERT_TRUE(s.fresh(nm(0), g(Term::var(x), k())));
    Store bad = s;
    EXPECT_FALSE(bad.unify(Term::var(x), f(nm(0))));
    Store ok = s;
    EXPECT_TRUE(ok.unify(Term::var(x), Term::abs(pname(0), nm(0))));
}

TEST(Unifier, NameVariables) {
    VarId n = freshVar("N", reftest::nmType());
    Store s;
    ASSERT_TRUE(s.fresh(Term::var(n), nm(0)));
    ASSERT_TRUE(s.fresh(Term::var(n), nm(1)));
    EXPECT_TRUE(solvable(s));  // N = c
    // still satisfiable with every pool name excluded: some other name works
    Store t = s;
    ASSERT_TRUE(t.fresh(Term::var(n), nm(2)));
    EXPECT_TRUE(solvable(t));
    // N # a and N = a clash
    Store v = s;
    EXPECT_FALSE(v.unify(Term::var(n), nm(0)) && solvable(v));
    // N # N is never satisfiable
    Store u;
    bool ok = u.fresh(Term::var(n), Term::var(n)) && solvable(u);
    EXPECT_FALSE(ok);
    // <N>N = <a>a holds for every N
    Store w;
    EXPECT_TRUE(w.unify(Term::abs(Term::var(n), Term::var(n)), Term::abs(pname(0), nm(0))) && solvable(w));
}

TEST(Store, CopiesAreIndependent) {
    Store s;
    VarId x = freshVar("X"), y = freshVar("Y");
    ASSERT_TRUE(s.unify(Term::var(x), f(Term::var(y))));
    Store c = s;
    ASSERT_TRUE(c.unify(Term::var(y), k()));
    EXPECT_FALSE(s.isBound(y));
    EXPECT_TRUE(c.isBound(y));
    EXPECT_EQ(c.resolve(Term::var(x)), f(k()));
    EXPECT_EQ(s.resolve(Term::var(x)), f(Term::var(y)));
}

TEST(Store, SolvedFormIsIdempotentAfterEveryUpdate) {
    Store s;
    VarId x = freshVar("X"), y = freshVar("Y"), z = freshVar("Z");
    std::vector<std::pair<Term, Term>> eqs = {
        {Term::var(x), g(Term::var(y), Term::var(z))},
        {Term::var(y), f(Term::var(z))},
        {Term::var(z), Term::abs(pname(0), Term::var(freshVar("W")))},
    };
    for (const auto& [l, r] : eqs) {
        ASSERT_TRUE(s.unify(l, r));
        auto sf = s.solvedForm();
        for (const auto& [v, t] : sf) {
            for (VarId w : vars(t)) EXPECT_EQ(sf.count(w), 0u) << varDisplay(v);
            EXPECT_EQ(substVars(t, sf), t);
        }
    }
}
