#include <gtest/gtest.h>

#include <random>
#include <set>

#include "aplog/term.hpp"
#include "checks.hpp"
#include "nominal_ref.hpp"

using namespace aplog;
using reftest::pname;

namespace {

Term nm(int i) { return Term::name(pname(i)); }
Term k() { return Term::app(intern("k")); }
Term f(Term t) { return Term::app(intern("f"), {std::move(t)}); }
Term g(Term t, Term u) { return Term::app(intern("g"), {std::move(t), std::move(u)}); }

}  // namespace

TEST(Names, EqualityIsById) {
    Name a1 = sourceName("a", reftest::nmType());
    Name a2 = sourceName("a", reftest::nmType());
    EXPECT_EQ(a1, a2);
    EXPECT_NE(sourceName("a", reftest::nmType()), sourceName("b", reftest::nmType()));
}

TEST(Names, FreshNamesAreNeverReissued) {
    std::set<std::uint32_t> seen;
    for (int i = 0; i < 1000; ++i) ASSERT_TRUE(seen.insert(freshName("x", reftest::nmType()).id).second);
    Name x = freshName("x", reftest::nmType());
    EXPECT_TRUE(isInternal(x));
    EXPECT_EQ(nameStem(x), "x");
    EXPECT_FALSE(isInternal(pname(0)));
}

TEST(Permutations, InverseAndIdentity) {
    Permutation id;
    EXPECT_TRUE(id.isIdentity());
    EXPECT_TRUE(id.swaps().empty());
    Permutation p = Permutation::swap(pname(0), pname(1)).compose(Permutation::swap(pname(1), pname(2)));
    EXPECT_TRUE(p.compose(p.inverse()).isIdentity());
    EXPECT_TRUE(p.inverse().compose(p).isIdentity());
    auto sup = p.support();
    EXPECT_EQ(sup.size(), 3u);
    for (Name a : sup) EXPECT_NE(p.apply(a), a);
    EXPECT_EQ(p.apply(pname(3)), pname(3));
    // (a b)((b c) c) = (a b) b = a
    EXPECT_EQ(p.apply(pname(2)), pname(0));
}

TEST(Permutations, ActionThenInverseIsIdentityOnTerms) {
    std::mt19937 rng(7);
    auto ts = reftest::groundTerms({}, 2);
    Permutation p = Permutation::swap(pname(0), pname(2)).compose(Permutation::swap(pname(0), pname(1)));
    for (int i = 0; i < 500; ++i) {
        const Term& t = ts[std::uniform_int_distribution<std::size_t>(0, ts.size() - 1)(rng)];
        EXPECT_EQ(permute(p.inverse(), permute(p, t)), t);
    }
}

TEST(Swapping, SwapsBindersToo) {
    // (a b) <a>g(a, b) = <b>g(b, a)
    Term t = Term::abs(pname(0), g(nm(0), nm(1)));
    EXPECT_EQ(swap(pname(0), pname(1), t), Term::abs(pname(1), g(nm(1), nm(0))));
    EXPECT_EQ(swap(pname(0), pname(1), k()), k());
}

TEST(Swapping, SuspendsOnVariables) {
    VarId x = freshVar("X");
    Term s = swap(pname(0), pname(1), Term::var(x));
    ASSERT_TRUE(s.isVar());
    EXPECT_EQ(s.perm(), Permutation::swap(pname(0), pname(1)));
    // the suspension is applied when the variable is instantiated
    Term inst = substVar(s, x, f(nm(0)));
    EXPECT_EQ(inst, f(nm(1)));
    EXPECT_EQ(swap(pname(0), pname(1), s), Term::var(x));
}

TEST(GroundAlgebra, DisplayedEquations) {
    auto r = reftest::groundAlgebraExamples();
    EXPECT_TRUE(r.ok()) << r.summary();
}

TEST(GroundAlgebra, AgreesWithReferenceRulesUpToDepthTwo) {
    auto r = reftest::groundAlgebraExhaustive(2, 3);
    EXPECT_TRUE(r.ok()) << r.summary();
    EXPECT_GT(r.checked, 10000u);
}

TEST(GroundAlgebra, FreshnessExamples) {
    EXPECT_TRUE(freshFor(pname(0), Term::abs(pname(0), nm(0))));
    EXPECT_FALSE(freshFor(pname(0), Term::abs(pname(1), nm(0))));
    EXPECT_TRUE(freshFor(pname(0), g(nm(1), k())));
    EXPECT_FALSE(freshFor(pname(0), nm(0)));
    EXPECT_THROW(freshFor(pname(0), Term::var(freshVar("X"))), std::invalid_argument);
}

TEST(GroundAlgebra, AlphaEqualityExamples) {
    // <a>a = <b>b, <a>b != <b>b, <a><b>g(a,b) = <b><a>g(b,a)
    EXPECT_TRUE(alphaEq(Term::abs(pname(0), nm(0)), Term::abs(pname(1), nm(1))));
    EXPECT_FALSE(alphaEq(Term::abs(pname(0), nm(1)), Term::abs(pname(1), nm(1))));
    EXPECT_TRUE(alphaEq(Term::abs(pname(0), Term::abs(pname(1), g(nm(0), nm(1)))),
                        Term::abs(pname(1), Term::abs(pname(0), g(nm(1), nm(0))))));
    EXPECT_FALSE(alphaEq(f(nm(0)), g(nm(0), nm(0))));
}

TEST(GroundAlgebra, SupportOfExamples) {
    EXPECT_EQ(supp(Term::abs(pname(0), g(nm(0), nm(1)))), (std::set<Name>{pname(1)}));
    EXPECT_TRUE(supp(k()).empty());
}

TEST(GroundAlgebra, GroundEquivariance) {
    // <a>g(a,b) ~ <a>g(a,c) through (b c), but not ~ <a>g(a,a)
    Term t = Term::abs(pname(0), g(nm(0), nm(1)));
    Term u = Term::abs(pname(0), g(nm(0), nm(2)));
    auto pi = groundEquivariant(t, u);
    ASSERT_TRUE(pi.has_value());
    EXPECT_TRUE(alphaEq(permute(*pi, t), u));
    EXPECT_FALSE(groundEquivariant(t, Term::abs(pname(0), g(nm(0), nm(0)))).has_value());
    EXPECT_FALSE(groundEquivariant(g(nm(0), nm(1)), g(nm(0), nm(0))).has_value());
}

TEST(GroundAlgebra, AlphaKeyDecidesAlphaEquality) {
    auto ts = reftest::groundTerms({}, 2);
    for (std::size_t i = 0; i < ts.size(); i += 7)
        for (std::size_t j = 0; j < ts.size(); j += 5)
            ASSERT_EQ(alphaKey(ts[i]) == alphaKey(ts[j]), alphaEq(ts[i], ts[j])) << show(ts[i]) << " / " << show(ts[j]);
}

TEST(RandomTerms, PropertiesHold) {
    auto r = reftest::randomTermProperties(2000, 11);
    EXPECT_TRUE(r.ok()) << r.summary();
}

TEST(RandomTerms, InvolutionOnOpenTerms) {
    VarId x = freshVar("X");
    Term t = g(Term::abs(pname(0), Term::var(x, Permutation::swap(pname(1), pname(2)))), f(Term::var(x)));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) EXPECT_EQ(swap(pname(i), pname(j), swap(pname(i), pname(j), t)), t);
}

TEST(ReferenceRules, CheckerRejectsBrokenDerivations) {
    using namespace reftest;
    R t = rabs(0, rname(0));
    R u = rabs(1, rname(1));
    auto d = proveEq(t, u);
    ASSERT_TRUE(d.has_value());
    EXPECT_TRUE(checkDerivation(*d));
    Derivation bad = *d;
    bad.rule = "eq-abs-same";
    EXPECT_FALSE(checkDerivation(bad));
    Derivation dropped = *d;
    dropped.premises.pop_back();
    EXPECT_FALSE(checkDerivation(dropped));
    EXPECT_FALSE(proveEq(rabs(0, rname(1)), rabs(1, rname(1))).has_value());
}
