#include <gtest/gtest.h>

#include <random>
#include <regex>

#include "aplog/engine.hpp"
#include "aplog/error.hpp"
#include "aplog/surface.hpp"
#include "aplog/typecheck.hpp"
#include "checks.hpp"
#include "lambda_ref.hpp"

using namespace aplog;

namespace {

const std::vector<std::string> kCorpus = {"lambda.apl",  "pi.apl",     "references.apl", "dependent.apl",
                                          "linear.apl",  "dyadic.apl", "cbv.apl",        "incomplete.apl"};

std::vector<std::string> answerTexts(const Program& prog, const std::string& goal, std::size_t limit = 0) {
    Engine e(prog);
    auto res = solveAll(e, parseQuery(prog, goal), limit);
    std::vector<std::string> out;
    for (const auto& a : res.answers) out.push_back(a.text());
    return out;
}

std::string listText(const std::vector<int>& xs) {
    std::string s = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ", ";
        std::string t = "z";
        for (int j = 0; j < xs[i]; ++j) t = "s(" + t + ")";
        s += t;
    }
    return s + "]";
}

}  // namespace

class CorpusFile : public ::testing::TestWithParam<std::string> {};

TEST_P(CorpusFile, PrintParseRoundTrip) {
    std::string text = reftest::readFile(reftest::corpusPath(GetParam()));
    SurfaceProgram p = parseProgram(text, GetParam());
    std::string printed = printProgram(p);
    SurfaceProgram q = parseProgram(printed, "printed");
    EXPECT_TRUE(surfaceEqual(p, q)) << printed;
    EXPECT_EQ(printProgram(q), printed);
}

TEST_P(CorpusFile, ClosedClausesHaveNoFreeVariablesOrNames) {
    Program prog = loadProgramText(reftest::readFile(reftest::corpusPath(GetParam())), GetParam());
    ASSERT_FALSE(prog.closed.empty());
    for (const auto& d : prog.closed) {
        EXPECT_TRUE(freeVarsClause(d).empty()) << showClause(d);
        EXPECT_TRUE(freeNamesClause(d).empty()) << showClause(d);
    }
    EXPECT_EQ(prog.closed.size(), prog.clauses.size());
}

INSTANTIATE_TEST_SUITE_P(All, CorpusFile, ::testing::ValuesIn(kCorpus),
                         [](const auto& info) { return info.param.substr(0, info.param.find('.')); });

TEST(Frontend, ClauseOrderIsPreserved) {
    Program prog = loadProgramText("t : type.\na : t.\nb : t.\np :: t -> o.\np(b).\np(a).\n", "order.apl");
    auto as = answerTexts(prog, "p(X)");
    ASSERT_EQ(as.size(), 2u);
    EXPECT_EQ(as[0], "X = b");
    EXPECT_EQ(as[1], "X = a");
}

TEST(Frontend, ErrorsCarryFileLineColumn) {
    const std::regex loc(R"(^bad\.apl:\d+:\d+: .+)");
    const std::vector<std::string> bad = {
        "t : type.\np :: t -> o.\np(x).\n",                  // x is neither a name nor a constructor
        "id : name_type.\nc : t -> id.\n",                   // constructor into a name type
        "t : type.\np :: t -> o.\np(X) :- q(X).\n",          // undeclared predicate
        "t : type.\na : t.\na :: t -> o.\n",                 // defined symbol clashes with a constructor
        "t : type.\np :: t -> o.\np(X) :- X = .\n",          // syntax
        "id : name_type.\np :: id * id * id -> o.\np(A, B, C) :- C = (A~B)C.\n",  // name variables in a swap
    };
    for (const auto& text : bad) {
        try {
            loadProgramText(text, "bad.apl");
            ADD_FAILURE() << "accepted:\n" << text;
        } catch (const LoadError& e) {
            EXPECT_TRUE(std::regex_match(std::string(e.what()), loc)) << e.what();
        }
    }
}

TEST(Frontend, LowercaseIdentifiersResolveByType) {
    Program prog = loadProgramText(
        "id : name_type.\nexp : type.\nvar : id -> exp.\nc : exp.\np :: exp -> o.\np(var(x)).\np(c).\n", "res.apl");
    auto as = answerTexts(prog, "p(E)");
    ASSERT_EQ(as.size(), 2u);
    EXPECT_EQ(as[1], "E = c");
}

TEST(Flattening, AppendMatchesRelationalVersion) {
    Program prog = loadProgramText(
        "nat : type.\nz : nat.\ns : nat -> nat.\n"
        "append :: [nat] * [nat] -> [nat].\n"
        "append([], L) = L.\n"
        "append([X|L1], L2) = [X|append(L1, L2)].\n"
        "appr :: [nat] * [nat] * [nat] -> o.\n"
        "appr([], L, L).\n"
        "appr([X|L1], L2, [X|L3]) :- appr(L1, L2, L3).\n",
        "append.apl");
    std::vector<std::vector<int>> lists = {{}, {0}, {1}, {0, 1}, {1, 1, 0}};
    for (const auto& a : lists)
        for (const auto& b : lists) {
            std::string la = listText(a), lb = listText(b);
            EXPECT_EQ(answerTexts(prog, "X = append(" + la + ", " + lb + ")"), answerTexts(prog, "appr(" + la + ", " + lb + ", X)"));
        }
    for (const auto& l : lists) {
        std::string t = listText(l);
        EXPECT_EQ(answerTexts(prog, "appendp(X, Y, " + t + ")"), answerTexts(prog, "appr(X, Y, " + t + ")"));
        EXPECT_EQ(answerTexts(prog, "appendp(X, Y, " + t + ")").size(), l.size() + 1);
    }
}

TEST(Flattening, SubstMatchesRelationalVersion) {
    std::string text = reftest::readFile(reftest::corpusPath("lambda.apl")) +
                       "substr :: exp * exp * id * exp -> o.\n"
                       "substr(var(X), E, X, E).\n"
                       "substr(var(Y), E, X, var(Y)) :- X # Y.\n"
                       "substr(app(E1, E2), E, X, app(F1, F2)) :- substr(E1, E, X, F1), substr(E2, E, X, F2).\n"
                       "substr(lam(y\\E1), E, X, lam(y\\F1)) :- y # (X, E), substr(E1, E, X, F1).\n";
    Program prog = loadProgramText(text, "substr.apl");
    Engine e(prog);
    std::mt19937 rng(5);
    const std::vector<std::string> names = {"x", "y", "z"};
    for (int i = 0; i < 200; ++i) {
        auto body = reftest::randomLam(rng, 7, names);
        auto s = reftest::randomLam(rng, 3, names);
        std::string x = names[static_cast<std::size_t>(i) % 3];
        std::string args = reftest::surfaceLam(body) + ", " + reftest::surfaceLam(s) + ", " + x;
        auto fn = solveAll(e, parseQuery(prog, "R = subst(" + args + ")"));
        auto rel = solveAll(e, parseQuery(prog, "substr(" + args + ", R)"));
        ASSERT_EQ(fn.answers.size(), rel.answers.size()) << args;
        for (std::size_t j = 0; j < fn.answers.size(); ++j) {
            const Term& a = fn.answers[j].bindings.at(0).second;
            const Term& b = rel.answers[j].bindings.at(0).second;
            EXPECT_TRUE(alphaEq(a, b)) << args << ": " << show(a) << " vs " << show(b);
        }
    }
}

TEST(Frontend, FileQueriesAreCollected) {
    std::string text = "t : type.\na : t.\np :: t -> o.\np(a).\n?- p(X).\n?- p(a).\n";
    Program prog;
    Loader loader(prog);
    loader.load(parseProgram(text, "q.apl"));
    ASSERT_EQ(loader.queries().size(), 2u);
    EXPECT_EQ(printExpr(loader.queries()[1].body), "p(a)");
}
