#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "aplog/aplog.h"
#include "checks.hpp"
#include "cli.hpp"

using namespace aplog::cli;

namespace {

struct Run {
    int status;
    std::string out, err;
};

Run run(std::vector<std::string> args, const std::string& input = "") {
    args.insert(args.begin(), "aplog");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::istringstream in(input);
    std::ostringstream out, err;
    int st = main(static_cast<int>(argv.size()), argv.data(), in, out, err);
    return {st, out.str(), err.str()};
}

std::string writeTemp(const std::string& name, const std::string& text) {
    std::string p = ::testing::TempDir() + name;
    std::ofstream(p) << text;
    return p;
}

const char* kGraph =
    "node : type.\nn1 : node.\nn2 : node.\nn3 : node.\n"
    "edge :: node * node -> o.\nedge(n1, n2).\nedge(n2, n3).\n"
    "path :: node * node -> o.\npath(X, Y) :- edge(X, Y).\npath(X, Z) :- edge(X, Y), path(Y, Z).\n";

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

}  // namespace

TEST(Batch, Expectations) {
    EXPECT_EQ(parseExpectation("% nothing").kind, Expectation::None);
    EXPECT_EQ(parseExpectation("%expect yes").kind, Expectation::Yes);
    EXPECT_EQ(parseExpectation(" %expect no ").kind, Expectation::No);
    auto c = parseExpectation("%expect count=12");
    EXPECT_EQ(c.kind, Expectation::Count);
    EXPECT_EQ(c.count, 12u);
    EXPECT_THROW(parseExpectation("%expect count=1x"), std::runtime_error);
    EXPECT_THROW(parseExpectation("%expect maybe"), std::runtime_error);
}

TEST(Batch, ParsesLoadsQueriesAndLines) {
    auto bf = parseBatch("%load a.apl\n% comment\n?- p(X). %expect count=2\n?- q,\n   r. %expect no\n?- s.\n", "/d");
    ASSERT_EQ(bf.loads.size(), 1u);
    EXPECT_EQ(bf.loads[0], "/d/a.apl");
    ASSERT_EQ(bf.queries.size(), 3u);
    EXPECT_EQ(bf.queries[0].goal, "p(X)");
    EXPECT_EQ(bf.queries[0].line, 3);
    EXPECT_EQ(bf.queries[0].expect.count, 2u);
    EXPECT_EQ(bf.queries[1].expect.kind, Expectation::No);
    EXPECT_EQ(bf.queries[2].expect.kind, Expectation::None);
}

TEST(Cli, ExitCodes) {
    std::string prog = writeTemp("graph.apl", kGraph);
    std::string good = writeTemp("good.batch", "%load " + prog + "\n?- path(n1, X). %expect count=2\n?- path(n3, X). %expect no\n");
    std::string bad = writeTemp("bad.batch", "%load " + prog + "\n?- path(n1, n3). %expect no\n");
    auto g = run({"--batch", good});
    EXPECT_EQ(g.status, Ok) << g.out << g.err;
    EXPECT_NE(g.out.find("2 queries, 0 mismatches"), std::string::npos);
    auto b = run({"--batch", bad});
    EXPECT_EQ(b.status, Mismatch);
    EXPECT_NE(b.out.find("FAIL (line 2)"), std::string::npos);
    std::string broken = writeTemp("broken.apl", "node : type.\nedge :: node -> o.\nedge(X) :- \n");
    auto l = run({broken}, "");
    EXPECT_EQ(l.status, LoadFailed);
    EXPECT_FALSE(l.err.empty());
    EXPECT_EQ(run({"/nonexistent/x.apl"}).status, LoadFailed);
}

TEST(Cli, BadOptions) {
    EXPECT_EQ(run({"--depth", "0"}).status, LoadFailed);
    EXPECT_EQ(run({"--max-solutions", "0"}).status, LoadFailed);
    EXPECT_EQ(run({"--oracle", "1", "1", "--batch", "x.batch"}).status, LoadFailed);
    EXPECT_EQ(run({"--help"}).status, Ok);
}

TEST(Cli, ReplAnswersAndBacktracks) {
    std::string prog = writeTemp("graph2.apl", kGraph);
    auto r = run({prog}, "path(n1, X).\n;\n;\npath(n3, n1).\nedge(n1,\n n2).\n:quit\n");
    EXPECT_EQ(r.status, Ok) << r.err;
    EXPECT_NE(r.out.find("X = n2 ;"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("X = n3 ;"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("No."), std::string::npos);
    EXPECT_NE(r.out.find("Yes."), std::string::npos);
    EXPECT_NE(r.out.find("|  "), std::string::npos);  // continuation prompt
    auto e = run({prog}, "path(n1, undefined_thing).\n");
    EXPECT_EQ(e.status, Ok);
    EXPECT_FALSE(e.err.empty());
}

TEST(Cli, StepLimitIsReported) {
    std::string loop = writeTemp("loop.apl", "t : type.\nloop :: t -> o.\nloop(X) :- loop(X).\n");
    auto r = run({loop, "--depth", "50"}, "loop(X).\n");
    EXPECT_NE(r.out.find("No (step limit reached)."), std::string::npos) << r.out;
}

TEST(Cli, TraceGoesThroughTheCallback) {
    std::string prog = writeTemp("graph3.apl", kGraph);
    auto r = run({prog, "--trace"}, "path(n1, n3).\n");
    EXPECT_NE((r.out + r.err).find("B | path(n1,n3) |"), std::string::npos) << r.out << r.err;
}

TEST(Cli, OracleOutputIsSorted) {
    std::string prog = writeTemp("graph4.apl", kGraph);
    auto r = run({prog, "--oracle", "1", "1"});
    EXPECT_EQ(r.status, Ok) << r.err;
    auto ls = lines(r.out);
    EXPECT_EQ(ls.size(), 5u);  // two edges, three paths
    EXPECT_TRUE(std::is_sorted(ls.begin(), ls.end()));
    EXPECT_NE(std::find(ls.begin(), ls.end(), "path(n1,n3)"), ls.end()) << r.out;
}

TEST(CApi, SessionLifecycle) {
    aplog_session* s = aplog_session_new();
    ASSERT_NE(s, nullptr);
    EXPECT_EQ(aplog_set_depth(s, 0), APLOG_ERR_ARG);
    EXPECT_EQ(aplog_load_string(s, "node : type.\nedge :: node -> o.\nedge(X) :- \n", "bad.apl"), APLOG_ERR_LOAD);
    EXPECT_NE(std::string(aplog_last_error(s)).find("bad.apl:"), std::string::npos);
    ASSERT_EQ(aplog_load_string(s, kGraph, "g.apl"), APLOG_OK);
    EXPECT_STREQ(aplog_last_error(s), "");

    aplog_query* q = nullptr;
    EXPECT_EQ(aplog_query_open(s, "path(n1, nope)", &q), APLOG_ERR_QUERY);
    ASSERT_EQ(aplog_query_open(s, "path(n1, X)", &q), APLOG_OK);
    std::vector<std::string> got;
    char* a = nullptr;
    aplog_status st;
    while ((st = aplog_query_next(q, &a)) == APLOG_OK) {
        got.push_back(a);
        aplog_string_free(a);
    }
    EXPECT_EQ(st, APLOG_NO_MORE);
    EXPECT_EQ(got, (std::vector<std::string>{"X = n2", "X = n3"}));
    aplog_query_free(q);

    ASSERT_EQ(aplog_query_open(s, "edge(n1, n2)", &q), APLOG_OK);
    ASSERT_EQ(aplog_query_next(q, &a), APLOG_OK);
    EXPECT_STREQ(a, "Yes.");
    aplog_string_free(a);
    aplog_query_free(q);

    char* text = nullptr;
    ASSERT_EQ(aplog_oracle(s, 1, 1, &text), APLOG_OK);
    EXPECT_NE(std::string(text).find("path(n1,n3)"), std::string::npos);
    aplog_string_free(text);
    ASSERT_EQ(aplog_show_elaborated(s, &text), APLOG_OK);
    EXPECT_FALSE(std::string(text).empty());
    aplog_string_free(text);
    std::size_t n = 99;
    ASSERT_EQ(aplog_nu_goal_report(s, &text, &n), APLOG_OK);
    EXPECT_EQ(n, 0u);
    aplog_string_free(text);
    aplog_session_free(s);
}

TEST(CApi, NullArguments) {
    EXPECT_EQ(aplog_set_depth(nullptr, 5), APLOG_ERR_ARG);
    EXPECT_EQ(aplog_load_string(nullptr, "", "x"), APLOG_ERR_ARG);
    EXPECT_EQ(aplog_query_next(nullptr, nullptr), APLOG_ERR_ARG);
    EXPECT_STREQ(aplog_last_error(nullptr), "");
    EXPECT_EQ(aplog_file_query_count(nullptr), 0u);
    aplog_session_free(nullptr);
    aplog_query_free(nullptr);
}

TEST(CApi, TraceAndDepth) {
    aplog_session* s = aplog_session_new();
    ASSERT_EQ(aplog_load_string(s, "t : type.\nloop :: t -> o.\nloop(X) :- loop(X).\n?- loop(Y).\n", "l.apl"), APLOG_OK);
    EXPECT_EQ(aplog_file_query_count(s), 1u);
    EXPECT_NE(aplog_file_query(s, 0), nullptr);
    EXPECT_EQ(aplog_file_query(s, 1), nullptr);
    std::size_t calls = 0;
    aplog_set_trace(s, [](const char*, void* u) { ++*static_cast<std::size_t*>(u); }, &calls);
    aplog_set_depth(s, 20);
    aplog_query* q = nullptr;
    ASSERT_EQ(aplog_query_open(s, "loop(X)", &q), APLOG_OK);
    char* a = nullptr;
    EXPECT_EQ(aplog_query_next(q, &a), APLOG_ERR_DEPTH);
    EXPECT_EQ(a, nullptr);
    EXPECT_GE(calls, 20u);
    aplog_query_free(q);
    aplog_session_free(s);
}
