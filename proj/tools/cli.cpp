#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "aplog/aplog.h"

namespace aplog::cli {

namespace {

struct SessionDeleter {
    void operator()(aplog_session* s) const { aplog_session_free(s); }
};
struct QueryDeleter {
    void operator()(aplog_query* q) const { aplog_query_free(q); }
};
using SessionPtr = std::unique_ptr<aplog_session, SessionDeleter>;
using QueryPtr = std::unique_ptr<aplog_query, QueryDeleter>;

std::string take(char* s) {
    std::string r = s ? s : "";
    aplog_string_free(s);
    return r;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

void traceTo(const char* line, void* user) { *static_cast<std::ostream*>(user) << line << "\n"; }

// Builds a session and loads every program file. nullptr on load failure,
// with the error already reported.
SessionPtr openSession(const SessionConfig& cfg, const std::vector<std::string>& extra, std::ostream& out,
                       std::ostream& err) {
    SessionPtr s(aplog_session_new());
    if (!s) {
        err << "error: out of memory\n";
        return nullptr;
    }
    aplog_set_depth(s.get(), cfg.depthLimit);
    aplog_set_raw(s.get(), cfg.raw ? 1 : 0);
    if (cfg.traceEnabled) aplog_set_trace(s.get(), traceTo, &out);
    std::vector<std::string> files = cfg.programFiles;
    files.insert(files.end(), extra.begin(), extra.end());
    for (const auto& f : files) {
        if (aplog_load_file(s.get(), f.c_str()) != APLOG_OK) {
            err << aplog_last_error(s.get()) << "\n";
            return nullptr;
        }
    }
    if (cfg.checkNuGoal) {
        char* text = nullptr;
        std::size_t n = 0;
        if (aplog_nu_goal_report(s.get(), &text, &n) == APLOG_OK) err << take(text);
    }
    if (cfg.showElaborated) {
        char* text = nullptr;
        if (aplog_show_elaborated(s.get(), &text) == APLOG_OK) out << take(text);
    }
    return s;
}

// strips a trailing "." (the query terminator) and surrounding blanks
std::string goalText(std::string g) {
    g = trim(g);
    if (g.rfind("?-", 0) == 0) g = trim(g.substr(2));
    if (!g.empty() && g.back() == '.') g.pop_back();
    return trim(g);
}

// Position of a line comment start, ignoring quoted characters.
std::size_t commentStart(const std::string& line) {
    bool quote = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (c == '\\' && quote) {
            ++i;
            continue;
        }
        if (c == '\'' || c == '"') quote = !quote;
        if (c == '%' && !quote) return i;
    }
    return std::string::npos;
}

bool endsQuery(const std::string& code) {
    auto t = trim(code);
    return !t.empty() && t.back() == '.';
}

}  // namespace

Expectation parseExpectation(const std::string& comment) {
    Expectation e;
    auto p = comment.find("%expect");
    if (p == std::string::npos) return e;
    std::istringstream ss(comment.substr(p + 7));
    std::string w;
    ss >> w;
    if (w == "yes") {
        e.kind = Expectation::Yes;
    } else if (w == "no") {
        e.kind = Expectation::No;
    } else if (w.rfind("count=", 0) == 0) {
        e.kind = Expectation::Count;
        try {
            std::size_t used = 0;
            e.count = std::stoul(w.substr(6), &used);
            if (used != w.size() - 6) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw std::runtime_error("bad count in '" + trim(comment) + "'");
        }
    } else {
        throw std::runtime_error("unknown expectation '" + w + "'");
    }
    return e;
}

BatchFile parseBatch(const std::string& text, const std::string& dir) {
    BatchFile bf;
    std::istringstream in(text);
    std::string line;
    int lineNo = 0;
    bool open = false;
    BatchQuery cur;
    while (std::getline(in, line)) {
        ++lineNo;
        auto cpos = commentStart(line);
        std::string code = trim(line.substr(0, cpos));
        std::string comment = cpos == std::string::npos ? "" : line.substr(cpos);
        if (!open) {
            if (code.empty()) {
                auto c = trim(comment);
                if (c.rfind("%load", 0) == 0) {
                    auto path = trim(c.substr(5));
                    if (path.empty()) throw std::runtime_error("line " + std::to_string(lineNo) + ": %load needs a path");
                    std::filesystem::path p(path);
                    if (p.is_relative() && !dir.empty()) p = std::filesystem::path(dir) / p;
                    bf.loads.push_back(p.string());
                }
                continue;
            }
            if (code.rfind("?-", 0) != 0)
                throw std::runtime_error("line " + std::to_string(lineNo) + ": expected '?-' query");
            cur = BatchQuery{};
            cur.line = lineNo;
            open = true;
        }
        cur.goal += (cur.goal.empty() ? "" : " ") + code;
        if (cur.expect.kind == Expectation::None) cur.expect = parseExpectation(comment);
        if (endsQuery(code)) {
            cur.goal = goalText(cur.goal);
            bf.queries.push_back(cur);
            open = false;
        }
    }
    if (open) throw std::runtime_error("line " + std::to_string(cur.line) + ": query not terminated by '.'");
    return bf;
}

int runBatch(const SessionConfig& cfg, const std::string& queryFile, std::ostream& out, std::ostream& err) {
    std::ifstream f(queryFile);
    if (!f) {
        err << queryFile << ":0:0: cannot open file\n";
        return LoadFailed;
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    BatchFile bf;
    try {
        bf = parseBatch(ss.str(), std::filesystem::path(queryFile).parent_path().string());
    } catch (const std::exception& e) {
        err << queryFile << ": " << e.what() << "\n";
        return LoadFailed;
    }
    auto s = openSession(cfg, bf.loads, out, err);
    if (!s) return LoadFailed;

    // printed answers per query; counting goes on past this
    const std::size_t shown = cfg.maxSolutions.value_or(10);
    const std::size_t countCap = 100000;
    int failures = 0;
    for (const auto& q : bf.queries) {
        out << "?- " << q.goal << ".\n";
        aplog_query* raw = nullptr;
        if (aplog_query_open(s.get(), q.goal.c_str(), &raw) != APLOG_OK) {
            err << aplog_last_error(s.get()) << "\n";
            out << "FAIL (line " << q.line << "): query rejected\n";
            ++failures;
            continue;
        }
        QueryPtr qp(raw);
        // yes needs one answer, no needs finite failure, count needs the whole stream
        std::size_t want = countCap;
        if (q.expect.kind == Expectation::Yes) want = std::max<std::size_t>(1, shown);
        if (q.expect.kind == Expectation::None) want = shown;
        std::size_t n = 0;
        bool depth = false, exhausted = false;
        while (n < want) {
            char* ans = nullptr;
            aplog_status st = aplog_query_next(qp.get(), &ans);
            if (st == APLOG_OK) {
                std::string a = take(ans);
                if (n < shown) out << a << "\n";
                ++n;
                continue;
            }
            if (st == APLOG_ERR_DEPTH) depth = true;
            else if (st != APLOG_NO_MORE) err << aplog_last_error(s.get()) << "\n";
            exhausted = true;
            break;
        }
        if (n > shown) out << "(" << (n - shown) << " more)\n";
        if (n == 0) out << (depth ? "No (step limit reached).\n" : "No.\n");

        bool ok = true;
        switch (q.expect.kind) {
            case Expectation::None: break;
            case Expectation::Yes: ok = n >= 1; break;
            case Expectation::No: ok = n == 0 && exhausted && !depth; break;
            case Expectation::Count: ok = n == q.expect.count && exhausted && !depth; break;
        }
        if (q.expect.kind != Expectation::None) {
            if (ok) {
                out << "ok\n";
            } else {
                ++failures;
                out << "FAIL (line " << q.line << "): got " << n << " answer(s)" << (depth ? ", step limit hit" : "")
                    << (exhausted ? "" : ", stream not exhausted") << "\n";
            }
        }
    }
    out << bf.queries.size() << " queries, " << failures << " mismatches\n";
    return failures ? Mismatch : Ok;
}

int runRepl(const SessionConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
    auto s = openSession(cfg, {}, out, err);
    if (!s) return LoadFailed;
    std::string pending, line;
    out << "?- " << std::flush;
    while (std::getline(in, line)) {
        auto cpos = commentStart(line);
        std::string code = trim(line.substr(0, cpos));
        if (pending.empty() && (code == ":quit" || code == ":q" || code == "halt.")) break;
        if (!code.empty()) pending += (pending.empty() ? "" : " ") + code;
        if (pending.empty() || !endsQuery(pending)) {
            out << (pending.empty() ? "?- " : "|  ") << std::flush;
            continue;
        }
        std::string goal = goalText(pending);
        pending.clear();
        aplog_query* raw = nullptr;
        if (aplog_query_open(s.get(), goal.c_str(), &raw) != APLOG_OK) {
            err << aplog_last_error(s.get()) << "\n";
            out << "?- " << std::flush;
            continue;
        }
        QueryPtr qp(raw);
        std::size_t n = 0;
        for (;;) {
            if (cfg.maxSolutions && n >= *cfg.maxSolutions) break;
            char* ans = nullptr;
            aplog_status st = aplog_query_next(qp.get(), &ans);
            if (st != APLOG_OK) {
                if (st == APLOG_ERR_DEPTH) out << "No (step limit reached).\n";
                else if (st == APLOG_NO_MORE) out << "No.\n";
                else err << aplog_last_error(s.get()) << "\n";
                break;
            }
            ++n;
            std::string a = take(ans);
            out << a << " " << std::flush;
            std::string reply;
            if (!std::getline(in, reply) || trim(reply) != ";") {
                out << (a.back() == '.' ? "\n" : ".\n");
                break;
            }
            out << ";\n";
        }
        out << "?- " << std::flush;
    }
    out << "\n";
    return Ok;
}

int runOracle(const SessionConfig& cfg, std::ostream& out, std::ostream& err) {
    auto s = openSession(cfg, {}, out, err);
    if (!s) return LoadFailed;
    char* text = nullptr;
    if (aplog_oracle(s.get(), cfg.oracleMode->first, cfg.oracleMode->second, &text) != APLOG_OK) {
        err << "oracle: " << aplog_last_error(s.get()) << "\n";
        return Mismatch;
    }
    out << take(text);
    return Ok;
}

int main(int argc, char** argv, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"aplog: nominal logic programming interpreter"};
    SessionConfig cfg;
    std::pair<std::size_t, std::size_t> oracle{0, 0};
    std::size_t maxSol = 0;
    std::string batch;
    app.add_option("files", cfg.programFiles, "program files (.apl)");
    app.add_option("--depth", cfg.depthLimit, "transition limit per search branch")->check(CLI::PositiveNumber);
    app.add_flag("--trace", cfg.traceEnabled, "print one line per transition");
    app.add_flag("--check-nu-goal", cfg.checkNuGoal, "warn about clauses outside the nu-goal class");
    app.add_flag("--show-elaborated", cfg.showElaborated, "print clause normal forms after loading");
    app.add_flag("--raw", cfg.raw, "resolve against unelaborated closed clauses");
    auto* oOpt = app.add_option("--oracle", oracle, "saturate with depth D and K names per type, print atoms");
    auto* mOpt = app.add_option("--max-solutions", maxSol, "stop after N answers")->check(CLI::PositiveNumber);
    auto* bOpt = app.add_option("--batch", batch, "run queries from FILE against %expect annotations");
    oOpt->excludes(bOpt);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? Ok : LoadFailed;
    }
    if (*mOpt) cfg.maxSolutions = maxSol;
    if (*oOpt) {
        cfg.oracleMode = oracle;
        return runOracle(cfg, out, err);
    }
    if (*bOpt) return runBatch(cfg, batch, out, err);
    return runRepl(cfg, in, out, err);
}

}  // namespace aplog::cli
