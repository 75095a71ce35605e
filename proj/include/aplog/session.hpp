#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "aplog/elaborate.hpp"
#include "aplog/engine.hpp"
#include "aplog/program.hpp"
#include "aplog/surface.hpp"

namespace aplog {

// One running query. Keeps the program snapshot it was opened against.
class QueryRun {
public:
    QueryRun(std::shared_ptr<const Program> prog, EngineOptions opts, const std::string& goal);

    AnswerStream::Status next(Answer& out) { return stream_.next(out); }
    const Query& query() const { return query_; }

private:
    std::shared_ptr<const Program> prog_;
    Engine engine_;
    Query query_;
    AnswerStream stream_;
};

// Loaded program plus engine settings. Loading is all-or-nothing per
// file: a failed load leaves the session unchanged.
class Session {
public:
    Session();

    void setDepth(std::size_t steps) { opts_.maxSteps = steps; }
    void setTrace(std::function<void(const std::string&)> f) { opts_.trace = std::move(f); }
    void setRaw(bool raw) { opts_.raw = raw; }
    const EngineOptions& options() const { return opts_; }

    void loadFile(const std::string& path);
    void loadString(const std::string& text, const std::string& file);

    std::shared_ptr<const Program> program() const { return prog_; }
    std::vector<Diagnostic> nuGoalReport() const;
    std::string showElaborated() const;
    std::vector<std::string> oracle(std::size_t depth, std::size_t pool) const;
    std::unique_ptr<QueryRun> query(const std::string& goal) const;
    // queries written inside loaded files, as source text
    const std::vector<std::string>& fileQueries() const { return fileQueries_; }

private:
    std::shared_ptr<const Program> prog_;
    EngineOptions opts_;
    std::vector<std::string> fileQueries_;
};

}  // namespace aplog
