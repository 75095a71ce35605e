#include "aplog/session.hpp"

#include <fstream>
#include <sstream>

#include "aplog/error.hpp"
#include "aplog/oracle.hpp"
#include "aplog/typecheck.hpp"

namespace aplog {

QueryRun::QueryRun(std::shared_ptr<const Program> prog, EngineOptions opts, const std::string& goal)
    : prog_(std::move(prog)),
      engine_(*prog_, std::move(opts)),
      query_(parseQuery(*prog_, goal)),
      stream_(engine_.solve(query_)) {}

Session::Session() : prog_(std::make_shared<Program>()) {}

void Session::loadFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError(SourceLoc{path, 0, 0}, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    loadString(ss.str(), path);
}

void Session::loadString(const std::string& text, const std::string& file) {
    auto next = std::make_shared<Program>(*prog_);
    Loader l(*next);
    l.load(parseProgram(text, file));
    for (const auto& q : l.queries()) fileQueries_.push_back(printExpr(q.body));
    prog_ = std::move(next);
}

std::vector<Diagnostic> Session::nuGoalReport() const { return warnIncomplete(prog_->clauses); }

std::string Session::showElaborated() const {
    std::string out;
    for (const auto& c : prog_->clauses) out += aplog::showElaborated(c) + "\n";
    return out;
}

std::vector<std::string> Session::oracle(std::size_t depth, std::size_t pool) const {
    OracleConfig cfg;
    cfg.depth = depth;
    cfg.pool = pool;
    Oracle o(*prog_, cfg);
    return Oracle::render(o.fixpoint());
}

std::unique_ptr<QueryRun> Session::query(const std::string& goal) const {
    return std::make_unique<QueryRun>(prog_, opts_, goal);
}

}  // namespace aplog
