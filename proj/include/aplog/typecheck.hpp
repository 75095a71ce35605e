#pragma once

#include <string>
#include <vector>

#include "aplog/program.hpp"
#include "aplog/surface.hpp"

namespace aplog {

// Kind-checks declarations, type-checks clauses, resolves lowercase
// identifiers to constructors, defined symbols or names, flattens function
// calls and closes and elaborates each clause. Throws LoadError.
class Loader {
public:
    explicit Loader(Program& prog) : prog_(prog) {}

    void load(const SurfaceProgram& sp);
    Query query(const SExprPtr& goal, const SourceLoc& loc) const;

    // queries found in loaded files, in order
    const std::vector<Statement>& queries() const { return queries_; }

private:
    Program& prog_;
    std::vector<Statement> queries_;

    void declareKinds(const Statement& s);
    void declareCtor(const Statement& s);
    void declareDef(const Statement& s);
    void declareAbbrev(const Statement& s);
    void addClause(const Statement& s);
};

Program loadProgramText(const std::string& text, const std::string& file);
Query parseQuery(const Program& prog, const std::string& text, const std::string& file = "<query>");

}  // namespace aplog
