#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aplog/syntax.hpp"

namespace aplog {

struct SType;
using STypePtr = std::shared_ptr<const SType>;

struct SType {
    enum class Kind { Con, Var, Prod, Arrow, Abs, List };
    Kind kind = Kind::Con;
    std::string text;            // Con / Var identifier
    std::vector<STypePtr> args;  // Con args, Prod items, Arrow args + result (last), Abs {name, body}, List {elem}
    bool grouped = false;        // Prod written inside parentheses
    SourceLoc loc;
};

struct SExpr;
using SExprPtr = std::shared_ptr<const SExpr>;

struct SBinder {
    std::string ident;
    STypePtr type;  // optional
};

struct SExpr {
    enum class Kind { Ident, Var, Wild, Int, Char, Call, List, Unit, Paren, Abs, Swap, Binary, New, Exists };
    Kind kind = Kind::Ident;
    std::string text;             // identifier, variable, or operator for Binary
    std::int64_t value = 0;       // Int / Char
    std::vector<SExprPtr> items;  // Call args, List items, Paren {e}, Abs {binder, body}, Swap {a, b, t}, Binary {l, r}, New/Exists {body}
    SExprPtr tail;                // List tail
    std::vector<SBinder> binders;
    SourceLoc loc;
};

struct Statement {
    enum class Kind { KindDecl, CtorDecl, DefDecl, TypeAbbrev, Clause, Query };
    Kind kind = Kind::Clause;
    std::vector<std::string> idents;  // declared identifiers
    // KindDecl: parameter kinds (true = name_type) and result kind
    std::vector<bool> paramIsNameType;
    bool resultNameType = false;
    std::vector<std::string> params;  // TypeAbbrev parameters
    STypePtr type;
    SExprPtr head;
    SExprPtr body;  // may be null
    SourceLoc loc;
};

struct SurfaceProgram {
    std::vector<Statement> statements;
};

SurfaceProgram parseProgram(std::string_view text, const std::string& file);
// Parses a goal (without "?-" and the final "." being mandatory).
SExprPtr parseGoal(std::string_view text, const std::string& file);

std::string printProgram(const SurfaceProgram& p);
std::string printStatement(const Statement& s);
std::string printExpr(const SExprPtr& e);
std::string printSType(const STypePtr& t);

bool surfaceEqual(const SurfaceProgram& a, const SurfaceProgram& b);

}  // namespace aplog
