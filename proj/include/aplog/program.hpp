#pragma once

#include <map>
#include <string>
#include <vector>

#include "aplog/syntax.hpp"
#include "aplog/types.hpp"

namespace aplog {

struct TypeConInfo {
    Symbol name = 0;
    std::vector<bool> paramNameType;
    bool nameType = false;
    SourceLoc loc;
};

struct CtorInfo {
    Symbol name = 0;
    std::vector<std::uint32_t> params;
    std::vector<Type> args;
    Type result = Type::con(0);
    SourceLoc loc;
};

struct DefInfo {
    Symbol name = 0;
    std::vector<std::uint32_t> params;
    std::vector<Type> args;
    Type result = Type::con(0);
    bool predicate = true;
    Symbol pred = 0;  // predicate symbol: itself, or the flattened fp
    SourceLoc loc;
};

struct Abbrev {
    std::vector<std::uint32_t> params;
    Type body = Type::con(0);
};

struct Signature {
    std::map<Symbol, TypeConInfo> typeCons;
    std::map<Symbol, Abbrev> abbrevs;
    std::map<Symbol, CtorInfo> ctors;
    std::map<Symbol, DefInfo> defs;
    // predicate symbol -> argument types (flattened functions included)
    std::map<Symbol, DefInfo> preds;

    bool isNameType(Symbol s) const;
    bool isNameType(const Type& t) const;
    // constructors whose result type constructor is c
    std::vector<const CtorInfo*> constructorsOf(Symbol c) const;
};

struct Program {
    Signature sig;
    std::vector<ElaboratedClause> clauses;
    // the closed clauses as written, before elaboration
    std::vector<ClausePtr> closed;
    std::vector<SourceLoc> closedLocs;
};

struct Query {
    GoalPtr goal;
    std::vector<std::pair<std::string, VarId>> vars;
    std::map<VarId, Type> varTypes;
    SourceLoc loc;
};

}  // namespace aplog
