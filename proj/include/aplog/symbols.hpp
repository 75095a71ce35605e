#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace aplog {

// Interned identifier. 0 is the empty symbol.
using Symbol = std::uint32_t;

Symbol intern(std::string_view text);
const std::string& symbolText(Symbol s);

// A name type is identified by the symbol of its declared identifier.
using NameTypeId = Symbol;

struct Name {
    std::uint32_t id = 0;
    NameTypeId type = 0;

    friend bool operator==(const Name& a, const Name& b) { return a.id == b.id; }
    friend auto operator<=>(const Name& a, const Name& b) { return a.id <=> b.id; }
};

struct VarId {
    std::uint32_t id = 0;

    friend bool operator==(const VarId&, const VarId&) = default;
    friend auto operator<=>(const VarId&, const VarId&) = default;
};

// Names read from source keep their identifier as display; names made by
// freshName are internal and display as stem_N.
Name sourceName(std::string_view ident, NameTypeId type);
Name freshName(std::string_view stem, NameTypeId type);
Name freshNameLike(Name n);
bool isInternal(Name n);
const std::string& nameStem(Name n);
std::string nameDisplay(Name n);

VarId freshVar(std::string_view stem, NameTypeId nameType = 0);
VarId freshVarLike(VarId v);
const std::string& varStem(VarId v);
NameTypeId varNameType(VarId v);
std::string varDisplay(VarId v);

}  // namespace aplog

template <>
struct std::hash<aplog::Name> {
    std::size_t operator()(const aplog::Name& n) const noexcept { return n.id; }
};
template <>
struct std::hash<aplog::VarId> {
    std::size_t operator()(const aplog::VarId& v) const noexcept { return v.id; }
};
