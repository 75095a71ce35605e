#include "aplog/symbols.hpp"

#include <deque>
#include <map>
#include <mutex>
#include <unordered_map>

namespace aplog {
namespace {

struct NameInfo {
    std::string stem;
    bool internal;
};

struct VarInfo {
    std::string stem;
    NameTypeId nameType;
};

struct Registry {
    std::mutex mu;
    std::deque<std::string> symbols{""};
    std::unordered_map<std::string, Symbol> symbolIndex{{"", 0}};
    std::deque<NameInfo> names{{"", false}};
    std::map<std::pair<std::string, NameTypeId>, std::uint32_t> sourceNames;
    std::deque<VarInfo> vars{{"", 0}};
};

Registry& registry() {
    static Registry r;
    return r;
}

}  // namespace

Symbol intern(std::string_view text) {
    auto& r = registry();
    std::lock_guard lock(r.mu);
    std::string key(text);
    auto it = r.symbolIndex.find(key);
    if (it != r.symbolIndex.end()) return it->second;
    auto id = static_cast<Symbol>(r.symbols.size());
    r.symbols.push_back(key);
    r.symbolIndex.emplace(std::move(key), id);
    return id;
}

const std::string& symbolText(Symbol s) {
    auto& r = registry();
    std::lock_guard lock(r.mu);
    return r.symbols.at(s);
}

Name sourceName(std::string_view ident, NameTypeId type) {
    auto& r = registry();
    std::lock_guard lock(r.mu);
    auto key = std::make_pair(std::string(ident), type);
    auto it = r.sourceNames.find(key);
    if (it != r.sourceNames.end()) return Name{it->second, type};
    auto id = static_cast<std::uint32_t>(r.names.size());
    r.names.push_back({std::string(ident), false});
    r.sourceNames.emplace(std::move(key), id);
    return Name{id, type};
}

Name freshName(std::string_view stem, NameTypeId type) {
    auto& r = registry();
    std::lock_guard lock(r.mu);
    auto id = static_cast<std::uint32_t>(r.names.size());
    r.names.push_back({std::string(stem), true});
    return Name{id, type};
}

Name freshNameLike(Name n) { return freshName(nameStem(n), n.type); }

bool isInternal(Name n) {
    auto& r = registry();
    std::lock_guard lock(r.mu);
    return r.names.at(n.id).internal;
}

const std::string& nameStem(Name n) {
    auto& r = registry();
    std::lock_guard lock(r.mu);
    return r.names.at(n.id).stem;
}

std::string nameDisplay(Name n) {
    if (isInternal(n)) return nameStem(n) + "_" + std::to_string(n.id);
    return nameStem(n);
}

VarId freshVar(std::string_view stem, NameTypeId nameType) {
    auto& r = registry();
    std::lock_guard lock(r.mu);
    auto id = static_cast<std::uint32_t>(r.vars.size());
    r.vars.push_back({std::string(stem), nameType});
    return VarId{id};
}

VarId freshVarLike(VarId v) { return freshVar(varStem(v), varNameType(v)); }

const std::string& varStem(VarId v) {
    auto& r = registry();
    std::lock_guard lock(r.mu);
    return r.vars.at(v.id).stem;
}

NameTypeId varNameType(VarId v) {
    auto& r = registry();
    std::lock_guard lock(r.mu);
    return r.vars.at(v.id).nameType;
}

std::string varDisplay(VarId v) { return varStem(v) + "_" + std::to_string(v.id); }

}  // namespace aplog
