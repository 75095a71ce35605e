#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "aplog/symbols.hpp"

namespace aplog {

// Built-in type constructor symbols.
Symbol tyInt();
Symbol tyChar();
Symbol tyProp();   // o
Symbol tyList();
Symbol tyProd();   // pair type
Symbol tyAbs();    // name abstraction type, args {name type, body}
Symbol tyUnitT();

class Type {
public:
    enum class Kind { Var, Con };

    static Type var(std::uint32_t id);
    static Type con(Symbol c, std::vector<Type> args = {});
    static Type freshVar();

    Kind kind() const { return n_->kind; }
    bool isVar() const { return kind() == Kind::Var; }
    std::uint32_t varId() const { return n_->id; }
    Symbol con() const { return n_->con; }
    const std::vector<Type>& args() const { return n_->args; }

    friend bool operator==(const Type& a, const Type& b);
    friend bool operator<(const Type& a, const Type& b);

private:
    struct Node {
        Kind kind;
        std::uint32_t id = 0;
        Symbol con = 0;
        std::vector<Type> args;
    };
    explicit Type(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    std::shared_ptr<const Node> n_;
};

using TypeSubst = std::map<std::uint32_t, Type>;

Type applySubst(const TypeSubst& s, const Type& t);
bool typeOccurs(std::uint32_t v, const Type& t, const TypeSubst& s);
bool closedType(const Type& t);
void typeVars(const Type& t, std::vector<std::uint32_t>& out);
// One-sided matching of pattern against a closed or open target.
bool matchType(const Type& pattern, const Type& target, TypeSubst& s);

std::string showType(const Type& t);

}  // namespace aplog
