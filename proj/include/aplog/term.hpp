#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "aplog/permutation.hpp"
#include "aplog/symbols.hpp"

namespace aplog {

enum class TermKind : std::uint8_t { Name, Var, Abs, App, Int, Char };

// Reserved constructor symbols for the built-in list, pair and unit.
Symbol symNil();
Symbol symCons();
Symbol symPair();
Symbol symUnit();

class Term {
public:
    Term();  // unit

    static Term name(Name a);
    static Term var(VarId x, Permutation pi = {});
    // binder is a name term or a name-typed variable term
    static Term abs(Term binder, Term body);
    static Term abs(Name a, Term body) { return abs(name(a), std::move(body)); }
    static Term app(Symbol f, std::vector<Term> args = {});
    static Term integer(std::int64_t v);
    static Term character(std::int64_t c);
    static Term nil();
    static Term cons(Term head, Term tail);
    static Term pair(Term a, Term b);
    static Term unit();

    TermKind kind() const { return node_->kind; }
    bool isName() const { return kind() == TermKind::Name; }
    bool isVar() const { return kind() == TermKind::Var; }
    bool isAbs() const { return kind() == TermKind::Abs; }
    bool isApp() const { return kind() == TermKind::App; }

    Name nameValue() const { return node_->name; }
    VarId varId() const { return node_->var; }
    const Permutation& perm() const { return node_->perm; }
    const Term& binder() const { return node_->args[0]; }
    const Term& body() const { return node_->args[1]; }
    Symbol ctor() const { return node_->ctor; }
    const std::vector<Term>& args() const { return node_->args; }
    std::int64_t value() const { return node_->value; }

    bool ground() const { return node_->ground; }
    bool sameNode(const Term& o) const { return node_ == o.node_; }

    friend bool operator==(const Term& a, const Term& b);

private:
    struct Node {
        TermKind kind;
        bool ground = true;
        Name name;
        VarId var;
        Permutation perm;
        Symbol ctor = 0;
        std::vector<Term> args;
        std::int64_t value = 0;
    };
    explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

// Permutation action. On a suspended variable the swap is composed
// into its suspension; on abstractions the binder is permuted as well.
Term swap(Name a, Name b, const Term& t);
Term permute(const Permutation& pi, const Term& t);

// Ground-term relations. They throw std::invalid_argument on open terms.
bool freshFor(Name a, const Term& t);
bool alphaEq(const Term& t, const Term& u);
std::set<Name> supp(const Term& t);
std::optional<Permutation> groundEquivariant(const Term& t, const Term& u);

// Canonical text of the α-class of a ground term: bound names are printed
// as de Bruijn-style levels.
std::string alphaKey(const Term& t);

// Names occurring anywhere (including binders and suspensions).
std::set<Name> allNames(const Term& t);
// Names occurring free, treating suspended permutation names as free.
std::set<Name> freeNames(const Term& t);
std::set<VarId> vars(const Term& t);
bool occurs(VarId x, const Term& t);
std::size_t termSize(const Term& t);
std::size_t termDepth(const Term& t);

// Rename names everywhere (binders and suspensions included).
Term renameNames(const Term& t, const std::map<Name, Name>& ren);
Permutation renamePerm(const Permutation& pi, const std::map<Name, Name>& ren);
// Replace variable x by s (applying x's suspended permutation to s).
Term substVar(const Term& t, VarId x, const Term& s);
Term substVars(const Term& t, const std::map<VarId, Term>& sub);

struct PrintOptions {
    // Maps for display renaming; missing entries use the default display.
    const std::function<std::string(Name)>* nameText = nullptr;
    const std::function<std::string(VarId)>* varText = nullptr;
};
std::string show(const Term& t, const PrintOptions& opts = {});

}  // namespace aplog
