#pragma once

// Independent model of ground nominal terms with swapping, freshness and
// alpha-equality given as inference rules. Judgements come with explicit
// derivations, and a separate checker validates every rule application.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "aplog/term.hpp"

namespace reftest {

// Immutable shared nodes; copying an R is cheap.
class R {
public:
    enum Kind { Name, Const, App, Abs };

    R();
    Kind kind() const { return n_->kind; }
    int name() const { return n_->name; }                   // Name, and the binder of Abs
    const std::string& f() const { return n_->f; }          // Const, App
    const std::vector<R>& args() const { return n_->args; } // App children; Abs: {body}
    const R& body() const { return n_->args[0]; }

    friend bool operator==(const R& a, const R& b);

private:
    struct Node {
        Kind kind = Const;
        int name = 0;
        std::string f;
        std::vector<R> args;
    };
    explicit R(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    std::shared_ptr<const Node> n_;

    friend R rname(int);
    friend R rconst(std::string);
    friend R rapp(std::string, std::vector<R>);
    friend R rabs(int, R);
};

R rname(int a);
R rconst(std::string c);
R rapp(std::string f, std::vector<R> args);
R rabs(int a, R body);

std::string show(const R& t);
R swapR(int a, int b, const R& t);
int swapName(int a, int b, int c);

struct Judgement {
    enum Kind { Fresh, Eq } kind = Eq;
    int a = 0;  // Fresh
    R t, u;     // Fresh uses t only
    friend bool operator==(const Judgement&, const Judgement&) = default;
};

struct Derivation {
    const char* rule = "";
    Judgement concl;
    std::vector<Derivation> premises;
};

// Goal-directed search; the rules are syntax-directed so failure means
// the judgement is not derivable.
std::optional<Derivation> proveFresh(int a, const R& t);
std::optional<Derivation> proveEq(const R& t, const R& u);
// Rule-by-rule validation: each node must be an instance of its named rule
// whose premises are exactly the subderivations' conclusions.
bool checkDerivation(const Derivation& d, std::string* why = nullptr);

// Conversion from engine terms. Names map to their ids.
R fromTerm(const aplog::Term& t);

// ---------------------------------------------------------------- pools

// Single name type "nm" with names a, b, c (and more on request).
aplog::NameTypeId nmType();
aplog::Name pname(int i);  // i-th pool name: a, b, c, d, ...
std::vector<aplog::Name> pool(int k);

// Ground terms over names, the constant k, unary f, binary g and
// abstraction. depth counts f, g and abstraction nodes.
struct Sig {
    int names = 3;
    bool unary = true;
    bool binary = true;
    bool abstraction = true;
    bool constant = true;
};
std::vector<aplog::Term> groundTerms(const Sig& sig, int depth);
// terms of depth exactly d+1 built over `below` (all terms of depth <= d),
// streamed because the binary layer gets large
void forEachNextLayer(const Sig& sig, const std::vector<aplog::Term>& below,
                      const std::function<void(const aplog::Term&)>& f);

}  // namespace reftest
