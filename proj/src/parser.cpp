#include <set>

#include "aplog/error.hpp"
#include "aplog/surface.hpp"
#include "lexer.hpp"

namespace aplog {
namespace {

class Parser {
public:
    Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    SurfaceProgram program() {
        SurfaceProgram p;
        while (!at(Tok::End)) p.statements.push_back(statement());
        return p;
    }

    SExprPtr goalOnly() {
        if (isPunct("?-")) next();
        auto g = expr0();
        if (isPunct(".")) next();
        if (!at(Tok::End)) fail("unexpected '" + cur().text + "' after goal");
        return g;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;

    const Token& cur() const { return toks_[pos_]; }
    const Token& ahead(std::size_t k) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    bool at(Tok k) const { return cur().kind == k; }
    bool isPunct(const char* p) const { return cur().kind == Tok::Punct && cur().text == p; }
    bool isIdent(const char* w) const { return cur().kind == Tok::Ident && cur().text == w; }
    Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    [[noreturn]] void fail(const std::string& msg) const { throw LoadError(cur().loc, msg); }

    void expect(const char* p) {
        if (!isPunct(p)) {
            std::string got = at(Tok::End) ? "end of input" : "'" + cur().text + "'";
            fail(std::string("expected '") + p + "' but found " + got);
        }
        next();
    }

    std::string expectIdent(const char* what) {
        if (!at(Tok::Ident)) fail(std::string("expected ") + what);
        return next().text;
    }

    static SExprPtr mk(SExpr e) { return std::make_shared<const SExpr>(std::move(e)); }
    static STypePtr mkT(SType t) { return std::make_shared<const SType>(std::move(t)); }

    // ---- statements

    Statement statement() {
        Statement s;
        s.loc = cur().loc;
        if (isPunct("?-")) {
            next();
            s.kind = Statement::Kind::Query;
            s.body = expr0();
            expect(".");
            return s;
        }
        if (isIdent("type") && ahead(1).kind == Tok::Ident) {
            next();
            s.kind = Statement::Kind::TypeAbbrev;
            s.idents.push_back(next().text);
            while (at(Tok::Var) || at(Tok::Ident)) s.params.push_back(next().text);
            expect("=");
            s.type = type();
            expect(".");
            return s;
        }
        if (at(Tok::Ident) && declarationAhead()) {
            s.idents.push_back(next().text);
            while (isPunct(",")) {
                next();
                s.idents.push_back(expectIdent("identifier in declaration list"));
            }
            if (isPunct("::")) {
                next();
                s.kind = Statement::Kind::DefDecl;
                s.type = type();
                expect(".");
                return s;
            }
            expect(":");
            if (isIdent("type") || isIdent("name_type")) {
                s.kind = Statement::Kind::KindDecl;
                for (;;) {
                    bool nt = isIdent("name_type");
                    if (!isIdent("type") && !nt) fail("expected 'type' or 'name_type' in kind");
                    next();
                    if (isPunct("->")) {
                        next();
                        s.paramIsNameType.push_back(nt);
                        continue;
                    }
                    s.resultNameType = nt;
                    break;
                }
                expect(".");
                return s;
            }
            s.kind = Statement::Kind::CtorDecl;
            s.type = type();
            expect(".");
            return s;
        }
        s.kind = Statement::Kind::Clause;
        s.head = expr0();
        if (isPunct(":-")) {
            next();
            s.body = expr0();
        }
        expect(".");
        return s;
    }

    bool declarationAhead() const {
        std::size_t k = 1;
        while (ahead(k).kind == Tok::Punct && ahead(k).text == "," && ahead(k + 1).kind == Tok::Ident) k += 2;
        const Token& t = ahead(k);
        return t.kind == Tok::Punct && (t.text == ":" || t.text == "::");
    }

    // ---- types

    STypePtr type() {
        SourceLoc loc = cur().loc;
        STypePtr left = prodType();
        if (!isPunct("->")) return left;
        next();
        STypePtr right = type();
        if (right->kind == SType::Kind::Arrow) throw LoadError(loc, "higher-order types are not supported");
        SType t;
        t.kind = SType::Kind::Arrow;
        t.loc = loc;
        if (left->kind == SType::Kind::Prod && !left->grouped)
            t.args = left->args;
        else
            t.args.push_back(left);
        t.args.push_back(right);
        return mkT(std::move(t));
    }

    STypePtr prodType() {
        SourceLoc loc = cur().loc;
        STypePtr first = absType();
        if (!isPunct("*")) return first;
        SType t;
        t.kind = SType::Kind::Prod;
        t.loc = loc;
        t.args.push_back(first);
        while (isPunct("*")) {
            next();
            t.args.push_back(absType());
        }
        return mkT(std::move(t));
    }

    STypePtr absType() {
        SourceLoc loc = cur().loc;
        STypePtr left = appType();
        if (!isPunct("\\")) return left;
        next();
        SType t;
        t.kind = SType::Kind::Abs;
        t.loc = loc;
        t.args = {left, absType()};
        return mkT(std::move(t));
    }

    bool atomTypeStart() const {
        return at(Tok::Ident) || at(Tok::Var) || isPunct("(") || isPunct("[");
    }

    STypePtr appType() {
        if (at(Tok::Ident)) {
            SType t;
            t.kind = SType::Kind::Con;
            t.loc = cur().loc;
            t.text = next().text;
            while (atomTypeStart()) t.args.push_back(atomType());
            return mkT(std::move(t));
        }
        return atomType();
    }

    STypePtr atomType() {
        SType t;
        t.loc = cur().loc;
        if (at(Tok::Ident)) {
            t.kind = SType::Kind::Con;
            t.text = next().text;
            return mkT(std::move(t));
        }
        if (at(Tok::Var)) {
            t.kind = SType::Kind::Var;
            t.text = next().text;
            return mkT(std::move(t));
        }
        if (isPunct("[")) {
            next();
            t.kind = SType::Kind::List;
            t.args.push_back(type());
            expect("]");
            return mkT(std::move(t));
        }
        if (isPunct("(")) {
            next();
            STypePtr inner = type();
            expect(")");
            if (inner->kind == SType::Kind::Arrow) throw LoadError(t.loc, "higher-order types are not supported");
            if (inner->kind == SType::Kind::Prod) {
                SType g = *inner;
                g.grouped = true;
                return mkT(std::move(g));
            }
            return inner;
        }
        fail("expected a type");
    }

    // ---- expressions

    SExprPtr binary(std::string op, SExprPtr l, SExprPtr r, SourceLoc loc) {
        SExpr e;
        e.kind = SExpr::Kind::Binary;
        e.text = std::move(op);
        e.items = {std::move(l), std::move(r)};
        e.loc = std::move(loc);
        return mk(std::move(e));
    }

    SExprPtr expr0() {
        SourceLoc loc = cur().loc;
        SExprPtr l = expr1();
        if (!isPunct(";")) return l;
        next();
        return binary(";", l, expr0(), loc);
    }

    SExprPtr expr1() {
        SourceLoc loc = cur().loc;
        SExprPtr l = expr2();
        if (!isPunct(",")) return l;
        next();
        return binary(",", l, expr1(), loc);
    }

    SExprPtr expr2() {
        SourceLoc loc = cur().loc;
        if (isIdent("new") || isIdent("exists")) {
            bool isNew = cur().text == "new";
            next();
            SExpr e;
            e.kind = isNew ? SExpr::Kind::New : SExpr::Kind::Exists;
            e.loc = loc;
            for (;;) {
                SBinder b;
                if (isNew) {
                    if (!at(Tok::Ident)) fail("expected a name after 'new'");
                } else if (!at(Tok::Var)) {
                    fail("expected a variable after 'exists'");
                }
                b.ident = next().text;
                if (isPunct(":")) {
                    next();
                    b.type = absType();
                }
                e.binders.push_back(std::move(b));
                if (!isPunct(",")) break;
                next();
            }
            expect(".");
            e.items.push_back(expr0());
            return mk(std::move(e));
        }
        SExprPtr l = expr3();
        if (isPunct("=") || isPunct("#") || isPunct("~")) {
            std::string op = next().text;
            return binary(op, l, expr3(), loc);
        }
        return l;
    }

    SExprPtr expr3() {
        SourceLoc loc = cur().loc;
        SExprPtr l = expr4();
        if (!isPunct("::")) return l;
        next();
        return binary("::", l, expr3(), loc);
    }

    SExprPtr expr4() {
        SourceLoc loc = cur().loc;
        SExprPtr p = primary();
        if (!isPunct("\\")) return p;
        if (p->kind != SExpr::Kind::Ident && p->kind != SExpr::Kind::Var)
            throw LoadError(loc, "abstraction binder must be a name or a name variable");
        next();
        SExpr e;
        e.kind = SExpr::Kind::Abs;
        e.loc = loc;
        e.items = {p, expr3()};
        return mk(std::move(e));
    }

    bool primaryStart() const {
        return at(Tok::Ident) || at(Tok::Var) || at(Tok::Wild) || at(Tok::Int) || at(Tok::Char) || isPunct("(") ||
               isPunct("[");
    }

    SExprPtr primary() {
        SExpr e;
        e.loc = cur().loc;
        switch (cur().kind) {
            case Tok::Int:
                e.kind = SExpr::Kind::Int;
                e.value = next().value;
                return mk(std::move(e));
            case Tok::Char:
                e.kind = SExpr::Kind::Char;
                e.value = next().value;
                return mk(std::move(e));
            case Tok::Var:
                e.kind = SExpr::Kind::Var;
                e.text = next().text;
                return mk(std::move(e));
            case Tok::Wild:
                next();
                e.kind = SExpr::Kind::Wild;
                e.text = "_";
                return mk(std::move(e));
            case Tok::Ident: {
                e.text = next().text;
                if (isPunct("(")) {
                    next();
                    e.kind = SExpr::Kind::Call;
                    if (isPunct(")")) fail("empty argument list; write the constant without parentheses");
                    e.items.push_back(expr2());
                    while (isPunct(",")) {
                        next();
                        e.items.push_back(expr2());
                    }
                    expect(")");
                } else {
                    e.kind = SExpr::Kind::Ident;
                }
                return mk(std::move(e));
            }
            default: break;
        }
        if (isPunct("[")) {
            next();
            e.kind = SExpr::Kind::List;
            if (!isPunct("]")) {
                e.items.push_back(expr2());
                while (isPunct(",")) {
                    next();
                    e.items.push_back(expr2());
                }
                if (isPunct("|")) {
                    next();
                    e.tail = expr2();
                }
            }
            expect("]");
            return mk(std::move(e));
        }
        if (isPunct("(")) {
            next();
            if (isPunct(")")) {
                next();
                e.kind = SExpr::Kind::Unit;
                return mk(std::move(e));
            }
            SExprPtr inner = expr0();
            expect(")");
            if (inner->kind == SExpr::Kind::Binary && inner->text == "~" && primaryStart()) {
                for (const auto& side : inner->items)
                    if (side->kind != SExpr::Kind::Ident)
                        throw LoadError(side->loc, "only ground names may appear in a swapping");
                e.kind = SExpr::Kind::Swap;
                e.items = {inner->items[0], inner->items[1], primary()};
                return mk(std::move(e));
            }
            e.kind = SExpr::Kind::Paren;
            e.items.push_back(inner);
            return mk(std::move(e));
        }
        if (at(Tok::End)) fail("unexpected end of input");
        fail("unexpected '" + cur().text + "'");
    }
};

}  // namespace

SurfaceProgram parseProgram(std::string_view text, const std::string& file) {
    Parser p(lex(text, file));
    return p.program();
}

SExprPtr parseGoal(std::string_view text, const std::string& file) {
    Parser p(lex(text, file));
    return p.goalOnly();
}

}  // namespace aplog
