#include "aplog/surface.hpp"

namespace aplog {
namespace {

void printChar(std::int64_t c, std::string& out) {
    out += '\'';
    switch (c) {
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\'': out += "\\'"; break;
        case '\\': out += "\\\\"; break;
        default: out += static_cast<char>(c);
    }
    out += '\'';
}

void printT(const STypePtr& t, int prec, std::string& out);

// prec 0: top, 1: product item, 2: abstraction left, 3: application argument
void printT(const STypePtr& t, int prec, std::string& out) {
    switch (t->kind) {
        case SType::Kind::Var: out += t->text; break;
        case SType::Kind::Con:
            if (!t->args.empty() && prec >= 2) out += "(";
            out += t->text;
            for (const auto& a : t->args) {
                out += " ";
                printT(a, 3, out);
            }
            if (!t->args.empty() && prec >= 2) out += ")";
            break;
        case SType::Kind::List:
            out += "[";
            printT(t->args[0], 0, out);
            out += "]";
            break;
        case SType::Kind::Prod: {
            bool paren = t->grouped || prec >= 1;
            if (paren) out += "(";
            for (std::size_t i = 0; i < t->args.size(); ++i) {
                if (i) out += " * ";
                printT(t->args[i], 1, out);
            }
            if (paren) out += ")";
            break;
        }
        case SType::Kind::Abs:
            if (prec >= 2) out += "(";
            printT(t->args[0], 2, out);
            out += "\\";
            printT(t->args[1], 1, out);
            if (prec >= 2) out += ")";
            break;
        case SType::Kind::Arrow:
            for (std::size_t i = 0; i + 1 < t->args.size(); ++i) {
                if (i) out += " * ";
                printT(t->args[i], 1, out);
            }
            out += " -> ";
            printT(t->args.back(), 1, out);
            break;
    }
}

void printE(const SExprPtr& e, std::string& out) {
    switch (e->kind) {
        case SExpr::Kind::Ident:
        case SExpr::Kind::Var:
        case SExpr::Kind::Wild: out += e->text; break;
        case SExpr::Kind::Int: out += std::to_string(e->value); break;
        case SExpr::Kind::Char: printChar(e->value, out); break;
        case SExpr::Kind::Unit: out += "()"; break;
        case SExpr::Kind::Call:
            out += e->text + "(";
            for (std::size_t i = 0; i < e->items.size(); ++i) {
                if (i) out += ", ";
                printE(e->items[i], out);
            }
            out += ")";
            break;
        case SExpr::Kind::List:
            out += "[";
            for (std::size_t i = 0; i < e->items.size(); ++i) {
                if (i) out += ", ";
                printE(e->items[i], out);
            }
            if (e->tail) {
                out += " | ";
                printE(e->tail, out);
            }
            out += "]";
            break;
        case SExpr::Kind::Paren:
            out += "(";
            printE(e->items[0], out);
            out += ")";
            break;
        case SExpr::Kind::Abs:
            printE(e->items[0], out);
            out += "\\";
            printE(e->items[1], out);
            break;
        case SExpr::Kind::Swap:
            out += "(";
            printE(e->items[0], out);
            out += "~";
            printE(e->items[1], out);
            out += ")";
            printE(e->items[2], out);
            break;
        case SExpr::Kind::Binary:
            printE(e->items[0], out);
            out += e->text == "," ? ", " : " " + e->text + " ";
            printE(e->items[1], out);
            break;
        case SExpr::Kind::New:
        case SExpr::Kind::Exists:
            out += e->kind == SExpr::Kind::New ? "new " : "exists ";
            for (std::size_t i = 0; i < e->binders.size(); ++i) {
                if (i) out += ", ";
                out += e->binders[i].ident;
                if (e->binders[i].type) {
                    out += ":";
                    printT(e->binders[i].type, 2, out);
                }
            }
            out += ". ";
            printE(e->items[0], out);
            break;
    }
}

bool typeEq(const STypePtr& a, const STypePtr& b) {
    if (!a || !b) return a == b;
    if (a->kind != b->kind || a->text != b->text || a->args.size() != b->args.size()) return false;
    if (a->kind == SType::Kind::Prod && a->grouped != b->grouped) return false;
    for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!typeEq(a->args[i], b->args[i])) return false;
    return true;
}

bool exprEq(const SExprPtr& a, const SExprPtr& b) {
    if (!a || !b) return a == b;
    if (a->kind != b->kind || a->text != b->text || a->value != b->value || a->items.size() != b->items.size() ||
        a->binders.size() != b->binders.size())
        return false;
    for (std::size_t i = 0; i < a->items.size(); ++i)
        if (!exprEq(a->items[i], b->items[i])) return false;
    for (std::size_t i = 0; i < a->binders.size(); ++i)
        if (a->binders[i].ident != b->binders[i].ident || !typeEq(a->binders[i].type, b->binders[i].type))
            return false;
    return exprEq(a->tail, b->tail);
}

}  // namespace

std::string printSType(const STypePtr& t) {
    std::string out;
    printT(t, 0, out);
    return out;
}

std::string printExpr(const SExprPtr& e) {
    std::string out;
    printE(e, out);
    return out;
}

std::string printStatement(const Statement& s) {
    std::string out;
    auto idents = [&] {
        for (std::size_t i = 0; i < s.idents.size(); ++i) {
            if (i) out += ", ";
            out += s.idents[i];
        }
    };
    switch (s.kind) {
        case Statement::Kind::Query:
            out += "?- " + printExpr(s.body) + ".";
            break;
        case Statement::Kind::TypeAbbrev:
            out += "type " + s.idents[0];
            for (const auto& p : s.params) out += " " + p;
            out += " = " + printSType(s.type) + ".";
            break;
        case Statement::Kind::KindDecl:
            idents();
            out += " : ";
            for (bool nt : s.paramIsNameType) out += nt ? "name_type -> " : "type -> ";
            out += s.resultNameType ? "name_type." : "type.";
            break;
        case Statement::Kind::CtorDecl:
            idents();
            out += " : " + printSType(s.type) + ".";
            break;
        case Statement::Kind::DefDecl:
            idents();
            out += " :: " + printSType(s.type) + ".";
            break;
        case Statement::Kind::Clause:
            out += printExpr(s.head);
            if (s.body) out += " :- " + printExpr(s.body);
            out += ".";
            break;
    }
    return out;
}

std::string printProgram(const SurfaceProgram& p) {
    std::string out;
    for (const auto& s : p.statements) out += printStatement(s) + "\n";
    return out;
}

bool surfaceEqual(const SurfaceProgram& a, const SurfaceProgram& b) {
    if (a.statements.size() != b.statements.size()) return false;
    for (std::size_t i = 0; i < a.statements.size(); ++i) {
        const auto& x = a.statements[i];
        const auto& y = b.statements[i];
        if (x.kind != y.kind || x.idents != y.idents || x.paramIsNameType != y.paramIsNameType ||
            x.resultNameType != y.resultNameType || x.params != y.params || !typeEq(x.type, y.type) ||
            !exprEq(x.head, y.head) || !exprEq(x.body, y.body))
            return false;
    }
    return true;
}

}  // namespace aplog
