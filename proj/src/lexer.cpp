#include "lexer.hpp"

#include <cctype>

#include "aplog/error.hpp"

namespace aplog {

std::vector<Token> lex(std::string_view src, const std::string& file) {
    std::vector<Token> out;
    std::size_t i = 0;
    int line = 1, col = 1;
    bool glued = false;

    auto advance = [&](std::size_t n = 1) {
        for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    auto here = [&] { return SourceLoc{file, line, col}; };
    auto peek = [&](std::size_t k = 0) -> char { return i + k < src.size() ? src[i + k] : '\0'; };

    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance();
            glued = false;
            continue;
        }
        if (c == '%') {
            while (i < src.size() && src[i] != '\n') advance();
            glued = false;
            continue;
        }
        Token t;
        t.loc = here();
        t.glued = glued;
        glued = true;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = i;
            while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_' || src[i] == '\''))
                advance();
            t.text = std::string(src.substr(start, i - start));
            if (t.text == "_")
                t.kind = Tok::Wild;
            else if (std::isupper(static_cast<unsigned char>(t.text[0])) || t.text[0] == '_')
                t.kind = Tok::Var;
            else
                t.kind = Tok::Ident;
            out.push_back(std::move(t));
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = i;
            while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) advance();
            t.kind = Tok::Int;
            t.text = std::string(src.substr(start, i - start));
            try {
                t.value = std::stoll(t.text);
            } catch (const std::exception&) {
                throw LoadError(t.loc, "integer literal out of range");
            }
            out.push_back(std::move(t));
            continue;
        }
        if (c == '\'') {
            advance();
            std::int64_t v;
            if (peek() == '\\') {
                advance();
                char e = peek();
                switch (e) {
                    case 'n': v = '\n'; break;
                    case 't': v = '\t'; break;
                    case '\\': v = '\\'; break;
                    case '\'': v = '\''; break;
                    default: throw LoadError(t.loc, "unknown escape in character literal");
                }
                advance();
            } else {
                if (i >= src.size() || peek() == '\n') throw LoadError(t.loc, "unterminated character literal");
                v = static_cast<unsigned char>(peek());
                advance();
            }
            if (peek() != '\'') throw LoadError(t.loc, "unterminated character literal");
            advance();
            t.kind = Tok::Char;
            t.value = v;
            t.text = "'";
            out.push_back(std::move(t));
            continue;
        }
        static const char* const puncts[] = {":-", "?-", "::", "->", "(", ")", "[", "]", ",", ".", "|", ";",
                                             ":",  "=",  "#",  "~",  "\\", "*"};
        bool matched = false;
        for (const char* p : puncts) {
            std::string_view pv(p);
            if (src.substr(i, pv.size()) == pv) {
                t.kind = Tok::Punct;
                t.text = std::string(pv);
                advance(pv.size());
                out.push_back(std::move(t));
                matched = true;
                break;
            }
        }
        if (!matched) throw LoadError(t.loc, std::string("unexpected character '") + c + "'");
    }
    Token end;
    end.kind = Tok::End;
    end.loc = here();
    out.push_back(std::move(end));
    return out;
}

}  // namespace aplog
