#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "aplog/syntax.hpp"

namespace aplog {

enum class Tok { Ident, Var, Wild, Int, Char, Punct, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::int64_t value = 0;
    SourceLoc loc;
    // true when no whitespace separates this token from the previous one
    bool glued = false;
};

std::vector<Token> lex(std::string_view text, const std::string& file);

}  // namespace aplog
