#pragma once

#include <stdexcept>
#include <string>

#include "aplog/syntax.hpp"

namespace aplog {

// Load-time failure (lexing, parsing, kinding, typing), rendered as
// file:line:col: message.
class LoadError : public std::runtime_error {
public:
    LoadError(SourceLoc loc, const std::string& msg)
        : std::runtime_error(loc.str() + ": " + msg), loc_(std::move(loc)), msg_(msg) {}

    const SourceLoc& loc() const { return loc_; }
    const std::string& message() const { return msg_; }

private:
    SourceLoc loc_;
    std::string msg_;
};

}  // namespace aplog
