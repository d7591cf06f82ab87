#pragma once

#include "gdlr/rule.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gdlr {

struct SourcePos {
    int line = 0;
    int column = 0;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, SourcePos pos)
        : std::runtime_error(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + msg), pos_(pos) {}

    int line() const noexcept { return pos_.line; }
    int column() const noexcept { return pos_.column; }

private:
    SourcePos pos_;
};

/// One rule as written, possibly with variables.
struct SourceRule {
    Term head;
    std::vector<Literal> body;
    SourcePos pos;
    std::string label;

    std::string to_string() const;
};

struct ParsedGame {
    std::vector<SourceRule> rules;
    /// Value of the `#empty K.` directive, if present.
    std::optional<int> empty_count;
};

/// Prolog-style GDL: `head :- b1, ..., bk.`, `not` for negation, `%`
/// line comments, `[label]` rule labels and the `#empty K.` directive.
ParsedGame parse_gdl(std::string_view text);

ParsedGame parse_gdl_file(const std::string& path);

} // namespace gdlr
