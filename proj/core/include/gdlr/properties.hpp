#pragma once

#include "gdlr/gtl.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace gdlr {

/// Phi+ (must hold) and Phi- (must fail), with the source text of each line.
struct PropertySet {
    std::vector<Formula> positive;
    std::vector<Formula> negative;
    std::vector<std::string> positive_text;
    std::vector<std::string> negative_text;

    bool empty() const noexcept { return positive.empty() && negative.empty(); }
};

/// One formula or macro call per line, prefixed `+` or `-`. Blank lines and
/// lines starting with `%` or `#` (other than `#true`/`#false`) are skipped.
/// Errors are GtlError with a `line N: ` prefix.
PropertySet parse_properties(std::string_view text, const GameDescription& desc);
PropertySet load_properties_file(const std::string& path, const GameDescription& desc);

} // namespace gdlr
