#include "gdlr/properties.hpp"

#include <fstream>
#include <sstream>

namespace gdlr {

namespace {

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

} // namespace

PropertySet parse_properties(std::string_view text, const GameDescription& desc) {
    PropertySet out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '%' || (line[0] == '#' && line.rfind("#true", 0) != 0 && line.rfind("#false", 0) != 0)) {
            continue;
        }
        char sign = line[0];
        if (sign != '+' && sign != '-') {
            throw GtlError("line " + std::to_string(line_no) + ": expected '+' or '-' before the formula");
        }
        std::string body = trim(std::string_view(line).substr(1));
        try {
            Formula f = parse_gtl(body, &desc);
            if (sign == '+') {
                out.positive.push_back(std::move(f));
                out.positive_text.push_back(body);
            } else {
                out.negative.push_back(std::move(f));
                out.negative_text.push_back(body);
            }
        } catch (const GtlError& e) {
            throw GtlError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

PropertySet load_properties_file(const std::string& path, const GameDescription& desc) {
    std::ifstream in(path);
    if (!in) {
        throw GtlError("cannot open " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_properties(ss.str(), desc);
}

} // namespace gdlr
