#include "gdlr/rule.hpp"

#include <algorithm>

namespace gdlr {

std::string Literal::to_string() const {
    return positive ? atom.to_string() : "not " + atom.to_string();
}

bool Rule::body_contains(const Literal& l) const {
    return std::find(body.begin(), body.end(), l) != body.end();
}

std::string Rule::to_string() const {
    if (!head) {
        return "(empty).";
    }
    std::string out = head->to_string();
    if (!body.empty()) {
        out += " :- ";
        for (std::size_t i = 0; i < body.size(); ++i) {
            if (i > 0) {
                out += ", ";
            }
            out += body[i].to_string();
        }
    }
    out += '.';
    return out;
}

} // namespace gdlr
