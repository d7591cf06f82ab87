#include "gdlr/cost.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gdlr {

CostFunction CostFunction::preset(const std::string& name) {
    if (name == "uniform") {
        return uniform();
    }
    if (name == "edit") {
        return edit();
    }
    throw std::invalid_argument("unknown cost preset '" + name + "'");
}

void CostFunction::set_default(int cost) {
    if (cost <= 0) {
        throw std::invalid_argument("costs must be positive");
    }
    default_ = cost;
}

void CostFunction::set_override(const ChangeTuple& t, int cost) {
    if (cost <= 0) {
        throw std::invalid_argument("costs must be positive, got " + std::to_string(cost) + " for " + t.to_string());
    }
    overrides_[t] = cost;
}

CostFunction CostFunction::doubled_except(const ChangeTuple& t) const {
    CostFunction c = *this;
    c.scale_ *= 2;
    c.discounted_ = t;
    return c;
}

int CostFunction::operator()(const GameDescription& desc, const ChangeTuple& t) const {
    int base = 1;
    if (auto it = overrides_.find(t); it != overrides_.end()) {
        base = it->second;
    } else if (default_) {
        base = *default_;
    } else if (preset_ == Preset::Edit && t.kind == ChangeKind::Change && desc.has_rule(t.rule) &&
               desc.section_of(t.rule) != Section::Empty) {
        const int bd = static_cast<int>(desc.rule(t.rule).body.size());
        base = t.head ? 2 * bd + 2 : bd + 1;
    }
    int c = scale_ * base;
    if (discounted_ && *discounted_ == t) {
        c -= 1;
    }
    return c;
}

int CostFunction::total(const GameDescription& desc, const Repair& r) const {
    int sum = 0;
    for (const auto& t : r.tuples()) {
        sum += (*this)(desc, t);
    }
    return sum;
}

CostFunction parse_cost_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("cost file: ") + e.what());
    }
    if (!j.is_object()) {
        throw std::invalid_argument("cost file: expected a JSON object");
    }
    std::string preset = "uniform";
    for (const char* key : {"preset", "presets"}) {
        if (j.contains(key)) {
            if (!j[key].is_string()) {
                throw std::invalid_argument(std::string("cost file: '") + key + "' must be a string");
            }
            preset = j[key].get<std::string>();
        }
    }
    CostFunction c = CostFunction::preset(preset);
    if (j.contains("default")) {
        if (!j["default"].is_number_integer()) {
            throw std::invalid_argument("cost file: 'default' must be an integer");
        }
        c.set_default(j["default"].get<int>());
    }
    if (j.contains("overrides")) {
        for (const auto& o : j["overrides"]) {
            try {
                std::string payload = o.contains("literal") ? o.at("literal").get<std::string>()
                                                            : o.at("payload").get<std::string>();
                std::string spec = std::to_string(o.at("rule").get<int>()) + "," + o.at("kind").get<std::string>() +
                                   "," + payload;
                c.set_override(parse_change_tuple(spec), o.at("cost").get<int>());
            } catch (const nlohmann::json::exception& e) {
                throw std::invalid_argument(std::string("cost file override: ") + e.what());
            } catch (const RepairError& e) {
                throw std::invalid_argument(std::string("cost file override: ") + e.what());
            }
        }
    }
    return c;
}

CostFunction load_cost(const std::string& preset_or_path) {
    if (preset_or_path == "uniform" || preset_or_path == "edit") {
        return CostFunction::preset(preset_or_path);
    }
    std::ifstream in(preset_or_path);
    if (!in) {
        throw std::invalid_argument("cannot open cost file " + preset_or_path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_cost_json(ss.str());
}

} // namespace gdlr
