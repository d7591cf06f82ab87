#pragma once

#include "gdlr/repair.hpp"

#include <map>
#include <optional>
#include <string>
#include <tuple>

namespace gdlr {

/// cost: I x Dom -> positive integers.
class CostFunction {
public:
    enum class Preset { Uniform, Edit };

    /// Every tuple costs 1.
    static CostFunction uniform() { return CostFunction(Preset::Uniform); }
    /// +/- cost 1; a new head on an empty slot costs 1; deleting an old rule
    /// costs |bd|+1; giving an old rule another head costs 2|bd|+2.
    static CostFunction edit() { return CostFunction(Preset::Edit); }
    /// "uniform" or "edit". Throws std::invalid_argument.
    static CostFunction preset(const std::string& name);

    Preset base_preset() const noexcept { return preset_; }

    /// Replaces the preset value for tuples without an override.
    void set_default(int cost);
    /// Cost of one specific tuple. Throws std::invalid_argument unless cost > 0.
    void set_override(const ChangeTuple& t, int cost);

    /// cost'(x) = 2 cost(x), except for `t` which gets 2 cost(t) - 1.
    CostFunction doubled_except(const ChangeTuple& t) const;

    int operator()(const GameDescription& desc, const ChangeTuple& t) const;
    int total(const GameDescription& desc, const Repair& r) const;

private:
    explicit CostFunction(Preset p) : preset_(p) {}

    Preset preset_;
    std::optional<int> default_;
    std::map<ChangeTuple, int> overrides_;
    int scale_ = 1;
    std::optional<ChangeTuple> discounted_;
};

/// JSON cost file:
///   {"preset": "edit", "default": 1,
///    "overrides": [{"rule": 4, "kind": "chg", "literal": "legal(p,r)", "cost": 3}]}
/// All keys optional; "presets" is accepted as an alias of "preset" and
/// "payload" of "literal". Throws std::invalid_argument.
CostFunction parse_cost_json(const std::string& text);
/// A preset name or a path to a JSON cost file.
CostFunction load_cost(const std::string& preset_or_path);

} // namespace gdlr
