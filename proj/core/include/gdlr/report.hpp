#pragma once

#include "gdlr/checker.hpp"
#include "gdlr/solver.hpp"

#include <string>
#include <vector>

namespace gdlr {

enum class ReportFormat { Text, Json };

/// The rules as GDL source, changeable part first, labels kept, empty
/// rules left out. One rule per line.
std::string format_description(const GameDescription& desc);

/// Line-based unified diff with three lines of context; empty if equal.
std::string unified_diff(const std::string& before, const std::string& after, const std::string& from_name,
                         const std::string& to_name);

/// A sequence as JSON text: [{"step":0,"state":[..],"terminal":..,"playable":..,
/// "goals":{"p":["100"]},"does":{"p":"r"}}, ...].
std::string sequence_json(const Game& game, const Sequence& seq);

/// Repair outcome. JSON: {status, bound, reason, candidates, cost, tuples:
/// [{rule, kind, payload}], diff, evidence: [{formula, sequence}],
/// alternatives: [{cost, tuples}]}. Text: the same with traces per step.
std::string render_report(const RepairTask& task, const SolveResult& result, ReportFormat fmt);

} // namespace gdlr
