// SPDX-License-Identifier: MIT
//
// Trace serialization.  Cost curves go to CSV (one row per tick per flow),
// positions to a separate strided CSV, the run summary and optionally the
// full trace to JSON.  Every number is printed with 9 significant digits so
// diffs between golden traces stay readable; parsers accept exactly what the
// emitters produce, and emit(parse(emit(x))) == emit(x) byte for byte.
#pragma once

#include <string>
#include <vector>

#include "relaynet/sim.hpp"
#include "relaynet/types.hpp"

namespace relaynet {

/// One row of the per-flow cost CSV.
struct TraceCsvRow {
    Tick tick = 0;
    FlowId flow = 0;
    double cost = 0.0;
    bool active = false;
    double spacing_err = 0.0;
};

/// One row of the positions CSV.
struct PositionCsvRow {
    Tick tick = 0;
    AgentId agent = 0;
    double x = 0.0;
    double y = 0.0;
};

/// Cost CSV: header "tick,flow_id,cost,active,spacing_err", one row per tick
/// per flow in ascending flow id order.
std::string emit_trace_csv(const Trace& tr);
std::vector<TraceCsvRow> parse_trace_csv(const std::string& text);

/// Positions CSV: header "tick,agent_id,x,y", rows only for ticks divisible
/// by `stride` (>= 1, else DataError), agents in id order.
std::string emit_positions_csv(const Trace& tr, int stride);
std::vector<PositionCsvRow> parse_positions_csv(const std::string& text);

/// Full trace as JSON: {"records": [...]} with one record object per line.
/// Each per-flow entry carries flow, active, members, cost, spacing_err.
/// parse_trace_json recovers the records (the scenario is not embedded).
std::string emit_trace_json(const Trace& tr);
Trace parse_trace_json(const std::string& text);

/// Run summary as JSON.
std::string emit_summary_json(const Summary& s);

/// Format one double the way every emitter does: %.9g.
std::string format_g9(double v);

/// Write text to a file, throwing DataError on failure.
void write_text_file(const std::string& path, const std::string& text);

/// Read a whole file, throwing DataError on failure.
std::string read_text_file(const std::string& path);

}  // namespace relaynet
