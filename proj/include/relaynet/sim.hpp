// SPDX-License-Identifier: MIT
//
// Simulation engine: drives the tick loop and records the trace.  Order
// within a tick is fixed -- apply due flow events, run the information
// control plane when scheduled (every icp_period ticks and immediately on
// any event), run the physical control plane, integrate motion, refresh the
// proximity graph, then record metrics -- so commands become visible to the
// motion layer in the tick they are issued.
#pragma once

#include <vector>

#include "relaynet/types.hpp"
#include "relaynet/world.hpp"

namespace relaynet {

/// Per-flow slice of one tick record.
struct FlowTickRecord {
    FlowId flow = 0;
    bool active = false;
    int members = 0;           ///< agents currently assigned to the flow
    double cost = 0.0;         ///< summed link weight over edges between co-members
    double spacing_err = 0.0;  ///< max relative deviation of consecutive member
                               ///< spacing from the equidistant ideal; 0 when
                               ///< fewer than 2 members
};

/// Everything observable about one tick, snapshotted after integration and
/// edge refresh.
struct TickRecord {
    Tick tick = 0;
    bool connected = false;      ///< proximity graph connected over all agents
    bool icp_ran = false;        ///< control plane invoked this tick
    int reconfigure_count = 0;   ///< mobiles in RECONFIGURE at end of tick
    std::vector<FlowTickRecord> flows;   ///< ascending flow id, all flows
    std::vector<IcpCommand> commands;    ///< emitted this tick (at most one)
    std::vector<Vec2> positions;         ///< [0] unused, then agents 1..n
};

struct Trace {
    Scenario scenario;  ///< the exact configuration that produced the records
    std::vector<TickRecord> records;  ///< one per tick, 0..max_ticks
};

/// Run a scenario to completion.  Throws DataError (listing violations) when
/// the scenario fails validation, and wraps any mid-run fault in a SimError
/// naming the offending tick.  Deterministic: equal scenarios produce equal
/// traces, bit for bit.
Trace run(const Scenario& sc);

/// Per-phase aggregation, where phases are delimited by event ticks.
struct PhaseSummary {
    Tick start = 0;              ///< first tick of the phase
    Tick end = 0;                ///< last tick of the phase
    Tick convergence_tick = -1;  ///< first tick whose trailing 50-tick window
                                 ///< moves every active flow's cost by < 0.1%;
                                 ///< -1 when the phase never settles
};

struct Summary {
    std::vector<FlowTickRecord> final_flows;  ///< last record's per-flow slice
    bool always_connected = false;
    double max_spacing_err = 0.0;  ///< over all ticks and active flows
    int command_count = 0;
    std::vector<IcpCommand> commands;
    std::vector<PhaseSummary> phases;
};

/// Pure aggregation over a trace.
Summary summarize(const Trace& tr);

}  // namespace relaynet
