// SPDX-License-Identifier: MIT
//
// Scenario validation and file I/O.  Scenarios are JSON documents carrying
// every knob a run needs -- agent layout, flows, timed activation events,
// control parameters, horizon, seed -- so experiments are reproducible from
// the file alone with nothing hard-coded.
#pragma once

#include <string>
#include <vector>

#include "relaynet/types.hpp"

namespace relaynet {

/// Check every scenario invariant and return one human-readable violation
/// string per breach (empty means valid).  Violations are data, not faults:
/// the function never throws on bad content.  Each string starts with a
/// stable slug ("radius-ordering: ...", "disconnected-initial-graph: ...")
/// so tools can match on them.  Pure: equal inputs give equal outputs.
std::vector<std::string> validate_scenario(const Scenario& sc);

/// Serialize a scenario to pretty-printed JSON.  Numbers round-trip
/// losslessly (shortest representation that parses back to the same double).
std::string scenario_to_json(const Scenario& sc);

/// Parse a scenario from JSON text.  Throws DataError on malformed JSON,
/// missing fields, or type mismatches; content-level problems (bad radii,
/// disconnected layouts) are validate_scenario's job, not the parser's.
Scenario scenario_from_json(const std::string& text);

/// File wrappers around the JSON forms.  load_scenario throws DataError when
/// the file cannot be read; save_scenario throws DataError when it cannot be
/// written.
Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& sc, const std::string& path);

}  // namespace relaynet
