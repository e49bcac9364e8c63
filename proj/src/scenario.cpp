// SPDX-License-Identifier: MIT
#include "relaynet/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "relaynet/errors.hpp"
#include "relaynet/proximity_graph.hpp"

namespace relaynet {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

json vec_to_json(const Vec2& v) { return json::array({v.x, v.y}); }

Vec2 vec_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw DataError(std::string("scenario: ") + what + " must be a [x, y] number pair");
    return Vec2{j[0].get<double>(), j[1].get<double>()};
}

const json& require(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw DataError(std::string("scenario: missing field '") + key + "'");
    return *it;
}

double require_num(const json& j, const char* key) {
    const json& v = require(j, key);
    if (!v.is_number()) throw DataError(std::string("scenario: field '") + key + "' must be a number");
    return v.get<double>();
}

long long require_int(const json& j, const char* key) {
    const json& v = require(j, key);
    if (!v.is_number_integer())
        throw DataError(std::string("scenario: field '") + key + "' must be an integer");
    return v.get<long long>();
}

bool require_bool(const json& j, const char* key) {
    const json& v = require(j, key);
    if (!v.is_boolean()) throw DataError(std::string("scenario: field '") + key + "' must be a boolean");
    return v.get<bool>();
}

}  // namespace

std::vector<std::string> validate_scenario(const Scenario& sc) {
    std::vector<std::string> out;
    const auto bad = [&](const std::string& msg) { out.push_back(msg); };

    if (sc.mobile_count < 0) bad("counts: mobile_count is negative");
    if (sc.static_count < 0) bad("counts: static_count is negative");
    bool counts_ok = true;
    if (static_cast<int>(sc.mobile_positions.size()) != sc.mobile_count) {
        bad("counts: mobile_positions length " + std::to_string(sc.mobile_positions.size()) +
            " does not match mobile_count " + std::to_string(sc.mobile_count));
        counts_ok = false;
    }
    if (static_cast<int>(sc.static_positions.size()) != sc.static_count) {
        bad("counts: static_positions length " + std::to_string(sc.static_positions.size()) +
            " does not match static_count " + std::to_string(sc.static_count));
        counts_ok = false;
    }
    if (sc.mobile_count < 0 || sc.static_count < 0) counts_ok = false;
    const int n = sc.mobile_count + sc.static_count;
    if (n < 1) {
        bad("counts: scenario has no agents");
        counts_ok = false;
    }

    const Params& p = sc.params;
    bool radii_ok = true;
    if (!(p.rho0 > 0.0 && p.rho0 < p.rho1 && p.rho1 < p.rho2)) {
        bad("radius-ordering: require 0 < rho0 < rho1 < rho2, got rho0=" + fmt(p.rho0) +
            " rho1=" + fmt(p.rho1) + " rho2=" + fmt(p.rho2));
        radii_ok = false;
    }
    if (!(p.a > 0.0)) bad("params: a must be positive");
    if (!(p.b > 0.0)) bad("params: b must be positive");
    if (!(p.beta > 0.0)) bad("params: beta must be positive");
    if (!(p.eps_w > 0.0)) bad("params: eps_w must be positive");
    if (!(p.eps_f > 0.0)) bad("params: eps_f must be positive");
    if (!(p.alpha > 0.0)) bad("params: alpha must be positive");
    if (!(p.dt > 0.0)) bad("params: dt must be positive");
    if (!(p.vmax > 0.0)) bad("params: vmax must be positive");
    if (p.icp_period < 1) bad("params: icp_period must be at least 1");
    if (sc.max_ticks < 0) bad("params: max_ticks is negative");

    // Flow ids occupy the range just above agent ids so all vertices share
    // one id space.
    std::vector<FlowId> ids;
    for (const auto& f : sc.flows) ids.push_back(f.id);
    std::sort(ids.begin(), ids.end());
    for (std::size_t k = 0; k < ids.size(); ++k) {
        if (ids[k] != n + 1 + static_cast<int>(k)) {
            bad("flow-ids: flow ids must be exactly " + std::to_string(n + 1) + ".." +
                std::to_string(n + static_cast<int>(sc.flows.size())) + " (one id space with agents)");
            break;
        }
    }
    const auto is_static_id = [&](AgentId i) { return i > sc.mobile_count && i <= n; };
    for (const auto& f : sc.flows) {
        if (!is_static_id(f.source) || !is_static_id(f.destination))
            bad("flow-endpoints: flow " + std::to_string(f.id) +
                " endpoints must be static-agent ids");
        if (f.source == f.destination)
            bad("flow-endpoints: flow " + std::to_string(f.id) +
                " source equals destination");
    }

    std::set<FlowId> known(ids.begin(), ids.end());
    for (const auto& e : sc.events) {
        if (!known.count(e.flow))
            bad("event-flow: event at tick " + std::to_string(e.tick) +
                " references unknown flow " + std::to_string(e.flow));
        if (e.tick < 0 || e.tick > sc.max_ticks)
            bad("event-tick: event tick " + std::to_string(e.tick) +
                " outside 0..max_ticks");
    }

    if (counts_ok) {
        std::vector<Vec2> pos(static_cast<std::size_t>(n) + 1);
        for (int i = 0; i < sc.mobile_count; ++i) pos[static_cast<std::size_t>(i) + 1] = sc.mobile_positions[static_cast<std::size_t>(i)];
        for (int i = 0; i < sc.static_count; ++i)
            pos[static_cast<std::size_t>(sc.mobile_count + i) + 1] = sc.static_positions[static_cast<std::size_t>(i)];
        for (int i = 1; i <= n; ++i) {
            for (int j = i + 1; j <= n; ++j) {
                if (pos[static_cast<std::size_t>(i)] == pos[static_cast<std::size_t>(j)])
                    bad("coincident-agents: agents " + std::to_string(i) + " and " +
                        std::to_string(j) + " share a position");
            }
        }
        if (radii_ok) {
            const EdgeSet es = initial_edges(pos, n, p);
            std::vector<AgentId> all(static_cast<std::size_t>(n));
            for (int i = 1; i <= n; ++i) all[static_cast<std::size_t>(i) - 1] = i;
            if (!is_connected(es, all))
                bad("disconnected-initial-graph: the connection-radius graph over the "
                    "initial layout is not connected");
        }
    }
    return out;
}

std::string scenario_to_json(const Scenario& sc) {
    json j;
    j["mobile_count"] = sc.mobile_count;
    j["static_count"] = sc.static_count;
    j["mobile_positions"] = json::array();
    for (const auto& v : sc.mobile_positions) j["mobile_positions"].push_back(vec_to_json(v));
    j["static_positions"] = json::array();
    for (const auto& v : sc.static_positions) j["static_positions"].push_back(vec_to_json(v));
    j["flows"] = json::array();
    for (const auto& f : sc.flows)
        j["flows"].push_back({{"id", f.id},
                              {"source", f.source},
                              {"destination", f.destination},
                              {"active", f.active}});
    j["events"] = json::array();
    for (const auto& e : sc.events)
        j["events"].push_back({{"tick", e.tick}, {"flow", e.flow}, {"activate", e.activate}});
    const Params& p = sc.params;
    j["params"] = {{"rho0", p.rho0},   {"rho1", p.rho1},   {"rho2", p.rho2},
                   {"a", p.a},         {"b", p.b},         {"beta", p.beta},
                   {"eps_w", p.eps_w}, {"eps_f", p.eps_f}, {"alpha", p.alpha},
                   {"dt", p.dt},       {"vmax", p.vmax},   {"icp_period", p.icp_period}};
    j["max_ticks"] = sc.max_ticks;
    j["seed"] = sc.seed;
    return j.dump(2) + "\n";
}

Scenario scenario_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw DataError(std::string("scenario: malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw DataError("scenario: top level must be an object");

    Scenario sc;
    sc.mobile_count = static_cast<int>(require_int(j, "mobile_count"));
    sc.static_count = static_cast<int>(require_int(j, "static_count"));
    const json& mp = require(j, "mobile_positions");
    if (!mp.is_array()) throw DataError("scenario: mobile_positions must be an array");
    for (const auto& v : mp) sc.mobile_positions.push_back(vec_from_json(v, "mobile position"));
    const json& sp = require(j, "static_positions");
    if (!sp.is_array()) throw DataError("scenario: static_positions must be an array");
    for (const auto& v : sp) sc.static_positions.push_back(vec_from_json(v, "static position"));

    const json& jf = require(j, "flows");
    if (!jf.is_array()) throw DataError("scenario: flows must be an array");
    for (const auto& f : jf) {
        if (!f.is_object()) throw DataError("scenario: each flow must be an object");
        Flow flow;
        flow.id = static_cast<FlowId>(require_int(f, "id"));
        flow.source = static_cast<AgentId>(require_int(f, "source"));
        flow.destination = static_cast<AgentId>(require_int(f, "destination"));
        flow.active = require_bool(f, "active");
        sc.flows.push_back(flow);
    }

    const json& je = require(j, "events");
    if (!je.is_array()) throw DataError("scenario: events must be an array");
    for (const auto& e : je) {
        if (!e.is_object()) throw DataError("scenario: each event must be an object");
        FlowEvent ev;
        ev.tick = static_cast<Tick>(require_int(e, "tick"));
        ev.flow = static_cast<FlowId>(require_int(e, "flow"));
        ev.activate = require_bool(e, "activate");
        sc.events.push_back(ev);
    }

    const json& pj = require(j, "params");
    if (!pj.is_object()) throw DataError("scenario: params must be an object");
    Params& p = sc.params;
    p.rho0 = require_num(pj, "rho0");
    p.rho1 = require_num(pj, "rho1");
    p.rho2 = require_num(pj, "rho2");
    p.a = require_num(pj, "a");
    p.b = require_num(pj, "b");
    p.beta = require_num(pj, "beta");
    p.eps_w = require_num(pj, "eps_w");
    p.eps_f = require_num(pj, "eps_f");
    p.alpha = require_num(pj, "alpha");
    p.dt = require_num(pj, "dt");
    p.vmax = require_num(pj, "vmax");
    p.icp_period = static_cast<int>(require_int(pj, "icp_period"));

    sc.max_ticks = static_cast<Tick>(require_int(j, "max_ticks"));
    sc.seed = static_cast<std::uint64_t>(require_int(j, "seed"));
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("scenario: cannot read file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return scenario_from_json(buf.str());
}

void save_scenario(const Scenario& sc, const std::string& path) {
    std::ofstream outf(path);
    if (!outf) throw DataError("scenario: cannot write file '" + path + "'");
    outf << scenario_to_json(sc);
    if (!outf) throw DataError("scenario: write to '" + path + "' failed");
}

}  // namespace relaynet
