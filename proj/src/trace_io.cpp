// SPDX-License-Identifier: MIT
#include "relaynet/trace_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "relaynet/errors.hpp"

namespace relaynet {

namespace {

using nlohmann::json;

constexpr const char* kTraceHeader = "tick,flow_id,cost,active,spacing_err";
constexpr const char* kPositionsHeader = "tick,agent_id,x,y";

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

double parse_double(const std::string& s, const char* what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw DataError(std::string("trace: bad ") + what + " value '" + s + "'");
    }
    if (used != s.size())
        throw DataError(std::string("trace: trailing garbage in ") + what + " '" + s + "'");
    return v;
}

long long parse_ll(const std::string& s, const char* what) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        throw DataError(std::string("trace: bad ") + what + " value '" + s + "'");
    }
    if (used != s.size())
        throw DataError(std::string("trace: trailing garbage in ") + what + " '" + s + "'");
    return v;
}

bool parse_flag(const std::string& s, const char* what) {
    if (s == "0") return false;
    if (s == "1") return true;
    throw DataError(std::string("trace: ") + what + " must be 0 or 1, got '" + s + "'");
}

}  // namespace

std::string format_g9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string emit_trace_csv(const Trace& tr) {
    std::string out = kTraceHeader;
    out += '\n';
    for (const auto& rec : tr.records) {
        for (const auto& fr : rec.flows) {
            out += std::to_string(rec.tick);
            out += ',';
            out += std::to_string(fr.flow);
            out += ',';
            out += format_g9(fr.cost);
            out += ',';
            out += fr.active ? '1' : '0';
            out += ',';
            out += format_g9(fr.spacing_err);
            out += '\n';
        }
    }
    return out;
}

std::vector<TraceCsvRow> parse_trace_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != kTraceHeader)
        throw DataError("trace: missing or wrong cost CSV header");
    std::vector<TraceCsvRow> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 5) throw DataError("trace: cost CSV row needs 5 fields: '" + line + "'");
        TraceCsvRow r;
        r.tick = parse_ll(f[0], "tick");
        r.flow = static_cast<FlowId>(parse_ll(f[1], "flow_id"));
        r.cost = parse_double(f[2], "cost");
        r.active = parse_flag(f[3], "active");
        r.spacing_err = parse_double(f[4], "spacing_err");
        rows.push_back(r);
    }
    return rows;
}

std::string emit_positions_csv(const Trace& tr, int stride) {
    if (stride < 1) throw DataError("trace: positions stride must be >= 1");
    std::string out = kPositionsHeader;
    out += '\n';
    for (const auto& rec : tr.records) {
        if (rec.tick % stride != 0) continue;
        for (std::size_t i = 1; i < rec.positions.size(); ++i) {
            out += std::to_string(rec.tick);
            out += ',';
            out += std::to_string(i);
            out += ',';
            out += format_g9(rec.positions[i].x);
            out += ',';
            out += format_g9(rec.positions[i].y);
            out += '\n';
        }
    }
    return out;
}

std::vector<PositionCsvRow> parse_positions_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != kPositionsHeader)
        throw DataError("trace: missing or wrong positions CSV header");
    std::vector<PositionCsvRow> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 4)
            throw DataError("trace: positions CSV row needs 4 fields: '" + line + "'");
        PositionCsvRow r;
        r.tick = parse_ll(f[0], "tick");
        r.agent = static_cast<AgentId>(parse_ll(f[1], "agent_id"));
        r.x = parse_double(f[2], "x");
        r.y = parse_double(f[3], "y");
        rows.push_back(r);
    }
    return rows;
}

std::string emit_trace_json(const Trace& tr) {
    std::string out = "{\"records\":[\n";
    bool first_rec = true;
    for (const auto& rec : tr.records) {
        if (!first_rec) out += ",\n";
        first_rec = false;
        out += "{\"tick\":" + std::to_string(rec.tick);
        out += ",\"connected\":";
        out += rec.connected ? "true" : "false";
        out += ",\"icp_ran\":";
        out += rec.icp_ran ? "true" : "false";
        out += ",\"reconfigure_count\":" + std::to_string(rec.reconfigure_count);
        out += ",\"flows\":[";
        for (std::size_t k = 0; k < rec.flows.size(); ++k) {
            const auto& fr = rec.flows[k];
            if (k) out += ',';
            out += "{\"flow\":" + std::to_string(fr.flow);
            out += ",\"active\":";
            out += fr.active ? "true" : "false";
            out += ",\"members\":" + std::to_string(fr.members);
            out += ",\"cost\":" + format_g9(fr.cost);
            out += ",\"spacing_err\":" + format_g9(fr.spacing_err) + "}";
        }
        out += "],\"commands\":[";
        for (std::size_t k = 0; k < rec.commands.size(); ++k) {
            const auto& c = rec.commands[k];
            if (k) out += ',';
            out += "{\"tick\":" + std::to_string(c.tick);
            out += ",\"agent\":" + std::to_string(c.agent);
            out += ",\"flow\":" + std::to_string(c.flow) + "}";
        }
        out += "],\"positions\":[";
        for (std::size_t i = 1; i < rec.positions.size(); ++i) {
            if (i > 1) out += ',';
            out += '[' + format_g9(rec.positions[i].x) + ',' + format_g9(rec.positions[i].y) + ']';
        }
        out += "]}";
    }
    out += "\n]}\n";
    return out;
}

Trace parse_trace_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw DataError(std::string("trace: malformed JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("records") || !j["records"].is_array())
        throw DataError("trace: JSON must be an object with a 'records' array");
    Trace tr;
    for (const auto& rj : j["records"]) {
        TickRecord rec;
        rec.tick = rj.at("tick").get<Tick>();
        rec.connected = rj.at("connected").get<bool>();
        rec.icp_ran = rj.at("icp_ran").get<bool>();
        rec.reconfigure_count = rj.at("reconfigure_count").get<int>();
        for (const auto& fj : rj.at("flows")) {
            FlowTickRecord fr;
            fr.flow = fj.at("flow").get<FlowId>();
            fr.active = fj.at("active").get<bool>();
            fr.members = fj.at("members").get<int>();
            fr.cost = fj.at("cost").get<double>();
            fr.spacing_err = fj.at("spacing_err").get<double>();
            rec.flows.push_back(fr);
        }
        for (const auto& cj : rj.at("commands")) {
            IcpCommand c;
            c.tick = cj.at("tick").get<Tick>();
            c.agent = cj.at("agent").get<AgentId>();
            c.flow = cj.at("flow").get<FlowId>();
            rec.commands.push_back(c);
        }
        rec.positions.push_back(Vec2{0.0, 0.0});  // unused id-0 slot
        for (const auto& pj : rj.at("positions"))
            rec.positions.push_back(Vec2{pj.at(0).get<double>(), pj.at(1).get<double>()});
        tr.records.push_back(std::move(rec));
    }
    return tr;
}

std::string emit_summary_json(const Summary& s) {
    std::string out = "{\n  \"final_flows\": [";
    for (std::size_t k = 0; k < s.final_flows.size(); ++k) {
        const auto& fr = s.final_flows[k];
        if (k) out += ',';
        out += "\n    {\"flow\":" + std::to_string(fr.flow);
        out += ",\"active\":";
        out += fr.active ? "true" : "false";
        out += ",\"members\":" + std::to_string(fr.members);
        out += ",\"cost\":" + format_g9(fr.cost);
        out += ",\"spacing_err\":" + format_g9(fr.spacing_err) + "}";
    }
    out += "\n  ],\n";
    out += "  \"always_connected\": ";
    out += s.always_connected ? "true" : "false";
    out += ",\n  \"max_spacing_err\": " + format_g9(s.max_spacing_err);
    out += ",\n  \"command_count\": " + std::to_string(s.command_count);
    out += ",\n  \"commands\": [";
    for (std::size_t k = 0; k < s.commands.size(); ++k) {
        const auto& c = s.commands[k];
        if (k) out += ',';
        out += "\n    {\"tick\":" + std::to_string(c.tick);
        out += ",\"agent\":" + std::to_string(c.agent);
        out += ",\"flow\":" + std::to_string(c.flow) + "}";
    }
    out += "\n  ],\n  \"phases\": [";
    for (std::size_t k = 0; k < s.phases.size(); ++k) {
        const auto& ph = s.phases[k];
        if (k) out += ',';
        out += "\n    {\"start\":" + std::to_string(ph.start);
        out += ",\"end\":" + std::to_string(ph.end);
        out += ",\"convergence_tick\":" + std::to_string(ph.convergence_tick) + "}";
    }
    out += "\n  ]\n}\n";
    return out;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("trace: cannot write file '" + path + "'");
    out << text;
    if (!out) throw DataError("trace: write to '" + path + "' failed");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("trace: cannot read file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace relaynet
