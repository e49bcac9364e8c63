// SPDX-License-Identifier: MIT
//
// relaynet command-line front end.
//
//   relaynet run      --scenario FILE [--out DIR] [--format csv|json]
//                     [--stride N] [--kernels auto|scalar|avx2] [--quiet]
//   relaynet validate --scenario FILE
//   relaynet allocate --lengths L1,L2,... --total N [--rho2 R] [--a A] [--b B]
//
// Exit codes: 0 success, 1 runtime fault, 2 usage error, 3 validation failure.
#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "relaynet/errors.hpp"
#include "relaynet/flow_allocator.hpp"
#include "relaynet/kernels.hpp"
#include "relaynet/scenario.hpp"
#include "relaynet/sim.hpp"
#include "relaynet/trace_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFault = 1;
constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;

int cmd_validate(const std::string& scenario_path, bool quiet) {
    relaynet::Scenario sc;
    try {
        sc = relaynet::load_scenario(scenario_path);
    } catch (const relaynet::DataError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    const auto violations = relaynet::validate_scenario(sc);
    if (!violations.empty()) {
        for (const auto& v : violations) std::fprintf(stderr, "violation: %s\n", v.c_str());
        return kExitValidation;
    }
    if (!quiet) std::printf("ok: %s\n", scenario_path.c_str());
    return kExitOk;
}

int cmd_run(const std::string& scenario_path, const std::string& out_dir,
            const std::string& format, int stride, const std::string& kernels, bool quiet) {
    try {
        relaynet::kernels::select_kernels(kernels);
    } catch (const relaynet::DataError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }

    relaynet::Scenario sc;
    try {
        sc = relaynet::load_scenario(scenario_path);
    } catch (const relaynet::DataError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    const auto violations = relaynet::validate_scenario(sc);
    if (!violations.empty()) {
        for (const auto& v : violations) std::fprintf(stderr, "violation: %s\n", v.c_str());
        return kExitValidation;
    }

    relaynet::Trace trace;
    try {
        trace = relaynet::run(sc);
    } catch (const relaynet::SimError& e) {
        std::fprintf(stderr, "fault: %s\n", e.what());
        return kExitFault;
    }

    try {
        std::filesystem::create_directories(out_dir);
        const auto path = [&](const char* name) {
            return (std::filesystem::path(out_dir) / name).string();
        };
        if (format == "json")
            relaynet::write_text_file(path("trace.json"), relaynet::emit_trace_json(trace));
        else
            relaynet::write_text_file(path("trace.csv"), relaynet::emit_trace_csv(trace));
        relaynet::write_text_file(path("positions.csv"),
                                  relaynet::emit_positions_csv(trace, stride));
        const relaynet::Summary summary = relaynet::summarize(trace);
        relaynet::write_text_file(path("summary.json"), relaynet::emit_summary_json(summary));
        if (!quiet) {
            std::printf("ticks: %lld\n",
                        static_cast<long long>(trace.records.size()));
            std::printf("kernels: %s\n", relaynet::kernels::active().name);
            std::printf("commands: %d\n", summary.command_count);
            std::printf("always_connected: %s\n", summary.always_connected ? "yes" : "no");
            for (const auto& fr : summary.final_flows)
                std::printf("flow %d: active=%d cost=%s spacing_err=%s\n", fr.flow,
                            fr.active ? 1 : 0, relaynet::format_g9(fr.cost).c_str(),
                            relaynet::format_g9(fr.spacing_err).c_str());
            std::printf("out: %s\n", out_dir.c_str());
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "fault: %s\n", e.what());
        return kExitFault;
    }
    return kExitOk;
}

int cmd_allocate(const std::vector<double>& lengths, int total, double rho2, double a,
                 double b) {
    relaynet::Params p = relaynet::Params::defaults(rho2);
    if (a > 0.0) p.a = a;
    if (b > 0.0) p.b = b;

    std::vector<relaynet::FlowDemand> flows;
    for (std::size_t k = 0; k < lengths.size(); ++k)
        flows.push_back({static_cast<relaynet::FlowId>(k + 1), lengths[k]});

    std::vector<int> alloc;
    try {
        alloc = relaynet::greedy_allocate(flows, total, p);
    } catch (const relaynet::SimError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }

    std::printf("flow  length        relays  cost\n");
    for (std::size_t k = 0; k < flows.size(); ++k)
        std::printf("%-5d %-13s %-7d %s\n", flows[k].id,
                    relaynet::format_g9(flows[k].length).c_str(), alloc[k],
                    relaynet::format_g9(
                        relaynet::ideal_flow_cost(flows[k].length, alloc[k], p))
                        .c_str());
    std::printf("total cost: %s\n",
                relaynet::format_g9(relaynet::allocation_cost(flows, alloc, p)).c_str());

    if (total <= 12 && flows.size() <= 5) {
        const auto oracle = relaynet::brute_force_allocate(flows, total, p);
        const double gc = relaynet::allocation_cost(flows, alloc, p);
        const double oc = relaynet::allocation_cost(flows, oracle, p);
        if (gc == oc) {
            std::printf("oracle: agreement (exhaustive cost %s)\n",
                        relaynet::format_g9(oc).c_str());
        } else {
            std::fprintf(stderr, "oracle: MISMATCH greedy=%s exhaustive=%s\n",
                         relaynet::format_g9(gc).c_str(), relaynet::format_g9(oc).c_str());
            return kExitFault;
        }
    } else {
        std::printf("oracle: skipped (instance above exhaustive guard)\n");
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"relaynet: relay-network simulator with a global allocation plane "
                 "and a local motion plane"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_dir = "out";
    std::string format = "csv";
    std::string kernels = "auto";
    int stride = 1;
    bool quiet = false;

    CLI::App* run_cmd = app.add_subcommand("run", "simulate a scenario and write trace files");
    run_cmd->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    run_cmd->add_option("--out", out_dir, "output directory (created if missing)");
    run_cmd->add_option("--format", format, "trace format")
        ->check(CLI::IsMember({"csv", "json"}));
    run_cmd->add_option("--stride", stride, "keep every Nth tick in positions.csv")
        ->check(CLI::PositiveNumber);
    run_cmd->add_option("--kernels", kernels, "compute kernel lane")
        ->check(CLI::IsMember({"auto", "scalar", "avx2"}));
    run_cmd->add_flag("--quiet", quiet, "suppress the stdout summary");

    CLI::App* val_cmd = app.add_subcommand("validate", "check a scenario file");
    val_cmd->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    val_cmd->add_flag("--quiet", quiet, "print nothing on success");

    std::vector<double> lengths;
    int total = 0;
    double rho2 = 2.0, a_override = 0.0, b_override = 0.0;
    CLI::App* alloc_cmd =
        app.add_subcommand("allocate", "distribute relays across flow lengths");
    alloc_cmd->add_option("--lengths", lengths, "flow endpoint separations")
        ->required()
        ->delimiter(',');
    alloc_cmd->add_option("--total", total, "number of relays to place")
        ->required()
        ->check(CLI::NonNegativeNumber);
    alloc_cmd->add_option("--rho2", rho2, "interaction radius the defaults derive from")
        ->check(CLI::PositiveNumber);
    alloc_cmd->add_option("--a", a_override, "sigmoid steepness override");
    alloc_cmd->add_option("--b", b_override, "sigmoid midpoint override");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (run_cmd->parsed())
            return cmd_run(scenario_path, out_dir, format, stride, kernels, quiet);
        if (val_cmd->parsed()) return cmd_validate(scenario_path, quiet);
        if (alloc_cmd->parsed())
            return cmd_allocate(lengths, total, rho2, a_override, b_override);
    } catch (const relaynet::DataError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "fault: %s\n", e.what());
        return kExitFault;
    }
    return kExitUsage;
}
