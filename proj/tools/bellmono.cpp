// SPDX-License-Identifier: Apache-2.0
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bellmono/cli.hpp"
#include "bellmono/json_io.hpp"

using namespace bellmono;

int main(int argc, char** argv) {
    CLI::App app{"Monogamy of Bell correlations on qubit networks: derive trade-offs, verify "
                 "anti-commutation certificates, and stress-test tightness"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string network_path, relation_path, certificate_path;

    const auto add_out = [&](CLI::App* cmd) {
        cmd->add_option("--out", cfg.out, "write the machine output (JSON/CSV/DOT) to this path");
    };
    const auto add_optimizer = [&](CLI::App* cmd) {
        cmd->add_option("--plane", cfg.plane, "measurement plane: xy or xz")
            ->check(CLI::IsMember({"xy", "xz"}));
        cmd->add_option("--seed", cfg.seed, "seed behind every stochastic choice");
        cmd->add_option("--restarts", cfg.restarts, "random restarts after the analytic seeds");
        cmd->add_option("--tight-tol", cfg.tight_tol,
                        "bound minus best witness below this counts as tight");
    };

    auto* derive = app.add_subcommand(
        "derive", "derive the strongest averaged trade-off for a network, plus the naive average");
    derive->add_option("network", network_path, "network JSON file")->required();
    derive->add_option("--use", cfg.use,
                       "restrict the catalog to these named relations (repeatable)");
    add_out(derive);

    auto* verify_cert = app.add_subcommand(
        "verify-cert", "check an anti-commuting partition certificate against a relation file");
    verify_cert->add_option("certificate", certificate_path, "certificate JSON file")->required();
    verify_cert
        ->add_option("relation", relation_path,
                     "elementary relation JSON providing the pattern and bound")
        ->required();
    add_out(verify_cert);

    auto* optimize = app.add_subcommand(
        "optimize", "search quantum states and settings for the best witness of a relation");
    optimize->add_option("relation", relation_path, "relation JSON file")->required();
    add_optimizer(optimize);
    add_out(optimize);

    auto* search = app.add_subcommand(
        "search", "enumerate networks, derive bounds, and grow the elementary relation set");
    search->add_option("n_max", cfg.n_max, "largest observer count (default 5)");
    search->add_option("m", cfg.m, "Bell test arity: 2 or 3 (default 3)");
    search->add_option("--h-max", cfg.h_max, "cap on Bell tests per network (0 = no cap)");
    add_optimizer(search);
    add_out(search);

    auto* steinmetz = app.add_subcommand(
        "steinmetz", "scan the catalog states over a target grid and report achieved Bell values");
    steinmetz->add_option("solid", cfg.solid, "star or chain")
        ->required()
        ->check(CLI::IsMember({"star", "chain"}));
    steinmetz->add_option("--grid", cfg.grid, "grid points (star: total, chain: per axis)");
    steinmetz->add_option("--seed", cfg.seed, "seed behind every stochastic choice");
    add_out(steinmetz);

    auto* cyclic = app.add_subcommand(
        "cyclic", "symbolic obstruction check for the odd ring of triple Bell tests");
    cyclic->add_option("ring", cfg.h, "number of Bell tests h on the ring (odd, at least 5)")
        ->required();
    add_out(cyclic);

    auto* export_dot = app.add_subcommand("export-dot", "render a network as Graphviz DOT");
    export_dot->add_option("network", network_path, "network JSON file")->required();
    export_dot->add_flag("--line", cfg.line_graph_out,
                         "emit the Bell-test adjacency structure instead");
    add_out(export_dot);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    CLI::App* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();
    if (sub == derive || sub == export_dot) cfg.inputs = {network_path};
    if (sub == verify_cert) cfg.inputs = {certificate_path, relation_path};
    if (sub == optimize) cfg.inputs = {relation_path};

    try {
        const RunResult result = run_command(cfg);
        if (!cfg.out.empty()) {
            write_text_file(cfg.out, result.machine);
            std::cout << result.summary;
        } else {
            std::cout << result.machine;
            std::cerr << result.summary;
        }
        return result.code;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}
