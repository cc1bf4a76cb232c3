// SPDX-License-Identifier: Apache-2.0
#ifndef BELLMONO_CLI_HPP
#define BELLMONO_CLI_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bellmono/errors.hpp"

namespace bellmono {

// Process exit codes: 0 on success, one distinct code per error class.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitSize = 4;
inline constexpr int kExitCoverage = 5;
inline constexpr int kExitVerification = 6;
inline constexpr int kExitIo = 7;
inline constexpr int kExitParse = 8;

int exit_code_for(ErrorKind kind);

// One fully parsed invocation. The seed determines every stochastic choice,
// so identical configs produce byte-identical machine output.
struct RunConfig {
    std::string command;  // derive | verify-cert | optimize | search | steinmetz | cyclic | export-dot
    std::vector<std::string> inputs;  // positional file paths
    std::vector<std::string> use;     // derive: restrict the catalog to these names
    std::string plane = "xy";
    uint64_t seed = 12345;
    int restarts = -1;  // -1 = each command's own default
    double tight_tol = 1e-4;
    std::string out;  // target for the machine output; empty = caller prints it

    int n_max = 5;               // search
    int m = 3;                   // search
    int h_max = 0;               // search: 0 = all of C(n, m)
    int h = 5;                   // cyclic ring parameter
    std::string solid = "star";  // steinmetz: star | chain
    int grid = 0;                // steinmetz points per axis; 0 = command default
    bool line_graph_out = false;  // export-dot: emit the Bell-test adjacency instead
};

struct RunResult {
    int code = kExitOk;
    std::string summary;  // human lines; derived bound and best witness side by side
    std::string machine;  // exact bytes for --out: JSON, JSON-lines, CSV, or DOT
};

// Executes one command. Throws Error for every failure class and never writes
// files itself (the caller owns --out), so outputs can be compared byte for
// byte across runs.
RunResult run_command(const RunConfig& cfg);

}  // namespace bellmono

#endif
