// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "bellmono/cli.hpp"
#include "bellmono/errors.hpp"
#include "bellmono/json_io.hpp"
#include "bellmono/relations.hpp"
#include "bellmono/tightness.hpp"

using namespace bellmono;

namespace {

// All fixtures live in one scratch directory so reruns overwrite, not leak.
std::string fixture(const std::string& name, const std::string& text) {
    const auto dir = std::filesystem::temp_directory_path() / "bellmono_cli_fixtures";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / name).string();
    write_text_file(path, text);
    return path;
}

std::string network_fixture(const std::string& name, const Hypergraph& g) {
    return fixture(name, json_to_text(hypergraph_to_json(g)));
}

Hypergraph triangle() { return Hypergraph(3, {{0, 1}, {0, 2}, {1, 2}}); }
Hypergraph square_network() {
    return Hypergraph(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}
Hypergraph c5_network() {
    return Hypergraph(10, {{0, 1, 2}, {2, 3, 4}, {4, 5, 6}, {6, 7, 8}, {8, 9, 0}});
}
// Two edge-disjoint layers on 7 observers: a square copy and a triforce copy.
Hypergraph two_layer_network() {
    return Hypergraph(7, {{0, 1, 2},
                          {2, 3, 4},
                          {0, 4, 5},
                          {0, 2, 4},
                          {1, 3, 5},
                          {3, 5, 6},
                          {1, 5, 6},
                          {1, 3, 6}});
}

RunConfig base_config(std::string command, std::vector<std::string> inputs) {
    RunConfig cfg;
    cfg.command = std::move(command);
    cfg.inputs = std::move(inputs);
    return cfg;
}

ErrorKind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected a bellmono::Error");
    return ErrorKind::internal;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    size_t start = 0;
    while (start < text.size()) {
        const size_t end = text.find('\n', start);
        if (end == std::string::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return lines;
}

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> cells;
    size_t start = 0;
    while (true) {
        const size_t end = line.find(',', start);
        if (end == std::string::npos) {
            cells.push_back(line.substr(start));
            return cells;
        }
        cells.push_back(line.substr(start, end - start));
        start = end + 1;
    }
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("derive reports the pair-adjacency bound for the triangle") {
    const auto path = network_fixture("triangle.json", triangle());
    const RunResult res = run_command(base_config("derive", {path}));
    CHECK(res.code == kExitOk);
    CHECK(contains(res.summary, "network: 3 observers, 3 Bell tests"));
    CHECK(contains(res.summary, "derived: Σ B² ≤ 3 [certified, fractional-cover]"));

    const Json payload = json_from_text(res.machine);
    CHECK(payload.at("derived").at("bound") == "3");
    CHECK(payload.at("derived").at("status") == "certified");
    CHECK(payload.at("naive").at("bound") == "3");
}

TEST_CASE("derive beats naive averaging on the 3-uniform square") {
    const auto path = network_fixture("square.json", square_network());
    const RunResult res = run_command(base_config("derive", {path}));
    CHECK(res.code == kExitOk);
    const Json payload = json_from_text(res.machine);
    CHECK(payload.at("derived").at("bound") == "4");
    CHECK(payload.at("derived").at("status") == "certified");
    CHECK(payload.at("naive").at("bound") == "8");
    CHECK(payload.at("naive").at("method") == "pair-average/normalized");

    // Same inputs, same bytes: the derivation is fully deterministic.
    const RunResult rerun = run_command(base_config("derive", {path}));
    CHECK(rerun.machine == res.machine);
    CHECK(rerun.summary == res.summary);
}

TEST_CASE("derive restricts the catalog with --use and rejects unknown names") {
    const auto path = network_fixture("c5.json", c5_network());
    RunConfig cfg = base_config("derive", {path});
    cfg.use = {"bowtie"};
    const RunResult res = run_command(cfg);
    CHECK(json_from_text(res.machine).at("derived").at("bound") == "10");

    cfg.use = {"pentagon"};
    CHECK(kind_of([&] { run_command(cfg); }) == ErrorKind::domain);
}

TEST_CASE("derive covers the two-layer network with square and triforce copies") {
    const auto path = network_fixture("two_layer.json", two_layer_network());
    RunConfig cfg = base_config("derive", {path});
    cfg.use = {"square", "triforce"};
    const RunResult res = run_command(cfg);
    const Json payload = json_from_text(res.machine);
    CHECK(payload.at("derived").at("bound") == "8");
    CHECK(payload.at("derived").at("status") == "certified");
    CHECK(payload.at("naive").at("bound") == "28");
}

TEST_CASE("derive on a network with no adjacent Bell tests skips the naive line") {
    const auto path = network_fixture("disjoint.json", Hypergraph(4, {{0, 1}, {2, 3}}));
    const RunResult res = run_command(base_config("derive", {path}));
    CHECK(res.code == kExitOk);
    CHECK(contains(res.summary, "naive averaging: not applicable"));
    CHECK(json_from_text(res.machine).at("naive").is_null());
}

TEST_CASE("optimize confirms a derived bound is tight") {
    const auto net_path = network_fixture("square.json", square_network());
    const RunResult derived = run_command(base_config("derive", {net_path}));
    const auto rel_path = fixture("square_derived.json", derived.machine);

    // The machine payload of derive feeds optimize directly.
    RunConfig cfg = base_config("optimize", {rel_path});
    cfg.restarts = 4;
    const RunResult res = run_command(cfg);
    CHECK(res.code == kExitOk);
    CHECK(contains(res.summary, "→ numerically-tight"));

    const Json verdict = json_from_text(res.machine);
    CHECK(verdict.at("status") == to_string(TightnessStatus::numerically_tight));
    CHECK(verdict.at("relation").at("status") == "certified");
    CHECK(verdict.at("best_lhs").get<double>() ==
          doctest::Approx(4.0).epsilon(1e-4));
    CHECK(verdict.at("config").at("seed") == cfg.seed);
    CHECK(verdict.at("config").at("restarts") == 4);

    // A flat relation file (the "derived" member alone) gives identical bytes.
    const auto flat_path =
        fixture("square_flat.json", json_to_text(json_from_text(derived.machine).at("derived")));
    cfg.inputs = {flat_path};
    CHECK(run_command(cfg).machine == res.machine);
}

TEST_CASE("optimize exposes the gap left by naive averaging") {
    MonogamyRelation naive;
    naive.network = square_network();
    naive.coefficients.assign(4, Rational(1));
    naive.bound = 8;
    const auto path = fixture("square_naive8.json", json_to_text(relation_to_json(naive, "conjectured")));

    RunConfig cfg = base_config("optimize", {path});
    cfg.restarts = 6;
    const RunResult res = run_command(cfg);
    CHECK(res.code == kExitOk);
    CHECK(contains(res.summary, "→ gap-found"));

    const Json verdict = json_from_text(res.machine);
    CHECK(verdict.at("status") == to_string(TightnessStatus::gap_found));
    CHECK(verdict.at("relation").at("status") == "conjectured");
    const double best = verdict.at("best_lhs").get<double>();
    CHECK(best <= 4.0 + 1e-4);  // the true maximum over quantum states
    CHECK(best >= 3.0);
    CHECK(verdict.at("gap").get<double>() ==
          doctest::Approx(8.0 - best).epsilon(1e-12));

    // Same seed, same bytes.
    CHECK(run_command(cfg).machine == res.machine);
}

TEST_CASE("verify-cert accepts a builtin certificate and flags tampering") {
    const auto catalog = builtin_catalog();
    const auto vee = std::find_if(catalog.begin(), catalog.end(),
                                  [](const auto& r) { return r.name == "vee"; });
    REQUIRE(vee != catalog.end());
    REQUIRE(vee->certificate.has_value());

    const Json elem = elementary_to_json(*vee);
    const auto rel_path = fixture("vee_elem.json", json_to_text(elem));
    const auto cert_path = fixture("vee_cert.json", json_to_text(elem.at("certificate")));

    const RunResult ok = run_command(base_config("verify-cert", {cert_path, rel_path}));
    CHECK(ok.code == kExitOk);
    CHECK(contains(ok.summary, "PASS"));
    const Json pass_payload = json_from_text(ok.machine);
    CHECK(pass_payload.at("pass") == true);
    CHECK(pass_payload.at("groups") == 2);
    CHECK(pass_payload.at("bound") == "2");
    CHECK(pass_payload.at("failures").empty());

    // Swapping one observable breaks anti-commutation and the cover match.
    Json bad = elem.at("certificate");
    bad.at("groups").at(0).at(0) = "X1";
    const auto bad_path = fixture("vee_cert_bad.json", json_to_text(bad));
    const RunResult fail = run_command(base_config("verify-cert", {bad_path, rel_path}));
    CHECK(fail.code == kExitVerification);
    CHECK(contains(fail.summary, "FAIL"));
    CHECK_FALSE(json_from_text(fail.machine).at("failures").empty());

    // A correct certificate against the wrong bound fails the group count check.
    Json wrong_bound = elem;
    wrong_bound.at("bound") = "3";
    const auto wb_path = fixture("vee_elem_b3.json", json_to_text(wrong_bound));
    const RunResult mismatch = run_command(base_config("verify-cert", {cert_path, wb_path}));
    CHECK(mismatch.code == kExitVerification);
    CHECK(contains(mismatch.summary, "group count 2 does not equal the bound 3"));
}

TEST_CASE("search narrates discoveries and emits a deterministic JSONL log") {
    RunConfig cfg = base_config("search", {});
    cfg.n_max = 4;
    cfg.m = 3;
    cfg.restarts = 2;
    const RunResult res = run_command(cfg);
    CHECK(res.code == kExitOk);
    CHECK(contains(res.summary, "search: arity-3 networks up to 4 observers"));
    CHECK(contains(res.summary, "added"));
    CHECK(contains(res.summary, "elementary set:"));

    const auto lines = split_lines(res.machine);
    REQUIRE(lines.size() >= 3);
    const Json header = json_from_text(lines.front());
    CHECK(header.at("kind") == "search-run");
    CHECK(header.at("config").at("seed") == cfg.seed);
    const Json footer = json_from_text(lines.back());
    CHECK(footer.at("kind") == "elementary-set");
    REQUIRE(footer.at("relations").size() == 1);
    CHECK(footer.at("relations").at(0).at("bound") == "4");
    for (size_t i = 1; i + 1 < lines.size(); ++i)
        CHECK(json_from_text(lines[i]).contains("derived_bound"));

    CHECK(run_command(cfg).machine == res.machine);
}

TEST_CASE("steinmetz star scan matches the closed form") {
    RunConfig cfg = base_config("steinmetz", {});
    cfg.solid = "star";
    cfg.grid = 5;
    const RunResult res = run_command(cfg);
    CHECK(res.code == kExitOk);
    CHECK(contains(res.summary, "steinmetz star: 4 observers, 5 settings"));

    const auto lines = split_lines(res.machine);
    REQUIRE(lines.size() == 6);
    CHECK(lines[0] == "t,b01_sq_target,b01_sq,b02_sq_target,b02_sq,b03_sq_target,b03_sq");
    for (size_t row = 1; row < lines.size(); ++row) {
        const auto cells = split_csv_row(lines[row]);
        REQUIRE(cells.size() == 7);
        const double t = std::strtod(cells[0].c_str(), nullptr);
        CHECK(t >= 0);
        CHECK(t <= std::numbers::pi / 4 + 1e-12);
        // target/achieved pairs: (1,2), (3,4), (5,6)
        for (int pair = 0; pair < 3; ++pair) {
            const double target = std::strtod(cells[1 + 2 * pair].c_str(), nullptr);
            const double got = std::strtod(cells[2 + 2 * pair].c_str(), nullptr);
            CHECK(std::abs(got - target) <= 1e-6);
        }
    }
}

TEST_CASE("steinmetz chain scan stays inside the trade-off body") {
    RunConfig cfg = base_config("steinmetz", {});
    cfg.solid = "chain";
    cfg.grid = 3;
    const RunResult res = run_command(cfg);
    CHECK(res.code == kExitOk);
    CHECK(contains(res.summary, "steinmetz chain: 3×3×3 target grid"));
    CHECK(contains(res.summary, "outside the trade-off body"));

    const auto lines = split_lines(res.machine);
    REQUIRE(lines.size() >= 2);
    CHECK(lines[0] == "b12_target,b13_target,b34_target,region,b12,b13,b34");
    for (size_t row = 1; row < lines.size(); ++row) {
        const auto cells = split_csv_row(lines[row]);
        REQUIRE(cells.size() == 7);
        CHECK(cells[3].size() == 2);
        CHECK(cells[3][0] == 'P');
        CHECK(cells[3][1] >= '1');
        CHECK(cells[3][1] <= '5');
        for (int axis = 0; axis < 3; ++axis) {
            const double target = std::strtod(cells[axis].c_str(), nullptr);
            const double got = std::strtod(cells[4 + axis].c_str(), nullptr);
            CHECK(std::abs(got - target) <= 1e-6);
        }
    }

    cfg.grid = 1;
    CHECK(kind_of([&] { run_command(cfg); }) == ErrorKind::domain);
    cfg.grid = 3;
    cfg.solid = "cylinder";
    CHECK(kind_of([&] { run_command(cfg); }) == ErrorKind::domain);
}

TEST_CASE("cyclic obstruction verdict for odd rings, domain error otherwise") {
    RunConfig cfg = base_config("cyclic", {});
    cfg.h = 5;
    const RunResult res = run_command(cfg);
    CHECK(res.code == kExitOk);
    CHECK(contains(res.summary, "all pass"));
    const Json payload = json_from_text(res.machine);
    CHECK(payload.at("passed") == true);
    CHECK(payload.at("checks").size() == 31);
    CHECK(payload.at("margin").get<double>() ==
          doctest::Approx((std::numbers::sqrt2 - 1) * (std::numbers::sqrt2 - 1)).epsilon(1e-12));

    cfg.h = 4;
    CHECK(kind_of([&] { run_command(cfg); }) == ErrorKind::domain);
}

TEST_CASE("export-dot renders networks and pair adjacency structures") {
    const auto tri_path = network_fixture("triangle.json", triangle());
    RunConfig cfg = base_config("export-dot", {tri_path});
    const RunResult plain = run_command(cfg);
    CHECK(plain.code == kExitOk);
    CHECK(contains(plain.machine, "graph network {"));
    CHECK(contains(plain.summary, "3 observers, 3 Bell tests"));

    cfg.line_graph_out = true;
    const RunResult line = run_command(cfg);
    CHECK(contains(line.machine, "graph line_structure {"));
    CHECK(contains(line.machine, "b0 -- b1 [label=\"vee\"]"));
    CHECK(contains(line.summary, "3 Bell tests, 3 adjacent pairs"));

    // The classic line graph is defined for pair networks only.
    const auto sq_path = network_fixture("square.json", square_network());
    cfg.inputs = {sq_path};
    CHECK(kind_of([&] { run_command(cfg); }) == ErrorKind::domain);
    cfg.line_graph_out = false;
    CHECK(contains(run_command(cfg).machine, "e0 [shape=box"));
}

TEST_CASE("failures carry the error kind that maps to the exit code") {
    CHECK(exit_code_for(ErrorKind::internal) == kExitInternal);
    CHECK(exit_code_for(ErrorKind::domain) == kExitDomain);
    CHECK(exit_code_for(ErrorKind::size) == kExitSize);
    CHECK(exit_code_for(ErrorKind::coverage) == kExitCoverage);
    CHECK(exit_code_for(ErrorKind::verification) == kExitVerification);
    CHECK(exit_code_for(ErrorKind::io) == kExitIo);
    CHECK(exit_code_for(ErrorKind::parse) == kExitParse);

    CHECK(kind_of([] { run_command(base_config("frobnicate", {})); }) == ErrorKind::domain);
    CHECK(kind_of([] { run_command(base_config("derive", {})); }) == ErrorKind::domain);
    CHECK(kind_of([] {
              run_command(base_config("derive", {"/nonexistent/net.json"}));
          }) == ErrorKind::io);

    const auto broken = fixture("broken.json", "{not json");
    CHECK(kind_of([&] { run_command(base_config("derive", {broken})); }) == ErrorKind::parse);

    // A 13-observer component exceeds the simulator cap only when optimizing.
    std::vector<std::vector<int>> chain_edges;
    for (int i = 0; i + 1 < 13; ++i) chain_edges.push_back({i, i + 1});
    const auto chain_path = network_fixture("chain13.json", Hypergraph(13, chain_edges));
    const RunResult derived = run_command(base_config("derive", {chain_path}));
    CHECK(derived.code == kExitOk);
    const auto rel_path = fixture("chain13_rel.json", derived.machine);
    CHECK(kind_of([&] { run_command(base_config("optimize", {rel_path})); }) == ErrorKind::size);
}
