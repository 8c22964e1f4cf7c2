#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gate/cli.hpp"
#include "gate/gate.hpp"
#include "gate/io.hpp"
#include "helpers.hpp"

#ifndef GATE_SOURCE_DIR
#define GATE_SOURCE_DIR "."
#endif

using namespace gate;
using Catch::Matchers::WithinAbs;

namespace {

std::string scratch_dir() {
    static const std::string dir = [] {
        auto tmpl = (std::filesystem::temp_directory_path() / "gate_tests_XXXXXX").string();
        std::vector<char> buf(tmpl.begin(), tmpl.end());
        buf.push_back('\0');
        if (!mkdtemp(buf.data())) throw std::runtime_error("cannot create scratch directory");
        return std::string(buf.data());
    }();
    return dir;
}

std::string scratch(const std::string& name) { return scratch_dir() + "/" + name; }

std::string message_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("mixture presets", "[bench]") {
    auto [w1, m1] = bench::mixture_preset(1);
    REQUIRE(w1 == std::vector<double>{1.0});
    REQUIRE(m1 == std::vector<double>{2.0});
    auto [w2, m2] = bench::mixture_preset(2);
    REQUIRE(w2 == std::vector<double>{0.4, 0.6});
    REQUIRE(m2 == std::vector<double>{-2.0, 2.5});
    auto [w3, m3] = bench::mixture_preset(3);
    REQUIRE(w3 == std::vector<double>{0.4, 0.4, 0.2});
    REQUIRE(m3 == std::vector<double>{-2.0, 2.0, 3.5});
    REQUIRE_THROWS_AS(bench::mixture_preset(0), std::invalid_argument);
    REQUIRE_THROWS_AS(bench::mixture_preset(4), std::invalid_argument);
}

TEST_CASE("equispaced grids", "[bench]") {
    const auto g = bench::equispaced(0.05, 0.95, 10);
    REQUIRE(g.size() == 10);
    REQUIRE_THAT(g.front(), WithinAbs(0.05, 1e-15));
    REQUIRE_THAT(g.back(), WithinAbs(0.95, 1e-15));
    for (std::size_t i = 1; i < g.size(); ++i)
        REQUIRE_THAT(g[i] - g[i - 1], WithinAbs(0.1, 1e-12));
    REQUIRE(bench::equispaced(0.3, 0.9, 1) == std::vector<double>{0.3});
    REQUIRE_THROWS_AS(bench::equispaced(0.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("signal-ratio grid matches the pointwise map", "[bench]") {
    const auto lg = bench::lambda_grid({0.5, 0.756}, 0.3, 10);
    REQUIRE_THAT(lg[0], WithinAbs(0.0290686420912827, 1e-13));
    REQUIRE_THAT(lg[1], WithinAbs(0.0900651369713513, 1e-13));
    const auto grid = bench::equispaced(0.05, 0.95, 10);
    const auto lam = bench::lambda_grid(grid, 0.3, 10);
    for (std::size_t i = 1; i < lam.size(); ++i) REQUIRE(lam[i] > lam[i - 1]);
}

TEST_CASE("benchmark metrics are complete and reproducible", "[bench]") {
    bench::SimulationConfig cfg;
    cfg.m = 25;
    cfg.n = 4;
    cfg.pi1_grid = {0.3, 0.7};
    cfg.replications = 8;
    cfg.methods = {fit::Method::gate1, fit::Method::naive, fit::Method::gate2};
    cfg.seed = 5;

    const auto report = bench::run_benchmark(cfg);
    REQUIRE(report.cells.size() == 6);  // 2 grid points x 3 methods
    const std::vector<std::string> order{"gate1", "naive", "gate2",
                                         "gate1", "naive", "gate2"};
    for (std::size_t c = 0; c < report.cells.size(); ++c) {
        const auto& cell = report.cells[c];
        REQUIRE(cell.method == order[c]);
        REQUIRE(cell.pi1 == cfg.pi1_grid[c / 3]);
        REQUIRE_THAT(cell.lambda,
                     WithinAbs(model::lambda_group(cell.pi1, cfg.pi2, cfg.n), 1e-15));
        REQUIRE(cell.replications == 8);
        REQUIRE(cell.bayes_fdr >= 0.0);
        REQUIRE(cell.bayes_fdr <= 1.0);
        REQUIRE(cell.freq_fdr >= 0.0);
        REQUIRE(cell.freq_fdr <= 1.0);
        REQUIRE(cell.mean_true_rejections <= cell.mean_rejections + 1e-12);
        REQUIRE(cell.mcse_bayes_fdr >= 0.0);
        REQUIRE(cell.mcse_rejections >= 0.0);
    }

    const std::string csv = io::metrics_csv_string(report);

    SECTION("identical configuration reproduces every byte") {
        REQUIRE(io::metrics_csv_string(bench::run_benchmark(cfg)) == csv);
    }
    SECTION("the seed actually feeds the replications") {
        bench::SimulationConfig other = cfg;
        other.seed = 6;
        REQUIRE(io::metrics_csv_string(bench::run_benchmark(other)) != csv);
    }
    SECTION("worker count does not leak into results") {
        setenv("GATE_THREADS", "1", 1);
        const std::string serial = io::metrics_csv_string(bench::run_benchmark(cfg));
        setenv("GATE_THREADS", "3", 1);
        const std::string pooled = io::metrics_csv_string(bench::run_benchmark(cfg));
        unsetenv("GATE_THREADS");
        REQUIRE(serial == csv);
        REQUIRE(pooled == csv);
    }
    SECTION("wall clock never reaches the serialized outputs") {
        REQUIRE(report.wall_clock_seconds >= 0.0);
        REQUIRE(csv.find("wall") == std::string::npos);
        REQUIRE(io::dump_json17(io::metrics_to_json(report)).find("wall") == std::string::npos);
    }
}

TEST_CASE("grouped csv round trip", "[io]") {
    model::GroupedObservations data;
    data.groups.push_back({"plain", {"a", "b"}, {1.25, -0.5}});
    data.groups.push_back({"has,comma", {"u,1"}, {3.0}});
    data.groups.push_back({"has\"quote", {}, {0.001953125, 2.0}});
    data.validate();

    const std::string s1 = io::grouped_csv_string(data);
    const auto back = io::parse_grouped_csv(s1, "mem");
    REQUIRE(io::grouped_csv_string(back) == s1);

    REQUIRE(back.m() == 3);
    REQUIRE(back.groups[1].id == "has,comma");
    REQUIRE(back.groups[1].units[0] == "u,1");
    REQUIRE(back.groups[2].id == "has\"quote");
    REQUIRE(back.groups[2].units == std::vector<std::string>{"u1", "u2"});
    REQUIRE(back.groups[0].z == std::vector<double>{1.25, -0.5});
    REQUIRE(back.groups[2].z == std::vector<double>{0.001953125, 2.0});
}

TEST_CASE("grouped csv accepts crlf, blanks and split groups", "[io]") {
    const std::string text =
        "group_id,unit_id,z\r\n"
        "g1,u1,1.5\r\n"
        "\n"
        "g2,u1,-0.25\n"
        "g1,u2,0.75\n";
    const auto data = io::parse_grouped_csv(text, "mem");
    REQUIRE(data.m() == 2);
    REQUIRE(data.groups[0].id == "g1");
    REQUIRE(data.groups[0].z == std::vector<double>{1.5, 0.75});
    REQUIRE(data.groups[1].z == std::vector<double>{-0.25});
}

TEST_CASE("grouped csv failures carry the location", "[io]") {
    const auto parse = [](const std::string& text) {
        return [text] { io::parse_grouped_csv(text, "in.csv"); };
    };
    REQUIRE(message_of(parse("x,y,z\ng,u,1\n")).find("header") != std::string::npos);
    REQUIRE(message_of(parse("group_id,unit_id,z\ng,u\n")).find("in.csv:2") !=
            std::string::npos);
    REQUIRE(message_of(parse("group_id,unit_id,z\ng,u,abc\n")).find("invalid number") !=
            std::string::npos);
    REQUIRE(message_of(parse("group_id,unit_id,z\ng,u,1\ng2,u,\n")).find("in.csv:3") !=
            std::string::npos);
    REQUIRE_THROWS_AS(io::parse_grouped_csv("", "in.csv"), io::ParseError);
    REQUIRE_THROWS_AS(io::parse_grouped_csv("group_id,unit_id,z\n", "in.csv"), io::ParseError);
    REQUIRE_THROWS_AS(io::parse_grouped_csv("group_id,unit_id,z\n,u,1\n", "in.csv"),
                      io::ParseError);
    REQUIRE_THROWS_AS(io::parse_grouped_csv("group_id,unit_id,z\ng\"x,u,1\n", "in.csv"),
                      io::ParseError);
    REQUIRE_THROWS_AS(io::parse_grouped_csv("group_id,unit_id,z\n\"gx,u,1\n", "in.csv"),
                      io::ParseError);
}

TEST_CASE("parameter documents round trip", "[io]") {
    model::GammParams p;
    p.pi1 = 0.4;
    p.pi2 = {0.25};
    p.densities.alt_weights = {0.4, 0.6};
    p.densities.alt_means = {-1.5, 2.0};
    p.densities.alt_sd = 1.25;

    const auto back = io::params_from_json(io::params_to_json(p));
    REQUIRE(back.pi1 == p.pi1);
    REQUIRE(back.pi2 == p.pi2);
    REQUIRE(back.densities.alt_weights == p.densities.alt_weights);
    REQUIRE(back.densities.alt_means == p.densities.alt_means);
    REQUIRE(back.densities.alt_sd == p.densities.alt_sd);

    SECTION("per-group signal rates serialize as an array") {
        p.pi2 = {0.2, 0.3, 0.4};
        const auto j = io::params_to_json(p);
        REQUIRE(j["pi2"].is_array());
        REQUIRE(io::params_from_json(j).pi2 == p.pi2);
    }
    SECTION("invalid documents are rejected") {
        const auto base = io::params_to_json(p);
        auto bad = base;
        bad["pi1"] = 1.5;
        REQUIRE_THROWS_AS(io::params_from_json(bad), io::ParseError);
        bad = base;
        bad["weights"] = {0.4, 0.5};
        REQUIRE_THROWS_AS(io::params_from_json(bad), io::ParseError);
        bad = base;
        bad.erase("sigma");
        REQUIRE_THROWS_AS(io::params_from_json(bad), io::ParseError);
        bad = base;
        bad["means"] = {1.0};
        REQUIRE_THROWS_AS(io::params_from_json(bad), io::ParseError);
        REQUIRE_THROWS_AS(io::params_from_json(io::json::array()), io::ParseError);
    }
}

TEST_CASE("json emission keeps every bit of a double", "[io]") {
    const std::vector<double> values{0.1,     1.0 / 3.0,      1e-300,      6.02214076e23,
                                     12345.6789, 4.9406564584124654e-324, 0.3 - 0.1};
    for (double v : values) {
        io::json j;
        j["x"] = v;
        const auto parsed = io::json::parse(io::dump_json17(j));
        REQUIRE(parsed["x"].get<double>() == v);
    }
}

TEST_CASE("json emission format is frozen", "[io]") {
    io::json j;
    j["b"] = io::json::array({1, 2});
    j["a"] = 0.5;
    REQUIRE(io::dump_json17(j) ==
            "{\n  \"b\": [\n    1,\n    2\n  ],\n  \"a\": 0.5\n}\n");

    io::json leaf;
    leaf["n"] = 42;
    leaf["s"] = "text";
    leaf["t"] = true;
    leaf["z"] = nullptr;
    leaf["e"] = io::json::array();
    leaf["o"] = io::json::object();
    REQUIRE(io::dump_json17(leaf) ==
            "{\n  \"n\": 42,\n  \"s\": \"text\",\n  \"t\": true,\n  \"z\": null,\n"
            "  \"e\": [],\n  \"o\": {}\n}\n");

    io::json bad;
    bad["x"] = std::numeric_limits<double>::quiet_NaN();
    REQUIRE_THROWS_AS(io::dump_json17(bad), NumericError);
    bad["x"] = std::numeric_limits<double>::infinity();
    REQUIRE_THROWS_AS(io::dump_json17(bad), NumericError);
}

TEST_CASE("sampler config documents", "[io]") {
    SECTION("empty object keeps defaults") {
        const auto cfg = io::gibbs_config_from_json(io::json::object());
        REQUIRE(cfg.K == 1);
        REQUIRE(cfg.iters == 20000);
        REQUIRE(cfg.burn_in == 10000);
        REQUIRE(cfg.thin == 20);
        REQUIRE(cfg.chains == 3);
    }
    SECTION("fields override and validate") {
        io::json j;
        j["K"] = 2;
        j["iters"] = 500;
        j["burn_in"] = 100;
        j["thin"] = 2;
        j["chains"] = 1;
        j["dirichlet"] = {2.0, 2.0};
        const auto cfg = io::gibbs_config_from_json(j);
        REQUIRE(cfg.K == 2);
        REQUIRE(cfg.iters == 500);
        REQUIRE(cfg.dirichlet == std::vector<double>{2.0, 2.0});

        j["burn_in"] = 500;
        REQUIRE_THROWS_AS(io::gibbs_config_from_json(j), io::ParseError);
        j["burn_in"] = 100;
        j["dirichlet"] = {1.0};
        REQUIRE_THROWS_AS(io::gibbs_config_from_json(j), io::ParseError);
    }
    SECTION("seeds above the double mantissa survive") {
        const auto j = io::json::parse("{\"seed\": 18446744073709551615}");
        REQUIRE(io::gibbs_config_from_json(j).seed == 18446744073709551615ULL);
    }
}

TEST_CASE("benchmark config documents", "[io]") {
    io::json j;
    j["m"] = 30;
    j["pi1_grid"] = {0.2, 0.4};
    j["methods"] = {"gate2", "bb"};
    j["data_driven"] = true;
    io::json g;
    g["iters"] = 300;
    g["burn_in"] = 100;
    j["gibbs"] = g;
    const auto cfg = io::sim_config_from_json(j);
    REQUIRE(cfg.m == 30);
    REQUIRE(cfg.n == 10);
    REQUIRE(cfg.pi1_grid == std::vector<double>{0.2, 0.4});
    REQUIRE(cfg.methods ==
            std::vector<fit::Method>{fit::Method::gate2, fit::Method::bb});
    REQUIRE(cfg.data_driven);
    REQUIRE(cfg.gibbs.iters == 300);
    REQUIRE(cfg.gibbs.thin == 5);  // benchmark default, not the standalone-fit default

    SECTION("round trip through the writer") {
        const auto again = io::sim_config_from_json(io::sim_config_to_json(cfg));
        REQUIRE(again.m == cfg.m);
        REQUIRE(again.pi1_grid == cfg.pi1_grid);
        REQUIRE(again.methods == cfg.methods);
        REQUIRE(again.seed == cfg.seed);
        REQUIRE(again.data_driven == cfg.data_driven);
    }
    SECTION("bad fields are rejected") {
        auto bad = j;
        bad["methods"] = {"gate1", "bogus"};
        REQUIRE_THROWS_AS(io::sim_config_from_json(bad), io::ParseError);
        bad = j;
        bad["pi1_grid"] = {0.2, 1.4};
        REQUIRE_THROWS_AS(io::sim_config_from_json(bad), io::ParseError);
        bad = j;
        bad["data_driven"] = "yes";
        REQUIRE_THROWS_AS(io::sim_config_from_json(bad), io::ParseError);
        REQUIRE_THROWS_AS(io::sim_config_from_json(io::json(3)), io::ParseError);
    }
}

TEST_CASE("trace csv layout", "[io]") {
    fit::GibbsConfig cfg;
    cfg.K = 2;
    cfg.iters = 200;
    cfg.burn_in = 100;
    cfg.thin = 10;
    cfg.chains = 1;

    const std::vector<std::vector<fit::ParamDraw>> chains{{
        {0.5, 0.25, {0.25, 0.75}, {-1.0, 2.0}},
        {0.625, 0.3, {0.3, 0.7}, {-1.5, 2.5}},
    }};
    REQUIRE(io::trace_csv_string(chains, cfg) ==
            "iteration,chain,pi1,pi2,eta_1,eta_2,mu_1,mu_2\n"
            "110,1,0.5,0.25,0.25,0.75,-1,2\n"
            "120,1,0.625,0.3,0.3,0.7,-1.5,2.5\n");
    REQUIRE(io::trace_csv_string({}, cfg) ==
            "iteration,chain,pi1,pi2,eta_1,eta_2,mu_1,mu_2\n");
}

TEST_CASE("metrics csv layout", "[io]") {
    bench::MetricsReport report;
    bench::MetricsCell cell;
    cell.method = "gate1";
    cell.pi1 = 0.5;
    cell.lambda = 0.25;
    cell.bayes_fdr = 0.05;
    cell.freq_fdr = 0.04;
    cell.mean_rejections = 12.5;
    cell.mean_true_rejections = 12.0;
    cell.mcse_bayes_fdr = 0.001;
    cell.mcse_freq_fdr = 0.002;
    cell.mcse_rejections = 0.25;
    cell.mcse_true_rejections = 0.2;
    cell.pfdr_between_mean = 0.01;
    cell.replications = 16;
    report.cells.push_back(cell);

    const std::string csv = io::metrics_csv_string(report);
    const std::string header = csv.substr(0, csv.find('\n'));
    std::size_t cols = 1;
    for (char c : header) cols += c == ',' ? 1 : 0;
    REQUIRE(cols == 13);
    REQUIRE(csv ==
            "method,pi1,lambda,bayes_fdr,freq_fdr,mean_rejections,mean_true_rejections,"
            "mcse_bayes_fdr,mcse_freq_fdr,mcse_rejections,mcse_true_rejections,"
            "pfdr_between_mean,replications\n"
            "gate1,0.5,0.25,0.05,0.04,12.5,12,0.001,0.002,0.25,0.2,0.01,16\n");
}

TEST_CASE("reports satisfy their schema", "[io]") {
    const auto schema = io::load_json(std::string(GATE_SOURCE_DIR) + "/schemas/report.schema.json");
    Rng rng(808);
    auto inst = testutil::random_instance(rng, 8, 2, 5);

    const auto report1 = io::test_report(inst.data, inst.table,
                                         procedures::gate1(inst.table, 0.05), inst.params,
                                         fit::Method::gate1, 0.05, 0.025, false);
    REQUIRE(io::schema_errors(report1, schema).empty());

    const auto report2 = io::test_report(inst.data, inst.table,
                                         procedures::gate2(inst.table, 0.3, 0.15), inst.params,
                                         fit::Method::gate2, 0.3, 0.15, true);
    REQUIRE(io::schema_errors(report2, schema).empty());

    SECTION("violations are reported with a path") {
        auto doc = report1;
        doc.erase("alpha");
        auto errs = io::schema_errors(doc, schema);
        REQUIRE(errs.size() == 1);
        REQUIRE(errs[0].find("alpha") != std::string::npos);

        doc = report1;
        doc["surprise"] = 1;
        errs = io::schema_errors(doc, schema);
        REQUIRE(errs.size() == 1);
        REQUIRE(errs[0].find("unexpected field") != std::string::npos);

        doc = report1;
        doc["method"] = "bogus";
        errs = io::schema_errors(doc, schema);
        REQUIRE(errs.size() == 1);
        REQUIRE(errs[0].find("enum") != std::string::npos);

        doc = report1;
        doc["groups"][0]["units"][0]["z"] = "high";
        errs = io::schema_errors(doc, schema);
        REQUIRE(errs.size() == 1);
        REQUIRE(errs[0].find("$.groups[0].units[0].z") != std::string::npos);
    }
}

TEST_CASE("command line end to end", "[cli]") {
    model::GammParams params;
    params.pi1 = 0.6;
    params.pi2 = {0.5};
    params.densities.alt_weights = {1.0};
    params.densities.alt_means = {2.5};
    Rng gen(7001);
    auto [data, truth] = model::generate_dataset(12, std::vector<std::size_t>{3}, params, gen);
    (void)truth;

    const std::string data_path = scratch("data.csv");
    const std::string params_path = scratch("params.json");
    io::write_text_file(data_path, io::grouped_csv_string(data));
    io::write_text_file(params_path, io::dump_json17(io::params_to_json(params)));

    SECTION("test with known parameters") {
        const std::string out = scratch("report.json");
        REQUIRE(cli::cli_main({"--quiet", "test", data_path, "--params", params_path, "-o",
                               out}) == 0);
        const auto report = io::load_json(out);
        const auto schema =
            io::load_json(std::string(GATE_SOURCE_DIR) + "/schemas/report.schema.json");
        REQUIRE(io::schema_errors(report, schema).empty());
        REQUIRE(report["fitted"] == false);
        REQUIRE(report["method"] == "gate1");
        std::size_t by_groups = 0, by_units = 0;
        for (const auto& g : report["groups"]) {
            by_groups += g["rejections"].get<std::size_t>();
            for (const auto& u : g["units"]) by_units += u["rejected"].get<bool>() ? 1 : 0;
        }
        REQUIRE(report["rejections_total"].get<std::size_t>() == by_groups);
        REQUIRE(by_groups == by_units);
    }
    SECTION("test fits the model when no parameters are given") {
        const std::string out = scratch("report_fitted.json");
        REQUIRE(cli::cli_main({"--quiet", "test", data_path, "--method", "gate2", "--iters",
                               "60", "--burn-in", "30", "--thin", "3", "--chains", "1", "-o",
                               out}) == 0);
        const auto report = io::load_json(out);
        REQUIRE(report["fitted"] == true);
        REQUIRE(report.contains("selection"));
    }
    SECTION("fit echoes supplied parameters without sampling") {
        const std::string out = scratch("summary_echo.json");
        const std::string trace = scratch("trace_echo.csv");
        REQUIRE(cli::cli_main({"--quiet", "fit", data_path, "--use-true-params", params_path,
                               "-o", out, "--trace", trace}) == 0);
        const auto echo = io::load_json(out);
        REQUIRE(echo["retained"] == 0);
        REQUIRE(echo["pi1"].get<double>() == params.pi1);
        REQUIRE(io::read_text_file(trace) == "iteration,chain,pi1,pi2,eta_1,mu_1\n");
    }
    SECTION("fit summary feeds back as a parameters file") {
        const std::string out = scratch("summary.json");
        const std::string trace = scratch("trace.csv");
        REQUIRE(cli::cli_main({"--quiet", "fit", data_path, "--iters", "80", "--burn-in", "40",
                               "--thin", "4", "--chains", "2", "--seed", "9", "-o", out,
                               "--trace", trace}) == 0);
        const auto summary = io::load_json(out);
        REQUIRE(summary["retained"] == 20);  // 2 chains x (80-40)/4
        const std::string trace_text = io::read_text_file(trace);
        std::size_t lines = 0;
        for (char c : trace_text) lines += c == '\n' ? 1 : 0;
        REQUIRE(lines == 21);  // header + one row per retained draw

        const std::string report_out = scratch("report_feedback.json");
        REQUIRE(cli::cli_main({"--quiet", "test", data_path, "--params", out, "-o",
                               report_out}) == 0);
        REQUIRE(io::load_json(report_out)["fitted"] == false);
    }
    SECTION("simulate writes byte-identical outputs on reruns") {
        const std::string base1 = scratch("metrics1");
        const std::string base2 = scratch("metrics2");
        const std::vector<std::string> common{
            "--m", "15", "--n", "3", "--replications", "4",
            "--methods", "gate1,naive", "--seed", "11"};
        auto args1 = common;
        args1.insert(args1.begin(), {"--quiet", "simulate"});
        args1.insert(args1.end(), {"-o", base1});
        auto args2 = common;
        args2.insert(args2.begin(), {"--quiet", "simulate"});
        args2.insert(args2.end(), {"-o", base2});
        REQUIRE(cli::cli_main(args1) == 0);
        REQUIRE(cli::cli_main(args2) == 0);
        REQUIRE(io::read_text_file(base1 + ".csv") == io::read_text_file(base2 + ".csv"));
        REQUIRE(io::read_text_file(base1 + ".json") == io::read_text_file(base2 + ".json"));
        REQUIRE(io::read_text_file(base1 + ".csv").find("gate1") != std::string::npos);
    }
    SECTION("usage errors exit with 2") {
        REQUIRE(cli::cli_main({"--quiet", "test", scratch("missing.csv")}) == 2);
        REQUIRE(cli::cli_main({"--quiet", "test", data_path, "--method", "bogus"}) == 2);
        REQUIRE(cli::cli_main({"--quiet", "test", data_path, "--params", params_path,
                               "--method", "gate2", "--eta", "0.06"}) == 2);
        REQUIRE(cli::cli_main({"--quiet"}) == 2);
    }
    SECTION("unreadable inputs exit with 3") {
        const std::string bad_csv = scratch("bad.csv");
        io::write_text_file(bad_csv, "wrong,header,names\n1,2,3\n");
        REQUIRE(cli::cli_main({"--quiet", "test", bad_csv}) == 3);

        const std::string bad_params = scratch("bad_params.json");
        io::write_text_file(bad_params,
                            "{\"pi1\": 1.5, \"pi2\": 0.3, \"weights\": [1.0], "
                            "\"means\": [2.0], \"sigma\": 1.0}\n");
        REQUIRE(cli::cli_main({"--quiet", "test", data_path, "--params", bad_params}) == 3);
    }
}
