#include "qbethe/config.hpp"

#include <cstdio>
#include <fstream>

#include "doctest.h"

using namespace qbethe;
using cli::RunConfig;

TEST_CASE("defaults validate") {
    RunConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.n == 2);
    CHECK(cfg.m == 2);
    CHECK(cfg.tolerances.newton == 1e-10);
    CHECK(cfg.tolerances.eigen == 1e-8);
    CHECK(cfg.tolerances.relation == 1e-12);
    CHECK(cfg.format == "json");
}

TEST_CASE("json merge with snake_case keys") {
    RunConfig cfg;
    nlohmann::json j = nlohmann::json::parse(R"({
        "n": 3, "m": 4,
        "params": {"q": 0.25, "a_minus": 0.1, "a_hat_minus": -0.2,
                   "a_plus": 0.3, "a_hat_plus": -0.4},
        "tolerances": {"newton": 1e-11},
        "suites": ["fock", "poincare"],
        "seed": 42,
        "output": {"path": "out.json", "format": "csv"}
    })");
    cli::merge_json(cfg, j);
    CHECK(cfg.n == 3);
    CHECK(cfg.m == 4);
    CHECK(cfg.params.q == 0.25);
    CHECK(cfg.params.a_hat_plus == -0.4);
    CHECK(cfg.tolerances.newton == 1e-11);
    CHECK(cfg.tolerances.eigen == 1e-8);  // untouched default
    CHECK(cfg.suites == std::vector<std::string>{"fock", "poincare"});
    CHECK(cfg.seed == 42);
    CHECK(cfg.out_path == "out.json");
    CHECK(cfg.format == "csv");
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("unknown keys are rejected") {
    RunConfig cfg;
    CHECK_THROWS_AS(cli::merge_json(cfg, nlohmann::json::parse(R"({"bogus": 1})")), UsageError);
    CHECK_THROWS_AS(cli::merge_json(cfg, nlohmann::json::parse(R"({"params": {"qq": 1}})")),
                    UsageError);
}

TEST_CASE("validation failures") {
    RunConfig cfg;
    cfg.m = 0;
    CHECK_THROWS_AS(cfg.validate(), UsageError);
    cfg = RunConfig{};
    cfg.n = -1;
    CHECK_THROWS_AS(cfg.validate(), UsageError);
    cfg = RunConfig{};
    cfg.tolerances.eigen = 0.0;
    CHECK_THROWS_AS(cfg.validate(), UsageError);
    cfg = RunConfig{};
    cfg.format = "yaml";
    CHECK_THROWS_AS(cfg.validate(), UsageError);
    cfg = RunConfig{};
    cfg.params.q = 1.5;
    CHECK_THROWS_AS(cfg.validate(), UsageError);
}

TEST_CASE("config file round trip") {
    const char* path = "test_config_tmp.json";
    {
        std::ofstream out(path);
        out << R"({"n": 1, "m": 3, "params": {"q": -0.5}})";
    }
    RunConfig cfg = cli::load_config(path);
    CHECK(cfg.n == 1);
    CHECK(cfg.m == 3);
    CHECK(cfg.params.q == -0.5);
    std::remove(path);
    CHECK_THROWS_AS(cli::load_config("does_not_exist.json"), UsageError);
}
