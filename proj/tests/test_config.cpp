#include <cctype>
#include <fstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include "levydim/config.hpp"

using namespace levydim;
using nlohmann::json;

TEST_CASE("every kind resolves to a fully populated default config") {
    for (const char* kind : {"simulate", "dimension", "tailindex", "synth-gap",
                             "mlp-gap", "bound"}) {
        const ExperimentConfig c = default_experiment_config(kind);
        CHECK(c.kind == kind);
        CHECK(c.params.is_object());
        CHECK_FALSE(c.params.empty());
        CHECK(c.seed == 1);
        CHECK(c.threads == 1);
        CHECK(c.format == "csv");
    }
    CHECK_THROWS_AS(default_experiment_config("nonsense"), ConfigError);
}

TEST_CASE("simulate defaults pin the canonical trajectory") {
    const ExperimentConfig c = default_experiment_config("simulate");
    CHECK(c.params["process"] == "levy");
    CHECK(c.params["dim"] == 2);
    CHECK(c.params["family"] == "elliptic");
    CHECK(c.params["alpha"] == 1.5);
    CHECK(c.params["horizon"] == 1.0);
    CHECK(c.params["step"] == 1e-3);
    CHECK(c.repetitions == 1);
}

TEST_CASE("synthetic-gap defaults pin the published protocol") {
    const ExperimentConfig c = default_experiment_config("synth-gap");
    CHECK(c.repetitions == 20);
    CHECK(c.params["dim"] == 10);
    CHECK(c.params["population"] == 100000);
    CHECK(c.params["subsets"] == 20);
    CHECK(c.params["ns"] == json({100, 1000, 10000}));
    CHECK(c.params["alphas"] == json({1.0, 1.5, 2.0}));
    CHECK(c.params["step"] == 1e-3);
    CHECK(c.params["loss_clip"] == 1.0);
    CHECK_THROWS_AS(parse_experiment_config(
                        json{{"kind", "synth-gap"}, {"params", {{"loss_clip", -0.5}}}}),
                    ConfigError);
}

TEST_CASE("mlp defaults form a full grid with at least twelve cells") {
    const ExperimentConfig c = default_experiment_config("mlp-gap");
    const std::size_t cells = c.params["depths"].size() * c.params["etas"].size() *
                              c.params["batches"].size();
    CHECK(cells >= 12);
    CHECK(c.params["n_train"] == 1000);
    CHECK(c.params["n_test"] == 10000);
    CHECK(c.params["epochs"].get<int>() >= 1);
}

TEST_CASE("a minimal document fills in all defaults") {
    const ExperimentConfig c = parse_experiment_config(json{{"kind", "bound"}});
    CHECK(c.params["B"] == 1.0);
    CHECK(c.params["n"] == 10000);
    CHECK(c.params["sweep"]["param"] == "n");
    CHECK(c.seed == 1);
}

TEST_CASE("explicit fields override defaults") {
    const json doc = {{"kind", "simulate"},
                      {"seed", 42},
                      {"repetitions", 3},
                      {"threads", 2},
                      {"out", "elsewhere"},
                      {"format", "json"},
                      {"params", {{"alpha", 1.1}, {"dim", 4}}}};
    const ExperimentConfig c = parse_experiment_config(doc);
    CHECK(c.seed == 42);
    CHECK(c.repetitions == 3);
    CHECK(c.threads == 2);
    CHECK(c.out_dir == "elsewhere");
    CHECK(c.format == "json");
    CHECK(c.params["alpha"] == 1.1);
    CHECK(c.params["dim"] == 4);
    CHECK(c.params["step"] == 1e-3); // untouched default survives
}

TEST_CASE("unknown keys are rejected at both levels") {
    CHECK_THROWS_AS(parse_experiment_config(json{{"kind", "bound"}, {"sseed", 1}}),
                    ConfigError);
    CHECK_THROWS_AS(
        parse_experiment_config(json{{"kind", "bound"}, {"params", {{"bogus", 1}}}}),
        ConfigError);
    CHECK_THROWS_AS(
        parse_experiment_config(json{{"kind", "simulate"}, {"params", {{"alhpa", 1.5}}}}),
        ConfigError);
}

TEST_CASE("scalar fields are validated") {
    CHECK_THROWS_AS(parse_experiment_config(json{{"kind", "bound"}, {"seed", -1}}),
                    ConfigError);
    CHECK_THROWS_AS(parse_experiment_config(json{{"kind", "bound"}, {"seed", 1.5}}),
                    ConfigError);
    CHECK_THROWS_AS(parse_experiment_config(json{{"kind", "bound"}, {"repetitions", 0}}),
                    ConfigError);
    CHECK_THROWS_AS(parse_experiment_config(json{{"kind", "bound"}, {"threads", 0}}),
                    ConfigError);
    CHECK_THROWS_AS(parse_experiment_config(json{{"kind", "bound"}, {"threads", 9999}}),
                    ConfigError);
    CHECK_THROWS_AS(parse_experiment_config(json{{"kind", "bound"}, {"format", "yaml"}}),
                    ConfigError);
    CHECK_THROWS_AS(parse_experiment_config(json{{"kind", "bound"}, {"out", ""}}),
                    ConfigError);
    CHECK_THROWS_AS(parse_experiment_config(json{{"missing", "kind"}}), ConfigError);
}

TEST_CASE("stable family parameters are cross-checked") {
    auto cfg = [](json params) {
        return json{{"kind", "simulate"}, {"params", std::move(params)}};
    };
    CHECK_THROWS_AS(parse_experiment_config(cfg({{"alpha", 2.5}})), ConfigError);
    CHECK_THROWS_AS(parse_experiment_config(cfg({{"family", "independent"}, {"alpha", 1.5}})),
                    ConfigError);
    CHECK_THROWS_AS(
        parse_experiment_config(cfg({{"family", "elliptic"}, {"alphas", {1.5, 1.5}}})),
        ConfigError);
    CHECK_THROWS_AS(
        parse_experiment_config(cfg({{"family", "independent"}, {"alphas", {1.5}}})),
        ConfigError); // length != dim (default 2)
    CHECK_THROWS_AS(parse_experiment_config(cfg({{"step", 2.0}})), ConfigError);
    CHECK_THROWS_AS(parse_experiment_config(cfg({{"horizon", -1.0}})), ConfigError);
    CHECK_THROWS_AS(parse_experiment_config(cfg({{"process", "jump"}})), ConfigError);
    CHECK_THROWS_AS(parse_experiment_config(cfg({{"family", "independent"}})),
                    ConfigError); // exponents are mandatory for that family
    const ExperimentConfig ok =
        parse_experiment_config(cfg({{"family", "independent"}, {"alphas", {1.2, 1.8}}}));
    CHECK(ok.params["alphas"] == json({1.2, 1.8}));
    CHECK_FALSE(ok.params.contains("alpha"));
    CHECK(ok.params["step"] == 1e-3); // family-matched defaults still fill in
}

TEST_CASE("sde simulate configs expose the drift knobs") {
    const json doc = {{"kind", "simulate"},
                      {"params", {{"process", "sde"}, {"drift", "quadratic"}}}};
    const ExperimentConfig c = parse_experiment_config(doc);
    CHECK(c.params["drift"] == "quadratic");
    CHECK(c.params["divergence_cap"] == 1e12);
    CHECK_THROWS_AS(
        parse_experiment_config(
            json{{"kind", "simulate"}, {"params", {{"process", "sde"}, {"drift", "uphill"}}}}),
        ConfigError);
    // levy processes reject sde-only keys
    CHECK_THROWS_AS(
        parse_experiment_config(json{{"kind", "simulate"}, {"params", {{"drift", "zero"}}}}),
        ConfigError);
}

TEST_CASE("trajectory consumers demand exactly one source") {
    CHECK_THROWS_AS(
        parse_experiment_config(json{
            {"kind", "dimension"},
            {"params", {{"input", "traj.bin"}, {"simulate", {{"alpha", 1.5}}}}}}),
        ConfigError);
    const ExperimentConfig from_file = parse_experiment_config(
        json{{"kind", "dimension"}, {"params", {{"input", "traj.bin"}}}});
    CHECK_FALSE(from_file.params.contains("simulate"));
    CHECK(from_file.params["input"] == "traj.bin");
    // a file input cannot be repeated: there is only one trajectory
    CHECK_THROWS_AS(parse_experiment_config(json{{"kind", "dimension"},
                                                 {"repetitions", 5},
                                                 {"params", {{"input", "traj.bin"}}}}),
                    ConfigError);
    const ExperimentConfig inline_sim = parse_experiment_config(
        json{{"kind", "dimension"},
             {"repetitions", 5},
             {"params", {{"simulate", {{"alpha", 1.2}, {"dim", 3}}}}}});
    CHECK(inline_sim.params["simulate"]["alpha"] == 1.2);
    CHECK(inline_sim.params["simulate"]["dim"] == 3);
    CHECK(inline_sim.params["simulate"]["step"] == 1e-3); // defaults filled in
}

TEST_CASE("bound sweeps validate the swept parameter") {
    CHECK_THROWS_AS(
        parse_experiment_config(json{
            {"kind", "bound"},
            {"params", {{"sweep", {{"param", "unknown"}, {"values", {1, 2}}}}}}}),
        ConfigError);
    CHECK_THROWS_AS(parse_experiment_config(
                        json{{"kind", "bound"}, {"params", {{"sweep", {{"param", "n"}}}}}}),
                    ConfigError);
    const ExperimentConfig no_sweep = parse_experiment_config(
        json{{"kind", "bound"}, {"params", {{"sweep", nullptr}}}});
    CHECK_FALSE(no_sweep.params.contains("sweep"));
    // invalid base inputs are caught by a dry run at parse time
    CHECK_THROWS_AS(
        parse_experiment_config(json{{"kind", "bound"}, {"params", {{"gamma", 2.0}}}}),
        ConfigError);
}

TEST_CASE("the hash covers results-affecting fields only") {
    const ExperimentConfig base = default_experiment_config("dimension");
    const std::string h = config_hash_hex(base);
    REQUIRE(h.size() == 16);
    for (char ch : h) CHECK(std::isxdigit(static_cast<unsigned char>(ch)));

    ExperimentConfig cosmetic = base;
    cosmetic.threads = 4;
    cosmetic.out_dir = "somewhere/else";
    cosmetic.format = "json";
    CHECK(config_hash_hex(cosmetic) == h);

    ExperimentConfig reseeded = base;
    reseeded.seed = 2;
    CHECK(config_hash_hex(reseeded) != h);

    ExperimentConfig repeated = base;
    repeated.repetitions = 7;
    CHECK(config_hash_hex(repeated) != h);

    ExperimentConfig retuned = base;
    retuned.params["scale_count"] = 30;
    CHECK(config_hash_hex(retuned) != h);

    ExperimentConfig rekinded = base;
    rekinded.kind = "tailindex";
    CHECK(config_hash_hex(rekinded) != h);
}

TEST_CASE("configs round trip through files") {
    const json doc = {{"kind", "tailindex"},
                      {"seed", 7},
                      {"params",
                       {{"groups", {{{"name", "a"}, {"count", 1}}, {{"name", "b"}, {"count", 1}}}},
                        {"k1", 50}}}};
    const std::string path = "/tmp/levydim_test_config.json";
    {
        std::ofstream os(path);
        os << doc.dump(2);
    }
    const ExperimentConfig c = load_experiment_config(path);
    CHECK(c.kind == "tailindex");
    CHECK(c.seed == 7);
    CHECK(c.params["k1"] == 50);
    REQUIRE(c.params["groups"].size() == 2);
    CHECK(c.params["groups"][0]["name"] == "a");
    CHECK_THROWS_AS(load_experiment_config("/tmp/levydim_absent_config.json"), ConfigError);
    std::remove(path.c_str());
}
