#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "levydim/config.hpp"
#include "levydim/csv.hpp"
#include "levydim/dataset.hpp"
#include "levydim/experiments.hpp"
#include "levydim/objective.hpp"
#include "levydim/process.hpp"
#include "levydim/risk.hpp"
#include "levydim/rng.hpp"

using namespace levydim;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "levydim_test_experiments" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

// Small synth-gap document; repetitions are pinned to 20 by the config layer.
json reduced_synth_doc() {
    return json{{"kind", "synth-gap"},
                {"seed", 42},
                {"params",
                 {{"dim", 4},
                  {"population", 200},
                  {"subsets", 2},
                  {"ns", {20, 200}},
                  {"alphas", {1.5}},
                  {"step", 0.01}}}};
}

} // namespace

TEST_CASE("spearman matches hand-computed values") {
    const std::vector<double> x = {1.0, 2.0, 3.0, 4.0, 5.0};
    const std::vector<double> up = {2.0, 4.0, 6.0, 8.0, 10.0};
    const std::vector<double> down = {5.0, 4.0, 3.0, 2.0, 1.0};
    CHECK(spearman(x, up) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(spearman(x, down) == doctest::Approx(-1.0).epsilon(1e-12));
    // non-monotone: ranks x = (1,2,3), y = (2,1,3) -> rho = 1/2
    const std::vector<double> a = {1.0, 2.0, 3.0};
    const std::vector<double> b = {0.5, 0.1, 0.9};
    CHECK(spearman(a, b) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("spearman averages ranks on ties") {
    // ranks x = (1, 2.5, 2.5, 4), y = (1, 2, 3, 4) -> rho = 4.5 / sqrt(4.5 * 5)
    const std::vector<double> x = {1.0, 2.0, 2.0, 4.0};
    const std::vector<double> y = {10.0, 20.0, 30.0, 40.0};
    CHECK(spearman(x, y) == doctest::Approx(0.9486832980505138).epsilon(1e-12));
}

TEST_CASE("spearman degenerate inputs give zero, mismatched lengths throw") {
    const std::vector<double> one = {1.0};
    CHECK(spearman(one, one) == 0.0);
    const std::vector<double> flat = {3.0, 3.0, 3.0};
    const std::vector<double> vary = {1.0, 2.0, 3.0};
    CHECK(spearman(flat, vary) == 0.0);
    const std::vector<double> empty;
    CHECK(spearman(empty, empty) == 0.0);
    const std::vector<double> two = {1.0, 2.0};
    CHECK_THROWS_AS(spearman(two, vary), std::invalid_argument);
}

TEST_CASE("synth-gap hot path agrees bitwise with generalization_gap") {
    const ExperimentConfig config = parse_experiment_config(reduced_synth_doc());
    REQUIRE(config.repetitions == 20);
    REQUIRE(config.params["loss_clip"] == 1.0);
    const SynthGapResult res = run_synth_gap(config);
    REQUIRE(res.cells.size() == 2);
    CHECK_FALSE(res.partial);
    for (const auto& cell : res.cells) CHECK(cell.draws == 40);

    // reconstruct the (rep 0, n = 20, subset 0) draw through the public API
    const RngStream master(config.seed);
    RngStream pop_rng = master.child("synth/rep0/population");
    const Dataset pop = gen_mixture_dataset(4, 200, pop_rng);
    RngStream sub_rng = master.child("synth/rep0/n20/subset0");
    const std::vector<std::size_t> idx = sample_indices(200, 20, sub_rng);
    Dataset sub;
    sub.dim = pop.dim;
    for (const std::size_t i : idx) {
        const auto row = pop.row(i);
        sub.features.insert(sub.features.end(), row.begin(), row.end());
        sub.labels.push_back(pop.labels[i]);
    }
    RngStream traj_rng = master.child("synth/rep0/alpha1.5/trajectory");
    const Trajectory traj =
        simulate_levy(MultivariateStableSpec::elliptic(4, 1.5), 1.0, 0.01, traj_rng);
    const CappedObjective loss(LogisticObjective{}, 1.0);
    const RiskReport ref = generalization_gap(loss, traj, sub, pop);

    bool found = false;
    for (const auto& row : res.draw_table.rows) {
        // header: alpha, n, rep, subset, gap, argmax_index, config_hash
        if (row[0] == "1.5" && row[1] == "20" && row[2] == "0" && row[3] == "0") {
            CHECK(row[4] == format_double(ref.gap));
            CHECK(row[5] == format_u64(ref.argmax_time));
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("synth-gap with the full population as subset gives a vanishing gap") {
    const ExperimentConfig config = parse_experiment_config(reduced_synth_doc());
    const SynthGapResult res = run_synth_gap(config);
    for (const auto& cell : res.cells) {
        if (cell.n == 200) {
            // same points in a different summation order: only rounding survives
            CHECK(cell.mean_gap < 1e-12);
        } else {
            CHECK(cell.mean_gap > 1e-4);
        }
    }
}

TEST_CASE("run_experiment output is byte-identical across runs and thread counts") {
    const fs::path a = fresh_dir("det_a");
    const fs::path b = fresh_dir("det_b");
    const fs::path c = fresh_dir("det_c");
    json doc = reduced_synth_doc();
    doc["out"] = a.string();
    CHECK(run_experiment(parse_experiment_config(doc)) == 0);
    doc["out"] = b.string();
    CHECK(run_experiment(parse_experiment_config(doc)) == 0);
    doc["out"] = c.string();
    doc["threads"] = 3;
    CHECK(run_experiment(parse_experiment_config(doc)) == 0);

    const std::string cells_a = read_file(a / "synth_gap.csv");
    CHECK(cells_a == read_file(b / "synth_gap.csv"));
    CHECK(cells_a == read_file(c / "synth_gap.csv"));
    const std::string draws_a = read_file(a / "synth_gap_draws.csv");
    CHECK(draws_a == read_file(b / "synth_gap_draws.csv"));
    CHECK(draws_a == read_file(c / "synth_gap_draws.csv"));

    // out dir and threads are cosmetic: the stamped hash does not move
    const json side_a = json::parse(read_file(a / "synth_gap_config.json"));
    const json side_c = json::parse(read_file(c / "synth_gap_config.json"));
    CHECK(side_a["config_hash"] == side_c["config_hash"]);
    CHECK(side_a["partial"] == false);
}

TEST_CASE("result rows sort numerically, not lexicographically") {
    const fs::path dir = fresh_dir("rowsort");
    const json doc = {{"kind", "bound"},
                      {"out", dir.string()},
                      {"params", {{"sweep", {{"param", "n"}, {"values", {10, 9}}}}}}};
    CHECK(run_experiment(parse_experiment_config(doc)) == 0);
    std::ifstream in(dir / "bound.csv");
    std::string header, row1, row2;
    REQUIRE(std::getline(in, header));
    REQUIRE(std::getline(in, row1));
    REQUIRE(std::getline(in, row2));
    CHECK(row1.substr(0, 4) == "n,9,");
    CHECK(row2.substr(0, 5) == "n,10,");
}

TEST_CASE("json output format parses and keeps numbers numeric") {
    const fs::path dir = fresh_dir("jsonfmt");
    const json doc = {{"kind", "bound"},
                      {"out", dir.string()},
                      {"format", "json"},
                      {"params", {{"sweep", {{"param", "n"}, {"values", {100, 1000}}}}}}};
    CHECK(run_experiment(parse_experiment_config(doc)) == 0);
    const json rows = json::parse(read_file(dir / "bound.json"));
    REQUIRE(rows.is_array());
    REQUIRE(rows.size() == 2);
    CHECK(rows[0]["value"] == 100);
    CHECK(rows[0]["theorem1"].is_number());
    CHECK(rows[0]["theorem2"].is_number());
    CHECK(rows[1]["value"] == 1000);
    CHECK(rows[0]["theorem1"].get<double>() > rows[1]["theorem1"].get<double>());
}

TEST_CASE("a tiny wall-clock cap flags the run as partial") {
    const fs::path dir = fresh_dir("partial");
    json doc = reduced_synth_doc();
    doc["out"] = dir.string();
    doc["params"]["max_seconds"] = 1e-9;
    CHECK(run_experiment(parse_experiment_config(doc)) == 3);
    const json side = json::parse(read_file(dir / "synth_gap_config.json"));
    CHECK(side["partial"] == true);
}

TEST_CASE("reduced mlp-gap run emits a table and a spearman summary") {
    const fs::path dir = fresh_dir("mlp");
    const json doc = {{"kind", "mlp-gap"},
                      {"out", dir.string()},
                      {"params",
                       {{"dim", 4},
                        {"n_train", 100},
                        {"n_test", 100},
                        {"depths", {1}},
                        {"hidden_width", 4},
                        {"etas", {0.02}},
                        {"batches", {25}},
                        {"epochs", 2}}}};
    CHECK(run_experiment(parse_experiment_config(doc)) == 0);
    std::ifstream in(dir / "mlp_gap.csv");
    std::string header, row, extra;
    REQUIRE(std::getline(in, header));
    REQUIRE(std::getline(in, row));
    CHECK_FALSE(std::getline(in, extra)); // one grid cell, one repetition
    CHECK(header.substr(0, 19) == "depth,eta,batch,rep");
    const json side = json::parse(read_file(dir / "mlp_gap_config.json"));
    CHECK(side.contains("spearman_beta_gap"));
    CHECK(side["spearman_beta_gap"] == 0.0); // a single pair has no rank variance
}
