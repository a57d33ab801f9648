// End-to-end experiment runners behind ExperimentConfig, emitting
// deterministic CSV/JSON tables with a config sidecar.
#pragma once

#include <span>
#include <string>
#include <vector>

#include "levydim/config.hpp"

namespace levydim {

// Spearman rank correlation with average ranks on ties.  Returns 0 for
// degenerate inputs (fewer than 2 pairs or zero rank variance).
double spearman(std::span<const double> x, std::span<const double> y);

struct ResultsTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct SynthGapCell {
    double alpha = 0.0;
    long long n = 0;
    double mean_gap = 0.0;
    double std_gap = 0.0; // sample standard deviation over draws
    int draws = 0;
};

struct SynthGapResult {
    std::vector<SynthGapCell> cells;
    ResultsTable cell_table;
    ResultsTable draw_table;
    bool partial = false; // resource cap truncated the run
};

// The synthetic-population protocol: per repetition, draw a fresh mixture
// population, simulate one elliptic stable trajectory per alpha, draw
// `subsets` index sets per n, and record the worst-over-trajectory risk gap
// for every (alpha, n, repetition, subset) draw.
SynthGapResult run_synth_gap(const ExperimentConfig& config);

struct MlpGapRow {
    int depth = 0;
    double eta = 0.0;
    int batch = 0;
    int rep = 0;
    double beta_s = 0.0;
    double gap = 0.0; // train accuracy - test accuracy
    double train_acc = 0.0;
    double test_acc = 0.0;
    bool converged = false; // final train accuracy >= 0.6
};

struct MlpGapResult {
    std::vector<MlpGapRow> rows;
    ResultsTable table;
    double spearman_beta_gap = 0.0;
    bool partial = false;
};

// Grid study over (depth, eta, batch): train an MLP on the mixture task,
// measure the train/test accuracy gap, and estimate beta_S from last-epoch
// iterate increments, layer by layer.
MlpGapResult run_mlp_gap(const ExperimentConfig& config);

// Dispatches on config.kind, writes every output table plus the
// "<kind>_config.json" sidecar under config.out_dir.  Returns 0 on success
// and 3 when a resource cap produced partial (still valid, still flagged)
// outputs.  Configuration problems throw ConfigError.
int run_experiment(const ExperimentConfig& config);

} // namespace levydim
