#include "levydim/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <numeric>
#include <thread>

#include "levydim/boxdim.hpp"
#include "levydim/bounds.hpp"
#include "levydim/csv.hpp"
#include "levydim/dataset.hpp"
#include "levydim/mlp.hpp"
#include "levydim/objective.hpp"
#include "levydim/process.hpp"
#include "levydim/risk.hpp"
#include "levydim/sgd.hpp"
#include "levydim/tail_index.hpp"

namespace levydim {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// ---- small utilities -------------------------------------------------------

bool parse_finite_number(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char c = s.front();
    if (c != '-' && (c < '0' || c > '9')) return false;
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc{} && ptr == end && std::isfinite(out);
}

// Field-wise comparison, numeric when both sides parse as numbers, so the
// normalized row order is natural for plotting tools.
bool row_less(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == b[i]) continue;
        double xa = 0.0, xb = 0.0;
        if (parse_finite_number(a[i], xa) && parse_finite_number(b[i], xb) && xa != xb) {
            return xa < xb;
        }
        return a[i] < b[i];
    }
    return a.size() < b.size();
}

void normalize_rows(ResultsTable& table) {
    std::sort(table.rows.begin(), table.rows.end(), row_less);
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof(buf), "\\u%04x",
                              static_cast<unsigned>(static_cast<unsigned char>(c)));
                out += buf;
            } else {
                out += c;
            }
        }
    }
    return out;
}

void write_table_csv(const ResultsTable& table, std::ostream& os) {
    write_csv_row(os, table.header);
    for (const auto& row : table.rows) write_csv_row(os, row);
}

// JSON rendering of a table: array of objects; fields that parse as finite
// numbers are emitted as number tokens verbatim, everything else as strings.
void write_table_json(const ResultsTable& table, std::ostream& os) {
    os << "[\n";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        os << "  {";
        const auto& row = table.rows[r];
        for (std::size_t c = 0; c < row.size() && c < table.header.size(); ++c) {
            if (c) os << ", ";
            os << '"' << json_escape(table.header[c]) << "\": ";
            double ignored = 0.0;
            if (parse_finite_number(row[c], ignored)) {
                os << row[c];
            } else {
                os << '"' << json_escape(row[c]) << '"';
            }
        }
        os << (r + 1 < table.rows.size() ? "},\n" : "}\n");
    }
    os << "]\n";
}

void write_table_file(const ResultsTable& table, const fs::path& stem, const std::string& format) {
    const fs::path path = format == "json" ? fs::path(stem).replace_extension(".json")
                                           : fs::path(stem).replace_extension(".csv");
    std::ofstream os(path);
    if (!os) throw std::runtime_error("experiments: cannot open " + path.string());
    if (format == "json") {
        write_table_json(table, os);
    } else {
        write_table_csv(table, os);
    }
    if (!os) throw std::runtime_error("experiments: write to " + path.string() + " failed");
}

std::string bool_str(bool b) { return b ? "1" : "0"; }

std::string rep_name(int rep) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%03d", rep);
    return buf;
}

// ---- worker pool ------------------------------------------------------------

// Runs fn(0..count-1) across up to `threads` workers.  Returns false when the
// wall-clock cap cut scheduling short (already-started tasks still finish).
bool run_tasks(int threads, std::size_t count, double max_seconds,
               const std::function<void(std::size_t)>& fn) {
    const auto start = std::chrono::steady_clock::now();
    auto deadline_passed = [&] {
        if (max_seconds <= 0.0) return false;
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() >
               max_seconds;
    };

    std::atomic<std::size_t> next{0};
    std::atomic<bool> capped{false};
    std::atomic<bool> errored{false};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    auto worker = [&] {
        for (;;) {
            if (errored.load()) return;
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            if (deadline_passed()) {
                capped.store(true);
                return;
            }
            try {
                fn(i);
            } catch (...) {
                std::scoped_lock lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                errored.store(true);
                return;
            }
        }
    };

    const int n_workers = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), count));
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_workers));
        for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    return !capped.load();
}

// ---- shared helpers ---------------------------------------------------------

MultivariateStableSpec stable_spec_from(const json& p) {
    const int dim = p.at("dim").get<int>();
    if (p.at("family").get<std::string>() == "elliptic") {
        return MultivariateStableSpec::elliptic(dim, p.at("alpha").get<double>());
    }
    return MultivariateStableSpec::independent_components(p.at("alphas").get<std::vector<double>>());
}

Trajectory simulate_from_params(const json& sim, RngStream rng) {
    return simulate_levy(stable_spec_from(sim), sim.at("horizon").get<double>(),
                         sim.at("step").get<double>(), rng);
}

struct RunnerOutput {
    std::vector<std::pair<std::string, ResultsTable>> tables; // filename stem -> table
    json extras = json::object();
    bool partial = false;
};

// ---- simulate ---------------------------------------------------------------

RunnerOutput run_simulate_kind(const ExperimentConfig& config) {
    const json& p = config.params;
    const std::string hash = config_hash_hex(config);
    const RngStream master(config.seed);
    const bool is_sde = p.at("process").get<std::string>() == "sde";
    const MultivariateStableSpec law = stable_spec_from(p);
    const double horizon = p.at("horizon").get<double>();
    const double step = p.at("step").get<double>();

    ResultsTable table;
    table.header = {"rep", "points", "truncated", "file", "config_hash"};
    for (int rep = 0; rep < config.repetitions; ++rep) {
        RngStream rng = master.child("simulate/rep" + std::to_string(rep));
        Trajectory traj;
        if (!is_sde) {
            traj = simulate_levy(law, horizon, step, rng);
        } else {
            DrivingSpec driving;
            driving.stable_law = law;
            driving.precond = Coefficient::scalar(p.at("drift_scale").get<double>());
            driving.gaussian_coeff = Coefficient::scalar(p.at("gaussian_scale").get<double>());
            driving.stable_coeff = Coefficient::scalar(p.at("stable_scale").get<double>());
            driving.divergence_cap = p.at("divergence_cap").get<double>();
            const std::string drift = p.at("drift").get<std::string>();
            if (drift == "quadratic") {
                driving.grad = [](std::span<const double> w, std::span<double> g) {
                    std::copy(w.begin(), w.end(), g.begin());
                };
            } else if (drift == "logistic") {
                RngStream data_rng =
                    master.child("simulate/rep" + std::to_string(rep) + "/drift-data");
                auto data = std::make_shared<Dataset>(gen_mixture_dataset(
                    law.dim(), p.at("logistic_n").get<std::size_t>(), data_rng));
                driving.grad = [data](std::span<const double> w, std::span<double> g) {
                    std::fill(g.begin(), g.end(), 0.0);
                    const double weight = 1.0 / static_cast<double>(data->size());
                    for (std::size_t i = 0; i < data->size(); ++i) {
                        logistic_add_grad(w, data->row(i), data->labels[i], weight, g);
                    }
                };
            }
            std::vector<double> initial;
            if (p.contains("initial")) initial = p.at("initial").get<std::vector<double>>();
            traj = simulate_sde(driving, initial, horizon, step, rng);
        }
        const std::string stem = "trajectory_" + rep_name(rep);
        save_trajectory(traj, (fs::path(config.out_dir) / (stem + ".bin")).string());
        std::ofstream csv(fs::path(config.out_dir) / (stem + ".csv"));
        write_trajectory_csv(traj, csv);
        table.rows.push_back({std::to_string(rep), std::to_string(traj.size()),
                              bool_str(traj.truncated), stem + ".bin", hash});
    }
    RunnerOutput out;
    normalize_rows(table);
    out.tables.emplace_back("simulate", std::move(table));
    return out;
}

// ---- dimension --------------------------------------------------------------

RunnerOutput run_dimension_kind(const ExperimentConfig& config) {
    const json& p = config.params;
    const std::string hash = config_hash_hex(config);
    const RngStream master(config.seed);
    FitWindow window;
    window.min_count = p.at("min_count").get<std::size_t>();
    window.max_count_fraction = p.at("max_count_fraction").get<double>();
    const int scale_count = p.at("scale_count").get<int>();

    struct Slot {
        DimensionEstimate est;
    };
    std::vector<Slot> slots(static_cast<std::size_t>(config.repetitions));
    run_tasks(config.threads, slots.size(), 0.0, [&](std::size_t r) {
        Trajectory traj =
            p.contains("input")
                ? load_trajectory(p.at("input").get<std::string>())
                : simulate_from_params(p.at("simulate"),
                                       master.child("dimension/rep" + std::to_string(r)));
        slots[r].est = estimate_dimension(traj, scale_count, window);
    });

    ResultsTable table;
    table.header = {"rep",       "delta",   "count", "log_delta",
                    "log_count", "used_in_fit", "config_hash"};
    json estimates = json::array();
    double slope_sum = 0.0;
    for (std::size_t r = 0; r < slots.size(); ++r) {
        const auto& est = slots[r].est;
        for (std::size_t k = 0; k < est.scales.size(); ++k) {
            table.rows.push_back({std::to_string(r), format_double(est.scales[k]),
                                  format_u64(est.counts[k]),
                                  format_double(std::log(est.scales[k])),
                                  format_double(std::log(static_cast<double>(est.counts[k]))),
                                  est.used[k] ? "1" : "0", hash});
        }
        json e;
        e["rep"] = r;
        e["slope"] = est.slope;
        e["raw_slope"] = est.raw_slope;
        e["r_squared"] = est.r_squared;
        e["degenerate"] = est.degenerate;
        e["low_quality"] = est.low_quality;
        estimates.push_back(e);
        slope_sum += est.slope;
    }
    RunnerOutput out;
    out.extras["estimates"] = estimates;
    out.extras["mean_slope"] = slope_sum / static_cast<double>(slots.size());
    normalize_rows(table);
    out.tables.emplace_back("dimension", std::move(table));
    return out;
}

// ---- tailindex ----------------------------------------------------------------

RunnerOutput run_tailindex_kind(const ExperimentConfig& config) {
    const json& p = config.params;
    const std::string hash = config_hash_hex(config);
    const RngStream master(config.seed);
    const double window_fraction = p.at("window_fraction").get<double>();
    K1Policy policy;
    policy.fixed_k1 = p.at("k1").get<std::size_t>();

    std::vector<TailIndexReport> reports(static_cast<std::size_t>(config.repetitions));
    run_tasks(config.threads, reports.size(), 0.0, [&](std::size_t r) {
        Trajectory traj =
            p.contains("input")
                ? load_trajectory(p.at("input").get<std::string>())
                : simulate_from_params(p.at("simulate"),
                                       master.child("tailindex/rep" + std::to_string(r)));
        GroupMap gm;
        if (p.at("groups").empty()) {
            gm = GroupMap::single(traj.dim);
        } else {
            int covered = 0;
            for (const auto& g : p.at("groups")) {
                const int count = g.at("count").get<int>();
                gm.names.push_back(g.at("name").get<std::string>());
                gm.assignment.insert(gm.assignment.end(), static_cast<std::size_t>(count),
                                     gm.group_count() - 1);
                covered += count;
            }
            if (covered != traj.dim) {
                throw ConfigError("tailindex: group counts sum to " + std::to_string(covered) +
                                  " but the trajectory has dimension " + std::to_string(traj.dim));
            }
        }
        reports[r] = estimate_beta(traj, gm, last_fraction_window(traj, window_fraction), policy);
    });

    ResultsTable table;
    table.header = {"rep", "group", "alpha_hat", "sample_count", "degenerate", "config_hash"};
    json extras_reports = json::array();
    for (std::size_t r = 0; r < reports.size(); ++r) {
        const auto& report = reports[r];
        for (std::size_t g = 0; g < report.group_names.size(); ++g) {
            table.rows.push_back({std::to_string(r), report.group_names[g],
                                  format_double(report.alpha_hats[g]),
                                  format_u64(report.sample_counts[g]),
                                  bool_str(report.degenerate[g]), hash});
        }
        json jr = json::parse(tail_report_json(report));
        jr["rep"] = r;
        extras_reports.push_back(jr);
    }
    RunnerOutput out;
    out.extras["reports"] = extras_reports;
    normalize_rows(table);
    out.tables.emplace_back("tailindex", std::move(table));
    return out;
}

// ---- synth-gap ----------------------------------------------------------------

} // namespace

SynthGapResult run_synth_gap(const ExperimentConfig& config) {
    const json& p = config.params;
    const std::string hash = config_hash_hex(config);
    const int d = p.at("dim").get<int>();
    const auto population = p.at("population").get<std::size_t>();
    const int subsets = p.at("subsets").get<int>();
    const auto ns = p.at("ns").get<std::vector<long long>>();
    const auto alphas = p.at("alphas").get<std::vector<double>>();
    const double horizon = p.at("horizon").get<double>();
    const double step = p.at("step").get<double>();
    const double cap = p.at("loss_clip").get<double>();
    const double max_seconds = p.at("max_seconds").get<double>();
    const int reps = config.repetitions;
    const RngStream master(config.seed);

    struct Slot {
        bool ran = false;
        std::vector<std::vector<double>> gap;          // [n_idx][subset]
        std::vector<std::vector<std::size_t>> argmax;  // [n_idx][subset]
    };
    const auto n_tasks = alphas.size() * static_cast<std::size_t>(reps);
    std::vector<Slot> slots(n_tasks);

    const bool all_ran = run_tasks(config.threads, n_tasks, max_seconds, [&](std::size_t t) {
        const std::size_t ai = t / static_cast<std::size_t>(reps);
        const int rep = static_cast<int>(t % static_cast<std::size_t>(reps));
        const double alpha = alphas[ai];
        const std::string rep_tag = "synth/rep" + std::to_string(rep);

        RngStream pop_rng = master.child(rep_tag + "/population");
        const Dataset pop = gen_mixture_dataset(d, population, pop_rng);

        std::vector<std::vector<std::vector<std::size_t>>> subset_idx(ns.size());
        for (std::size_t ni = 0; ni < ns.size(); ++ni) {
            subset_idx[ni].reserve(static_cast<std::size_t>(subsets));
            for (int s = 0; s < subsets; ++s) {
                RngStream sub_rng = master.child(rep_tag + "/n" + std::to_string(ns[ni]) +
                                                 "/subset" + std::to_string(s));
                subset_idx[ni].push_back(
                    sample_indices(population, static_cast<std::size_t>(ns[ni]), sub_rng));
            }
        }

        RngStream traj_rng =
            master.child(rep_tag + "/alpha" + format_double(alpha) + "/trajectory");
        const Trajectory traj =
            simulate_levy(MultivariateStableSpec::elliptic(d, alpha), horizon, step, traj_rng);

        Slot& slot = slots[t];
        slot.gap.assign(ns.size(), std::vector<double>(static_cast<std::size_t>(subsets), 0.0));
        slot.argmax.assign(ns.size(),
                           std::vector<std::size_t>(static_cast<std::size_t>(subsets), 0));

        // One pass per trajectory point: population losses once, then every
        // subset risk as an index-mean over that buffer.  Summation order for
        // each subset matches empirical_risk on the corresponding subset
        // dataset, so the gaps agree bit-for-bit with generalization_gap on a
        // logistic objective capped at loss_clip (uncapped when loss_clip=0).
        std::vector<double> loss(population);
        for (std::size_t k = 0; k < traj.size(); ++k) {
            const auto w = traj.point(k);
            double total = 0.0;
            for (std::size_t i = 0; i < population; ++i) {
                double li = logistic_loss(w, pop.row(i), pop.labels[i]);
                if (cap > 0.0) li = std::min(li, cap);
                loss[i] = li;
                total += li;
            }
            const double pop_risk = total / static_cast<double>(population);
            for (std::size_t ni = 0; ni < ns.size(); ++ni) {
                for (int s = 0; s < subsets; ++s) {
                    const auto& idx = subset_idx[ni][static_cast<std::size_t>(s)];
                    double es = 0.0;
                    for (const std::size_t i : idx) es += loss[i];
                    const double g =
                        std::abs(es / static_cast<double>(idx.size()) - pop_risk);
                    auto& best = slot.gap[ni][static_cast<std::size_t>(s)];
                    if (k == 0 || g > best) {
                        best = g;
                        slot.argmax[ni][static_cast<std::size_t>(s)] = k;
                    }
                }
            }
        }
        slot.ran = true;
    });

    SynthGapResult result;
    result.partial = !all_ran;
    result.cell_table.header = {"alpha", "n", "mean_gap", "std_gap", "draws", "config_hash"};
    result.draw_table.header = {"alpha", "n",           "rep",        "subset",
                                "gap",   "argmax_index", "config_hash"};
    for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
        for (std::size_t ni = 0; ni < ns.size(); ++ni) {
            double sum = 0.0, sumsq = 0.0;
            int count = 0;
            for (int rep = 0; rep < reps; ++rep) {
                const Slot& slot = slots[ai * static_cast<std::size_t>(reps) +
                                         static_cast<std::size_t>(rep)];
                if (!slot.ran) continue;
                for (int s = 0; s < subsets; ++s) {
                    const double g = slot.gap[ni][static_cast<std::size_t>(s)];
                    sum += g;
                    sumsq += g * g;
                    ++count;
                    result.draw_table.rows.push_back(
                        {format_double(alphas[ai]), std::to_string(ns[ni]), std::to_string(rep),
                         std::to_string(s), format_double(g),
                         format_u64(slot.argmax[ni][static_cast<std::size_t>(s)]), hash});
                }
            }
            if (count == 0) continue;
            const double mean = sum / count;
            const double var = count > 1 ? std::max(0.0, (sumsq - sum * mean) / (count - 1)) : 0.0;
            SynthGapCell cell;
            cell.alpha = alphas[ai];
            cell.n = ns[ni];
            cell.mean_gap = mean;
            cell.std_gap = std::sqrt(var);
            cell.draws = count;
            result.cells.push_back(cell);
            result.cell_table.rows.push_back({format_double(cell.alpha), std::to_string(cell.n),
                                              format_double(cell.mean_gap),
                                              format_double(cell.std_gap),
                                              std::to_string(cell.draws), hash});
        }
    }
    normalize_rows(result.cell_table);
    normalize_rows(result.draw_table);
    return result;
}

// ---- mlp-gap --------------------------------------------------------------------

MlpGapResult run_mlp_gap(const ExperimentConfig& config) {
    const json& p = config.params;
    const std::string hash = config_hash_hex(config);
    const int dim = p.at("dim").get<int>();
    const auto n_train = p.at("n_train").get<std::size_t>();
    const auto n_test = p.at("n_test").get<std::size_t>();
    const auto depths = p.at("depths").get<std::vector<int>>();
    const int hidden = p.at("hidden_width").get<int>();
    const auto etas = p.at("etas").get<std::vector<double>>();
    const auto batches = p.at("batches").get<std::vector<int>>();
    const int epochs = p.at("epochs").get<int>();
    const double max_seconds = p.at("max_seconds").get<double>();
    const int reps = config.repetitions;
    const RngStream master(config.seed);

    struct Cell {
        int depth;
        double eta;
        int batch;
    };
    std::vector<Cell> cells;
    for (int depth : depths) {
        for (double eta : etas) {
            for (int batch : batches) cells.push_back({depth, eta, batch});
        }
    }

    struct Slot {
        bool ran = false;
        MlpGapRow row;
        json layer_alphas;
    };
    const auto n_tasks = cells.size() * static_cast<std::size_t>(reps);
    std::vector<Slot> slots(n_tasks);

    const bool all_ran = run_tasks(config.threads, n_tasks, max_seconds, [&](std::size_t t) {
        const std::size_t ci = t % cells.size();
        const int rep = static_cast<int>(t / cells.size());
        const Cell& cell = cells[ci];
        const std::string rep_tag = "mlp/rep" + std::to_string(rep);
        const std::string cell_tag = rep_tag + "/depth" + std::to_string(cell.depth) + "/eta" +
                                     format_double(cell.eta) + "/batch" +
                                     std::to_string(cell.batch);

        RngStream train_rng = master.child(rep_tag + "/train");
        RngStream test_rng = master.child(rep_tag + "/test");
        const Dataset train = gen_mixture_dataset(dim, n_train, train_rng);
        const Dataset test = gen_mixture_dataset(dim, n_test, test_rng);

        std::vector<int> widths;
        widths.push_back(dim);
        for (int l = 0; l < cell.depth; ++l) widths.push_back(hidden);
        widths.push_back(1);
        const Mlp mlp(widths);

        std::vector<double> w0(mlp.param_count());
        RngStream init_rng = master.child(cell_tag + "/init");
        mlp.random_init(w0, init_rng);

        const MlpObjective objective(mlp);
        RngStream sgd_rng = master.child(cell_tag + "/sgd");
        const Trajectory traj =
            run_sgd(objective, train, cell.eta, cell.batch, epochs, sgd_rng, w0);

        auto ws = mlp.make_workspace();
        const auto w_final = traj.point(traj.size() - 1);
        const double train_acc = mlp.accuracy(w_final, train, ws);
        const double test_acc = mlp.accuracy(w_final, test, ws);

        const std::size_t steps_per_epoch = n_train / static_cast<std::size_t>(cell.batch);
        const IterateWindow window{traj.size() - 1 - steps_per_epoch, traj.size()};
        const TailIndexReport report = estimate_beta(traj, mlp.group_map(), window);

        Slot& slot = slots[t];
        slot.row.depth = cell.depth;
        slot.row.eta = cell.eta;
        slot.row.batch = cell.batch;
        slot.row.rep = rep;
        slot.row.beta_s = report.beta_s;
        slot.row.train_acc = train_acc;
        slot.row.test_acc = test_acc;
        slot.row.gap = train_acc - test_acc;
        slot.row.converged = train_acc >= 0.6;
        slot.layer_alphas = json::object();
        for (std::size_t g = 0; g < report.group_names.size(); ++g) {
            slot.layer_alphas[report.group_names[g]] = report.alpha_hats[g];
        }
        slot.ran = true;
    });

    MlpGapResult result;
    result.partial = !all_ran;
    result.table.header = {"depth",  "eta",       "batch",    "rep",       "eta_over_batch",
                           "beta_s", "gap",       "train_acc", "test_acc", "converged",
                           "config_hash"};
    std::vector<double> betas, gaps;
    for (const auto& slot : slots) {
        if (!slot.ran) continue;
        const auto& row = slot.row;
        result.rows.push_back(row);
        betas.push_back(row.beta_s);
        gaps.push_back(row.gap);
        result.table.rows.push_back(
            {std::to_string(row.depth), format_double(row.eta), std::to_string(row.batch),
             std::to_string(row.rep), format_double(row.eta / row.batch),
             format_double(row.beta_s), format_double(row.gap), format_double(row.train_acc),
             format_double(row.test_acc), bool_str(row.converged), hash});
    }
    result.spearman_beta_gap = spearman(betas, gaps);
    normalize_rows(result.table);
    return result;
}

namespace {

RunnerOutput run_synth_gap_kind(const ExperimentConfig& config) {
    SynthGapResult res = run_synth_gap(config);
    RunnerOutput out;
    out.partial = res.partial;
    out.tables.emplace_back("synth_gap", std::move(res.cell_table));
    if (config.params.at("emit_draws").get<bool>()) {
        out.tables.emplace_back("synth_gap_draws", std::move(res.draw_table));
    }
    return out;
}

RunnerOutput run_mlp_gap_kind(const ExperimentConfig& config) {
    MlpGapResult res = run_mlp_gap(config);
    RunnerOutput out;
    out.partial = res.partial;
    out.extras["spearman_beta_gap"] = res.spearman_beta_gap;
    out.tables.emplace_back("mlp_gap", std::move(res.table));
    return out;
}

// ---- bound -----------------------------------------------------------------------

RunnerOutput run_bound_kind(const ExperimentConfig& config) {
    const json& p = config.params;
    const std::string hash = config_hash_hex(config);

    BoundInputs base;
    base.loss_bound_B = p.at("B").get<double>();
    base.lipschitz_L = p.at("L").get<double>();
    base.n = p.at("n").get<long long>();
    base.gamma = p.at("gamma").get<double>();
    base.d_H = p.at("d_H").get<double>();
    base.coupling_M = p.at("M").get<double>();
    base.diameter = p.at("diameter").get<double>();
    base.rho_n = p.at("rho_n").get<double>();

    ResultsTable table;
    table.header = {"param",    "value",      "theorem1",       "theorem2",
                    "chaining", "chaining_c", "small_n_warning", "config_hash"};

    auto emit = [&](const std::string& param, const std::string& value, const BoundInputs& in) {
        std::string chain_value, chain_c;
        if (in.diameter > 0.0 && in.rho_n > 0.0) {
            const ChainingBound cb = chaining_bound(in);
            chain_value = format_double(cb.value);
            chain_c = format_double(cb.c);
        }
        table.rows.push_back({param, value, format_double(theorem1_bound(in)),
                              format_double(theorem2_bound(in)), chain_value, chain_c,
                              bool_str(below_asymptotic_threshold(in)), hash});
    };

    if (p.contains("sweep")) {
        const std::string param = p.at("sweep").at("param").get<std::string>();
        for (const auto& v : p.at("sweep").at("values")) {
            BoundInputs in = base;
            const double x = v.get<double>();
            const std::string shown =
                v.is_number_integer() ? std::to_string(v.get<long long>()) : format_double(x);
            if (param == "n") {
                in.n = v.get<long long>();
            } else if (param == "d_H") {
                in.d_H = x;
            } else if (param == "B") {
                in.loss_bound_B = x;
            } else if (param == "L") {
                in.lipschitz_L = x;
            } else if (param == "gamma") {
                in.gamma = x;
            } else if (param == "M") {
                in.coupling_M = x;
            } else if (param == "diameter") {
                in.diameter = x;
            } else {
                in.rho_n = x;
            }
            emit(param, shown, in);
        }
    } else {
        emit("", "", base);
    }
    RunnerOutput out;
    normalize_rows(table);
    out.tables.emplace_back("bound", std::move(table));
    return out;
}

json config_as_json(const ExperimentConfig& config) {
    json j;
    j["kind"] = config.kind;
    j["seed"] = config.seed;
    j["repetitions"] = config.repetitions;
    j["threads"] = config.threads;
    j["out"] = config.out_dir;
    j["format"] = config.format;
    j["params"] = config.params;
    return j;
}

} // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("spearman: length mismatch");
    const std::size_t n = x.size();
    if (n < 2) return 0.0;

    auto ranks = [n](std::span<const double> v) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
        std::vector<double> rank(n);
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i;
            while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
            const double avg = 0.5 * static_cast<double>(i + j) + 1.0; // average 1-based rank
            for (std::size_t k = i; k <= j; ++k) rank[order[k]] = avg;
            i = j + 1;
        }
        return rank;
    };
    const std::vector<double> rx = ranks(x);
    const std::vector<double> ry = ranks(y);
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += rx[i];
        my += ry[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = rx[i] - mx;
        const double dy = ry[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

int run_experiment(const ExperimentConfig& config) {
    fs::create_directories(config.out_dir);

    RunnerOutput out;
    if (config.kind == "simulate") {
        out = run_simulate_kind(config);
    } else if (config.kind == "dimension") {
        out = run_dimension_kind(config);
    } else if (config.kind == "tailindex") {
        out = run_tailindex_kind(config);
    } else if (config.kind == "synth-gap") {
        out = run_synth_gap_kind(config);
    } else if (config.kind == "mlp-gap") {
        out = run_mlp_gap_kind(config);
    } else if (config.kind == "bound") {
        out = run_bound_kind(config);
    } else {
        throw ConfigError("config: unknown experiment kind '" + config.kind + "'");
    }

    for (const auto& [stem, table] : out.tables) {
        write_table_file(table, fs::path(config.out_dir) / stem, config.format);
    }

    json sidecar;
    sidecar["config"] = config_as_json(config);
    sidecar["config_hash"] = config_hash_hex(config);
    sidecar["partial"] = out.partial;
    for (const auto& item : out.extras.items()) sidecar[item.key()] = item.value();
    std::string stem = config.kind;
    std::replace(stem.begin(), stem.end(), '-', '_');
    std::ofstream side(fs::path(config.out_dir) / (stem + "_config.json"));
    if (!side) throw std::runtime_error("experiments: cannot write config sidecar");
    side << sidecar.dump(2) << '\n';

    return out.partial ? 3 : 0;
}

} // namespace levydim
