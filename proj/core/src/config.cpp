#include "levydim/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "levydim/bounds.hpp"
#include "levydim/csv.hpp"
#include "levydim/rng.hpp"
#include "levydim/stable.hpp"

namespace levydim {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError("config: " + msg); }

void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key())) {
            fail("unknown key '" + item.key() + "' in " + where);
        }
    }
}

double get_num(const json& obj, const std::string& key) {
    const auto& v = obj.at(key);
    if (!v.is_number()) fail("'" + key + "' must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail("'" + key + "' must be finite");
    return x;
}

long long get_int(const json& obj, const std::string& key) {
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) fail("'" + key + "' must be an integer");
    return v.get<long long>();
}

std::string get_str(const json& obj, const std::string& key) {
    const auto& v = obj.at(key);
    if (!v.is_string()) fail("'" + key + "' must be a string");
    return v.get<std::string>();
}

json merge_defaults(const json& defaults, const json& user, const std::string& where) {
    if (!user.is_object()) fail(where + " must be a JSON object");
    json out = defaults;
    for (const auto& item : user.items()) out[item.key()] = item.value();
    return out;
}

void validate_stable_family(const json& p, const std::string& where) {
    const int dim = static_cast<int>(get_int(p, "dim"));
    if (dim < 1) fail(where + ": 'dim' must be >= 1");
    const std::string family = get_str(p, "family");
    if (family == "elliptic") {
        if (p.contains("alphas")) fail(where + ": 'alphas' is only for the independent family");
        MultivariateStableSpec::elliptic(dim, get_num(p, "alpha")); // throws on bad alpha
    } else if (family == "independent") {
        if (p.contains("alpha")) fail(where + ": use 'alphas' for the independent family");
        if (!p.contains("alphas")) fail(where + ": the independent family requires 'alphas'");
        const auto& arr = p.at("alphas");
        if (!arr.is_array() || arr.size() != static_cast<std::size_t>(dim)) {
            fail(where + ": 'alphas' must be an array of length dim");
        }
        std::vector<double> alphas;
        for (const auto& a : arr) {
            if (!a.is_number()) fail(where + ": 'alphas' entries must be numbers");
            alphas.push_back(a.get<double>());
        }
        MultivariateStableSpec::independent_components(alphas);
    } else {
        fail(where + ": 'family' must be 'elliptic' or 'independent'");
    }
    const double horizon = get_num(p, "horizon");
    const double step = get_num(p, "step");
    if (!(horizon > 0.0)) fail(where + ": 'horizon' must be > 0");
    if (!(step > 0.0) || step > horizon) fail(where + ": 'step' must lie in (0, horizon]");
}

json default_simulate_params(const std::string& process, const std::string& family = "elliptic") {
    json p;
    p["process"] = process;
    p["dim"] = 2;
    p["family"] = family;
    // the per-coordinate exponents of the independent family must match the
    // caller's dim, so they carry no default: configs supply 'alphas'
    if (family != "independent") p["alpha"] = 1.5;
    p["horizon"] = 1.0;
    p["step"] = 1e-3;
    if (process == "sde") {
        p["drift"] = "zero";
        p["drift_scale"] = 1.0;
        p["gaussian_scale"] = 0.0;
        p["stable_scale"] = 1.0;
        p["divergence_cap"] = 1e12;
        p["logistic_n"] = 1000;
    }
    return p;
}

void validate_simulate_params(json& p) {
    const std::string process = p.contains("process") && p["process"].is_string()
                                    ? p["process"].get<std::string>()
                                    : "levy";
    if (process != "levy" && process != "sde") {
        fail("simulate: 'process' must be 'levy' or 'sde'");
    }
    const std::string family = p.contains("family") && p["family"].is_string()
                                   ? p["family"].get<std::string>()
                                   : "elliptic";
    p = merge_defaults(default_simulate_params(process, family), p, "simulate params");
    std::set<std::string> allowed = {"process", "dim", "family", "alpha", "alphas",
                                     "horizon", "step"};
    if (process == "sde") {
        for (const char* k : {"drift", "drift_scale", "gaussian_scale", "stable_scale",
                              "divergence_cap", "logistic_n", "initial"}) {
            allowed.insert(k);
        }
    }
    check_keys(p, "simulate params", allowed);
    validate_stable_family(p, "simulate");
    if (process == "sde") {
        const std::string drift = get_str(p, "drift");
        if (drift != "zero" && drift != "quadratic" && drift != "logistic") {
            fail("simulate: 'drift' must be one of zero|quadratic|logistic");
        }
        get_num(p, "drift_scale");
        get_num(p, "gaussian_scale");
        get_num(p, "stable_scale");
        if (!(get_num(p, "divergence_cap") > 0.0)) {
            fail("simulate: 'divergence_cap' must be > 0");
        }
        if (get_int(p, "logistic_n") < 1) fail("simulate: 'logistic_n' must be >= 1");
        if (p.contains("initial")) {
            const auto& init = p["initial"];
            if (!init.is_array() || init.size() != p["dim"].get<std::size_t>()) {
                fail("simulate: 'initial' must be an array of length dim");
            }
            for (const auto& v : init) {
                if (!v.is_number() || !std::isfinite(v.get<double>())) {
                    fail("simulate: 'initial' entries must be finite numbers");
                }
            }
        }
    }
}

void validate_inline_source(json& p, const std::string& kind, int repetitions) {
    const bool has_input = p.contains("input");
    const bool has_sim = p.contains("simulate");
    if (has_input == has_sim) {
        fail(kind + ": provide exactly one of 'input' (trajectory file) or 'simulate'");
    }
    if (has_input) {
        if (!p["input"].is_string() || p["input"].get<std::string>().empty()) {
            fail(kind + ": 'input' must be a non-empty path");
        }
        if (repetitions != 1) {
            fail(kind + ": repetitions > 1 requires an inline 'simulate' source");
        }
    } else {
        json sim = p["simulate"];
        validate_simulate_params(sim);
        if (sim["process"] != "levy") fail(kind + ": inline simulate must be a levy process");
        p["simulate"] = sim;
    }
}

json default_params(const std::string& kind) {
    json p;
    if (kind == "simulate") {
        p = default_simulate_params("levy");
    } else if (kind == "dimension") {
        p["simulate"] = {{"process", "levy"}, {"dim", 2},      {"family", "elliptic"},
                         {"alpha", 1.5},      {"horizon", 1.0}, {"step", 1e-5}};
        p["scale_count"] = 24;
        p["min_count"] = 10;
        p["max_count_fraction"] = 0.1;
    } else if (kind == "tailindex") {
        p["simulate"] = {{"process", "levy"},       {"dim", 2},       {"family", "independent"},
                         {"alphas", {1.3, 1.7}},    {"horizon", 1.0}, {"step", 1e-5}};
        p["groups"] = json::array();
        p["window_fraction"] = 1.0;
        p["k1"] = 0;
    } else if (kind == "synth-gap") {
        p["dim"] = 10;
        p["population"] = 100000;
        p["subsets"] = 20;
        p["ns"] = {100, 1000, 10000};
        p["alphas"] = {1.0, 1.5, 2.0};
        p["horizon"] = 1.0;
        p["step"] = 1e-3;
        p["loss_clip"] = 1.0;
        p["max_seconds"] = 0.0;
        p["emit_draws"] = true;
    } else if (kind == "mlp-gap") {
        p["dim"] = 10;
        p["n_train"] = 1000;
        p["n_test"] = 10000;
        p["depths"] = {1, 2, 3};
        p["hidden_width"] = 16;
        p["etas"] = {0.02, 0.005};
        p["batches"] = {32, 128};
        p["epochs"] = 40;
        p["max_seconds"] = 0.0;
    } else if (kind == "bound") {
        p["B"] = 1.0;
        p["L"] = 1.0;
        p["n"] = 10000;
        p["gamma"] = 0.1;
        p["d_H"] = 2.0;
        p["M"] = 1.0;
        p["diameter"] = 0.0;
        p["rho_n"] = 0.0;
        p["sweep"] = {{"param", "n"}, {"values", {100, 1000, 10000, 100000}}};
    } else {
        fail("unknown experiment kind '" + kind + "'");
    }
    return p;
}

BoundInputs bound_inputs_from(const json& p) {
    BoundInputs in;
    in.loss_bound_B = get_num(p, "B");
    in.lipschitz_L = get_num(p, "L");
    in.n = get_int(p, "n");
    in.gamma = get_num(p, "gamma");
    in.d_H = get_num(p, "d_H");
    in.coupling_M = get_num(p, "M");
    in.diameter = get_num(p, "diameter");
    in.rho_n = get_num(p, "rho_n");
    return in;
}

void dry_run_bounds(const BoundInputs& in) {
    try {
        theorem1_bound(in);
        theorem2_bound(in);
        if (in.diameter > 0.0 || in.rho_n > 0.0) chaining_bound(in);
    } catch (const std::exception& e) {
        fail(std::string("bound: ") + e.what());
    }
}

void validate_params(const std::string& kind, json& p, int repetitions) {
    if (kind == "simulate") {
        validate_simulate_params(p);
    } else if (kind == "dimension") {
        check_keys(p, "dimension params",
                   {"input", "simulate", "scale_count", "min_count", "max_count_fraction"});
        validate_inline_source(p, kind, repetitions);
        if (get_int(p, "scale_count") < 2) fail("dimension: 'scale_count' must be >= 2");
        if (get_int(p, "min_count") < 1) fail("dimension: 'min_count' must be >= 1");
        const double frac = get_num(p, "max_count_fraction");
        if (!(frac > 0.0) || frac > 1.0) {
            fail("dimension: 'max_count_fraction' must lie in (0, 1]");
        }
    } else if (kind == "tailindex") {
        check_keys(p, "tailindex params", {"input", "simulate", "groups", "window_fraction", "k1"});
        validate_inline_source(p, kind, repetitions);
        if (!p["groups"].is_array()) fail("tailindex: 'groups' must be an array");
        for (const auto& g : p["groups"]) {
            if (!g.is_object() || !g.contains("name") || !g.contains("count")) {
                fail("tailindex: each group needs 'name' and 'count'");
            }
            if (!g["name"].is_string()) fail("tailindex: group 'name' must be a string");
            if (!g["count"].is_number_integer() || g["count"].get<long long>() < 1) {
                fail("tailindex: group 'count' must be an integer >= 1");
            }
        }
        const double frac = get_num(p, "window_fraction");
        if (!(frac > 0.0) || frac > 1.0) fail("tailindex: 'window_fraction' must lie in (0, 1]");
        const long long k1 = get_int(p, "k1");
        if (k1 != 0 && k1 < 2) fail("tailindex: 'k1' must be 0 (auto) or >= 2");
    } else if (kind == "synth-gap") {
        check_keys(p, "synth-gap params", {"dim", "population", "subsets", "ns", "alphas",
                                           "horizon", "step", "loss_clip", "max_seconds",
                                           "emit_draws"});
        if (get_int(p, "dim") < 1) fail("synth-gap: 'dim' must be >= 1");
        const long long pop = get_int(p, "population");
        if (pop < 2) fail("synth-gap: 'population' must be >= 2");
        if (get_int(p, "subsets") < 1) fail("synth-gap: 'subsets' must be >= 1");
        if (!p["ns"].is_array() || p["ns"].empty()) fail("synth-gap: 'ns' must be a non-empty array");
        for (const auto& v : p["ns"]) {
            if (!v.is_number_integer() || v.get<long long>() < 1 || v.get<long long>() > pop) {
                fail("synth-gap: every n must be an integer in [1, population]");
            }
        }
        if (!p["alphas"].is_array() || p["alphas"].empty()) {
            fail("synth-gap: 'alphas' must be a non-empty array");
        }
        for (const auto& a : p["alphas"]) {
            if (!a.is_number()) fail("synth-gap: 'alphas' entries must be numbers");
            MultivariateStableSpec::elliptic(2, a.get<double>());
        }
        const double horizon = get_num(p, "horizon");
        const double step = get_num(p, "step");
        if (!(horizon > 0.0) || !(step > 0.0) || step > horizon) {
            fail("synth-gap: need horizon > 0 and step in (0, horizon]");
        }
        const double clip = get_num(p, "loss_clip");
        if (!std::isfinite(clip) || clip < 0.0) {
            fail("synth-gap: 'loss_clip' must be >= 0 (0 disables the cap)");
        }
        if (get_num(p, "max_seconds") < 0.0) fail("synth-gap: 'max_seconds' must be >= 0");
        if (!p["emit_draws"].is_boolean()) fail("synth-gap: 'emit_draws' must be a boolean");
    } else if (kind == "mlp-gap") {
        check_keys(p, "mlp-gap params", {"dim", "n_train", "n_test", "depths", "hidden_width",
                                         "etas", "batches", "epochs", "max_seconds"});
        if (get_int(p, "dim") < 1) fail("mlp-gap: 'dim' must be >= 1");
        const long long n_train = get_int(p, "n_train");
        if (n_train < 2) fail("mlp-gap: 'n_train' must be >= 2");
        if (get_int(p, "n_test") < 1) fail("mlp-gap: 'n_test' must be >= 1");
        if (!p["depths"].is_array() || p["depths"].empty()) {
            fail("mlp-gap: 'depths' must be a non-empty array");
        }
        for (const auto& v : p["depths"]) {
            if (!v.is_number_integer() || v.get<long long>() < 1) {
                fail("mlp-gap: depths must be integers >= 1");
            }
        }
        if (get_int(p, "hidden_width") < 1) fail("mlp-gap: 'hidden_width' must be >= 1");
        if (!p["etas"].is_array() || p["etas"].empty()) {
            fail("mlp-gap: 'etas' must be a non-empty array");
        }
        for (const auto& v : p["etas"]) {
            if (!v.is_number() || !(v.get<double>() > 0.0)) {
                fail("mlp-gap: etas must be positive numbers");
            }
        }
        if (!p["batches"].is_array() || p["batches"].empty()) {
            fail("mlp-gap: 'batches' must be a non-empty array");
        }
        for (const auto& v : p["batches"]) {
            if (!v.is_number_integer() || v.get<long long>() < 1 ||
                v.get<long long>() > n_train) {
                fail("mlp-gap: batches must be integers in [1, n_train]");
            }
        }
        if (get_int(p, "epochs") < 1) fail("mlp-gap: 'epochs' must be >= 1");
        if (get_num(p, "max_seconds") < 0.0) fail("mlp-gap: 'max_seconds' must be >= 0");
    } else if (kind == "bound") {
        check_keys(p, "bound params",
                   {"B", "L", "n", "gamma", "d_H", "M", "diameter", "rho_n", "sweep"});
        BoundInputs base = bound_inputs_from(p);
        dry_run_bounds(base);
        if (p.contains("sweep") && !p["sweep"].is_null()) {
            const auto& sweep = p["sweep"];
            if (!sweep.is_object() || !sweep.contains("param") || !sweep.contains("values")) {
                fail("bound: 'sweep' needs 'param' and 'values'");
            }
            const std::string param = sweep["param"].get<std::string>();
            const std::set<std::string> sweepable = {"n",        "d_H",  "B",     "L",
                                                     "gamma",    "M",    "diameter", "rho_n"};
            if (!sweepable.count(param)) fail("bound: cannot sweep '" + param + "'");
            if (!sweep["values"].is_array() || sweep["values"].empty()) {
                fail("bound: 'sweep.values' must be a non-empty array");
            }
            for (const auto& v : sweep["values"]) {
                if (!v.is_number()) fail("bound: sweep values must be numbers");
                BoundInputs in = base;
                const double x = v.get<double>();
                if (param == "n") {
                    if (!v.is_number_integer()) fail("bound: swept n values must be integers");
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
                dry_run_bounds(in);
            }
        }
    } else {
        fail("unknown experiment kind '" + kind + "'");
    }
}

// Validation dry-runs module constructors (stable specs, bound calculators),
// whose own range checks throw logic errors; config consumers see ConfigError.
void validate_params_checked(const std::string& kind, json& p, int repetitions) {
    try {
        validate_params(kind, p, repetitions);
    } catch (const std::logic_error& e) {
        fail(e.what());
    }
}

} // namespace

ExperimentConfig default_experiment_config(const std::string& kind) {
    ExperimentConfig config;
    config.kind = kind;
    config.params = default_params(kind);
    if (kind == "synth-gap") config.repetitions = 20;
    json wrapped = config.params;
    validate_params_checked(kind, wrapped, config.repetitions);
    config.params = wrapped;
    return config;
}

ExperimentConfig parse_experiment_config(const nlohmann::json& doc) {
    if (!doc.is_object()) fail("top-level config must be a JSON object");
    check_keys(doc, "config", {"kind", "seed", "repetitions", "threads", "out", "format", "params"});
    if (!doc.contains("kind")) fail("missing 'kind'");
    ExperimentConfig config;
    config.kind = get_str(doc, "kind");
    if (config.kind == "synth-gap") config.repetitions = 20;
    if (doc.contains("seed")) {
        const auto& s = doc["seed"];
        if (!s.is_number_integer()) fail("'seed' must be a non-negative integer");
        if (!s.is_number_unsigned() && s.get<long long>() < 0) {
            fail("'seed' must be a non-negative integer");
        }
        config.seed = s.get<std::uint64_t>();
    }
    if (doc.contains("repetitions")) {
        const long long r = get_int(doc, "repetitions");
        if (r < 1) fail("'repetitions' must be >= 1");
        config.repetitions = static_cast<int>(r);
    }
    if (doc.contains("threads")) {
        const long long t = get_int(doc, "threads");
        if (t < 1 || t > 4096) fail("'threads' must lie in [1, 4096]");
        config.threads = static_cast<int>(t);
    }
    if (doc.contains("out")) {
        config.out_dir = get_str(doc, "out");
        if (config.out_dir.empty()) fail("'out' must be a non-empty path");
    }
    if (doc.contains("format")) {
        config.format = get_str(doc, "format");
        if (config.format != "csv" && config.format != "json") {
            fail("'format' must be 'csv' or 'json'");
        }
    }
    json params = doc.contains("params") ? doc["params"] : json::object();
    if (!params.is_object()) fail("'params' must be a JSON object");
    // the simulate validator fills its own family-dependent defaults; a blind
    // merge here would graft the elliptic 'alpha' onto independent configs
    json resolved = config.kind == "simulate"
                        ? params
                        : merge_defaults(default_params(config.kind), params, "params");
    // inline simulate sources replace the default source entirely
    if ((config.kind == "dimension" || config.kind == "tailindex") && params.contains("input")) {
        resolved.erase("simulate");
    }
    if ((config.kind == "dimension" || config.kind == "tailindex") && params.contains("simulate")) {
        resolved["simulate"] = params["simulate"];
    }
    if (config.kind == "bound" && params.contains("sweep") && params["sweep"].is_null()) {
        resolved.erase("sweep");
    }
    validate_params_checked(config.kind, resolved, config.repetitions);
    config.params = resolved;
    return config;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) fail("cannot open config file " + path);
    nlohmann::json doc;
    try {
        is >> doc;
    } catch (const std::exception& e) {
        fail("invalid JSON in " + path + ": " + e.what());
    }
    return parse_experiment_config(doc);
}

std::string canonical_config_json(const ExperimentConfig& config) {
    // only fields that affect emitted row content participate; threads and
    // output location must never change results
    nlohmann::json j;
    j["kind"] = config.kind;
    j["seed"] = config.seed;
    j["repetitions"] = config.repetitions;
    j["params"] = config.params;
    return j.dump();
}

std::string config_hash_hex(const ExperimentConfig& config) {
    const std::uint64_t h = fnv1a64(canonical_config_json(config));
    char buf[17];
    static const char* digits = "0123456789abcdef";
    for (int i = 0; i < 16; ++i) {
        buf[i] = digits[(h >> (60 - 4 * i)) & 0xf];
    }
    buf[16] = '\0';
    return std::string(buf);
}

} // namespace levydim
