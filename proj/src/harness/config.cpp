#include "hslpp/harness/config.hpp"

#include <fstream>
#include <set>

#include "hslpp/core/errors.hpp"

namespace hslpp::harness {

namespace {

const std::set<std::string> kExperiments{"simulate",     "exact-law",     "kernel-eval", "converge",
                                          "verify-lemmas", "distribution", "report"};

template <class T>
void take(const json& j, const char* key, T& dst) {
    if (!j.contains(key)) return;
    try {
        dst = j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field '") + key + "': " + e.what());
    }
}

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
    for (const auto& [k, v] : j.items())
        if (!known.count(k)) throw ConfigError("unknown config field '" + k + "' in " + where);
}

}  // namespace

json RunConfig::to_json() const {
    json spikes = json::array();
    for (const auto& s : model.spikes) spikes.push_back({{"row", s.row}, {"strength", s.strength}});
    return {
        {"experiment", experiment},
        {"model",
         {{"q", model.q},
          {"c", model.c},
          {"N", model.N},
          {"kappa", model.kappa},
          {"spikes", spikes},
          {"critical_mode", model.critical_mode},
          {"varpi", model.varpi}}},
        {"seed", model.seed},
        {"out", out},
        {"workers", workers},
        {"samples", samples},
        {"m_grid", m_grid},
        {"m_step", m_step},
        {"t_grid", t_grid},
        {"curves", curves},
        {"weight_cap", weight_cap},
        {"component", component},
        {"labels", labels},
        {"lattice_points", lattice_points},
        {"points", points},
        {"N_list", N_list},
        {"threshold", threshold},
        {"q_list", q_list},
        {"kappa_list", kappa_list},
        {"theta0", theta0},
        {"R0", R0},
        {"distribution", distribution},
        {"s_grid", s_grid},
        {"ks_tolerance", ks_tolerance},
        {"z_tolerance", z_tolerance},
        {"report_dir", report_dir},
    };
}

RunConfig RunConfig::from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    RunConfig c;
    reject_unknown(j,
                   {"experiment", "model", "seed", "out", "workers", "samples", "m_grid", "m_step", "t_grid", "curves",
                    "weight_cap", "component", "labels", "lattice_points", "points", "N_list", "threshold", "q_list",
                    "kappa_list", "theta0", "R0", "distribution", "s_grid", "ks_tolerance", "z_tolerance",
                    "report_dir"},
                   "config");
    take(j, "experiment", c.experiment);
    if (j.contains("model")) {
        const auto& m = j.at("model");
        if (!m.is_object()) throw ConfigError("config field 'model' must be an object");
        reject_unknown(m, {"q", "c", "N", "kappa", "spikes", "critical_mode", "varpi"}, "model");
        take(m, "q", c.model.q);
        take(m, "c", c.model.c);
        take(m, "N", c.model.N);
        take(m, "kappa", c.model.kappa);
        take(m, "critical_mode", c.model.critical_mode);
        take(m, "varpi", c.model.varpi);
        if (m.contains("spikes")) {
            c.model.spikes.clear();
            for (const auto& s : m.at("spikes")) {
                if (!s.is_object() || !s.contains("row") || !s.contains("strength"))
                    throw ConfigError("each spike needs 'row' and 'strength'");
                c.model.spikes.push_back({s.at("row").get<int>(), s.at("strength").get<double>()});
            }
        }
    }
    take(j, "seed", c.model.seed);
    take(j, "out", c.out);
    take(j, "workers", c.workers);
    take(j, "samples", c.samples);
    take(j, "m_grid", c.m_grid);
    take(j, "m_step", c.m_step);
    take(j, "t_grid", c.t_grid);
    take(j, "curves", c.curves);
    take(j, "weight_cap", c.weight_cap);
    take(j, "component", c.component);
    take(j, "labels", c.labels);
    take(j, "lattice_points", c.lattice_points);
    take(j, "points", c.points);
    take(j, "N_list", c.N_list);
    take(j, "threshold", c.threshold);
    take(j, "q_list", c.q_list);
    take(j, "kappa_list", c.kappa_list);
    take(j, "theta0", c.theta0);
    take(j, "R0", c.R0);
    take(j, "distribution", c.distribution);
    take(j, "s_grid", c.s_grid);
    take(j, "ks_tolerance", c.ks_tolerance);
    take(j, "z_tolerance", c.z_tolerance);
    take(j, "report_dir", c.report_dir);
    return c;
}

void RunConfig::validate() const {
    if (!kExperiments.count(experiment)) throw ConfigError("unknown experiment '" + experiment + "'");
    if (workers < 1) throw ConfigError("workers must be >= 1");
    if (samples < 0) throw ConfigError("samples must be >= 0");
    if (experiment == "report") {
        if (report_dir.empty()) throw ConfigError("report needs a directory");
        return;
    }
    if (experiment == "verify-lemmas") {
        for (double q : q_list)
            if (!(q > 0 && q < 1)) throw ConfigError("q_list entries must lie in (0,1)");
        for (double k : kappa_list)
            if (!(k > 0 && k < 1)) throw ConfigError("kappa_list entries must lie in (0,1)");
        return;
    }
    // Model preconditions are owned by the model module; re-run them here so failures surface before dispatch.
    try {
        (void)lpp::derive_parameters(model);
    } catch (const ParameterError& e) {
        throw ConfigError(std::string("model parameters: ") + e.what());
    }
    if (experiment == "exact-law" && model.N > 3) throw ConfigError("exact-law requires N <= 3");
    if (experiment == "exact-law" && (weight_cap < 0 || weight_cap > 40)) throw ConfigError("weight_cap must lie in [0, 40]");
    if (experiment == "converge") {
        if (N_list.empty()) throw ConfigError("N_list must not be empty");
        for (std::size_t i = 1; i < N_list.size(); ++i)
            if (N_list[i] <= N_list[i - 1]) throw ConfigError("N_list must be strictly increasing");
        if (!(threshold > 0)) throw ConfigError("threshold must be positive");
    }
    if (experiment == "kernel-eval") {
        if (component != "11" && component != "12" && component != "21" && component != "22")
            throw ConfigError("component must be one of 11, 12, 21, 22");
    }
    if (experiment == "distribution" && distribution != "finite" && distribution != "fluctuation")
        throw ConfigError("distribution must be 'finite' or 'fluctuation'");
    if (experiment == "distribution" && distribution == "finite" && model.N > 200)
        throw ConfigError("finite distribution uses the exact kernel, which is limited to N <= 200");
    if (experiment == "simulate" && curves < 1) throw ConfigError("curves must be >= 1");
    if (m_step < 0) throw ConfigError("m_step must be >= 0");
}

RunConfig load_config(const std::string& path) {
    if (path.empty()) return {};
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
    }
    return RunConfig::from_json(j);
}

std::string canonical(const RunConfig& cfg) {
    json j = cfg.to_json();
    // Execution-only fields never change results; leaving them out keeps outputs byte-identical across them.
    j.erase("out");
    j.erase("workers");
    return j.dump();
}

}  // namespace hslpp::harness
