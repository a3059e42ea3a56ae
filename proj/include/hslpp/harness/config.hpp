#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hslpp/lpp/model.hpp"
#include "json.hpp"

namespace hslpp::harness {

using json = nlohmann::json;

// Usage or configuration problems map to exit code 1.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string experiment = "simulate";  // simulate | exact-law | kernel-eval | converge | verify-lemmas | distribution | report
    lpp::ModelParams model;
    std::string out = "out";
    int workers = 1;
    int samples = 20;

    // simulate
    std::vector<int> m_grid;          // rows m for the lambda_1(m, N) profile; empty = m_step, 2 m_step, ...
    int m_step = 1;                   // 0 with an empty m_grid: no profile
    std::vector<double> t_grid{0.0};  // rescaled ensemble grid
    int curves = 1;

    // exact-law
    int weight_cap = 30;

    // kernel-eval: finite-N kernel at lattice points (u, x, v, y) with time labels M
    std::string component = "12";
    std::vector<int> labels;  // M_1 < ... ; empty = {N}
    std::vector<std::array<long, 4>> lattice_points;
    // limit kernel at rescaled points (s, x, t, y)
    std::vector<std::array<double, 4>> points;

    // converge
    std::vector<int> N_list{100, 1000, 10000};
    double threshold = 2e-2;

    // verify-lemmas
    std::vector<double> q_list{0.3, 0.5, 0.7};
    std::vector<double> kappa_list{0.2, 0.5, 0.8};
    double theta0 = 0.0;  // 0 = default
    double R0 = 0.0;      // 0 = default

    // distribution
    std::string distribution = "finite";  // finite | fluctuation
    std::vector<long> s_grid;             // finite: thresholds for P(lambda_1 <= s); empty = automatic
    double ks_tolerance = 0.08;
    double z_tolerance = 3.0;

    // report
    std::string report_dir;

    json to_json() const;
    static RunConfig from_json(const json& j);  // unknown keys rejected
    // Re-checks module preconditions for the chosen experiment.
    void validate() const;
};

// Defaults, overlaid by the JSON file (if any).
RunConfig load_config(const std::string& path);

// Canonical serialisation used for hashing and CSV headers; omits out and workers.
std::string canonical(const RunConfig& cfg);

}  // namespace hslpp::harness
