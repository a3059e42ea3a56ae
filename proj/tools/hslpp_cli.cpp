#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "hslpp/harness/commands.hpp"

using namespace hslpp::harness;

int main(int argc, char** argv) {
    CLI::App app{"Half-space geometric LPP: simulation, exact kernels and their scaling limits"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::string config_path, out;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers, samples, N;
    std::optional<double> q, c, kappa, varpi;
    bool critical = false;
    std::string distribution;
    app.add_option("--config", config_path, "JSON config; flags override its fields")->check(CLI::ExistingFile);
    app.add_option("--seed", seed, "64-bit RNG seed");
    app.add_option("--workers", workers, "worker threads (results do not depend on it)");
    app.add_option("--out", out, "output directory");
    app.add_option("--samples", samples, "Monte Carlo replicas");
    app.add_option("--N", N, "system size");
    app.add_option("--q", q, "bulk parameter");
    app.add_option("--c", c, "boundary parameter");
    app.add_option("--kappa", kappa, "bulk location");
    app.add_option("--varpi", varpi, "critical shift (implies --critical)");
    app.add_flag("--critical", critical, "critical boundary scaling");
    app.add_option("--distribution", distribution, "distribution mode")->check(CLI::IsMember({"finite", "fluctuation"}));

    std::string report_dir;
    for (const char* name :
         {"simulate", "exact-law", "kernel-eval", "converge", "verify-lemmas", "distribution", "report"}) {
        auto* sub = app.add_subcommand(name);
        if (std::string(name) == "report") sub->add_option("dir", report_dir, "directory of experiment outputs")->required();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kUsage;
    }

    RunConfig cfg;
    try {
        cfg = load_config(config_path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kUsage;
    }
    cfg.experiment = app.get_subcommands().front()->get_name();
    if (seed) cfg.model.seed = *seed;
    if (workers) cfg.workers = *workers;
    if (!out.empty()) cfg.out = out;
    if (samples) cfg.samples = *samples;
    if (N) cfg.model.N = *N;
    if (q) cfg.model.q = *q;
    if (c) cfg.model.c = *c;
    if (kappa) cfg.model.kappa = *kappa;
    if (varpi) {
        cfg.model.varpi = *varpi;
        cfg.model.critical_mode = true;
    }
    if (critical) cfg.model.critical_mode = true;
    if (!distribution.empty()) cfg.distribution = distribution;
    if (cfg.experiment == "report") cfg.report_dir = report_dir;
    return run_and_report(cfg);
}
