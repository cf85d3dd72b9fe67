#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <iostream>

#include "coherence/harness.hpp"

namespace {

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const std::size_t comma = s.find(',', start);
        const std::size_t end = comma == std::string::npos ? s.size() : comma;
        if (end > start) out.push_back(s.substr(start, end - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    using coherence::RunConfig;
    RunConfig cfg;
    std::string dims = "4";
    std::string kraus = "1..6";
    std::string base = "2";
    std::string bases = "computational,fourier";
    std::string output = "out";

    CLI::App app{"coherence experiments: Schur-Horn scans, incoherent-channel axioms, entropy plane, EUR"};
    app.set_config("--config", "", "TOML-style config file (command-line flags take precedence)");
    app.require_subcommand(1);
    app.fallthrough();

    app.add_option("--d", dims, "dimension: 4, 2..6 or 2,3,5")->capture_default_str();
    app.add_option("--rank", cfg.rank, "state rank, 0 draws it per trial")->capture_default_str();
    app.add_option("--method", cfg.method, "mixed | ginibre | spectrum-haar")->capture_default_str();
    app.add_option("--trials", cfg.trials)->capture_default_str();
    app.add_option("--steps", cfg.steps, "walk steps")->capture_default_str();
    app.add_option("--strength", cfg.strength, "walk step strength")->capture_default_str();
    app.add_option("--seed", cfg.master_seed, "master seed")->envname("COHERENCE_SEED")->capture_default_str();
    app.add_option("--base", base, "logarithm base: 2 or e")->capture_default_str();
    app.add_option("--eta", cfg.eta, "cross-measure regularization")->capture_default_str();
    app.add_option("--kraus", kraus, "Kraus operator count range, e.g. 1..6")->capture_default_str();
    app.add_flag("--strict", cfg.strict, "strictly incoherent channels");
    app.add_flag("--reuse-channel", cfg.reuse_channel, "apply the same channel at every step");
    app.add_option("--channel-steps", cfg.channel_steps, "channel applications per axiom trial")
        ->capture_default_str();
    app.add_option("--measure", cfg.measure, "C_r | C_l1 | C_2 | C_cross | c_r_partial:k | c_cross_partial:k")
        ->capture_default_str();
    app.add_option("--tol", cfg.tol, "majorization tolerance")->capture_default_str();
    app.add_option("--axiom-tol", cfg.axiom_tol)->capture_default_str();
    app.add_option("--perturb", cfg.perturb, "sh-scan Hermitian perturbation scale")->capture_default_str();
    app.add_option("--samples", cfg.samples, "curve samples")->capture_default_str();
    app.add_option("--bases", bases, "comma list of computational, fourier, haar or basis JSON files")
        ->capture_default_str();
    app.add_option("--state", cfg.state, "random | maximally-mixed | matrix JSON file")->capture_default_str();
    app.add_option("--root-order", cfg.root_order)->capture_default_str();
    app.add_option("--output,-o", output, "output directory")->capture_default_str();
    app.add_option("--workers,-j", cfg.workers)->capture_default_str();

    for (const char* name : {"sh-scan", "axioms", "plane", "walk", "eur", "gil"}) app.add_subcommand(name);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        cfg.command = coherence::parse_command(app.get_subcommands().front()->get_name());
        cfg.dims = coherence::parse_dims(dims);
        const auto k = coherence::parse_dims(kraus);
        cfg.kraus_min = *std::min_element(k.begin(), k.end());
        cfg.kraus_max = *std::max_element(k.begin(), k.end());
        if (base == "2") {
            cfg.log_base = coherence::LogBase::Two;
        } else if (base == "e") {
            cfg.log_base = coherence::LogBase::E;
        } else {
            throw coherence::ConfigError("--base must be 2 or e");
        }
        cfg.bases = split_csv(bases);
        cfg.output = output;
        return coherence::run(cfg, std::cout);
    } catch (const coherence::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const coherence::CoherenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
