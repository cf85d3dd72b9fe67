#include "coherence/harness.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <ostream>
#include <sstream>

#include "coherence/csv.hpp"
#include "coherence/entropy_plane.hpp"
#include "coherence/incoherent.hpp"
#include "coherence/majorization.hpp"
#include "coherence/matrix_io.hpp"
#include "coherence/parallel.hpp"
#include "coherence/state_gen.hpp"

namespace coherence {

namespace fs = std::filesystem;

Command parse_command(const std::string& name) {
    if (name == "sh-scan") return Command::ShScan;
    if (name == "axioms") return Command::Axioms;
    if (name == "plane") return Command::Plane;
    if (name == "walk") return Command::Walk;
    if (name == "eur") return Command::Eur;
    if (name == "gil") return Command::Gil;
    throw ConfigError("unknown command '" + name + "'");
}

const char* to_string(Command c) {
    switch (c) {
        case Command::ShScan: return "sh-scan";
        case Command::Axioms: return "axioms";
        case Command::Plane: return "plane";
        case Command::Walk: return "walk";
        case Command::Eur: return "eur";
        case Command::Gil: return "gil";
    }
    return "unknown";
}

std::vector<std::size_t> parse_dims(const std::string& text) {
    const auto to_dim = [&text](const std::string& s) -> std::size_t {
        std::size_t pos = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(s, &pos);
        } catch (const std::exception&) {
            throw ConfigError("bad dimension list '" + text + "'");
        }
        if (pos != s.size() || v < 1) throw ConfigError("bad dimension list '" + text + "'");
        return v;
    };
    std::vector<std::size_t> dims;
    if (const auto dots = text.find(".."); dots != std::string::npos) {
        const std::size_t lo = to_dim(text.substr(0, dots));
        const std::size_t hi = to_dim(text.substr(dots + 2));
        if (hi < lo) throw ConfigError("empty dimension range '" + text + "'");
        for (std::size_t d = lo; d <= hi; ++d) dims.push_back(d);
        return dims;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) dims.push_back(to_dim(item));
    if (dims.empty()) throw ConfigError("empty dimension list");
    return dims;
}

namespace {

struct Context {
    const RunConfig& cfg;
    std::ostream& log;
    EntropyConfig entropy;
};

std::size_t dim_for_trial(const RunConfig& cfg, std::size_t trial) {
    return cfg.dims[trial % cfg.dims.size()];
}

// Draws a state per the method/rank flags; "mixed" alternates generators.
DensityMatrix draw_state(const RunConfig& cfg, std::size_t d, std::size_t trial, Rng& rng,
                         bool force_full_rank = false) {
    DensityMethod method = DensityMethod::Ginibre;
    if (cfg.method == "mixed") {
        method = trial % 2 == 0 ? DensityMethod::Ginibre : DensityMethod::SpectrumHaar;
    } else {
        method = parse_density_method(cfg.method);
    }
    std::size_t rank = d;
    if (!force_full_rank) {
        if (cfg.rank == 0) {
            rank = std::uniform_int_distribution<std::size_t>(1, d)(rng);
        } else {
            rank = std::min(cfg.rank, d);
        }
    }
    return random_density(d, rank, method, rng);
}

nlohmann::json to_json(const RealVector& v) { return nlohmann::json(v); }

// ---------------------------------------------------------------- sh-scan

int run_sh_scan(const Context& ctx) {
    const RunConfig& cfg = ctx.cfg;
    struct Row {
        std::size_t d = 0;
        std::size_t rank = 0;
        std::string method;
        MajorizationReport report;
        ComplexMatrix matrix;
    };
    std::vector<Row> rows(cfg.trials);
    parallel_for(cfg.trials, cfg.workers, [&](std::size_t t) {
        Rng rng = SeedStream{cfg.master_seed, t}.engine();
        const std::size_t d = dim_for_trial(cfg, t);
        DensityMatrix rho = draw_state(cfg, d, t, rng);
        if (cfg.perturb > 0.0) rho = perturb_density(rho, cfg.perturb, rng);
        Row& r = rows[t];
        r.d = d;
        r.method = cfg.method == "mixed" ? std::string(to_string(t % 2 == 0 ? DensityMethod::Ginibre
                                                                           : DensityMethod::SpectrumHaar))
                                         : cfg.method;
        r.report = schur_horn_report(rho, cfg.tol);
        r.rank = eigh(rho).spectrum.rank(1e-12);
        if (!r.report.plain_ok || !r.report.squared_ok) r.matrix = rho.matrix();
    });

    CsvWriter csv(cfg.output / "sh_scan.csv",
                  {"trial", "d", "method", "rank", "worst_margin_plain", "k_plain", "worst_margin_squared",
                   "k_squared", "plain_ok", "squared_ok"});
    std::size_t plain_bad = 0;
    std::size_t squared_bad = 0;
    double worst_plain = 0.0;
    double worst_squared = 0.0;
    for (std::size_t t = 0; t < rows.size(); ++t) {
        const Row& r = rows[t];
        const MajorizationReport& m = r.report;
        csv.cell(t).cell(r.d).cell(std::string_view(r.method)).cell(r.rank).cell(m.worst_margin_plain)
            .cell(m.k_at_worst).cell(m.worst_margin_squared).cell(m.k_at_worst_squared).cell(m.plain_ok)
            .cell(m.squared_ok);
        csv.end_row();
        worst_plain = t == 0 ? m.worst_margin_plain : std::min(worst_plain, m.worst_margin_plain);
        worst_squared = t == 0 ? m.worst_margin_squared : std::min(worst_squared, m.worst_margin_squared);
        const auto dump = [&](const char* kind, std::size_t k, double margin) {
            nlohmann::json j = {{"seed", cfg.master_seed},
                                {"stream_index", t},
                                {"kind", kind},
                                {"matrix", matrix_to_json(r.matrix)},
                                {"spectrum", to_json(m.spectrum)},
                                {"diagonal", to_json(m.diagonal)},
                                {"k", k},
                                {"margin", margin}};
            write_json_file(cfg.output / ("sh_violation_" + std::to_string(t) + "_" + kind + ".json"), j);
        };
        if (!m.plain_ok) {
            ++plain_bad;
            dump("plain", m.k_at_worst, m.worst_margin_plain);
        }
        if (!m.squared_ok) {
            ++squared_bad;
            dump("squared", m.k_at_worst_squared, m.worst_margin_squared);
        }
    }
    ctx.log << "sh-scan: " << cfg.trials << " trials, plain violations " << plain_bad
            << " (worst margin " << format_real(worst_plain) << "), squared violations " << squared_bad
            << " (worst margin " << format_real(worst_squared) << ")\n";
    return plain_bad + squared_bad == 0 ? 0 : 1;
}

// ----------------------------------------------------------------- axioms

int run_axioms(const Context& ctx) {
    const RunConfig& cfg = ctx.cfg;
    AxiomSuiteConfig suite;
    try {
        suite.measure = MeasureId::parse(cfg.measure);
    } catch (const CoherenceError& e) {
        throw ConfigError(e.what());
    }
    suite.dims = cfg.dims;
    suite.trials = cfg.trials;
    suite.kraus_min = cfg.kraus_min;
    suite.kraus_max = cfg.kraus_max;
    suite.strict = cfg.strict;
    suite.entropy = ctx.entropy;
    suite.tol = cfg.axiom_tol;
    suite.steps = cfg.channel_steps;
    suite.reuse_channel = cfg.reuse_channel;
    suite.master_seed = cfg.master_seed;
    suite.workers = cfg.workers;
    for (std::size_t d : cfg.dims) {
        if (d < 2) throw ConfigError("axioms needs every d >= 2");
    }
    if (suite.measure.kind == MeasureKind::RelPartial || suite.measure.kind == MeasureKind::CrossPartial) {
        for (std::size_t d : cfg.dims) {
            if (suite.measure.k >= d) throw ConfigError("partial order k must be below every d");
        }
    }

    const AxiomReport report = axiom_suite(suite);

    CsvWriter csv(cfg.output / "axioms.csv", {"measure", "axiom", "checked", "passed", "worst_violation"});
    for (std::size_t a = 0; a < kAxiomCount; ++a) {
        const AxiomTally& t = report.tallies[a];
        if (t.checked == 0) continue;
        csv.cell(std::string_view(suite.measure.name())).cell(std::string_view(to_string(static_cast<Axiom>(a))))
            .cell(t.checked).cell(t.passed).cell(t.worst_violation);
        csv.end_row();
    }
    CsvWriter asym(cfg.output / "axioms_asymmetry.csv", {"statistic", "value"});
    asym.cell(std::string_view("samples")).cell(report.asymmetry_samples);
    asym.end_row();
    asym.cell(std::string_view("mean_delta_a")).cell(report.mean_delta_a);
    asym.end_row();
    asym.cell(std::string_view("mean_delta_b")).cell(report.mean_delta_b);
    asym.end_row();
    asym.cell(std::string_view("mean_delta_a_strong")).cell(report.mean_delta_a_strong);
    asym.end_row();
    asym.cell(std::string_view("mean_delta_b_strong")).cell(report.mean_delta_b_strong);
    asym.end_row();

    nlohmann::json failures = nlohmann::json::array();
    for (const AxiomFailure& f : report.failures) {
        nlohmann::json kraus = nlohmann::json::array();
        for (const ComplexMatrix& k : f.kraus) kraus.push_back(matrix_to_json(k));
        failures.push_back({{"seed", f.seed},
                            {"stream_index", f.stream_index},
                            {"measure", f.measure},
                            {"axiom", to_string(f.axiom)},
                            {"margin", std::isfinite(f.margin) ? nlohmann::json(f.margin) : nlohmann::json("inf")},
                            {"state", matrix_to_json(f.state)},
                            {"kraus", kraus}});
    }
    if (!failures.empty()) write_json_file(cfg.output / "axiom_failures.json", failures);

    ctx.log << "axioms: " << suite.measure.name() << ", " << report.trials << " trials, "
            << report.failure_count() << " failures; mean dA " << format_real(report.mean_delta_a)
            << ", mean dB " << format_real(report.mean_delta_b) << " over " << report.asymmetry_samples
            << " samples\n";
    return report.failure_count() == 0 ? 0 : 1;
}

// ------------------------------------------------------------------ plane

int run_plane(const Context& ctx) {
    const RunConfig& cfg = ctx.cfg;
    for (std::size_t d : cfg.dims) {
        if (d < 2) throw ConfigError("plane needs every d >= 2");
    }
    for (std::size_t d : cfg.dims) {
        for (FamilyTag tag : kAllFamilies) {
            if (!CurveFamily::valid_for(tag, d)) continue;
            const CurveFamily fam(tag, d);
            CsvWriter csv(cfg.output / ("plane_" + std::string(to_string(tag)) + "_d" + std::to_string(d) + ".csv"),
                          {"family", "d", "t", "s2", "svn"});
            for (const BoundarySample& s : boundary_samples(fam, cfg.samples, ctx.entropy)) {
                csv.cell(std::string_view(to_string(tag))).cell(d).cell(s.t).cell(s.point.s2).cell(s.point.svn);
                csv.end_row();
            }
        }
    }

    struct Row {
        std::size_t d = 0;
        std::size_t rank = 0;
        double s2 = 0, svn = 0, cl1 = 0, cr = 0, c2 = 0;
    };
    std::vector<Row> rows(cfg.trials);
    parallel_for(cfg.trials, cfg.workers, [&](std::size_t t) {
        Rng rng = SeedStream{cfg.master_seed, t}.engine();
        const std::size_t d = dim_for_trial(cfg, t);
        const DensityMatrix rho = draw_state(cfg, d, t, rng);
        const EigenDecomposition e = eigh(rho);
        Row& r = rows[t];
        r.d = d;
        r.rank = e.spectrum.rank(1e-12);
        const PlanePoint p = plane_point(e.spectrum, ctx.entropy);
        r.s2 = p.s2;
        r.svn = p.svn;
        r.cl1 = c_l1(rho);
        r.cr = c_rel_ent(rho, ctx.entropy);
        r.c2 = c2_measure(rho);
    });
    CsvWriter scatter(cfg.output / "plane_scatter.csv", {"seed", "d", "rank", "s2", "svn", "c_l1", "c_r", "c2"});
    for (const Row& r : rows) {
        scatter.cell(cfg.master_seed).cell(r.d).cell(r.rank).cell(r.s2).cell(r.svn).cell(r.cl1).cell(r.cr)
            .cell(r.c2);
        scatter.end_row();
    }
    ctx.log << "plane: boundary curves with " << cfg.samples << " samples, " << cfg.trials
            << " scatter states\n";
    return 0;
}

// ------------------------------------------------------------------- walk

DensityMatrix fixed_or_random_state(const RunConfig& cfg, std::size_t d, Rng& rng) {
    if (cfg.state == "maximally-mixed") return DensityMatrix::maximally_mixed(d);
    if (cfg.state == "random") return draw_state(cfg, d, 0, rng);
    DensityMatrix rho = validate_density(read_matrix_file(cfg.state));
    if (rho.dim() != d) throw ConfigError("state file dimension does not match --d");
    return rho;
}

int run_walk(const Context& ctx) {
    const RunConfig& cfg = ctx.cfg;
    const std::size_t d = cfg.dims.front();
    Rng rng = SeedStream{cfg.master_seed, 0}.substream(1).engine();
    const DensityMatrix rho0 = fixed_or_random_state(cfg, d, rng);
    const Trajectory traj = coherence_walk(rho0, cfg.steps, cfg.strength, SeedStream{cfg.master_seed, 0});

    CsvWriter csv(cfg.output / "walk.csv", {"step", "accepted", "scale", "c_l1", "s2", "svn", "c_r", "c2"});
    std::size_t accepted = 0;
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        const WalkRecord& r = traj.step_records[i];
        const DensityMatrix& s = traj.states[i];
        const double svn = ctx.entropy.log_base == LogBase::Two ? r.svn : von_neumann_entropy(s, ctx.entropy);
        csv.cell(r.step).cell(r.accepted).cell(r.scale).cell(r.c_l1).cell(r.s2).cell(svn)
            .cell(c_rel_ent(s, ctx.entropy)).cell(c2_measure(s));
        csv.end_row();
        if (i > 0 && r.accepted) ++accepted;
    }
    ctx.log << "walk: d=" << d << ", " << cfg.steps << " steps, " << accepted << " accepted, final C_l1 "
            << format_real(traj.step_records.back().c_l1) << "\n";
    return 0;
}

// -------------------------------------------------------------------- eur

std::vector<MeasurementBasis> make_bases(const RunConfig& cfg, std::size_t d, Rng& rng) {
    std::vector<MeasurementBasis> out;
    for (const std::string& name : cfg.bases) {
        if (name == "computational") {
            out.push_back(MeasurementBasis::computational(d));
        } else if (name == "fourier") {
            out.push_back(MeasurementBasis::fourier(d));
        } else if (name == "haar") {
            out.push_back(MeasurementBasis::haar(d, rng));
        } else {
            const ComplexMatrix m = read_matrix_file(name);
            if (static_cast<std::size_t>(m.rows()) != d) throw ConfigError("basis file " + name + " has wrong dim");
            out.emplace_back(m, fs::path(name).stem().string());
        }
    }
    return out;
}

int run_eur(const Context& ctx) {
    const RunConfig& cfg = ctx.cfg;
    if (cfg.bases.size() < 2) throw ConfigError("eur needs at least two bases");
    for (std::size_t d : cfg.dims) {
        if (d < 2) throw ConfigError("eur needs every d >= 2");
    }
    for (const std::string& name : cfg.bases) {
        if (name != "computational" && name != "fourier" && name != "haar" && !fs::exists(name)) {
            throw ConfigError("unknown basis '" + name + "'");
        }
    }
    const std::size_t nb = cfg.bases.size();

    struct Row {
        std::size_t d = 0;
        EurReport report;
    };
    std::vector<Row> rows(cfg.trials);
    parallel_for(cfg.trials, cfg.workers, [&](std::size_t t) {
        Rng rng = SeedStream{cfg.master_seed, t}.engine();
        const std::size_t d = dim_for_trial(cfg, t);
        const DensityMatrix rho = fixed_or_random_state(cfg, d, rng);
        const auto bases = make_bases(cfg, d, rng);
        rows[t] = {d, refined_eur_report(rho, bases, ctx.entropy, cfg.root_order)};
    });

    std::vector<std::string> header{"seed", "d", "basis_labels"};
    for (std::size_t j = 1; j <= nb; ++j) header.push_back("H_" + std::to_string(j));
    for (std::size_t j = 1; j <= nb; ++j) header.push_back("lambda_max_" + std::to_string(j));
    for (const char* h : {"lhs", "refined_rhs", "mu_rhs", "holds", "refined_tighter"}) header.emplace_back(h);
    CsvWriter csv(cfg.output / "eur.csv", header);
    std::size_t violations = 0;
    std::size_t tighter = 0;
    for (const Row& r : rows) {
        std::string labels;
        for (const auto& l : r.report.labels) labels += (labels.empty() ? "" : "|") + l;
        csv.cell(cfg.master_seed).cell(r.d).cell(std::string_view(labels));
        for (double h : r.report.entropies) csv.cell(h);
        for (double l : r.report.lambda_max) csv.cell(l);
        csv.cell(r.report.lhs).cell(r.report.refined_rhs);
        if (r.report.mu_rhs) {
            csv.cell(*r.report.mu_rhs);
        } else {
            csv.cell(std::string_view(""));
        }
        csv.cell(r.report.holds).cell(r.report.refined_tighter);
        csv.end_row();
        if (!r.report.holds) ++violations;
        if (r.report.refined_tighter) ++tighter;
    }

    CsvWriter curve(cfg.output / "eur_curve.csv", {"d", "a", "x", "y"});
    for (std::size_t d : cfg.dims) {
        const double lo = 1.0 / static_cast<double>(d);
        for (std::size_t i = 0; i < cfg.samples; ++i) {
            const double a = 1.0 - (1.0 - lo) * static_cast<double>(i) / static_cast<double>(cfg.samples - 1);
            const auto [x, y] = eur_curve_point(d, std::max(a, lo), ctx.entropy);
            curve.cell(d).cell(a).cell(x).cell(y);
            curve.end_row();
        }
    }
    ctx.log << "eur: " << cfg.trials << " draws, " << violations << " violations, refined bound tighter in "
            << tighter << " draws\n";
    return violations == 0 ? 0 : 1;
}

// -------------------------------------------------------------------- gil

int run_gil(const Context& ctx) {
    const RunConfig& cfg = ctx.cfg;
    for (std::size_t d : cfg.dims) {
        if (d < 2) throw ConfigError("gil needs every d >= 2");
    }
    std::vector<GilReport> reports(cfg.trials);
    parallel_for(cfg.trials, cfg.workers, [&](std::size_t t) {
        Rng rng = SeedStream{cfg.master_seed, t}.engine();
        const DensityMatrix rho = draw_state(cfg, dim_for_trial(cfg, t), t, rng, true);
        reports[t] = gil_report(rho, cfg.tol);
    });

    std::map<std::pair<std::size_t, GilVerdict>, std::size_t> counts;
    std::map<std::size_t, std::size_t> per_dim;
    CsvWriter trials(cfg.output / "gil_trials.csv", {"trial", "d", "verdict", "min_difference", "max_difference"});
    for (std::size_t t = 0; t < reports.size(); ++t) {
        const GilReport& r = reports[t];
        const std::size_t d = dim_for_trial(cfg, t);
        ++counts[{d, r.verdict}];
        ++per_dim[d];
        const auto [lo, hi] = std::minmax_element(r.differences.begin(), r.differences.end());
        trials.cell(t).cell(d).cell(to_string(r.verdict)).cell(*lo).cell(*hi);
        trials.end_row();
    }
    CsvWriter freq(cfg.output / "gil_frequency.csv", {"d", "verdict", "count", "fraction"});
    for (const auto& [d, total] : per_dim) {
        for (GilVerdict v : {GilVerdict::ForwardHolds, GilVerdict::ReverseHolds, GilVerdict::Mixed}) {
            const auto it = counts.find({d, v});
            const std::size_t c = it == counts.end() ? 0 : it->second;
            freq.cell(d).cell(to_string(v)).cell(c).cell(static_cast<double>(c) / static_cast<double>(total));
            freq.end_row();
        }
    }
    ctx.log << "gil: " << cfg.trials << " trials tallied into gil_frequency.csv\n";
    return 0;
}

void validate(const RunConfig& cfg) {
    if (cfg.dims.empty()) throw ConfigError("no dimensions given");
    for (std::size_t d : cfg.dims) {
        if (d < 1 || d > 256) throw ConfigError("dimension out of range [1, 256]");
    }
    if (cfg.trials < 1) throw ConfigError("trials must be positive");
    if (cfg.workers < 1) throw ConfigError("workers must be positive");
    if (cfg.samples < 2) throw ConfigError("samples must be at least 2");
    if (cfg.steps < 1) throw ConfigError("steps must be positive");
    if (!(cfg.strength >= 0.0)) throw ConfigError("strength must be nonnegative");
    if (!(cfg.eta >= 0.0 && cfg.eta < 1.0)) throw ConfigError("eta must lie in [0, 1)");
    if (!(cfg.perturb >= 0.0)) throw ConfigError("perturb must be nonnegative");
    if (!(cfg.tol >= 0.0) || !(cfg.axiom_tol >= 0.0)) throw ConfigError("tolerances must be nonnegative");
    if (cfg.kraus_min < 1 || cfg.kraus_max < cfg.kraus_min) throw ConfigError("bad Kraus range");
    if (cfg.channel_steps < 1) throw ConfigError("channel steps must be positive");
    if (cfg.root_order < 1) throw ConfigError("root order must be positive");
    if (cfg.method != "mixed" && cfg.method != "ginibre" && cfg.method != "spectrum-haar") {
        throw ConfigError("unknown method '" + cfg.method + "'");
    }
}

}  // namespace

int run(const RunConfig& config, std::ostream& log) {
    validate(config);
    std::error_code ec;
    fs::create_directories(config.output, ec);
    if (ec) throw ConfigError("cannot create output directory " + config.output.string());

    Context ctx{config, log, {}};
    ctx.entropy.log_base = config.log_base;
    ctx.entropy.regularization_eta = config.eta;

    switch (config.command) {
        case Command::ShScan: return run_sh_scan(ctx);
        case Command::Axioms: return run_axioms(ctx);
        case Command::Plane: return run_plane(ctx);
        case Command::Walk: return run_walk(ctx);
        case Command::Eur: return run_eur(ctx);
        case Command::Gil: return run_gil(ctx);
    }
    return 0;
}

}  // namespace coherence
