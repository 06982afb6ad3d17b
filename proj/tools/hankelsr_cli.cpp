#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <sstream>

#include "hankelsr/experiments.hpp"
#include "hankelsr/hankel.hpp"
#include "hankelsr/linalg.hpp"
#include "hankelsr/rng.hpp"
#include "hankelsr/serialize.hpp"

using namespace hankelsr;
namespace ex = hankelsr::experiments;

namespace {

// Comma-separated values and/or lo:step:hi ranges, e.g. "8:8:120,127".
std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (tok.find(':') != std::string::npos) {
            int lo, step, hi;
            char c1, c2;
            std::istringstream rs(tok);
            if (!(rs >> lo >> c1 >> step >> c2 >> hi) || c1 != ':' ||
                c2 != ':' || step <= 0)
                throw CLI::ValidationError("expected lo:step:hi in '" + tok + "'");
            for (int v = lo; v <= hi; v += step) out.push_back(v);
        } else {
            out.push_back(std::stoi(tok));
        }
    }
    if (out.empty()) throw CLI::ValidationError("empty list");
    return out;
}

int default_workers() {
    if (const char* env = std::getenv("HANKELSR_WORKERS"))
        return std::max(1, std::atoi(env));
    return 0;
}

struct SolverFlags {
    double tol = 1e-8;
    int max_iters = 50000;
    SolverOptions options() const {
        SolverOptions o;
        o.tolerance = tol;
        o.max_iters = max_iters;
        return o;
    }
};

void add_solver_flags(CLI::App* cmd, SolverFlags& f) {
    cmd->add_option("--tol", f.tol, "residual tolerance");
    cmd->add_option("--max-iters", f.max_iters, "iteration cap");
}

void report_table(const std::vector<verify::ConditionReport>& reports,
                  std::ostream& os) {
    int holds = 0, fails = 0, na = 0;
    for (const auto& r : reports) {
        switch (r.verdict) {
            case verify::Verdict::Holds: ++holds; break;
            case verify::Verdict::Fails: ++fails; break;
            case verify::Verdict::Inapplicable: ++na; break;
        }
    }
    for (const auto& r : reports)
        os << (r.verdict == verify::Verdict::Fails ? "FAIL " : "ok   ")
           << r.name << "  margin=" << r.margin << "\n";
    os << "summary: " << holds << " hold, " << fails << " fail, " << na
       << " inapplicable\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Spectral super-resolution via low-rank Hankel recovery: solvers, "
        "single-snapshot MUSIC, and numerical verification of the recovery "
        "conditions"};
    app.require_subcommand(1);

    // gen ------------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate a random sparse signal");
    int gen_n = 64, gen_r = 8;
    std::uint64_t gen_seed = 1;
    double gen_sep = -1.0;
    std::string gen_out = "signal.json";
    gen->add_option("--n", gen_n, "half-length N");
    gen->add_option("--r", gen_r, "number of modes");
    gen->add_option("--seed", gen_seed, "rng seed");
    gen->add_option("--sep-floor", gen_sep, "minimum pairwise separation");
    gen->add_option("--out", gen_out, "output path");

    // sample ---------------------------------------------------------------
    auto* sample = app.add_subcommand("sample", "measure a signal");
    std::string sample_signal, sample_out = "meas.json", sample_kind = "entries";
    int sample_m = 65;
    std::uint64_t sample_seed = 1;
    double sample_delta = 0.0;
    sample->add_option("--signal", sample_signal, "signal JSON")->required();
    sample->add_option("--m", sample_m, "measurement count");
    sample->add_option("--sampling", sample_kind, "entries|gaussian")
        ->check(CLI::IsMember({"entries", "gaussian"}));
    sample->add_option("--seed", sample_seed, "mask / operator / noise seed");
    sample->add_option("--delta", sample_delta, "noise norm (0: noiseless)");
    sample->add_option("--out", sample_out, "output path");

    // recover ----------------------------------------------------------------
    auto* recover = app.add_subcommand("recover", "solve one instance");
    std::string rec_meas, rec_out = "recovery.json", rec_solver = "hankel";
    int rec_n = 64;
    bool rec_strict = false;
    SolverFlags rec_flags;
    recover->add_option("--meas", rec_meas, "measurement JSON")->required();
    recover->add_option("--n", rec_n, "half-length N");
    recover->add_option("--solver", rec_solver, "hankel|anm")
        ->check(CLI::IsMember({"hankel", "anm"}));
    recover->add_flag("--strict", rec_strict, "exit 3 when not converged");
    recover->add_option("--out", rec_out, "output path");
    add_solver_flags(recover, rec_flags);

    // music ------------------------------------------------------------------
    auto* music = app.add_subcommand("music", "identify frequencies");
    std::string mus_in, mus_out = "music";
    int mus_r = 8, mus_n = 64, mus_grid = 1 << 14;
    music->add_option("--in", mus_in, "signal or recovery JSON")->required();
    music->add_option("--r", mus_r, "model order R");
    music->add_option("--n", mus_n, "half-length N");
    music->add_option("--grid", mus_grid, "grid size");
    music->add_option("--out", mus_out, "output prefix (.json, .csv)");

    // phase ------------------------------------------------------------------
    auto* phase = app.add_subcommand("phase", "phase-transition sweep");
    std::string ph_m = "8:8:120,127", ph_r = "1:1:32", ph_solver = "hankel",
                ph_sampling = "entries", ph_out = "phase";
    int ph_n = 64, ph_trials = 100, ph_workers = default_workers();
    std::uint64_t ph_seed = 1;
    SolverFlags ph_flags{.tol = 1e-6, .max_iters = 2000};
    phase->add_option("--n", ph_n, "half-length N");
    phase->add_option("--m", ph_m, "M list (a,b,c or lo:step:hi)");
    phase->add_option("--r", ph_r, "R list (a,b,c or lo:step:hi)");
    phase->add_option("--trials", ph_trials, "trials per cell");
    phase->add_option("--solver", ph_solver, "hankel|anm")
        ->check(CLI::IsMember({"hankel", "anm"}));
    phase->add_option("--sampling", ph_sampling, "entries|gaussian")
        ->check(CLI::IsMember({"entries", "gaussian"}));
    phase->add_option("--seed", ph_seed, "master seed");
    phase->add_option("--workers", ph_workers,
                      "worker threads (default: HANKELSR_WORKERS or OpenMP)");
    phase->add_option("--out", ph_out, "output prefix (.csv, .json)");
    add_solver_flags(phase, ph_flags);

    // closefreq ----------------------------------------------------------------
    auto* closefreq = app.add_subcommand(
        "closefreq", "close-frequency fixture across separations");
    std::string cf_sep = "0.03,0.01,0.003,0.001,0.0003,0.0001";
    std::string cf_out = "closefreq", cf_fixture = "paper-closefreq";
    std::uint64_t cf_seed = 1;
    SolverFlags cf_flags;
    closefreq->add_option("--sep", cf_sep, "separation list");
    closefreq->add_option("--fixture", cf_fixture, "named preset")
        ->check(CLI::IsMember({"paper-closefreq"}));
    closefreq->add_option("--seed", cf_seed, "mask seed");
    closefreq->add_option("--out", cf_out, "output prefix");
    add_solver_flags(closefreq, cf_flags);

    // noisy ----------------------------------------------------------------
    auto* noisy = app.add_subcommand("noisy", "noisy fixture run");
    double no_delta = 0.1;
    std::string no_out = "noisy", no_fixture = "paper-noisy";
    std::uint64_t no_seed = 1;
    SolverFlags no_flags;
    noisy->add_option("--delta", no_delta, "noise norm");
    noisy->add_option("--fixture", no_fixture, "named preset")
        ->check(CLI::IsMember({"paper-noisy"}));
    noisy->add_option("--seed", no_seed, "mask / noise seed");
    noisy->add_option("--out", no_out, "output prefix");
    add_solver_flags(noisy, no_flags);

    // verify ----------------------------------------------------------------
    auto* verify_cmd = app.add_subcommand("verify", "run checker suites");
    std::string vf_suite = "all", vf_out;
    std::uint64_t vf_seed = 1;
    verify_cmd->add_option("--suite", vf_suite, "suite name or 'all'");
    verify_cmd->add_option("--seed", vf_seed, "seed");
    verify_cmd->add_option("--out", vf_out, "JSON-lines output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1; // usage error
    }

    try {
        if (*gen) {
            std::optional<double> floor;
            if (gen_sep > 0) floor = gen_sep;
            const SpectralSignal sig = random_instance(gen_seed, gen_n, gen_r, floor);
            Json j = to_json(sig);
            j["seed"] = gen_seed;
            save_json_file(gen_out, j);
        } else if (*sample) {
            const SpectralSignal sig = signal_from_json(load_json_file(sample_signal));
            const CVec x = synthesize(sig);
            MeasurementSet meas;
            if (sample_kind == "entries") {
                meas = sample_entries(
                    x, SampleMask::random(sig.full_length(), sample_m,
                                          derive_seed(sample_seed, 1)));
            } else {
                meas = sample_gaussian(x, sample_m, derive_seed(sample_seed, 1));
            }
            if (sample_delta > 0)
                meas = add_noise(meas, sample_delta, derive_seed(sample_seed, 2));
            Json j = to_json(meas);
            j["seed"] = sample_seed;
            save_json_file(sample_out, j);
        } else if (*recover) {
            const MeasurementSet meas =
                measurements_from_json(load_json_file(rec_meas));
            RecoveryResult res;
            if (rec_solver == "anm") {
                res = recover_anm(meas, rec_n, rec_flags.options());
            } else if (meas.noise_level > 0) {
                res = recover_hankel_nnm_noisy(meas, rec_n, rec_flags.options());
            } else {
                res = recover_hankel_nnm(meas, rec_n, rec_flags.options());
            }
            Json j = to_json(res);
            j["solver"] = rec_solver;
            j["options"] = to_json(rec_flags.options());
            save_json_file(rec_out, j);
            if (rec_strict && !res.converged) {
                std::cerr << "solver did not converge in " << res.iterations
                          << " iterations\n";
                return 3;
            }
        } else if (*music) {
            const Json j = load_json_file(mus_in);
            CVec x;
            bool damped = false;
            if (j.contains("x_hat")) {
                x = cvec_from_json(j["x_hat"], "recovery.x_hat");
            } else {
                const SpectralSignal sig = signal_from_json(j);
                for (const Mode& m : sig.modes) damped |= m.damping > 0;
                x = synthesize(sig);
            }
            MusicOptions mopts;
            mopts.grid_size = mus_grid;
            mopts.damped_input = damped;
            auto [est, profile] = run_music(x, mus_r, mus_n, mopts);
            Json out = to_json(est);
            out["spectral_gap"] = profile.spectral_gap;
            out["damped_warning"] = profile.damped_warning;
            save_json_file(mus_out + ".json", out);
            save_text_file(mus_out + ".csv", profile_to_csv(profile));
        } else if (*phase) {
            ex::PhaseConfig cfg;
            cfg.n = ph_n;
            cfg.m_values = parse_int_list(ph_m);
            cfg.r_values = parse_int_list(ph_r);
            cfg.trials = ph_trials;
            cfg.solver = ph_solver == "anm" ? ex::SolverKind::Anm
                                            : ex::SolverKind::Hankel;
            cfg.sampling = ph_sampling == "gaussian" ? ex::SamplingKind::Gaussian
                                                     : ex::SamplingKind::Entries;
            cfg.seed = ph_seed;
            cfg.workers = ph_workers;
            cfg.solver_options = ph_flags.options();
            const ex::PhaseTransitionGrid grid = ex::run_phase(cfg);
            save_text_file(ph_out + ".csv", ex::phase_to_csv(grid));
            save_text_file(ph_out + ".json", ex::phase_metadata_json(grid) + "\n");
        } else if (*closefreq) {
            std::istringstream is(cf_sep);
            std::string tok;
            Json cases = Json::array();
            while (std::getline(is, tok, ',')) {
                const double sep = std::stod(tok);
                const ex::CloseFreqCase c =
                    ex::run_closefreq_case(sep, cf_seed, cf_flags.options());
                Json cj{{"separation", c.separation},
                        {"relative_error", c.relative_error},
                        {"converged", c.converged},
                        {"iterations", c.iterations},
                        {"true_frequencies", c.true_frequencies},
                        {"music", to_json(c.music)}};
                cases.push_back(cj);
                std::ostringstream name;
                name << cf_out << "_sep" << sep << ".csv";
                save_text_file(name.str(), profile_to_csv(c.profile));
                if (!c.converged)
                    std::cerr << "warning: separation " << sep
                              << " did not converge\n";
            }
            save_json_file(cf_out + ".json",
                           Json{{"fixture", cf_fixture},
                                {"seed", cf_seed},
                                {"options", to_json(cf_flags.options())},
                                {"cases", cases}});
        } else if (*noisy) {
            const ex::NoisyCase c =
                ex::run_noisy_case(no_delta, no_seed, no_flags.options());
            Json j{{"fixture", no_fixture},
                   {"delta", c.delta},
                   {"seed", no_seed},
                   {"relative_error", c.relative_error},
                   {"converged", c.converged},
                   {"iterations", c.iterations},
                   {"trivial_zero", c.trivial_zero},
                   {"true_frequencies", c.true_frequencies},
                   {"options", to_json(no_flags.options())},
                   {"music", to_json(c.music)}};
            save_json_file(no_out + ".json", j);
            if (!c.trivial_zero)
                save_text_file(no_out + ".csv", profile_to_csv(c.profile));
            if (!c.converged) std::cerr << "warning: solver did not converge\n";
        } else if (*verify_cmd) {
            const auto reports = ex::run_verify_suite(vf_suite, vf_seed);
            report_table(reports, std::cout);
            if (!vf_out.empty()) {
                std::ostringstream os;
                for (const auto& r : reports) os << to_json(r).dump() << "\n";
                save_text_file(vf_out, os.str());
            }
            for (const auto& r : reports)
                if (r.verdict == verify::Verdict::Fails) return 2;
        }
    } catch (const SchemaError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
