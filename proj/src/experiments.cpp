#include "hankelsr/experiments.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hankelsr/hankel.hpp"
#include "hankelsr/linalg.hpp"
#include "hankelsr/rng.hpp"

namespace hankelsr::experiments {

namespace {

bool run_single_trial(const PhaseConfig& cfg, int m, int r,
                      std::uint64_t trial_seed) {
    const int nf = 2 * cfg.n - 1;
    const SpectralSignal sig =
        random_instance(derive_seed(trial_seed, 1), cfg.n, r);
    const CVec x = synthesize(sig);

    MeasurementSet meas;
    if (cfg.sampling == SamplingKind::Entries) {
        meas = sample_entries(
            x, SampleMask::random(nf, m, derive_seed(trial_seed, 2)));
    } else {
        meas = sample_gaussian(x, m, derive_seed(trial_seed, 2));
    }

    IterationCallback stop;
    const double target = cfg.success_threshold / 3.0;
    if (cfg.early_success_stop) {
        stop = [&x, target](int iter, const CVec& xi) {
            return iter % 25 == 0 && relative_error(xi, x) <= target;
        };
    }

    RecoveryResult res;
    if (cfg.solver == SolverKind::Hankel) {
        res = recover_hankel_nnm(meas, cfg.n, cfg.solver_options, stop);
    } else {
        if (cfg.sampling != SamplingKind::Entries)
            throw std::invalid_argument("phase: the ANM baseline samples entries");
        res = recover_anm(meas, cfg.n, cfg.solver_options, stop);
    }
    return relative_error(res.x_hat, x) <= cfg.success_threshold;
}

} // namespace

PhaseTransitionGrid run_phase(const PhaseConfig& cfg) {
    if (cfg.m_values.empty() || cfg.r_values.empty() || cfg.trials < 1)
        throw std::invalid_argument("phase: empty grid");
    for (int m : cfg.m_values)
        if (m < 1 || m > 2 * cfg.n - 1)
            throw std::invalid_argument("phase: M out of range");

    PhaseTransitionGrid grid;
    grid.config = cfg;
    const int cells = static_cast<int>(cfg.m_values.size() * cfg.r_values.size());
    grid.success_counts.assign(cells, 0);

    const int nthreads = cfg.workers > 0 ? cfg.workers : omp_get_max_threads();
    const int jobs = cells * cfg.trials;
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
    for (int job = 0; job < jobs; ++job) {
        const int cell = job / cfg.trials;
        const int trial = job % cfg.trials;
        const int mi = cell / static_cast<int>(cfg.r_values.size());
        const int ri = cell % static_cast<int>(cfg.r_values.size());
        const int m = cfg.m_values[mi];
        const int r = cfg.r_values[ri];
        const std::uint64_t trial_seed = derive_seed(cfg.seed, m, r, trial);
        const bool ok = run_single_trial(cfg, m, r, trial_seed);
        if (ok) {
#pragma omp atomic
            ++grid.success_counts[cell];
        }
    }
    return grid;
}

std::string phase_to_csv(const PhaseTransitionGrid& grid) {
    std::ostringstream os;
    os << "m,r,successes,trials\n";
    for (std::size_t mi = 0; mi < grid.config.m_values.size(); ++mi)
        for (std::size_t ri = 0; ri < grid.config.r_values.size(); ++ri)
            os << grid.config.m_values[mi] << "," << grid.config.r_values[ri]
               << ","
               << grid.count(static_cast<int>(mi), static_cast<int>(ri)) << ","
               << grid.config.trials << "\n";
    return os.str();
}

std::string phase_metadata_json(const PhaseTransitionGrid& grid) {
    std::ostringstream os;
    const PhaseConfig& c = grid.config;
    os << "{\"n\":" << c.n << ",\"trials\":" << c.trials << ",\"seed\":" << c.seed
       << ",\"solver\":\"" << (c.solver == SolverKind::Hankel ? "hankel" : "anm")
       << "\",\"sampling\":\""
       << (c.sampling == SamplingKind::Entries ? "entries" : "gaussian")
       << "\",\"success_threshold\":" << c.success_threshold
       << ",\"max_iters\":" << c.solver_options.max_iters
       << ",\"tolerance\":" << c.solver_options.tolerance << "}";
    return os.str();
}

namespace {

constexpr double kCloseFreqBase[7] = {0.3923, 0.9988, 0.3437, 0.9086,
                                      0.6977, 0.0298, 0.4813};
constexpr double kCloseFreqMags[8] = {3.1800, 2.5894, 2.1941, 2.9080,
                                      3.9831, 4.0175, 4.1259, 3.6182};
constexpr double kCloseFreqPhases[8] = {4.1097, 5.4612, 5.4272, 4.7873,
                                        1.0384, 0.4994, 3.1975, 0.5846};

constexpr double kNoisyFreqs[8] = {0.8822, 0.0018, 0.6802, 0.2825,
                                   0.8214, 0.2941, 0.3901, 0.6852};
constexpr double kNoisyMags[8] = {3.9891, 3.6159, 3.7868, 3.9261,
                                  2.1606, 2.4933, 3.2741, 3.0539};
constexpr double kNoisyPhases[8] = {5.2378, 1.3855, 2.0064, 1.3784,
                                    0.1762, 4.2739, 1.7979, 0.1935};

SpectralSignal fixture_from(const double* freqs, const double* mags,
                            const double* phases, int count) {
    SpectralSignal sig;
    sig.n_half = 64;
    for (int k = 0; k < count; ++k) {
        Mode m;
        m.freq = freqs[k];
        m.coeff = std::polar(mags[k], phases[k]);
        sig.modes.push_back(m);
    }
    return sig;
}

} // namespace

SpectralSignal closefreq_fixture(double separation) {
    if (!(separation > 0.0 && separation < 0.5))
        throw std::invalid_argument("closefreq: separation must be in (0, 0.5)");
    double freqs[8];
    std::copy(std::begin(kCloseFreqBase), std::end(kCloseFreqBase), freqs);
    freqs[7] = kCloseFreqBase[2] + separation; // eighth rides on the third
    return fixture_from(freqs, kCloseFreqMags, kCloseFreqPhases, 8);
}

SpectralSignal noisy_fixture() {
    return fixture_from(kNoisyFreqs, kNoisyMags, kNoisyPhases, 8);
}

CloseFreqCase run_closefreq_case(double separation, std::uint64_t mask_seed,
                                 const SolverOptions& opts,
                                 const MusicOptions& mopts) {
    const SpectralSignal sig = closefreq_fixture(separation);
    const CVec x = synthesize(sig);
    const SampleMask mask = SampleMask::random(127, 65, mask_seed);
    const RecoveryResult res = recover_hankel_nnm(sample_entries(x, mask), 64, opts);

    CloseFreqCase out;
    out.separation = separation;
    out.relative_error = relative_error(res.x_hat, x);
    out.converged = res.converged;
    out.iterations = res.iterations;
    for (const Mode& m : sig.modes) out.true_frequencies.push_back(m.freq);
    std::sort(out.true_frequencies.begin(), out.true_frequencies.end());
    auto [est, profile] = run_music(res.x_hat, 8, 64, mopts);
    out.music = std::move(est);
    out.profile = std::move(profile);
    return out;
}

NoisyCase run_noisy_case(double delta, std::uint64_t seed,
                         const SolverOptions& opts, const MusicOptions& mopts) {
    if (delta <= 0.0)
        throw std::invalid_argument("noisy: delta must be positive");
    const SpectralSignal sig = noisy_fixture();
    const CVec x = synthesize(sig);
    const SampleMask mask = SampleMask::random(127, 65, derive_seed(seed, 1));
    MeasurementSet meas = sample_entries(x, mask);
    meas = add_noise(meas, delta, derive_seed(seed, 2));

    NoisyCase out;
    out.delta = delta;
    const RecoveryResult res = recover_hankel_nnm_noisy(meas, 64, opts);
    out.relative_error = relative_error(res.x_hat, x);
    out.converged = res.converged;
    out.iterations = res.iterations;
    out.trivial_zero = res.x_hat.norm() < 1e-12 && meas.values.norm() <= delta;
    for (const Mode& m : sig.modes) out.true_frequencies.push_back(m.freq);
    std::sort(out.true_frequencies.begin(), out.true_frequencies.end());
    if (!out.trivial_zero) {
        auto [est, profile] = run_music(res.x_hat, 8, 64, mopts);
        out.music = std::move(est);
        out.profile = std::move(profile);
    }
    return out;
}

namespace {

using verify::ConditionReport;
using verify::Verdict;

void suite_theorem1(std::uint64_t seed, std::vector<ConditionReport>& out) {
    // Random masks and null-space probes for every R the bound guarantees.
    for (int n : {8, 16, 32}) {
        const int nf = 2 * n - 1;
        for (int mask_i = 0; mask_i < 10; ++mask_i) {
            const std::uint64_t ms = derive_seed(seed, n, mask_i);
            Rng rng(ms);
            const int m = 1 + static_cast<int>(rng.integer(nf - 1));
            const SampleMask mask = SampleMask::random(nf, m, derive_seed(ms, 1));
            const auto bound = verify::worst_case_bound(mask, n);
            out.push_back(bound.report);
            for (int probe = 0; probe < 5; ++probe) {
                const auto z = verify::NullSpaceVector::random(
                    mask, derive_seed(ms, 2, probe));
                for (int r = 1; r <= bound.max_guaranteed_rank; ++r)
                    out.push_back(verify::check_strong_nullspace(z, r, n));
            }
        }
    }
}

void suite_theorem2(std::uint64_t seed, std::vector<ConditionReport>& out) {
    const int n = 1024;
    const int r = n - static_cast<int>(std::ceil(
                          3.0 * std::sqrt(n * std::log(static_cast<double>(n)))));
    int holds = 0;
    const int draws = 100;
    for (int i = 0; i < draws; ++i) {
        ConditionReport rep =
            verify::orthogonal_atoms_margin(n, r, derive_seed(seed, 7, i));
        if (rep.verdict == Verdict::Holds) ++holds;
    }
    ConditionReport agg;
    agg.name = "theorem2.monte_carlo";
    agg.margin = holds - 95.0;
    agg.details["holds"] = holds;
    agg.details["draws"] = draws;
    agg.details["rank"] = r;
    agg.verdict = holds >= 95 ? Verdict::Holds : Verdict::Fails;
    out.push_back(agg);

    // Adversarial aligned phases at R = N/2: the margin must vanish.
    const auto tight = verify::tightness_instance(n, n / 2);
    ConditionReport adv = tight.report;
    adv.name = "theorem2.adversarial_half";
    adv.verdict = adv.margin <= 0.0 ? Verdict::Holds : Verdict::Fails;
    out.push_back(adv);
}

void suite_theorem3(std::uint64_t seed, std::vector<ConditionReport>& out) {
    const int n = 4096;
    const double d_rel = 2.0;
    const int r = verify::perturbation_rank(n, d_rel, 1.0);
    int holds = 0;
    const int draws = 100;
    for (int i = 0; i < draws; ++i) {
        verify::PerturbationOptions p;
        p.coeff_ratio = 1.0;
        p.close_separation = 1e-6;
        ConditionReport rep =
            verify::perturbation_margin(n, r, p, derive_seed(seed, 11, i));
        if (rep.verdict == Verdict::Holds) ++holds;
    }
    ConditionReport agg;
    agg.name = "theorem3.monte_carlo";
    agg.margin = holds - 90.0;
    agg.details["holds"] = holds;
    agg.details["draws"] = draws;
    agg.details["rank"] = r;
    agg.verdict = holds >= 90 ? Verdict::Holds : Verdict::Fails;
    out.push_back(agg);
}

void suite_theorem4(std::uint64_t seed, std::vector<ConditionReport>& out) {
    (void)seed;
    const int n = 64;
    ConditionReport rep;
    rep.name = "theorem4.separation_bound";
    const double bound = verify::separation_lower_bound(n);
    const double dist = verify::atom_distance(n, 0.3437, 0.3438);
    rep.details["bound"] = bound;
    rep.details["atom_distance_at_1e-4"] = dist;
    rep.margin = bound - dist; // positive: the pair violates the bound
    rep.verdict = rep.margin > 0.0 ? Verdict::Holds : Verdict::Fails;
    out.push_back(rep);
}

void suite_theorem5(std::uint64_t seed, std::vector<ConditionReport>& out) {
    int checked = 0, violations = 0, applicable = 0;
    for (int i = 0; i < 500; ++i) {
        Rng rng(derive_seed(seed, 13, i));
        const int m = 2 + static_cast<int>(rng.integer(11)); // up to 12
        const int nn = 2 + static_cast<int>(rng.integer(14)); // up to 15
        CMat a(m, nn);
        for (int c = 0; c < nn; ++c)
            for (int r = 0; r < m; ++r) a(r, c) = rng.complex_normal();
        const int t = std::min(m, nn);
        for (int k = 1; k < t; ++k) {
            ConditionReport corner = verify::nuclear_submatrix_inequality(a, k);
            ++checked;
            if (corner.verdict == Verdict::Fails) ++violations;
            if (corner.verdict != Verdict::Inapplicable) ++applicable;
            if (corner.verdict == Verdict::Inapplicable) continue;
            for (int pj = 0; pj < 4; ++pj) {
                const CMat p =
                    verify::random_projector(m, k, derive_seed(seed, 17, i * 97 + k * 13 + pj));
                const CMat q =
                    verify::random_projector(nn, k, derive_seed(seed, 19, i * 89 + k * 11 + pj));
                ConditionReport proj =
                    verify::nuclear_submatrix_inequality(a, k, &p, &q);
                ++checked;
                if (proj.verdict == Verdict::Fails) ++violations;
            }
        }
    }
    ConditionReport agg;
    agg.name = "theorem5.monte_carlo";
    agg.margin = violations == 0 ? 1.0 : -static_cast<double>(violations);
    agg.details["checked"] = checked;
    agg.details["applicable"] = applicable;
    agg.details["violations"] = violations;
    agg.verdict = violations == 0 ? Verdict::Holds : Verdict::Fails;
    out.push_back(agg);
}

void suite_lemma7(std::uint64_t seed, std::vector<ConditionReport>& out) {
    int violations = 0, checked = 0;
    for (int i = 0; i < 200; ++i) {
        Rng rng(derive_seed(seed, 23, i));
        const int m = 2 + static_cast<int>(rng.integer(7));
        const int nn = 2 + static_cast<int>(rng.integer(7));
        CMat x(m, nn), y(m, nn);
        for (int c = 0; c < nn; ++c)
            for (int r = 0; r < m; ++r) {
                x(r, c) = rng.complex_normal();
                y(r, c) = rng.complex_normal();
            }
        const int t = std::min(m, nn);
        for (int k = 1; k <= t; ++k) {
            ConditionReport rep = verify::sv_difference_majorization(x, y, k);
            ++checked;
            if (rep.verdict == Verdict::Fails) ++violations;
        }
    }
    ConditionReport agg;
    agg.name = "lemma7.monte_carlo";
    agg.margin = violations == 0 ? 1.0 : -static_cast<double>(violations);
    agg.details["checked"] = checked;
    agg.details["violations"] = violations;
    agg.verdict = violations == 0 ? Verdict::Holds : Verdict::Fails;
    out.push_back(agg);
}

void suite_appendix_b(std::uint64_t seed, std::vector<ConditionReport>& out) {
    out.push_back(verify::appendix_b_counterexample(0.5, M_PI)); // real t = 0.5
    out.push_back(verify::appendix_b_counterexample(0.5, 0.0));  // real t = -0.5
    int bad = 0;
    for (int i = 0; i < 100; ++i) {
        Rng rng(derive_seed(seed, 29, i));
        ConditionReport rep = verify::appendix_b_counterexample(
            2.0 * rng.uniform(), 2.0 * M_PI * rng.uniform());
        if (rep.verdict != Verdict::Holds) ++bad;
    }
    ConditionReport agg;
    agg.name = "appendixB.monte_carlo";
    agg.margin = bad == 0 ? 1.0 : -static_cast<double>(bad);
    agg.details["mismatches"] = bad;
    agg.verdict = bad == 0 ? Verdict::Holds : Verdict::Fails;
    out.push_back(agg);
}

void suite_subdiff(std::uint64_t seed, std::vector<ConditionReport>& out) {
    int violations = 0;
    int rejected = 0;
    for (int i = 0; i < 100; ++i) {
        Rng rng(derive_seed(seed, 31, i));
        const int m = 3 + static_cast<int>(rng.integer(4));
        const int nn = 3 + static_cast<int>(rng.integer(4));
        const int r = 1 + static_cast<int>(rng.integer(std::min(m, nn) - 1));
        CMat left(m, r), right(nn, r);
        for (int c = 0; c < r; ++c) {
            for (int rr = 0; rr < m; ++rr) left(rr, c) = rng.complex_normal();
            for (int rr = 0; rr < nn; ++rr) right(rr, c) = rng.complex_normal();
        }
        const CMat x = left * right.adjoint();
        const CMat z = verify::random_subgradient(x, derive_seed(seed, 37, i));
        ConditionReport member = verify::subdifferential_membership(x, z);
        if (member.verdict != Verdict::Holds) ++violations;
        // Subgradient inequality probes.
        for (int probe = 0; probe < 10; ++probe) {
            Rng prng(derive_seed(seed, 41, i * 100 + probe));
            CMat delta(m, nn);
            for (int c = 0; c < nn; ++c)
                for (int rr = 0; rr < m; ++rr)
                    delta(rr, c) = prng.complex_normal();
            const double lhs = nuclear_norm(x + delta);
            const double rhs =
                nuclear_norm(x) + (z.adjoint() * delta).trace().real();
            if (lhs < rhs - 1e-9) ++violations;
        }
        // Non-member: double the off-space part.
        const CMat z_bad = x.norm() > 0 ? CMat(2.0 * z) : z;
        ConditionReport nm = verify::subdifferential_membership(x, z_bad);
        if (nm.verdict == Verdict::Fails) ++rejected;
    }
    ConditionReport agg;
    agg.name = "lemma6.subgradient_probes";
    agg.margin = violations == 0 ? 1.0 : -static_cast<double>(violations);
    agg.details["violations"] = violations;
    agg.details["non_members_rejected"] = rejected;
    agg.verdict = violations == 0 && rejected == 100 ? Verdict::Holds
                                                     : Verdict::Fails;
    out.push_back(agg);
}

void suite_oanm(std::uint64_t seed, std::vector<ConditionReport>& out) {
    // On-grid instance with |c| = {1,2,3} at N = 16, then random instances.
    SpectralSignal fixed;
    fixed.n_half = 16;
    for (int k = 0; k < 3; ++k) {
        Mode m;
        m.freq = static_cast<double>(2 + 3 * k) / 16.0;
        m.coeff = std::polar(static_cast<double>(k + 1), 0.4 * k);
        fixed.modes.push_back(m);
    }
    out.push_back(verify::oanm_properties(fixed));
    for (int i = 0; i < 10; ++i) {
        SpectralSignal sig = random_instance(derive_seed(seed, 43, i), 16, 4);
        for (Mode& m : sig.modes) m.damping = 0.05 * (i % 3);
        out.push_back(verify::oanm_properties(sig));
    }
}

void suite_tightness(std::uint64_t seed, std::vector<ConditionReport>& out) {
    (void)seed;
    for (int n : {8, 16, 64}) {
        const int r = n / 2 + 1;
        const auto inst = verify::tightness_instance(n, r);
        ConditionReport rep = inst.report;
        rep.name = "tightness.n" + std::to_string(n);
        // Expected failure of the weak condition.
        rep.verdict = inst.report.margin <= 0.0 ? Verdict::Holds : Verdict::Fails;
        out.push_back(rep);
        out.push_back(verify::tightness_alternative(inst.signal));
    }
}

} // namespace

std::vector<std::string> known_suites() {
    return {"theorem1", "theorem2", "theorem3", "theorem4", "theorem5",
            "lemma7",   "appendixB", "subdiff",  "oanm",     "tightness"};
}

std::vector<verify::ConditionReport> run_verify_suite(const std::string& suite,
                                                      std::uint64_t seed) {
    std::vector<verify::ConditionReport> out;
    if (suite == "theorem1") suite_theorem1(seed, out);
    else if (suite == "theorem2") suite_theorem2(seed, out);
    else if (suite == "theorem3") suite_theorem3(seed, out);
    else if (suite == "theorem4") suite_theorem4(seed, out);
    else if (suite == "theorem5") suite_theorem5(seed, out);
    else if (suite == "lemma7") suite_lemma7(seed, out);
    else if (suite == "appendixB") suite_appendix_b(seed, out);
    else if (suite == "subdiff") suite_subdiff(seed, out);
    else if (suite == "oanm") suite_oanm(seed, out);
    else if (suite == "tightness") suite_tightness(seed, out);
    else if (suite == "all") {
        for (const std::string& s : known_suites()) {
            auto part = run_verify_suite(s, seed);
            out.insert(out.end(), part.begin(), part.end());
        }
    } else {
        throw std::invalid_argument("unknown suite: " + suite);
    }
    return out;
}

} // namespace hankelsr::experiments
