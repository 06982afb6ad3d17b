#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hankelsr/music.hpp"
#include "hankelsr/signal.hpp"
#include "hankelsr/solvers.hpp"
#include "hankelsr/verify.hpp"

namespace hankelsr::experiments {

enum class SolverKind { Hankel, Anm };
enum class SamplingKind { Entries, Gaussian };

struct PhaseConfig {
    int n = 64;
    std::vector<int> m_values;
    std::vector<int> r_values;
    int trials = 100;
    SolverKind solver = SolverKind::Hankel;
    SamplingKind sampling = SamplingKind::Entries;
    std::uint64_t seed = 1;
    double success_threshold = 1e-3;
    SolverOptions solver_options{.max_iters = 2000, .tolerance = 1e-6};
    /// Stop a trial as soon as the iterate is well inside the success ball
    /// (threshold/3); cuts sweep time without changing classifications.
    bool early_success_stop = true;
    int workers = 0; // 0: use the OpenMP default
};

struct PhaseTransitionGrid {
    PhaseConfig config;
    /// success_counts[mi * r_values.size() + ri]
    std::vector<int> success_counts;

    int count(int mi, int ri) const {
        return success_counts[mi * config.r_values.size() + ri];
    }
    double rate(int mi, int ri) const {
        return static_cast<double>(count(mi, ri)) / config.trials;
    }
};

/// Runs trials per (M, R) cell; per-trial seeds derive from
/// (seed, M, R, trial) so sweep order and worker count cannot matter.
PhaseTransitionGrid run_phase(const PhaseConfig& config);

std::string phase_to_csv(const PhaseTransitionGrid& grid);
std::string phase_metadata_json(const PhaseTransitionGrid& grid);

/// One close-frequency experiment cell.
struct CloseFreqCase {
    double separation = 0.0;
    double relative_error = 0.0;
    bool converged = false;
    int iterations = 0;
    std::vector<double> true_frequencies;
    FrequencyEstimate music;
    ImagingProfile profile;
};

/// The published close-frequency setup: seven fixed frequencies plus an
/// eighth at the given wrap distance from the third, fixed magnitudes and
/// phases, N = 64, M = 65 random entries drawn from mask_seed.
SpectralSignal closefreq_fixture(double separation);
SpectralSignal noisy_fixture();

CloseFreqCase run_closefreq_case(double separation, std::uint64_t mask_seed,
                                 const SolverOptions& opts,
                                 const MusicOptions& mopts = {});

struct NoisyCase {
    double delta = 0.0;
    double relative_error = 0.0;
    bool converged = false;
    bool trivial_zero = false; // ball contained the origin
    int iterations = 0;
    std::vector<double> true_frequencies;
    FrequencyEstimate music;
    ImagingProfile profile;
};

NoisyCase run_noisy_case(double delta, std::uint64_t seed,
                         const SolverOptions& opts,
                         const MusicOptions& mopts = {});

/// Named checker suites driven by cmd_verify; returns one report per check.
/// Suites: theorem1 theorem2 theorem3 theorem4 theorem5 lemma7 appendixB
/// subdiff oanm tightness.
std::vector<verify::ConditionReport> run_verify_suite(const std::string& suite,
                                                      std::uint64_t seed);

std::vector<std::string> known_suites();

} // namespace hankelsr::experiments
