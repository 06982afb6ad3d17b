#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hankelsr/types.hpp"

namespace hankelsr {

/// One damped complex exponential: coeff * exp((i*2*pi*freq - damping) * j).
struct Mode {
    double freq = 0.0;    // cycles/sample, in [0, 1)
    double damping = 0.0; // per-sample decay, >= 0
    Complex coeff{1.0, 0.0};
};

/// Parametric ground-truth model of a spectrally sparse signal of length
/// 2*n_half - 1.
struct SpectralSignal {
    int n_half = 1;
    std::vector<Mode> modes;

    int full_length() const { return 2 * n_half - 1; }
    int num_modes() const { return static_cast<int>(modes.size()); }

    /// Throws std::invalid_argument if any invariant is violated.
    void validate() const;
};

/// Sorted duplicate-free set of observed sample indices in {0,...,n_full-1}.
struct SampleMask {
    int n_full = 0;
    std::vector<int> observed;

    int num_observed() const { return static_cast<int>(observed.size()); }
    bool is_full() const { return num_observed() == n_full; }
    std::vector<int> unobserved() const;
    void validate() const;

    static SampleMask full(int n_full);
    static SampleMask all_but(int n_full, const std::vector<int>& missing);
    /// M indices drawn uniformly without replacement.
    static SampleMask random(int n_full, int m, std::uint64_t seed);
};

enum class MeasurementKind { EntrySampling, GaussianProjection };

/// Linear measurements b = A(x) (+ noise), together with the operator payload
/// needed to re-apply A.
struct MeasurementSet {
    MeasurementKind kind = MeasurementKind::EntrySampling;
    CVec values;
    SampleMask mask;                // entry sampling payload
    int gaussian_rows = 0;          // Gaussian payload: row count ...
    std::uint64_t gaussian_seed = 0; // ... and the seed regenerating G
    double noise_level = 0.0;

    void validate() const;
};

/// Dense i.i.d. complex Gaussian projection matrix (M x n_full) regenerated
/// from its seed.
CMat gaussian_operator(int rows, int n_full, std::uint64_t seed);

/// x[j] = sum_k c_k exp((i*2*pi*f_k - tau_k) * j), j = 0..2N-2.
CVec synthesize(const SpectralSignal& signal);

/// Random instance with the coefficient model |c| = 1 + 10^(0.5 m),
/// m ~ U[0,1), phase 2*pi*theta, theta ~ U[0,1), undamped. Frequencies are
/// i.i.d. uniform on [0,1), redrawn until all pairwise wrap-around distances
/// reach separation_floor when one is given.
SpectralSignal random_instance(std::uint64_t seed, int n_half, int num_modes,
                               std::optional<double> separation_floor = {});

MeasurementSet sample_entries(const CVec& x, const SampleMask& mask);

MeasurementSet sample_gaussian(const CVec& x, int rows, std::uint64_t seed);

/// Adds a complex Gaussian vector rescaled to Euclidean norm exactly `level`.
MeasurementSet add_noise(const MeasurementSet& meas, double level,
                         std::uint64_t seed);

/// min(|f - g|, 1 - |f - g|) on the frequency torus.
double wrap_distance(double f, double g);

/// Smallest pairwise wrap-around distance; +inf for fewer than two modes.
double min_separation(const std::vector<double>& freqs);

} // namespace hankelsr
