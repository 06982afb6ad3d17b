#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "hankelsr/types.hpp"

namespace hankelsr {

/// Imaging function samples over a uniform frequency grid plus the refined
/// peak list. values[i] = J(grid[i]) >= 1.
struct ImagingProfile {
    std::vector<double> grid;
    std::vector<double> values;
    /// (frequency, J value), sorted by J descending.
    std::vector<std::pair<double, double>> refined_peaks;
    /// sigma_R / sigma_{R+1} of the lifted matrix; small values flag a
    /// mis-specified model order.
    double spectral_gap = 0.0;
    /// Set when the input looks damped; the identification guarantee covers
    /// undamped signals only.
    bool damped_warning = false;
};

/// Exactly R frequencies in [0,1), ascending, with their J values.
struct FrequencyEstimate {
    std::vector<double> frequencies;
    std::vector<double> j_values;
};

struct TooFewPeaksError : std::runtime_error {
    int found;
    TooFewPeaksError(int found_, int wanted)
        : std::runtime_error("music: found " + std::to_string(found_) +
                             " local maxima, need " + std::to_string(wanted)),
          found(found_) {}
};

/// Noise-subspace basis: columns R+1..n of U from the SVD of H(x).
CMat noise_subspace(const CVec& x, int num_modes, int n, double* spectral_gap = nullptr);

/// J(f) = ||phi(f)|| / ||U2^* phi(f)|| with phi the length-n frequency atom.
/// Returns a large sentinel (>= 1e15) when the denominator underflows.
double imaging_function(const CVec& x, int num_modes, int n, double f);

/// Evaluates J over a uniform G-point grid. OpenMP-parallel across
/// frequencies; `imaging_grid_serial` is the reference kept for testing and
/// benchmarking, and the two agree bit-for-bit.
std::vector<double> imaging_grid(const CMat& u2, int grid_size);
std::vector<double> imaging_grid_serial(const CMat& u2, int grid_size);

struct MusicOptions {
    int grid_size = 1 << 14;
    int refine_iters = 60;
    /// Callers that know the signal carries damping set this; it is surfaced
    /// as ImagingProfile::damped_warning.
    bool damped_input = false;
};

/// Single-snapshot identification: grid evaluation of J, wrap-around local
/// maxima, the R largest peaks (ties broken toward lower frequency), then
/// per-peak refinement by scan-splitting and golden-section ascent down to
/// |df| < 1e-9. Throws TooFewPeaksError when the grid shows fewer than R
/// local maxima.
std::pair<FrequencyEstimate, ImagingProfile> run_music(
    const CVec& x, int num_modes, int n, const MusicOptions& opts = {});

} // namespace hankelsr
