#include "hankelsr/music.hpp"

#include <algorithm>
#include <cmath>

#include "hankelsr/hankel.hpp"
#include "hankelsr/linalg.hpp"

namespace hankelsr {

namespace {

constexpr double kSentinel = 1e15;
constexpr double kRefineTol = 1e-9;

CVec atom(int n, double f) {
    CVec phi(n);
    for (int j = 0; j < n; ++j)
        phi[j] = std::polar(1.0, 2.0 * M_PI * f * j);
    return phi;
}

double eval_j(const CMat& u2, double f) {
    const int n = static_cast<int>(u2.rows());
    const double den = (u2.adjoint() * atom(n, f)).norm();
    const double num = std::sqrt(static_cast<double>(n));
    if (den < num / kSentinel) return kSentinel;
    return num / den;
}

// Wrap-aware frequency normalization into [0,1).
double wrap01(double f) {
    f = std::fmod(f, 1.0);
    return f < 0.0 ? f + 1.0 : f;
}

// Golden-section ascent of J on [lo, hi] (lo < hi allowed to leave [0,1);
// evaluation wraps). Runs until the bracket is below kRefineTol or the
// iteration budget is exhausted.
std::pair<double, double> golden_ascent(const CMat& u2, double lo, double hi,
                                        int iters) {
    constexpr double kInvPhi = 0.6180339887498949;
    double c = hi - kInvPhi * (hi - lo);
    double d = lo + kInvPhi * (hi - lo);
    double fc = eval_j(u2, wrap01(c));
    double fd = eval_j(u2, wrap01(d));
    for (int it = 0; it < iters && (hi - lo) > kRefineTol; ++it) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - kInvPhi * (hi - lo);
            fc = eval_j(u2, wrap01(c));
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + kInvPhi * (hi - lo);
            fd = eval_j(u2, wrap01(d));
        }
    }
    const double f = wrap01(0.5 * (lo + hi));
    return {f, eval_j(u2, f)};
}

// Recursive zoom over [lo, hi]: a 64-interval scan either isolates one
// interior maximum (shrink) or reveals several (branch). A merged pair of
// true peaks inside one coarse cell separates here before the final
// golden-section polish.
void zoom_scan(const CMat& u2, double lo, double hi, int refine_iters,
               std::vector<std::pair<double, double>>& out, int depth = 0) {
    constexpr int kPoints = 65;
    if (depth > 12 || (hi - lo) < 16 * kRefineTol) {
        out.push_back(golden_ascent(u2, lo, hi, refine_iters));
        return;
    }
    const double step = (hi - lo) / (kPoints - 1);
    double vals[kPoints];
    for (int i = 0; i < kPoints; ++i)
        vals[i] = eval_j(u2, wrap01(lo + i * step));
    std::vector<int> maxima;
    for (int i = 1; i + 1 < kPoints; ++i)
        if (vals[i] > vals[i - 1] && vals[i] > vals[i + 1]) maxima.push_back(i);
    if (maxima.empty()) {
        // Monotone slice; keep the better endpoint's neighborhood.
        const int i = vals[0] > vals[kPoints - 1] ? 0 : kPoints - 1;
        out.push_back(golden_ascent(u2, lo + std::max(0, i - 1) * step,
                                    lo + std::min(kPoints - 1, i + 1) * step,
                                    refine_iters));
        return;
    }
    for (int i : maxima)
        zoom_scan(u2, lo + (i - 1) * step, lo + (i + 1) * step, refine_iters,
                  out, depth + 1);
}

} // namespace

CMat noise_subspace(const CVec& x, int num_modes, int n, double* spectral_gap) {
    if (num_modes < 1 || num_modes >= n)
        throw std::invalid_argument("music: need 1 <= R < n");
    if (x.size() != 2 * n - 1)
        throw std::invalid_argument("music: |x| must equal 2n-1");
    const Svd dec = svd(build_hankel(x, n), /*full=*/true);
    if (spectral_gap) {
        const double lo = dec.sigma[num_modes];
        *spectral_gap = lo > 0.0 ? dec.sigma[num_modes - 1] / lo : kSentinel;
    }
    return dec.u.rightCols(n - num_modes);
}

double imaging_function(const CVec& x, int num_modes, int n, double f) {
    return eval_j(noise_subspace(x, num_modes, n), f);
}

std::vector<double> imaging_grid_serial(const CMat& u2, int grid_size) {
    std::vector<double> vals(grid_size);
    for (int i = 0; i < grid_size; ++i)
        vals[i] = eval_j(u2, static_cast<double>(i) / grid_size);
    return vals;
}

std::vector<double> imaging_grid(const CMat& u2, int grid_size) {
    std::vector<double> vals(grid_size);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < grid_size; ++i)
        vals[i] = eval_j(u2, static_cast<double>(i) / grid_size);
    return vals;
}

std::pair<FrequencyEstimate, ImagingProfile> run_music(const CVec& x,
                                                       int num_modes, int n,
                                                       const MusicOptions& opts) {
    if (opts.grid_size < 4 * n)
        throw std::invalid_argument("music: grid must have at least 4n points");
    ImagingProfile profile;
    const CMat u2 = noise_subspace(x, num_modes, n, &profile.spectral_gap);
    // Damped inputs run through the same subspace machinery but fall outside
    // the identification guarantee; callers that know flag it.
    profile.damped_warning = opts.damped_input;

    const int g = opts.grid_size;
    profile.grid.resize(g);
    for (int i = 0; i < g; ++i) profile.grid[i] = static_cast<double>(i) / g;
    profile.values = imaging_grid(u2, g);

    // Strictly above both wrap-around neighbors, beyond rounding jitter
    // (otherwise a flat profile sprouts noise-level "peaks").
    std::vector<int> maxima;
    for (int i = 0; i < g; ++i) {
        const double v = profile.values[i];
        if (v > profile.values[(i + g - 1) % g] * (1.0 + 1e-12) &&
            v > profile.values[(i + 1) % g] * (1.0 + 1e-12))
            maxima.push_back(i);
    }
    if (static_cast<int>(maxima.size()) < num_modes)
        throw TooFewPeaksError(static_cast<int>(maxima.size()), num_modes);

    // R largest grid maxima; ties resolved toward the lower frequency.
    std::stable_sort(maxima.begin(), maxima.end(), [&](int a, int b) {
        if (profile.values[a] != profile.values[b])
            return profile.values[a] > profile.values[b];
        return a < b;
    });
    maxima.resize(num_modes);

    const double cell = 1.0 / g;
    std::vector<std::pair<double, double>> candidates;
    for (int i : maxima) {
        const double f0 = profile.grid[i];
        zoom_scan(u2, f0 - 3.0 * cell, f0 + 3.0 * cell, opts.refine_iters,
                  candidates);
    }
    // Deduplicate refined candidates (branches can converge to one peak).
    std::sort(candidates.begin(), candidates.end());
    std::vector<std::pair<double, double>> unique;
    for (const auto& c : candidates) {
        if (!unique.empty() &&
            std::min(std::abs(c.first - unique.back().first),
                     1.0 - std::abs(c.first - unique.back().first)) <
                4 * kRefineTol) {
            if (c.second > unique.back().second) unique.back() = c;
        } else {
            unique.push_back(c);
        }
    }
    if (unique.size() > 1) {
        // Candidates straddling the 0/1 seam are one peak.
        const auto& first = unique.front();
        const auto& last = unique.back();
        if (1.0 - std::abs(last.first - first.first) < 4 * kRefineTol) {
            if (last.second > first.second) unique.front() = last;
            unique.pop_back();
        }
    }
    std::stable_sort(unique.begin(), unique.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (static_cast<int>(unique.size()) < num_modes)
        throw TooFewPeaksError(static_cast<int>(unique.size()), num_modes);
    unique.resize(num_modes);
    profile.refined_peaks = unique;

    FrequencyEstimate est;
    std::sort(unique.begin(), unique.end());
    for (const auto& [f, jv] : unique) {
        est.frequencies.push_back(f);
        est.j_values.push_back(jv);
    }
    return {est, profile};
}

} // namespace hankelsr
