#include <doctest.h>

#include <cmath>

#include "hankelsr/hankel.hpp"
#include "hankelsr/linalg.hpp"
#include "hankelsr/music.hpp"
#include "hankelsr/rng.hpp"
#include "hankelsr/signal.hpp"

using namespace hankelsr;

namespace {

SpectralSignal on_grid_single(int n, int s) {
    SpectralSignal sig;
    sig.n_half = n;
    sig.modes = {Mode{static_cast<double>(s) / n, 0.0, {1.5, 0.5}}};
    return sig;
}

} // namespace

TEST_CASE("imaging function blows up on the signal frequency") {
    const int n = 16;
    const CVec x = synthesize(on_grid_single(n, 5));
    const double at_peak = imaging_function(x, 1, n, 5.0 / n);
    CHECK(at_peak >= 1e10);

    // Half a cycle away the atom is essentially orthogonal to the signal
    // space; cross-check against a direct projection onto the signal atom.
    const double f_far = 5.0 / n + 0.5;
    const double off = imaging_function(x, 1, n, f_far);
    CHECK(off < 10.0);
    CVec phi(n), a(n);
    for (int j = 0; j < n; ++j) {
        phi[j] = std::polar(1.0, 2 * M_PI * f_far * j);
        a[j] = std::polar(1.0 / std::sqrt(static_cast<double>(n)),
                          2 * M_PI * 5.0 / n * j);
    }
    // ||U2^* phi||^2 = ||phi||^2 - |<a, phi>|^2 for a 1-D signal space.
    const double proj = std::abs((a.adjoint() * phi)(0));
    const double want =
        std::sqrt(static_cast<double>(n)) /
        std::sqrt(static_cast<double>(n) - proj * proj);
    CHECK(off == doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("imaging function is at least one everywhere") {
    const SpectralSignal sig = random_instance(3, 12, 4);
    const CVec x = synthesize(sig);
    Rng rng(4);
    for (int i = 0; i < 200; ++i)
        CHECK(imaging_function(x, 4, 12, rng.uniform()) >= 1.0);
    CHECK_THROWS_AS(imaging_function(x, 12, 12, 0.1), std::invalid_argument);
}

TEST_CASE("single on-grid mode is located to refinement accuracy") {
    const int n = 16;
    const CVec x = synthesize(on_grid_single(n, 3));
    const auto [est, profile] = run_music(x, 1, n);
    REQUIRE(est.frequencies.size() == 1);
    CHECK(wrap_distance(est.frequencies[0], 3.0 / n) < 1e-8);
    CHECK(profile.refined_peaks.size() == 1);
    CHECK(!profile.damped_warning);
}

TEST_CASE("well-separated instance matches a dense grid scan oracle") {
    const int n = 24;
    const SpectralSignal sig = random_instance(17, n, 4, 0.07);
    const CVec x = synthesize(sig);
    const auto [est, profile] = run_music(x, 4, n);
    REQUIRE(est.frequencies.size() == 4);

    std::vector<double> truth;
    for (const Mode& m : sig.modes) truth.push_back(m.freq);
    std::sort(truth.begin(), truth.end());
    for (int k = 0; k < 4; ++k)
        CHECK(wrap_distance(est.frequencies[k], truth[k]) < 1e-6);

    // Dense-scan oracle: every one of the four largest maxima of J on a 10^6
    // grid lies next to one of the refined estimates.
    const CMat u2 = noise_subspace(x, 4, n);
    const int dense = 1000000;
    const std::vector<double> vals = imaging_grid(u2, dense);
    std::vector<int> peaks;
    for (int i = 0; i < dense; ++i)
        if (vals[i] > vals[(i + dense - 1) % dense] &&
            vals[i] > vals[(i + 1) % dense])
            peaks.push_back(i);
    std::sort(peaks.begin(), peaks.end(),
              [&](int a, int b) { return vals[a] > vals[b]; });
    REQUIRE(peaks.size() >= 4);
    for (int k = 0; k < 4; ++k) {
        double nearest = 1.0;
        for (double f : est.frequencies)
            nearest = std::min(
                nearest, wrap_distance(f, static_cast<double>(peaks[k]) / dense));
        CHECK(nearest < 2.0 / dense);
    }
}

TEST_CASE("shift covariance") {
    const int n = 16;
    const SpectralSignal sig = random_instance(23, n, 3, 0.05);
    CVec x = synthesize(sig);
    const double f0 = 0.2173;
    CVec shifted(x.size());
    for (int j = 0; j < x.size(); ++j)
        shifted[j] = x[j] * std::polar(1.0, 2 * M_PI * f0 * j);

    const auto [base, p1] = run_music(x, 3, n);
    const auto [moved, p2] = run_music(shifted, 3, n);
    std::vector<double> expect;
    for (double f : base.frequencies) expect.push_back(std::fmod(f + f0, 1.0));
    std::sort(expect.begin(), expect.end());
    for (int k = 0; k < 3; ++k)
        CHECK(wrap_distance(moved.frequencies[k], expect[k]) < 1e-7);
}

TEST_CASE("scale invariance") {
    const int n = 12;
    const SpectralSignal sig = random_instance(29, n, 3, 0.05);
    const CVec x = synthesize(sig);
    const auto [a, pa] = run_music(x, 3, n);
    const auto [b, pb] = run_music(CVec(Complex{-2.5, 1.25} * x), 3, n);
    for (int k = 0; k < 3; ++k)
        CHECK(wrap_distance(a.frequencies[k], b.frequencies[k]) < 1e-8);
}

TEST_CASE("every true frequency falls within a grid cell of some peak") {
    const int n = 16;
    for (int trial = 0; trial < 5; ++trial) {
        const SpectralSignal sig = random_instance(100 + trial, n, 5, 0.03);
        const CVec x = synthesize(sig);
        MusicOptions opts;
        opts.grid_size = 16 * n;
        const auto [est, profile] = run_music(x, 5, n, opts);
        for (const Mode& m : sig.modes) {
            double nearest = 1.0;
            for (double f : est.frequencies)
                nearest = std::min(nearest, wrap_distance(f, m.freq));
            CHECK(nearest <= 1.0 / opts.grid_size);
        }
    }
}

TEST_CASE("parallel and serial imaging grids agree exactly") {
    const SpectralSignal sig = random_instance(31, 16, 4);
    const CVec x = synthesize(sig);
    const CMat u2 = noise_subspace(x, 4, 16);
    const auto par = imaging_grid(u2, 4096);
    const auto ser = imaging_grid_serial(u2, 4096);
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) CHECK(par[i] == ser[i]);
}

TEST_CASE("profile reports the spectral gap and peak ordering") {
    const SpectralSignal sig = random_instance(37, 16, 3, 0.05);
    const CVec x = synthesize(sig);
    const auto [est, profile] = run_music(x, 3, 16);
    CHECK(profile.spectral_gap > 1e6); // noiseless: sigma_4 ~ 0
    for (std::size_t i = 1; i < profile.refined_peaks.size(); ++i)
        CHECK(profile.refined_peaks[i - 1].second >=
              profile.refined_peaks[i].second);
    // Mis-specified order: gap collapses toward 1.
    double gap = 0.0;
    noise_subspace(x, 2, 16, &gap);
    CHECK(gap < 1e3);
}

TEST_CASE("too few peaks raises with the count found") {
    // An impulse keeps every atom equally far from the signal space, so J is
    // flat and the grid has no strict local maxima at all.
    CVec x = CVec::Zero(31);
    x[0] = Complex{1, 0};
    try {
        run_music(x, 1, 16);
        FAIL("expected TooFewPeaksError");
    } catch (const TooFewPeaksError& e) {
        CHECK(e.found == 0);
    }
    CHECK_THROWS_AS(run_music(x, 1, 16, MusicOptions{.grid_size = 16}),
                    std::invalid_argument);
}

TEST_CASE("damped flag is carried through") {
    const SpectralSignal sig = random_instance(41, 16, 2, 0.1);
    const CVec x = synthesize(sig);
    MusicOptions opts;
    opts.damped_input = true;
    const auto [est, profile] = run_music(x, 2, 16, opts);
    CHECK(profile.damped_warning);
}
