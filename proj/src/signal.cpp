#include "hankelsr/signal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hankelsr/rng.hpp"

namespace hankelsr {

void SpectralSignal::validate() const {
    if (n_half < 1) throw std::invalid_argument("signal: n_half must be >= 1");
    if (num_modes() > full_length())
        throw std::invalid_argument("signal: more modes than 2N-1 samples");
    for (const Mode& m : modes) {
        if (!(m.freq >= 0.0 && m.freq < 1.0))
            throw std::invalid_argument("signal: frequency outside [0,1)");
        if (!(m.damping >= 0.0))
            throw std::invalid_argument("signal: negative damping");
        if (m.coeff == Complex{0.0, 0.0})
            throw std::invalid_argument("signal: zero coefficient");
    }
}

std::vector<int> SampleMask::unobserved() const {
    std::vector<int> out;
    out.reserve(n_full - num_observed());
    std::size_t k = 0;
    for (int i = 0; i < n_full; ++i) {
        if (k < observed.size() && observed[k] == i) {
            ++k;
        } else {
            out.push_back(i);
        }
    }
    return out;
}

void SampleMask::validate() const {
    if (n_full < 1) throw std::invalid_argument("mask: n_full must be >= 1");
    if (observed.empty()) throw std::invalid_argument("mask: empty");
    int prev = -1;
    for (int i : observed) {
        if (i <= prev)
            throw std::invalid_argument("mask: indices not strictly increasing");
        if (i < 0 || i >= n_full)
            throw std::invalid_argument("mask: index out of range");
        prev = i;
    }
}

SampleMask SampleMask::full(int n_full) {
    SampleMask m;
    m.n_full = n_full;
    m.observed.resize(n_full);
    for (int i = 0; i < n_full; ++i) m.observed[i] = i;
    return m;
}

SampleMask SampleMask::all_but(int n_full, const std::vector<int>& missing) {
    std::vector<bool> drop(n_full, false);
    for (int i : missing) {
        if (i < 0 || i >= n_full)
            throw std::invalid_argument("mask: missing index out of range");
        drop[i] = true;
    }
    SampleMask m;
    m.n_full = n_full;
    for (int i = 0; i < n_full; ++i)
        if (!drop[i]) m.observed.push_back(i);
    return m;
}

SampleMask SampleMask::random(int n_full, int count, std::uint64_t seed) {
    if (count < 1 || count > n_full)
        throw std::invalid_argument("mask: sample count out of range");
    // Fisher-Yates prefix over index pool.
    std::vector<int> pool(n_full);
    for (int i = 0; i < n_full; ++i) pool[i] = i;
    Rng rng(seed);
    for (int i = 0; i < count; ++i) {
        const int j = i + static_cast<int>(rng.integer(n_full - i));
        std::swap(pool[i], pool[j]);
    }
    SampleMask m;
    m.n_full = n_full;
    m.observed.assign(pool.begin(), pool.begin() + count);
    std::sort(m.observed.begin(), m.observed.end());
    return m;
}

void MeasurementSet::validate() const {
    if (kind == MeasurementKind::EntrySampling) {
        mask.validate();
        if (values.size() != mask.num_observed())
            throw std::invalid_argument(
                "measurements: value count does not match mask");
    } else {
        if (gaussian_rows < 1)
            throw std::invalid_argument("measurements: gaussian_rows must be >= 1");
        if (values.size() != gaussian_rows)
            throw std::invalid_argument(
                "measurements: value count does not match projection rows");
    }
    if (noise_level < 0.0)
        throw std::invalid_argument("measurements: negative noise level");
}

CMat gaussian_operator(int rows, int n_full, std::uint64_t seed) {
    Rng rng(seed);
    CMat g(rows, n_full);
    // Row-major fill order is part of the operator definition.
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < n_full; ++c) g(r, c) = rng.complex_normal();
    return g;
}

CVec synthesize(const SpectralSignal& signal) {
    signal.validate();
    const int len = signal.full_length();
    CVec x = CVec::Zero(len);
    for (const Mode& m : signal.modes) {
        const Complex rate(-m.damping, 2.0 * M_PI * m.freq);
        for (int j = 0; j < len; ++j)
            x[j] += m.coeff * std::exp(rate * static_cast<double>(j));
    }
    return x;
}

double wrap_distance(double f, double g) {
    const double d = std::abs(f - g);
    return std::min(d, 1.0 - d);
}

double min_separation(const std::vector<double>& freqs) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < freqs.size(); ++i)
        for (std::size_t j = i + 1; j < freqs.size(); ++j)
            best = std::min(best, wrap_distance(freqs[i], freqs[j]));
    return best;
}

SpectralSignal random_instance(std::uint64_t seed, int n_half, int num_modes,
                               std::optional<double> separation_floor) {
    if (num_modes > n_half)
        throw std::invalid_argument("random_instance: R must be <= N");
    Rng rng(seed);
    constexpr int kMaxRedraws = 10000;

    std::vector<double> freqs(num_modes);
    int attempts = 0;
    while (true) {
        for (double& f : freqs) f = rng.uniform();
        if (!separation_floor || min_separation(freqs) >= *separation_floor)
            break;
        if (++attempts >= kMaxRedraws)
            throw std::runtime_error(
                "random_instance: separation floor infeasible after bounded retries");
    }

    SpectralSignal sig;
    sig.n_half = n_half;
    sig.modes.resize(num_modes);
    for (int k = 0; k < num_modes; ++k) {
        const double mag = 1.0 + std::pow(10.0, 0.5 * rng.uniform());
        const double phase = 2.0 * M_PI * rng.uniform();
        sig.modes[k].freq = freqs[k];
        sig.modes[k].damping = 0.0;
        sig.modes[k].coeff = std::polar(mag, phase);
    }
    return sig;
}

MeasurementSet sample_entries(const CVec& x, const SampleMask& mask) {
    mask.validate();
    if (x.size() != mask.n_full)
        throw std::invalid_argument("sample_entries: length mismatch");
    MeasurementSet m;
    m.kind = MeasurementKind::EntrySampling;
    m.mask = mask;
    m.values.resize(mask.num_observed());
    for (int i = 0; i < mask.num_observed(); ++i)
        m.values[i] = x[mask.observed[i]];
    return m;
}

MeasurementSet sample_gaussian(const CVec& x, int rows, std::uint64_t seed) {
    if (rows < 1)
        throw std::invalid_argument("sample_gaussian: rows must be >= 1");
    MeasurementSet m;
    m.kind = MeasurementKind::GaussianProjection;
    m.gaussian_rows = rows;
    m.gaussian_seed = seed;
    m.mask.n_full = static_cast<int>(x.size());
    m.values = gaussian_operator(rows, static_cast<int>(x.size()), seed) * x;
    return m;
}

MeasurementSet add_noise(const MeasurementSet& meas, double level,
                         std::uint64_t seed) {
    if (level < 0.0) throw std::invalid_argument("add_noise: negative level");
    MeasurementSet out = meas;
    out.noise_level = level;
    if (level == 0.0) return out;
    Rng rng(seed);
    CVec eta(meas.values.size());
    for (int i = 0; i < eta.size(); ++i) eta[i] = rng.complex_normal();
    eta *= level / eta.norm();
    out.values += eta;
    return out;
}

} // namespace hankelsr
