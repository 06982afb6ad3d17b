#include "hankelsr/solvers.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "hankelsr/hankel.hpp"
#include "hankelsr/linalg.hpp"

namespace hankelsr {

namespace {

// Minimizes sum_i w_i |x_i - m_i|^2 over the observed block subject to
// ||x_obs - b|| <= delta. Unobserved entries stay at m. The stationarity
// condition gives x_i = (w_i m_i + lam b_i) / (w_i + lam) with lam >= 0 the
// ball multiplier, found by bisection on the monotone residual.
void project_entry_ball(CVec& x, const CVec& m, const std::vector<int>& obs,
                        const std::vector<int>& weights, const CVec& b,
                        double delta) {
    x = m;
    const int k = static_cast<int>(obs.size());
    double h0 = 0.0;
    for (int i = 0; i < k; ++i) h0 += std::norm(m[obs[i]] - b[i]);
    if (h0 <= delta * delta) return;

    auto resid2 = [&](double lam) {
        double s = 0.0;
        for (int i = 0; i < k; ++i) {
            const double w = weights[obs[i]];
            const double scale = w / (w + lam);
            s += scale * scale * std::norm(m[obs[i]] - b[i]);
        }
        return s;
    };
    double lo = 0.0, hi = 1.0;
    while (resid2(hi) > delta * delta) hi *= 2.0;
    for (int it = 0; it < 200 && (hi - lo) > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (resid2(mid) > delta * delta ? lo : hi) = mid;
    }
    const double lam = 0.5 * (lo + hi);
    for (int i = 0; i < k; ++i) {
        const double w = weights[obs[i]];
        x[obs[i]] = (w * m[obs[i]] + lam * b[i]) / (w + lam);
    }
}

// Gaussian-measurement x-updates share the SVD of B = G D^{-1/2}.
struct GaussianWorkspace {
    CMat g;           // M x nf
    RVec inv_sqrt_w;  // D^{-1/2} diagonal
    Svd b_svd;        // thin SVD of G D^{-1/2}

    GaussianWorkspace(const CMat& g_in, const std::vector<int>& weights)
        : g(g_in) {
        const int nf = static_cast<int>(g.cols());
        inv_sqrt_w.resize(nf);
        CMat b = g;
        for (int i = 0; i < nf; ++i) {
            inv_sqrt_w[i] = 1.0 / std::sqrt(static_cast<double>(weights[i]));
            b.col(i) *= inv_sqrt_w[i];
        }
        b_svd = svd(b, /*full=*/false);
    }

    // argmin sum_i w_i |x_i - m_i|^2 s.t. G x = b (delta == 0) or
    // ||G x - b|| <= delta. Solved in the y = D^{1/2} x variables where the
    // quadratic is isotropic and the operator SVD diagonalizes everything.
    CVec project(const CVec& m, const CVec& b, double delta) const {
        const int nf = static_cast<int>(g.cols());
        CVec y(nf);
        for (int i = 0; i < nf; ++i) y[i] = m[i] / inv_sqrt_w[i];
        const CVec c = b_svd.v.adjoint() * y;  // components along row space
        const CVec d = b_svd.u.adjoint() * b;
        const RVec& s = b_svd.sigma;
        const int k = static_cast<int>(s.size());

        // Component of b outside range(G); nonzero only when rows exceed rank.
        const double off_range2 = std::max(0.0, b.squaredNorm() - d.squaredNorm());

        CVec coef(k); // target components of (S V^* y) after projection
        if (delta <= 0.0) {
            for (int i = 0; i < k; ++i) coef[i] = d[i];
        } else {
            if (off_range2 > delta * delta)
                throw std::invalid_argument(
                    "noisy Gaussian solve: ball does not meet the operator range");
            auto resid2 = [&](double lam) {
                double r = off_range2;
                for (int i = 0; i < k; ++i)
                    r += std::norm(s[i] * c[i] - d[i]) /
                         ((1.0 + lam * s[i] * s[i]) * (1.0 + lam * s[i] * s[i]));
                return r;
            };
            if (resid2(0.0) <= delta * delta) return m;
            double lo = 0.0, hi = 1.0;
            while (resid2(hi) > delta * delta) hi *= 2.0;
            for (int it = 0; it < 200 && (hi - lo) > 1e-15 * hi; ++it) {
                const double mid = 0.5 * (lo + hi);
                (resid2(mid) > delta * delta ? lo : hi) = mid;
            }
            const double lam = 0.5 * (lo + hi);
            for (int i = 0; i < k; ++i) {
                const double s2 = s[i] * s[i];
                coef[i] = (s[i] * c[i] + lam * s2 * d[i]) / (1.0 + lam * s2);
            }
        }
        // y_out = y + V S^{-1} (coef - S V^* y) restricted to the row space.
        CVec adj(k);
        for (int i = 0; i < k; ++i) {
            if (s[i] > 1e-14 * s[0])
                adj[i] = coef[i] / s[i] - c[i];
            else
                adj[i] = Complex{0.0, 0.0};
        }
        CVec y_out = y + b_svd.v * adj;
        CVec x(nf);
        for (int i = 0; i < nf; ++i) x[i] = y_out[i] * inv_sqrt_w[i];
        return x;
    }
};

RecoveryResult hankel_admm(const MeasurementSet& meas, int n,
                           const SolverOptions& opts,
                           const IterationCallback& stop, double delta) {
    meas.validate();
    if (opts.max_iters < 1 || opts.tolerance <= 0.0 || opts.rho <= 0.0)
        throw std::invalid_argument("solver options out of range");
    const int nf = 2 * n - 1;
    const bool entry = meas.kind == MeasurementKind::EntrySampling;
    if (entry && meas.mask.n_full != nf)
        throw std::invalid_argument("recover_hankel_nnm: mask inconsistent with n");

    const std::vector<int> weights = antidiagonal_weights(n);
    const CVec& b = meas.values;

    std::unique_ptr<GaussianWorkspace> gw;
    if (!entry)
        gw = std::make_unique<GaussianWorkspace>(
            gaussian_operator(meas.gaussian_rows, nf, meas.gaussian_seed),
            weights);

    // Feasible-ish start: observed entries (entry sampling) or zero.
    CVec x = CVec::Zero(nf);
    if (entry)
        for (int i = 0; i < meas.mask.num_observed(); ++i)
            x[meas.mask.observed[i]] = b[i];

    double rho = opts.rho;
    CMat z = build_hankel(x, n);
    CMat u = CMat::Zero(n, n);
    CMat hx = z;

    RecoveryResult res;
    double rp = 0.0, rd = 0.0;
    int iter = 0;
    for (iter = 1; iter <= opts.max_iters; ++iter) {
        z = svt(hx - u, 1.0 / rho);

        // Consensus: anti-diagonal averages of Z + U, then measurement
        // projection.
        CVec m = hankel_adjoint(z + u);
        for (int i = 0; i < nf; ++i) m[i] /= static_cast<double>(weights[i]);
        CVec x_new;
        if (entry) {
            if (delta <= 0.0) {
                x_new = m;
                for (int i = 0; i < meas.mask.num_observed(); ++i)
                    x_new[meas.mask.observed[i]] = b[i];
            } else {
                project_entry_ball(x_new, m, meas.mask.observed, weights, b,
                                   delta);
            }
        } else {
            x_new = gw->project(m, b, delta);
        }

        const CMat hx_new = build_hankel(x_new, n);
        rp = (z - hx_new).norm();
        rd = rho * (hx_new - hx).norm();
        u += z - hx_new;
        hx = hx_new;
        x = x_new;

        const double eps_pri =
            n * opts.tolerance +
            opts.tolerance * std::max(z.norm(), hx.norm());
        const double eps_dual =
            n * opts.tolerance + opts.tolerance * rho * u.norm();
        if (rp < eps_pri && rd < eps_dual) {
            res.converged = true;
            break;
        }
        if (stop && stop(iter, x)) break;
        if (opts.adapt_penalty && iter % 50 == 0) {
            if (rp > 10.0 * rd) {
                rho *= 2.0;
                u *= 0.5;
            } else if (rd > 10.0 * rp) {
                rho *= 0.5;
                u *= 2.0;
            }
        }
    }

    res.x_hat = x;
    res.iterations = std::min(iter, opts.max_iters);
    res.primal_residual = rp;
    res.dual_residual = rd;
    res.objective = nuclear_norm(hx);
    return res;
}

} // namespace

RecoveryResult recover_hankel_nnm(const MeasurementSet& meas, int n,
                                  const SolverOptions& opts,
                                  const IterationCallback& stop) {
    if (meas.noise_level != 0.0)
        throw std::invalid_argument(
            "recover_hankel_nnm: measurements carry noise; use the noisy solver");
    return hankel_admm(meas, n, opts, stop, 0.0);
}

RecoveryResult recover_hankel_nnm_noisy(const MeasurementSet& meas, int n,
                                        const SolverOptions& opts,
                                        const IterationCallback& stop) {
    if (meas.noise_level <= 0.0)
        throw std::invalid_argument(
            "recover_hankel_nnm_noisy: needs a positive noise level");
    return hankel_admm(meas, n, opts, stop, meas.noise_level);
}

RecoveryResult recover_anm(const MeasurementSet& meas, int n,
                           const SolverOptions& opts,
                           const IterationCallback& stop) {
    meas.validate();
    if (meas.kind != MeasurementKind::EntrySampling)
        throw std::invalid_argument("recover_anm: entry sampling only");
    if (opts.max_iters < 1 || opts.tolerance <= 0.0 || opts.rho <= 0.0)
        throw std::invalid_argument("solver options out of range");
    const int nf = 2 * n - 1;
    if (meas.mask.n_full != nf)
        throw std::invalid_argument("recover_anm: mask inconsistent with n");

    const CVec& b = meas.values;
    const auto& obs = meas.mask.observed;

    // Lifted PSD variable S ~ [[Toep(u), x],[x^*, t]]; the structured side is
    // assembled from (x, u, t) and the splitting alternates a structured
    // least-squares step with a PSD cone projection.
    CVec x = CVec::Zero(nf);
    for (int i = 0; i < meas.mask.num_observed(); ++i) x[obs[i]] = b[i];
    CVec tu = CVec::Zero(nf);
    tu[0] = 1.0;
    double tr = 1.0;

    auto structured = [&](const CVec& xx, const CVec& uu, double tt) {
        CMat s(nf + 1, nf + 1);
        for (int j = 0; j < nf; ++j) {
            for (int i = 0; i <= j; ++i) {
                s(i, j) = uu[j - i];
                s(j, i) = std::conj(uu[j - i]);
            }
        }
        s.block(0, nf, nf, 1) = xx;
        s.block(nf, 0, 1, nf) = xx.adjoint();
        s(nf, nf) = Complex{tt, 0.0};
        return s;
    };

    double rho = opts.rho;
    CMat s = structured(x, tu, tr);
    CMat u = CMat::Zero(nf + 1, nf + 1);
    CMat p = s;

    RecoveryResult res;
    double rp = 0.0, rd = 0.0;
    int iter = 0;
    for (iter = 1; iter <= opts.max_iters; ++iter) {
        const CMat w = s + u;
        // Structured update: per-group averages; only u_0 and t carry
        // objective terms ((1/(2nf)) tr Toep(u) + t/2).
        for (int i = 0; i < nf; ++i) x[i] = 0.5 * (w(i, nf) + std::conj(w(nf, i)));
        for (int i = 0; i < meas.mask.num_observed(); ++i) x[obs[i]] = b[i];
        tu[0] = Complex{w.block(0, 0, nf, nf).real().trace() / nf -
                            1.0 / (2.0 * rho * nf),
                        0.0};
        for (int k = 1; k < nf; ++k) {
            Complex acc{0.0, 0.0};
            for (int i = 0; i + k < nf; ++i)
                acc += w(i, i + k) + std::conj(w(i + k, i));
            tu[k] = acc / (2.0 * static_cast<double>(nf - k));
        }
        tr = w(nf, nf).real() - 1.0 / (2.0 * rho);

        const CMat p_new = structured(x, tu, tr);
        const CMat s_new = psd_projection(p_new - u);
        rp = (s_new - p_new).norm();
        rd = rho * (s_new - s).norm();
        u += s_new - p_new;
        s = s_new;
        p = p_new;

        const double eps_pri =
            (nf + 1) * opts.tolerance +
            opts.tolerance * std::max(s.norm(), p.norm());
        const double eps_dual =
            (nf + 1) * opts.tolerance + opts.tolerance * rho * u.norm();
        if (rp < eps_pri && rd < eps_dual) {
            res.converged = true;
            break;
        }
        if (stop && stop(iter, x)) break;
        if (opts.adapt_penalty && iter % 50 == 0) {
            if (rp > 10.0 * rd) {
                rho *= 2.0;
                u *= 0.5;
            } else if (rd > 10.0 * rp) {
                rho *= 0.5;
                u *= 2.0;
            }
        }
    }

    res.x_hat = x;
    res.iterations = std::min(iter, opts.max_iters);
    res.primal_residual = rp;
    res.dual_residual = rd;
    res.objective = 0.5 * (tu[0].real() + tr);
    return res;
}

double relative_error(const CVec& x_hat, const CVec& x_true) {
    if (x_hat.size() != x_true.size())
        throw std::invalid_argument("relative_error: length mismatch");
    const double denom = x_true.norm();
    if (denom == 0.0)
        throw std::invalid_argument("relative_error: zero ground truth");
    return (x_hat - x_true).norm() / denom;
}

} // namespace hankelsr
