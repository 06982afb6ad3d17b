#pragma once

#include <functional>

#include "hankelsr/signal.hpp"
#include "hankelsr/types.hpp"

namespace hankelsr {

struct SolverOptions {
    int max_iters = 50000;
    double tolerance = 1e-8; // primal/dual residual tolerance
    double rho = 1.0;        // ADMM penalty parameter
    bool adapt_penalty = true;
    int verbosity = 0;
};

struct RecoveryResult {
    CVec x_hat;
    int iterations = 0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double objective = 0.0; // nuclear / atomic norm at the returned iterate
    bool converged = false;
};

/// Optional per-iteration hook; returning true stops the solve early with the
/// current iterate (used by experiment sweeps once an external success
/// criterion is already met). Residual-based convergence is unaffected.
using IterationCallback = std::function<bool(int iteration, const CVec& x)>;

/// Hankel nuclear norm minimization with equality constraints,
///   min ||H(x)||_*  s.t.  A(x) = b,
/// by ADMM: singular-value soft-thresholding of the lifted variable,
/// consensus projection of x onto the constraint set (anti-diagonal averages
/// with observed entries pinned for entry sampling; a small linear solve for
/// Gaussian projections), then a dual update.
RecoveryResult recover_hankel_nnm(const MeasurementSet& meas, int n,
                                  const SolverOptions& opts = {},
                                  const IterationCallback& stop = {});

/// Noise-aware variant, min ||H(x)||_* s.t. ||A(x) - b||_2 <= delta, with the
/// constraint handled as a Euclidean-ball projection inside the splitting.
RecoveryResult recover_hankel_nnm_noisy(const MeasurementSet& meas, int n,
                                        const SolverOptions& opts = {},
                                        const IterationCallback& stop = {});

/// Atomic norm minimization baseline over undamped frequency atoms,
///   min ||x||_A  s.t.  x_M = b,
/// via the semidefinite characterization with a Hermitian Toeplitz block,
/// solved with the same operator-splitting machinery (PSD projection step).
RecoveryResult recover_anm(const MeasurementSet& meas, int n,
                           const SolverOptions& opts = {},
                           const IterationCallback& stop = {});

/// ||x_hat - x_true||_2 / ||x_true||_2.
double relative_error(const CVec& x_hat, const CVec& x_true);

} // namespace hankelsr
