#pragma once

#include "hankelsr/types.hpp"

namespace hankelsr {

/// Thin or full SVD, A = U * diag(sigma) * V^*. Singular values descending.
struct Svd {
    CMat u;
    RVec sigma;
    CMat v;
};

/// Complex SVD via LAPACK zgesdd. `full` selects square U/V (all left/right
/// singular vectors); otherwise U is m x min(m,n) and V is n x min(m,n).
Svd svd(const CMat& a, bool full = false);

/// Singular values only.
RVec singular_values(const CMat& a);

/// Sum of singular values.
double nuclear_norm(const CMat& a);

/// Sum of the k largest singular values (Ky Fan k-norm).
double ky_fan_norm(const CMat& a, int k);

/// Largest singular value.
double spectral_norm(const CMat& a);

/// Singular value soft-thresholding: U * max(sigma - tau, 0) * V^*.
CMat svt(const CMat& a, double tau);

/// Hermitian eigendecomposition (ascending eigenvalues) via LAPACK zheevd.
struct Eigh {
    RVec lambda;
    CMat vectors;
};
Eigh eigh(const CMat& a);

/// Projection onto the positive semidefinite cone (input Hermitianized).
CMat psd_projection(const CMat& a);

/// Count of singular values above max(m,n) * sigma_max * 1e-12.
int numerical_rank(const RVec& sigma, int rows, int cols);

/// Pins the BLAS backend to one thread per call site; solver determinism and
/// trial-level parallelism both want BLAS itself serial. Safe to call often.
void pin_blas_single_thread();

} // namespace hankelsr
