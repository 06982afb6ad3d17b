#include "hankelsr/linalg.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

// Present when LAPACK is backed by OpenBLAS; weak so plain reference LAPACK
// links too.
extern "C" void openblas_set_num_threads(int) __attribute__((weak));

namespace hankelsr {

void pin_blas_single_thread() {
    static std::once_flag once;
    std::call_once(once, [] {
        if (openblas_set_num_threads) openblas_set_num_threads(1);
    });
}

Svd svd(const CMat& a, bool full) {
    pin_blas_single_thread();
    const int m = static_cast<int>(a.rows());
    const int n = static_cast<int>(a.cols());
    const int k = std::min(m, n);
    CMat work = a; // zgesdd destroys its input
    Svd out;
    out.sigma.resize(k);
    out.u.resize(m, full ? m : k);
    CMat vt(full ? n : k, n);
    const char jobz = full ? 'A' : 'S';
    const int info = LAPACKE_zgesdd(
        LAPACK_COL_MAJOR, jobz, m, n, work.data(), m, out.sigma.data(),
        out.u.data(), m, vt.data(), full ? n : k);
    if (info != 0)
        throw std::runtime_error("zgesdd failed to converge, info=" +
                                 std::to_string(info));
    out.v = vt.adjoint();
    return out;
}

RVec singular_values(const CMat& a) {
    pin_blas_single_thread();
    const int m = static_cast<int>(a.rows());
    const int n = static_cast<int>(a.cols());
    const int k = std::min(m, n);
    if (k == 0) return RVec();
    CMat work = a;
    RVec sigma(k);
    const int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', m, n, work.data(),
                                    m, sigma.data(), nullptr, m, nullptr, k);
    if (info != 0)
        throw std::runtime_error("zgesdd failed to converge, info=" +
                                 std::to_string(info));
    return sigma;
}

double nuclear_norm(const CMat& a) { return singular_values(a).sum(); }

double ky_fan_norm(const CMat& a, int k) {
    const RVec s = singular_values(a);
    if (k < 1 || k > s.size())
        throw std::invalid_argument("ky_fan_norm: k out of range");
    return s.head(k).sum();
}

double spectral_norm(const CMat& a) {
    const RVec s = singular_values(a);
    return s.size() > 0 ? s[0] : 0.0;
}

CMat svt(const CMat& a, double tau) {
    if (tau < 0.0) throw std::invalid_argument("svt: threshold must be >= 0");
    Svd dec = svd(a, /*full=*/false);
    const int k = static_cast<int>(dec.sigma.size());
    int rank = 0;
    for (int i = 0; i < k; ++i)
        if (dec.sigma[i] > tau) ++rank;
    if (rank == 0) return CMat::Zero(a.rows(), a.cols());
    CMat scaled = dec.u.leftCols(rank);
    for (int i = 0; i < rank; ++i) scaled.col(i) *= dec.sigma[i] - tau;
    return scaled * dec.v.leftCols(rank).adjoint();
}

Eigh eigh(const CMat& a) {
    pin_blas_single_thread();
    if (a.rows() != a.cols())
        throw std::invalid_argument("eigh: matrix must be square");
    const int n = static_cast<int>(a.rows());
    Eigh out;
    out.vectors = a;
    out.lambda.resize(n);
    const int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                                    out.vectors.data(), n, out.lambda.data());
    if (info != 0)
        throw std::runtime_error("zheevd failed, info=" + std::to_string(info));
    return out;
}

CMat psd_projection(const CMat& a) {
    CMat herm = 0.5 * (a + a.adjoint());
    Eigh dec = eigh(herm);
    const int n = static_cast<int>(herm.rows());
    // Eigenvalues ascend; only the positive tail contributes.
    int first = 0;
    while (first < n && dec.lambda[first] <= 0.0) ++first;
    if (first == n) return CMat::Zero(n, n);
    CMat scaled = dec.vectors.rightCols(n - first);
    for (int i = 0; i < n - first; ++i)
        scaled.col(i) *= dec.lambda[first + i];
    return scaled * dec.vectors.rightCols(n - first).adjoint();
}

int numerical_rank(const RVec& sigma, int rows, int cols) {
    if (sigma.size() == 0) return 0;
    const double cutoff = std::max(rows, cols) * sigma[0] * 1e-12;
    int rank = 0;
    for (int i = 0; i < sigma.size(); ++i)
        if (sigma[i] > cutoff) ++rank;
    return rank;
}

} // namespace hankelsr
