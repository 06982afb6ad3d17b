#include "hankelsr/hankel.hpp"

#include <limits>
#include <stdexcept>

namespace hankelsr {

CMat build_hankel(const CVec& x, int n) {
    if (x.size() != 2 * n - 1)
        throw std::invalid_argument("build_hankel: |x| must equal 2n-1");
    CMat h(n, n);
    for (int k = 0; k < n; ++k)
        h.col(k) = x.segment(k, n);
    return h;
}

CVec hankel_adjoint(const CMat& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("hankel_adjoint: matrix must be square");
    const int n = static_cast<int>(m.rows());
    CVec out = CVec::Zero(2 * n - 1);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) out[j + k] += m(j, k);
    return out;
}

std::vector<int> antidiagonal_weights(int n) {
    if (n < 1) throw std::invalid_argument("antidiagonal_weights: n must be >= 1");
    std::vector<int> w(2 * n - 1);
    HankelShape shape{n};
    for (int i = 0; i < 2 * n - 1; ++i) w[i] = shape.weight(i);
    return w;
}

int w_min(const SampleMask& mask, int n) {
    mask.validate();
    if (mask.n_full != 2 * n - 1)
        throw std::invalid_argument("w_min: mask length must equal 2n-1");
    if (mask.is_full())
        throw std::domain_error("w_min: no unobserved entries");
    HankelShape shape{n};
    int best = std::numeric_limits<int>::max();
    for (int i : mask.unobserved()) best = std::min(best, shape.weight(i));
    return best;
}

} // namespace hankelsr
