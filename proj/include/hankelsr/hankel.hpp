#pragma once

#include <vector>

#include "hankelsr/signal.hpp"
#include "hankelsr/types.hpp"

namespace hankelsr {

/// Index bookkeeping for the square N x N Hankel lifting of a length-(2N-1)
/// vector. Cell (j,k) (0-based) holds x[j+k]; anti-diagonal i collects the
/// cells with j+k == i.
struct HankelShape {
    int n = 1;
    int full_length() const { return 2 * n - 1; }
    /// Number of cells on anti-diagonal i (0-based, i = 0..2n-2).
    int weight(int i) const { return i < n ? i + 1 : 2 * n - 1 - i; }
};

/// H[j][k] = x[j+k], an n x n matrix from a length-(2n-1) vector.
CMat build_hankel(const CVec& x, int n);

/// Adjoint of build_hankel: out[i] = unweighted sum over anti-diagonal i.
CVec hankel_adjoint(const CMat& m);

/// w_i per anti-diagonal: i+1 for the first n, then decreasing back to 1.
std::vector<int> antidiagonal_weights(int n);

/// Minimum anti-diagonal weight over the unobserved indices. Throws
/// std::domain_error when the mask observes everything.
int w_min(const SampleMask& mask, int n);

} // namespace hankelsr
