#include <doctest.h>

#include <Eigen/Dense>

#include "hankelsr/linalg.hpp"
#include "hankelsr/rng.hpp"

using namespace hankelsr;

namespace {

CMat random_cmat(int m, int n, std::uint64_t seed) {
    Rng rng(seed);
    CMat a(m, n);
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < m; ++r) a(r, c) = rng.complex_normal();
    return a;
}

} // namespace

TEST_CASE("svd reconstructs and is orthonormal") {
    for (auto [m, n] : {std::pair{6, 6}, {8, 5}, {4, 9}}) {
        const CMat a = random_cmat(m, n, 7 * m + n);
        const Svd thin = svd(a, false);
        const int k = std::min(m, n);
        CHECK((thin.u * thin.sigma.asDiagonal() * thin.v.adjoint() - a).norm() <
              1e-12 * a.norm());
        CHECK((thin.u.adjoint() * thin.u - CMat::Identity(k, k)).norm() < 1e-12);
        CHECK((thin.v.adjoint() * thin.v - CMat::Identity(k, k)).norm() < 1e-12);
        for (int i = 1; i < k; ++i) CHECK(thin.sigma[i - 1] >= thin.sigma[i]);

        const Svd full = svd(a, true);
        CHECK((full.u.adjoint() * full.u - CMat::Identity(m, m)).norm() < 1e-12);
        CHECK((full.v.adjoint() * full.v - CMat::Identity(n, n)).norm() < 1e-12);
        CHECK((full.sigma - thin.sigma).norm() < 1e-12);
    }
}

TEST_CASE("svd agrees with an independent eigendecomposition route") {
    const CMat a = random_cmat(7, 7, 42);
    const RVec s = singular_values(a);
    // Eigenvalues of A^* A are the squared singular values.
    Eigen::SelfAdjointEigenSolver<CMat> es(a.adjoint() * a);
    RVec lam = es.eigenvalues().reverse();
    for (int i = 0; i < 7; ++i)
        CHECK(std::abs(std::sqrt(std::max(0.0, lam[i])) - s[i]) < 1e-10);
}

TEST_CASE("svt matches its definition") {
    const CMat a = random_cmat(5, 5, 3);
    CHECK((svt(a, 0.0) - a).norm() < 1e-12 * a.norm());

    const RVec s = singular_values(a);
    CHECK(svt(a, s[0] * 1.0000001).norm() == 0.0);

    const double t = s[2];
    const CMat out = svt(a, t);
    CHECK(numerical_rank(singular_values(out), 5, 5) <= 2);
    double want = 0.0;
    for (int i = 0; i < 5; ++i) want += std::max(s[i] - t, 0.0);
    CHECK(std::abs(nuclear_norm(out) - want) < 1e-10);
}

TEST_CASE("eigh and psd projection") {
    CMat a = random_cmat(6, 6, 9);
    a = 0.5 * (a + a.adjoint()).eval();
    const Eigh e = eigh(a);
    CHECK((e.vectors * e.lambda.asDiagonal() * e.vectors.adjoint() - a).norm() <
          1e-12 * std::max(1.0, a.norm()));

    const CMat p = psd_projection(a);
    const Eigh pe = eigh(p);
    CHECK(pe.lambda.minCoeff() > -1e-12);
    // Projection is the nearest PSD matrix in Frobenius norm; its distance is
    // the norm of the clipped negative part.
    double neg2 = 0.0;
    for (int i = 0; i < 6; ++i)
        neg2 += std::min(e.lambda[i], 0.0) * std::min(e.lambda[i], 0.0);
    CHECK(std::abs((p - a).norm() - std::sqrt(neg2)) < 1e-10);
}

TEST_CASE("numerical rank thresholding") {
    RVec s(4);
    s << 10.0, 1e-3, 1e-13, 0.0;
    CHECK(numerical_rank(s, 4, 4) == 2);
    CHECK(numerical_rank(RVec(), 0, 0) == 0);
}

TEST_CASE("ky fan norms are partial sums") {
    const CMat a = random_cmat(4, 6, 13);
    const RVec s = singular_values(a);
    double acc = 0.0;
    for (int k = 1; k <= 4; ++k) {
        acc += s[k - 1];
        CHECK(std::abs(ky_fan_norm(a, k) - acc) < 1e-12);
    }
    CHECK(std::abs(ky_fan_norm(a, 4) - nuclear_norm(a)) < 1e-12);
    CHECK(std::abs(spectral_norm(a) - s[0]) < 1e-14);
}
