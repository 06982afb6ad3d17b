#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "hankelsr/signal.hpp"
#include "hankelsr/solvers.hpp"
#include "hankelsr/types.hpp"

namespace hankelsr::verify {

enum class Verdict { Holds, Fails, Inapplicable };

std::string to_string(Verdict v);

/// Outcome of one numerical condition check. `margin > 0` means strict
/// satisfaction; strictness is judged against 1e-10 times the relevant scale.
struct ConditionReport {
    std::string name;
    Verdict verdict = Verdict::Inapplicable;
    double margin = 0.0;
    /// Extra named scalars (thresholds, sums, empirical errors).
    std::map<std::string, double> details;
    /// Serialized failing instance; set whenever verdict == Fails.
    std::optional<std::string> witness;
};

constexpr double kStrictTol = 1e-10;

/// Vector in the null space of the entry-sampling operator: zero on observed
/// indices, free elsewhere, not identically zero.
struct NullSpaceVector {
    CVec z;
    SampleMask mask;

    void validate() const;
    /// Unobserved entries i.i.d. complex Gaussian.
    static NullSpaceVector random(const SampleMask& mask, std::uint64_t seed);
    /// Single unobserved coordinate set to `value`.
    static NullSpaceVector coordinate(const SampleMask& mask, int index,
                                      Complex value = {1.0, 0.0});
};

struct WorstCaseBound {
    int max_guaranteed_rank = 0; // largest R with R < bound
    double bound = 0.0;          // w_min / (2 (2N-1-M))
    ConditionReport report;
};

/// Uniform-recovery sparsity bound driven by w_min of the mask.
WorstCaseBound worst_case_bound(const SampleMask& mask, int n);

/// Strong null-space condition: 2 * (sum of R largest singular values of
/// H(z)) < (sum of all); margin is the difference.
ConditionReport check_strong_nullspace(const NullSpaceVector& z, int rank,
                                       int n);

/// Weak (signal-specific) null-space condition at x_true:
/// -|Tr(U^* H(z) V)| + ||Ubar^* H(z) Vbar||_* > 0.
ConditionReport check_weak_nullspace(const CVec& x_true,
                                     const NullSpaceVector& z, int rank);

/// Average-case margin for on-grid orthogonal atoms with the single
/// unobserved entry N-1: draws R distinct grid frequencies and phases,
/// computes T = |sum_k e^{i theta_k} e^{-i 2 pi s_k (N-1)/N}| in closed form
/// and compares against N - R.
ConditionReport orthogonal_atoms_margin(int n, int rank, std::uint64_t seed);

/// Same margin evaluated the slow way: build the instance, lift, SVD, and
/// evaluate both sides of the weak condition on the anti-identity null-space
/// direction. Cross-checks the closed form (test oracle surface).
ConditionReport orthogonal_atoms_margin_matrix(int n, int rank,
                                               std::uint64_t seed);

struct TightnessInstance {
    SpectralSignal signal;
    ConditionReport report;
};

/// Construction with phases aligned so every unit summand equals one; the
/// weak condition fails whenever R >= N/2 (margin (N-R) - R <= 0).
TightnessInstance tightness_instance(int n, int rank);

/// Searches scalings t of the unobserved coordinate direction for a feasible
/// alternative with ||H(x + t e)||_* <= ||H(x)||_*; demonstrates
/// non-uniqueness of the minimizer on tightness instances.
ConditionReport tightness_alternative(const SpectralSignal& signal);

struct PerturbationOptions {
    double coeff_ratio = 1.0;      // |c_cl| / c_min
    double close_separation = 0.0; // wrap distance of the off-grid atom
    bool run_solver = false;       // also solve and record empirical error
    SolverOptions solver;
};

/// Close-atom average-case condition from the polar-factor perturbation
/// argument: |Tr(Vt Ut^* Q)| < |a| (N - R - 4 sqrt(N) d_rel) evaluated on the
/// unperturbed on-grid surrogate, d_rel = |c_cl|/c_min + 1.
ConditionReport perturbation_margin(int n, int rank,
                                    const PerturbationOptions& popts,
                                    std::uint64_t seed);

/// R following the paper's sparsity formula for the close-atom regime with
/// constant c (the root keeping N - R - 4 sqrt(N) d_rel positive).
int perturbation_rank(int n, double d_rel, double c);

/// Largest computable atomic-separation lower bound 2 sigma_min(A)/sqrt(S)
/// over the implemented atom families; the on-grid orthonormal family
/// attains 2/sqrt(n).
double separation_lower_bound(int n);

/// ||a(f1) - a(f2)||_2 for unit-norm length-n frequency atoms.
double atom_distance(int n, double f1, double f2);

/// Orthonormal-atomic-norm identities on the Hankel SVD atoms: nuclear norm
/// equals the coefficient sum (cross-checked via the Hermitian dilation
/// spectrum), SVD atoms are orthonormal, and on-grid orthogonal instances
/// have sigma_k = N |c_k|.
ConditionReport oanm_properties(const SpectralSignal& signal);

/// Nuclear-norm projector inequality ||P A Q^*||_* <= ||(I-P) A (I-Q)^*||_*
/// under the top-k vs tail singular-value precondition. Defaults to corner
/// coordinate projectors when none are given.
ConditionReport nuclear_submatrix_inequality(const CMat& a, int k,
                                             const CMat* p = nullptr,
                                             const CMat* q = nullptr);

/// Random rank-k orthogonal projector in dimension dim.
CMat random_projector(int dim, int k, std::uint64_t seed);

/// Majorization of singular-value differences by the Ky Fan norms of the
/// difference matrix.
ConditionReport sv_difference_majorization(const CMat& x, const CMat& y, int k);

/// Appendix-style 2x2 counterexample: closed-form nuclear norm of X0 + t Q
/// with t = -a e^{-i theta} against LAPACK, plus the zero-margin weak
/// condition at X0 while the perturbed norm strictly exceeds 1.
ConditionReport appendix_b_counterexample(double a, double theta);

/// Membership of Z in the nuclear-norm subdifferential at X:
/// Z = U V^* + W with U^* W = 0, W V = 0, ||W||_2 <= 1.
ConditionReport subdifferential_membership(const CMat& x, const CMat& z);

/// Random member of the subdifferential at X (for probe tests).
CMat random_subgradient(const CMat& x, std::uint64_t seed);

} // namespace hankelsr::verify
