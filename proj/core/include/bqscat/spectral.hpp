#pragma once

#include <map>
#include <mutex>

#include "bqscat/oracle.hpp"

namespace bqscat {

/// The four spectral matrices at one k together with the two products that
/// the reflection coefficients are built from.
struct SpectralMatrices {
    Complex3x3 s, S, sA, SA;
    Complex3x3 Sinv_s; ///< S^{-1} s
    Complex3x3 St_sA;  ///< S^T s^A
    std::array<bool, 3> s_valid = {true, true, true};
    std::array<bool, 3> sA_valid = {true, true, true};
};

/// Evaluate s, S, s^A, S^A at k by integrating the Lax pair from the initial
/// and boundary traces. Columns of s and s^A outside their boundedness
/// domains are left as identity columns and flagged invalid.
SpectralMatrices spectral_functions(const InitialData& init, const BoundaryData& bnd,
                                    cplx k, const SolverOptions& opt = {});

/// Compute-all variant used by the region triangular factors, which read s and
/// s^A entries outside their boundedness domains (meaningful for rapidly
/// decaying data, in the spirit of compactly supported inputs). Out-of-domain
/// columns grow like exp(rate * x), so the backward integration starts at
/// min(x_max, exponent_budget / rate); the discarded tail contributes an
/// absolute error of order its own magnitude. Throws OverflowRisk when the
/// result is not finite.
SpectralMatrices spectral_functions_full(const InitialData& init,
                                         const BoundaryData& bnd, cplx k,
                                         const SolverOptions& opt = {},
                                         double exponent_budget = 600.0);

/// The six small reflection coefficients (quotient definitions).
struct ReflectionSmall {
    cplx r1, rt1;          ///< defined on (0,i) U (-i,-i inf) U unit circle
    cplx r2, rt2, rh2, rc2;///< defined on (i,i inf) U (0,-i) U unit circle
};

/// The three sectorial reflection coefficients.
struct ReflectionBig {
    cplx R1; ///< closure of sectors 10..12 outside / 1..3 inside, + circle
    cplx R2, Rt2; ///< closure of sectors 1..3 outside / 10..12 inside, + circle
};

/// Quotients from precomputed spectral matrices. When check_domain is set, a
/// k outside the respective domain throws DomainViolation; a denominator
/// below the singular threshold throws AssumptionViolation.
ReflectionSmall reflection_small(const SpectralMatrices& m, cplx k,
                                 bool check_domain = true);
ReflectionBig reflection_big(const SpectralMatrices& m, cplx k,
                             bool check_domain = true);

/// Domain-membership helpers (geometric, tolerance 1e-9).
bool in_small_r1_domain(cplx k);
bool in_small_r2_domain(cplx k);
bool in_big_R1_domain(cplx k);
bool in_big_R2_domain(cplx k);

/// Caching evaluator: one Lax-pair solve per distinct k, shared by the jump
/// and Riemann-Hilbert layers.
class SpectralCache {
public:
    SpectralCache(InitialData init, BoundaryData bnd, SolverOptions opt = {});

    const SpectralMatrices& at(cplx k) const;
    const SpectralMatrices& at_full(cplx k) const; ///< compute-all columns
    ReflectionSmall small(cplx k, bool check_domain = true) const;
    ReflectionBig big(cplx k, bool check_domain = true) const;

    const InitialData& initial() const { return init_; }
    const BoundaryData& boundary() const { return bnd_; }
    const SolverOptions& options() const { return opt_; }

private:
    InitialData init_;
    BoundaryData bnd_;
    SolverOptions opt_;
    mutable std::map<std::pair<double, double>, SpectralMatrices> cache_;
    mutable std::map<std::pair<double, double>, SpectralMatrices> full_cache_;
    mutable std::mutex mutex_;
};

/// Residuals of the global relations
///   (S^{-1}s)(k) = e^{-T Z-hat} mu3(0,T,k),
///   (S^T s^A)(k) = e^{+T Z-hat} mu3^A(0,T,k),
/// max-norm over entries in valid columns.
struct GlobalRelationResidual {
    double direct = 0.0;
    double adjoint = 0.0;
};
GlobalRelationResidual global_relation_residual(const InitialData& init,
                                                const BoundaryData& bnd,
                                                const FullFieldGrid& grid, cplx k,
                                                const SolverOptions& opt = {});

/// Residuals of the eight displayed unit-circle relations at one circle
/// point (away from +-omega and the degenerate points).
struct CircleRelationResiduals {
    std::array<double, 8> residual = {};
    double max() const;
};
CircleRelationResiduals unit_circle_relations(const SpectralCache& sc, cplx k);

/// Fitted limits of the five reflection-coefficient asymptotics: k^2 r1 and
/// k^2 Rt2 as k -> infinity, and r2/k^2, R1/k^2, R2/k^2 as k -> 0, each along
/// its contour ray/segment. All five limits equal +-2i u(0,0)/sqrt(3). The
/// three coefficients built from boundary spectral functions keep a bounded
/// oscillatory endpoint contribution with phase (|k|^{-2}+|k|^2) T/4 along
/// these rays, so their fits include e^{+-i phase} basis functions alongside
/// the power basis.
struct ReflectionLimitFits {
    cplx k2_r1;      ///< lim k^2 r1(k), k = -ir, r -> infinity
    cplx r2_over_k2; ///< lim r2(k)/k^2, k = -ir, r -> 0
    cplx R1_over_k2; ///< lim R1(k)/k^2, k -> 0 at 135 degrees
    cplx R2_over_k2; ///< lim R2(k)/k^2, k -> 0 at -45 degrees
    cplx k2_Rt2;     ///< lim k^2 Rt2(k), k -> infinity at 135 degrees
    double misfit = 0.0; ///< max pointwise fit misfit over the five fits
};
ReflectionLimitFits reflection_limit_fits(const SpectralCache& sc, int n_points = 28);

/// Soliton-absence and endpoint-genericity diagnostics.
struct AssumptionReport {
    double min_abs_s11 = 0.0;        ///< over the no-soliton sample set
    double min_abs_Sinv_s_11 = 0.0;
    double min_abs_sA11 = 0.0;       ///< over the mirrored set
    double min_abs_sA_comb = 0.0;    ///< s^A_11 S^A_22 - s^A_21 S^A_12 on the circle
    bool solitonless = false;

    /// Richardson-extrapolated endpoint values along the circle.
    cplx r1_at[2], rt1_at[2];        ///< index 0: k=+1, 1: k=-1 (should be +1)
    cplx r2_at[2], rt2_at[2], rh2_at[2], rc2_at[2]; ///< (should be -1)
    /// |(k -+ 1) s11| at the finest approach distance (nonzero if generic).
    double pole_scale_s11[2] = {0.0, 0.0};
    bool generic = false;
};
AssumptionReport check_assumptions(const SpectralCache& sc, int samples_per_set = 24);

} // namespace bqscat
