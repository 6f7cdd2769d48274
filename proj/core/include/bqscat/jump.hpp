#pragma once

#include "bqscat/spectral.hpp"

namespace bqscat {

/// Scalar helper combinations entering the arc and axis jump matrices.
struct JumpHelpers {
    cplx f1, f2, f3, f4; ///< circle-only combinations
    cplx g, h, gt, ht;   ///< axis combinations (gt/ht are the tilde variants)
};

/// Alternative displayed forms of f1 and f2 (consistency diagnostics).
struct HelperForms {
    cplx f1_a, f1_b, f1_c;
    cplx f2_a, f2_b, f2_c;
};

/// Locate the contour piece containing a contour point (tolerance 1e-9);
/// throws DomainViolation for points off the contour.
const ContourPiece& locate_piece(cplx k);

/// Piece-indexed evaluation of the 54 jump matrices, their (x,t)-dressing,
/// the symmetry checks, and the region T-matrices.
class JumpEvaluator {
public:
    explicit JumpEvaluator(const SpectralCache& sc) : sc_(sc) {}

    JumpHelpers helpers(cplx k) const;
    HelperForms helper_forms(cplx k) const; ///< k on the unit circle

    /// The undressed jump matrix on the given piece.
    Complex3x3 vtilde(const ContourPiece& pc, cplx k) const;

    /// v(x,t,k) = e^{x L-hat + t Z-hat} vtilde(k).
    Complex3x3 v_dressed(double x, double t, const ContourPiece& pc, cplx k) const;

    /// Residuals of v(k) = A v(wk) A^{-1} and v(k) = B v(1/k)^{-1} B.
    struct SymmResiduals {
        double rot = 0.0;
        double inv = 0.0;
    };
    SymmResiduals check_vsymm(double x, double t, cplx k) const;

    /// T_n(k) for the region containing k (base formulas in sectors 7..12
    /// outside the disk, extended by the rotation/inversion symmetries).
    /// Away from the region boundaries some entries grow exponentially in the
    /// data support length; they are exact for the truncated data but carry
    /// no usable relative precision in quotients.
    Complex3x3 t_matrix(cplx k) const;

    /// Boundary-reduced forms of the two triangular factors adjacent to the
    /// upper imaginary ray outside the disk (t_minus: region-18 side,
    /// t_plus: region-1 side), expressed through reflection coefficients.
    /// Their quotient t_minus^{-1} t_plus reproduces the ray jump matrix up
    /// to the data-compatibility error.
    struct RayFactorPair {
        Complex3x3 t_minus, t_plus;
    };
    RayFactorPair t_ray1_reduced(cplx k) const;

    const SpectralCache& cache() const { return sc_; }

private:
    const SpectralCache& sc_;
};

} // namespace bqscat
