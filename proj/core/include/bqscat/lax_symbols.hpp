#pragma once

#include <array>

#include "bqscat/algebra.hpp"

namespace bqscat {

/// Exclusion radius around the degenerate points (sixth roots of unity and 0).
inline constexpr double kExclusionRadius = 0.05;

/// The six unit points where the symbol matrix degenerates: exp(pi*i*(j-1)/3).
const std::array<cplx, 6>& degenerate_points();

/// Distance from k to the degenerate set including the origin.
double dist_to_degenerate(cplx k);

/// Spectral parameter with cached symbol values.
///
/// Index convention: j in {1,2,3} maps to omega^j; stored zero-based, so
/// l[j-1] holds l_j and z[j-1] holds z_j.
struct SpectralPoint {
    cplx k{};
    Vec3 l{};      ///< l_j(k) = i(w^j k + (w^j k)^{-1}) / (2 sqrt 3)
    Vec3 z{};      ///< z_j(k) = i((w^j k)^2 + (w^j k)^{-2}) / (4 sqrt 3)
    cplx lambda{}; ///< (k^3 + k^{-3}) / 2

    Diag3 calL() const { return l; } ///< diagonal of the x-part symbol
    Diag3 calZ() const { return z; } ///< diagonal of the t-part symbol
};

/// Populate all cached symbols. Throws ZeroArgument for k = 0.
SpectralPoint make_point(cplx k);

/// theta_ij(x,t,k) = (l_i - l_j) x + (z_i - z_j) t, with 1-based i,j.
cplx phase(int i, int j, double x, double t, const SpectralPoint& p);

/// Vandermonde symbol matrix with rows (1, l_j, l_j^2) and its inverse.
/// Throws NearSingularPoint when the l-values nearly collide (k near a
/// degenerate point).
struct Vandermonde {
    Complex3x3 P;
    Complex3x3 P_inv;
};
Vandermonde vandermonde(const SpectralPoint& p, double spacing_threshold = 1e-8);

} // namespace bqscat
