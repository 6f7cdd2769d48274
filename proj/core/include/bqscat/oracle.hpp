#pragma once

#include "bqscat/evolve.hpp"

namespace bqscat {

/// Parameters of the manufactured quasi-linear wavepacket family: a band of
/// stable linear modes kappa in (kappa_lo, kappa_hi) subset (0,1) with smooth
/// compactly supported envelope, small overall amplitude, and seed-controlled
/// smooth phase offsets. Such u solves the linearized equation exactly, so
/// all compatibility identities hold up to O(amplitude^2).
struct WavepacketSpec {
    double amplitude = 1e-3;
    double kappa_center = 0.5;
    double kappa_width = 0.3;
    unsigned seed = 1;
    double T = 1.0;
    /// When <= 0, x_max is determined by scanning the envelope until the
    /// fields drop below decay_rel * amplitude.
    double x_max = 0.0;
    double dx = 0.0375;
    int nt = 51;
    int quad_nodes = 320;
    double decay_rel = 1e-7;
};

struct OracleDataset {
    InitialData init;
    BoundaryData bnd;
    FullFieldGrid grid;
};

/// Identically-zero dataset on [0, x_max] x [0, T].
OracleDataset zero_dataset(double T = 1.0, double x_max = 10.0);

/// Manufactured wavepacket dataset. The boundary trace of u_xxx is adjusted
/// by the O(amplitude^2) nonlinear term so that the trace conversion
/// v(0,t)' = u_x + 2 u u_x + u_xxx holds exactly as constructed.
/// Throws BandViolation when the wavenumber band leaves (0, 1).
OracleDataset wavepacket_dataset(const WavepacketSpec& spec);

/// Max-norm residual of the first-order system
///   v_t = u_x + (u^2)_x + u_xxx,   u_t = v_x
/// evaluated on the grid with 4th-order finite differences.
double pde_residual(const FullFieldGrid& grid);

/// Max-norm residual of the scalar linearized equation
///   u_tt = u_xx + u_xxxx
/// on interior stencils (diagnostic for the manufactured family).
double scalar_linear_residual(const FullFieldGrid& grid);

/// A single eigenfunction evaluation to be reproduced by the independent
/// fixed-point (Picard) solver: mu3/mu3A along t = 0, mu1/mu1A/mu2 at x = 0.
struct EigenfunctionRequest {
    FnTag which = FnTag::mu3;
    double x = 0.0; ///< evaluation abscissa for mu3, mu3A
    double t = 0.0; ///< evaluation time for mu1, mu1A, mu2
    cplx k;
    double step = 0.025;       ///< base quadrature spacing
    double osc_per_step = 0.04;///< cap on |exponent spread| * spacing
    double tol = 1e-12;        ///< successive-iterate stagnation threshold
    int max_iter = 200;
};

/// Independent reference solver: Picard iteration of the Volterra integral
/// equations with exponentially weighted composite Simpson quadrature.
/// Throws NonConvergence when the iteration fails to stagnate.
EigenfunctionValue picard_reference(const EigenfunctionRequest& req,
                                    const InitialData& init,
                                    const BoundaryData& bnd);

} // namespace bqscat
