#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bqscat/lax_symbols.hpp"

namespace bqscat {

enum class PieceKind { Arc, Segment, Ray };

/// One of the 54 pieces of the jump contour: 18 unit-circle arcs, 18 radial
/// segments inside the disk, 18 radial half-lines outside.
struct ContourPiece {
    int n = 1;             ///< piece index 1..18
    PieceKind kind = PieceKind::Arc;
    double theta1 = 0.0;   ///< segment/ray: the ray angle; arc: start angle
    double theta2 = 0.0;   ///< arc: end angle (counterclockwise from theta1)
    bool ccw = true;       ///< arc travel direction; radial pieces travel outward

    std::string id() const; ///< "G7", "G7p", "G7pp"
};

/// The 18 ray angles in radians, indexed 1..18 (entry 0 unused).
const std::array<double, 19>& ray_angles();

/// All 54 contour pieces.
const std::vector<ContourPiece>& contour_pieces();

/// Lookup a single piece.
const ContourPiece& piece(PieceKind kind, int n);

/// Self-intersection points of the contour: the 18 ray feet and the origin.
const std::vector<cplx>& contour_star();

/// Open-region classification result.
struct RegionId {
    enum class Family { D, E, OnBoundary };
    Family family = Family::OnBoundary;
    int index = 0; ///< 1..18 for D/E, 0 for OnBoundary

    bool is_D() const { return family == Family::D; }
    bool is_E() const { return family == Family::E; }
    bool on_boundary() const { return family == Family::OnBoundary; }
    /// Combined index: D_n -> n, E_n -> n + 18; 0 for boundary.
    int f_index() const;
    std::string name() const;

    static RegionId D(int n) { return {Family::D, n}; }
    static RegionId E(int n) { return {Family::E, n}; }
    bool operator==(const RegionId&) const = default;
};

/// Classify k by the strict orderings of Re l_j(k) and Re z_j(k). Returns
/// OnBoundary when two Re-values coincide within the ordering tolerance.
RegionId classify(cplx k, double ordering_tolerance = 1e-12);

/// Matrix-valued quantities with per-column boundedness domains.
enum class FnTag { mu1, mu2, mu3, mu1A, mu2A, mu3A, s, S, sA, SA };

/// True iff k lies in the (closed) boundedness domain of the requested column
/// (1-based). Adjoints use the reflected orderings; at_x_zero uses the
/// enlarged x = 0 domains (only the t-exponent ordering constrains).
bool in_domain(FnTag fn, int column, cplx k, bool at_x_zero = false,
               double tolerance = 1e-12);

/// n points strictly interior to the piece avoiding the self-intersection
/// points and the degenerate set by the exclusion radius; rays truncated at
/// |k| = ray_cutoff. Throws EmptyPiece if exclusions consume the piece.
std::vector<cplx> sample_piece(const ContourPiece& pc, int n, double ray_cutoff = 6.0);

/// Points on the plus/minus side of the piece at distance h from k
/// (plus = left of the travel direction).
struct SidePoints {
    cplx k_plus;
    cplx k_minus;
};
SidePoints normal_offsets(const ContourPiece& pc, cplx k, double h);

/// The piece index 1..18 whose angular sector (between rays n and n+1)
/// contains arg(k); ties resolved toward lower index.
int sector_of(cplx k);

} // namespace bqscat
