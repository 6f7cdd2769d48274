#include "bqscat/contour.hpp"

#include <algorithm>
#include <cmath>

namespace bqscat {

namespace {

constexpr double deg2rad(double d) { return d * M_PI / 180.0; }

// Ray angles in degrees, indexed 1..18, increasing counterclockwise from 90.
constexpr std::array<double, 19> kRayDeg = {0,  90,   105,  135,  150,  165, -165,
                                            -150, -135, -105, -90, -75, -45,
                                            -30,  -15,  15,   30,   45,  75};

double wrap2pi(double a) {
    while (a < 0) a += 2 * M_PI;
    while (a >= 2 * M_PI) a -= 2 * M_PI;
    return a;
}

} // namespace

std::string ContourPiece::id() const {
    std::string s = "G" + std::to_string(n);
    if (kind == PieceKind::Segment) s += "p";
    if (kind == PieceKind::Ray) s += "pp";
    return s;
}

const std::array<double, 19>& ray_angles() {
    static const std::array<double, 19> a = [] {
        std::array<double, 19> r{};
        for (int n = 1; n <= 18; ++n) r[n] = deg2rad(kRayDeg[n]);
        return r;
    }();
    return a;
}

const std::vector<ContourPiece>& contour_pieces() {
    static const std::vector<ContourPiece> ps = [] {
        std::vector<ContourPiece> v;
        const auto& ang = ray_angles();
        for (int n = 1; n <= 18; ++n) {
            const double th = ang[n];
            const double th_next = ang[n % 18 + 1];
            // Arcs travel counterclockwise for n mod 6 in {1,2,3}, clockwise
            // for {4,5,0} (orientations read from the contour figure).
            const int m = n % 6;
            const bool ccw = (m == 1 || m == 2 || m == 3);
            v.push_back({n, PieceKind::Arc, th, th_next, ccw});
            v.push_back({n, PieceKind::Segment, th, th, true});
            v.push_back({n, PieceKind::Ray, th, th, true});
        }
        return v;
    }();
    return ps;
}

const ContourPiece& piece(PieceKind kind, int n) {
    for (const auto& p : contour_pieces())
        if (p.kind == kind && p.n == n) return p;
    throw InvalidInput("piece: index out of range");
}

const std::vector<cplx>& contour_star() {
    static const std::vector<cplx> pts = [] {
        std::vector<cplx> v;
        for (int n = 1; n <= 18; ++n) v.push_back(std::polar(1.0, ray_angles()[n]));
        v.push_back(0.0);
        return v;
    }();
    return pts;
}

int RegionId::f_index() const {
    if (family == Family::D) return index;
    if (family == Family::E) return index + 18;
    return 0;
}

std::string RegionId::name() const {
    if (family == Family::D) return "D" + std::to_string(index);
    if (family == Family::E) return "E" + std::to_string(index);
    return "OnBoundary";
}

namespace {

// Ascending Re-ordering of a Vec3 as a permutation digit code: the value
// 100*a + 10*b + c means component a has smallest real part, then b, then c
// (1-based component labels).
int ordering_code(const Vec3& v, double tol, bool& tie) {
    std::array<int, 3> idx = {0, 1, 2};
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return v[a].real() < v[b].real(); });
    tie = std::abs(v[idx[0]].real() - v[idx[1]].real()) < tol ||
          std::abs(v[idx[1]].real() - v[idx[2]].real()) < tol;
    return 100 * (idx[0] + 1) + 10 * (idx[1] + 1) + (idx[2] + 1);
}

struct RegionRow {
    RegionId id;
    int l_code;
    int z_code;
};

// Region table: each open region is the set where Re l and Re z take the
// listed strict ascending orderings.
const std::array<RegionRow, 36>& region_table() {
    static const std::array<RegionRow, 36> t = {{
        {RegionId::D(1), 321, 132},  {RegionId::D(2), 321, 123},
        {RegionId::D(3), 321, 213},  {RegionId::D(4), 231, 213},
        {RegionId::D(5), 231, 231},  {RegionId::D(6), 231, 321},
        {RegionId::D(7), 213, 321},  {RegionId::D(8), 213, 312},
        {RegionId::D(9), 213, 132},  {RegionId::D(10), 123, 132},
        {RegionId::D(11), 123, 123}, {RegionId::D(12), 123, 213},
        {RegionId::D(13), 132, 213}, {RegionId::D(14), 132, 231},
        {RegionId::D(15), 132, 321}, {RegionId::D(16), 312, 321},
        {RegionId::D(17), 312, 312}, {RegionId::D(18), 312, 132},
        {RegionId::E(1), 123, 231},  {RegionId::E(2), 123, 321},
        {RegionId::E(3), 123, 312},  {RegionId::E(4), 132, 312},
        {RegionId::E(5), 132, 132},  {RegionId::E(6), 132, 123},
        {RegionId::E(7), 312, 123},  {RegionId::E(8), 312, 213},
        {RegionId::E(9), 312, 231},  {RegionId::E(10), 321, 231},
        {RegionId::E(11), 321, 321}, {RegionId::E(12), 321, 312},
        {RegionId::E(13), 231, 312}, {RegionId::E(14), 231, 132},
        {RegionId::E(15), 231, 123}, {RegionId::E(16), 213, 123},
        {RegionId::E(17), 213, 213}, {RegionId::E(18), 213, 231},
    }};
    return t;
}

} // namespace

RegionId classify(cplx k, double ordering_tolerance) {
    const SpectralPoint p = make_point(k);
    bool tie_l = false, tie_z = false;
    const int lc = ordering_code(p.l, ordering_tolerance, tie_l);
    const int zc = ordering_code(p.z, ordering_tolerance, tie_z);
    if (tie_l || tie_z) return RegionId{};
    for (const auto& row : region_table())
        if (row.l_code == lc && row.z_code == zc) return row.id;
    return RegionId{}; // unreachable for consistent table
}

namespace {

// -1: column's Re-value must be minimal; +1: maximal; 0: unconstrained.
struct DomainRule {
    int l_sign;
    int z_sign;
    int z_sign_x0; ///< rule at x = 0 (l unconstrained there)
};

DomainRule rule_for(FnTag fn) {
    switch (fn) {
        case FnTag::mu1: return {+1, -1, -1};
        case FnTag::mu2: return {+1, +1, +1};
        case FnTag::mu3: return {-1, 0, 0};
        case FnTag::mu1A: return {-1, +1, +1};
        case FnTag::mu2A: return {-1, -1, -1};
        case FnTag::mu3A: return {+1, 0, 0};
        case FnTag::s: return {-1, 0, 0};
        case FnTag::sA: return {+1, 0, 0};
        case FnTag::S:
        case FnTag::SA: return {0, 0, 0};
    }
    return {0, 0, 0};
}

bool extremal(const Vec3& v, int col0, int sign, double tol) {
    if (sign == 0) return true;
    for (int i = 0; i < 3; ++i) {
        if (i == col0) continue;
        const double diff = v[col0].real() - v[i].real();
        if (sign > 0 && diff < -tol) return false;
        if (sign < 0 && diff > tol) return false;
    }
    return true;
}

} // namespace

bool in_domain(FnTag fn, int column, cplx k, bool at_x_zero, double tolerance) {
    if (column < 1 || column > 3) throw InvalidInput("in_domain: column out of range");
    if (k == cplx(0.0, 0.0)) return false;
    const SpectralPoint p = make_point(k);
    DomainRule r = rule_for(fn);
    const int c = column - 1;
    if (at_x_zero && (fn == FnTag::mu1 || fn == FnTag::mu2 || fn == FnTag::mu1A ||
                      fn == FnTag::mu2A || fn == FnTag::S || fn == FnTag::SA))
        return extremal(p.z, c, r.z_sign_x0, tolerance);
    return extremal(p.l, c, r.l_sign, tolerance) && extremal(p.z, c, r.z_sign, tolerance);
}

int sector_of(cplx k) {
    const double a = wrap2pi(std::arg(k));
    const auto& ang = ray_angles();
    for (int n = 1; n <= 18; ++n) {
        const double lo = wrap2pi(ang[n]);
        double hi = wrap2pi(ang[n % 18 + 1]);
        if (hi <= lo) hi += 2 * M_PI;
        double aa = a;
        if (aa < lo) aa += 2 * M_PI;
        if (aa >= lo && aa < hi) return n;
    }
    return 1;
}

std::vector<cplx> sample_piece(const ContourPiece& pc, int n, double ray_cutoff) {
    if (n < 1) throw InvalidInput("sample_piece: n must be >= 1");
    std::vector<cplx> candidates;
    const int dense = std::max(64 * n, 512);

    auto keep = [&](cplx k) {
        if (dist_to_degenerate(k) <= kExclusionRadius) return false;
        for (const auto& s : contour_star())
            if (std::abs(k - s) <= kExclusionRadius) return false;
        return true;
    };

    if (pc.kind == PieceKind::Arc) {
        double lo = pc.theta1, hi = pc.theta2;
        if (hi <= lo) hi += 2 * M_PI;
        for (int i = 1; i <= dense; ++i) {
            const double th = lo + (hi - lo) * i / (dense + 1.0);
            const cplx k = std::polar(1.0, th);
            if (keep(k)) candidates.push_back(k);
        }
    } else {
        const double lo = (pc.kind == PieceKind::Segment) ? 0.0 : 1.0;
        const double hi = (pc.kind == PieceKind::Segment) ? 1.0 : ray_cutoff;
        for (int i = 1; i <= dense; ++i) {
            const double r = lo + (hi - lo) * i / (dense + 1.0);
            const cplx k = std::polar(r, pc.theta1);
            if (keep(k)) candidates.push_back(k);
        }
    }
    if (static_cast<int>(candidates.size()) < n)
        throw EmptyPiece("sample_piece: exclusions consumed the piece " + pc.id());

    std::vector<cplx> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        const size_t idx = (candidates.size() - 1) * i / std::max(n - 1, 1);
        out.push_back(candidates[n == 1 ? candidates.size() / 2 : idx]);
    }
    return out;
}

SidePoints normal_offsets(const ContourPiece& pc, cplx k, double h) {
    if (pc.kind == PieceKind::Arc) {
        // Counterclockwise travel has the interior of the disk on its left.
        const cplx in = k * (1.0 - h / std::abs(k));
        const cplx out = k * (1.0 + h / std::abs(k));
        return pc.ccw ? SidePoints{in, out} : SidePoints{out, in};
    }
    // Radial pieces travel outward; the left side is counterclockwise.
    const cplx normal = cplx(0.0, 1.0) * std::polar(1.0, pc.theta1);
    return {k + h * normal, k - h * normal};
}

} // namespace bqscat
