#include "bqscat/evolve.hpp"

#include <algorithm>
#include <cmath>

namespace bqscat {

namespace {

// Right-hand side of a column of the conjugated linear system:
//   c'(y) = (dshift o c) + G(y) c,
// where dshift_i = sign * (d_i - d_col) for diagonal symbol d.
struct ColumnRhs {
    Vec3 dshift;

    Vec3 operator()(const Complex3x3& G, const Vec3& c) const {
        Vec3 r = matvec(G, c);
        for (int i = 0; i < 3; ++i) r[i] += dshift[i] * c[i];
        return r;
    }
};

double spread(const Diag3& d) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) s = std::max(s, std::abs(d[i] - d[j]));
    return s;
}

Vec3 axpy(const Vec3& a, cplx h, const Vec3& b) {
    return {a[0] + h * b[0], a[1] + h * b[1], a[2] + h * b[2]};
}

// Integrate one column from y0 to y1 with n RK4 steps; coeff(y) returns the
// zero-order coefficient matrix. Optionally records the state at sorted
// intermediate targets (monotone from y0 to y1).
Vec3 rk4_column(const ColumnRhs& rhs, const std::function<Complex3x3(double)>& coeff,
                Vec3 c, double y0, double y1, int n,
                const std::vector<double>* targets = nullptr,
                std::vector<Vec3>* target_values = nullptr) {
    if (n <= 0 || y0 == y1) {
        if (targets)
            for (size_t q = 0; q < targets->size(); ++q) (*target_values)[q] = c;
        return c;
    }
    const double h = (y1 - y0) / n;
    size_t next_target = 0;
    auto record_passed = [&](double y_reached, const Vec3& state) {
        if (!targets) return;
        while (next_target < targets->size()) {
            const double xt = (*targets)[next_target];
            const bool passed = (h > 0) ? (y_reached >= xt - 1e-12)
                                        : (y_reached <= xt + 1e-12);
            if (!passed) break;
            (*target_values)[next_target] = state;
            ++next_target;
        }
    };
    record_passed(y0, c);
    Complex3x3 Gy = coeff(y0);
    for (int s = 0; s < n; ++s) {
        const double y = y0 + s * h;
        const Complex3x3 Gm = coeff(y + h / 2.0);
        const Complex3x3 Ge = coeff(y + h);
        const Vec3 k1 = rhs(Gy, c);
        const Vec3 k2 = rhs(Gm, axpy(c, h / 2.0, k1));
        const Vec3 k3 = rhs(Gm, axpy(c, h / 2.0, k2));
        const Vec3 k4 = rhs(Ge, axpy(c, h, k3));
        for (int i = 0; i < 3; ++i)
            c[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        Gy = Ge;
        record_passed(y + h, c);
    }
    record_passed(y1, c);
    return c;
}

int step_count(double length, const Diag3& d, const SolverOptions& opt) {
    const double sp = spread(d);
    double h = opt.base_step;
    if (sp > 0) h = std::min(h, opt.osc_per_step / sp);
    return std::max(opt.min_steps, static_cast<int>(std::ceil(length / h)));
}

// One leg of an integration path.
struct Leg {
    Diag3 d;        ///< diagonal symbol (l or z values)
    double sign;    ///< +1 for direct equations, -1 for adjoints
    std::function<Complex3x3(double)> coeff; ///< U-like matrix (already signed)
    double y0, y1;
};

} // namespace

// ---------------------------------------------------------------------------

namespace {

// Shared driver: integrate the requested columns of an eigenfunction along a
// sequence of legs, with optional step-halving refinement.
EigenfunctionValue solve_legs(const std::vector<Leg>& legs, FnTag tag, cplx k,
                              bool at_x_zero_domains, const SolverOptions& opt) {
    EigenfunctionValue out;
    out.m = Complex3x3::identity();
    double worst_err = -1.0;
    for (int col = 0; col < 3; ++col) {
        const bool valid = in_domain(tag, col + 1, k, at_x_zero_domains);
        out.column_valid[col] = valid;
        if (!valid && opt.skip_invalid_columns) continue;

        auto run = [&](int extra_halvings) {
            Vec3 c = {0.0, 0.0, 0.0};
            c[col] = 1.0;
            for (const auto& leg : legs) {
                ColumnRhs rhs;
                for (int i = 0; i < 3; ++i)
                    rhs.dshift[i] = leg.sign * (leg.d[i] - leg.d[col]);
                int n = step_count(std::abs(leg.y1 - leg.y0), leg.d, opt);
                n <<= extra_halvings;
                c = rk4_column(rhs, leg.coeff, c, leg.y0, leg.y1, n);
            }
            return c;
        };

        Vec3 c = run(0);
        if (opt.refine_tol > 0.0) {
            for (int hv = 1; hv <= opt.max_halvings; ++hv) {
                const Vec3 c2 = run(hv);
                double diff = 0.0;
                for (int i = 0; i < 3; ++i) diff = std::max(diff, std::abs(c2[i] - c[i]));
                c = c2;
                worst_err = std::max(worst_err, diff);
                if (diff < opt.refine_tol) break;
            }
        }
        for (int i = 0; i < 3; ++i) out.m(i, col) = c[i];
    }
    out.est_error = worst_err;
    return out;
}

Leg x_leg(const XFieldFn& fields, const LaxMatrices& lm, bool adjoint, double from,
          double to) {
    Leg leg;
    leg.d = lm.p.calL();
    leg.sign = adjoint ? -1.0 : 1.0;
    if (adjoint)
        leg.coeff = [fields, lm](double x) {
            Complex3x3 U = lm.U(fields(x));
            return cplx(-1.0) * transpose(U);
        };
    else
        leg.coeff = [fields, lm](double x) { return lm.U(fields(x)); };
    leg.y0 = from;
    leg.y1 = to;
    return leg;
}

Leg t_leg(const TFieldFn& fields, const LaxMatrices& lm, bool adjoint, double from,
          double to) {
    Leg leg;
    leg.d = lm.p.calZ();
    leg.sign = adjoint ? -1.0 : 1.0;
    if (adjoint)
        leg.coeff = [fields, lm](double t) {
            Complex3x3 V = lm.V(fields(t));
            return cplx(-1.0) * transpose(V);
        };
    else
        leg.coeff = [fields, lm](double t) { return lm.V(fields(t)); };
    leg.y0 = from;
    leg.y1 = to;
    return leg;
}

} // namespace

EigenfunctionValue solve_mu3(const XFieldFn& fields, double x_max,
                             const SpectralPoint& p, double x,
                             const SolverOptions& opt) {
    const LaxMatrices lm = lax_matrices(p);
    return solve_legs({x_leg(fields, lm, false, x_max, x)}, FnTag::mu3, p.k, false, opt);
}

EigenfunctionValue solve_mu3(const InitialData& data, const SpectralPoint& p, double x,
                             const SolverOptions& opt) {
    return solve_mu3(data.x_fields(), data.x_max(), p, x, opt);
}

EigenfunctionValue solve_mu3A(const XFieldFn& fields, double x_max,
                              const SpectralPoint& p, double x,
                              const SolverOptions& opt) {
    const LaxMatrices lm = lax_matrices(p);
    return solve_legs({x_leg(fields, lm, true, x_max, x)}, FnTag::mu3A, p.k, false, opt);
}

EigenfunctionValue solve_mu3A(const InitialData& data, const SpectralPoint& p, double x,
                              const SolverOptions& opt) {
    return solve_mu3A(data.x_fields(), data.x_max(), p, x, opt);
}

EigenfunctionValue solve_mu1_boundary(const BoundaryData& data, const SpectralPoint& p,
                                      double t, const SolverOptions& opt) {
    const LaxMatrices lm = lax_matrices(p);
    SolverOptions o = opt;
    o.skip_invalid_columns = false; // finite interval: defined for all columns
    EigenfunctionValue v =
        solve_legs({t_leg(data.t_fields(), lm, false, data.T(), t)}, FnTag::mu1, p.k,
                   true, o);
    return v;
}

EigenfunctionValue solve_mu1A_boundary(const BoundaryData& data, const SpectralPoint& p,
                                       double t, const SolverOptions& opt) {
    const LaxMatrices lm = lax_matrices(p);
    SolverOptions o = opt;
    o.skip_invalid_columns = false;
    return solve_legs({t_leg(data.t_fields(), lm, true, data.T(), t)}, FnTag::mu1A, p.k,
                      true, o);
}

EigenfunctionValue solve_mu2_boundary(const BoundaryData& data, const SpectralPoint& p,
                                      double t, const SolverOptions& opt) {
    const LaxMatrices lm = lax_matrices(p);
    SolverOptions o = opt;
    o.skip_invalid_columns = false;
    return solve_legs({t_leg(data.t_fields(), lm, false, 0.0, t)}, FnTag::mu2, p.k,
                      true, o);
}

EigenfunctionValue solve_mu_general(int which, const FullFieldGrid& grid,
                                    const BoundaryData& bnd, double x, double t,
                                    const SpectralPoint& p, const SolverOptions& opt) {
    const LaxMatrices lm = lax_matrices(p);
    std::vector<Leg> legs;
    FnTag tag;
    switch (which) {
        case 1:
            tag = FnTag::mu1;
            legs.push_back(t_leg(bnd.t_fields(), lm, false, grid.T(), t));
            legs.push_back(x_leg(grid.x_fields(t), lm, false, 0.0, x));
            break;
        case 2:
            tag = FnTag::mu2;
            legs.push_back(t_leg(bnd.t_fields(), lm, false, 0.0, t));
            legs.push_back(x_leg(grid.x_fields(t), lm, false, 0.0, x));
            break;
        case 3:
            tag = FnTag::mu3;
            legs.push_back(x_leg(grid.x_fields(t), lm, false, grid.x_max(), x));
            break;
        default:
            throw InvalidInput("solve_mu_general: which must be 1, 2 or 3");
    }
    return solve_legs(legs, tag, p.k, false, opt);
}

std::vector<EigenfunctionValue> solve_mu3_multi(const XFieldFn& fields, double x_max,
                                                const SpectralPoint& p,
                                                const std::vector<double>& xs,
                                                const SolverOptions& opt) {
    const LaxMatrices lm = lax_matrices(p);
    std::vector<EigenfunctionValue> out(xs.size());
    if (xs.empty()) return out;
    // Backward sweep: targets must be visited in descending order.
    std::vector<double> targets(xs.rbegin(), xs.rend());
    for (size_t q = 0; q + 1 < targets.size(); ++q)
        if (targets[q] < targets[q + 1])
            throw InvalidInput("solve_mu3_multi: xs must be sorted ascending");

    const Leg leg = x_leg(fields, lm, false, x_max, targets.back());
    for (int col = 0; col < 3; ++col) {
        const bool valid = in_domain(FnTag::mu3, col + 1, p.k);
        for (auto& ev : out) ev.column_valid[col] = valid;
        if (!valid && opt.skip_invalid_columns) continue;
        ColumnRhs rhs;
        for (int i = 0; i < 3; ++i) rhs.dshift[i] = leg.d[i] - leg.d[col];
        const int n = step_count(std::abs(leg.y1 - leg.y0), leg.d, opt);
        Vec3 c = {0.0, 0.0, 0.0};
        c[col] = 1.0;
        std::vector<Vec3> tv(targets.size());
        rk4_column(rhs, leg.coeff, c, leg.y0, leg.y1, n, &targets, &tv);
        for (size_t q = 0; q < targets.size(); ++q) {
            // targets are reversed relative to xs
            auto& ev = out[xs.size() - 1 - q];
            for (int i = 0; i < 3; ++i) ev.m(i, col) = tv[q][i];
        }
    }
    return out;
}

} // namespace bqscat
