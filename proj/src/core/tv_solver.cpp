#include "core/tv_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mwto {

Plane lower_bound_plane(const std::array<Plane, 3>& subband_low,
                        const std::array<double, 3>& airlight_scaled, double epsilon) {
    for (double a : airlight_scaled)
        if (!(a > 0.0))
            throw std::invalid_argument("lower_bound_plane: airlight must be positive");
    if (!subband_low[0].same_dims(subband_low[1]) || !subband_low[0].same_dims(subband_low[2]))
        throw std::invalid_argument("lower_bound_plane: sub-band dimensions differ");

    Plane lower(subband_low[0].rows, subband_low[0].cols);
    for (size_t i = 0; i < lower.size(); ++i) {
        double bound = 1.0 - subband_low[0].values[i] / airlight_scaled[0];
        bound = std::max(bound, 1.0 - subband_low[1].values[i] / airlight_scaled[1]);
        bound = std::max(bound, 1.0 - subband_low[2].values[i] / airlight_scaled[2]);
        lower.values[i] = std::clamp(bound, epsilon, 1.0);
    }
    return lower;
}

double tv_anisotropic(const Plane& plane) {
    double tv = 0.0;
    for (int r = 0; r < plane.rows; ++r)
        for (int c = 0; c + 1 < plane.cols; ++c)
            tv += std::abs(plane(r, c + 1) - plane(r, c));
    for (int r = 0; r + 1 < plane.rows; ++r)
        for (int c = 0; c < plane.cols; ++c)
            tv += std::abs(plane(r + 1, c) - plane(r, c));
    return tv;
}

double objective(const Plane& t, double lambda) {
    double frob2 = 0.0;
    for (double v : t.values)
        frob2 += v * v;
    return frob2 + lambda * tv_anisotropic(t);
}

namespace {

inline double shrink(double x, double gamma) {
    if (x > gamma)
        return x - gamma;
    if (x < -gamma)
        return x + gamma;
    return 0.0;
}

} // namespace

std::pair<TransmissionMap, SolverDiagnostics> solve_swto(const BoxTvProblem& problem) {
    const Plane& lower = problem.lower;
    if (lower.rows < 1 || lower.cols < 1)
        throw std::invalid_argument("solve_swto: empty lower bound");
    for (double v : lower.values)
        if (!(v > 0.0) || v > 1.0)
            throw std::invalid_argument("solve_swto: lower bound must lie in (0,1]");
    if (problem.lambda < 0.0)
        throw std::invalid_argument("solve_swto: lambda must be non-negative");
    if (!(problem.tol > 0.0) || problem.max_iters < 1 || problem.gs_sweeps < 1)
        throw std::invalid_argument("solve_swto: invalid solver parameters");

    const int rows = lower.rows;
    const int cols = lower.cols;
    const double lambda = problem.lambda;
    const double mu = problem.mu > 0.0 ? problem.mu : 2.0 * lambda + 0.1;
    const double thresh = lambda / mu;

    Plane t = lower;
    Plane w = t;
    Plane bw(rows, cols, 0.0);
    Plane dx(rows, cols, 0.0), dy(rows, cols, 0.0);
    Plane bx(rows, cols, 0.0), by(rows, cols, 0.0);
    Plane rhs(rows, cols, 0.0);
    Plane t_prev(rows, cols, 0.0);

    // Reciprocal diagonals of (2+mu)I + mu*L by vertex degree (0 only for
    // a 1x1 problem).
    const double inv_diag[5] = {1.0 / (2.0 + mu), 1.0 / (2.0 + 2.0 * mu),
                                1.0 / (2.0 + 3.0 * mu), 1.0 / (2.0 + 4.0 * mu),
                                1.0 / (2.0 + 5.0 * mu)};

    SolverDiagnostics diag;
    for (int iter = 1; iter <= problem.max_iters; ++iter) {
        t_prev.values = t.values;

        // rhs = mu*grad^T(d - b) + mu*(w - bw). The adjoint of the forward
        // difference is px(m,n-1) - px(m,n) with zeros past the edges.
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) {
                double acc = w(r, c) - bw(r, c);
                const double px = dx(r, c) - bx(r, c);
                const double py = dy(r, c) - by(r, c);
                acc -= px + py;
                if (c > 0)
                    acc += dx(r, c - 1) - bx(r, c - 1);
                if (r > 0)
                    acc += dy(r - 1, c) - by(r - 1, c);
                rhs(r, c) = mu * acc;
            }
        }

        // Gauss-Seidel on ((2+mu)I + mu*grad^T*grad) t = rhs, raster order,
        // with a branch-free pass over interior pixels.
        for (int sweep = 0; sweep < problem.gs_sweeps; ++sweep) {
            for (int r = 0; r < rows; ++r) {
                const bool has_up = r > 0;
                const bool has_down = r + 1 < rows;
                double* row = t.values.data() + static_cast<size_t>(r) * cols;
                const double* up = row - cols;
                const double* down = row + cols;
                const double* rhs_row = rhs.values.data() + static_cast<size_t>(r) * cols;
                const int row_deg = 2 + (has_up ? 1 : 0) + (has_down ? 1 : 0);

                auto update = [&](int c) {
                    double nb = 0.0;
                    int deg = row_deg - 2;
                    if (c > 0) {
                        nb += row[c - 1];
                        ++deg;
                    }
                    if (c + 1 < cols) {
                        nb += row[c + 1];
                        ++deg;
                    }
                    if (has_up)
                        nb += up[c];
                    if (has_down)
                        nb += down[c];
                    row[c] = (rhs_row[c] + mu * nb) * inv_diag[deg];
                };

                update(0);
                if (has_up && has_down) {
                    const double inv = inv_diag[4];
                    for (int c = 1; c + 1 < cols; ++c)
                        row[c] = (rhs_row[c] + mu * (row[c - 1] + row[c + 1] + up[c] + down[c])) *
                                 inv;
                } else {
                    for (int c = 1; c + 1 < cols; ++c)
                        update(c);
                }
                if (cols > 1)
                    update(cols - 1);
            }
        }

        // One fused pass: forward differences, shrinkage, the box projection
        // and all Bregman updates, accumulating the stopping quantities.
        // Structural zeros at the far edges stay zero because the matching
        // gradient and Bregman entries never become non-zero.
        double diff2 = 0.0;
        double res2 = 0.0;
        double norm2 = 0.0;
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) {
                const double tc = t(r, c);
                const double gxv = c + 1 < cols ? t(r, c + 1) - tc : 0.0;
                const double gyv = r + 1 < rows ? t(r + 1, c) - tc : 0.0;

                const double dxv = shrink(gxv + bx(r, c), thresh);
                const double dyv = shrink(gyv + by(r, c), thresh);
                dx(r, c) = dxv;
                dy(r, c) = dyv;
                bx(r, c) += gxv - dxv;
                by(r, c) += gyv - dyv;

                const double wv = std::clamp(tc + bw(r, c), lower(r, c), 1.0);
                w(r, c) = wv;
                bw(r, c) += tc - wv;

                const double dt = tc - t_prev(r, c);
                diff2 += dt * dt;
                const double rw = tc - wv;
                const double rx = gxv - dxv;
                const double ry = gyv - dyv;
                res2 += rw * rw + rx * rx + ry * ry;
                norm2 += t_prev(r, c) * t_prev(r, c);
            }
        }

        // The t-iterate alone can freeze for long stretches while the
        // Bregman variables are still charging toward the constraints, so
        // convergence additionally requires the split residuals t-w and
        // grad t - d to vanish at the same tolerance.
        const double denom = std::max(std::sqrt(norm2), 1e-12);
        diag.final_rel_change = std::sqrt(diff2) / denom;
        diag.iterations = iter;
        if (diag.final_rel_change < problem.tol &&
            std::sqrt(res2) / denom < problem.tol) {
            diag.converged = true;
            break;
        }
    }

    // Feasibility is hard-enforced regardless of convergence.
    for (size_t i = 0; i < t.size(); ++i)
        t.values[i] = std::clamp(t.values[i], lower.values[i], 1.0);
    diag.final_objective = objective(t, lambda);
    return {TransmissionMap{std::move(t)}, diag};
}

} // namespace mwto
