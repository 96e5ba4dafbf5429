#ifndef MWTO_CORE_TV_SOLVER_HPP
#define MWTO_CORE_TV_SOLVER_HPP

#include <array>

#include "core/image.hpp"

namespace mwto {

/// The reduced convex program solved on one low-frequency sub-band:
///   minimize ||t||_F^2 + lambda*||t||_TV   subject to  lower <= t <= 1.
/// The lower bound absorbs the non-negativity constraint on the haze-free
/// sub-band; see lower_bound_plane.
struct BoxTvProblem {
    Plane lower;          // elementwise lower bound, values in (0,1]
    double lambda = 0.0;  // TV weight
    double mu = 0.0;      // Bregman penalty; <=0 selects 2*lambda + 0.1
    double tol = 1e-4;    // relative-change stopping threshold
    int max_iters = 100;
    int gs_sweeps = 2;    // Gauss-Seidel sweeps per outer iteration
};

struct SolverDiagnostics {
    int iterations = 0;
    double final_objective = 0.0;
    double final_rel_change = 0.0;
    bool converged = false;
};

/// Per-pixel lower bound for the transmission on a sub-band: eliminating
/// the haze-free block Q from the equality constraint, Q >= 0 becomes
///   t(m,n) >= 1 - I_c(m,n)/a_c   for every channel c,
/// clamped into [epsilon, 1].
Plane lower_bound_plane(const std::array<Plane, 3>& subband_low,
                        const std::array<double, 3>& airlight_scaled, double epsilon);

/// Anisotropic total variation: sum of |forward x-difference| +
/// |forward y-difference| with replicate boundary (edge differences zero).
double tv_anisotropic(const Plane& plane);

/// ||t||_F^2 + lambda * tv_anisotropic(t).
double objective(const Plane& t, double lambda);

/// Split Bregman iteration for the box-constrained TV program. Gradients
/// are split into d with Bregman variable b; the box constraint is handled
/// through an auxiliary w with its own Bregman variable. The t-subproblem
/// ((2+mu)I + mu*grad^T*grad) t = rhs is relaxed by a fixed number of
/// Gauss-Seidel sweeps in raster order, so results are bit-reproducible.
/// Convergence requires both the relative change of t and the split
/// residuals (t-w, grad t-d) to fall under tol; the returned map is always
/// projected onto [lower, 1].
std::pair<TransmissionMap, SolverDiagnostics> solve_swto(const BoxTvProblem& problem);

} // namespace mwto

#endif
