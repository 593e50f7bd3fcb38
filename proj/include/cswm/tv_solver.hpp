#pragma once

#include <functional>

#include "cswm/cs_attack.hpp"
#include "cswm/image.hpp"

namespace cswm {

struct SolverConfig {
    int max_iterations = 300;
    double step_size = 0.2;          // fallback gradient step when the
                                     // adaptive estimate is unusable
    double smoothing_epsilon = 1e-3; // smooths the gradient magnitude at 0
    double stop_tolerance = 1e-4;    // relative TV change; 0 disables the
                                     // early stop (fixed iteration count)
};

struct ReconstructionResult {
    Image image;
    int iterations_used = 0;
    double initial_tv = 0.0;
    double final_tv = 0.0;
    double data_residual = 0.0;  // worst kept-coefficient mismatch, pre-clamp
    bool converged = false;
};

// Forward differences with zero rows/columns at the far edges: dx along
// rows (next row minus this one), dy along columns.
struct GradientPair {
    Image dx, dy;
};

GradientPair discrete_gradient(const Image& img);

// Smoothed isotropic total variation and its gradient.
double tv_value(const Image& img, double epsilon);
Image tv_gradient(const Image& img, double epsilon);

using ProgressFn = std::function<void(int iteration, double tv, double residual)>;

// Recover an image from a partial DCT spectrum by minimizing total
// variation over the affine set fixed by the measurements.  Projected
// gradient descent: each step moves along the TV gradient component that
// keeps the measurements invariant, with an adaptive (Barzilai-Borwein)
// step length checked by a monotone backtracking line search, then
// re-imposes the kept coefficients exactly.
ReconstructionResult reconstruct(const MeasurementSet& measurements,
                                 const SolverConfig& config,
                                 const ProgressFn& progress = nullptr);

}  // namespace cswm
