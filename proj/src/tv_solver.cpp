#include "cswm/tv_solver.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cswm/errors.hpp"
#include "cswm/kernels.hpp"
#include "cswm/transforms.hpp"

namespace cswm {

GradientPair discrete_gradient(const Image& img) {
    GradientPair g{Image(img.width, img.height), Image(img.width, img.height)};
    for (int i = 0; i < img.height; ++i) {
        for (int j = 0; j < img.width; ++j) {
            if (i + 1 < img.height) g.dx.at(i, j) = img.at(i + 1, j) - img.at(i, j);
            if (j + 1 < img.width) g.dy.at(i, j) = img.at(i, j + 1) - img.at(i, j);
        }
    }
    return g;
}

double tv_value(const Image& img, double epsilon) {
    const int h = img.height, w = img.width;
    const double e2 = epsilon * epsilon;
    double total = 0.0;
    for (int i = 0; i < h; ++i) {
        for (int j = 0; j < w; ++j) {
            const double dx = (i + 1 < h) ? img.at(i + 1, j) - img.at(i, j) : 0.0;
            const double dy = (j + 1 < w) ? img.at(i, j + 1) - img.at(i, j) : 0.0;
            total += std::sqrt(dx * dx + dy * dy + e2);
        }
    }
    return total;
}

Image tv_gradient(const Image& img, double epsilon) {
    const int h = img.height, w = img.width;
    const double e2 = epsilon * epsilon;
    Image dx(w, h), dy(w, h), phi(w, h);
    for (int i = 0; i < h; ++i) {
        for (int j = 0; j < w; ++j) {
            const double vx = (i + 1 < h) ? img.at(i + 1, j) - img.at(i, j) : 0.0;
            const double vy = (j + 1 < w) ? img.at(i, j + 1) - img.at(i, j) : 0.0;
            dx.at(i, j) = vx;
            dy.at(i, j) = vy;
            phi.at(i, j) = std::sqrt(vx * vx + vy * vy + e2);
        }
    }
    Image grad(w, h);
    for (int i = 0; i < h; ++i) {
        for (int j = 0; j < w; ++j) {
            double v = -(dx.at(i, j) + dy.at(i, j)) / phi.at(i, j);
            if (i > 0) v += dx.at(i - 1, j) / phi.at(i - 1, j);
            if (j > 0) v += dy.at(i, j - 1) / phi.at(i, j - 1);
            grad.at(i, j) = v;
        }
    }
    return grad;
}

namespace {

constexpr int kMaxHalvings = 40;
constexpr double kMinAdaptiveStep = 1e-8;
constexpr double kMaxAdaptiveStep = 1e6;

// Candidate step length from `start`, halved until TV stops exceeding the
// current value; 0 when the whole sweep fails.
double backtrack(const Image& x, const Image& descent, double start,
                 double tv_limit, double epsilon, Image& scratch) {
    double tau = start;
    for (int attempt = 0; attempt <= kMaxHalvings; ++attempt) {
        for (std::size_t k = 0; k < x.pixels.size(); ++k) {
            scratch.pixels[k] = std::fma(-tau, descent.pixels[k], x.pixels[k]);
        }
        if (tv_value(scratch, epsilon) <= tv_limit) return tau;
        tau *= 0.5;
    }
    return 0.0;
}

}  // namespace

ReconstructionResult reconstruct(const MeasurementSet& measurements,
                                 const SolverConfig& config,
                                 const ProgressFn& progress) {
    const MeasurementPlan& plan = measurements.plan;
    if (measurements.values.size() != plan.kept_indices.size()) {
        throw ConfigError("reconstruct: measurement count does not match plan");
    }
    if (plan.grid_side <= 0 || plan.grid_side % 4 != 0) {
        throw ConfigError("reconstruct: plan grid side must be a positive multiple of 4");
    }
    if (config.max_iterations < 1) throw ConfigError("reconstruct: max_iterations must be >= 1");
    if (!(config.step_size > 0.0)) throw ConfigError("reconstruct: step_size must be positive");
    if (!(config.smoothing_epsilon > 0.0)) {
        throw ConfigError("reconstruct: smoothing_epsilon must be positive");
    }
    if (config.stop_tolerance < 0.0) {
        throw ConfigError("reconstruct: stop_tolerance must be non-negative");
    }

    const int n = plan.grid_side;
    const Dct2Plan& dct = dct2_plan(n, n);
    const std::size_t pixel_count = static_cast<std::size_t>(n) * n;

    std::vector<double> spectrum(pixel_count);

    const auto impose_measurements = [&](Image& img) {
        dct.forward(img.pixels.data(), spectrum.data());
        for (std::size_t k = 0; k < plan.kept_indices.size(); ++k) {
            spectrum[static_cast<std::size_t>(plan.kept_indices[k])] = measurements.values[k];
        }
        dct.inverse(spectrum.data(), img.pixels.data());
    };

    const auto strip_measured_directions = [&](Image& img) {
        dct.forward(img.pixels.data(), spectrum.data());
        for (const int idx : plan.kept_indices) {
            spectrum[static_cast<std::size_t>(idx)] = 0.0;
        }
        dct.inverse(spectrum.data(), img.pixels.data());
    };

    // Largest absolute mismatch on the kept coefficients.
    const auto residual_norm = [&](const Image& img) {
        dct.forward(img.pixels.data(), spectrum.data());
        double worst = 0.0;
        for (std::size_t k = 0; k < plan.kept_indices.size(); ++k) {
            const double d =
                spectrum[static_cast<std::size_t>(plan.kept_indices[k])] - measurements.values[k];
            worst = std::max(worst, std::abs(d));
        }
        return worst;
    };

    // Start from the measured spectrum alone (zero-filled elsewhere).
    Image x(n, n);
    impose_measurements(x);

    ReconstructionResult result;
    result.initial_tv = tv_value(x, config.smoothing_epsilon);

    double tv_prev = result.initial_tv;
    std::vector<double> x_prev, gp_prev;
    Image scratch(n, n);

    for (int iter = 0; iter < config.max_iterations; ++iter) {
        Image gp = tv_gradient(x, config.smoothing_epsilon);
        strip_measured_directions(gp);

        // Barzilai-Borwein estimate from the last step and gradient change.
        double start = config.step_size;
        if (!x_prev.empty()) {
            double ss = 0.0, sy = 0.0;
            for (std::size_t k = 0; k < pixel_count; ++k) {
                const double s = x.pixels[k] - x_prev[k];
                ss += s * s;
                sy += s * (gp.pixels[k] - gp_prev[k]);
            }
            if (sy > 1e-300) {
                start = std::clamp(ss / sy, kMinAdaptiveStep, kMaxAdaptiveStep);
            }
        }
        x_prev = x.pixels;
        gp_prev = gp.pixels;

        double tau = backtrack(x, gp, start, tv_prev, config.smoothing_epsilon, scratch);
        if (tau == 0.0 && start != config.step_size) {
            tau = backtrack(x, gp, config.step_size, tv_prev, config.smoothing_epsilon, scratch);
        }

        if (tau != 0.0) {
            for (std::size_t k = 0; k < pixel_count; ++k) {
                x.pixels[k] = std::fma(-tau, gp.pixels[k], x.pixels[k]);
            }
        }
        impose_measurements(x);

        const double tv_cur = tv_value(x, config.smoothing_epsilon);
        if (!std::isfinite(tv_cur)) {
            throw SolverError("reconstruct: objective became non-finite at iteration " +
                              std::to_string(iter));
        }
        result.iterations_used = iter + 1;
        if (progress) progress(iter, tv_cur, residual_norm(x));

        const bool settled =
            config.stop_tolerance > 0.0 && tv_prev > 0.0 &&
            std::abs(tv_cur - tv_prev) / tv_prev < config.stop_tolerance;
        tv_prev = tv_cur;
        if (settled) {
            result.converged = true;
            break;
        }
    }
    if (config.stop_tolerance == 0.0) result.converged = true;

    result.final_tv = tv_prev;
    result.data_residual = residual_norm(x);
    for (double& p : x.pixels) p = std::clamp(p, 0.0, 255.0);
    result.image = std::move(x);
    return result;
}

}  // namespace cswm
