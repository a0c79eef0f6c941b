#pragma once

#include <cmath>

#include "omnideblur/gabor.hpp"
#include "omnideblur/raster.hpp"
#include "omnideblur/solver_config.hpp"

namespace omnideblur {

/// Soft shrinkage: max(|v| - threshold, 0) * sign(v).
inline double soft_shrink(double v, double threshold) {
  const double m = std::abs(v) - threshold;
  if (m <= 0.0) return 0.0;
  return v < 0.0 ? -m : m;
}

/// mu = alpha * ||x||_2, the norm taken jointly over all channels.
double compute_mu(const GradientStack& x, double alpha);

/// Latent objective: mu * sum_c ||x_c (*) k - g_c||_2^2 + sum_c ||x_c||_1,
/// convolution with replicate boundary (the pipeline default).
double eval_objective_x(const GradientStack& x, const BlurKernel& k,
                        const GradientStack& g, double mu);

/// Accelerated shrinkage-thresholding on the fixed-norm convex surrogate.
/// Runs config.fista_iters iterations per channel: gradient step
/// z - t * corr(k, conv(k, z) - g), shrinkage, then the momentum update
/// q_{j+1} = (1 + sqrt(1 + 4 q_j^2)) / 2,
/// z_{j+1} = x_j + ((q_j - 1)/q_{j+1}) (x_j - x_{j-1}).
///
/// mu is computed once from x0 (alpha * ||x0||_2, floored at alpha * 1e-6 for
/// an all-zero x0) and held fixed for the whole call. The shrink threshold is
/// mu * t / sqrt(element count): a raw mu * t grows with the stack size until
/// no single value can carry the required 1/(alpha t)^2 share of the total
/// energy and the whole latent collapses to zero, so the norm enters as the
/// root mean square, which keeps the shrinkage strength (alpha t in rms
/// units) independent of resolution.
GradientStack fista_solve(const GradientStack& g, const BlurKernel& k,
                          const SolverConfig& config, const GradientStack& x0);

/// The shrink threshold fista_solve derives from mu for a stack of n values.
inline double fista_threshold(double mu, double step_t, std::size_t n) {
  return mu * step_t / std::sqrt(double(n));
}

}  // namespace omnideblur
