#pragma once

#include <functional>
#include <vector>

#include "omnideblur/gabor.hpp"
#include "omnideblur/raster.hpp"
#include "omnideblur/solver_config.hpp"

namespace omnideblur {

/// The linear map X: kernel coefficients -> latent (*) kernel (image-sized),
/// replicate boundary. `coeffs` is a flattened side*side grid.
RasterImage apply_kernel_map(const RasterImage& latent,
                             const std::vector<double>& coeffs, int side);

/// Exact adjoint of apply_kernel_map under the same boundary extension:
/// (X^T r)(q) = sum_p latent(p - q + centre) r(p), kernel-sized output.
std::vector<double> apply_kernel_map_adjoint(const RasterImage& latent,
                                             const RasterImage& r, int side);

/// Textbook conjugate gradients on a symmetric positive (semi-)definite
/// operator. Runs at most max_iters iterations, exiting early once
/// ||residual|| < 1e-9. Throws NumericError if a search direction has
/// non-positive curvature.
std::vector<double> cg_solve(
    const std::function<std::vector<double>(const std::vector<double>&)>& apply_A,
    const std::vector<double>& b, std::vector<double> k, int max_iters);

/// Kernel update: minimises sum_c zeta ||x_c (*) k - g_c||^2 + ||k||_1 by
/// iteratively reweighted least squares. Each of the irls_outer sweeps
/// rebuilds the diagonal weights w_i = 1 / (zeta * max(k_i, 1e-6)), runs
/// cg_inner CG iterations on (sum_c X_c^T X_c + diag(w)) k = sum_c X_c^T g_c,
/// and projects the iterate onto the simplex.
BlurKernel irls_solve(const GradientStack& x, const GradientStack& g,
                      const BlurKernel& k0, const SolverConfig& config);

}  // namespace omnideblur
