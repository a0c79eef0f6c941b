#pragma once

#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "omnideblur/gabor.hpp"
#include "omnideblur/pyramid.hpp"
#include "omnideblur/raster.hpp"
#include "omnideblur/rng.hpp"
#include "omnideblur/solver_config.hpp"

namespace omnideblur {

/// Per-level record of the coarse-to-fine estimation.
struct LevelTrace {
  int level_index;      // m for the coarsest, 1 for the finest
  int kernel_side;
  int image_width;
  int image_height;
  int channels;
  std::optional<double> sparsity_ratio;  // ||x||_1 / ||x||_2 diagnostic
  BlurKernel kernel;                     // snapshot after the level's sweeps
};

/// Everything a single estimation run produced.
struct DeblurRun {
  SolverConfig config;
  PyramidSchedule schedule;
  std::vector<LevelTrace> trace;
  BlurKernel final_kernel;
  std::optional<RasterImage> final_image;  // set by deblur(), not estimate_kernel()
};

/// ||x||_1 / ||x||_2 over the joint stack; scale-invariant sparsity measure,
/// logged per level. Undefined (throws) for an all-zero stack.
double eval_ratio_diagnostic(const GradientStack& x);

/// Coarse-to-fine kernel estimation: per level, resample the observation,
/// extract the gradient stack, run config.outer_em_iters alternations of the
/// latent (FISTA) and kernel (IRLS) updates, then carry the state up to the
/// next level. Returns the finest-level kernel plus the full trace.
std::pair<BlurKernel, DeblurRun> estimate_kernel(const RasterImage& y,
                                                 const SolverConfig& config,
                                                 const PyramidSchedule& schedule,
                                                 SeededRng& rng);

/// estimate_kernel followed by the non-blind pass with the estimated kernel.
/// The returned image matches the input dimensions, clamped to [0,1].
std::tuple<RasterImage, BlurKernel, DeblurRun> deblur(const RasterImage& y,
                                                      const SolverConfig& config,
                                                      SeededRng& rng);

}  // namespace omnideblur
