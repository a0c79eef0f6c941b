#pragma once

#include <utility>
#include <vector>

#include "omnideblur/gabor.hpp"
#include "omnideblur/raster.hpp"
#include "omnideblur/rng.hpp"

namespace omnideblur {

struct PyramidLevel {
  int kernel_side;     // odd
  double image_scale;  // kernel_side / h, in (0,1]
};

/// Coarse-to-fine schedule: levels[0] is the coarsest, levels.back() the
/// finest (kernel side h, scale 1.0). Kernel sides strictly increase.
struct PyramidSchedule {
  std::vector<PyramidLevel> levels;
  double scale_ratio = 0.0;  // s
  int max_kernel = 0;        // h

  std::size_t level_count() const { return levels.size(); }  // m
};

/// Generates kernel sides h, h/s, h/s^2, ... with each value snapped to the
/// nearest odd integer (ties upward) and clamped to min_side, deduplicated,
/// stopping once min_side is reached. image_scale per level is side / h.
PyramidSchedule build_schedule(int h, double s, int min_side = 3);

/// Dimensions of the level image for a full-resolution frame.
std::pair<int, int> level_dimensions(const PyramidLevel& level, int full_width,
                                     int full_height);

/// Coarsest-level state: kernel weights drawn i.i.d. uniform [0,1) then
/// projected to the simplex; latent stack is the gradient extraction of the
/// coarse observation.
std::pair<BlurKernel, GradientStack> init_coarsest(
    const PyramidSchedule& schedule, const RasterImage& blurred_coarse,
    const GaborBank& bank, SeededRng& rng);

/// Carries (kernel, latent) from one level to the next finer one: kernel is
/// bilinearly resampled to the new odd side and reprojected; every latent
/// channel is resampled to the finer level's image dimensions.
std::pair<BlurKernel, GradientStack> upscale_state(
    const BlurKernel& kernel, const GradientStack& latent,
    const PyramidLevel& from_level, const PyramidLevel& to_level,
    int full_width, int full_height);

}  // namespace omnideblur
