#pragma once

#include <cstdint>
#include <string>

#include "omnideblur/raster.hpp"

namespace omnideblur {

/// Additive i.i.d. Gaussian noise in [0,1] intensity units.
struct NoiseSpec {
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

BlurKernel make_gaussian_kernel(int side, double sigma);

/// Anti-aliased line segment of the given length through the centre.
BlurKernel make_motion_kernel(int side, double length, double angle_deg);

BlurKernel make_box_kernel(int side);

/// Normalised accumulated path of a seeded unit-step random walk.
BlurKernel make_random_walk_kernel(int side, std::uint64_t seed, int steps = 0);

/// Parses the CLI kernel spec: "gaussian:SIDE:SIGMA", "motion:SIDE:ANGLE"
/// (length = side), "box:SIDE", "walk:SIDE:SEED".
BlurKernel make_kernel(const std::string& spec);

/// Ground-truth blur synthesis: convolve2d(x, k, replicate) plus seeded
/// Gaussian noise, clamped to [0,1]. With sigma = 0 this is exactly the
/// convolution.
RasterImage synthesize(const RasterImage& x, const BlurKernel& k,
                       const NoiseSpec& noise);

}  // namespace omnideblur
