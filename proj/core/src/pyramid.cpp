#include "omnideblur/pyramid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "omnideblur/convolve.hpp"

namespace omnideblur {

namespace {

// Nearest odd integer, ties rounding upward: 12.5 -> 13, 6 -> 7.
int snap_to_odd(double v) {
  return 2 * int(std::floor((v - 1.0) / 2.0 + 0.5)) + 1;
}

}  // namespace

PyramidSchedule build_schedule(int h, double s, int min_side) {
  if (h < 3 || h % 2 == 0) {
    throw ConfigError("build_schedule: kernel size must be odd and >= 3, got " +
                      std::to_string(h));
  }
  if (min_side < 3 || min_side % 2 == 0) {
    throw ConfigError("build_schedule: min side must be odd and >= 3");
  }
  if (h < min_side) {
    throw ConfigError("build_schedule: kernel size below min side");
  }
  if (!(s > 1.0)) {
    throw ConfigError("build_schedule: scale ratio must exceed 1");
  }

  // Fine-to-coarse side sequence from the unsnapped values h / s^i.
  std::vector<int> sides{h};
  double v = double(h);
  while (sides.back() > min_side) {
    v /= s;
    int side = std::max(snap_to_odd(v), min_side);
    side = std::min(side, sides.back());          // snapping never regresses
    if (side != sides.back()) sides.push_back(side);
    if (v <= min_side) {
      if (sides.back() != min_side) sides.push_back(min_side);
      break;
    }
  }

  PyramidSchedule schedule;
  schedule.scale_ratio = s;
  schedule.max_kernel = h;
  schedule.levels.reserve(sides.size());
  for (auto it = sides.rbegin(); it != sides.rend(); ++it) {
    schedule.levels.push_back({*it, double(*it) / double(h)});
  }
  return schedule;
}

std::pair<int, int> level_dimensions(const PyramidLevel& level, int full_width,
                                     int full_height) {
  const int w = std::max(1, int(std::lround(full_width * level.image_scale)));
  const int h = std::max(1, int(std::lround(full_height * level.image_scale)));
  return {w, h};
}

std::pair<BlurKernel, GradientStack> init_coarsest(
    const PyramidSchedule& schedule, const RasterImage& blurred_coarse,
    const GaborBank& bank, SeededRng& rng) {
  if (schedule.levels.empty()) {
    throw ConfigError("init_coarsest: empty schedule");
  }
  const int side = schedule.levels.front().kernel_side;
  BlurKernel kernel(side);
  for (double& w : kernel.weights()) w = rng.uniform01();
  kernel.project();

  GradientStack latent = extract_gradients(blurred_coarse, bank);
  return {std::move(kernel), std::move(latent)};
}

std::pair<BlurKernel, GradientStack> upscale_state(
    const BlurKernel& kernel, const GradientStack& latent,
    const PyramidLevel& from_level, const PyramidLevel& to_level,
    int full_width, int full_height) {
  if (to_level.kernel_side <= from_level.kernel_side) {
    throw Error("upscale_state: target level is not finer than the source");
  }
  const auto [from_w, from_h] = level_dimensions(from_level, full_width, full_height);
  if (latent.width() != from_w || latent.height() != from_h) {
    throw Error("upscale_state: latent dimensions do not match the source level");
  }

  RasterImage as_image(kernel.side(), kernel.side(), kernel.weights());
  RasterImage scaled = resample_to(as_image, to_level.kernel_side, to_level.kernel_side);
  BlurKernel up(to_level.kernel_side, std::move(scaled.data()));
  up.project();

  const auto [to_w, to_h] = level_dimensions(to_level, full_width, full_height);
  GradientStack up_latent;
  up_latent.thetas = latent.thetas;
  up_latent.channels.reserve(latent.channels.size());
  for (const RasterImage& c : latent.channels) {
    up_latent.channels.push_back(resample_to(c, to_w, to_h));
  }
  return {std::move(up), std::move(up_latent)};
}

}  // namespace omnideblur
