#include "omnideblur/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "omnideblur/convolve.hpp"
#include "omnideblur/rng.hpp"

namespace omnideblur {

namespace {

void check_side(int side) {
  if (side < 1 || side % 2 == 0) {
    throw ConfigError("make_kernel: side must be odd and >= 1, got " +
                      std::to_string(side));
  }
}

// Bilinear splat of a unit of mass at floating-point kernel coordinates.
void splat(BlurKernel& k, double x, double y, double mass) {
  const int x0 = int(std::floor(x));
  const int y0 = int(std::floor(y));
  const double fx = x - x0;
  const double fy = y - y0;
  auto add = [&](int xi, int yi, double w) {
    if (xi >= 0 && xi < k.side() && yi >= 0 && yi < k.side() && w != 0.0) {
      k.at(xi, yi) += mass * w;
    }
  };
  add(x0, y0, (1 - fx) * (1 - fy));
  add(x0 + 1, y0, fx * (1 - fy));
  add(x0, y0 + 1, (1 - fx) * fy);
  add(x0 + 1, y0 + 1, fx * fy);
}

}  // namespace

BlurKernel make_gaussian_kernel(int side, double sigma) {
  check_side(side);
  if (!(sigma > 0.0)) throw ConfigError("make_kernel: gaussian sigma must be > 0");
  BlurKernel k(side);
  const int r = side / 2;
  for (int v = -r; v <= r; ++v) {
    for (int u = -r; u <= r; ++u) {
      k.at(u + r, v + r) = std::exp(-(u * u + v * v) / (2.0 * sigma * sigma));
    }
  }
  k.project();
  return k;
}

BlurKernel make_motion_kernel(int side, double length, double angle_deg) {
  check_side(side);
  if (!(length >= 1.0)) throw ConfigError("make_kernel: motion length must be >= 1");
  const int r = side / 2;
  const double a = angle_deg * std::numbers::pi / 180.0;
  const double half = (length - 1.0) / 2.0;
  if (half * std::max(std::abs(std::cos(a)), std::abs(std::sin(a))) > r + 0.5) {
    throw ConfigError("make_kernel: motion length does not fit the kernel side");
  }
  BlurKernel k(side);
  if (length == 1.0) {
    k.at(r, r) = 1.0;
    return k;
  }
  const int samples = std::max(2, int(std::ceil(length * 64)));
  for (int i = 0; i < samples; ++i) {
    const double s = -half + (2.0 * half) * i / (samples - 1);
    splat(k, r + s * std::cos(a), r + s * std::sin(a), 1.0);
  }
  k.project();
  return k;
}

BlurKernel make_box_kernel(int side) {
  check_side(side);
  BlurKernel k(side, 1.0);
  k.project();
  return k;
}

BlurKernel make_random_walk_kernel(int side, std::uint64_t seed, int steps) {
  check_side(side);
  if (steps <= 0) steps = side * side;
  SeededRng rng(seed);
  BlurKernel k(side);
  const double r = side / 2;
  double x = r, y = r;
  for (int i = 0; i < steps; ++i) {
    splat(k, x, y, 1.0);
    const double ang = 2.0 * std::numbers::pi * rng.uniform01();
    x += std::cos(ang);
    y += std::sin(ang);
    // reflect back into the grid
    if (x < 0) x = -x;
    if (y < 0) y = -y;
    if (x > side - 1) x = 2 * (side - 1) - x;
    if (y > side - 1) y = 2 * (side - 1) - y;
  }
  k.project();
  return k;
}

BlurKernel make_kernel(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.empty()) throw ConfigError("make_kernel: empty kernel spec");

  try {
    const std::string& kind = parts[0];
    if (kind == "gaussian" && parts.size() == 3) {
      return make_gaussian_kernel(std::stoi(parts[1]), std::stod(parts[2]));
    }
    if (kind == "motion" && parts.size() == 3) {
      const int side = std::stoi(parts[1]);
      return make_motion_kernel(side, double(side), std::stod(parts[2]));
    }
    if (kind == "box" && parts.size() == 2) {
      return make_box_kernel(std::stoi(parts[1]));
    }
    if (kind == "walk" && parts.size() == 3) {
      return make_random_walk_kernel(std::stoi(parts[1]),
                                     std::stoull(parts[2]));
    }
  } catch (const std::invalid_argument&) {
    throw ConfigError("make_kernel: malformed number in spec '" + spec + "'");
  } catch (const std::out_of_range&) {
    throw ConfigError("make_kernel: number out of range in spec '" + spec + "'");
  }
  throw ConfigError(
      "make_kernel: unrecognised spec '" + spec +
      "' (expected gaussian:SIDE:SIGMA, motion:SIDE:ANGLE, box:SIDE, "
      "walk:SIDE:SEED)");
}

RasterImage synthesize(const RasterImage& x, const BlurKernel& k,
                       const NoiseSpec& noise) {
  if (!(noise.sigma >= 0.0)) {
    throw ConfigError("synthesize: noise sigma must be >= 0");
  }
  RasterImage y = convolve2d(x, k, BoundaryPolicy::ReplicateEdge);
  if (noise.sigma > 0.0) {
    SeededRng rng(noise.seed);
    for (double& v : y.data()) {
      v = std::clamp(v + noise.sigma * rng.normal(), 0.0, 1.0);
    }
  }
  return y;
}

}  // namespace omnideblur
