#include "omnideblur/raster.hpp"

#include <cmath>
#include <string>

namespace omnideblur {

RasterImage::RasterImage(int width, int height, double fill)
    : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw DimensionError("RasterImage: dimensions must be at least 1x1, got " +
                         std::to_string(width) + "x" + std::to_string(height));
  }
  data_.assign(std::size_t(width) * height, fill);
}

RasterImage::RasterImage(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (width < 1 || height < 1) {
    throw DimensionError("RasterImage: dimensions must be at least 1x1, got " +
                         std::to_string(width) + "x" + std::to_string(height));
  }
  if (data_.size() != std::size_t(width) * height) {
    throw DimensionError("RasterImage: data length " +
                         std::to_string(data_.size()) + " does not match " +
                         std::to_string(width) + "x" + std::to_string(height));
  }
}

bool RasterImage::all_finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

double RasterImage::norm2() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

double RasterImage::norm1() const {
  double s = 0.0;
  for (double v : data_) s += std::abs(v);
  return s;
}

BlurKernel::BlurKernel(int side, double fill) : side_(side) {
  if (side < 1 || side % 2 == 0) {
    throw ConfigError("BlurKernel: side must be odd and >= 1, got " +
                      std::to_string(side));
  }
  weights_.assign(std::size_t(side) * side, fill);
}

BlurKernel::BlurKernel(int side, std::vector<double> weights)
    : side_(side), weights_(std::move(weights)) {
  if (side < 1 || side % 2 == 0) {
    throw ConfigError("BlurKernel: side must be odd and >= 1, got " +
                      std::to_string(side));
  }
  if (weights_.size() != std::size_t(side) * side) {
    throw DimensionError("BlurKernel: weight count " +
                         std::to_string(weights_.size()) +
                         " does not match side " + std::to_string(side));
  }
}

BlurKernel BlurKernel::delta(int side) {
  BlurKernel k(side);
  k.at(side / 2, side / 2) = 1.0;
  return k;
}

double BlurKernel::sum() const {
  double s = 0.0;
  for (double w : weights_) s += w;
  return s;
}

double BlurKernel::min_weight() const {
  double m = weights_.empty() ? 0.0 : weights_[0];
  for (double w : weights_) m = std::min(m, w);
  return m;
}

bool BlurKernel::is_feasible(double tol) const {
  for (double w : weights_) {
    if (!(w >= 0.0)) return false;
  }
  return std::abs(sum() - 1.0) <= tol;
}

void BlurKernel::project() { project_simplex(weights_); }

void project_simplex(std::vector<double>& v) {
  double s = 0.0;
  for (double& x : v) {
    if (x < 0.0) x = 0.0;
    s += x;
  }
  if (s <= 0.0) {
    for (double& x : v) x = 0.0;
    v[v.size() / 2] = 1.0;
    return;
  }
  for (double& x : v) x /= s;
}

}  // namespace omnideblur
