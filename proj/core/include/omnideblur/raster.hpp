#pragma once

#include <cstddef>
#include <vector>

#include "omnideblur/errors.hpp"

namespace omnideblur {

/// Single-channel 2-D grid of doubles, row-major. Photographic data lives in
/// [0,1]; gradient channels and filter responses carry signed values.
class RasterImage {
 public:
  RasterImage() = default;
  RasterImage(int width, int height, double fill = 0.0);
  RasterImage(int width, int height, std::vector<double> data);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }

  double& at(int x, int y) { return data_[std::size_t(y) * width_ + x]; }
  double at(int x, int y) const { return data_[std::size_t(y) * width_ + x]; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  bool same_size(const RasterImage& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }
  bool all_finite() const;

  double norm2() const;  // Euclidean norm of all values
  double norm1() const;  // sum of absolute values

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

/// Small odd-sided square stencil. Blur kernels (PSFs) are nonnegative and
/// sum to one once project() has run; intermediate solver states and
/// derivative-like filters (Gabor) hold signed weights in the same container.
class BlurKernel {
 public:
  BlurKernel() = default;
  explicit BlurKernel(int side, double fill = 0.0);
  BlurKernel(int side, std::vector<double> weights);

  /// Kernel with 1 at the centre, 0 elsewhere.
  static BlurKernel delta(int side);

  int side() const { return side_; }
  int radius() const { return side_ / 2; }

  double& at(int x, int y) { return weights_[std::size_t(y) * side_ + x]; }
  double at(int x, int y) const { return weights_[std::size_t(y) * side_ + x]; }

  std::vector<double>& weights() { return weights_; }
  const std::vector<double>& weights() const { return weights_; }

  double sum() const;
  double min_weight() const;

  /// True when nonnegative and summing to 1 within tol.
  bool is_feasible(double tol = 1e-9) const;

  /// Clamp negatives to zero and renormalise to sum 1. An all-zero (or
  /// all-negative) kernel falls back to the centred delta.
  void project();

 private:
  int side_ = 0;
  std::vector<double> weights_;
};

/// Clamp negatives to zero, then divide by the sum; if everything clamps to
/// zero the centre entry (index size/2) becomes 1.
void project_simplex(std::vector<double>& v);

/// How out-of-range pixels are produced when a stencil overhangs the frame.
enum class BoundaryPolicy {
  ReplicateEdge,  // clamp coordinates to the frame (pipeline default)
  Reflect,        // mirror about the frame edge
  ZeroPad,        // treat outside pixels as 0 (adjoint tests)
};

}  // namespace omnideblur
