#include "omnideblur/convolve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace omnideblur {

namespace {

int map_coord(int i, int n, BoundaryPolicy boundary) {
  // Returns -1 for "contributes zero" under ZeroPad.
  if (i >= 0 && i < n) return i;
  switch (boundary) {
    case BoundaryPolicy::ReplicateEdge:
      return std::clamp(i, 0, n - 1);
    case BoundaryPolicy::Reflect:
      while (i < 0 || i >= n) {
        if (i < 0) i = -i - 1;
        if (i >= n) i = 2 * n - 1 - i;
      }
      return i;
    case BoundaryPolicy::ZeroPad:
      return -1;
  }
  return -1;
}

// Shared worker for convolution/correlation. For correlation the kernel is
// read flipped in both axes, which is the same as negating the tap offsets.
RasterImage apply_stencil(const RasterImage& image, const BlurKernel& kernel,
                          BoundaryPolicy boundary, bool flip) {
  const int w = image.width();
  const int h = image.height();
  const int side = kernel.side();
  const int r = kernel.radius();
  if (side > w || side > h) {
    throw DimensionError("convolve2d: kernel side " + std::to_string(side) +
                         " exceeds image " + std::to_string(w) + "x" +
                         std::to_string(h));
  }

  RasterImage out(w, h);
  const double* src = image.data().data();
  double* dst = out.data().data();

  // Flipping both axes maps tap (kx,ky) to (side-1-kx, side-1-ky).
  auto tap = [&](int kx, int ky) {
    return flip ? kernel.at(side - 1 - kx, side - 1 - ky) : kernel.at(kx, ky);
  };

  for (int y = 0; y < h; ++y) {
    const bool y_interior = (y >= r && y + r < h);
    for (int x = 0; x < w; ++x) {
      const bool interior = y_interior && x >= r && x + r < w;
      double acc = 0.0;
      if (interior) {
        for (int ky = 0; ky < side; ++ky) {
          const double* row = src + std::size_t(y - ky + r) * w + (x + r);
          for (int kx = 0; kx < side; ++kx) {
            acc += tap(kx, ky) * row[-kx];
          }
        }
      } else {
        for (int ky = 0; ky < side; ++ky) {
          const int sy = map_coord(y - ky + r, h, boundary);
          if (sy < 0) continue;
          for (int kx = 0; kx < side; ++kx) {
            const int sx = map_coord(x - kx + r, w, boundary);
            if (sx < 0) continue;
            acc += tap(kx, ky) * src[std::size_t(sy) * w + sx];
          }
        }
      }
      dst[std::size_t(y) * w + x] = acc;
    }
  }
  return out;
}

}  // namespace

RasterImage convolve2d(const RasterImage& image, const BlurKernel& kernel,
                       BoundaryPolicy boundary) {
  return apply_stencil(image, kernel, boundary, /*flip=*/false);
}

RasterImage correlate2d(const RasterImage& image, const BlurKernel& kernel,
                        BoundaryPolicy boundary) {
  return apply_stencil(image, kernel, boundary, /*flip=*/true);
}

RasterImage resample_to(const RasterImage& image, int out_width, int out_height) {
  if (out_width < 1 || out_height < 1) {
    throw DimensionError("resample: output dimensions must be at least 1x1");
  }
  const int w = image.width();
  const int h = image.height();
  RasterImage out(out_width, out_height);

  const double sx_ratio = double(w) / out_width;
  const double sy_ratio = double(h) / out_height;

  for (int y = 0; y < out_height; ++y) {
    double sy = (y + 0.5) * sy_ratio - 0.5;
    sy = std::clamp(sy, 0.0, double(h - 1));
    const int y0 = std::min(int(sy), h - 1);
    const int y1 = std::min(y0 + 1, h - 1);
    const double fy = sy - y0;
    for (int x = 0; x < out_width; ++x) {
      double sx = (x + 0.5) * sx_ratio - 0.5;
      sx = std::clamp(sx, 0.0, double(w - 1));
      const int x0 = std::min(int(sx), w - 1);
      const int x1 = std::min(x0 + 1, w - 1);
      const double fx = sx - x0;
      // lerp form keeps constants and integer sample points exact
      const double top = image.at(x0, y0) + fx * (image.at(x1, y0) - image.at(x0, y0));
      const double bot = image.at(x0, y1) + fx * (image.at(x1, y1) - image.at(x0, y1));
      out.at(x, y) = top + fy * (bot - top);
    }
  }
  return out;
}

RasterImage resample(const RasterImage& image, double factor) {
  if (!(factor > 0.0)) {
    throw ConfigError("resample: factor must be positive");
  }
  const int out_w = int(std::lround(image.width() * factor));
  const int out_h = int(std::lround(image.height() * factor));
  if (out_w < 1 || out_h < 1) {
    throw DimensionError("resample: factor " + std::to_string(factor) +
                         " collapses a dimension to zero");
  }
  return resample_to(image, out_w, out_h);
}

}  // namespace omnideblur
