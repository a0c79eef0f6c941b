#pragma once

#include "omnideblur/raster.hpp"

namespace omnideblur {

/// Spatial 2-D convolution: out(p) = sum_q k(q) * img(p - q + centre), with
/// out-of-range pixels produced by the boundary policy. Output keeps the
/// input dimensions. Linear in both arguments.
RasterImage convolve2d(const RasterImage& image, const BlurKernel& kernel,
                       BoundaryPolicy boundary = BoundaryPolicy::ReplicateEdge);

/// Cross-correlation: convolution with the kernel flipped in both axes. Under
/// zero padding this is the exact adjoint of convolve2d.
RasterImage correlate2d(const RasterImage& image, const BlurKernel& kernel,
                        BoundaryPolicy boundary = BoundaryPolicy::ReplicateEdge);

/// Bilinear resampling to round(dims * factor). Factor 1.0 is the identity.
/// Sample positions use pixel-centre alignment with clamp-to-edge reads.
RasterImage resample(const RasterImage& image, double factor);

/// Bilinear resampling to explicit output dimensions.
RasterImage resample_to(const RasterImage& image, int out_width, int out_height);

}  // namespace omnideblur
