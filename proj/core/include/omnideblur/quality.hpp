#pragma once

#include "omnideblur/raster.hpp"

namespace omnideblur {

/// Mean squared error over equally sized images.
double mse(const RasterImage& a, const RasterImage& b);

/// 10 log10(max_i^2 / mse); +infinity when the images are identical.
double psnr(const RasterImage& a, const RasterImage& b, double max_i);

/// Single-level orthonormal Haar subbands. Each 2x2 block (a b; c d) maps to
/// ll = (a+b+c+d)/2, lh = (a-b+c-d)/2, hl = (a+b-c-d)/2, hh = (a-b-c+d)/2.
/// Odd edges replicate the last row/column; subbands are ceil(parent/2).
struct HaarSubbands {
  RasterImage ll, lh, hl, hh;
};

HaarSubbands haar_decompose(const RasterImage& img);

struct DefocusScore {
  double q_b;      // exp(-sigma_d), in (0, 1]; higher means blurrier
  double sigma_d;  // spread of the diagonal-detail coefficients
};

/// No-reference blur score: sigma_d is the population standard deviation of
/// the hh coefficients with intensities expressed in 0..scale units
/// (default 255), and q_b = exp(-sigma_d).
DefocusScore defocus_score(const RasterImage& img, double scale = 255.0);

}  // namespace omnideblur
