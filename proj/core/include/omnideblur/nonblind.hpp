#pragma once

#include <string>

#include "omnideblur/raster.hpp"

namespace omnideblur {

enum class NonblindMethod {
  TikhonovFrequency,  // quadratic gradient prior, closed-form in frequency
  SparseGradient,     // l1 gradient prior via half-quadratic splitting
};

struct NonblindConfig {
  NonblindMethod method = NonblindMethod::TikhonovFrequency;
  double reg_weight = 1e-3;
  int inner_iters = 8;  // half-quadratic sweeps (sparse-gradient only)

  void validate() const;
};

NonblindMethod parse_nonblind_method(const std::string& name);
std::string to_string(NonblindMethod method);

/// Non-blind deconvolution with a known kernel. The image is replicate-padded
/// to the next FFT-friendly size with an 8-pixel taper blending the padded
/// border, solved on the periodic domain, cropped back, and clamped to [0,1].
RasterImage deconvolve(const RasterImage& y, const BlurKernel& k,
                       const NonblindConfig& cfg);

/// Exact minimiser of ||k (*) x - y||^2 + reg (||Dx x||^2 + ||Dy x||^2) on the
/// periodic domain (circular convolution, forward-difference gradients),
/// computed by Fourier division. Exposed so the normal equations can be
/// checked against explicit circulant operators.
RasterImage tikhonov_solve_periodic(const RasterImage& y, const BlurKernel& k,
                                    double reg);

/// Half-quadratic solver for ||k (*) x - y||^2 + reg (|Dx x| + |Dy x|)_1 on
/// the periodic domain; shrinkage on gradient auxiliaries alternated with a
/// frequency-domain quadratic solve under an increasing penalty ladder.
RasterImage sparse_gradient_solve_periodic(const RasterImage& y,
                                           const BlurKernel& k, double reg,
                                           int iters);

}  // namespace omnideblur
