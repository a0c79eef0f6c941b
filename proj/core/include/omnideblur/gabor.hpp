#pragma once

#include <vector>

#include "omnideblur/raster.hpp"

namespace omnideblur {

/// Parameters of a Gabor filter: a Gaussian envelope times a cosine carrier,
///   g(u,v) = exp(-(u'^2 + gamma^2 v'^2) / (2 sigma^2)) * cos(2*pi*u'/lambda + psi)
/// with u' = u cos(theta) + v sin(theta), v' = -u sin(theta) + v cos(theta).
struct GaborParams {
  double lambda = 0.5;  // carrier wavelength, pixels (see effective_wavelength)
  double theta = 0.0;   // orientation, degrees; taken modulo 180
  double psi = 90.0;    // carrier phase, degrees (90 makes the carrier odd)
  double sigma = 4.0;   // envelope standard deviation, pixels
  double gamma = 1.0;   // spatial aspect ratio
  int support = 0;      // odd window side; 0 selects 4*sigma rounded up to odd

  void validate() const;
};

/// Window side used when params.support == 0: 4*sigma rounded up to odd
/// (17 for sigma = 4), never below 3.
int gabor_auto_support(double sigma);

/// Carrier wavelength actually sampled. Wavelengths below the 2-pixel
/// sampling limit alias to a null or axis-striped carrier on the integer
/// grid (at theta = 0 the sampled cosine is identically zero), so they are
/// lifted to 4*sigma, one carrier cycle across the envelope. Wavelengths
/// >= 2 are used as given.
double effective_wavelength(const GaborParams& params);

/// Sampled filter grid (support x support), evaluated at integer offsets
/// from the centre. Not normalised: with psi = 90 the carrier is odd along
/// u', so the coefficients sum to zero and the filter kills constants.
BlurKernel gabor_kernel(const GaborParams& params);

/// Directional filter bank: one gabor_kernel per orientation.
struct GaborBank {
  std::vector<double> thetas;      // degrees, normalised to [0, 180)
  std::vector<BlurKernel> filters;
  GaborParams params;              // shared non-orientation parameters
};

/// Builds one filter per theta (input order preserved; angles normalised
/// modulo 180). Duplicate angles modulo 180 are a configuration error.
GaborBank make_bank(const std::vector<double>& thetas, GaborParams params);

/// Evenly spaced n-filter set: 0, 180/n, ..., 180(n-1)/n degrees.
std::vector<double> evenly_spaced_thetas(int count);

/// Ordered list of directional gradient images, one per orientation.
struct GradientStack {
  std::vector<RasterImage> channels;
  std::vector<double> thetas;

  int width() const { return channels.empty() ? 0 : channels[0].width(); }
  int height() const { return channels.empty() ? 0 : channels[0].height(); }
  std::size_t channel_count() const { return channels.size(); }

  double norm2() const;  // Euclidean norm over all channels jointly
  double norm1() const;
  bool all_finite() const;

  /// Nonempty, matching channel/theta counts, equal channel dimensions,
  /// thetas strictly increasing within [0, 180).
  void validate() const;
};

/// Convolves the image with every bank filter (replicate boundary) and
/// stacks the signed responses. Bank thetas must be strictly increasing.
GradientStack extract_gradients(const RasterImage& image, const GaborBank& bank);

}  // namespace omnideblur
