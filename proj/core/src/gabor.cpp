#include "omnideblur/gabor.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "omnideblur/convolve.hpp"

namespace omnideblur {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

double normalize_theta(double theta_deg) {
  double t = std::fmod(theta_deg, 180.0);
  if (t < 0.0) t += 180.0;
  return t;
}

}  // namespace

void GaborParams::validate() const {
  if (!(lambda > 0.0)) throw ConfigError("GaborParams: lambda must be positive");
  if (!(sigma > 0.0)) throw ConfigError("GaborParams: sigma must be positive");
  if (!(gamma > 0.0)) throw ConfigError("GaborParams: gamma must be positive");
  if (support != 0 && (support < 3 || support % 2 == 0)) {
    throw ConfigError("GaborParams: support must be odd and >= 3, got " +
                      std::to_string(support));
  }
}

int gabor_auto_support(double sigma) {
  int s = int(std::ceil(4.0 * sigma));
  if (s % 2 == 0) ++s;
  return std::max(s, 3);
}

double effective_wavelength(const GaborParams& params) {
  if (params.lambda >= 2.0) return params.lambda;
  return 4.0 * params.sigma;
}

BlurKernel gabor_kernel(const GaborParams& params) {
  params.validate();
  const int support = params.support != 0 ? params.support
                                          : gabor_auto_support(params.sigma);
  const int r = support / 2;
  const double theta = normalize_theta(params.theta) * kDegToRad;
  const double psi = params.psi * kDegToRad;
  const double lambda = effective_wavelength(params);
  const double cos_t = std::cos(theta);
  const double sin_t = std::sin(theta);
  const double inv_two_sigma2 = 1.0 / (2.0 * params.sigma * params.sigma);
  const double gamma2 = params.gamma * params.gamma;

  BlurKernel grid(support);
  for (int v = -r; v <= r; ++v) {
    for (int u = -r; u <= r; ++u) {
      const double up = u * cos_t + v * sin_t;
      const double vp = -u * sin_t + v * cos_t;
      const double envelope = std::exp(-(up * up + gamma2 * vp * vp) * inv_two_sigma2);
      const double carrier = std::cos(2.0 * std::numbers::pi * up / lambda + psi);
      grid.at(u + r, v + r) = envelope * carrier;
    }
  }
  return grid;
}

GaborBank make_bank(const std::vector<double>& thetas, GaborParams params) {
  if (thetas.empty()) throw ConfigError("make_bank: theta list is empty");
  params.validate();

  GaborBank bank;
  bank.params = params;
  bank.thetas.reserve(thetas.size());
  for (double t : thetas) bank.thetas.push_back(normalize_theta(t));

  for (std::size_t i = 0; i < bank.thetas.size(); ++i) {
    for (std::size_t j = i + 1; j < bank.thetas.size(); ++j) {
      if (std::abs(bank.thetas[i] - bank.thetas[j]) < 1e-9) {
        throw ConfigError("make_bank: duplicate orientation " +
                          std::to_string(bank.thetas[i]) + " (mod 180)");
      }
    }
  }

  bank.filters.reserve(bank.thetas.size());
  for (double t : bank.thetas) {
    GaborParams p = params;
    p.theta = t;
    bank.filters.push_back(gabor_kernel(p));
  }
  return bank;
}

std::vector<double> evenly_spaced_thetas(int count) {
  if (count < 1) throw ConfigError("evenly_spaced_thetas: count must be >= 1");
  std::vector<double> thetas(count);
  for (int i = 0; i < count; ++i) thetas[i] = 180.0 * i / count;
  return thetas;
}

double GradientStack::norm2() const {
  double s = 0.0;
  for (const RasterImage& c : channels) {
    for (double v : c.data()) s += v * v;
  }
  return std::sqrt(s);
}

double GradientStack::norm1() const {
  double s = 0.0;
  for (const RasterImage& c : channels) s += c.norm1();
  return s;
}

bool GradientStack::all_finite() const {
  for (const RasterImage& c : channels) {
    if (!c.all_finite()) return false;
  }
  return true;
}

void GradientStack::validate() const {
  if (channels.empty()) throw ConfigError("GradientStack: no channels");
  if (channels.size() != thetas.size()) {
    throw ConfigError("GradientStack: channel/theta count mismatch");
  }
  for (const RasterImage& c : channels) {
    if (!c.same_size(channels[0])) {
      throw DimensionError("GradientStack: channel dimensions differ");
    }
  }
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    if (thetas[i] < 0.0 || thetas[i] >= 180.0) {
      throw ConfigError("GradientStack: theta out of [0,180)");
    }
    if (i > 0 && !(thetas[i] > thetas[i - 1])) {
      throw ConfigError("GradientStack: thetas must be strictly increasing");
    }
  }
}

GradientStack extract_gradients(const RasterImage& image, const GaborBank& bank) {
  if (bank.filters.empty()) throw ConfigError("extract_gradients: empty bank");
  for (std::size_t i = 1; i < bank.thetas.size(); ++i) {
    if (!(bank.thetas[i] > bank.thetas[i - 1])) {
      throw ConfigError("extract_gradients: bank thetas must be sorted ascending");
    }
  }
  GradientStack stack;
  stack.thetas = bank.thetas;
  stack.channels.reserve(bank.filters.size());
  for (const BlurKernel& f : bank.filters) {
    stack.channels.push_back(convolve2d(image, f, BoundaryPolicy::ReplicateEdge));
  }
  stack.validate();
  return stack;
}

}  // namespace omnideblur
