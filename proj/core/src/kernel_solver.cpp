#include "omnideblur/kernel_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace omnideblur {

namespace {

constexpr double kWeightFloor = 1e-6;  // keeps 1/(zeta*k_i) finite at k_i = 0

inline int clamp_coord(int i, int n) { return std::clamp(i, 0, n - 1); }

double vec_dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

RasterImage apply_kernel_map(const RasterImage& latent,
                             const std::vector<double>& coeffs, int side) {
  const int w = latent.width();
  const int h = latent.height();
  const int r = side / 2;
  RasterImage out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int ky = 0; ky < side; ++ky) {
        const int sy = clamp_coord(y - ky + r, h);
        for (int kx = 0; kx < side; ++kx) {
          const int sx = clamp_coord(x - kx + r, w);
          acc += coeffs[std::size_t(ky) * side + kx] * latent.at(sx, sy);
        }
      }
      out.at(x, y) = acc;
    }
  }
  return out;
}

std::vector<double> apply_kernel_map_adjoint(const RasterImage& latent,
                                             const RasterImage& r_img, int side) {
  const int w = latent.width();
  const int h = latent.height();
  const int r = side / 2;
  std::vector<double> out(std::size_t(side) * side, 0.0);
  // Accumulate over image pixels so the replicate reads match apply_kernel_map
  // tap for tap, which keeps the operator pair exactly adjoint.
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double rv = r_img.at(x, y);
      if (rv == 0.0) continue;
      for (int ky = 0; ky < side; ++ky) {
        const int sy = clamp_coord(y - ky + r, h);
        for (int kx = 0; kx < side; ++kx) {
          const int sx = clamp_coord(x - kx + r, w);
          out[std::size_t(ky) * side + kx] += latent.at(sx, sy) * rv;
        }
      }
    }
  }
  return out;
}

std::vector<double> cg_solve(
    const std::function<std::vector<double>(const std::vector<double>&)>& apply_A,
    const std::vector<double>& b, std::vector<double> k, int max_iters) {
  const std::size_t n = b.size();
  std::vector<double> Ak = apply_A(k);
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - Ak[i];
  std::vector<double> d = r;

  double rr = vec_dot(r, r);
  for (int j = 0; j < max_iters; ++j) {
    if (std::sqrt(rr) < 1e-9) break;
    std::vector<double> Ad = apply_A(d);
    const double dAd = vec_dot(d, Ad);
    if (!(dAd > 0.0)) {
      throw NumericError("cg_solve: operator is not positive definite "
                         "(d^T A d = " + std::to_string(dAd) + ")");
    }
    const double step = rr / dAd;
    for (std::size_t i = 0; i < n; ++i) {
      k[i] += step * d[i];
      r[i] -= step * Ad[i];
    }
    const double rr_new = vec_dot(r, r);
    const double beta = rr_new / rr;
    for (std::size_t i = 0; i < n; ++i) d[i] = r[i] + beta * d[i];
    rr = rr_new;
  }
  return k;
}

BlurKernel irls_solve(const GradientStack& x, const GradientStack& g,
                      const BlurKernel& k0, const SolverConfig& config) {
  if (x.channel_count() != g.channel_count() || x.width() != g.width() ||
      x.height() != g.height()) {
    throw DimensionError("irls_solve: x and g dimensions differ");
  }
  const int side = k0.side();
  if (side > x.width() || side > x.height()) {
    throw DimensionError("irls_solve: kernel side exceeds latent dimensions");
  }

  double energy = 0.0;
  for (const RasterImage& c : x.channels) {
    for (double v : c.data()) energy += v * v;
  }
  if (energy == 0.0) {
    throw DegenerateInputError("irls_solve: latent stack is identically zero");
  }

  // b = sum_c X_c^T g_c is independent of the iterate.
  std::vector<double> b(std::size_t(side) * side, 0.0);
  for (std::size_t c = 0; c < x.channels.size(); ++c) {
    std::vector<double> bc =
        apply_kernel_map_adjoint(x.channels[c], g.channels[c], side);
    for (std::size_t i = 0; i < b.size(); ++i) b[i] += bc[i];
  }

  std::vector<double> k = k0.weights();
  for (int outer = 0; outer < config.irls_outer; ++outer) {
    std::vector<double> weights(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) {
      weights[i] = 1.0 / (config.zeta * std::max(k[i], kWeightFloor));
    }

    auto apply_A = [&](const std::vector<double>& v) {
      std::vector<double> out(v.size(), 0.0);
      for (const RasterImage& c : x.channels) {
        RasterImage Xv = apply_kernel_map(c, v, side);
        std::vector<double> XtXv = apply_kernel_map_adjoint(c, Xv, side);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += XtXv[i];
      }
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += weights[i] * v[i];
      return out;
    };

    k = cg_solve(apply_A, b, std::move(k), config.cg_inner);
    project_simplex(k);
  }
  return BlurKernel(side, std::move(k));
}

}  // namespace omnideblur
