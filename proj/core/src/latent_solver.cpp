#include "omnideblur/latent_solver.hpp"

#include <cmath>
#include <string>

#include "omnideblur/convolve.hpp"

namespace omnideblur {

double compute_mu(const GradientStack& x, double alpha) {
  return alpha * x.norm2();
}

double eval_objective_x(const GradientStack& x, const BlurKernel& k,
                        const GradientStack& g, double mu) {
  if (x.channel_count() != g.channel_count() || x.width() != g.width() ||
      x.height() != g.height()) {
    throw DimensionError("eval_objective_x: x and g dimensions differ");
  }
  double fit = 0.0;
  double l1 = 0.0;
  for (std::size_t c = 0; c < x.channels.size(); ++c) {
    RasterImage r = convolve2d(x.channels[c], k, BoundaryPolicy::ReplicateEdge);
    const auto& gd = g.channels[c].data();
    for (std::size_t i = 0; i < r.data().size(); ++i) {
      const double d = r.data()[i] - gd[i];
      fit += d * d;
    }
    l1 += x.channels[c].norm1();
  }
  return mu * fit + l1;
}

GradientStack fista_solve(const GradientStack& g, const BlurKernel& k,
                          const SolverConfig& config, const GradientStack& x0) {
  if (x0.channel_count() != g.channel_count() || x0.width() != g.width() ||
      x0.height() != g.height()) {
    throw DimensionError("fista_solve: x0 and g dimensions differ");
  }

  double mu = compute_mu(x0, config.alpha);
  if (mu == 0.0) mu = config.alpha * 1e-6;  // all-zero start
  const double t = config.step_t;
  std::size_t count = 0;
  for (const RasterImage& c : x0.channels) count += c.size();
  const double threshold = fista_threshold(mu, t, count);

  GradientStack out;
  out.thetas = x0.thetas;
  out.channels.reserve(x0.channels.size());

  for (std::size_t c = 0; c < x0.channels.size(); ++c) {
    const RasterImage& gc = g.channels[c];
    RasterImage x_prev = x0.channels[c];
    RasterImage x_cur = x0.channels[c];
    RasterImage z = x0.channels[c];
    double q = 1.0;

    for (int j = 1; j <= config.fista_iters; ++j) {
      // Gradient step on the data term, then shrinkage.
      RasterImage residual = convolve2d(z, k, BoundaryPolicy::ReplicateEdge);
      for (std::size_t i = 0; i < residual.data().size(); ++i) {
        residual.data()[i] -= gc.data()[i];
      }
      RasterImage grad = correlate2d(residual, k, BoundaryPolicy::ReplicateEdge);

      RasterImage x_next(z.width(), z.height());
      for (std::size_t i = 0; i < z.data().size(); ++i) {
        x_next.data()[i] = soft_shrink(z.data()[i] - t * grad.data()[i], threshold);
      }
      if (!x_next.all_finite()) {
        throw NumericError("fista_solve: non-finite values at iteration " +
                           std::to_string(j) + " (channel " +
                           std::to_string(c) + ")");
      }

      const double q_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * q * q));
      const double momentum = (q - 1.0) / q_next;
      for (std::size_t i = 0; i < z.data().size(); ++i) {
        z.data()[i] = x_next.data()[i] +
                      momentum * (x_next.data()[i] - x_cur.data()[i]);
      }
      x_prev = std::move(x_cur);
      x_cur = std::move(x_next);
      q = q_next;
    }
    out.channels.push_back(std::move(x_cur));
  }
  return out;
}

}  // namespace omnideblur
