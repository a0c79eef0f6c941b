#pragma once

#include <numbers>
#include <vector>

#include "omnideblur/gabor.hpp"
#include "omnideblur/nonblind.hpp"

namespace omnideblur {

/// Every tunable of the estimation pipeline in one place. Defaults are the
/// published operating point.
struct SolverConfig {
  // Latent (FISTA) stage.
  double alpha = 100.0;  // data-term weight; mu = alpha * ||x||_2
  double step_t = 0.001; // gradient step and shrinkage factor
  int fista_iters = 2;   // M

  // Kernel (IRLS/CG) stage.
  double zeta = 1000.0;  // data-term weight in the kernel objective
  int irls_outer = 3;    // N1 reweighting sweeps
  int cg_inner = 5;      // N2 conjugate-gradient iterations per sweep

  // Alternations of the two stages per pyramid level.
  int outer_em_iters = 5;

  // Pyramid.
  int kernel_size = 15;                         // h, odd
  int min_kernel = 3;                           // coarsest side, odd
  double scale_ratio = std::numbers::sqrt2;     // s

  // Gradient extraction.
  std::vector<double> thetas = {0.0, 45.0, 90.0, 135.0};
  GaborParams gabor;

  // Final non-blind pass.
  NonblindConfig nonblind;

  void validate() const;
};

}  // namespace omnideblur
