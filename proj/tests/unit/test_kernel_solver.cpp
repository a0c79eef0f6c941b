#include <doctest.h>

#include <cmath>

#include "omnideblur/convolve.hpp"
#include "omnideblur/kernel_solver.hpp"
#include "omnideblur/rng.hpp"
#include "omnideblur/synth.hpp"
#include "oracles.hpp"
#include "scenes.hpp"

using namespace omnideblur;

namespace {

GradientStack single_channel(RasterImage img) {
  GradientStack s;
  s.channels.push_back(std::move(img));
  s.thetas.push_back(0.0);
  return s;
}

RasterImage random_signed(int w, int h, SeededRng& rng, double sigma) {
  RasterImage img(w, h);
  for (double& v : img.data()) v = sigma * rng.normal();
  return img;
}

// Explicit matrix wrapped as an operator.
auto matrix_operator(const std::vector<double>& A, std::size_t n) {
  return [&A, n](const std::vector<double>& v) {
    std::vector<double> out(n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      double s = 0.0;
      for (std::size_t c = 0; c < n; ++c) s += A[r * n + c] * v[c];
      out[r] = s;
    }
    return out;
  };
}

std::vector<double> random_spd(std::size_t n, SeededRng& rng) {
  // M^T M / n + I: symmetric positive definite with a mild condition number,
  // the regime in which n-step CG reaches the direct solution in floating
  // point as the exact-arithmetic theory promises.
  std::vector<double> M(n * n);
  for (double& v : M) v = rng.normal();
  std::vector<double> A(n * n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += M[i * n + r] * M[i * n + c];
      A[r * n + c] = s / double(n) + (r == c ? 1.0 : 0.0);
    }
  }
  return A;
}

}  // namespace

TEST_CASE("cg on the identity converges in one iteration") {
  SeededRng rng(40);
  std::vector<double> b(9);
  for (double& v : b) v = rng.normal();
  int calls = 0;
  auto identity = [&calls](const std::vector<double>& v) {
    ++calls;
    return v;
  };
  std::vector<double> x = cg_solve(identity, b, std::vector<double>(9, 0.0), 10);
  for (std::size_t i = 0; i < b.size(); ++i) {
    CHECK(x[i] == doctest::Approx(b[i]).epsilon(1e-12));
  }
  CHECK(calls <= 3);  // initial residual + one iteration (+ convergence check)
}

TEST_CASE("cg with zero right-hand side consumes no iterations") {
  int calls = 0;
  auto identity = [&calls](const std::vector<double>& v) {
    ++calls;
    return v;
  };
  std::vector<double> x =
      cg_solve(identity, std::vector<double>(4, 0.0), std::vector<double>(4, 0.0), 10);
  CHECK(x == std::vector<double>(4, 0.0));
  CHECK(calls == 1);  // only the initial residual evaluation
}

TEST_CASE("cg matches a dense direct solve on random SPD systems") {
  SeededRng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + std::size_t(rng.uniform01() * 24);
    std::vector<double> A = random_spd(n, rng);
    std::vector<double> b(n);
    for (double& v : b) v = rng.normal();
    std::vector<double> expect = oracles::dense_solve(A, b);
    std::vector<double> got =
        cg_solve(matrix_operator(A, n), b, std::vector<double>(n, 0.0), int(n));
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(got[i] - expect[i]));
    CHECK(err < 1e-6);
  }
}

TEST_CASE("cg rejects non-positive-definite operators") {
  auto negate = [](const std::vector<double>& v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
    return out;
  };
  std::vector<double> b{1.0, 2.0, 3.0};
  CHECK_THROWS_AS(cg_solve(negate, b, std::vector<double>(3, 0.0), 5), NumericError);
}

TEST_CASE("kernel map agrees with convolve2d and its adjoint is exact") {
  SeededRng rng(42);
  RasterImage latent = random_signed(10, 9, rng, 0.5);
  const int side = 3;
  std::vector<double> coeffs(9);
  for (double& v : coeffs) v = rng.normal();

  RasterImage via_map = apply_kernel_map(latent, coeffs, side);
  RasterImage via_conv = convolve2d(latent, BlurKernel(side, coeffs),
                                    BoundaryPolicy::ReplicateEdge);
  for (std::size_t i = 0; i < via_map.data().size(); ++i) {
    CHECK(via_map.data()[i] == doctest::Approx(via_conv.data()[i]).epsilon(1e-12));
  }

  RasterImage r = random_signed(10, 9, rng, 0.5);
  const double lhs = oracles::image_dot(via_map, r);
  const double rhs = oracles::dot(coeffs, apply_kernel_map_adjoint(latent, r, side));
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("irls output is always feasible") {
  SeededRng rng(43);
  SolverConfig cfg;
  GradientStack x = single_channel(random_signed(16, 16, rng, 1.0));
  GradientStack g = single_channel(random_signed(16, 16, rng, 1.0));
  BlurKernel k0 = BlurKernel::delta(5);
  BlurKernel k = irls_solve(x, g, k0, cfg);
  CHECK(k.is_feasible());
  CHECK(k.min_weight() >= 0.0);
  CHECK(k.sum() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("latent equal to target recovers a centred near-delta") {
  SeededRng rng(44);
  SolverConfig cfg;
  RasterImage img = random_signed(16, 16, rng, 1.0);
  GradientStack x = single_channel(img);
  GradientStack g = single_channel(img);
  BlurKernel k = irls_solve(x, g, BlurKernel::delta(3), cfg);
  double max_w = 0.0;
  for (double w : k.weights()) max_w = std::max(max_w, w);
  CHECK(k.at(1, 1) == doctest::Approx(max_w));
  CHECK(k.at(1, 1) >= 0.5);
}

TEST_CASE("synthetic recovery of a 3x3 box kernel") {
  SolverConfig cfg;
  cfg.cg_inner = 25;  // solve the normal equations well for this check
  const BlurKernel truth = make_box_kernel(3);
  RasterImage sharp = scenes::scene_shapes(32, 32);
  RasterImage blurred = convolve2d(sharp, truth, BoundaryPolicy::ReplicateEdge);

  GaborParams fine;
  fine.sigma = 1.5;  // compact filters keep the operator well conditioned
  GaborBank bank = make_bank({0, 45, 90, 135}, fine);
  GradientStack x = extract_gradients(sharp, bank);
  GradientStack g = extract_gradients(blurred, bank);

  BlurKernel k0 = BlurKernel::delta(3);
  BlurKernel est = irls_solve(x, g, k0, cfg);
  CHECK(oracles::ncc_aligned(est, truth) >= 0.9);

  SUBCASE("the kernel objective does not increase") {
    const double before = oracles::objective_k_reference(x, g, k0, cfg.zeta);
    const double after = oracles::objective_k_reference(x, g, est, cfg.zeta);
    CHECK(after <= before * (1.0 + 1e-8));
  }
}

TEST_CASE("zero weights in the start kernel are handled by the floor") {
  SeededRng rng(45);
  SolverConfig cfg;
  GradientStack x = single_channel(random_signed(12, 12, rng, 0.8));
  GradientStack g = single_channel(random_signed(12, 12, rng, 0.8));
  // Delta start: every off-centre weight is exactly zero.
  BlurKernel k = irls_solve(x, g, BlurKernel::delta(5), cfg);
  CHECK(k.is_feasible());
  for (double w : k.weights()) CHECK(std::isfinite(w));
}

TEST_CASE("all-zero latent is a degenerate input") {
  SolverConfig cfg;
  GradientStack x = single_channel(RasterImage(8, 8, 0.0));
  GradientStack g = single_channel(RasterImage(8, 8, 0.0));
  CHECK_THROWS_AS(irls_solve(x, g, BlurKernel::delta(3), cfg), DegenerateInputError);
}
