#include <doctest.h>

#include <cmath>

#include "omnideblur/convolve.hpp"
#include "omnideblur/quality.hpp"
#include "omnideblur/synth.hpp"
#include "scenes.hpp"

using namespace omnideblur;

TEST_CASE("box kernel is uniform") {
  BlurKernel k = make_box_kernel(3);
  for (double w : k.weights()) CHECK(w == doctest::Approx(1.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("tiny-sigma gaussian is a near-delta") {
  BlurKernel k = make_gaussian_kernel(5, 0.01);
  CHECK(k.at(2, 2) >= 0.999);
  CHECK(k.is_feasible());
}

TEST_CASE("horizontal motion kernel lives on the centre row") {
  BlurKernel k = make_motion_kernel(5, 5.0, 0.0);
  double row_sum = 0.0;
  for (int x = 0; x < 5; ++x) row_sum += k.at(x, 2);
  CHECK(row_sum == doctest::Approx(1.0).epsilon(1e-12));
  for (int y = 0; y < 5; ++y) {
    if (y == 2) continue;
    for (int x = 0; x < 5; ++x) CHECK(k.at(x, y) == 0.0);
  }

  BlurKernel vertical = make_motion_kernel(5, 5.0, 90.0);
  double col_sum = 0.0;
  for (int y = 0; y < 5; ++y) col_sum += vertical.at(2, y);
  CHECK(col_sum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("every generator yields a feasible kernel") {
  CHECK(make_gaussian_kernel(9, 1.5).is_feasible());
  CHECK(make_motion_kernel(9, 9.0, 30.0).is_feasible());
  CHECK(make_box_kernel(7).is_feasible());
  CHECK(make_random_walk_kernel(15, 123).is_feasible());
}

TEST_CASE("kernel spec parser") {
  CHECK(make_kernel("gaussian:5:1.5").side() == 5);
  CHECK(make_kernel("motion:9:30").side() == 9);
  CHECK(make_kernel("box:3").side() == 3);
  CHECK(make_kernel("walk:15:7").side() == 15);
  CHECK_THROWS_AS(make_kernel("unknown:3"), ConfigError);
  CHECK_THROWS_AS(make_kernel("gaussian:4:1.0"), ConfigError);  // even side
  CHECK_THROWS_AS(make_kernel("gaussian:5"), ConfigError);
  CHECK_THROWS_AS(make_kernel("gaussian:5:abc"), ConfigError);
  CHECK_THROWS_AS(make_kernel(""), ConfigError);
}

TEST_CASE("random-walk kernels are seed-deterministic") {
  BlurKernel a = make_random_walk_kernel(11, 9);
  BlurKernel b = make_random_walk_kernel(11, 9);
  CHECK(a.weights() == b.weights());
  BlurKernel c = make_random_walk_kernel(11, 10);
  double diff = 0.0;
  for (std::size_t i = 0; i < a.weights().size(); ++i) {
    diff = std::max(diff, std::abs(a.weights()[i] - c.weights()[i]));
  }
  CHECK(diff > 1e-6);
}

TEST_CASE("synthesize with a delta kernel and zero noise is the identity") {
  RasterImage x = scenes::scene_shapes(24, 24);
  RasterImage y = synthesize(x, BlurKernel::delta(3), NoiseSpec{0.0, 0});
  CHECK(x.data() == y.data());
}

TEST_CASE("zero-noise synthesis equals convolve2d exactly") {
  RasterImage x = scenes::scene_shapes(24, 24);
  BlurKernel k = make_gaussian_kernel(5, 1.0);
  RasterImage y = synthesize(x, k, NoiseSpec{0.0, 0});
  RasterImage c = convolve2d(x, k, BoundaryPolicy::ReplicateEdge);
  CHECK(y.data() == c.data());
}

TEST_CASE("noisy synthesis is seed-deterministic") {
  RasterImage x = scenes::scene_shapes(24, 24);
  BlurKernel k = make_box_kernel(3);
  RasterImage y1 = synthesize(x, k, NoiseSpec{0.02, 5});
  RasterImage y2 = synthesize(x, k, NoiseSpec{0.02, 5});
  CHECK(y1.data() == y2.data());
}

TEST_CASE("noise level matches its specification") {
  RasterImage x(256, 256, 0.5);
  RasterImage y = synthesize(x, BlurKernel::delta(1), NoiseSpec{0.01, 42});
  double mean = 0.0;
  for (double v : y.data()) mean += v - 0.5;
  mean /= double(y.size());
  double var = 0.0;
  for (double v : y.data()) {
    const double d = v - 0.5 - mean;
    var += d * d;
  }
  var /= double(y.size()) - 1.0;
  const double sample_std = std::sqrt(var);
  CHECK(sample_std >= 0.008);
  CHECK(sample_std <= 0.012);
}

TEST_CASE("psnr drops as the blur spreads") {
  RasterImage x = scenes::scene_shapes(64, 64);
  double prev = std::numeric_limits<double>::infinity();
  for (double sigma : {0.5, 1.0, 2.0, 4.0}) {
    RasterImage y = synthesize(x, make_gaussian_kernel(9, sigma), NoiseSpec{});
    const double p = psnr(y, x, 1.0);
    CHECK(p < prev);
    prev = p;
  }
}

TEST_CASE("motion length must fit inside the kernel") {
  CHECK_THROWS_AS(make_motion_kernel(3, 9.0, 0.0), ConfigError);
  CHECK_THROWS_AS(make_motion_kernel(5, 0.5, 0.0), ConfigError);
}
