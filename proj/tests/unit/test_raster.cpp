#include <doctest.h>

#include "omnideblur/raster.hpp"

using namespace omnideblur;

TEST_CASE("RasterImage validates construction") {
  CHECK_THROWS_AS(RasterImage(0, 4), DimensionError);
  CHECK_THROWS_AS(RasterImage(4, 0), DimensionError);
  CHECK_THROWS_AS(RasterImage(3, 3, std::vector<double>(8, 0.0)), DimensionError);

  RasterImage img(3, 2, 0.5);
  CHECK(img.width() == 3);
  CHECK(img.height() == 2);
  CHECK(img.size() == 6);
  CHECK(img.at(2, 1) == 0.5);
}

TEST_CASE("BlurKernel requires an odd side") {
  CHECK_THROWS_AS(BlurKernel(4), ConfigError);
  CHECK_THROWS_AS(BlurKernel(0), ConfigError);
  CHECK_THROWS_AS(BlurKernel(3, std::vector<double>(4, 0.0)), DimensionError);

  BlurKernel k = BlurKernel::delta(5);
  CHECK(k.at(2, 2) == 1.0);
  CHECK(k.is_feasible());
}

TEST_CASE("project_simplex") {
  SUBCASE("already feasible is unchanged") {
    std::vector<double> v{0.2, 0.3, 0.5};
    project_simplex(v);
    CHECK(v[0] == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(v[1] == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(v[2] == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("negatives clamp then renormalise") {
    std::vector<double> v{-1.0, 1.0, 1.0};
    project_simplex(v);
    CHECK(v[0] == 0.0);
    CHECK(v[1] == doctest::Approx(0.5));
    CHECK(v[2] == doctest::Approx(0.5));
  }
  SUBCASE("all-negative input falls back to the centred delta") {
    std::vector<double> v{-1.0, -2.0, -3.0};
    project_simplex(v);
    CHECK(v == std::vector<double>{0.0, 1.0, 0.0});
  }
}

TEST_CASE("BlurKernel::project yields a feasible kernel") {
  BlurKernel k(3, std::vector<double>{-0.5, 2.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0});
  k.project();
  CHECK(k.is_feasible());
  CHECK(k.min_weight() >= 0.0);
  CHECK(k.sum() == doctest::Approx(1.0).epsilon(1e-12));
}
