#include <doctest.h>

#include <cmath>

#include "omnideblur/pyramid.hpp"
#include "omnideblur/synth.hpp"
#include "scenes.hpp"

using namespace omnideblur;

namespace {

std::vector<int> sides(const PyramidSchedule& s) {
  std::vector<int> out;
  for (const PyramidLevel& l : s.levels) out.push_back(l.kernel_side);
  return out;
}

}  // namespace

TEST_CASE("degenerate single-level pyramid") {
  PyramidSchedule s = build_schedule(3, std::numbers::sqrt2, 3);
  CHECK(s.level_count() == 1);
  CHECK(s.levels[0].kernel_side == 3);
  CHECK(s.levels[0].image_scale == 1.0);
}

TEST_CASE("golden schedule for h = 25") {
  // Hand-run of the sizing rule: 25/sqrt(2)^i = 17.68, 12.5, 8.84, 6.25,
  // 4.42, 3.13 -> odd-snapped 17, 13, 9, 7, 5, 3.
  PyramidSchedule s = build_schedule(25, std::numbers::sqrt2, 3);
  CHECK(sides(s) == std::vector<int>{3, 5, 7, 9, 13, 17, 25});
  CHECK(s.level_count() == 7);
  CHECK(s.levels.back().image_scale == 1.0);
  for (std::size_t i = 1; i < s.levels.size(); ++i) {
    const double ratio =
        double(s.levels[i].kernel_side) / s.levels[i - 1].kernel_side;
    CHECK(ratio >= 1.2);
    CHECK(ratio <= 1.8);
  }
}

TEST_CASE("golden schedule for h = 9") {
  PyramidSchedule s = build_schedule(9, std::numbers::sqrt2, 3);
  CHECK(sides(s) == std::vector<int>{3, 5, 7, 9});
  for (std::size_t i = 1; i < s.levels.size(); ++i) {
    CHECK(s.levels[i].kernel_side > s.levels[i - 1].kernel_side);
    CHECK(s.levels[i].kernel_side % 2 == 1);
  }
}

TEST_CASE("schedule construction is deterministic and validated") {
  PyramidSchedule a = build_schedule(15, std::numbers::sqrt2, 3);
  PyramidSchedule b = build_schedule(15, std::numbers::sqrt2, 3);
  CHECK(sides(a) == sides(b));
  for (const PyramidLevel& l : a.levels) {
    CHECK(l.kernel_side % 2 == 1);
    CHECK(l.image_scale > 0.0);
    CHECK(l.image_scale <= 1.0);
  }
  CHECK_THROWS_AS(build_schedule(8, std::numbers::sqrt2, 3), ConfigError);
  CHECK_THROWS_AS(build_schedule(1, std::numbers::sqrt2, 3), ConfigError);
  CHECK_THROWS_AS(build_schedule(9, 0.9, 3), ConfigError);
  CHECK_THROWS_AS(build_schedule(9, std::numbers::sqrt2, 4), ConfigError);
}

TEST_CASE("coarsest initialisation: feasible kernel, gradient latent") {
  PyramidSchedule s = build_schedule(9, std::numbers::sqrt2, 3);
  GaborBank bank = make_bank({0, 45, 90, 135}, GaborParams{});
  RasterImage coarse = scenes::scene_shapes(48, 48);

  SeededRng rng(0);
  auto [k, latent] = init_coarsest(s, coarse, bank, rng);
  CHECK(k.side() == 3);
  CHECK(k.is_feasible());
  CHECK(k.min_weight() >= 0.0);
  CHECK(latent.channel_count() == 4);
  CHECK(latent.width() == 48);

  SUBCASE("equal seeds reproduce bitwise") {
    SeededRng r1(12345), r2(12345);
    auto [k1, l1] = init_coarsest(s, coarse, bank, r1);
    auto [k2, l2] = init_coarsest(s, coarse, bank, r2);
    CHECK(k1.weights() == k2.weights());
  }
  SUBCASE("different seeds differ") {
    SeededRng r1(1), r2(2);
    auto [k1, l1] = init_coarsest(s, coarse, bank, r1);
    auto [k2, l2] = init_coarsest(s, coarse, bank, r2);
    double max_diff = 0.0;
    for (std::size_t i = 0; i < k1.weights().size(); ++i) {
      max_diff = std::max(max_diff, std::abs(k1.weights()[i] - k2.weights()[i]));
    }
    CHECK(max_diff > 1e-6);
  }
}

TEST_CASE("upscale_state keeps the kernel feasible and concentrated") {
  PyramidSchedule s = build_schedule(9, std::numbers::sqrt2, 3);
  const PyramidLevel& from = s.levels[0];  // side 3
  const PyramidLevel& to = s.levels[1];    // side 5

  GaborBank bank = make_bank({0, 90}, GaborParams{});
  const auto [fw, fh] = level_dimensions(from, 96, 96);
  RasterImage coarse = scenes::scene_shapes(fw, fh);
  GradientStack latent = extract_gradients(coarse, bank);

  BlurKernel delta = BlurKernel::delta(3);
  auto [up, up_latent] = upscale_state(delta, latent, from, to, 96, 96);

  CHECK(up.side() == 5);
  CHECK(up.is_feasible());
  CHECK(up.min_weight() >= 0.0);
  CHECK(up.at(2, 2) >= 0.25);  // mass stays concentrated at the centre

  const auto [tw, th] = level_dimensions(to, 96, 96);
  CHECK(up_latent.width() == tw);
  CHECK(up_latent.height() == th);

  SUBCASE("latent dimension mismatch is an error") {
    GradientStack wrong = latent;
    wrong.channels[0] = RasterImage(10, 10, 0.0);
    wrong.channels[1] = RasterImage(10, 10, 0.0);
    CHECK_THROWS_AS(upscale_state(delta, wrong, from, to, 96, 96), Error);
  }
}
