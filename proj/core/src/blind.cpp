#include "omnideblur/blind.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "omnideblur/convolve.hpp"
#include "omnideblur/kernel_solver.hpp"
#include "omnideblur/latent_solver.hpp"
#include "omnideblur/nonblind.hpp"

namespace omnideblur {

namespace {

bool stack_all_zero(const GradientStack& x) {
  for (const RasterImage& c : x.channels) {
    for (double v : c.data()) {
      if (v != 0.0) return false;
    }
  }
  return true;
}

std::string level_tag(int level_index) {
  return "level " + std::to_string(level_index) + ": ";
}

}  // namespace

double eval_ratio_diagnostic(const GradientStack& x) {
  const double n2 = x.norm2();
  if (n2 == 0.0) {
    throw DegenerateInputError("eval_ratio_diagnostic: all-zero stack");
  }
  return x.norm1() / n2;
}

std::pair<BlurKernel, DeblurRun> estimate_kernel(const RasterImage& y,
                                                 const SolverConfig& config,
                                                 const PyramidSchedule& schedule,
                                                 SeededRng& rng) {
  config.validate();
  if (schedule.levels.empty()) throw ConfigError("estimate_kernel: empty schedule");
  if (schedule.max_kernel > y.width() || schedule.max_kernel > y.height()) {
    throw ConfigError("estimate_kernel: kernel size exceeds image dimensions");
  }
  if (!y.all_finite()) throw NumericError("estimate_kernel: input has non-finite pixels");

  GaborParams gp = config.gabor;
  std::vector<double> thetas = config.thetas;
  std::sort(thetas.begin(), thetas.end());
  const GaborBank bank = make_bank(thetas, gp);

  const int support = bank.filters.front().side();
  {
    const auto [w0, h0] = level_dimensions(schedule.levels.front(), y.width(), y.height());
    const int needed = std::max(support, schedule.levels.front().kernel_side);
    if (w0 < needed || h0 < needed) {
      throw ConfigError(
          "estimate_kernel: coarsest level (" + std::to_string(w0) + "x" +
          std::to_string(h0) + ") is smaller than the filter support " +
          std::to_string(needed) + "; reduce --kernel-size or the Gabor sigma");
    }
  }

  const std::size_t m = schedule.level_count();
  DeblurRun run;
  run.config = config;
  run.schedule = schedule;
  run.trace.reserve(m);

  BlurKernel kernel;
  GradientStack latent;

  for (std::size_t li = 0; li < m; ++li) {
    const PyramidLevel& level = schedule.levels[li];
    const int level_index = int(m - li);
    const auto [lw, lh] = level_dimensions(level, y.width(), y.height());

    RasterImage y_level =
        (level.image_scale == 1.0) ? y : resample_to(y, lw, lh);
    GradientStack g = extract_gradients(y_level, bank);

    if (li == 0) {
      std::tie(kernel, latent) = init_coarsest(schedule, y_level, bank, rng);
    } else {
      std::tie(kernel, latent) = upscale_state(
          kernel, latent, schedule.levels[li - 1], level, y.width(), y.height());
    }

    try {
      for (int em = 0; em < config.outer_em_iters; ++em) {
        latent = fista_solve(g, kernel, config, latent);
        kernel = irls_solve(latent, g, kernel, config);
      }
    } catch (const NumericError& e) {
      throw NumericError(level_tag(level_index) + e.what());
    } catch (const DegenerateInputError& e) {
      throw DegenerateInputError(level_tag(level_index) + e.what());
    }

    LevelTrace t;
    t.level_index = level_index;
    t.kernel_side = level.kernel_side;
    t.image_width = lw;
    t.image_height = lh;
    t.channels = int(g.channel_count());
    t.sparsity_ratio = stack_all_zero(latent)
                           ? std::nullopt
                           : std::make_optional(eval_ratio_diagnostic(latent));
    t.kernel = kernel;
    run.trace.push_back(std::move(t));
  }

  run.final_kernel = kernel;
  return {std::move(kernel), std::move(run)};
}

std::tuple<RasterImage, BlurKernel, DeblurRun> deblur(const RasterImage& y,
                                                      const SolverConfig& config,
                                                      SeededRng& rng) {
  const PyramidSchedule schedule =
      build_schedule(config.kernel_size, config.scale_ratio, config.min_kernel);
  auto [kernel, run] = estimate_kernel(y, config, schedule, rng);
  RasterImage sharp = deconvolve(y, kernel, config.nonblind);
  run.final_image = sharp;
  return {std::move(sharp), std::move(kernel), std::move(run)};
}

}  // namespace omnideblur
