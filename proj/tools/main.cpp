// omnideblur command-line front end: deblur, estimate-kernel, score, psnr,
// synth and bench subcommands. Every run writes a manifest describing the
// resolved configuration, inputs, outputs and artifact hashes.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "manifest.hpp"
#include "omnideblur/blind.hpp"
#include "omnideblur/image_io.hpp"
#include "omnideblur/quality.hpp"
#include "omnideblur/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace omnideblur;
using omnideblur::cli::ManifestWriter;
using omnideblur::cli::config_json;
using omnideblur::cli::output_base;

namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

struct CommonOpts {
  SolverConfig config;
  std::uint64_t seed = 0;
  std::string nonblind_method = "tikhonov";

  SolverConfig resolved() const {
    SolverConfig c = config;
    c.nonblind.method = parse_nonblind_method(nonblind_method);
    c.validate();
    return c;
  }
};

void add_solver_options(CLI::App* cmd, CommonOpts& o, bool need_kernel_size) {
  auto* ks = cmd->add_option("--kernel-size", o.config.kernel_size,
                             "Maximum kernel side h (odd)");
  if (need_kernel_size) ks->required();
  cmd->add_option("--min-kernel", o.config.min_kernel, "Coarsest kernel side (odd)")
      ->capture_default_str();
  cmd->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  cmd->add_option("--thetas", o.config.thetas,
                  "Filter orientations in degrees, e.g. 0,60,120")
      ->delimiter(',');
  cmd->add_option("--gabor-lambda", o.config.gabor.lambda, "Carrier wavelength (px)")
      ->capture_default_str();
  cmd->add_option("--gabor-sigma", o.config.gabor.sigma, "Envelope sigma (px)")
      ->capture_default_str();
  cmd->add_option("--gabor-psi", o.config.gabor.psi, "Carrier phase (deg)")
      ->capture_default_str();
  cmd->add_option("--gabor-gamma", o.config.gabor.gamma, "Aspect ratio")
      ->capture_default_str();
  cmd->add_option("--alpha", o.config.alpha, "Latent data-term weight")
      ->capture_default_str();
  cmd->add_option("--step-t", o.config.step_t, "FISTA step / shrinkage factor")
      ->capture_default_str();
  cmd->add_option("--fista-iters", o.config.fista_iters, "FISTA iterations M")
      ->capture_default_str();
  cmd->add_option("--zeta", o.config.zeta, "Kernel data-term weight")
      ->capture_default_str();
  cmd->add_option("--irls-outer", o.config.irls_outer, "IRLS reweighting sweeps N1")
      ->capture_default_str();
  cmd->add_option("--cg-inner", o.config.cg_inner, "CG iterations per sweep N2")
      ->capture_default_str();
  cmd->add_option("--em-iters", o.config.outer_em_iters,
                  "Latent/kernel alternations per level")
      ->capture_default_str();
  cmd->add_option("--nonblind", o.nonblind_method,
                  "Final non-blind method: tikhonov|sparse")
      ->capture_default_str();
  cmd->add_option("--nb-reg", o.config.nonblind.reg_weight,
                  "Non-blind regularisation weight")
      ->capture_default_str();
  cmd->add_option("--nb-iters", o.config.nonblind.inner_iters,
                  "Non-blind inner iterations (sparse method)")
      ->capture_default_str();
  cmd->set_config("--config", "", "Optional key=value config file; flags override");
}

json trace_json(const DeblurRun& run) {
  json j;
  j["kernel_size"] = run.schedule.max_kernel;
  j["scale_ratio"] = run.schedule.scale_ratio;
  std::vector<double> thetas = run.config.thetas;
  std::sort(thetas.begin(), thetas.end());
  j["thetas"] = thetas;
  j["levels"] = json::array();
  for (const LevelTrace& t : run.trace) {
    json lt;
    lt["level"] = t.level_index;
    lt["kernel_side"] = t.kernel_side;
    lt["image_width"] = t.image_width;
    lt["image_height"] = t.image_height;
    lt["channels"] = t.channels;
    if (t.sparsity_ratio) {
      lt["sparsity_ratio"] = *t.sparsity_ratio;
    } else {
      lt["sparsity_ratio"] = nullptr;
    }
    j["levels"].push_back(std::move(lt));
  }
  return j;
}

void write_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path);
  out << j.dump(2) << "\n";
  if (!out) throw IoError("write failed: " + path);
}

void log_levels(const DeblurRun& run) {
  for (const LevelTrace& t : run.trace) {
    std::cerr << "level " << t.level_index << ": kernel " << t.kernel_side
              << "x" << t.kernel_side << ", image " << t.image_width << "x"
              << t.image_height;
    if (t.sparsity_ratio) std::cerr << ", l1/l2 " << *t.sparsity_ratio;
    std::cerr << "\n";
  }
}

// ---------------------------------------------------------------- deblur --

struct DeblurOpts {
  CommonOpts common;
  std::string input;
  std::string output;
};

void cmd_deblur(const DeblurOpts& o) {
  Stopwatch watch;
  const SolverConfig config = o.common.resolved();
  RasterImage y = load_image(o.input);
  SeededRng rng(o.common.seed);

  auto [sharp, kernel, run] = deblur(y, config, rng);
  log_levels(run);

  const std::string base = output_base(o.output);
  save_image(sharp, o.output);
  save_kernel(kernel, base + ".kernel.txt");
  write_json(trace_json(run), base + ".trace.json");

  ManifestWriter m("deblur", o.common.seed);
  m.add_input("image", o.input);
  m.add_output("image", o.output);
  m.add_output("kernel", base + ".kernel.txt");
  m.add_output("trace", base + ".trace.json");
  m.set_config(config_json(config));
  m.write(base + ".manifest.json", watch.seconds());
}

// -------------------------------------------------------- estimate-kernel --

struct EstimateOpts {
  CommonOpts common;
  std::string input;
  std::string output;
};

void cmd_estimate_kernel(const EstimateOpts& o) {
  Stopwatch watch;
  const SolverConfig config = o.common.resolved();
  RasterImage y = load_image(o.input);
  SeededRng rng(o.common.seed);

  const PyramidSchedule schedule =
      build_schedule(config.kernel_size, config.scale_ratio, config.min_kernel);
  auto [kernel, run] = estimate_kernel(y, config, schedule, rng);
  log_levels(run);

  const std::string base = output_base(o.output);
  save_kernel(kernel, o.output);
  write_json(trace_json(run), base + ".trace.json");

  ManifestWriter m("estimate-kernel", o.common.seed);
  m.add_input("image", o.input);
  m.add_output("kernel", o.output);
  m.add_output("trace", base + ".trace.json");
  m.set_config(config_json(config));
  m.write(base + ".manifest.json", watch.seconds());
}

// ----------------------------------------------------------------- score --

struct ScoreOpts {
  std::string input;
  std::string output;
  double scale = 255.0;
};

void cmd_score(const ScoreOpts& o) {
  Stopwatch watch;
  RasterImage img = load_image(o.input);
  const DefocusScore ds = defocus_score(img, o.scale);

  json report;
  report["defocus_score"] = ds.q_b;
  report["sigma_d"] = ds.sigma_d;
  report["width"] = img.width();
  report["height"] = img.height();

  ManifestWriter m("score", 0);
  m.add_input("image", o.input);
  m.set_config(json{{"defocus_scale", o.scale}});
  if (!o.output.empty()) {
    m.add_output("report", o.output);
    write_json(report, o.output);
  }
  report["manifest"] = m.document(watch.seconds());
  std::cout << report.dump(2) << "\n";
}

// ------------------------------------------------------------------ psnr --

struct PsnrOpts {
  std::string input_a;
  std::string input_b;
  std::string output;
  double max_i = 255.0;
};

void cmd_psnr(const PsnrOpts& o) {
  Stopwatch watch;
  RasterImage a = load_image(o.input_a);
  RasterImage b = load_image(o.input_b);
  // Scale intensities into 0..max units so the reported MSE matches MAX_I.
  for (double& v : a.data()) v *= o.max_i;
  for (double& v : b.data()) v *= o.max_i;
  const double mse_v = mse(a, b);
  const double psnr_v = psnr(a, b, o.max_i);

  json report;
  report["mse"] = mse_v;
  if (std::isinf(psnr_v)) {
    report["psnr_db"] = "inf";
  } else {
    report["psnr_db"] = psnr_v;
  }
  report["max"] = o.max_i;

  ManifestWriter m("psnr", 0);
  m.add_input("image_a", o.input_a);
  m.add_input("image_b", o.input_b);
  m.set_config(json{{"max", o.max_i}});
  if (!o.output.empty()) {
    m.add_output("report", o.output);
    write_json(report, o.output);
  }
  report["manifest"] = m.document(watch.seconds());
  std::cout << report.dump(2) << "\n";
}

// ----------------------------------------------------------------- synth --

struct SynthOpts {
  std::string input;
  std::string output;
  std::string kernel_spec;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
};

void cmd_synth(const SynthOpts& o) {
  Stopwatch watch;
  RasterImage x = load_image(o.input);
  BlurKernel k = make_kernel(o.kernel_spec);
  RasterImage y = synthesize(x, k, NoiseSpec{o.noise_sigma, o.seed});

  const std::string base = output_base(o.output);
  save_image(y, o.output);
  save_kernel(k, base + ".kernel.txt");

  ManifestWriter m("synth", o.seed);
  m.add_input("sharp", o.input);
  m.add_output("image", o.output);
  m.add_output("kernel", base + ".kernel.txt");
  m.set_config(json{{"kernel_spec", o.kernel_spec}, {"noise_sigma", o.noise_sigma}});
  m.write(base + ".manifest.json", watch.seconds());
}

// ----------------------------------------------------------------- bench --

struct BenchOpts {
  CommonOpts common;
  std::string corpus_dir;
  std::string output_base_path;
  std::vector<int> variants = {3, 4, 5, 6, 8};
};

struct BenchEntry {
  std::string name;
  std::string blurred_path;
  std::string sharp_path;  // empty when no ground truth
};

std::string resolve_near(const std::string& recorded, const fs::path& dir) {
  if (fs::exists(recorded)) return recorded;
  const fs::path candidate = dir / fs::path(recorded).filename();
  if (fs::exists(candidate)) return candidate.string();
  return recorded;
}

std::vector<BenchEntry> discover_corpus(const std::string& dir) {
  if (!fs::is_directory(dir)) {
    throw IoError("bench: corpus directory not found: " + dir);
  }
  std::vector<BenchEntry> entries;
  std::vector<fs::path> manifests;
  std::vector<fs::path> images;
  for (const auto& de : fs::directory_iterator(dir)) {
    if (!de.is_regular_file()) continue;
    const std::string name = de.path().filename().string();
    if (name.size() > 14 &&
        name.compare(name.size() - 14, 14, ".manifest.json") == 0) {
      manifests.push_back(de.path());
    } else if (de.path().extension() == ".png" || de.path().extension() == ".pgm") {
      images.push_back(de.path());
    }
  }
  std::sort(manifests.begin(), manifests.end());
  std::sort(images.begin(), images.end());

  for (const fs::path& mp : manifests) {
    std::ifstream in(mp);
    json j;
    try {
      in >> j;
    } catch (const json::exception&) {
      continue;
    }
    if (j.value("subcommand", "") != "synth") continue;
    BenchEntry e;
    e.blurred_path = resolve_near(j["outputs"].value("image", ""), mp.parent_path());
    e.sharp_path = resolve_near(j["inputs"].value("sharp", ""), mp.parent_path());
    if (!fs::exists(e.sharp_path)) e.sharp_path.clear();
    e.name = fs::path(e.blurred_path).stem().string();
    if (fs::exists(e.blurred_path)) entries.push_back(std::move(e));
  }
  if (entries.empty()) {
    for (const fs::path& ip : images) {
      entries.push_back({ip.stem().string(), ip.string(), ""});
    }
  }
  return entries;
}

int thread_budget(std::size_t tasks) {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("OMNIDEBLUR_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) n = std::min<unsigned>(n, unsigned(cap));
  }
  return int(std::min<std::size_t>(n, std::max<std::size_t>(tasks, 1)));
}

void cmd_bench(const BenchOpts& o) {
  Stopwatch watch;
  const SolverConfig base_config = o.common.resolved();
  if (o.variants.empty()) throw ConfigError("bench: no filter-count variants");

  const std::vector<BenchEntry> entries = discover_corpus(o.corpus_dir);
  if (entries.empty()) {
    throw ConfigError("bench: corpus is empty: " + o.corpus_dir);
  }

  struct Cell {
    double defocus = 0.0;
    std::optional<double> psnr_db;
  };
  const std::size_t nv = o.variants.size();
  std::vector<Cell> cells(entries.size() * nv);
  std::vector<std::string> errors(entries.size() * nv);

  SeededRng master(o.common.seed);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t task = next.fetch_add(1);
      if (task >= cells.size()) return;
      const std::size_t ei = task / nv;
      const std::size_t vi = task % nv;
      try {
        SolverConfig config = base_config;
        config.thetas = evenly_spaced_thetas(o.variants[vi]);
        RasterImage blurred = load_image(entries[ei].blurred_path);
        SeededRng rng = master.fork(task);
        auto [sharp, kernel, run] = deblur(blurred, config, rng);
        Cell cell;
        cell.defocus = defocus_score(sharp).q_b;
        if (!entries[ei].sharp_path.empty()) {
          RasterImage truth = load_image(entries[ei].sharp_path);
          cell.psnr_db = psnr(sharp, truth, 1.0);
        }
        cells[task] = cell;
      } catch (const Error& e) {
        errors[task] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  const int threads = thread_budget(cells.size());
  pool.reserve(threads);
  for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  for (std::size_t task = 0; task < errors.size(); ++task) {
    if (!errors[task].empty()) {
      throw Error("bench: entry '" + entries[task / nv].name + "' variant " +
                  std::to_string(o.variants[task % nv]) + " failed: " +
                  errors[task]);
    }
  }

  // Assemble the report.
  json report;
  report["variants"] = o.variants;
  bool any_truth = false;
  std::vector<double> variant_mean(nv, 0.0);
  double blur_mean = 0.0;
  report["entries"] = json::array();
  for (std::size_t ei = 0; ei < entries.size(); ++ei) {
    RasterImage blurred = load_image(entries[ei].blurred_path);
    const double blur_q = defocus_score(blurred).q_b;
    blur_mean += blur_q;
    json je;
    je["name"] = entries[ei].name;
    je["size"] = std::to_string(blurred.width()) + "x" + std::to_string(blurred.height());
    je["blur"] = json{{"defocus_score", blur_q}};
    if (!entries[ei].sharp_path.empty()) {
      RasterImage truth = load_image(entries[ei].sharp_path);
      je["blur"]["psnr_db"] = psnr(blurred, truth, 1.0);
      any_truth = true;
    }
    je["results"] = json::object();
    for (std::size_t vi = 0; vi < nv; ++vi) {
      const Cell& cell = cells[ei * nv + vi];
      json jr{{"defocus_score", cell.defocus}};
      if (cell.psnr_db) jr["psnr_db"] = *cell.psnr_db;
      je["results"][std::to_string(o.variants[vi])] = std::move(jr);
      variant_mean[vi] += cell.defocus;
    }
    report["entries"].push_back(std::move(je));
  }
  blur_mean /= double(entries.size());
  json means{{"blur", blur_mean}};
  for (std::size_t vi = 0; vi < nv; ++vi) {
    variant_mean[vi] /= double(entries.size());
    means[std::to_string(o.variants[vi])] = variant_mean[vi];
  }
  report["mean_defocus_score"] = means;
  report["has_ground_truth"] = any_truth;

  // Aligned text table.
  std::string table;
  char buf[64];
  auto row = [&](const std::string& first, const std::vector<std::string>& rest) {
    std::snprintf(buf, sizeof buf, "%-16s", first.c_str());
    table += buf;
    for (const std::string& cell : rest) {
      std::snprintf(buf, sizeof buf, " %10s", cell.c_str());
      table += buf;
    }
    table += "\n";
  };
  auto fmt = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return std::string(buf);
  };
  std::vector<std::string> header{"blur"};
  for (int v : o.variants) header.push_back("#" + std::to_string(v));
  table += "Defocus score (lower is sharper)\n";
  row("image", header);
  for (std::size_t ei = 0; ei < entries.size(); ++ei) {
    std::vector<std::string> cols;
    cols.push_back(fmt(report["entries"][ei]["blur"]["defocus_score"].get<double>()));
    for (std::size_t vi = 0; vi < nv; ++vi) {
      cols.push_back(fmt(cells[ei * nv + vi].defocus));
    }
    row(entries[ei].name, cols);
  }
  {
    std::vector<std::string> cols{fmt(blur_mean)};
    for (std::size_t vi = 0; vi < nv; ++vi) cols.push_back(fmt(variant_mean[vi]));
    row("(mean)", cols);
  }
  if (any_truth) {
    table += "\nPSNR (dB, higher is better)\n";
    row("image", header);
    for (std::size_t ei = 0; ei < entries.size(); ++ei) {
      std::vector<std::string> cols;
      const json& je = report["entries"][ei];
      cols.push_back(je["blur"].contains("psnr_db")
                         ? fmt(je["blur"]["psnr_db"].get<double>())
                         : std::string("-"));
      for (std::size_t vi = 0; vi < nv; ++vi) {
        const Cell& cell = cells[ei * nv + vi];
        cols.push_back(cell.psnr_db ? fmt(*cell.psnr_db) : std::string("-"));
      }
      row(entries[ei].name, cols);
    }
  }
  const auto best = std::min_element(variant_mean.begin(), variant_mean.end());
  std::snprintf(buf, sizeof buf, "%d", o.variants[best - variant_mean.begin()]);
  table += "\nLowest mean defocus score: #" + std::string(buf) + " filters\n";

  write_json(report, o.output_base_path + ".json");
  {
    std::ofstream out(o.output_base_path + ".txt");
    if (!out) throw IoError("bench: cannot open " + o.output_base_path + ".txt");
    out << table;
  }
  std::cout << table;

  ManifestWriter m("bench", o.common.seed);
  m.add_input("corpus", o.corpus_dir);
  m.add_output("report_json", o.output_base_path + ".json");
  m.add_output("report_text", o.output_base_path + ".txt");
  json cfg = config_json(base_config);
  cfg["variants"] = o.variants;
  m.set_config(cfg);
  m.write(o.output_base_path + ".manifest.json", watch.seconds());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"omnideblur: single-image blind deconvolution with an "
               "omnidirectional gradient stack"};
  app.require_subcommand(1);

  DeblurOpts deblur_opts;
  auto* deblur_cmd = app.add_subcommand(
      "deblur", "Estimate the blur kernel and recover the sharp image");
  deblur_cmd->add_option("input", deblur_opts.input, "Blurred image (PGM/PNG)")
      ->required();
  deblur_cmd->add_option("--out", deblur_opts.output, "Output image path")
      ->required();
  add_solver_options(deblur_cmd, deblur_opts.common, /*need_kernel_size=*/true);

  EstimateOpts estimate_opts;
  auto* estimate_cmd = app.add_subcommand(
      "estimate-kernel", "Estimate the blur kernel only");
  estimate_cmd->add_option("input", estimate_opts.input, "Blurred image")
      ->required();
  estimate_cmd->add_option("--out", estimate_opts.output, "Output kernel (.txt)")
      ->required();
  add_solver_options(estimate_cmd, estimate_opts.common, true);

  ScoreOpts score_opts;
  auto* score_cmd = app.add_subcommand(
      "score", "No-reference defocus score of an image");
  score_cmd->add_option("input", score_opts.input, "Image")->required();
  score_cmd->add_option("--out", score_opts.output, "Also write the report here");
  score_cmd->add_option("--scale", score_opts.scale,
                        "Intensity units for the score (default 255)")
      ->capture_default_str();

  PsnrOpts psnr_opts;
  auto* psnr_cmd = app.add_subcommand("psnr", "PSNR between two images");
  psnr_cmd->add_option("image_a", psnr_opts.input_a, "First image")->required();
  psnr_cmd->add_option("image_b", psnr_opts.input_b, "Second image")->required();
  psnr_cmd->add_option("--max", psnr_opts.max_i, "Peak intensity (255 or 1)")
      ->capture_default_str();
  psnr_cmd->add_option("--out", psnr_opts.output, "Also write the report here");

  SynthOpts synth_opts;
  auto* synth_cmd = app.add_subcommand(
      "synth", "Blur a sharp image with a known kernel plus noise");
  synth_cmd->add_option("input", synth_opts.input, "Sharp image")->required();
  synth_cmd->add_option("--out", synth_opts.output, "Output blurred image")
      ->required();
  synth_cmd
      ->add_option("--kernel", synth_opts.kernel_spec,
                   "gaussian:SIDE:SIGMA | motion:SIDE:ANGLE | box:SIDE | "
                   "walk:SIDE:SEED")
      ->required();
  synth_cmd->add_option("--noise-sigma", synth_opts.noise_sigma,
                        "Gaussian noise level in [0,1] units")
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth_opts.seed, "Noise seed")
      ->capture_default_str();

  BenchOpts bench_opts;
  auto* bench_cmd = app.add_subcommand(
      "bench", "Compare filter-count variants over a corpus directory");
  bench_cmd->add_option("corpus", bench_opts.corpus_dir, "Corpus directory")
      ->required();
  bench_cmd->add_option("--out", bench_opts.output_base_path,
                        "Output base path (writes .json/.txt)")
      ->required();
  bench_cmd->add_option("--variants", bench_opts.variants,
                        "Filter counts to compare")
      ->delimiter(',');
  add_solver_options(bench_cmd, bench_opts.common, true);

  std::function<void()> action;
  deblur_cmd->callback([&] { action = [&] { cmd_deblur(deblur_opts); }; });
  estimate_cmd->callback([&] { action = [&] { cmd_estimate_kernel(estimate_opts); }; });
  score_cmd->callback([&] { action = [&] { cmd_score(score_opts); }; });
  psnr_cmd->callback([&] { action = [&] { cmd_psnr(psnr_opts); }; });
  synth_cmd->callback([&] { action = [&] { cmd_synth(synth_opts); }; });
  bench_cmd->callback([&] { action = [&] { cmd_bench(bench_opts); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    action();
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const DegenerateInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
