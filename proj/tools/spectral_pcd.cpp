// Copyright 2026 The spectral-pcd Authors
// SPDX-License-Identifier: Apache-2.0
//
// spcd: command-line front end for spectral point cloud processing.
//
// Every subcommand prints one JSON summary line on stdout; diagnostics go to
// stderr. Exit codes: 0 success, 2 usage or input error, 1 internal error.

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spectral_pcd.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

/// Raised for command-line problems the parser cannot express.
class UsageError : public spcd::Error {
 public:
  using spcd::Error::Error;
};

struct VoxelFlags {
  std::optional<double> voxel_size;
  std::size_t grid_max = spcd::kDefaultGridMax;

  void add_to(CLI::App& cmd) {
    auto* vs = cmd.add_option("--voxel-size", voxel_size, "Voxel edge length (overrides --grid-max)");
    auto* gm = cmd.add_option("--grid-max", grid_max, "Cells along the longest axis")
                   ->capture_default_str();
    vs->excludes(gm);
  }

  spcd::VoxelSizePolicy policy() const {
    return voxel_size ? spcd::VoxelSizePolicy::fixed(*voxel_size)
                      : spcd::VoxelSizePolicy::grid_max(grid_max);
  }
};

const std::map<std::string, spcd::ChannelMode> kChannelNames{{"all", spcd::ChannelMode::kAll},
                                                             {"rgb", spcd::ChannelMode::kRgbOnly}};

const char* channel_name(spcd::ChannelMode mode) {
  return mode == spcd::ChannelMode::kAll ? "all" : "rgb";
}

json geometry_json(const spcd::GridGeometry& g) {
  return {{"W", g.dims.w},
          {"H", g.dims.h},
          {"D", g.dims.d},
          {"voxel_size", g.voxel_size},
          {"bounds_min", g.bounds.lo},
          {"bounds_max", g.bounds.hi}};
}

void emit(const json& summary) { std::cout << summary.dump() << std::endl; }

bool is_spectrum_path(const fs::path& p) { return spcd::io::lower_extension(p) == ".spcf"; }

void check_threads_env() {
  const char* env = std::getenv(spcd::kThreadsEnvVar);
  if (env == nullptr) return;
  std::size_t value = 0;
  const char* end = env + std::strlen(env);
  auto [ptr, ec] = std::from_chars(env, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw UsageError(std::string(spcd::kThreadsEnvVar) + " must be a non-negative integer, got '" +
                     env + "'");
  }
}

void check_threshold(double t) {
  if (!(t >= 0.0)) throw spcd::ParameterError("--threshold must be >= 0, got " + std::to_string(t));
}

// ---------------------------------------------------------------- decompose

struct DecomposeArgs {
  fs::path input, output;
  VoxelFlags voxel;
};

json run_decompose(const DecomposeArgs& a) {
  const spcd::PointCloud cloud = spcd::io::read_pointcloud(a.input);
  const spcd::GridGeometry geom = a.voxel.policy().geometry_for(spcd::bounds_of(cloud));
  const spcd::VoxelizeResult vox = spcd::voxelize_counted(cloud, geom);
  if (vox.collisions > 0) {
    std::cerr << "warning: " << vox.collisions
              << " points shared a voxel with another point; their colors were averaged\n";
  }
  const spcd::AmplitudePhase ap = spcd::to_amplitude_phase(spcd::forward_dft(vox.grid));
  spcd::io::write_spectrum(ap, a.output);
  return {{"command", "decompose"},    {"ok", true},
          {"input", a.input},          {"output", a.output},
          {"points", cloud.size()},    {"occupied", vox.occupied},
          {"collisions", vox.collisions}, {"geometry", geometry_json(geom)}};
}

// -------------------------------------------------------------- reconstruct

struct ReconstructArgs {
  fs::path input, output;
  double threshold = spcd::kDefaultPiThreshold;
};

json run_reconstruct(const ReconstructArgs& a) {
  check_threshold(a.threshold);
  const spcd::AmplitudePhase ap = spcd::io::read_spectrum(a.input);
  const spcd::PointCloud cloud = spcd::reconstruct(ap, {a.threshold, spcd::ChannelMode::kAll});
  spcd::io::write_pointcloud(cloud, a.output);
  return {{"command", "reconstruct"}, {"ok", true},          {"input", a.input},
          {"output", a.output},       {"threshold", a.threshold}, {"points", cloud.size()},
          {"geometry", geometry_json(ap.geometry)}};
}

// --------------------------------------------------------------------- swap

struct SwapArgs {
  fs::path a, b, out_a, out_b;
  std::string kind = "amp";
  spcd::ChannelMode channels = spcd::ChannelMode::kAll;
  double threshold = spcd::kDefaultPiThreshold;
  VoxelFlags voxel;
};

/// Writes a spectrum for .spcf outputs and a reconstructed cloud otherwise.
/// Returns the number of points written, or -1 for spectra.
long long write_result(const spcd::AmplitudePhase& ap, const fs::path& path, double threshold,
                       spcd::ChannelMode mode) {
  if (is_spectrum_path(path)) {
    spcd::io::write_spectrum(ap, path);
    return -1;
  }
  const spcd::PointCloud cloud = spcd::reconstruct(ap, {threshold, mode});
  spcd::io::write_pointcloud(cloud, path);
  return static_cast<long long>(cloud.size());
}

json run_swap(const SwapArgs& s) {
  check_threshold(s.threshold);
  if (s.kind == "phase" && s.channels != spcd::ChannelMode::kAll) {
    throw UsageError("--channels rgb applies only to --kind amp");
  }
  const bool a_spec = is_spectrum_path(s.a);
  const bool b_spec = is_spectrum_path(s.b);
  if (a_spec != b_spec) throw UsageError("--a and --b must both be clouds or both be spectrum files");

  spcd::AmplitudePhase ap_a, ap_b;
  if (a_spec) {
    ap_a = spcd::io::read_spectrum(s.a);
    ap_b = spcd::io::read_spectrum(s.b);
  } else {
    std::tie(ap_a, ap_b) =
        spcd::decompose_pair(spcd::io::read_pointcloud(s.a), spcd::io::read_pointcloud(s.b),
                             s.voxel.policy());
  }
  const auto [first, second] = s.kind == "amp" ? spcd::amplitude_swap(ap_a, ap_b, s.channels)
                                               : spcd::phase_swap(ap_a, ap_b);
  const long long na = write_result(first, s.out_a, s.threshold, s.channels);
  const long long nb = write_result(second, s.out_b, s.threshold, s.channels);
  json j{{"command", "swap"},   {"ok", true},
         {"kind", s.kind},      {"channels", channel_name(s.channels)},
         {"threshold", s.threshold}, {"out_a", s.out_a},
         {"out_b", s.out_b},    {"geometry", geometry_json(first.geometry)}};
  j["points_a"] = na < 0 ? json() : json(na);
  j["points_b"] = nb < 0 ? json() : json(nb);
  return j;
}

// ------------------------------------------------------------------ stylize

struct StylizeArgs {
  fs::path content, style, output;
  double gamma = 1.0;
  double threshold = spcd::kDefaultPiThreshold;
  spcd::ChannelMode channels = spcd::ChannelMode::kAll;
  VoxelFlags voxel;
};

json run_stylize(const StylizeArgs& s) {
  check_threshold(s.threshold);
  spcd::check_gamma(s.gamma);
  const spcd::PointCloud content = spcd::io::read_pointcloud(s.content);
  const spcd::ReconstructionParams params{s.threshold, s.channels};
  const spcd::VoxelSizePolicy policy = s.voxel.policy();
  const bool image = spcd::io::is_image_path(s.style);

  spcd::GridGeometry geom;
  spcd::PointCloud out;
  if (image) {
    const spcd::StyleImage img = spcd::io::read_image(s.style);
    geom = policy.geometry_for(spcd::bounds_of(content));
    out = spcd::stylize_from_image(content, img, s.gamma, params, policy);
  } else {
    const spcd::PointCloud style = spcd::io::read_pointcloud(s.style);
    geom = spcd::shared_geometry(content, style, policy);
    out = spcd::stylize(content, style, s.gamma, params, policy);
  }
  spcd::io::write_pointcloud(out, s.output);
  return {{"command", "stylize"},
          {"ok", true},
          {"style_kind", image ? "image" : "cloud"},
          {"gamma", s.gamma},
          {"channels", channel_name(s.channels)},
          {"threshold", s.threshold},
          {"output", s.output},
          {"points", out.size()},
          {"geometry", geometry_json(geom)}};
}

// ------------------------------------------------------------------ augment

struct AugmentArgs {
  fs::path dataset, output;
  std::uint64_t seed = 0;
  std::size_t reps = 1;
  double threshold = spcd::kDefaultPiThreshold;
  spcd::ChannelMode channels = spcd::ChannelMode::kAll;
  bool same_class = false;
  VoxelFlags voxel;
};

json run_augment(const AugmentArgs& a) {
  check_threshold(a.threshold);
  if (a.reps == 0) throw spcd::ParameterError("--reps must be at least 1");
  const spcd::io::Dataset ds = spcd::io::ingest_dataset(a.dataset);
  for (const auto& f : ds.failures) std::cerr << "warning: skipped " << f.message << "\n";

  std::vector<spcd::PointCloud> clouds;
  std::vector<std::string> labels;
  for (const auto& lc : ds.clouds) {
    clouds.push_back(lc.cloud);
    labels.push_back(lc.label);
  }

  spcd::AugmentConfig cfg;
  cfg.mode = a.channels;
  cfg.pi_threshold = a.threshold;
  cfg.voxel = a.voxel.policy();
  cfg.same_class = a.same_class;

  json inputs = json::array();
  for (const auto& lc : ds.clouds) inputs.push_back(lc.label + "/" + lc.path.filename().string());

  json reps = json::array();
  std::size_t written = 0;
  for (std::size_t r = 0; r < a.reps; ++r) {
    cfg.seed = spcd::mix_seed(a.seed, r);
    const spcd::AugmentedDataset aug = spcd::augment_dataset(clouds, cfg, labels);
    for (std::size_t i : aug.skipped) {
      std::cerr << "warning: rep " << r << ": " << inputs[i].get<std::string>()
                << " reconstructed empty; wrote the unaugmented cloud\n";
    }
    for (std::size_t i = 0; i < clouds.size(); ++i) {
      const fs::path dir = a.output / ds.clouds[i].label;
      fs::create_directories(dir);
      const fs::path file =
          dir / (ds.clouds[i].path.stem().string() + "_aug" + std::to_string(r) + ".ply");
      spcd::io::write_ply(aug.clouds[i], file);
      ++written;
    }
    reps.push_back({{"rep", r}, {"seed", cfg.seed}, {"donors", aug.donors}, {"skipped", aug.skipped}});
  }
  return {{"command", "augment"},
          {"ok", true},
          {"dataset", a.dataset},
          {"output", a.output},
          {"channels", channel_name(a.channels)},
          {"same_class", a.same_class},
          {"inputs", inputs},
          {"failed_inputs", ds.failures.size()},
          {"written", written},
          {"reps", reps}};
}

// ------------------------------------------------------------------- verify

struct VerifyArgs {
  std::string size = "small";
  double perturb_fft = 0.0;
};

json run_verify(const VerifyArgs& v, bool& all_passed) {
  spcd::VerifyOptions opts;
  opts.size = v.size == "full" ? spcd::VerifySize::kFull : spcd::VerifySize::kSmall;
  opts.fft_perturbation = v.perturb_fft;
  const spcd::VerifyReport report = spcd::run_verification(opts);

  json checks = json::array();
  std::fprintf(stderr, "%-26s %-6s %12s %12s %9s  %s\n", "check", "result", "max_error",
               "tolerance", "seconds", "detail");
  for (const auto& c : report.checks) {
    std::fprintf(stderr, "%-26s %-6s %12.3e %12.3e %9.3f  %s\n", c.name.c_str(),
                 c.passed ? "PASS" : "FAIL", c.max_error, c.tolerance, c.seconds, c.detail.c_str());
    checks.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"max_error", c.max_error},
                      {"tolerance", c.tolerance},
                      {"seconds", c.seconds}});
  }
  all_passed = report.all_passed();
  return {{"command", "verify"}, {"ok", all_passed}, {"size", v.size}, {"checks", checks}};
}

void add_channels_option(CLI::App& cmd, spcd::ChannelMode& mode) {
  cmd.add_option("--channels", mode, "Channels that take part: all or rgb")
      ->transform(CLI::CheckedTransformer(kChannelNames, CLI::ignore_case))
      ->default_str("all");
}

void add_threshold_option(CLI::App& cmd, double& t) {
  cmd.add_option("--threshold", t, "Occupancy threshold; 0 keeps every voxel")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral decomposition, swapping, stylization and augmentation of colored point clouds",
               "spcd"};
  app.require_subcommand(1);

  DecomposeArgs dec;
  auto* c_dec = app.add_subcommand("decompose", "Voxelize a cloud and write its amplitude and phase");
  c_dec->add_option("--input", dec.input, "Point cloud (.ply or .csv)")->required();
  c_dec->add_option("--output", dec.output, "Spectrum file to write")->required();
  dec.voxel.add_to(*c_dec);

  ReconstructArgs rec;
  auto* c_rec = app.add_subcommand("reconstruct", "Rebuild a point cloud from a spectrum file");
  c_rec->add_option("--input", rec.input, "Spectrum file")->required();
  c_rec->add_option("--output", rec.output, "Point cloud to write (.ply or .csv)")->required();
  add_threshold_option(*c_rec, rec.threshold);

  SwapArgs swp;
  auto* c_swp = app.add_subcommand("swap", "Exchange amplitude or phase between two inputs");
  c_swp->add_option("--a", swp.a, "First cloud or .spcf spectrum")->required();
  c_swp->add_option("--b", swp.b, "Second cloud or .spcf spectrum")->required();
  c_swp->add_option("--kind", swp.kind, "Component to exchange: amp or phase")
      ->check(CLI::IsMember({"amp", "phase"}))
      ->capture_default_str();
  add_channels_option(*c_swp, swp.channels);
  c_swp->add_option("--out-a", swp.out_a, "Output for the first input (.ply, .csv or .spcf)")->required();
  c_swp->add_option("--out-b", swp.out_b, "Output for the second input (.ply, .csv or .spcf)")->required();
  add_threshold_option(*c_swp, swp.threshold);
  swp.voxel.add_to(*c_swp);

  StylizeArgs sty;
  auto* c_sty = app.add_subcommand("stylize", "Blend a style amplitude into a content cloud");
  c_sty->add_option("--content", sty.content, "Content cloud")->required();
  c_sty->add_option("--style", sty.style, "Style cloud, or .png/.ppm image")->required();
  c_sty->add_option("--gamma", sty.gamma, "Style weight in [0, 1]")->capture_default_str();
  add_threshold_option(*c_sty, sty.threshold);
  add_channels_option(*c_sty, sty.channels);
  c_sty->add_option("--output", sty.output, "Point cloud to write")->required();
  sty.voxel.add_to(*c_sty);

  AugmentArgs aug;
  auto* c_aug = app.add_subcommand("augment", "Amplitude-swap augmentation over a labeled dataset");
  c_aug->add_option("--dataset", aug.dataset, "Directory with one subdirectory per label")->required();
  c_aug->add_option("--output", aug.output, "Output directory")->required();
  c_aug->add_option("--seed", aug.seed, "Donor assignment seed")->capture_default_str();
  c_aug->add_option("--reps", aug.reps, "Augmented copies per input cloud")->capture_default_str();
  add_channels_option(*c_aug, aug.channels);
  add_threshold_option(*c_aug, aug.threshold);
  c_aug->add_flag("--same-class", aug.same_class, "Draw donors from the same label only");
  aug.voxel.add_to(*c_aug);

  VerifyArgs ver;
  auto* c_ver = app.add_subcommand("verify", "Run the built-in numerical self-checks");
  c_ver->add_option("--size", ver.size, "small or full")
      ->check(CLI::IsMember({"small", "full"}))
      ->capture_default_str();
  // Negative control: corrupts the fast transform so the oracle check must fail.
  c_ver->add_option("--perturb-fft", ver.perturb_fft)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    check_threads_env();
    if (command == "decompose") {
      emit(run_decompose(dec));
    } else if (command == "reconstruct") {
      emit(run_reconstruct(rec));
    } else if (command == "swap") {
      emit(run_swap(swp));
    } else if (command == "stylize") {
      emit(run_stylize(sty));
    } else if (command == "augment") {
      emit(run_augment(aug));
    } else {
      bool passed = false;
      emit(run_verify(ver, passed));
      return passed ? kExitOk : kExitInternal;
    }
    return kExitOk;
  } catch (const spcd::Error& e) {
    // Library errors describe bad parameters or inputs.
    std::cerr << "error: " << e.what() << "\n";
    emit({{"command", command}, {"ok", false}, {"error", e.what()}});
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    emit({{"command", command}, {"ok", false}, {"error", e.what()}});
    return kExitInternal;
  }
}
