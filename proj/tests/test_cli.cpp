// Copyright 2026 The spectral-pcd Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <json.hpp>
#include <random>
#include <string>

#include "test_util.hpp"

namespace spcd {
namespace {

using nlohmann::json;
using spcd::testing::fixture;
using spcd::testing::TempDir;
namespace fs = std::filesystem;

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

/// Runs the CLI with `args` (already shell-quoted) and captures both streams.
RunResult run_cli(const std::string& args, const TempDir& tmp, const std::string& env = "") {
  const fs::path err = tmp / "stderr.txt";
  const std::string cmd = env + " " + quote(SPCD_CLI_PATH) + " " + args + " 2>" + quote(err.string());
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = io::read_file(err);
  return r;
}

json single_json_line(const RunResult& r) {
  EXPECT_FALSE(r.out.empty());
  EXPECT_EQ(r.out.back(), '\n');
  EXPECT_EQ(r.out.find('\n'), r.out.size() - 1) << "more than one stdout line";
  return json::parse(r.out);
}

PointCloud make_cloud(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  return random_cloud(rng, n);
}

std::string p(const fs::path& path) { return quote(path.string()); }

TEST(Cli, DecomposeReconstructMatchesLibrary) {
  TempDir tmp;
  io::write_ply(make_cloud(101, 300), tmp / "in.ply");
  const RunResult d = run_cli("decompose --input " + p(tmp / "in.ply") + " --output " + p(tmp / "s.spcf") +
                                  " --grid-max 20",
                              tmp);
  ASSERT_EQ(d.code, 0) << d.err;
  const json dj = single_json_line(d);
  EXPECT_EQ(dj["command"], "decompose");
  EXPECT_EQ(dj["ok"], true);
  EXPECT_EQ(dj["points"], 300);

  const RunResult r = run_cli("reconstruct --input " + p(tmp / "s.spcf") + " --output " + p(tmp / "out.ply"), tmp);
  ASSERT_EQ(r.code, 0) << r.err;
  const json rj = single_json_line(r);

  const PointCloud in = io::read_pointcloud(tmp / "in.ply");
  const PointCloud lib = reconstruct(decompose(in, VoxelSizePolicy::grid_max(20)));
  EXPECT_EQ(rj["points"], lib.size());
  EXPECT_EQ(io::read_file(tmp / "out.ply"), io::format_ply(lib));
  EXPECT_EQ(io::read_spectrum(tmp / "s.spcf"), decompose(in, VoxelSizePolicy::grid_max(20)));
}

TEST(Cli, ThresholdZeroEmitsEveryVoxel) {
  TempDir tmp;
  io::write_ply(make_cloud(102, 100), tmp / "a.ply");
  io::write_ply(make_cloud(103, 100), tmp / "b.ply");
  const RunResult s = run_cli("swap --a " + p(tmp / "a.ply") + " --b " + p(tmp / "b.ply") +
                                  " --kind amp --grid-max 9 --out-a " + p(tmp / "sa.spcf") + " --out-b " +
                                  p(tmp / "sb.spcf"),
                              tmp);
  ASSERT_EQ(s.code, 0) << s.err;
  const json sj = single_json_line(s);
  EXPECT_TRUE(sj["points_a"].is_null());
  const RunResult r = run_cli(
      "reconstruct --threshold 0 --input " + p(tmp / "sa.spcf") + " --output " + p(tmp / "all.csv"), tmp);
  ASSERT_EQ(r.code, 0) << r.err;
  const json g = sj["geometry"];
  EXPECT_EQ(single_json_line(r)["points"],
            g["W"].get<std::size_t>() * g["H"].get<std::size_t>() * g["D"].get<std::size_t>());
}

TEST(Cli, AmplitudeSwapTwiceIsBitExact) {
  TempDir tmp;
  io::write_ply(make_cloud(104, 150), tmp / "a.ply");
  io::write_ply(make_cloud(105, 150), tmp / "b.ply");
  // Spectra on the shared grid, as the swap requires.
  const PointCloud b = io::read_pointcloud(tmp / "b.ply");
  const PointCloud a = io::read_pointcloud(tmp / "a.ply");
  const auto [sa, sb] = decompose_pair(a, b, VoxelSizePolicy::grid_max(12));
  io::write_spectrum(sa, tmp / "a.spcf");
  io::write_spectrum(sb, tmp / "b.spcf");
  ASSERT_EQ(run_cli("swap --kind amp --a " + p(tmp / "a.spcf") + " --b " + p(tmp / "b.spcf") + " --out-a " +
                        p(tmp / "a1.spcf") + " --out-b " + p(tmp / "b1.spcf"),
                    tmp)
                .code,
            0);
  ASSERT_EQ(run_cli("swap --kind amp --a " + p(tmp / "a1.spcf") + " --b " + p(tmp / "b1.spcf") + " --out-a " +
                        p(tmp / "a2.spcf") + " --out-b " + p(tmp / "b2.spcf"),
                    tmp)
                .code,
            0);
  EXPECT_EQ(io::read_file(tmp / "a2.spcf"), io::read_file(tmp / "a.spcf"));
  EXPECT_EQ(io::read_file(tmp / "b2.spcf"), io::read_file(tmp / "b.spcf"));
}

TEST(Cli, StylizeGammaZeroIsContentRoundTrip) {
  TempDir tmp;
  io::write_ply(make_cloud(106, 200), tmp / "c.ply");
  io::write_ply(make_cloud(107, 200), tmp / "s.ply");
  const RunResult r = run_cli("stylize --gamma 0 --grid-max 10 --content " + p(tmp / "c.ply") + " --style " +
                                  p(tmp / "s.ply") + " --output " + p(tmp / "o.ply"),
                              tmp);
  ASSERT_EQ(r.code, 0) << r.err;
  const PointCloud c = io::read_pointcloud(tmp / "c.ply");
  const PointCloud s = io::read_pointcloud(tmp / "s.ply");
  const GridGeometry g = shared_geometry(c, s, VoxelSizePolicy::grid_max(10));
  EXPECT_EQ(io::read_file(tmp / "o.ply"), io::format_ply(reconstruct(decompose_on(c, g))));
}

TEST(Cli, StylizeFromImage) {
  TempDir tmp;
  io::write_ply(make_cloud(108, 200), tmp / "c.ply");
  const RunResult r = run_cli("stylize --gamma 0.5 --grid-max 10 --content " + p(tmp / "c.ply") + " --style " +
                                  quote(fixture("two_by_two.ppm")) + " --output " + p(tmp / "o.csv"),
                              tmp);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(single_json_line(r)["style_kind"], "image");
  EXPECT_TRUE(fs::exists(tmp / "o.csv"));
}

void write_dataset(const fs::path& root, std::size_t per_class) {
  std::uint64_t seed = 200;
  for (const char* label : {"cat", "dog"}) {
    fs::create_directories(root / label);
    for (std::size_t i = 0; i < per_class; ++i) {
      io::write_ply(make_cloud(seed++, 60), root / label / ("c" + std::to_string(i) + ".ply"));
    }
  }
}

TEST(Cli, AugmentCountsAndDeterminism) {
  TempDir tmp;
  write_dataset(tmp / "ds", 5);
  const std::string base = "augment --grid-max 8 --seed 7 --reps 2 --dataset " + p(tmp / "ds");
  const RunResult r1 = run_cli(base + " --output " + p(tmp / "o1"), tmp);
  ASSERT_EQ(r1.code, 0) << r1.err;
  const json j = single_json_line(r1);
  EXPECT_EQ(j["inputs"].size(), 10u);
  EXPECT_EQ(j["written"], 20);
  ASSERT_EQ(j["reps"].size(), 2u);
  for (const json& rep : j["reps"]) {
    const auto donors = rep["donors"].get<std::vector<std::size_t>>();
    ASSERT_EQ(donors.size(), 10u);
    for (std::size_t i = 0; i < donors.size(); ++i) EXPECT_NE(donors[i], i);
  }
  EXPECT_NE(j["reps"][0]["seed"], j["reps"][1]["seed"]);
  const RunResult r2 = run_cli(base + " --output " + p(tmp / "o2"), tmp, "SPECTRAL_PCD_THREADS=3");
  ASSERT_EQ(r2.code, 0) << r2.err;
  std::size_t files = 0;
  for (const auto& e : fs::recursive_directory_iterator(tmp / "o1")) {
    if (!e.is_regular_file()) continue;
    ++files;
    const fs::path rel = fs::relative(e.path(), tmp / "o1");
    EXPECT_EQ(io::read_file(e.path()), io::read_file(tmp / "o2" / rel)) << rel;
  }
  EXPECT_EQ(files, 20u);
  EXPECT_TRUE(fs::exists(tmp / "o1" / "dog" / "c4_aug1.ply"));
}

TEST(Cli, VerifySmallPassesAndPerturbedFails) {
  TempDir tmp;
  const RunResult ok = run_cli("verify", tmp);
  EXPECT_EQ(ok.code, 0) << ok.err;
  EXPECT_EQ(single_json_line(ok)["ok"], true);
  const RunResult bad = run_cli("verify --perturb-fft 1e-3", tmp);
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(single_json_line(bad)["ok"], false);
}

TEST(Cli, UsageErrorsExitTwo) {
  TempDir tmp;
  io::write_ply(make_cloud(109, 20), tmp / "a.ply");
  EXPECT_EQ(run_cli("", tmp).code, 2);
  EXPECT_EQ(run_cli("decompose --bogus", tmp).code, 2);
  EXPECT_EQ(run_cli("decompose --input " + p(tmp / "a.ply"), tmp).code, 2);
  EXPECT_EQ(run_cli("reconstruct --threshold -1 --input x.spcf --output y.ply", tmp).code, 2);
  EXPECT_EQ(run_cli("decompose --voxel-size 0 --input " + p(tmp / "a.ply") + " --output " + p(tmp / "s.spcf"), tmp)
                .code,
            2);
  EXPECT_EQ(run_cli("stylize --gamma 2 --content " + p(tmp / "a.ply") + " --style " + p(tmp / "a.ply") +
                        " --output " + p(tmp / "o.ply"),
                    tmp)
                .code,
            2);
  EXPECT_EQ(run_cli("swap --kind phase --channels rgb --a " + p(tmp / "a.ply") + " --b " + p(tmp / "a.ply") +
                        " --out-a " + p(tmp / "x.ply") + " --out-b " + p(tmp / "y.ply"),
                    tmp)
                .code,
            2);
  EXPECT_EQ(run_cli("verify", tmp, "SPECTRAL_PCD_THREADS=zero").code, 2);
}

TEST(Cli, InputErrorsExitTwoWithJson) {
  TempDir tmp;
  const RunResult r = run_cli("decompose --input " + quote(fixture("nan_coord.ply")) + " --output " +
                                  p(tmp / "s.spcf"),
                              tmp);
  EXPECT_EQ(r.code, 2);
  const json j = single_json_line(r);
  EXPECT_EQ(j["ok"], false);
  EXPECT_EQ(j["command"], "decompose");
  EXPECT_FALSE(r.err.empty());
  EXPECT_FALSE(fs::exists(tmp / "s.spcf"));
  EXPECT_FALSE(fs::exists(tmp / "s.spcf.tmp"));

  io::write_file_atomic(tmp / "bad.spcf", "SPCF");
  EXPECT_EQ(run_cli("reconstruct --input " + p(tmp / "bad.spcf") + " --output " + p(tmp / "o.ply"), tmp).code, 2);
}

}  // namespace
}  // namespace spcd
