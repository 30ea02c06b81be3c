// Copyright 2026 The qfb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "qfb/design.hpp"
#include "qfb/execute.hpp"

namespace qfb {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string &name) {
    const fs::path p = fs::temp_directory_path() / ("qfb_test_" + std::to_string(::getpid())) / name;
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path &p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path &p) {
    std::vector<std::vector<std::string>> rows;
    std::ifstream f(p);
    std::string line;
    while (std::getline(f, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            cells.push_back(cell);
        }
        rows.push_back(cells);
    }
    return rows;
}

TEST(Execute, ideal_design_table) {
    RunConfig c = parse_config("mode = design-table\nT1 = inf\nT2 = inf\neta = 1");
    c.out = scratch("design").string();
    const ExecuteResult r = execute(c);
    EXPECT_EQ(r.files, (std::vector<std::string>{"design.csv", "run_meta.json"}));
    const auto rows = read_csv(fs::path(c.out) / "design.csv");
    ASSERT_EQ(rows.size(), 182u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"theta", "delta0", "delta1", "R_max"}));
    const auto &eq = rows[91];  // theta = pi/2
    EXPECT_NEAR(std::stod(eq[0]), kPi / 2, 1e-8);
    EXPECT_NEAR(std::stod(eq[1]), 0.0, 1e-12);
    EXPECT_EQ(eq[2], "5");
    EXPECT_EQ(eq[3], "1");
}

TEST(Execute, nonideal_design_table_marks_rejected_angles) {
    RunConfig c = parse_config("mode = design-table\ndesign_points = 51");
    c.out = scratch("design_nonideal").string();
    const ExecuteResult r = execute(c);
    const auto rows = read_csv(fs::path(c.out) / "design.csv");
    EXPECT_EQ(rows[1][1], "nan");
    EXPECT_NE(rows[25][1], "nan");
    EXPECT_FALSE(r.warnings.empty());
}

TEST(Execute, ensemble_writes_mean_and_ode) {
    RunConfig c = parse_config(
        "mode = ensemble\ntheta_target = 0.3pi\ntheta_initial = 0.1pi\ntotal_time = 0.2\n"
        "record_stride = 40\nn_traj = 64\nseed = 3");
    c.out = scratch("ensemble").string();
    execute(c);
    const auto mean = read_csv(fs::path(c.out) / "mean.csv");
    const auto ode = read_csv(fs::path(c.out) / "ode.csv");
    ASSERT_EQ(mean.size(), 12u);  // header + 0, 40, ..., 400 steps
    EXPECT_EQ(mean[0], (std::vector<std::string>{"t", "x", "y", "z"}));
    EXPECT_EQ(ode.size(), mean.size());
    EXPECT_NEAR(std::stod(mean[1][2]), std::sin(0.1 * kPi), 1e-8);
    const auto meta = nlohmann::json::parse(slurp(fs::path(c.out) / "run_meta.json"));
    EXPECT_EQ(meta["version"], kVersion);
    EXPECT_EQ(meta["seed"], 3);
    EXPECT_TRUE(meta.contains("renormalizations"));
    EXPECT_EQ(meta["config"]["mode"], "ensemble");
    EXPECT_FALSE(meta["config"].contains("threads"));
}

TEST(Execute, histogram_outputs) {
    RunConfig c = parse_config("mode = histogram\ntheta_target = 0.3pi\ndt = 0.01\nn_traj = 2000\nseed = 1");
    c.out = scratch("hist").string();
    execute(c);
    const auto hist = read_csv(fs::path(c.out) / "hist.csv");
    EXPECT_EQ(hist[0], (std::vector<std::string>{"y_bin", "z_bin", "count"}));
    long total = 0;
    for (std::size_t i = 1; i < hist.size(); ++i) {
        total += std::stol(hist[i][2]);
    }
    EXPECT_EQ(total, 2000);
    const auto peaks = nlohmann::json::parse(slurp(fs::path(c.out) / "peaks.json"));
    for (const char *key : {"theta_P", "R_P", "sigma", "lobes", "R_E"}) {
        EXPECT_TRUE(peaks.contains(key)) << key;
    }
}

TEST(Execute, nine_significant_digits) {
    EXPECT_EQ(format_number(kPi), "3.14159265");
    EXPECT_EQ(format_number(-0.0), "0");
    EXPECT_EQ(format_number(1e-20), "1e-20");
    EXPECT_EQ(format_number(std::nan("")), "nan");
    EXPECT_EQ(format_number(-INFINITY), "-inf");
}

TEST(Execute, sweep_grids) {
    RunConfig a = parse_config("mode = sweep-angle");
    EXPECT_EQ(sweep_grid(a).size(), 9u);
    EXPECT_DOUBLE_EQ(sweep_grid(a).front(), 0.1 * kPi);
    RunConfig b = parse_config("mode = sweep-delay\ntheta_target = 0.3pi");
    EXPECT_EQ(sweep_grid(b).size(), 11u);
    EXPECT_DOUBLE_EQ(sweep_grid(b).back(), 1.0);
}

TEST(Execute, resolve_law_follows_the_design_rule) {
    const RunConfig ideal = parse_config("mode = ensemble\ntheta_target = 0.3pi\nT1 = inf\nT2 = inf\neta = 1");
    EXPECT_EQ(resolve_law(ideal), design_ideal(0.3 * kPi, 0.2));
    const RunConfig nonideal = parse_config("mode = ensemble\ntheta_target = 0.3pi\nTd = 0.01");
    FeedbackLaw want = design_nonideal(0.3 * kPi, ModelParams{}).law;
    want.Td = 0.01;
    EXPECT_EQ(resolve_law(nonideal), want);
    const RunConfig forced = parse_config("mode = ensemble\ntheta_target = 0.3pi\ndesign = ideal");
    EXPECT_EQ(resolve_law(forced), design_ideal(0.3 * kPi, 0.2));
    const RunConfig explicit_law = parse_config("mode = ensemble\ndelta0 = 1\ndelta1 = 2\nTs = 0.02");
    EXPECT_EQ(resolve_law(explicit_law), (FeedbackLaw{1, 2, 0.02, 0}));
}

TEST(Execute, failure_leaves_no_files) {
    // The out path is an existing regular file, so nothing can be written under it.
    const fs::path dir = scratch("blocked");
    fs::create_directories(dir.parent_path());
    std::ofstream(dir) << "x";
    RunConfig c = parse_config("mode = design-table");
    c.out = dir.string();
    EXPECT_THROW(execute(c), std::runtime_error);
    EXPECT_TRUE(fs::is_regular_file(dir));
}

int run_cli(const std::string &args) {
    const std::string cmd = std::string(QFB_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Cli, byte_identical_outputs_for_any_thread_count) {
    const fs::path base = scratch("cli");
    fs::create_directories(base);
    const fs::path cfg = base / "run.cfg";
    std::ofstream(cfg) << "mode = histogram\ntheta_target = 0.3pi\ndt = 0.01\nn_traj = 3000\nseed = 5\n"
                          "Td = 0.02\nout = "
                       << (base / "x").string() << "\n";
    ASSERT_EQ(run_cli("--config " + cfg.string() + " --threads 1 --out " + (base / "a").string()), 0);
    ASSERT_EQ(run_cli("--config " + cfg.string() + " --threads 7 --out " + (base / "b").string()), 0);
    setenv("QFB_THREADS", "3", 1);
    ASSERT_EQ(run_cli("--config " + cfg.string() + " --out " + (base / "c").string()), 0);
    unsetenv("QFB_THREADS");
    for (const char *f : {"hist.csv", "peaks.json"}) {
        const std::string a = slurp(base / "a" / f);
        EXPECT_FALSE(a.empty());
        EXPECT_EQ(a, slurp(base / "b" / f)) << f;
        EXPECT_EQ(a, slurp(base / "c" / f)) << f;
    }
    // run_meta differs only through the out key.
    auto meta_a = nlohmann::json::parse(slurp(base / "a" / "run_meta.json"));
    auto meta_b = nlohmann::json::parse(slurp(base / "b" / "run_meta.json"));
    meta_a["config"].erase("out");
    meta_b["config"].erase("out");
    EXPECT_EQ(meta_a, meta_b);
}

TEST(Cli, exit_codes) {
    const fs::path base = scratch("cli_errors");
    EXPECT_EQ(run_cli("--mode design-table --out " + base.string()), 0);
    EXPECT_TRUE(fs::exists(base / "design.csv"));
    EXPECT_NE(run_cli("--mode design-table --dt 0.5"), 0);
    EXPECT_NE(run_cli("--mode ensemble"), 0);
    EXPECT_NE(run_cli("--set nonsense=1"), 0);
    EXPECT_NE(run_cli("--no-such-flag"), 0);
    EXPECT_EQ(run_cli("--version"), 0);
}

}  // namespace
}  // namespace qfb
