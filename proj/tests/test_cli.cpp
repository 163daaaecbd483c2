// Copyright 2026 The QLSTM Workbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "qlstm/checkpoint.hpp"

namespace fs = std::filesystem;
using namespace qlstm;

namespace {

const fs::path &workdir() {
    static const fs::path dir = [] {
        const auto d = fs::temp_directory_path() / "qlstm_test_cli";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

struct Run {
    int code = -1;
    std::string output;
};

Run run(const std::string &args, const std::string &env = "") {
    const auto log = workdir() / "last_output.txt";
    const std::string cmd = "cd '" + workdir().string() + "' && " + env + " '" QLSTM_CLI_PATH "' " +
                            args + " > '" + log.string() + "' 2>&1";
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(log);
    std::ostringstream ss;
    ss << in.rdbuf();
    r.output = ss.str();
    return r;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> read_rows(const fs::path &p) {
    std::ifstream in(p);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

} // namespace

TEST(CliGen, DefaultSineGrid) {
    const auto r = run("gen --experiment sine --out gen/sine.csv");
    ASSERT_EQ(r.code, 0) << r.output;
    EXPECT_EQ(read_rows(workdir() / "gen/sine.csv").size(), 200u);
}

TEST(CliGen, PopulationInversionStartsAtOne) {
    ASSERT_EQ(run("gen --experiment popinv --out gen/popinv.csv").code, 0);
    const auto rows = read_rows(workdir() / "gen/popinv.csv");
    ASSERT_FALSE(rows.empty());
    EXPECT_NEAR(std::stod(rows[0][1]), 1.0, 1e-12);
}

TEST(CliGen, RegenerationIsIdentical) {
    ASSERT_EQ(run("gen --experiment pendulum --out gen/p1.csv").code, 0);
    ASSERT_EQ(run("gen --experiment pendulum --out gen/p2.csv").code, 0);
    EXPECT_EQ(slurp(workdir() / "gen/p1.csv"), slurp(workdir() / "gen/p2.csv"));
}

TEST(CliGen, ExitCodes) {
    EXPECT_EQ(run("gen --experiment warp").code, cli::kExitUsage);
    EXPECT_EQ(run("gen --experiment csv:missing.csv").code, cli::kExitIo);
    EXPECT_EQ(run("frobnicate").code, cli::kExitUsage);
    EXPECT_EQ(run("").code, cli::kExitUsage);
    EXPECT_EQ(run("train --model gru").code, cli::kExitUsage);
    EXPECT_EQ(run("train --batch-size 0 --epochs 1").code, cli::kExitUsage);
    EXPECT_EQ(run("--help").code, 0);
}

TEST(CliGen, OutputRootFromEnvironment) {
    fs::create_directories(workdir() / "root");
    const auto r = run("gen --experiment bessel --out b.csv", "QLSTM_OUT_ROOT=root");
    ASSERT_EQ(r.code, 0) << r.output;
    EXPECT_TRUE(fs::exists(workdir() / "root/b.csv"));
}

TEST(CliTrain, BothModelsAndCheckpoints) {
    const auto r = run("train --experiment sine --model both --seed 1 --epochs 15 --out t1");
    ASSERT_EQ(r.code, 0) << r.output;
    for (const std::string m : {"qlstm", "lstm"}) {
        const auto metrics = workdir() / "t1" / ("metrics_" + m + ".csv");
        ASSERT_TRUE(fs::exists(metrics));
        const auto rows = read_rows(metrics);
        ASSERT_EQ(rows.size(), 15u);
        EXPECT_EQ(rows[14][0], "15");
        EXPECT_GE(std::stod(rows[14][1]), 0.0);
        EXPECT_GE(std::stod(rows[14][2]), 0.0);
        EXPECT_TRUE(fs::exists(workdir() / "t1" / ("ckpt_" + m + "_epoch1.json")));
        EXPECT_TRUE(fs::exists(workdir() / "t1" / ("ckpt_" + m + "_epoch15.json")));
        EXPECT_FALSE(fs::exists(workdir() / "t1" / ("ckpt_" + m + "_epoch30.json")));
        EXPECT_TRUE(fs::exists(workdir() / "t1" / ("ckpt_" + m + "_final.json")));
    }
    const auto ck = train::load_checkpoint(workdir() / "t1/ckpt_qlstm_epoch15.json",
                                           model::ModelKind::qlstm);
    EXPECT_EQ(ck.epoch, 15);
    EXPECT_EQ(ck.experiment, "sine");
}

TEST(CliTrain, RerunIsByteIdentical) {
    ASSERT_EQ(run("train --experiment sine --model lstm --seed 1 --epochs 5 --out r1").code, 0);
    ASSERT_EQ(run("train --experiment sine --model lstm --seed 1 --epochs 5 --out r2").code, 0);
    EXPECT_EQ(slurp(workdir() / "r1/metrics_lstm.csv"), slurp(workdir() / "r2/metrics_lstm.csv"));
    EXPECT_EQ(slurp(workdir() / "r1/ckpt_lstm_final.json"),
              slurp(workdir() / "r2/ckpt_lstm_final.json"));
}

TEST(CliTrain, CheckpointEpochOverride) {
    ASSERT_EQ(run("train --model lstm --epochs 4 --checkpoint-epochs 2,3 --out co").code, 0);
    EXPECT_FALSE(fs::exists(workdir() / "co/ckpt_lstm_epoch1.json"));
    EXPECT_TRUE(fs::exists(workdir() / "co/ckpt_lstm_epoch2.json"));
    EXPECT_TRUE(fs::exists(workdir() / "co/ckpt_lstm_epoch3.json"));
}

TEST(CliTrain, ConfigFileBelowFlags) {
    std::ofstream(workdir() / "cfg.toml") << "[train]\nepochs = 2\nmodel = \"lstm\"\nout = \"cfg\"\n";
    ASSERT_EQ(run("--config cfg.toml train").code, 0);
    EXPECT_EQ(read_rows(workdir() / "cfg/metrics_lstm.csv").size(), 2u);
    ASSERT_EQ(run("--config cfg.toml train --epochs 3").code, 0);
    EXPECT_EQ(read_rows(workdir() / "cfg/metrics_lstm.csv").size(), 3u);
}

TEST(CliTrain, CsvData) {
    ASSERT_EQ(run("gen --experiment bessel --out data/bessel.csv").code, 0);
    const auto r = run("train --data data/bessel.csv --model lstm --epochs 1 --out csvrun");
    ASSERT_EQ(r.code, 0) << r.output;
    EXPECT_EQ(read_rows(workdir() / "csvrun/metrics_lstm.csv").size(), 1u);
}

TEST(CliEval, ZeroModelPredictsShiftedMidpoint) {
    ASSERT_EQ(run("train --experiment sine --model qlstm --init zero --epochs 0 --out z").code, 0);
    const auto ckpt = workdir() / "z/ckpt_qlstm_final.json";
    const auto ck = train::load_checkpoint(ckpt);
    const auto r = run("eval --checkpoint z/ckpt_qlstm_final.json --out z/trace.csv");
    ASSERT_EQ(r.code, 0) << r.output;
    const auto rows = read_rows(workdir() / "z/trace.csv");
    ASSERT_EQ(rows.size(), 196u);
    for (const auto &row : rows)
        EXPECT_DOUBLE_EQ(std::stod(row[2]), ck.scaler.unscale(0.0));
}

TEST(CliEval, ReportedMseMatchesTrace) {
    ASSERT_EQ(run("train --experiment pendulum --model lstm --epochs 3 --out e").code, 0);
    const auto r = run("eval --checkpoint e/ckpt_lstm_final.json --out e/trace.csv");
    ASSERT_EQ(r.code, 0) << r.output;
    const auto rows = read_rows(workdir() / "e/trace.csv");
    const std::size_t windows = data::gen_pendulum().size() - data::kWindow;
    ASSERT_EQ(rows.size(), windows);
    std::vector<double> truth, pred, test_truth, test_pred;
    for (const auto &row : rows) {
        truth.push_back(std::stod(row[1]));
        pred.push_back(std::stod(row[2]));
        if (row[3] == "1") {
            test_truth.push_back(truth.back());
            test_pred.push_back(pred.back());
        }
    }
    EXPECT_EQ(test_truth.size(), windows - windows * 67 / 100);

    cli::EvalOptions opts;
    opts.checkpoint = workdir() / "e/ckpt_lstm_final.json";
    opts.out = workdir() / "e/trace2.csv";
    const auto s = cli::evaluate_to_csv(opts);
    EXPECT_NEAR(s.all_mse, train::mse(pred, truth), 1e-12 * (1.0 + s.all_mse));
    EXPECT_NEAR(s.test_mse, train::mse(test_pred, test_truth), 1e-12 * (1.0 + s.test_mse));
    EXPECT_NE(r.output.find("test_mse"), std::string::npos);
}

TEST(CliEval, BadCheckpoint) {
    std::ofstream(workdir() / "broken.json") << "{\"format\": \"qlstm-checkpoint\"";
    EXPECT_EQ(run("eval --checkpoint broken.json").code, cli::kExitIo);
    EXPECT_EQ(run("eval --checkpoint absent.json").code, cli::kExitIo);
    EXPECT_EQ(run("eval").code, cli::kExitUsage);
}

TEST(CliGradcheck, FreshModelsPass) {
    const auto r = run("gradcheck --seed 5");
    EXPECT_EQ(r.code, 0) << r.output;
}

TEST(CliGradcheck, CorruptedGradientFails) {
    const auto r = run("gradcheck --model qlstm --corrupt-index 42");
    EXPECT_EQ(r.code, cli::kExitNumeric) << r.output;
    EXPECT_NE(r.output.find("worst offender index 42"), std::string::npos) << r.output;
    EXPECT_EQ(run("gradcheck --model lstm --corrupt-index 1000").code, cli::kExitUsage);
}

TEST(CliGradcheck, LstmNeedsNoQuantumEvaluations) {
    const auto r = run("gradcheck --model lstm");
    EXPECT_EQ(r.code, 0) << r.output;
    EXPECT_NE(r.output.find("quantum circuit evaluations: 0"), std::string::npos) << r.output;
}

TEST(Experiments, Registry) {
    for (const auto &name : cli::builtin_experiments())
        EXPECT_GT(cli::load_experiment(name).size(), data::kWindow + 1) << name;
    EXPECT_THROW((void)cli::load_experiment("csv:"), cli::UsageError);
    EXPECT_THROW((void)cli::load_experiment("square"), cli::UsageError);
}
