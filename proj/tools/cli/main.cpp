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
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using namespace qlstm;

std::map<std::string, vqc::GradEngine> engine_map() {
    return {{"adjoint", vqc::GradEngine::adjoint}, {"shift", vqc::GradEngine::shift}};
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum and classical LSTM time-series workbench"};
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML/INI file with flag defaults; explicit flags win");

    cli::GenOptions gen;
    auto *gen_cmd = app.add_subcommand("gen", "Write a generated series as t,value CSV");
    gen_cmd->add_option("--experiment", gen.experiment, "sine, pendulum, bessel, popinv or csv:<path>")
        ->capture_default_str();
    gen_cmd->add_option("--out", gen.out, "Output CSV (default <experiment>.csv)");

    cli::TrainOptions tr;
    std::string data_path;
    auto *train_cmd = app.add_subcommand("train", "Train QLSTM and/or LSTM on an experiment");
    train_cmd->add_option("--experiment", tr.experiment, "sine, pendulum, bessel, popinv or csv:<path>")
        ->capture_default_str();
    train_cmd->add_option("--data", data_path, "CSV file; shorthand for --experiment csv:<path>");
    train_cmd->add_option("--model", tr.model, "qlstm, lstm or both")
        ->check(CLI::IsMember({"qlstm", "lstm", "both"}))
        ->capture_default_str();
    train_cmd->add_option("--init", tr.init, "Initial parameters: random or zero")
        ->check(CLI::IsMember({"random", "zero"}))
        ->capture_default_str();
    train_cmd->add_option("--seed", tr.config.seed, "Shuffling and initialization seed")
        ->capture_default_str();
    train_cmd->add_option("--init-seed", tr.init_seed, "Separate initialization seed (0: --seed)");
    train_cmd->add_option("--epochs", tr.config.max_epochs, "Number of epochs")->capture_default_str();
    train_cmd->add_option("--batch-size", tr.config.batch_size, "Samples per RMSprop step")
        ->capture_default_str();
    train_cmd->add_option("--lr", tr.config.learning_rate, "RMSprop learning rate")
        ->capture_default_str();
    train_cmd->add_option("--grad-engine", tr.config.engine, "adjoint or shift")
        ->transform(CLI::CheckedTransformer(engine_map(), CLI::ignore_case));
    train_cmd->add_option("--threads", tr.config.threads, "Worker threads (0: all cores)");
    train_cmd->add_option("--out", tr.out, "Output directory")->capture_default_str();
    train_cmd->add_option("--checkpoint-epochs", tr.checkpoint_epochs, "Epochs to checkpoint")
        ->delimiter(',');
    train_cmd->add_flag("--record-time", tr.record_time, "Write real wall times to metrics");

    cli::EvalOptions ev;
    auto *eval_cmd = app.add_subcommand("eval", "Write a prediction trace for a checkpoint");
    eval_cmd->add_option("--checkpoint", ev.checkpoint, "Checkpoint JSON")->required();
    eval_cmd->add_option("--experiment", ev.experiment, "Override the stored experiment");
    eval_cmd->add_option("--data", data_path, "CSV file; shorthand for --experiment csv:<path>");
    eval_cmd->add_option("--out", ev.out, "Trace CSV (default next to the checkpoint)");
    eval_cmd->add_option("--threads", ev.threads, "Worker threads (0: all cores)");

    cli::GradcheckOptions gc;
    std::size_t corrupt = 0;
    auto *grad_cmd = app.add_subcommand("gradcheck", "Check gradients against independent methods");
    grad_cmd->add_option("--model", gc.model, "qlstm, lstm or both")
        ->check(CLI::IsMember({"qlstm", "lstm", "both"}))
        ->capture_default_str();
    grad_cmd->add_option("--seed", gc.seed, "Seed for parameters and inputs")->capture_default_str();
    grad_cmd->add_option("--trials", gc.trials, "Random instances per model")->capture_default_str();
    auto *corrupt_opt = grad_cmd->add_option("--corrupt-index", corrupt)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        (void)app.exit(e);
        return cli::kExitUsage;
    }

    try {
        if (*gen_cmd)
            return cli::cmd_gen(gen, std::cout);
        if (*train_cmd) {
            if (!data_path.empty())
                tr.experiment = "csv:" + data_path;
            return cli::cmd_train(tr, std::cout);
        }
        if (*eval_cmd) {
            if (!data_path.empty())
                ev.experiment = "csv:" + data_path;
            return cli::cmd_eval(ev, std::cout);
        }
        if (*corrupt_opt)
            gc.corrupt_index = corrupt;
        return cli::cmd_gradcheck(gc, std::cout);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::exit_code_for(e);
    }
}
