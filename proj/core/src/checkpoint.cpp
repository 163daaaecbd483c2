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
#include "qlstm/checkpoint.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qlstm/error.hpp"

namespace qlstm::train {

namespace {

using nlohmann::json;

constexpr const char *kFormat = "qlstm-checkpoint";

json dims_of(model::ModelKind kind) {
    if (kind == model::ModelKind::qlstm)
        return {{"input", model::QlstmDims::input_dim},
                {"hidden", model::QlstmDims::hidden_dim},
                {"cell", model::QlstmDims::cell_dim},
                {"n_qubits", model::QlstmDims::n_qubits},
                {"depth", model::QlstmDims::depth},
                {"n_vqc", model::QlstmDims::n_vqc}};
    return {{"input", model::LstmDims::input_dim}, {"hidden", model::LstmDims::hidden_dim}};
}

std::string_view engine_name(vqc::GradEngine e) {
    return e == vqc::GradEngine::shift ? "shift" : "adjoint";
}

template <class T> T field(const json &j, const char *key) {
    if (!j.contains(key))
        throw SchemaError(std::string("checkpoint is missing '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &e) {
        throw SchemaError(std::string("checkpoint field '") + key + "': " + e.what());
    }
}

} // namespace

void save_checkpoint(const Checkpoint &ck, const std::filesystem::path &path) {
    const model::ModelKind kind = model::kind_of(ck.model);
    json doc;
    doc["format"] = kFormat;
    doc["version"] = kCheckpointVersion;
    doc["experiment"] = ck.experiment;
    doc["epoch"] = ck.epoch;
    doc["model"] = {{"kind", std::string(model::to_string(kind))},
                    {"dims", dims_of(kind)},
                    {"params", model::flatten(ck.model)}};
    doc["optimizer"] = {{"name", "rmsprop"},
                        {"step", ck.optimizer.step},
                        {"avg_sq", ck.optimizer.avg_sq}};
    doc["config"] = {{"learning_rate", ck.config.learning_rate},
                     {"alpha", ck.config.alpha},
                     {"epsilon", ck.config.epsilon},
                     {"max_epochs", ck.config.max_epochs},
                     {"window", ck.config.window},
                     {"batch_size", ck.config.batch_size},
                     {"seed", ck.config.seed},
                     {"grad_engine", std::string(engine_name(ck.config.engine))}};
    doc["scaler"] = {{"min", ck.scaler.min}, {"max", ck.scaler.max}};

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot write checkpoint '" + path.string() + "'");
    out << doc.dump(2) << '\n';
    if (!out)
        throw IoError("write failed for '" + path.string() + "'");
}

Checkpoint load_checkpoint(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open checkpoint '" + path.string() + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception &e) {
        throw SchemaError("checkpoint '" + path.string() + "' is not valid JSON: " + e.what());
    }
    if (!doc.is_object() || field<std::string>(doc, "format") != kFormat)
        throw SchemaError("'" + path.string() + "' is not a qlstm checkpoint");
    const int version = field<int>(doc, "version");
    if (version != kCheckpointVersion)
        throw SchemaError("unsupported checkpoint version " + std::to_string(version));

    Checkpoint ck;
    ck.experiment = field<std::string>(doc, "experiment");
    ck.epoch = field<int>(doc, "epoch");

    const json m = field<json>(doc, "model");
    model::ModelKind kind;
    try {
        kind = model::parse_model_kind(field<std::string>(m, "kind"));
    } catch (const ConfigError &e) {
        throw SchemaError(e.what());
    }
    if (field<json>(m, "dims") != dims_of(kind))
        throw ShapeError("checkpoint dims do not match the " + std::string(model::to_string(kind)) +
                         " architecture");
    const auto params = field<std::vector<double>>(m, "params");
    if (kind == model::ModelKind::qlstm)
        ck.model = model::QlstmParams::zeros();
    else
        ck.model = model::LstmParams::zeros();
    model::assign(ck.model, params);

    const json &opt = field<json>(doc, "optimizer");
    ck.optimizer.step = field<std::uint64_t>(opt, "step");
    ck.optimizer.avg_sq = field<std::vector<double>>(opt, "avg_sq");
    if (ck.optimizer.step > 0 && ck.optimizer.avg_sq.size() != params.size())
        throw ShapeError("optimizer state length does not match parameter count");

    const json &cfg = field<json>(doc, "config");
    ck.config.learning_rate = field<double>(cfg, "learning_rate");
    ck.config.alpha = field<double>(cfg, "alpha");
    ck.config.epsilon = field<double>(cfg, "epsilon");
    ck.config.max_epochs = field<int>(cfg, "max_epochs");
    ck.config.window = field<std::size_t>(cfg, "window");
    ck.config.batch_size = field<std::size_t>(cfg, "batch_size");
    ck.config.seed = field<std::uint64_t>(cfg, "seed");
    const auto engine = field<std::string>(cfg, "grad_engine");
    if (engine != "adjoint" && engine != "shift")
        throw SchemaError("unknown gradient engine '" + engine + "'");
    ck.config.engine = engine == "shift" ? vqc::GradEngine::shift : vqc::GradEngine::adjoint;

    const json &sc = field<json>(doc, "scaler");
    ck.scaler.min = field<double>(sc, "min");
    ck.scaler.max = field<double>(sc, "max");
    return ck;
}

Checkpoint load_checkpoint(const std::filesystem::path &path, model::ModelKind expected) {
    Checkpoint ck = load_checkpoint(path);
    if (model::kind_of(ck.model) != expected)
        throw ShapeError("checkpoint holds a " + std::string(model::to_string(model::kind_of(ck.model))) +
                         " model, expected " + std::string(model::to_string(expected)));
    return ck;
}

} // namespace qlstm::train
