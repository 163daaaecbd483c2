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
/**
 * @file
 * Versioned JSON checkpoint holding a model, its optimizer state and the
 * data scaler needed to un-scale predictions.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "qlstm/data.hpp"
#include "qlstm/models.hpp"
#include "qlstm/train.hpp"

namespace qlstm::train {

inline constexpr int kCheckpointVersion = 1;

struct Checkpoint {
    model::Model model = model::QlstmParams::zeros();
    RmspropState optimizer;
    TrainConfig config;
    data::Scaler scaler;
    int epoch = 0;
    std::string experiment;
};

void save_checkpoint(const Checkpoint &checkpoint, const std::filesystem::path &path);

/// Throws IoError, SchemaError (malformed/unknown version) or ShapeError (bad dims).
[[nodiscard]] Checkpoint load_checkpoint(const std::filesystem::path &path);

/// As above, plus ShapeError when the stored model is not of kind `expected`.
[[nodiscard]] Checkpoint load_checkpoint(const std::filesystem::path &path,
                                         model::ModelKind expected);

} // namespace qlstm::train
