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
#include <cstdlib>

#include "commands.hpp"

namespace qlstm::cli {

const std::vector<std::string> &builtin_experiments() {
    static const std::vector<std::string> names{"sine", "pendulum", "bessel", "popinv"};
    return names;
}

data::TimeSeries load_experiment(const std::string &name) {
    if (name == "sine")
        return data::gen_sine();
    if (name == "pendulum")
        return data::gen_pendulum();
    if (name == "bessel")
        return data::gen_bessel();
    if (name == "popinv")
        return data::gen_population_inversion();
    if (name.rfind("csv:", 0) == 0) {
        if (name.size() == 4)
            throw UsageError("csv experiment needs a path, as in csv:<path>");
        return data::load_csv(name.substr(4));
    }
    throw UsageError("unknown experiment '" + name +
                     "' (expected sine, pendulum, bessel, popinv or csv:<path>)");
}

std::filesystem::path resolve_output(const std::filesystem::path &path) {
    if (path.is_absolute())
        return path;
    if (const char *root = std::getenv("QLSTM_OUT_ROOT"); root != nullptr && *root != '\0')
        return std::filesystem::path(root) / path;
    return path;
}

int exit_code_for(const std::exception &e) noexcept {
    if (dynamic_cast<const UsageError *>(&e) || dynamic_cast<const ConfigError *>(&e))
        return kExitUsage;
    if (dynamic_cast<const NumericError *>(&e))
        return kExitNumeric;
    // I/O failures and unreadable or mismatched input files.
    return kExitIo;
}

} // namespace qlstm::cli
