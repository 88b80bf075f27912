// Copyright 2026 The jguard Authors.
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

#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include "jguard/fusion.hpp"
#include "jguard/logistic.hpp"

namespace jguard {

using AnyModel = std::variant<FusionModel, LrModel>;

inline constexpr std::string_view kModelFormat = "jguard-model-v1";

/// Model document:
///   {"format":"jguard-model-v1", "kind":"fusion"|"lr", "dims":[...],
///    "activation":"relu", "weights":[[...],...], "biases":[...],
///    "config_digest":"..."}
///
/// fusion: dims = [d, n, h1, l, h2, 2]; weights holds one row-major flat
///         array per layer; biases one array per layer. Also carries
///         "dropout_rate" and "seed".
/// lr:     dims = [n]; weights = [[w...]]; biases = [b].
///
/// Doubles are written in shortest round-trip form, so save/load is exact.
/// "config_digest" is optional and identifies the training run.
struct ModelFile {
  AnyModel model;
  std::string config_digest;
};

std::string serialize_model(const AnyModel& model, std::string_view config_digest = {});
ModelFile parse_model_file(const std::string& document);
AnyModel parse_model(const std::string& document);

void save_model(const AnyModel& model, const std::filesystem::path& path,
                std::string_view config_digest = {});
ModelFile load_model_file(const std::filesystem::path& path);
AnyModel load_model(const std::filesystem::path& path);

}  // namespace jguard
