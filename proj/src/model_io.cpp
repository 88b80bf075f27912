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

#include "jguard/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "jguard/error.hpp"

namespace jguard {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json flat_row_major(const Mat<double>& m) {
  ordered_json arr = ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) arr.push_back(m(r, c));
  }
  return arr;
}

ordered_json to_array(const Vec<double>& v) {
  ordered_json arr = ordered_json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) arr.push_back(v[k]);
  return arr;
}

std::vector<double> numbers(const nlohmann::json& j, std::size_t expected, const char* what) {
  if (!j.is_array() || j.size() != expected) {
    throw DataError(std::string("model field '") + what + "' has the wrong length");
  }
  std::vector<double> out;
  out.reserve(expected);
  for (const auto& x : j) {
    if (!x.is_number()) throw DataError(std::string("model field '") + what + "' is not numeric");
    out.push_back(x.get<double>());
  }
  return out;
}

ordered_json fusion_document(const FusionModel& m) {
  ordered_json doc;
  doc["format"] = kModelFormat;
  doc["kind"] = "fusion";
  doc["dims"] = {m.embedding_dim,
                 m.feature_dim,
                 m.layers[FusionModel::kGuidanceHidden].out_dim(),
                 m.layers[FusionModel::kGuidanceOut].out_dim(),
                 m.layers[FusionModel::kClassifierHidden].out_dim(),
                 m.layers[FusionModel::kLogits].out_dim()};
  doc["activation"] = "relu";
  doc["dropout_rate"] = m.dropout_rate;
  doc["seed"] = m.seed;
  ordered_json weights = ordered_json::array();
  ordered_json biases = ordered_json::array();
  for (const auto& layer : m.layers) {
    weights.push_back(flat_row_major(layer.weights));
    biases.push_back(to_array(layer.bias));
  }
  doc["weights"] = std::move(weights);
  doc["biases"] = std::move(biases);
  return doc;
}

ordered_json lr_document(const LrModel& m) {
  ordered_json doc;
  doc["format"] = kModelFormat;
  doc["kind"] = "lr";
  doc["dims"] = {m.dim()};
  doc["activation"] = "sigmoid";
  doc["weights"] = ordered_json::array({to_array(m.weights)});
  doc["biases"] = ordered_json::array({m.bias});
  return doc;
}

FusionModel parse_fusion(const nlohmann::json& doc) {
  const auto& dims = doc.at("dims");
  if (!dims.is_array() || dims.size() != 6) throw DataError("fusion model needs six dims");
  std::vector<int> d;
  for (const auto& x : dims) {
    if (!x.is_number_integer() || x.get<long long>() < 1 || x.get<long long>() > (1 << 20)) {
      throw DataError("fusion dims must be positive integers");
    }
    d.push_back(x.get<int>());
  }
  if (d[5] != 2) throw DataError("fusion output width must be 2");
  if (doc.value("activation", "") != "relu") throw DataError("unsupported activation");

  FusionModel m;
  m.embedding_dim = d[0];
  m.feature_dim = d[1];
  m.dropout_rate = doc.value("dropout_rate", 0.0);
  m.seed = doc.value("seed", std::uint64_t{0});
  const int widths[5] = {d[0] + d[1], d[2], d[3], d[4], d[5]};
  const auto& weights = doc.at("weights");
  const auto& biases = doc.at("biases");
  if (!weights.is_array() || weights.size() != 4 || !biases.is_array() || biases.size() != 4) {
    throw DataError("fusion model needs four weight and bias arrays");
  }
  for (std::size_t k = 0; k < 4; ++k) {
    const int in = widths[k], out = widths[k + 1];
    const auto w = numbers(weights[k], static_cast<std::size_t>(in) * out, "weights");
    const auto b = numbers(biases[k], static_cast<std::size_t>(out), "biases");
    auto& layer = m.layers[k];
    layer.weights.resize(out, in);
    for (int r = 0; r < out; ++r) {
      for (int c = 0; c < in; ++c) layer.weights(r, c) = w[static_cast<std::size_t>(r) * in + c];
    }
    layer.bias = Eigen::Map<const Vec<double>>(b.data(), out);
  }
  if (!m.all_finite()) throw NumericError("fusion model has non-finite weights");
  return m;
}

LrModel parse_lr(const nlohmann::json& doc) {
  const auto& dims = doc.at("dims");
  if (!dims.is_array() || dims.size() != 1 || !dims[0].is_number_integer() ||
      dims[0].get<long long>() < 1) {
    throw DataError("lr model needs one positive dim");
  }
  const auto n = dims[0].get<std::size_t>();
  const auto& weights = doc.at("weights");
  if (!weights.is_array() || weights.size() != 1) throw DataError("lr model needs one weight array");
  const auto w = numbers(weights[0], n, "weights");
  const auto b = numbers(doc.at("biases"), 1, "biases");
  LrModel m;
  m.weights = Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(n));
  m.bias = b[0];
  if (!m.weights.allFinite() || !std::isfinite(m.bias)) throw NumericError("lr model has non-finite weights");
  return m;
}

}  // namespace

std::string serialize_model(const AnyModel& model, std::string_view config_digest) {
  ordered_json doc = std::visit(
      [](const auto& m) -> ordered_json {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, FusionModel>) {
          return fusion_document(m);
        } else {
          return lr_document(m);
        }
      },
      model);
  if (!config_digest.empty()) doc["config_digest"] = std::string(config_digest);
  return doc.dump() + "\n";
}

ModelFile parse_model_file(const std::string& document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error&) {
    throw DataError("model file is not valid JSON");
  }
  if (!doc.is_object()) throw DataError("model file is not a JSON object");
  const auto format = doc.find("format");
  if (format == doc.end() || !format->is_string() || format->get<std::string>() != kModelFormat) {
    throw VersionError("unsupported model format (expected " + std::string(kModelFormat) + ")");
  }
  try {
    const std::string kind = doc.at("kind").get<std::string>();
    const std::string digest = doc.value("config_digest", "");
    if (kind == "fusion") return {parse_fusion(doc), digest};
    if (kind == "lr") return {parse_lr(doc), digest};
    throw DataError("unknown model kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("corrupt model file: ") + e.what());
  }
}

AnyModel parse_model(const std::string& document) { return parse_model_file(document).model; }

void save_model(const AnyModel& model, const std::filesystem::path& path,
                std::string_view config_digest) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << serialize_model(model, config_digest);
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

ModelFile load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model_file(buf.str());
}

AnyModel load_model(const std::filesystem::path& path) { return load_model_file(path).model; }

}  // namespace jguard
