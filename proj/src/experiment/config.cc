/*
 * Copyright 2026 The gtfl Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include "gtfl/experiment/config.h"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "gtfl/error.h"

namespace gtfl::experiment {

namespace {

using Json = nlohmann::ordered_json;

struct Field {
  const char* key;
  std::function<void(const ExperimentConfig&, Json&)> write;
  std::function<void(const Json&, ExperimentConfig&)> read;
};

template <typename T>
Field field(const char* key, T ExperimentConfig::*member) {
  return {key, [key, member](const ExperimentConfig& c, Json& j) { j[key] = c.*member; },
          [member](const Json& v, ExperimentConfig& c) { c.*member = v.get<T>(); }};
}

// nlohmann converts between numeric kinds silently; check the JSON type so
// that e.g. "trials": -1 or "n": 2.5 is reported instead of wrapped.
template <typename T>
void check_type(const char* key, const Json& v) {
  bool ok = true;
  if constexpr (std::is_same_v<T, bool>) {
    ok = v.is_boolean();
  } else if constexpr (std::is_integral_v<T> && std::is_unsigned_v<T>) {
    ok = v.is_number_unsigned();
  } else if constexpr (std::is_integral_v<T>) {
    ok = v.is_number_integer();
  } else if constexpr (std::is_floating_point_v<T>) {
    ok = v.is_number();
  } else if constexpr (std::is_same_v<T, std::string>) {
    ok = v.is_string();
  }
  if (!ok) fail(ErrorCode::kInvalidConfig, std::string("key '") + key + "' has the wrong type");
}

template <typename T>
Field checked(const char* key, T ExperimentConfig::*member) {
  Field f = field(key, member);
  f.read = [key, member](const Json& v, ExperimentConfig& c) {
    check_type<T>(key, v);
    c.*member = v.get<T>();
  };
  return f;
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    using C = ExperimentConfig;
    std::vector<Field> t = {
        checked("matrix", &C::matrix),
        checked("n", &C::n),
        checked("n_malicious", &C::n_malicious),
        checked("attack", &C::attack),
        checked("attack_source", &C::attack_source),
        checked("attack_target", &C::attack_target),
        {"prevalence",
         [](const C& c, Json& j) { j["prevalence"] = c.prevalence ? Json(*c.prevalence) : Json(nullptr); },
         [](const Json& v, C& c) {
           if (v.is_null()) {
             c.prevalence.reset();
           } else {
             check_type<double>("prevalence", v);
             c.prevalence = v.get<double>();
           }
         }},
        checked("crossover", &C::crossover),
        {"thresholds", [](const C& c, Json& j) { j["thresholds"] = c.thresholds; },
         [](const Json& v, C& c) {
           if (!v.is_array()) fail(ErrorCode::kInvalidConfig, "key 'thresholds' must be an array");
           c.thresholds.clear();
           for (const auto& x : v) {
             check_type<double>("thresholds", x);
             c.thresholds.push_back(x.get<double>());
           }
         }},
        checked("rho", &C::rho),
        checked("test_metric", &C::test_metric),
        checked("test_source", &C::test_source),
        checked("simulated_crossover", &C::simulated_crossover),
        checked("learning_rate", &C::learning_rate),
        checked("batch_size", &C::batch_size),
        checked("local_epochs", &C::local_epochs),
        checked("rounds", &C::rounds),
        checked("test_round", &C::test_round),
        {"strategies", [](const C& c, Json& j) { j["strategies"] = c.strategies; },
         [](const Json& v, C& c) {
           if (!v.is_array()) fail(ErrorCode::kInvalidConfig, "key 'strategies' must be an array");
           c.strategies.clear();
           for (const auto& x : v) {
             check_type<std::string>("strategies", x);
             c.strategies.push_back(x.get<std::string>());
           }
         }},
        checked("trials", &C::trials),
        checked("master_seed", &C::master_seed),
        checked("threads", &C::threads),
        checked("dataset", &C::dataset),
        checked("mnist_path", &C::mnist_path),
        checked("n_classes", &C::n_classes),
        checked("n_features", &C::n_features),
        checked("samples_per_client", &C::samples_per_client),
        checked("cluster_separation", &C::cluster_separation),
        checked("validation_size", &C::validation_size),
        checked("test_size", &C::test_size),
        checked("geomedian_tol", &C::geomedian_tol),
        checked("geomedian_max_iters", &C::geomedian_max_iters),
        checked("true_crossover", &C::true_crossover),
        checked("decoder_only_mode", &C::decoder_only_mode),
        checked("output", &C::output),
    };
    return t;
  }();
  return table;
}

void require(bool ok, const std::string& message) {
  if (!ok) fail(ErrorCode::kInvalidConfig, message);
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::kParseError, std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorCode::kParseError, "config must be a JSON object");
  ExperimentConfig cfg;
  for (const auto& [key, value] : j.items()) {
    const Field* match = nullptr;
    for (const auto& f : fields()) {
      if (key == f.key) match = &f;
    }
    if (!match) fail(ErrorCode::kInvalidConfig, "unknown config key '" + key + "'");
    match->read(value, cfg);
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kFileMissing, "cannot open config '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
  Json j = Json::object();
  for (const auto& f : fields()) f.write(cfg, j);
  return j.dump(2) + "\n";
}

AssignmentMatrix ExperimentConfig::load_matrix() const { return gtfl::load_matrix(matrix); }

double ExperimentConfig::effective_prevalence() const {
  return prevalence ? *prevalence : default_prevalence(n_malicious, n);
}

DecoderConfig ExperimentConfig::decoder() const {
  DecoderConfig d;
  d.prevalence = effective_prevalence();
  d.crossover = crossover;
  d.threshold = thresholds.empty() ? 0.0 : thresholds.front();
  return d;
}

flsim::Attack ExperimentConfig::parsed_attack() const {
  switch (flsim::parse_attack(attack)) {
    case flsim::AttackKind::kNone: return flsim::Attack::none();
    case flsim::AttackKind::kLabelFlip: return flsim::Attack::label_flip(attack_source, attack_target);
    case flsim::AttackKind::kLabelPermutation: return flsim::Attack::label_permutation();
  }
  return flsim::Attack::none();
}

std::vector<flsim::Strategy> ExperimentConfig::parsed_strategies() const {
  std::vector<flsim::Strategy> out;
  for (const auto& s : strategies) out.push_back(flsim::parse_strategy(s));
  return out;
}

flsim::ProtocolConfig ExperimentConfig::protocol() const {
  flsim::ProtocolConfig p;
  p.hp.learning_rate = learning_rate;
  p.hp.batch_size = batch_size;
  p.hp.local_epochs = local_epochs;
  p.hp.rounds = rounds;
  p.hp.test_round = test_round;
  p.decoder = decoder();
  p.rho = rho;
  p.report_source = attack_source;
  p.report_target = attack_target;

  std::string metric = test_metric;
  if (metric == "auto") metric = attack == "label_flip" ? "source_recall" : "top1";
  switch (flsim::parse_metric(metric)) {
    case flsim::MetricKind::kTop1: p.test_metric = flsim::Metric::top1(); break;
    case flsim::MetricKind::kBalanced: p.test_metric = flsim::Metric::balanced(); break;
    case flsim::MetricKind::kSourceRecall: p.test_metric = flsim::Metric::source_recall(attack_source); break;
    case flsim::MetricKind::kAttackAccuracy:
      p.test_metric = flsim::Metric::attack_accuracy(attack_source, attack_target);
      break;
  }

  if (test_source == "metric") {
    p.test_source = flsim::TestSource::kMetric;
  } else if (test_source == "simulated") {
    p.test_source = flsim::TestSource::kSimulated;
  } else {
    fail(ErrorCode::kInvalidConfig, "unknown test_source '" + test_source + "'");
  }
  p.simulated_crossover = simulated_crossover;
  p.geomedian_tol = geomedian_tol;
  p.geomedian_max_iters = geomedian_max_iters;
  return p;
}

void ExperimentConfig::validate() const {
  const AssignmentMatrix a = load_matrix();
  require(a.cols() == n, "n = " + std::to_string(n) + " but matrix '" + matrix + "' has " +
                             std::to_string(a.cols()) + " columns");
  require(n_malicious <= n, "n_malicious exceeds n");
  require(trials >= 1, "trials must be at least 1");
  require(!thresholds.empty(), "thresholds must not be empty");
  for (double t : thresholds) require(std::isfinite(t), "thresholds must be finite");
  require(!strategies.empty(), "strategies must not be empty");
  parsed_strategies();
  const flsim::Attack atk = parsed_attack();
  require(n_malicious == 0 || atk.kind != flsim::AttackKind::kNone,
          "n_malicious > 0 requires an attack other than 'none'");
  require(attack_source >= 0 && attack_source < n_classes && attack_target >= 0 && attack_target < n_classes,
          "attack classes must lie in [0, n_classes)");
  require(attack_source != attack_target, "attack source and target must differ");
  require(n_classes >= 2, "n_classes must be at least 2");
  decoder().validate();
  protocol().hp.validate();
  require(rho >= 0.0 && rho <= 1.0, "rho must lie in [0, 1]");
  require(simulated_crossover >= 0.0 && simulated_crossover <= 0.5, "simulated_crossover must lie in [0, 0.5]");
  require(true_crossover >= 0.0 && true_crossover <= 0.5, "true_crossover must lie in [0, 0.5]");
  require(decoder_only_mode == "auto" || decoder_only_mode == "exhaustive" || decoder_only_mode == "sampling",
          "decoder_only_mode must be auto, exhaustive or sampling");
  require(dataset == "synthetic" || dataset == "mnist", "dataset must be synthetic or mnist");
  if (dataset == "synthetic") {
    require(n_features >= 2, "synthetic data needs at least 2 features");
    require(samples_per_client >= 1 && validation_size >= 1 && test_size >= 1, "dataset sizes must be positive");
    require(cluster_separation > 0.0, "cluster_separation must be positive");
  }
  require(geomedian_tol > 0.0 && geomedian_max_iters >= 1, "geometric median settings must be positive");
}

}  // namespace gtfl::experiment
