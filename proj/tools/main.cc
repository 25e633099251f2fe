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


#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gtfl/decoder.h"
#include "gtfl/error.h"
#include "gtfl/experiment/config.h"
#include "gtfl/experiment/decoder_only.h"
#include "gtfl/experiment/experiment.h"
#include "gtfl/experiment/report.h"
#include "gtfl/gf2.h"
#include "gtfl/trellis.h"

namespace {

using namespace gtfl;

struct CommonOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string preset;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config, "JSON experiment config");
  cmd->add_option("--seed", o.seed, "master seed (overrides the config)");
  cmd->add_option("--out", o.out, "output path (default: stdout)");
  cmd->add_option("--preset", o.preset, "matrix preset name or matrix file");
}

experiment::ExperimentConfig resolve_config(const CommonOptions& o) {
  experiment::ExperimentConfig cfg = o.config.empty() ? experiment::ExperimentConfig{}
                                                      : experiment::load_config(o.config);
  if (o.seed) cfg.master_seed = *o.seed;
  if (!o.out.empty()) cfg.output = o.out;
  if (!o.preset.empty()) cfg.matrix = o.preset;
  return cfg;
}

AssignmentMatrix resolve_matrix(const CommonOptions& o) {
  if (!o.preset.empty()) return load_matrix(o.preset);
  return resolve_config(o).load_matrix();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kFileMissing, "cannot write '" + path + "'");
  out << text;
}

std::string format_llrs(const LlrVector& llr) {
  std::string s;
  for (double v : llr) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    s += (s.empty() ? "" : " ") + std::string(buf);
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Group-testing defense for federated learning"};
  app.require_subcommand(1);

  CommonOptions decode_opts, trellis_opts, privacy_opts, simulate_opts, dec_only_opts, comm_opts;

  auto* decode_cmd = app.add_subcommand("decode", "decode one test vector");
  add_common(decode_cmd, decode_opts);
  std::string tests;
  std::optional<double> prevalence, crossover, threshold;
  decode_cmd->add_option("--tests", tests, "test outcomes, group 1 first, e.g. 0110")->required();
  decode_cmd->add_option("--prevalence", prevalence, "prior probability of a malicious client");
  decode_cmd->add_option("--crossover", crossover, "test flip probability");
  decode_cmd->add_option("--threshold", threshold, "decision threshold on the LLR");

  auto* trellis_cmd = app.add_subcommand("trellis", "print the syndrome trellis");
  add_common(trellis_cmd, trellis_opts);

  auto* privacy_cmd = app.add_subcommand("privacy", "privacy level and group sizes");
  add_common(privacy_cmd, privacy_opts);

  auto* simulate_cmd = app.add_subcommand("simulate", "run a federated-learning experiment, CSV out");
  add_common(simulate_cmd, simulate_opts);
  bool print_config = false;
  simulate_cmd->add_flag("--print-config", print_config, "print the resolved config and exit");

  auto* dec_only_cmd = app.add_subcommand("decoder-only", "misdetection/false-alarm rates without training");
  add_common(dec_only_cmd, dec_only_opts);

  auto* comm_cmd = app.add_subcommand("comm-cost", "secure-aggregation cost under a linear model");
  add_common(comm_cmd, comm_opts);
  std::size_t rounds = 10, test_round = 1;
  std::optional<std::size_t> n_opt, m_opt, group_size_opt;
  comm_cmd->add_option("--n", n_opt, "number of clients");
  comm_cmd->add_option("--m", m_opt, "number of groups");
  comm_cmd->add_option("--group-size", group_size_opt, "largest group size");
  comm_cmd->add_option("--rounds", rounds, "training rounds");
  comm_cmd->add_option("--test-round", test_round, "round of the group test");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*decode_cmd) {
      const AssignmentMatrix a = resolve_matrix(decode_opts);
      DecoderConfig cfg = decode_opts.config.empty() ? DecoderConfig{} : resolve_config(decode_opts).decoder();
      if (prevalence) cfg.prevalence = *prevalence;
      if (crossover) cfg.crossover = *crossover;
      if (threshold) cfg.threshold = *threshold;
      cfg.validate();
      const SyndromeVector t = SyndromeVector::parse(tests);
      const DecodeOutcome out = decode(build_trellis(a), t, cfg);
      std::string text;
      if (out.inconsistent) {
        text = "inconsistent\nexcluded\n";
      } else {
        text = "llr " + format_llrs(out.llr) + "\nd_hat " + out.decision.d_hat.to_string() + "\n";
        if (out.decision.fallback_no_defense) text += "fallback_no_defense\n";
        text += "excluded " + out.excluded().to_string() + "\n";
      }
      emit(decode_opts.out, text);
    } else if (*trellis_cmd) {
      emit(trellis_opts.out, build_trellis(resolve_matrix(trellis_opts)).dump());
    } else if (*privacy_cmd) {
      emit(privacy_opts.out,
           experiment::format_privacy_report(experiment::privacy_report(resolve_matrix(privacy_opts))));
    } else if (*simulate_cmd) {
      const auto cfg = resolve_config(simulate_opts);
      if (print_config) {
        std::cout << experiment::serialize_config(cfg);
        return 0;
      }
      emit(cfg.output, experiment::to_csv(experiment::run_experiment(cfg)));
    } else if (*dec_only_cmd) {
      const auto cfg = resolve_config(dec_only_opts);
      cfg.validate();
      const auto result = experiment::run_decoder_only(
          cfg.load_matrix(), cfg.n_malicious, cfg.true_crossover, cfg.decoder(), cfg.thresholds, cfg.trials,
          cfg.master_seed, experiment::parse_decoder_only_mode(cfg.decoder_only_mode));
      std::ostringstream out;
      experiment::write_decoder_only_csv(out, result);
      emit(cfg.output, out.str());
    } else if (*comm_cmd) {
      std::size_t n = 0, m = 0, g = 0;
      if (!comm_opts.preset.empty() || !comm_opts.config.empty()) {
        const AssignmentMatrix a = resolve_matrix(comm_opts);
        n = a.cols();
        m = a.rows();
        for (std::size_t i = 0; i < m; ++i) g = std::max(g, a.row_weight(i));
      }
      if (n_opt) n = *n_opt;
      if (m_opt) m = *m_opt;
      if (group_size_opt) g = *group_size_opt;
      const auto cost = experiment::comm_cost(n, m, g, rounds, test_round);
      char buf[256];
      std::snprintf(buf, sizeof buf, "before %g\ntesting_round %g\nafter %g\ntotal %g\ntesting_ratio %.6g\n",
                    cost.before, cost.testing_round, cost.after, cost.total(), cost.testing_ratio());
      emit(comm_opts.out, buf);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
