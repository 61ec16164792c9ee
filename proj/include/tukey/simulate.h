//
// Copyright 2026 The tukey-dp Authors
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
//
#ifndef TUKEY_SIMULATE_H_
#define TUKEY_SIMULATE_H_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tukey/mechanisms.h"

namespace tukeydp {

enum class MechanismId {
  kRem,
  kBoxem,
  kGauss,
  kQuantileEm,
  kEmpirical,  // non-private baseline: the sample mean
  kMedian,     // non-private baseline: the coordinate-wise median
};

std::string MechanismName(MechanismId id);

struct CorruptionConfig {
  double alpha = 0.0;  // replaced fraction, in [0, 1)
  double scale = 0.0;  // replacements drawn from N(scale * 1, 0.1 I)
};

struct ExperimentConfig {
  int n = 100;
  int d = 2;
  double epsilon = 1.0;
  double delta = 1e-6;
  double box_radius = 10.0;
  int trials = 10;
  MechanismId mechanism = MechanismId::kBoxem;
  DepthConfig depth;
  EngineConfig engine;
  int t = -1;  // REM threshold; -1 means floor(n/4)
  CorruptionConfig corruption;
  double mean_radius = 3.0;
  // Per-coordinate variances for nonspherical data; empty means identity.
  std::optional<Eigen::VectorXd> diag_covariance;
  std::optional<uint64_t> seed;  // absent: secure randomness per trial
  int threads = 0;               // 0: hardware concurrency
};

struct TrialRow {
  int trial = 0;
  bool fail = false;
  std::string error;      // nonempty when the trial raised
  double sampling_l2 = 0.0;    // |mean(clean) - mu|
  double privacy_l2 = 0.0;     // |estimate - mean(clean)|
  double total_l2 = 0.0;       // |estimate - mu|
  double sampling_maha = 0.0;
  double privacy_maha = 0.0;
  double wall_seconds = 0.0;   // in-memory only; never serialized
};

struct Aggregate {
  double mean = 0.0;
  double ci_halfwidth = 0.0;  // 1.96 sigma-hat / sqrt(trials)
  double rms = 0.0;
};

struct TrialReport {
  std::vector<TrialRow> rows;
  int trials = 0;
  int fails = 0;
  int errors = 0;
  bool dropped = false;   // REM failed in at least one trial
  bool omitted = false;   // mean privacy error above the reporting cap (3)
  Aggregate sampling_l2, privacy_l2, total_l2;

  // Header row, one row per trial, trailing aggregate rows tagged AGG.
  // Wall-clock columns are deliberately absent: the CSV is byte-reproducible
  // for a fixed seed.
  std::string ToCsv() const;
};

// mu uniform on the sphere of radius mean_radius, points i.i.d. N(mu, I)
// (or N(mu, diag) when variances are given).
std::pair<Dataset, Eigen::VectorXd> GenGaussianData(
    int n, int d, double mean_radius, RandomSource& rng,
    const std::optional<Eigen::VectorXd>& diag_covariance = std::nullopt);

// Strong-contamination model: replaces floor(alpha n) uniformly chosen rows
// with draws from N(scale * 1, 0.1 I); all other rows are untouched.
Dataset Corrupt(const Dataset& x, double alpha, double scale,
                RandomSource& rng);

// |Sigma^{-1/2} (estimate - mu)|_2. Throws for singular Sigma.
double MahalanobisError(const Eigen::VectorXd& estimate,
                        const Eigen::VectorXd& mu, const Eigen::MatrixXd& sigma);

// Runs config.trials independent trials (in parallel, with per-trial derived
// seeds) and aggregates mean and 1.96 sigma-hat / sqrt(trials) halfwidths.
// Mechanisms see the corrupted data; error references are the clean
// empirical mean and the true mean, which keeps corruption runs comparable.
TrialReport RunExperiment(const ExperimentConfig& config);

// Same, with an injected mechanism (for stubs and custom baselines).
using MechanismFn =
    std::function<MechanismResult(const Dataset& x, RandomSource& rng)>;
TrialReport RunExperiment(const ExperimentConfig& config, MechanismFn mech);

}  // namespace tukeydp

#endif  // TUKEY_SIMULATE_H_
