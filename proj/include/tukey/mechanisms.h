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
#ifndef TUKEY_MECHANISMS_H_
#define TUKEY_MECHANISMS_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tukey/dataset.h"
#include "tukey/depth.h"
#include "tukey/geometry.h"
#include "tukey/random.h"

namespace tukeydp {

enum class VolumeEngine { kExact, kPac };
enum class BudgetMode { kExact, kApprox };

// Privacy budget split between the PTR check (eps_p, delta_p) and the
// restricted exponential mechanism (eps_e, delta_e). The approx mode also
// fixes the volume-oracle and sampler accuracy targets (eta, beta, tau,
// zeta) that the accounting calculator consumes.
struct PrivacyParams {
  double epsilon = 0.0;
  double delta = 0.0;
  BudgetMode mode = BudgetMode::kExact;
  double eps_p = 0.0;
  double eps_e = 0.0;
  double delta_p = 0.0;
  double delta_e = 0.0;
  int t = 0;  // REM restriction threshold, set at use time
  // approx-mode extras
  double eta = 0.0;
  double beta = 0.0;
  double tau = 0.0;
  double zeta = 0.0;
};

// exact:  eps_p = eps/4,  eps_e = eps/2,   delta_p = delta,
//         delta_e = delta e^{-2 eps_p}  (recombines to exactly (eps, delta))
// approx: eps_p = eps/6,  eps_e = 2 eps/5, delta_p = delta/2,
//         delta_e = delta / (4 e^{11 eps/20}),
//         eta = (e^{eps/20}-1)/(e^{eps/20}+1),
//         beta = zeta = min{1/4, delta/(8(2e^eps+1))},
//         tau = delta / (4 e^{11 eps/20} (1+e^{eps/2}))
PrivacyParams SplitPrivacyBudget(double epsilon, double delta, BudgetMode mode);

struct MechanismAudit {
  std::optional<int> h_tilde;       // REM only
  std::optional<int> level;         // chosen level L
  double log_weight_min = kInf;     // over finite weights
  double log_weight_max = kNegInf;
  int finite_weights = 0;
  std::string volume_mode = "exact";
  // pac sampling/volumes are a configuration assertion, not a proof.
  bool heuristic_privacy = false;
  std::string sampler;
  bool empty_support = false;
  std::optional<uint64_t> seed;
};

// Either an estimate or the distinguished FAIL outcome, plus audit metadata.
struct MechanismResult {
  std::optional<Eigen::VectorXd> estimate;
  MechanismAudit audit;

  bool failed() const { return !estimate.has_value(); }
};

struct DepthConfig {
  DirectionKind kind = DirectionKind::kRandom;
  int k = 30;  // direction count for random depth
};

struct EngineConfig {
  VolumeEngine engine = VolumeEngine::kExact;
  long samples_per_level = 2000;
  long steps = 0;  // 0: max(1000, 10 d^3)
  long memory_budget_mb = 2048;
};

// Log weight per level for racing:
//   log V_{>=l} + eps_e l / 2 + log(1 - e^{-eps_e / 2}),
// restricted to l in {t, ..., max level}. With box_level_zero = (R, d) a
// level-0 entry with weight d log(2R) is prepended (the t = 0 box variant).
// Normalization is deferred to racing. Throws ParameterError when no weight
// is finite.
std::vector<std::pair<int, double>> LevelLogWeights(
    const LevelSetFamily& family, double eps_e, int t,
    std::optional<std::pair<double, int>> box_level_zero = std::nullopt);

// Approximate distance to unsafety: the largest k in [0, t) such that some
// integer g > 0 with t + k + g + 1 within the family range satisfies
//   V_{>= t-k-1} / V_{>= t+k+g+1} * e^{-g eps_e / 2} <= delta_e / (4 e^{eps_e}),
// or -1 when no k qualifies. Indices at or below the family range use the
// unrestricted reference volume. A zero inner volume never satisfies the
// condition. With pac volumes the threshold is tightened by a factor
// (1-eta)/(1+eta), which keeps the pac distance a lower bound on the exact
// one when the oracle guarantees hold.
int ApproximateDistanceToUnsafety(const LevelSetFamily& family, int t,
                                  double eps_e, double delta_e);

// PTR: passes iff h_tilde + Lap(1/eps_p) >= log(1/(2 delta_p)) / eps_p.
bool PtrCheck(double h_tilde, double eps_p, double delta_p, RandomSource& rng);

// Restricted exponential mechanism over Tukey depth with
// propose-test-release. Returns FAIL when the noisy distance check fails or
// the restricted support is empty. Requires t >= 1 and n >= 2t.
MechanismResult RemEstimate(const Dataset& x, double epsilon, double delta,
                            int t, const DepthConfig& depth,
                            const EngineConfig& engine, RandomSource& rng);

// Exponential mechanism over the box [-R, R]^d (pure epsilon-DP, no split,
// no PTR). Always returns an estimate; level 0 is the box itself.
MechanismResult BoxemEstimate(const Dataset& x, double epsilon,
                              double box_radius, const DepthConfig& depth,
                              const EngineConfig& engine, RandomSource& rng);

// Clip-and-noise baseline: projects points onto the l2 ball of radius R,
// averages, and adds N(0, sigma^2 I) with
//   sigma = (R/n) sqrt(2 ln(1.25/delta)) / eps.
// This calibration matches the reference experimental curves (empirical-mean
// crossover near n = 1300 at R = 5, eps = 1, delta = 1e-6).
Eigen::VectorXd GaussianMechanism(const Dataset& x, double epsilon,
                                  double delta, double clip_radius,
                                  RandomSource& rng);

// One-dimensional specialization of BoxemEstimate (the exponential mechanism
// over quantiles): level sets are the intervals [x_(l), x_(n-l+1)] clipped
// to [-R, R]. Same code path as BoxemEstimate.
double QuantileEmUnivariate(const Dataset& x, double epsilon,
                            double box_radius, RandomSource& rng);

// Total (eps, delta) of the approximate-volume mechanism:
//   eps = (8 (eps_p/eps_e) L + 2 eps_p) + (eps_e + 2 L),  L = log((1+eta)/(1-eta))
//   delta = max{delta_p, e^{eps_1} ((1+eta)/(1-eta) delta_e + (1+e^{eps_2}) tau)}
//           + 2(beta+zeta) (e^{eps} / (1 - 2(beta+zeta)) + 1)
// At eta = tau = beta = zeta = 0 this reduces to
// (2 eps_p + eps_e, max{delta_p, e^{2 eps_p} delta_e}).
std::pair<double, double> ApproxPrivacyAccounting(double eps_p, double eps_e,
                                                  double delta_p,
                                                  double delta_e, double eta,
                                                  double tau, double beta,
                                                  double zeta);

// Sensitivity bound of the approximate distance under an (eta, .)-accurate
// volume oracle: 2 (4/eps_e log((1+eta)/(1-eta)) + 1); equals 2 at eta = 0.
double SensitivityBoundApprox(double eps_e, double eta);

}  // namespace tukeydp

#endif  // TUKEY_MECHANISMS_H_
