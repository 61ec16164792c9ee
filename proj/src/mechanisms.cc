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
#include "tukey/mechanisms.h"

#include <cmath>

#include "tukey/hit_and_run.h"

namespace tukeydp {
namespace {

DirectionSet MakeDirections(const Dataset& x, const DepthConfig& depth,
                            RandomSource& rng) {
  switch (depth.kind) {
    case DirectionKind::kRandom:
      // Drawn before any data access; independence from the data is what
      // keeps random depth private.
      return RandomDirections(depth.k, x.dim(), rng);
    case DirectionKind::kExactCandidates:
      return ExactDirectionCandidates(x);
    case DirectionKind::kAxisAligned:
      return AxisAlignedDirections(x.dim());
  }
  throw ParameterError("unknown depth kind");
}

LevelSetFamily BuildFamily(const Dataset& x, const DirectionSet& dirs,
                           std::optional<double> box_radius,
                           const EngineConfig& engine, RandomSource& rng,
                           const PrivacyParams& params) {
  if (engine.engine == VolumeEngine::kExact) {
    ExactFamilyOptions opts;
    opts.memory_budget_mb = engine.memory_budget_mb;
    return BuildLevelSetFamilyExact(x, dirs, box_radius, 1, opts);
  }
  PacFamilyOptions opts;
  opts.samples_per_level = engine.samples_per_level;
  opts.steps = engine.steps;
  opts.declared_eta = params.eta;
  opts.declared_beta = params.beta;
  return BuildLevelSetFamilyPac(x, dirs, box_radius, rng, 1, opts);
}

void SummarizeWeights(const std::vector<std::pair<int, double>>& weights,
                      MechanismAudit& audit) {
  for (const auto& [level, w] : weights) {
    if (w == kNegInf) continue;
    ++audit.finite_weights;
    audit.log_weight_min = std::min(audit.log_weight_min, w);
    audit.log_weight_max = std::max(audit.log_weight_max, w);
  }
}

Eigen::VectorXd SampleLevelUniform(const Dataset& x,
                                   const LevelSetFamily& family, int level,
                                   const EngineConfig& engine,
                                   RandomSource& rng, MechanismAudit& audit) {
  const Polytope& stored = family.level(level);
  if (engine.engine == VolumeEngine::kExact) {
    Polytope target = stored;
    if (family.levels_reduced()) {
      // The family keeps facet-reduced polytopes; rebuild the full level so
      // the accept test is exact.
      target = LevelSet(x, family.directions(), level);
      if (family.box_clip()) target = ClipToBox(target, *family.box_clip());
      if (stored.bbox()) target.set_bbox(*stored.bbox());
    }
    try {
      audit.sampler = "rejection";
      return RejectionSampleUniform(target, rng);
    } catch (const ThinPolytopeError&) {
      audit.sampler = "hit_and_run_fallback";
      Eigen::VectorXd start;
      if (stored.interior_point()) {
        start = *stored.interior_point();
      } else {
        start = ChebyshevCenter(target.A(), target.b()).center;
      }
      const long steps = engine.steps > 0 ? engine.steps
                                          : DefaultHitAndRunSteps(x.dim());
      return HitAndRunChain(target, start, steps, rng);
    }
  }
  audit.sampler = "hit_and_run";
  if (!stored.interior_point()) {
    throw Error("pac level is missing its interior point");
  }
  const long steps =
      engine.steps > 0 ? engine.steps : DefaultHitAndRunSteps(x.dim());
  return HitAndRunChain(stored, *stored.interior_point(), steps, rng);
}

}  // namespace

PrivacyParams SplitPrivacyBudget(double epsilon, double delta,
                                 BudgetMode mode) {
  if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("delta must be in (0,1)");
  PrivacyParams p;
  p.epsilon = epsilon;
  p.delta = delta;
  p.mode = mode;
  if (mode == BudgetMode::kExact) {
    p.eps_p = epsilon / 4.0;
    p.eps_e = epsilon / 2.0;
    p.delta_p = delta;
    p.delta_e = delta / std::exp(2.0 * p.eps_p);
  } else {
    p.eps_p = epsilon / 6.0;
    p.eps_e = 2.0 * epsilon / 5.0;
    p.delta_p = delta / 2.0;
    p.delta_e = delta / (4.0 * std::exp(11.0 * epsilon / 20.0));
    p.eta = (std::exp(epsilon / 20.0) - 1.0) / (std::exp(epsilon / 20.0) + 1.0);
    p.beta = std::min(0.25, delta / (8.0 * (2.0 * std::exp(epsilon) + 1.0)));
    p.zeta = p.beta;
    p.tau = delta / (4.0 * std::exp(11.0 * epsilon / 20.0) *
                     (1.0 + std::exp(epsilon / 2.0)));
  }
  return p;
}

std::vector<std::pair<int, double>> LevelLogWeights(
    const LevelSetFamily& family, double eps_e, int t,
    std::optional<std::pair<double, int>> box_level_zero) {
  if (!(eps_e > 0.0)) throw ParameterError("eps_e must be positive");
  if (t < 0) throw ParameterError("threshold t must be >= 0");
  std::vector<std::pair<int, double>> weights;
  if (box_level_zero) {
    const auto& [radius, dim] = *box_level_zero;
    weights.emplace_back(0, dim * std::log(2.0 * radius));
  }
  const double log_gap = std::log1p(-std::exp(-eps_e / 2.0));
  for (int l = std::max(t, 1); l <= family.max_level(); ++l) {
    const double log_vol = family.LogVolume(l);
    const double w =
        log_vol == kNegInf ? kNegInf : log_vol + eps_e * l / 2.0 + log_gap;
    weights.emplace_back(l, w);
  }
  bool any_finite = false;
  for (const auto& [l, w] : weights) any_finite = any_finite || w != kNegInf;
  if (!any_finite) throw ParameterError("level weights have empty support");
  return weights;
}

int ApproximateDistanceToUnsafety(const LevelSetFamily& family, int t,
                                  double eps_e, double delta_e) {
  if (t < 1) {
    throw ParameterError("distance to unsafety needs a threshold t >= 1");
  }
  if (!(eps_e > 0.0) || !(delta_e > 0.0 && delta_e < 1.0)) {
    throw ParameterError("invalid (eps_e, delta_e)");
  }
  double log_threshold = std::log(delta_e) - std::log(4.0) - eps_e;
  if (family.pac_mode()) {
    const double eta = family.pac_eta();
    log_threshold += std::log1p(-eta) - std::log1p(eta);
  }
  const int max_level = family.max_level();
  for (int k = t - 1; k >= 0; --k) {
    const double log_outer = family.LogVolume(t - k - 1);
    const int g_max = max_level - t - k - 1;
    for (int g = 1; g <= g_max; ++g) {
      const double log_inner = family.LogVolume(t + k + g + 1);
      if (log_inner == kNegInf) continue;  // zero inner volume: unsatisfied
      if (log_outer == kNegInf ||
          log_outer - log_inner - g * eps_e / 2.0 <= log_threshold) {
        return k;
      }
    }
  }
  return -1;
}

bool PtrCheck(double h_tilde, double eps_p, double delta_p,
              RandomSource& rng) {
  if (!(eps_p > 0.0) || !(delta_p > 0.0 && delta_p < 1.0)) {
    throw ParameterError("invalid (eps_p, delta_p)");
  }
  if (!std::isfinite(h_tilde)) throw ParameterError("h_tilde must be finite");
  const double threshold = std::log(1.0 / (2.0 * delta_p)) / eps_p;
  return h_tilde + LaplaceSample(1.0 / eps_p, rng) >= threshold;
}

MechanismResult RemEstimate(const Dataset& x, double epsilon, double delta,
                            int t, const DepthConfig& depth,
                            const EngineConfig& engine, RandomSource& rng) {
  if (t < 1) throw ParameterError("REM threshold t must be >= 1");
  if (x.n() < 2 * t) {
    throw ParameterError("REM needs n >= 2t so the retained range is nonempty");
  }
  const BudgetMode mode = engine.engine == VolumeEngine::kPac
                              ? BudgetMode::kApprox
                              : BudgetMode::kExact;
  PrivacyParams params = SplitPrivacyBudget(epsilon, delta, mode);
  params.t = t;

  MechanismResult result;
  result.audit.seed = rng.seed();
  result.audit.volume_mode =
      engine.engine == VolumeEngine::kPac ? "pac" : "exact";
  result.audit.heuristic_privacy = engine.engine == VolumeEngine::kPac;

  const DirectionSet dirs = MakeDirections(x, depth, rng);
  const LevelSetFamily family =
      BuildFamily(x, dirs, std::nullopt, engine, rng, params);

  const int h_tilde =
      ApproximateDistanceToUnsafety(family, t, params.eps_e, params.delta_e);
  result.audit.h_tilde = h_tilde;
  if (!PtrCheck(h_tilde, params.eps_p, params.delta_p, rng)) {
    return result;  // FAIL
  }

  std::vector<std::pair<int, double>> weights;
  try {
    weights = LevelLogWeights(family, params.eps_e, t);
  } catch (const ParameterError&) {
    result.audit.empty_support = true;
    return result;  // FAIL
  }
  SummarizeWeights(weights, result.audit);
  std::vector<double> log_weights(weights.size());
  for (size_t i = 0; i < weights.size(); ++i) log_weights[i] = weights[i].second;
  const int level = weights[RacingArgmin(log_weights, rng)].first;
  result.audit.level = level;
  result.estimate = SampleLevelUniform(x, family, level, engine, rng,
                                       result.audit);
  return result;
}

MechanismResult BoxemEstimate(const Dataset& x, double epsilon,
                              double box_radius, const DepthConfig& depth,
                              const EngineConfig& engine, RandomSource& rng) {
  if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
  if (!(box_radius > 0.0)) throw ParameterError("box radius must be positive");
  MechanismResult result;
  result.audit.seed = rng.seed();
  result.audit.volume_mode =
      engine.engine == VolumeEngine::kPac ? "pac" : "exact";
  result.audit.heuristic_privacy = engine.engine == VolumeEngine::kPac;

  const int d = x.dim();
  std::vector<std::pair<int, double>> weights;
  std::optional<LevelSetFamily> family;
  if (x.n() >= 2) {
    // Directions first, data only afterwards.
    const DirectionSet dirs = MakeDirections(x, depth, rng);
    // Dummy exact-mode split; BoxEM spends the full budget in the weights.
    PrivacyParams params = SplitPrivacyBudget(epsilon, 0.5, BudgetMode::kExact);
    params.eta = 0.0;
    params.beta = 0.0;
    family = BuildFamily(x, dirs, box_radius, engine, rng, params);
    weights = LevelLogWeights(*family, epsilon, 0,
                              std::make_pair(box_radius, d));
  } else {
    weights.emplace_back(0, d * std::log(2.0 * box_radius));
  }
  SummarizeWeights(weights, result.audit);
  std::vector<double> log_weights(weights.size());
  for (size_t i = 0; i < weights.size(); ++i) log_weights[i] = weights[i].second;
  const int level = weights[RacingArgmin(log_weights, rng)].first;
  result.audit.level = level;
  if (level == 0) {
    result.audit.sampler = "box";
    Eigen::VectorXd y(d);
    for (int j = 0; j < d; ++j) {
      y[j] = box_radius * (2.0 * rng.NextUniform() - 1.0);
    }
    result.estimate = std::move(y);
  } else {
    result.estimate =
        SampleLevelUniform(x, *family, level, engine, rng, result.audit);
  }
  return result;
}

Eigen::VectorXd GaussianMechanism(const Dataset& x, double epsilon,
                                  double delta, double clip_radius,
                                  RandomSource& rng) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw ParameterError("gaussian mechanism needs epsilon in (0, 1]");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ParameterError("gaussian mechanism needs delta in (0, 1)");
  }
  if (!(clip_radius > 0.0)) throw ParameterError("clip radius must be positive");
  if (x.n() < 1) throw ParameterError("gaussian mechanism needs n >= 1");
  const int n = x.n();
  const int d = x.dim();
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd row = x.point(i).transpose();
    const double norm = row.norm();
    if (norm > clip_radius) row *= clip_radius / norm;
    mean += row;
  }
  mean /= static_cast<double>(n);
  const double sigma =
      clip_radius / n * std::sqrt(2.0 * std::log(1.25 / delta)) / epsilon;
  Eigen::VectorXd noise(d);
  for (int j = 0; j < d; ++j) noise[j] = sigma * rng.NextGaussian();
  return mean + noise;
}

double QuantileEmUnivariate(const Dataset& x, double epsilon,
                            double box_radius, RandomSource& rng) {
  if (x.dim() != 1) throw ParameterError("quantile EM is univariate");
  DepthConfig depth;
  depth.kind = DirectionKind::kExactCandidates;
  EngineConfig engine;
  const MechanismResult r =
      BoxemEstimate(x, epsilon, box_radius, depth, engine, rng);
  return (*r.estimate)[0];
}

std::pair<double, double> ApproxPrivacyAccounting(double eps_p, double eps_e,
                                                  double delta_p,
                                                  double delta_e, double eta,
                                                  double tau, double beta,
                                                  double zeta) {
  if (eps_p < 0.0 || !(eps_e > 0.0) || delta_p < 0.0 || delta_e < 0.0 ||
      tau < 0.0 || beta < 0.0 || zeta < 0.0) {
    throw ParameterError("accounting inputs must be nonnegative");
  }
  if (!(eta >= 0.0 && eta < 1.0)) throw ParameterError("eta must be in [0, 1)");
  const double miss = 2.0 * (beta + zeta);
  if (!(miss < 0.5)) throw ParameterError("2(beta+zeta) must be below 1/2");
  const double log_blowup = std::log1p(eta) - std::log1p(-eta);
  const double eps1 = 8.0 * (eps_p / eps_e) * log_blowup + 2.0 * eps_p;
  const double eps2 = eps_e + 2.0 * log_blowup;
  const double eps_total = eps1 + eps2;
  const double delta2 = (1.0 + eta) / (1.0 - eta) * delta_e +
                        (1.0 + std::exp(eps2)) * tau;
  const double delta_conditioned = std::max(delta_p, std::exp(eps1) * delta2);
  const double delta_total =
      delta_conditioned + miss * (std::exp(eps_total) / (1.0 - miss) + 1.0);
  return {eps_total, delta_total};
}

double SensitivityBoundApprox(double eps_e, double eta) {
  if (!(eps_e > 0.0)) throw ParameterError("eps_e must be positive");
  if (!(eta >= 0.0 && eta < 1.0)) throw ParameterError("eta must be in [0, 1)");
  const double log_blowup = std::log1p(eta) - std::log1p(-eta);
  return 2.0 * (4.0 / eps_e * log_blowup + 1.0);
}

}  // namespace tukeydp
