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
#ifndef TUKEY_RANDOM_H_
#define TUKEY_RANDOM_H_

#include <cstdint>
#include <optional>
#include <random>
#include <span>

#include <Eigen/Dense>

#include "tukey/common.h"

namespace tukeydp {

// Source of randomness for all mechanisms and experiments.
//
// Secure sources are keyed from platform entropy (std::random_device) and are
// the default for privacy-critical draws. Seeded sources are reproducible:
// the same seed always yields the same stream. Sources are not shared across
// threads; derive one per task with Fork().
//
// Floating-point side channels of DP noise are out of scope; see README.
class RandomSource {
 public:
  static RandomSource Secure();
  static RandomSource Seeded(uint64_t seed);

  // Uniform on [0, 1) with 53 random bits.
  double NextUniform();
  // Uniform on the open interval (0, 1); endpoint hits are resampled.
  double NextUniformOpen();
  // Standard normal draw (Marsaglia polar method).
  double NextGaussian();
  uint64_t NextU64();

  // Derives an independent source for a parallel task. Seeded sources fork
  // deterministically from (seed, stream); secure sources draw fresh entropy.
  RandomSource Fork(uint64_t stream) const;

  bool seeded() const { return seed_.has_value(); }
  std::optional<uint64_t> seed() const { return seed_; }

 private:
  explicit RandomSource(std::optional<uint64_t> seed);

  std::optional<uint64_t> seed_;
  std::mt19937_64 engine_;
  bool have_spare_gaussian_ = false;
  double spare_gaussian_ = 0.0;
};

// One draw from the Laplace density (1/2b) exp(-|z|/b) with b = scale.
double LaplaceSample(double scale, RandomSource& rng);

// Samples an index with probability proportional to exp(log_weights[i]),
// computed entirely in log space: returns argmin of
//   Z_i = log(log(1/U_i)) - log_weights[i],  U_i iid Uniform(0,1).
// Entries equal to -infinity have zero probability and are never returned.
// Throws ParameterError if no entry is finite.
int RacingArgmin(std::span<const double> log_weights, RandomSource& rng);

// Uniform direction on the unit sphere in `dim` dimensions.
Eigen::VectorXd UnitSphereDirection(int dim, RandomSource& rng);

// Draws from N(mean, I).
Eigen::VectorXd GaussianVector(const Eigen::VectorXd& mean, RandomSource& rng);
// Draws from N(mean, diag(variances)).
Eigen::VectorXd GaussianVector(const Eigen::VectorXd& mean,
                               const Eigen::VectorXd& variances,
                               RandomSource& rng);
// Draws from N(mean, covariance); covariance must be symmetric PSD.
Eigen::VectorXd GaussianVector(const Eigen::VectorXd& mean,
                               const Eigen::MatrixXd& covariance,
                               RandomSource& rng);

}  // namespace tukeydp

#endif  // TUKEY_RANDOM_H_
