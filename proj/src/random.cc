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
#include "tukey/random.h"

#include <cmath>
#include <limits>

namespace tukeydp {
namespace {

uint64_t SplitMix64(uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::mt19937_64 EngineFromSeed(uint64_t seed) {
  // Expand the single word so that small seeds still fill the full state.
  uint64_t state = seed;
  std::seed_seq seq{
      static_cast<uint32_t>(SplitMix64(state)),
      static_cast<uint32_t>(SplitMix64(state) >> 32),
      static_cast<uint32_t>(SplitMix64(state)),
      static_cast<uint32_t>(SplitMix64(state) >> 32),
      static_cast<uint32_t>(SplitMix64(state)),
      static_cast<uint32_t>(SplitMix64(state) >> 32),
  };
  return std::mt19937_64(seq);
}

uint64_t EntropySeed() {
  std::random_device rd;
  return (static_cast<uint64_t>(rd()) << 32) ^ rd();
}

}  // namespace

RandomSource::RandomSource(std::optional<uint64_t> seed) : seed_(seed) {
  engine_ = EngineFromSeed(seed ? *seed : EntropySeed());
}

RandomSource RandomSource::Secure() { return RandomSource(std::nullopt); }

RandomSource RandomSource::Seeded(uint64_t seed) { return RandomSource(seed); }

double RandomSource::NextUniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomSource::NextUniformOpen() {
  double u = NextUniform();
  while (u <= 0.0) u = NextUniform();
  return u;  // [2^-53, 1 - 2^-53]; both endpoints of (0,1) are excluded.
}

double RandomSource::NextGaussian() {
  if (have_spare_gaussian_) {
    have_spare_gaussian_ = false;
    return spare_gaussian_;
  }
  double u, v, s;
  do {
    u = 2.0 * NextUniform() - 1.0;
    v = 2.0 * NextUniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_gaussian_ = v * factor;
  have_spare_gaussian_ = true;
  return u * factor;
}

uint64_t RandomSource::NextU64() { return engine_(); }

RandomSource RandomSource::Fork(uint64_t stream) const {
  if (!seed_) return Secure();
  uint64_t state = *seed_ ^ (0xd1b54a32d192ed03ULL * (stream + 1));
  return Seeded(SplitMix64(state));
}

double LaplaceSample(double scale, RandomSource& rng) {
  if (!(scale > 0.0)) throw ParameterError("laplace scale must be positive");
  const double u = rng.NextUniformOpen() - 0.5;  // (-1/2, 1/2)
  const double sign = u < 0.0 ? -1.0 : 1.0;
  return -scale * sign * std::log1p(-2.0 * std::fabs(u));
}

int RacingArgmin(std::span<const double> log_weights, RandomSource& rng) {
  int best = -1;
  double best_z = kInf;
  for (size_t i = 0; i < log_weights.size(); ++i) {
    const double w = log_weights[i];
    if (w == kNegInf) continue;
    if (std::isnan(w)) throw ParameterError("racing weight is NaN");
    const double z = std::log(-std::log(rng.NextUniformOpen())) - w;
    if (z < best_z) {
      best_z = z;
      best = static_cast<int>(i);
    }
  }
  if (best < 0) throw ParameterError("racing argmin has empty support");
  return best;
}

Eigen::VectorXd UnitSphereDirection(int dim, RandomSource& rng) {
  if (dim < 1) throw ParameterError("sphere dimension must be >= 1");
  Eigen::VectorXd v(dim);
  double norm = 0.0;
  do {
    for (int i = 0; i < dim; ++i) v[i] = rng.NextGaussian();
    norm = v.norm();
  } while (norm < 1e-12);
  return v / norm;
}

Eigen::VectorXd GaussianVector(const Eigen::VectorXd& mean,
                               RandomSource& rng) {
  Eigen::VectorXd z(mean.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = rng.NextGaussian();
  return mean + z;
}

Eigen::VectorXd GaussianVector(const Eigen::VectorXd& mean,
                               const Eigen::VectorXd& variances,
                               RandomSource& rng) {
  if (variances.size() != mean.size()) {
    throw ParameterError("diagonal covariance dimension mismatch");
  }
  if ((variances.array() < 0.0).any()) {
    throw ParameterError("diagonal covariance has negative entries");
  }
  Eigen::VectorXd z(mean.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    z[i] = rng.NextGaussian() * std::sqrt(variances[i]);
  }
  return mean + z;
}

Eigen::VectorXd GaussianVector(const Eigen::VectorXd& mean,
                               const Eigen::MatrixXd& covariance,
                               RandomSource& rng) {
  if (covariance.rows() != mean.size() || covariance.cols() != mean.size()) {
    throw ParameterError("covariance dimension mismatch");
  }
  const double scale = std::max(1.0, covariance.cwiseAbs().maxCoeff());
  if ((covariance - covariance.transpose()).cwiseAbs().maxCoeff() >
      1e-9 * scale) {
    throw ParameterError("covariance is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(covariance);
  if (es.info() != Eigen::Success) {
    throw ParameterError("covariance eigendecomposition failed");
  }
  Eigen::VectorXd evals = es.eigenvalues();
  if (evals.minCoeff() < -1e-9 * scale) {
    throw ParameterError("covariance is not positive semidefinite");
  }
  evals = evals.cwiseMax(0.0);
  Eigen::VectorXd z(mean.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = rng.NextGaussian();
  return mean + es.eigenvectors() * evals.cwiseSqrt().asDiagonal() * z;
}

}  // namespace tukeydp
