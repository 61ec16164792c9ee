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
#include <cmath>

#include "tukey/geometry.h"
#include "tukey/hit_and_run.h"

namespace tukeydp {

Eigen::VectorXd RejectionSampleUniform(const Polytope& p, RandomSource& rng,
                                       long max_rejections) {
  if (p.is_empty_sentinel()) {
    throw EmptyPolytopeError("cannot sample the empty polytope");
  }
  const BoundingBox box = p.bbox() ? *p.bbox() : ComputeBoundingBox(p);
  const int d = p.dim();
  Eigen::VectorXd y(d);
  for (long attempt = 0; attempt <= max_rejections; ++attempt) {
    for (int j = 0; j < d; ++j) {
      y[j] = box.lo[j] + (box.hi[j] - box.lo[j]) * rng.NextUniform();
    }
    if (p.Contains(y)) return y;
  }
  throw ThinPolytopeError(
      "rejection sampling exceeded " + std::to_string(max_rejections) +
      " consecutive rejections; use hit-and-run for thin polytopes");
}

HitAndRunState::HitAndRunState(const Polytope& p, const Eigen::VectorXd& start)
    : polytope_(&p), point_(start) {
  if (start.size() != p.dim()) {
    throw ParameterError("hit-and-run start dimension mismatch");
  }
  const double scale = 1.0 + (p.constraint_count() > 0
                                  ? p.b().cwiseAbs().maxCoeff()
                                  : 0.0);
  tol_ = 1e-12 * scale;
  slack_ = p.b() - p.A() * start;
  if (p.constraint_count() > 0 && slack_.minCoeff() <= tol_) {
    throw ParameterError("hit-and-run start is not strictly interior");
  }
}

void HitAndRunState::Step(RandomSource& rng) {
  const Polytope& p = *polytope_;
  const int k = p.constraint_count();
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const Eigen::VectorXd u = UnitSphereDirection(p.dim(), rng);
    const Eigen::VectorXd au = p.A() * u;
    // Feasible chord: point_ + t u for t in (t_lo, t_hi).
    double t_lo = kNegInf, t_hi = kInf;
    for (int i = 0; i < k; ++i) {
      if (au[i] > 1e-14) {
        t_hi = std::min(t_hi, slack_[i] / au[i]);
      } else if (au[i] < -1e-14) {
        t_lo = std::max(t_lo, slack_[i] / au[i]);
      }
    }
    if (!std::isfinite(t_lo) || !std::isfinite(t_hi)) {
      throw UnboundedError("hit-and-run chord is unbounded");
    }
    if (t_hi - t_lo <= tol_) continue;  // numerically zero chord; resample
    // Stay strictly inside the chord so the slack never goes negative.
    const double margin = (t_hi - t_lo) * 1e-12;
    const double t =
        t_lo + margin + (t_hi - t_lo - 2 * margin) * rng.NextUniform();
    point_ += t * u;
    slack_ -= t * au;
    if (++steps_since_refresh_ >= 128) {
      slack_ = p.b() - p.A() * point_;
      steps_since_refresh_ = 0;
    }
    return;
  }
  throw ThinPolytopeError("hit-and-run could not find a usable chord");
}

Eigen::VectorXd HitAndRunChain(const Polytope& p, const Eigen::VectorXd& start,
                               long steps, RandomSource& rng) {
  if (p.is_empty_sentinel()) {
    throw EmptyPolytopeError("cannot sample the empty polytope");
  }
  HitAndRunState chain(p, start);
  for (long s = 0; s < steps; ++s) chain.Step(rng);
  return chain.point();
}

}  // namespace tukeydp
