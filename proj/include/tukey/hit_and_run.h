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
#ifndef TUKEY_HIT_AND_RUN_H_
#define TUKEY_HIT_AND_RUN_H_

#include "tukey/polytope.h"
#include "tukey/random.h"

namespace tukeydp {

// Resumable hit-and-run walk: each step draws a uniform direction, computes
// the feasible chord from the constraint intersections, and moves to a
// uniform point on it. Constraint slacks are maintained incrementally and
// refreshed periodically. The referenced polytope must outlive the state.
class HitAndRunState {
 public:
  HitAndRunState(const Polytope& p, const Eigen::VectorXd& start);

  void Step(RandomSource& rng);
  const Eigen::VectorXd& point() const { return point_; }

 private:
  const Polytope* polytope_;
  Eigen::VectorXd point_;
  Eigen::VectorXd slack_;
  double tol_ = 0.0;
  int steps_since_refresh_ = 0;
};

}  // namespace tukeydp

#endif  // TUKEY_HIT_AND_RUN_H_
