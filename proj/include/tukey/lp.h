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
#ifndef TUKEY_LP_H_
#define TUKEY_LP_H_

#include <Eigen/Dense>

#include "tukey/common.h"

namespace tukeydp {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kOptimal;
  double objective = 0.0;
  Eigen::VectorXd x;      // primal solution of the standard-form problem
  Eigen::VectorXd duals;  // one multiplier per equality row
};

// Solves min c'x subject to Ax = b, x >= 0 with a dense revised simplex.
// Dantzig pricing with a Bland's-rule fallback for anti-cycling;
// infeasibility detected by a standard phase-1. Intended shape: few rows,
// possibly very many columns.
LpResult SolveStandardForm(const Eigen::VectorXd& c, const Eigen::MatrixXd& A,
                           const Eigen::VectorXd& b);

struct ChebyshevResult {
  Eigen::VectorXd center;
  double radius = 0.0;
};

// Center of the largest ball inscribed in {y : Ay <= b} (rows of A unit
// norm), via the LP max r s.t. a_i'c + r <= b_i solved in dual standard
// form. radius < 0 cannot occur: an empty polytope throws
// EmptyPolytopeError, an unbounded one throws UnboundedError. radius == 0
// indicates a lower-dimensional (degenerate) polytope.
ChebyshevResult ChebyshevCenter(const Eigen::MatrixXd& A,
                                const Eigen::VectorXd& b);

// sup of <objective, y> over {y : Ay <= b}. Throws UnboundedError when the
// supremum is infinite and EmptyPolytopeError when the polytope is empty.
double SupportValue(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                    const Eigen::VectorXd& objective);

}  // namespace tukeydp

#endif  // TUKEY_LP_H_
