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
#include "tukey/lp.h"

#include <cmath>
#include <vector>

namespace tukeydp {
namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kReducedCostTol = 1e-9;
constexpr int kStallLimit = 64;  // switch to Bland's rule after this

// Revised simplex over the column set [A | I] where the identity columns are
// the artificials. The basis inverse is refactored from scratch every
// iteration; with the row counts used here (d + 1 or so) that is cheaper
// than bookkeeping and immune to drift.
class RevisedSimplex {
 public:
  RevisedSimplex(const Eigen::MatrixXd& A, const Eigen::VectorXd& b)
      : A_(A), b_(b), m_(static_cast<int>(A.rows())),
        n_(static_cast<int>(A.cols())) {
    // Standard form wants b >= 0; flip rows as needed.
    row_sign_ = Eigen::VectorXd::Ones(m_);
    for (int i = 0; i < m_; ++i) {
      if (b_[i] < 0.0) {
        row_sign_[i] = -1.0;
        b_[i] = -b_[i];
      }
    }
    basis_.resize(m_);
    for (int i = 0; i < m_; ++i) basis_[i] = n_ + i;  // artificials
  }

  // Runs phase 1 then phase 2. Returns kInfeasible when phase 1 cannot reach
  // zero, kUnbounded when phase 2 finds an improving ray.
  LpResult Solve(const Eigen::VectorXd& c) {
    LpResult result;
    if (!RunPhase(Eigen::VectorXd::Zero(n_), /*phase1=*/true)) {
      throw Error("simplex phase 1 reported unbounded");  // cannot happen
    }
    if (Objective(Eigen::VectorXd::Zero(n_), /*phase1=*/true) > 1e-7 * Scale()) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
    if (!RunPhase(c, /*phase1=*/false)) {
      result.status = LpStatus::kUnbounded;
      return result;
    }
    result.status = LpStatus::kOptimal;
    result.x = Eigen::VectorXd::Zero(n_);
    Eigen::VectorXd xb = BasisInverse() * b_;
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) result.x[basis_[i]] = xb[i];
    }
    result.objective = c.dot(result.x);
    // Duals of the equality rows, undoing the phase-0 sign flips.
    Eigen::VectorXd cb(m_);
    for (int i = 0; i < m_; ++i) {
      cb[i] = basis_[i] < n_ ? c[basis_[i]] : 0.0;
    }
    Eigen::VectorXd y = BasisInverse().transpose() * cb;
    result.duals = y.cwiseProduct(row_sign_);
    return result;
  }

 private:
  double Scale() const { return 1.0 + b_.cwiseAbs().maxCoeff(); }

  Eigen::VectorXd Column(int j) const {
    if (j < n_) return A_.col(j).cwiseProduct(row_sign_);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(m_);
    e[j - n_] = 1.0;
    return e;
  }

  Eigen::MatrixXd BasisMatrix() const {
    Eigen::MatrixXd B(m_, m_);
    for (int i = 0; i < m_; ++i) B.col(i) = Column(basis_[i]);
    return B;
  }

  const Eigen::PartialPivLU<Eigen::MatrixXd>& Factorize() {
    lu_.compute(BasisMatrix());
    return lu_;
  }

  Eigen::MatrixXd BasisInverse() { return Factorize().inverse(); }

  double Objective(const Eigen::VectorXd& c, bool phase1) {
    Eigen::VectorXd xb = Factorize().solve(b_);
    double obj = 0.0;
    for (int i = 0; i < m_; ++i) {
      const int j = basis_[i];
      const double cj = phase1 ? (j >= n_ ? 1.0 : 0.0)
                               : (j >= n_ ? 0.0 : c[j]);
      obj += cj * xb[i];
    }
    return obj;
  }

  // Returns false when the phase detects an unbounded improving direction.
  bool RunPhase(const Eigen::VectorXd& c, bool phase1) {
    const long max_iters = 20000 + 4L * m_ + n_ / 4;
    double best_obj = kInf;
    int stall = 0;
    bool bland = false;
    for (long iter = 0; iter < max_iters; ++iter) {
      const auto& lu = Factorize();
      Eigen::VectorXd xb = lu.solve(b_);
      Eigen::VectorXd cb(m_);
      for (int i = 0; i < m_; ++i) {
        const int j = basis_[i];
        cb[i] = phase1 ? (j >= n_ ? 1.0 : 0.0) : (j >= n_ ? 0.0 : c[j]);
      }
      Eigen::VectorXd y = lu.transpose().solve(cb);

      const double obj = cb.dot(xb);
      if (obj < best_obj - 1e-12 * (1.0 + std::fabs(best_obj))) {
        best_obj = obj;
        stall = 0;
      } else if (++stall > kStallLimit) {
        bland = true;
      }

      // Price the real columns; artificials may enter only in phase 1.
      Eigen::VectorXd reduced =
          (phase1 ? Eigen::VectorXd::Zero(n_).eval() : c) -
          (A_.transpose() * y.cwiseProduct(row_sign_));
      int entering = -1;
      const double tol = kReducedCostTol * (1.0 + y.cwiseAbs().maxCoeff());
      if (bland) {
        for (int j = 0; j < n_; ++j) {
          if (reduced[j] < -tol && !InBasis(j)) {
            entering = j;
            break;
          }
        }
      } else {
        double most_negative = -tol;
        for (int j = 0; j < n_; ++j) {
          if (reduced[j] < most_negative && !InBasis(j)) {
            most_negative = reduced[j];
            entering = j;
          }
        }
      }
      if (entering < 0) return true;  // optimal for this phase

      Eigen::VectorXd w = lu.solve(Column(entering));
      int leaving = -1;
      double best_ratio = kInf;
      for (int i = 0; i < m_; ++i) {
        if (w[i] > kPivotTol) {
          const double ratio = std::max(xb[i], 0.0) / w[i];
          if (ratio < best_ratio - 1e-12 ||
              (ratio < best_ratio + 1e-12 &&
               (leaving < 0 || basis_[i] < basis_[leaving]))) {
            best_ratio = ratio;
            leaving = i;
          }
        }
      }
      if (leaving < 0) {
        if (phase1) throw Error("simplex phase 1 unbounded");
        return false;
      }
      basis_[leaving] = entering;
    }
    throw Error("simplex iteration cap exceeded");
  }

  bool InBasis(int j) const {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] == j) return true;
    }
    return false;
  }

  Eigen::MatrixXd A_;
  Eigen::VectorXd b_;
  Eigen::VectorXd row_sign_;
  int m_;
  int n_;
  std::vector<int> basis_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

}  // namespace

LpResult SolveStandardForm(const Eigen::VectorXd& c, const Eigen::MatrixXd& A,
                           const Eigen::VectorXd& b) {
  if (A.rows() != b.size() || A.cols() != c.size()) {
    throw ParameterError("standard form dimension mismatch");
  }
  if (A.rows() == 0 || A.cols() == 0) {
    throw ParameterError("empty linear program");
  }
  RevisedSimplex solver(A, b);
  return solver.Solve(c);
}

ChebyshevResult ChebyshevCenter(const Eigen::MatrixXd& A,
                                const Eigen::VectorXd& b) {
  const int k = static_cast<int>(A.rows());
  const int d = static_cast<int>(A.cols());
  if (k == 0) throw UnboundedError("chebyshev center of the whole space");
  // Dual of  max r  s.t.  A c + r 1 <= b:
  //   min b'lambda  s.t.  A'lambda = 0, 1'lambda = 1, lambda >= 0,
  // whose row multipliers recover the primal optimum (center, radius).
  Eigen::MatrixXd G(d + 1, k);
  G.topRows(d) = A.transpose();
  G.row(d).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(d + 1);
  rhs[d] = 1.0;
  LpResult lp = SolveStandardForm(b, G, rhs);
  if (lp.status == LpStatus::kInfeasible) {
    throw UnboundedError("polytope admits arbitrarily large inscribed balls");
  }
  if (lp.status == LpStatus::kUnbounded) {
    throw Error("chebyshev dual unbounded");  // primal is always feasible
  }
  ChebyshevResult out;
  out.center = lp.duals.head(d);
  out.radius = lp.objective;
  const double tol = 1e-9 * (1.0 + b.cwiseAbs().maxCoeff());
  if (out.radius < -tol) {
    throw EmptyPolytopeError("polytope is empty");
  }
  out.radius = std::max(out.radius, 0.0);
  return out;
}

double SupportValue(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                    const Eigen::VectorXd& objective) {
  // Dual of  max <objective, y>  s.t.  Ay <= b:
  //   min b'lambda  s.t.  A'lambda = objective, lambda >= 0.
  LpResult lp = SolveStandardForm(b, A.transpose(), objective);
  if (lp.status == LpStatus::kInfeasible) {
    throw UnboundedError("support value is infinite");
  }
  if (lp.status == LpStatus::kUnbounded) {
    throw EmptyPolytopeError("polytope is empty");
  }
  return lp.objective;
}

}  // namespace tukeydp
