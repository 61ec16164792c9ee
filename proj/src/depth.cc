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
#include "tukey/depth.h"

#include <algorithm>
#include <cmath>
#include <vector>

namespace tukeydp {
namespace {

constexpr double kRelTol = 1e-9;

// Canonical sign: flip so the largest-magnitude coordinate is positive.
void CanonicalizeSign(Eigen::VectorXd& v) {
  int idx = 0;
  v.cwiseAbs().maxCoeff(&idx);
  if (v[idx] < 0.0) v = -v;
}

}  // namespace

DirectionSet::DirectionSet(Eigen::MatrixXd vectors, DirectionKind kind)
    : vectors_(std::move(vectors)), kind_(kind) {
  if (vectors_.rows() == 0) throw ParameterError("direction set is empty");
  for (Eigen::Index i = 0; i < vectors_.rows(); ++i) {
    if (std::fabs(vectors_.row(i).norm() - 1.0) > 1e-9) {
      throw ParameterError("direction vectors must be unit norm");
    }
  }
}

int HalfspaceCount(const Dataset& x, const Eigen::VectorXd& v,
                   const Eigen::VectorXd& y) {
  if (v.size() != x.dim() || y.size() != x.dim()) {
    throw ParameterError("halfspace count dimension mismatch");
  }
  const double yv = y.dot(v);
  int count = 0;
  const Eigen::MatrixXd& pts = x.points();
  for (int i = 0; i < x.n(); ++i) {
    if (pts.row(i).dot(v) >= yv) ++count;
  }
  return count;
}

int TukeyDepth(const Dataset& x, const Eigen::VectorXd& y,
               const DirectionSet& dirs) {
  if (dirs.dim() != x.dim() || y.size() != x.dim()) {
    throw ParameterError("depth evaluation dimension mismatch");
  }
  const Eigen::MatrixXd& pts = x.points();
  const int n = x.n();
  if (n == 0) return 0;

  // Scale-aware tolerance for projection ties and point coincidence.
  double scale = 1.0 + y.cwiseAbs().maxCoeff();
  if (n > 0) scale = std::max(scale, 1.0 + pts.cwiseAbs().maxCoeff());
  const double tol = kRelTol * scale;

  const bool rotate_ties = dirs.kind() == DirectionKind::kExactCandidates;
  std::vector<bool> at_y;
  if (rotate_ties) {
    at_y.resize(n);
    for (int i = 0; i < n; ++i) {
      at_y[i] = (pts.row(i).transpose() - y).cwiseAbs().maxCoeff() <= tol;
    }
  }

  int best = n;
  const Eigen::VectorXd y_proj = dirs.vectors() * y;  // k
  const int block = 4096;  // bounds the transient projection matrix
  for (int j0 = 0; j0 < dirs.count() && best > 0; j0 += block) {
    const int bs = std::min(block, dirs.count() - j0);
    const Eigen::MatrixXd proj =
        pts * dirs.vectors().middleRows(j0, bs).transpose();  // n x bs
    for (int c = 0; c < bs; ++c) {
      int geq = 0;
      int rotated = 0;
      for (int i = 0; i < n; ++i) {
        const double s = proj(i, c) - y_proj[j0 + c];
        if (s >= -tol) ++geq;
        if (rotate_ties && (s > tol || at_y[i])) ++rotated;
      }
      best = std::min(best, geq);
      if (rotate_ties) best = std::min(best, rotated);
      if (best == 0) break;
    }
  }
  return best;
}

DirectionSet ExactDirectionCandidates(const Dataset& x) {
  const int d = x.dim();
  const int n = x.n();
  if (d > kExactDepthDimensionCap) {
    throw ParameterError(
        "exact depth is capped at d <= " +
        std::to_string(kExactDepthDimensionCap) +
        "; use random directions for higher dimensions");
  }
  std::vector<Eigen::VectorXd> normals;
  if (d == 1) {
    normals.push_back(Eigen::VectorXd::Ones(1));
  } else {
    if (n < d) throw DegenerateDataError("need at least d points for candidates");
    const Eigen::MatrixXd& pts = x.points();
    const double scale = 1.0 + pts.cwiseAbs().maxCoeff();
    long degenerate = 0;
    std::vector<int> subset(d);
    for (int i = 0; i < d; ++i) subset[i] = i;
    Eigen::MatrixXd diff(d - 1, d);
    while (true) {
      for (int r = 1; r < d; ++r) {
        diff.row(r - 1) = pts.row(subset[r]) - pts.row(subset[0]);
      }
      if (d == 2) {
        Eigen::VectorXd v(2);
        v << -diff(0, 1), diff(0, 0);
        const double norm = v.norm();
        if (norm > kRelTol * scale) {
          v /= norm;
          CanonicalizeSign(v);
          normals.push_back(std::move(v));
        } else {
          ++degenerate;
        }
      } else {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(diff, Eigen::ComputeFullV);
        const auto& sing = svd.singularValues();
        if (sing[0] > 0.0 && sing[d - 2] > kRelTol * sing[0]) {
          Eigen::VectorXd v = svd.matrixV().col(d - 1);
          v.normalize();
          CanonicalizeSign(v);
          normals.push_back(std::move(v));
        } else {
          ++degenerate;
        }
      }
      // Advance the d-subset lexicographically.
      int pos = d - 1;
      while (pos >= 0 && subset[pos] == n - d + pos) --pos;
      if (pos < 0) break;
      ++subset[pos];
      for (int r = pos + 1; r < d; ++r) subset[r] = subset[r - 1] + 1;
    }
    if (normals.empty()) {
      throw DegenerateDataError("all candidate hyperplane subsets degenerate");
    }
    // Dedup up to sign at tolerance: sort lexicographically, then group scan.
    std::sort(normals.begin(), normals.end(),
              [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
                for (int i = 0; i < a.size(); ++i) {
                  if (a[i] != b[i]) return a[i] < b[i];
                }
                return false;
              });
    std::vector<Eigen::VectorXd> unique;
    for (auto& v : normals) {
      bool dup = false;
      for (auto it = unique.rbegin(); it != unique.rend(); ++it) {
        if ((*it)[0] < v[0] - 10 * kRelTol) break;
        if (((*it) - v).cwiseAbs().maxCoeff() <= 10 * kRelTol) {
          dup = true;
          break;
        }
      }
      if (!dup) unique.push_back(std::move(v));
    }
    normals = std::move(unique);
  }
  // Emit both orientations in the paired layout [U; -U].
  const int m = static_cast<int>(normals.size());
  Eigen::MatrixXd vecs(2 * m, d);
  for (int i = 0; i < m; ++i) {
    vecs.row(i) = normals[i].transpose();
    vecs.row(m + i) = -normals[i].transpose();
  }
  DirectionSet out(std::move(vecs), DirectionKind::kExactCandidates);
  out.sign_paired_ = true;
  return out;
}

DirectionSet RandomDirections(int k, int dim, RandomSource& rng) {
  if (k < 1) throw ParameterError("direction count must be >= 1");
  Eigen::MatrixXd vecs(k, dim);
  for (int i = 0; i < k; ++i) {
    vecs.row(i) = UnitSphereDirection(dim, rng).transpose();
  }
  return DirectionSet(std::move(vecs), DirectionKind::kRandom);
}

DirectionSet AxisAlignedDirections(int dim) {
  if (dim < 1) throw ParameterError("dimension must be >= 1");
  Eigen::MatrixXd vecs = Eigen::MatrixXd::Zero(2 * dim, dim);
  for (int j = 0; j < dim; ++j) {
    vecs(j, j) = 1.0;
    vecs(dim + j, j) = -1.0;
  }
  DirectionSet out(std::move(vecs), DirectionKind::kAxisAligned);
  out.sign_paired_ = true;
  return out;
}

}  // namespace tukeydp
