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
#include "tukey/polytope.h"

#include <charconv>
#include <cmath>
#include <sstream>

namespace tukeydp {

double BoundingBox::LogVolume() const {
  double log_vol = 0.0;
  for (Eigen::Index j = 0; j < lo.size(); ++j) {
    const double side = hi[j] - lo[j];
    if (side <= 0.0) return kNegInf;
    log_vol += std::log(side);
  }
  return log_vol;
}

Polytope::Polytope(Eigen::MatrixXd A, Eigen::VectorXd b)
    : A_(std::move(A)), b_(std::move(b)) {
  if (A_.rows() != b_.size()) {
    throw ParameterError("polytope constraint count mismatch");
  }
  if (A_.cols() < 1) throw ParameterError("polytope dimension must be >= 1");
  dim_ = static_cast<int>(A_.cols());
  if (!A_.allFinite() || !b_.allFinite()) {
    throw ParameterError("polytope constraints must be finite");
  }
  for (Eigen::Index i = 0; i < A_.rows(); ++i) {
    const double norm = A_.row(i).norm();
    if (norm <= 0.0) throw ParameterError("polytope has a zero constraint row");
    A_.row(i) /= norm;
    b_[i] /= norm;
  }
}

Polytope Polytope::WholeSpace(int dim) {
  if (dim < 1) throw ParameterError("polytope dimension must be >= 1");
  Polytope p;
  p.A_ = Eigen::MatrixXd(0, dim);
  p.b_ = Eigen::VectorXd(0);
  p.dim_ = dim;
  return p;
}

Polytope Polytope::EmptySentinel(int dim) {
  // Two contradictory unit constraints: y_1 <= 0 and -y_1 <= -1.
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, dim);
  a(0, 0) = 1.0;
  a(1, 0) = -1.0;
  Eigen::VectorXd b(2);
  b << 0.0, -1.0;
  Polytope p(std::move(a), std::move(b));
  p.empty_sentinel_ = true;
  return p;
}

bool Polytope::Contains(const Eigen::VectorXd& y, double tol) const {
  if (y.size() != dim_) throw ParameterError("membership dimension mismatch");
  if (constraint_count() == 0) return true;
  return ((A_ * y - b_).array() <= tol).all();
}

void Polytope::set_bbox(BoundingBox box) {
  if (box.lo.size() != dim_ || box.hi.size() != dim_) {
    throw ParameterError("bounding box dimension mismatch");
  }
  bbox_ = std::move(box);
}

void Polytope::set_interior_point(const Eigen::VectorXd& p) {
  if (p.size() != dim_) throw ParameterError("interior point dimension mismatch");
  if (constraint_count() > 0 && ((A_ * p - b_).array() > -1e-9).any()) {
    throw ParameterError("interior point is not strictly inside");
  }
  interior_point_ = p;
}

std::string Polytope::ToHRepText() const {
  std::ostringstream out;
  out.precision(17);
  out << constraint_count() << " " << dim_ << "\n";
  for (int i = 0; i < constraint_count(); ++i) {
    for (int j = 0; j < dim_; ++j) out << A_(i, j) << " ";
    out << b_[i] << "\n";
  }
  return out.str();
}

Polytope Polytope::FromHRepText(const std::string& text) {
  std::istringstream in(text);
  int k = -1, d = -1;
  if (!(in >> k >> d) || k < 0 || d < 1) {
    throw DataError("malformed H-rep header");
  }
  Eigen::MatrixXd A(k, d);
  Eigen::VectorXd b(k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < d; ++j) {
      if (!(in >> A(i, j))) throw DataError("malformed H-rep row");
    }
    if (!(in >> b[i])) throw DataError("malformed H-rep row");
  }
  if (k == 0) return Polytope::WholeSpace(d);
  return Polytope(std::move(A), std::move(b));
}

Polytope ClipToBox(const Polytope& p, double box_radius) {
  if (!(box_radius > 0.0)) throw ParameterError("box radius must be positive");
  const int d = p.dim();
  const int k = p.constraint_count();
  Eigen::MatrixXd A(k + 2 * d, d);
  Eigen::VectorXd b(k + 2 * d);
  A.topRows(k) = p.A();
  b.head(k) = p.b();
  A.bottomRows(2 * d).setZero();
  for (int j = 0; j < d; ++j) {
    A(k + j, j) = 1.0;
    b[k + j] = box_radius;
    A(k + d + j, j) = -1.0;
    b[k + d + j] = box_radius;
  }
  Polytope out(std::move(A), std::move(b));
  BoundingBox box{Eigen::VectorXd::Constant(d, -box_radius),
                  Eigen::VectorXd::Constant(d, box_radius)};
  if (p.bbox()) {
    box.lo = box.lo.cwiseMax(p.bbox()->lo);
    box.hi = box.hi.cwiseMin(p.bbox()->hi);
  }
  out.set_bbox(std::move(box));
  return out;
}

}  // namespace tukeydp
