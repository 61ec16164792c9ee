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
#ifndef TUKEY_POLYTOPE_H_
#define TUKEY_POLYTOPE_H_

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tukey/common.h"

namespace tukeydp {

struct BoundingBox {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  double LogVolume() const;
};

// A convex polytope {y : Ay <= b} in H-representation. Rows of A are
// normalized to unit norm on construction. A bounding box and a strictly
// interior point can be cached after they are computed.
//
// Immutable in its constraint set; safe to share across threads.
class Polytope {
 public:
  Polytope(Eigen::MatrixXd A, Eigen::VectorXd b);

  // The whole space (no constraints); meaningful only as a clip base.
  static Polytope WholeSpace(int dim);
  // Sentinel for a provably empty set (e.g. level > n).
  static Polytope EmptySentinel(int dim);

  int dim() const { return dim_; }
  int constraint_count() const { return static_cast<int>(A_.rows()); }
  const Eigen::MatrixXd& A() const { return A_; }
  const Eigen::VectorXd& b() const { return b_; }
  bool is_empty_sentinel() const { return empty_sentinel_; }

  bool Contains(const Eigen::VectorXd& y, double tol = 0.0) const;

  const std::optional<BoundingBox>& bbox() const { return bbox_; }
  void set_bbox(BoundingBox box);
  const std::optional<Eigen::VectorXd>& interior_point() const {
    return interior_point_;
  }
  // Requires A p <= b - 1e-9 strictly; throws ParameterError otherwise.
  void set_interior_point(const Eigen::VectorXd& p);

  // Callers that can prove boundedness (e.g. sign-paired spanning direction
  // sets, box clips) may set this to skip per-call unboundedness probes.
  bool bounded_hint() const { return bounded_hint_ || bbox_.has_value(); }
  void set_bounded_hint(bool bounded) { bounded_hint_ = bounded; }

  // Plain-text H-rep: first line "k d", then k rows "a_1 ... a_d b".
  std::string ToHRepText() const;
  static Polytope FromHRepText(const std::string& text);

 private:
  Polytope() = default;

  Eigen::MatrixXd A_;
  Eigen::VectorXd b_;
  int dim_ = 0;
  bool empty_sentinel_ = false;
  bool bounded_hint_ = false;
  std::optional<BoundingBox> bbox_;
  std::optional<Eigen::VectorXd> interior_point_;
};

// Appends the 2d axis constraints +-y_j <= R.
Polytope ClipToBox(const Polytope& p, double box_radius);

// Vertices of a polytope plus, for each vertex, the ids of the constraints
// active there (|a_i y - b_i| within tolerance). Every vertex is the
// intersection of at least d constraint hyperplanes.
struct VertexSet {
  std::vector<Eigen::VectorXd> vertices;
  std::vector<std::vector<int>> active;

  bool empty() const { return vertices.empty(); }
  int size() const { return static_cast<int>(vertices.size()); }
};

enum class VolumeMode { kExact, kPac };

struct VolumeEstimate {
  double log_volume = kNegInf;
  VolumeMode mode = VolumeMode::kExact;
  // pac mode: contract is (1-eta)Vol <= V <= (1+eta)Vol w.p. >= 1-beta.
  double eta = 0.0;
  double beta = 0.0;
  // pac mode: chain/rejection sample counts per estimation phase.
  std::vector<long> samples_per_phase;
  // Set when a ratio phase observed zero hits and the chain was truncated.
  bool zero_hit = false;
};

}  // namespace tukeydp

#endif  // TUKEY_POLYTOPE_H_
