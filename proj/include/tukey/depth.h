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
#ifndef TUKEY_DEPTH_H_
#define TUKEY_DEPTH_H_

#include <Eigen/Dense>

#include "tukey/dataset.h"
#include "tukey/random.h"

namespace tukeydp {

// Exact depth evaluation is exponential in the dimension; reject above this
// cap and point users at random directions instead.
constexpr int kExactDepthDimensionCap = 4;

enum class DirectionKind { kExactCandidates, kRandom, kAxisAligned };

// A set of unit directions defining a (possibly approximate) notion of Tukey
// depth. Immutable after construction and safe to share across threads.
class DirectionSet {
 public:
  // `vectors` has one unit row per direction.
  DirectionSet(Eigen::MatrixXd vectors, DirectionKind kind);

  int count() const { return static_cast<int>(vectors_.rows()); }
  int dim() const { return static_cast<int>(vectors_.cols()); }
  DirectionKind kind() const { return kind_; }
  const Eigen::MatrixXd& vectors() const { return vectors_; }
  Eigen::RowVectorXd direction(int j) const { return vectors_.row(j); }

  // True when directions come in {+v, -v} pairs laid out as [U; -U]. Exact
  // candidates and axis-aligned sets are built this way; the level-set
  // pipeline exploits it to sort each projection axis once.
  bool sign_paired() const { return sign_paired_; }

 private:
  friend DirectionSet AxisAlignedDirections(int dim);
  friend DirectionSet ExactDirectionCandidates(const Dataset& x);

  Eigen::MatrixXd vectors_;
  DirectionKind kind_;
  bool sign_paired_ = false;
};

// Number of data points on the far side of the hyperplane through y with
// normal v, counted with the non-strict inequality <x_i, v> >= <y, v>.
int HalfspaceCount(const Dataset& x, const Eigen::VectorXd& v,
                   const Eigen::VectorXd& y);

// Tukey depth of y under the given directions: the minimum halfspace count.
//
// For exact candidates, each candidate v is additionally scored with the
// boundary points rotated off the hyperplane (points coinciding with y can
// never rotate off and stay counted). Candidate normals pass exactly through
// data points, and without this convention the enumerated minimum can exceed
// the true infimum on general-position data.
int TukeyDepth(const Dataset& x, const Eigen::VectorXd& y,
               const DirectionSet& dirs);

// Normals (both orientations) to all hyperplanes spanned by d-point subsets
// of the data, deduplicated up to sign at relative tolerance 1e-9. For d = 1
// returns {+1, -1}. Rank-deficient subsets are skipped; if every subset is
// degenerate, throws DegenerateDataError. Throws ParameterError for
// d > kExactDepthDimensionCap.
DirectionSet ExactDirectionCandidates(const Dataset& x);

// k i.i.d. unit-sphere directions. Callers must draw these before touching
// the data; privacy of the random-depth mechanisms requires directions
// selected independently of the data.
DirectionSet RandomDirections(int k, int dim, RandomSource& rng);

// The 2d directions {+e_j, -e_j}.
DirectionSet AxisAlignedDirections(int dim);

}  // namespace tukeydp

#endif  // TUKEY_DEPTH_H_
