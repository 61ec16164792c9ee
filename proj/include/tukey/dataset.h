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
#ifndef TUKEY_DATASET_H_
#define TUKEY_DATASET_H_

#include <string>

#include <Eigen/Dense>

#include "tukey/common.h"

namespace tukeydp {

// An n x d matrix of samples, one row per point. The unit of privacy is
// swap adjacency: two datasets are adjacent when they differ in one row.
//
// All entries must be finite. n = 0 is permitted (the box mechanism is
// well defined on an empty dataset); construct it with Dataset::Empty(d).
class Dataset {
 public:
  explicit Dataset(Eigen::MatrixXd points);
  static Dataset Empty(int dim);

  // Parses a headerless numeric CSV, one row per point. Decimal points are
  // locale independent. Throws DataError with the offending line number.
  static Dataset LoadCsv(const std::string& path);

  int n() const { return static_cast<int>(points_.rows()); }
  int dim() const { return static_cast<int>(points_.cols()); }
  const Eigen::MatrixXd& points() const { return points_; }
  Eigen::RowVectorXd point(int i) const { return points_.row(i); }

  // Returns a copy with row i replaced (swap adjacency helper).
  Dataset WithRow(int i, const Eigen::RowVectorXd& row) const;

 private:
  Eigen::MatrixXd points_;
};

}  // namespace tukeydp

#endif  // TUKEY_DATASET_H_
