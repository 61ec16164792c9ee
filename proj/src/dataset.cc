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
#include "tukey/dataset.h"

#include <charconv>
#include <fstream>
#include <vector>

namespace tukeydp {
namespace {

// Parses one CSV line of doubles. std::from_chars is locale independent.
std::vector<double> ParseCsvLine(const std::string& line, long line_no) {
  std::vector<double> out;
  const char* p = line.data();
  const char* end = line.data() + line.size();
  while (p < end) {
    while (p < end && (*p == ' ' || *p == '\t')) ++p;
    const char* field_end = p;
    while (field_end < end && *field_end != ',') ++field_end;
    const char* num_end = field_end;
    while (num_end > p &&
           (num_end[-1] == ' ' || num_end[-1] == '\t' || num_end[-1] == '\r')) {
      --num_end;
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(p, num_end, value);
    if (ec != std::errc() || ptr != num_end || num_end == p) {
      throw DataError("malformed CSV field at line " + std::to_string(line_no),
                      line_no);
    }
    out.push_back(value);
    p = field_end < end ? field_end + 1 : end;
  }
  return out;
}

}  // namespace

Dataset::Dataset(Eigen::MatrixXd points) : points_(std::move(points)) {
  if (points_.cols() < 1) throw ParameterError("dataset dimension must be >= 1");
  if (!points_.allFinite()) throw ParameterError("dataset has non-finite entries");
}

Dataset Dataset::Empty(int dim) {
  if (dim < 1) throw ParameterError("dataset dimension must be >= 1");
  return Dataset(Eigen::MatrixXd(0, dim));
}

Dataset Dataset::LoadCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    // Skip blank lines (common trailing newline case).
    bool blank = true;
    for (char c : line) {
      if (c != ' ' && c != '\t' && c != '\r') { blank = false; break; }
    }
    if (blank) continue;
    std::vector<double> row = ParseCsvLine(line, line_no);
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw DataError("inconsistent row width at line " + std::to_string(line_no),
                      line_no);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError("dataset file is empty: " + path);
  Eigen::MatrixXd m(rows.size(), rows.front().size());
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return Dataset(std::move(m));
}

Dataset Dataset::WithRow(int i, const Eigen::RowVectorXd& row) const {
  if (i < 0 || i >= n()) throw ParameterError("row index out of range");
  if (row.size() != dim()) throw ParameterError("row dimension mismatch");
  Eigen::MatrixXd m = points_;
  m.row(i) = row;
  return Dataset(std::move(m));
}

}  // namespace tukeydp
