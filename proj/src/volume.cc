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
#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "tukey/geometry.h"

namespace tukeydp {
namespace {

double Shoelace(std::vector<Eigen::VectorXd> pts) {
  if (pts.size() < 3) return 0.0;
  Eigen::Vector2d c = Eigen::Vector2d::Zero();
  for (const auto& p : pts) c += p.head<2>();
  c /= static_cast<double>(pts.size());
  std::sort(pts.begin(), pts.end(),
            [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
              return std::atan2(a[1] - c[1], a[0] - c[0]) <
                     std::atan2(b[1] - c[1], b[0] - c[0]);
            });
  double twice_area = 0.0;
  for (size_t i = 0; i < pts.size(); ++i) {
    const auto& a = pts[i];
    const auto& b = pts[(i + 1) % pts.size()];
    twice_area += (a[0] - c[0]) * (b[1] - c[1]) - (b[0] - c[0]) * (a[1] - c[1]);
  }
  return std::fabs(twice_area) / 2.0;
}

// Volume of a convex cell from its vertices and per-vertex active constraint
// ids. Facets are the maximal vertex groups sharing an active id; each
// contributes a cone from the vertex centroid.
double CellVolume(const std::vector<Eigen::VectorXd>& pts,
                  const std::vector<std::vector<int>>& active, int dim) {
  if (pts.size() < static_cast<size_t>(dim) + 1) return 0.0;
  if (dim == 1) {
    double lo = pts[0][0], hi = pts[0][0];
    for (const auto& p : pts) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    return hi - lo;
  }
  if (dim == 2) return Shoelace(pts);

  Eigen::VectorXd apex = Eigen::VectorXd::Zero(dim);
  for (const auto& p : pts) apex += p;
  apex /= static_cast<double>(pts.size());

  std::map<int, std::vector<int>> groups;
  for (size_t v = 0; v < pts.size(); ++v) {
    for (int id : active[v]) groups[id].push_back(static_cast<int>(v));
  }
  std::set<std::vector<int>> seen;  // near-duplicate constraints share facets
  double volume = 0.0;
  for (auto& [id, members] : groups) {
    if (members.size() < static_cast<size_t>(dim)) continue;
    std::sort(members.begin(), members.end());
    if (!seen.insert(members).second) continue;

    Eigen::VectorXd fc = Eigen::VectorXd::Zero(dim);
    for (int v : members) fc += pts[v];
    fc /= static_cast<double>(members.size());
    Eigen::MatrixXd centered(members.size(), dim);
    for (size_t r = 0; r < members.size(); ++r) {
      centered.row(r) = (pts[members[r]] - fc).transpose();
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeFullV);
    const Eigen::VectorXd normal = svd.matrixV().col(dim - 1);
    const double height = std::fabs(normal.dot(apex - fc));
    if (height <= 0.0) continue;

    const Eigen::MatrixXd basis = svd.matrixV().leftCols(dim - 1);
    std::vector<Eigen::VectorXd> sub_pts(members.size());
    std::vector<std::vector<int>> sub_active(members.size());
    for (size_t r = 0; r < members.size(); ++r) {
      sub_pts[r] = basis.transpose() * (pts[members[r]] - fc);
      for (int other : active[members[r]]) {
        if (other != id) sub_active[r].push_back(other);
      }
    }
    volume += height * CellVolume(sub_pts, sub_active, dim - 1) / dim;
  }
  return volume;
}

}  // namespace

double LogVolumeFromVertices(const Polytope& p, const VertexSet& vs) {
  if (vs.size() < p.dim() + 1) return kNegInf;
  const double volume = CellVolume(vs.vertices, vs.active, p.dim());
  return volume > 0.0 ? std::log(volume) : kNegInf;
}

VolumeEstimate ExactVolume(const Polytope& p) {
  VolumeEstimate est;
  est.mode = VolumeMode::kExact;
  if (p.is_empty_sentinel()) return est;
  const VertexSet vs = EnumerateVertices(p);
  est.log_volume = LogVolumeFromVertices(p, vs);
  return est;
}

}  // namespace tukeydp
