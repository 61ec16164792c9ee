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
#include <set>
#include <vector>

#include "tukey/geometry.h"

namespace tukeydp {
namespace {

constexpr double kVertexTol = 1e-7;    // dedup and activity, bbox-scaled
constexpr long kComboCap = 200000000;  // C(F, d) cap for brute enumeration

double ConstraintScale(const Polytope& p) {
  double s = 1.0;
  if (p.constraint_count() > 0) s += p.b().cwiseAbs().maxCoeff();
  return s;
}

// Fills per-vertex active constraint ids by scanning the original rows.
void FillActiveSets(const Polytope& p, VertexSet& vs) {
  vs.active.assign(vs.vertices.size(), {});
  if (vs.vertices.empty()) return;
  double vscale = 1.0;
  for (const auto& v : vs.vertices) {
    vscale = std::max(vscale, 1.0 + v.cwiseAbs().maxCoeff());
  }
  const double tol = kVertexTol * vscale;
  for (size_t vi = 0; vi < vs.vertices.size(); ++vi) {
    const Eigen::VectorXd slack = p.b() - p.A() * vs.vertices[vi];
    for (int i = 0; i < p.constraint_count(); ++i) {
      if (std::fabs(slack[i]) <= tol) vs.active[vi].push_back(i);
    }
  }
}

void DedupVertices(std::vector<Eigen::VectorXd>& vertices) {
  if (vertices.empty()) return;
  double vscale = 1.0;
  for (const auto& v : vertices) {
    vscale = std::max(vscale, 1.0 + v.cwiseAbs().maxCoeff());
  }
  const double tol = kVertexTol * vscale;
  std::vector<Eigen::VectorXd> unique;
  for (auto& v : vertices) {
    bool dup = false;
    for (const auto& u : unique) {
      if ((u - v).cwiseAbs().maxCoeff() <= tol) {
        dup = true;
        break;
      }
    }
    if (!dup) unique.push_back(std::move(v));
  }
  vertices = std::move(unique);
}

// Resolves a strictly interior point: the cached one when it still has
// margin, otherwise the Chebyshev center. Returns false when the polytope
// has no interior (empty or lower-dimensional).
bool InteriorPoint(const Polytope& p, Eigen::VectorXd& out) {
  const double margin = 1e-11 * ConstraintScale(p);
  if (p.interior_point()) {
    const Eigen::VectorXd& c = *p.interior_point();
    if (((p.b() - p.A() * c).array() > margin).all()) {
      out = c;
      return true;
    }
  }
  ChebyshevResult cheb;
  try {
    cheb = ChebyshevCenter(p.A(), p.b());
  } catch (const EmptyPolytopeError&) {
    return false;
  }
  if (cheb.radius <= margin) return false;
  out = cheb.center;
  return true;
}

VertexSet Enumerate1D(const Polytope& p) {
  double lo = kNegInf, hi = kInf;
  for (int i = 0; i < p.constraint_count(); ++i) {
    if (p.A()(i, 0) > 0.0) {
      hi = std::min(hi, p.b()[i]);
    } else {
      lo = std::max(lo, -p.b()[i]);
    }
  }
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw UnboundedError("1d polytope is unbounded; clip to a box first");
  }
  VertexSet vs;
  if (hi - lo <= 0.0) {
    return vs;  // empty or a single point: no interior
  }
  vs.vertices.push_back(Eigen::VectorXd::Constant(1, lo));
  vs.vertices.push_back(Eigen::VectorXd::Constant(1, hi));
  FillActiveSets(p, vs);
  return vs;
}

bool PositivelySpans2D(const Eigen::MatrixXd& A) {
  std::vector<double> angles(A.rows());
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    angles[i] = std::atan2(A(i, 1), A(i, 0));
  }
  std::sort(angles.begin(), angles.end());
  double max_gap = angles.front() + 2 * M_PI - angles.back();
  for (size_t i = 1; i < angles.size(); ++i) {
    max_gap = std::max(max_gap, angles[i] - angles[i - 1]);
  }
  return max_gap < M_PI - 1e-12;
}

// 2D: dualize around an interior point. Vertices of the polytope correspond
// to edges of the convex hull of the dual points a_i / (b_i - a_i p), and
// hull vertices are exactly the non-redundant constraints.
VertexSet Enumerate2D(const Polytope& p) {
  if (!p.bounded_hint() && !PositivelySpans2D(p.A())) {
    throw UnboundedError("2d polytope is unbounded; clip to a box first");
  }
  VertexSet vs;
  Eigen::VectorXd center;
  if (!InteriorPoint(p, center)) return vs;

  const int k = p.constraint_count();
  struct Dual {
    double x, y;
    int id;
  };
  std::vector<Dual> duals;
  duals.reserve(k);
  const Eigen::VectorXd slack = p.b() - p.A() * center;
  for (int i = 0; i < k; ++i) {
    if (slack[i] <= 0.0) return vs;  // no strict interior margin after all
    duals.push_back({p.A()(i, 0) / slack[i], p.A()(i, 1) / slack[i], i});
  }
  std::sort(duals.begin(), duals.end(), [](const Dual& a, const Dual& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.id < b.id;
  });

  // Andrew monotone chain with strict turns; collinear dual points are
  // weakly redundant constraints and drop out here.
  auto cross_strict = [](const Dual& o, const Dual& a, const Dual& b) {
    const double ax = a.x - o.x, ay = a.y - o.y;
    const double bx = b.x - o.x, by = b.y - o.y;
    const double cr = ax * by - ay * bx;
    const double mag = std::sqrt((ax * ax + ay * ay) * (bx * bx + by * by));
    return cr > 1e-12 * mag;
  };
  std::vector<int> hull;  // indices into duals, counter-clockwise
  for (int i = 0; i < k; ++i) {
    while (hull.size() >= 2 &&
           !cross_strict(duals[hull[hull.size() - 2]],
                         duals[hull[hull.size() - 1]], duals[i])) {
      hull.pop_back();
    }
    hull.push_back(i);
  }
  const size_t lower_size = hull.size() + 1;
  for (int i = k - 2; i >= 0; --i) {
    while (hull.size() >= lower_size &&
           !cross_strict(duals[hull[hull.size() - 2]],
                         duals[hull[hull.size() - 1]], duals[i])) {
      hull.pop_back();
    }
    hull.push_back(i);
  }
  hull.pop_back();  // closes the cycle back at the first point
  if (hull.size() < 3) return vs;  // lower-dimensional

  for (size_t h = 0; h < hull.size(); ++h) {
    const int i = duals[hull[h]].id;
    const int j = duals[hull[(h + 1) % hull.size()]].id;
    const double a11 = p.A()(i, 0), a12 = p.A()(i, 1);
    const double a21 = p.A()(j, 0), a22 = p.A()(j, 1);
    const double det = a11 * a22 - a12 * a21;
    if (std::fabs(det) < 1e-13) continue;  // effectively parallel pair
    vs.vertices.emplace_back(2);
    vs.vertices.back() << (p.b()[i] * a22 - a12 * p.b()[j]) / det,
        (a11 * p.b()[j] - p.b()[i] * a21) / det;
  }
  DedupVertices(vs.vertices);
  if (vs.vertices.size() < 3) {
    vs.vertices.clear();
    return vs;
  }
  FillActiveSets(p, vs);
  return vs;
}

// Brute-force vertex enumeration over a working constraint set: solve every
// d-subset and keep feasible solutions.
std::vector<Eigen::VectorXd> EnumerateSubsetBrute(const Eigen::MatrixXd& A,
                                                  const Eigen::VectorXd& b,
                                                  double scale) {
  const int f = static_cast<int>(A.rows());
  const int d = static_cast<int>(A.cols());
  double combos = 1.0;
  for (int i = 0; i < d; ++i) combos = combos * (f - i) / (i + 1);
  if (combos > static_cast<double>(kComboCap)) {
    throw ResourceError(
        "vertex enumeration over " + std::to_string(f) +
        " constraints in d=" + std::to_string(d) +
        " exceeds the combinatorial cap; reduce n or use the pac engine");
  }
  const double ftol = 1e-9 * scale;
  std::vector<Eigen::VectorXd> out;
  std::vector<int> subset(d);
  for (int i = 0; i < d; ++i) subset[i] = i;
  Eigen::MatrixXd As(d, d);
  Eigen::VectorXd bs(d);
  while (true) {
    for (int r = 0; r < d; ++r) {
      As.row(r) = A.row(subset[r]);
      bs[r] = b[subset[r]];
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(As);
    const Eigen::VectorXd y = lu.solve(bs);
    if (y.allFinite() && (As * y - bs).cwiseAbs().maxCoeff() <= ftol) {
      bool feasible = true;
      for (int i = 0; i < f && feasible; ++i) {
        feasible = A.row(i).dot(y) <= b[i] + ftol;
      }
      if (feasible) out.push_back(y);
    }
    int pos = d - 1;
    while (pos >= 0 && subset[pos] == f - d + pos) --pos;
    if (pos < 0) break;
    ++subset[pos];
    for (int r = pos + 1; r < d; ++r) subset[r] = subset[r - 1] + 1;
  }
  return out;
}

// d = 3, 4: ray-shoot from the interior to collect facet constraints, then
// brute-force the working set and verify its vertices against the full
// constraint list, adding violated constraints until closure.
VertexSet EnumerateGeneral(const Polytope& p) {
  VertexSet vs;
  Eigen::VectorXd center;
  if (!InteriorPoint(p, center)) return vs;
  const int d = p.dim();
  const int k = p.constraint_count();
  const double scale = ConstraintScale(p);

  BoundingBox box = p.bbox() ? *p.bbox() : ComputeBoundingBox(p);

  std::set<int> working;
  {
    // Deterministic internal stream; enumeration stays a pure function.
    RandomSource ray_rng = RandomSource::Seeded(0x7c5);
    const Eigen::VectorXd slack0 = p.b() - p.A() * center;
    const int max_rays = std::max(2000, 40 * k > 20000 ? 20000 : 40 * k);
    int streak = 0;
    for (int r = 0; r < max_rays && streak < 500; ++r) {
      const Eigen::VectorXd u = UnitSphereDirection(d, ray_rng);
      const Eigen::VectorXd au = p.A() * u;
      double best_t = kInf;
      int best_i = -1;
      for (int i = 0; i < k; ++i) {
        if (au[i] > 1e-14) {
          const double t = slack0[i] / au[i];
          if (t < best_t) {
            best_t = t;
            best_i = i;
          }
        }
      }
      if (best_i < 0) {
        throw UnboundedError("polytope is unbounded; clip to a box first");
      }
      streak = working.insert(best_i).second ? 0 : streak + 1;
    }
  }

  for (int round = 0; round < 200; ++round) {
    // Working matrix: selected original rows plus bounding-box rows. The box
    // rows keep every intermediate polytope bounded and are valid for p, so
    // they never cut it.
    const int f = static_cast<int>(working.size());
    Eigen::MatrixXd Aw(f + 2 * d, d);
    Eigen::VectorXd bw(f + 2 * d);
    int r = 0;
    for (int id : working) {
      Aw.row(r) = p.A().row(id);
      bw[r] = p.b()[id];
      ++r;
    }
    Aw.bottomRows(2 * d).setZero();
    for (int j = 0; j < d; ++j) {
      Aw(f + j, j) = 1.0;
      bw[f + j] = box.hi[j] + 1.0;
      Aw(f + d + j, j) = -1.0;
      bw[f + d + j] = -(box.lo[j] - 1.0);
    }
    std::vector<Eigen::VectorXd> candidates =
        EnumerateSubsetBrute(Aw, bw, scale);
    DedupVertices(candidates);

    // Verify against the full constraint set.
    std::set<int> additions;
    for (const auto& v : candidates) {
      const Eigen::VectorXd viol = p.A() * v - p.b();
      int worst = -1;
      double worst_v = 1e-9 * scale;
      for (int i = 0; i < k; ++i) {
        if (viol[i] > worst_v) {
          worst_v = viol[i];
          worst = i;
        }
      }
      if (worst >= 0) additions.insert(worst);
      if (additions.size() >= 64) break;
    }
    if (additions.empty()) {
      if (candidates.size() < static_cast<size_t>(d) + 1) return vs;
      vs.vertices = std::move(candidates);
      FillActiveSets(p, vs);
      return vs;
    }
    working.insert(additions.begin(), additions.end());
  }
  throw Error("vertex enumeration failed to converge");
}

}  // namespace

VertexSet EnumerateVertices(const Polytope& p) {
  if (p.is_empty_sentinel()) return {};
  const int d = p.dim();
  if (d > kExactDepthDimensionCap) {
    throw ParameterError("exact vertex enumeration is capped at d <= " +
                         std::to_string(kExactDepthDimensionCap));
  }
  if (p.constraint_count() == 0) {
    throw UnboundedError("polytope with no constraints is unbounded");
  }
  if (d == 1) return Enumerate1D(p);
  if (d == 2) return Enumerate2D(p);
  return EnumerateGeneral(p);
}

ChebyshevResult ChebyshevCenter(const Polytope& p) {
  if (p.is_empty_sentinel()) throw EmptyPolytopeError("polytope is empty");
  return ChebyshevCenter(p.A(), p.b());
}

BoundingBox ComputeBoundingBox(const Polytope& p) {
  const int d = p.dim();
  BoundingBox box{Eigen::VectorXd(d), Eigen::VectorXd(d)};
  for (int j = 0; j < d; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(d);
    e[j] = 1.0;
    box.hi[j] = SupportValue(p.A(), p.b(), e);
    e[j] = -1.0;
    box.lo[j] = -SupportValue(p.A(), p.b(), e);
  }
  return box;
}

}  // namespace tukeydp
