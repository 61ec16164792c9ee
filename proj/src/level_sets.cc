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
#include "tukey/hit_and_run.h"

namespace tukeydp {
namespace {

// Full polytopes are stored in the family up to this row count; above it the
// family keeps the facet-reduced polytope and callers re-materialize the
// full level set when they need exact membership.
constexpr int kStoreFullRowCap = 4096;

// Per-direction sorted projections of the data. For sign-paired direction
// sets ([U; -U] layout) only the unoriented half is projected and sorted;
// the opposite orientation reads the same array from the other end. Large
// tables fall back to float storage under the memory budget.
class QuantileTable {
 public:
  QuantileTable(const Dataset& x, const DirectionSet& dirs, long budget_mb) {
    n_ = x.n();
    paired_ = dirs.sign_paired();
    k_ = dirs.count();
    m_ = paired_ ? k_ / 2 : k_;
    const double bytes_double = 8.0 * m_ * n_;
    const double bytes_float = 4.0 * m_ * n_;
    const double budget = budget_mb * 1048576.0;
    if (bytes_double <= std::min(budget, 256.0 * 1048576.0)) {
      dbl_.resize(static_cast<size_t>(m_) * n_);
    } else if (bytes_float <= budget) {
      flt_.resize(static_cast<size_t>(m_) * n_);
    } else {
      throw ResourceError(
          "projection table for " + std::to_string(m_) + " directions x " +
          std::to_string(n_) +
          " points exceeds the memory budget; reduce n or use random depth");
    }

    const Eigen::MatrixXd& pts = x.points();
    const int block = 4096;
    for (int j0 = 0; j0 < m_; j0 += block) {
      const int bs = std::min(block, m_ - j0);
      const Eigen::MatrixXd proj =
          pts * dirs.vectors().middleRows(j0, bs).transpose();  // n x bs
      for (int c = 0; c < bs; ++c) {
        if (!dbl_.empty()) {
          double* col = &dbl_[static_cast<size_t>(j0 + c) * n_];
          for (int i = 0; i < n_; ++i) col[i] = proj(i, c);
          std::sort(col, col + n_);
        } else {
          float* col = &flt_[static_cast<size_t>(j0 + c) * n_];
          for (int i = 0; i < n_; ++i) col[i] = static_cast<float>(proj(i, c));
          std::sort(col, col + n_);
        }
      }
    }
  }

  // Constraint offsets for one level, in direction-set row order.
  Eigen::VectorXd LevelOffsets(int level) const {
    Eigen::VectorXd b(k_);
    for (int j = 0; j < m_; ++j) {
      b[j] = Sorted(j, n_ - level);  // level-th largest projection
      if (paired_) b[m_ + j] = -Sorted(j, level - 1);
    }
    return b;
  }

 private:
  double Sorted(int j, int rank) const {
    const size_t idx = static_cast<size_t>(j) * n_ + rank;
    return dbl_.empty() ? static_cast<double>(flt_[idx]) : dbl_[idx];
  }

  int n_ = 0, k_ = 0, m_ = 0;
  bool paired_ = false;
  std::vector<double> dbl_;
  std::vector<float> flt_;
};

double InteriorMargin(const Polytope& p, const Eigen::VectorXd& y) {
  if (p.constraint_count() == 0) return kInf;
  return (p.b() - p.A() * y).minCoeff();
}

// Facet-reduced copy: keep rows active at >= d vertices (deduplicated by
// their vertex sets, so stacked near-identical rows collapse to one facet).
Polytope ReducePolytope(const Polytope& p, const VertexSet& vs) {
  const int d = p.dim();
  std::map<int, std::vector<int>> groups;
  for (int v = 0; v < vs.size(); ++v) {
    for (int id : vs.active[v]) groups[id].push_back(v);
  }
  std::set<std::vector<int>> seen;
  std::vector<int> keep;
  for (auto& [id, members] : groups) {
    if (members.size() < static_cast<size_t>(d)) continue;
    std::sort(members.begin(), members.end());
    if (seen.insert(members).second) keep.push_back(id);
  }
  if (keep.empty()) return p;
  Eigen::MatrixXd A(keep.size(), d);
  Eigen::VectorXd b(keep.size());
  for (size_t r = 0; r < keep.size(); ++r) {
    A.row(r) = p.A().row(keep[r]);
    b[r] = p.b()[keep[r]];
  }
  return Polytope(std::move(A), std::move(b));
}

BoundingBox BoxFromVertices(const VertexSet& vs, int d) {
  BoundingBox box{Eigen::VectorXd::Constant(d, kInf),
                  Eigen::VectorXd::Constant(d, kNegInf)};
  for (const auto& v : vs.vertices) {
    box.lo = box.lo.cwiseMin(v);
    box.hi = box.hi.cwiseMax(v);
  }
  return box;
}

Polytope BuildLevelPolytope(const DirectionSet& dirs,
                            const Eigen::VectorXd& quantiles,
                            std::optional<double> box_radius,
                            bool bounded_hint) {
  Polytope p(dirs.vectors(), quantiles);
  if (box_radius) {
    p = ClipToBox(p, *box_radius);
  } else if (bounded_hint) {
    p.set_bounded_hint(true);
  }
  return p;
}

// Paired direction sets of full rank positively span the space, so every
// level set is bounded without a box clip.
bool PairedFullRank(const DirectionSet& dirs) {
  if (!dirs.sign_paired()) return false;
  const Eigen::MatrixXd gram =
      dirs.vectors().transpose() * dirs.vectors();  // d x d
  return Eigen::FullPivLU<Eigen::MatrixXd>(gram).rank() == dirs.dim();
}

}  // namespace

Polytope LevelSet(const Dataset& x, const DirectionSet& dirs, int level) {
  if (dirs.dim() != x.dim()) throw ParameterError("level set dimension mismatch");
  if (level < 1) throw ParameterError("level must be >= 1");
  if (level > x.n()) return Polytope::EmptySentinel(x.dim());
  Eigen::VectorXd b(dirs.count());
  std::vector<double> column(x.n());
  const int block = 4096;  // bounds the transient projection matrix
  for (int j0 = 0; j0 < dirs.count(); j0 += block) {
    const int bs = std::min(block, dirs.count() - j0);
    const Eigen::MatrixXd proj =
        x.points() * dirs.vectors().middleRows(j0, bs).transpose();
    for (int c = 0; c < bs; ++c) {
      for (int i = 0; i < x.n(); ++i) column[i] = proj(i, c);
      std::nth_element(column.begin(), column.begin() + (level - 1),
                       column.end(), std::greater<double>());
      b[j0 + c] = column[level - 1];
    }
  }
  return Polytope(dirs.vectors(), std::move(b));
}

const Polytope& LevelSetFamily::level(int l) const {
  auto it = levels_.find(l);
  if (it == levels_.end()) throw ParameterError("level not in family");
  return it->second;
}

Polytope& LevelSetFamily::mutable_level(int l) {
  auto it = levels_.find(l);
  if (it == levels_.end()) throw ParameterError("level not in family");
  return it->second;
}

double LevelSetFamily::LogVolume(int l) const {
  if (levels_.empty() || l < levels_.begin()->first) {
    return reference_log_volume_;
  }
  auto it = volumes_.find(l);
  return it == volumes_.end() ? kNegInf : it->second.log_volume;
}

int LevelSetFamily::min_level() const {
  return levels_.empty() ? 1 : levels_.begin()->first;
}

int LevelSetFamily::max_level() const {
  return levels_.empty() ? 0 : levels_.rbegin()->first;
}

void LevelSetFamily::AddLevel(int l, Polytope p, VolumeEstimate v) {
  levels_.insert_or_assign(l, std::move(p));
  volumes_.insert_or_assign(l, v);
}

void LevelSetFamily::SetVolume(int l, VolumeEstimate v) {
  volumes_.insert_or_assign(l, v);
}

bool LevelSetFamily::pac_mode() const {
  for (const auto& [l, v] : volumes_) {
    if (v.mode == VolumeMode::kPac) return true;
  }
  return false;
}

double LevelSetFamily::pac_eta() const {
  double eta = 0.0;
  for (const auto& [l, v] : volumes_) {
    if (v.mode == VolumeMode::kPac) eta = std::max(eta, v.eta);
  }
  return eta;
}

LevelSetFamily BuildLevelSetFamilyExact(const Dataset& x,
                                        const DirectionSet& dirs,
                                        std::optional<double> box_radius,
                                        int min_level,
                                        const ExactFamilyOptions& opts) {
  if (dirs.dim() != x.dim()) throw ParameterError("family dimension mismatch");
  if (min_level < 1) throw ParameterError("min level must be >= 1");
  const int n = x.n();
  const int d = x.dim();
  const int max_level = n / 2;

  LevelSetFamily family(dirs, box_radius);
  if (box_radius) {
    family.set_reference_log_volume(d * std::log(2.0 * *box_radius));
  }
  if (max_level < min_level) return family;

  const QuantileTable table(x, dirs, opts.memory_budget_mb);
  const bool bounded_hint = PairedFullRank(dirs);
  const bool keep_full = dirs.count() <= kStoreFullRowCap;
  family.set_levels_reduced(!keep_full);

  // Interior candidate chain: the previous level's vertex centroid, then the
  // coordinate-wise median, then a Chebyshev LP.
  Eigen::VectorXd median_point(d);
  {
    std::vector<double> col(n);
    for (int j = 0; j < d; ++j) {
      for (int i = 0; i < n; ++i) col[i] = x.points()(i, j);
      std::nth_element(col.begin(), col.begin() + n / 2, col.end());
      median_point[j] = col[n / 2];
    }
    if (box_radius) {
      const double clamp = *box_radius * (1.0 - 1e-9);
      median_point = median_point.cwiseMax(-clamp).cwiseMin(clamp);
    }
  }

  std::optional<Eigen::VectorXd> prev_centroid;
  int degenerate_from = max_level + 1;
  for (int l = min_level; l <= max_level; ++l) {
    Polytope p = BuildLevelPolytope(dirs, table.LevelOffsets(l), box_radius,
                                    bounded_hint);
    const double scale =
        1.0 + (p.constraint_count() > 0 ? p.b().cwiseAbs().maxCoeff() : 0.0);
    const double margin = 1e-9 * scale;

    Eigen::VectorXd interior;
    bool have_interior = false;
    if (prev_centroid && InteriorMargin(p, *prev_centroid) > margin) {
      interior = *prev_centroid;
      have_interior = true;
    } else if (InteriorMargin(p, median_point) > margin) {
      interior = median_point;
      have_interior = true;
    } else {
      try {
        const ChebyshevResult cheb = ChebyshevCenter(p.A(), p.b());
        if (cheb.radius > margin) {
          interior = cheb.center;
          have_interior = true;
        }
      } catch (const EmptyPolytopeError&) {
      }
    }
    if (!have_interior) {
      degenerate_from = l;
      break;
    }
    p.set_interior_point(interior);

    const VertexSet vs = EnumerateVertices(p);
    const double log_volume = LogVolumeFromVertices(p, vs);
    if (log_volume == kNegInf) {
      degenerate_from = l;
      break;
    }
    Polytope stored = keep_full ? p : ReducePolytope(p, vs);
    stored.set_bbox(BoxFromVertices(vs, d));
    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(d);
    for (const auto& v : vs.vertices) centroid += v;
    centroid /= static_cast<double>(vs.size());
    if (InteriorMargin(stored, centroid) > 1e-9) {
      stored.set_interior_point(centroid);
    }
    prev_centroid = centroid;
    family.AddLevel(l, std::move(stored),
                    VolumeEstimate{.log_volume = log_volume,
                                   .mode = VolumeMode::kExact});
  }
  // Everything at or past the first degenerate level has measure zero; keep
  // the levels so racing can skip them.
  for (int l = degenerate_from; l <= max_level; ++l) {
    family.AddLevel(l, Polytope::EmptySentinel(d),
                    VolumeEstimate{.log_volume = kNegInf,
                                   .mode = VolumeMode::kExact});
  }
  // Exact volumes are non-increasing in the level; tolerate rounding only.
  double prev = kInf;
  for (const auto& [l, v] : family.volumes()) {
    if (v.log_volume > prev + 1e-6) {
      throw Error("level volume monotonicity violated");
    }
    prev = std::min(prev, v.log_volume);
  }
  if (!box_radius) {
    family.set_reference_log_volume(family.LogVolume(min_level));
  }
  return family;
}

LevelSetFamily BuildLevelSetFamilyPac(const Dataset& x,
                                      const DirectionSet& dirs,
                                      std::optional<double> box_radius,
                                      RandomSource& rng, int min_level,
                                      const PacFamilyOptions& opts) {
  if (dirs.dim() != x.dim()) throw ParameterError("family dimension mismatch");
  if (min_level < 1) throw ParameterError("min level must be >= 1");
  const int n = x.n();
  const int d = x.dim();
  const int max_level = n / 2;
  const long steps = opts.steps > 0 ? opts.steps : DefaultHitAndRunSteps(d);
  const long base_samples =
      opts.base_samples > 0
          ? opts.base_samples
          : std::max<long>(4 * opts.samples_per_level, 20000);

  LevelSetFamily family(dirs, box_radius);
  if (box_radius) {
    family.set_reference_log_volume(d * std::log(2.0 * *box_radius));
  }
  if (max_level < min_level) return family;

  const QuantileTable table(x, dirs, /*budget_mb=*/2048);
  const bool bounded_hint = PairedFullRank(dirs);

  std::optional<Eigen::VectorXd> prev_interior;
  int degenerate_from = max_level + 1;
  for (int l = min_level; l <= max_level; ++l) {
    Polytope p = BuildLevelPolytope(dirs, table.LevelOffsets(l), box_radius,
                                    bounded_hint);
    const double margin =
        1e-9 * (1.0 + p.b().cwiseAbs().maxCoeff());
    Eigen::VectorXd interior;
    bool have_interior = false;
    if (prev_interior && InteriorMargin(p, *prev_interior) > margin) {
      interior = *prev_interior;
      have_interior = true;
    } else {
      try {
        const ChebyshevResult cheb = ChebyshevCenter(p.A(), p.b());
        if (cheb.radius > margin) {
          interior = cheb.center;
          have_interior = true;
        }
      } catch (const EmptyPolytopeError&) {
      }
    }
    if (!have_interior) {
      degenerate_from = l;
      break;
    }
    p.set_interior_point(interior);
    prev_interior = interior;
    family.AddLevel(l, std::move(p),
                    VolumeEstimate{.log_volume = kNegInf,
                                   .mode = VolumeMode::kPac,
                                   .eta = opts.declared_eta,
                                   .beta = opts.declared_beta});
  }
  for (int l = degenerate_from; l <= max_level; ++l) {
    family.AddLevel(l, Polytope::EmptySentinel(d),
                    VolumeEstimate{.log_volume = kNegInf,
                                   .mode = VolumeMode::kPac,
                                   .eta = opts.declared_eta,
                                   .beta = opts.declared_beta});
  }
  if (degenerate_from == min_level) {
    if (!box_radius) family.set_reference_log_volume(kNegInf);
    return family;  // nothing to calibrate
  }

  // Base volume: rejection counting of the outermost level against its own
  // tight bounding box. The box LPs also detect unbounded level sets (e.g. a
  // direction set that fails to positively span).
  {
    Polytope& outer = family.mutable_level(min_level);
    if (!outer.bbox()) outer.set_bbox(ComputeBoundingBox(outer));
    const BoundingBox& box = *outer.bbox();
    long hits = 0;
    Eigen::VectorXd y(d);
    for (long s = 0; s < base_samples; ++s) {
      for (int j = 0; j < d; ++j) {
        y[j] = box.lo[j] + (box.hi[j] - box.lo[j]) * rng.NextUniform();
      }
      if (outer.Contains(y)) ++hits;
    }
    if (hits == 0) {
      throw ResourceError("base volume calibration observed zero hits");
    }
    VolumeEstimate base{.log_volume = box.LogVolume() +
                                      std::log(static_cast<double>(hits) /
                                               base_samples),
                        .mode = VolumeMode::kPac,
                        .eta = opts.declared_eta,
                        .beta = opts.declared_beta};
    base.samples_per_phase.push_back(base_samples);
    family.SetVolume(min_level, base);

    auto estimates = NestedVolumeEstimates(
        family, base.log_volume, opts.samples_per_level, steps, rng,
        opts.declared_eta, opts.declared_beta);
    for (const auto& [l, v] : estimates) family.SetVolume(l, v);
  }
  if (!box_radius) {
    family.set_reference_log_volume(family.LogVolume(min_level));
  }
  return family;
}

std::map<int, VolumeEstimate> NestedVolumeEstimates(
    const LevelSetFamily& family, double base_log_volume,
    long samples_per_level, long steps, RandomSource& rng, double declared_eta,
    double declared_beta) {
  if (samples_per_level < 1) throw ParameterError("need samples_per_level >= 1");
  if (steps < 1) throw ParameterError("need steps >= 1");
  std::map<int, VolumeEstimate> out;
  if (family.levels().empty()) return out;

  auto make = [&](double log_vol) {
    return VolumeEstimate{.log_volume = log_vol,
                          .mode = VolumeMode::kPac,
                          .eta = declared_eta,
                          .beta = declared_beta};
  };
  const long thin = std::max<long>(1, steps / 20);

  auto it = family.levels().begin();
  out[it->first] = make(base_log_volume);
  double log_acc = base_log_volume;
  bool truncated = false;
  for (; std::next(it) != family.levels().end(); ++it) {
    const auto& [l, outer] = *it;
    const auto& [l_next, inner] = *std::next(it);
    if (truncated || outer.is_empty_sentinel() || inner.is_empty_sentinel() ||
        log_acc == kNegInf) {
      VolumeEstimate v = make(kNegInf);
      v.zero_hit = truncated;
      out[l_next] = v;
      continue;
    }
    if (outer.constraint_count() == inner.constraint_count() &&
        (outer.A() - inner.A()).cwiseAbs().maxCoeff() == 0.0) {
      if (((inner.b() - outer.b()).array() >
           1e-9 * (1.0 + outer.b().cwiseAbs().maxCoeff())).any()) {
        throw NestingError("inner level is not contained in its outer level");
      }
    }
    Eigen::VectorXd start;
    if (outer.interior_point()) {
      start = *outer.interior_point();
    } else {
      const ChebyshevResult cheb = ChebyshevCenter(outer.A(), outer.b());
      start = cheb.center;
    }
    HitAndRunState chain(outer, start);
    for (long s = 0; s < steps; ++s) chain.Step(rng);
    long hits = 0;
    for (long s = 0; s < samples_per_level; ++s) {
      for (long t = 0; t < thin; ++t) chain.Step(rng);
      if (inner.Contains(chain.point())) ++hits;
    }
    if (hits == 0) {
      VolumeEstimate v = make(kNegInf);
      v.zero_hit = true;
      out[l_next] = v;
      truncated = true;
      continue;
    }
    log_acc += std::log(static_cast<double>(hits) / samples_per_level);
    VolumeEstimate v = make(log_acc);
    v.samples_per_phase.push_back(samples_per_level);
    out[l_next] = v;
  }
  return out;
}

}  // namespace tukeydp
