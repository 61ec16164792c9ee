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
#ifndef TUKEY_GEOMETRY_H_
#define TUKEY_GEOMETRY_H_

#include <map>
#include <optional>

#include "tukey/dataset.h"
#include "tukey/depth.h"
#include "tukey/lp.h"
#include "tukey/polytope.h"
#include "tukey/random.h"

namespace tukeydp {

// ---------------------------------------------------------------------------
// Vertex enumeration and exact volume
// ---------------------------------------------------------------------------

// H-representation to V-representation. Requires a bounded polytope and
// dim <= kExactDepthDimensionCap. Returns the empty set when the polytope is
// empty or lower-dimensional. Uses the cached interior point when present.
//
// d = 1 reads the interval off the constraints. d = 2 dualizes around an
// interior point and takes a convex hull, so it scales to very large
// constraint counts. d = 3, 4 filter constraints by ray shooting from the
// interior point, enumerate constraint d-subsets, and verify against the
// full constraint set.
VertexSet EnumerateVertices(const Polytope& p);

// Log volume of the simplicial fan over a facet decomposition: facets are
// recovered by grouping vertices on their active constraints, the apex is
// the vertex centroid. -inf for empty or degenerate inputs.
double LogVolumeFromVertices(const Polytope& p, const VertexSet& vs);

// Exact volume via vertex enumeration + triangulation.
VolumeEstimate ExactVolume(const Polytope& p);

// Largest inscribed ball center (see lp.h); errors on empty/unbounded input.
ChebyshevResult ChebyshevCenter(const Polytope& p);

// Tight axis-aligned bounding box via 2d support LPs.
BoundingBox ComputeBoundingBox(const Polytope& p);

// ---------------------------------------------------------------------------
// Uniform sampling
// ---------------------------------------------------------------------------

inline long DefaultHitAndRunSteps(int dim) {
  const long cubic = 10L * dim * dim * dim;
  return cubic > 1000 ? cubic : 1000;
}

// Exactly uniform sample by rejection from the bounding box. The box is
// taken from the polytope cache or computed. Throws ThinPolytopeError after
// max_rejections consecutive misses (hit-and-run is the usual remedy).
Eigen::VectorXd RejectionSampleUniform(const Polytope& p, RandomSource& rng,
                                       long max_rejections = 1000000);

// One approximate-uniform sample after `steps` hit-and-run steps from a
// strictly interior start. Every intermediate point stays feasible.
Eigen::VectorXd HitAndRunChain(const Polytope& p, const Eigen::VectorXd& start,
                               long steps, RandomSource& rng);

// ---------------------------------------------------------------------------
// Tukey upper-level sets
// ---------------------------------------------------------------------------

// The polytope {y : depth of y under dirs >= level}: one constraint
// <y, v_j> <= q_j per direction, q_j the level-th largest projection of the
// data onto v_j. level > n yields the empty sentinel.
Polytope LevelSet(const Dataset& x, const DirectionSet& dirs, int level);

// Nested family of upper-level sets for levels t_min .. floor(n/2), with
// log volumes and the metadata the mechanisms need. Degenerate levels
// (no interior) carry an empty-sentinel polytope and -inf volume; they stay
// in the family so racing skips them.
class LevelSetFamily {
 public:
  LevelSetFamily(DirectionSet directions, std::optional<double> box_clip)
      : directions_(std::move(directions)), box_clip_(box_clip) {}

  const DirectionSet& directions() const { return directions_; }
  std::optional<double> box_clip() const { return box_clip_; }

  const std::map<int, Polytope>& levels() const { return levels_; }
  const std::map<int, VolumeEstimate>& volumes() const { return volumes_; }

  const Polytope& level(int l) const;
  Polytope& mutable_level(int l);
  bool has_level(int l) const { return levels_.count(l) > 0; }
  // Log volume for any index: indices at or below the constructed range
  // resolve to the unrestricted reference volume; above it, -inf.
  double LogVolume(int l) const;

  int min_level() const;
  int max_level() const;

  // Reference volume standing in for V_{>=j}, j <= 0: the clip box volume
  // when clipped, otherwise the outermost constructed level.
  double reference_log_volume() const { return reference_log_volume_; }
  void set_reference_log_volume(double v) { reference_log_volume_ = v; }

  void AddLevel(int l, Polytope p, VolumeEstimate v);
  void SetVolume(int l, VolumeEstimate v);

  // True when any stored volume is a pac estimate; eta of the pac contract.
  bool pac_mode() const;
  double pac_eta() const;

  // True when stored polytopes are facet-reduced; exact membership then
  // requires re-materializing the level set from data and directions.
  bool levels_reduced() const { return levels_reduced_; }
  void set_levels_reduced(bool reduced) { levels_reduced_ = reduced; }

 private:
  DirectionSet directions_;
  std::optional<double> box_clip_;
  std::map<int, Polytope> levels_;
  std::map<int, VolumeEstimate> volumes_;
  bool levels_reduced_ = false;
  double reference_log_volume_ = kNegInf;
};

struct ExactFamilyOptions {
  // Memory cap for the per-direction sorted projection table.
  long memory_budget_mb = 2048;
};

struct PacFamilyOptions {
  long samples_per_level = 2000;
  long steps = 0;           // 0: max(1000, 10 d^3)
  long base_samples = 0;    // 0: max(4 * samples_per_level, 20000)
  // Declared PAC contract recorded on the estimates. This is a configuration
  // assertion, not a proof; results carry a heuristic-privacy audit flag.
  double declared_eta = 0.0;
  double declared_beta = 0.0;
};

// Builds levels min_level .. floor(n/2) with exact volumes. Directions with
// the paired [U; -U] layout share one sorted projection table per axis.
LevelSetFamily BuildLevelSetFamilyExact(const Dataset& x,
                                        const DirectionSet& dirs,
                                        std::optional<double> box_radius,
                                        int min_level = 1,
                                        const ExactFamilyOptions& opts = {});

// Builds the same family with PAC volumes: the outermost level is calibrated
// by rejection counting against its bounding box, deeper levels by nested
// hit-and-run ratio estimation.
LevelSetFamily BuildLevelSetFamilyPac(const Dataset& x,
                                      const DirectionSet& dirs,
                                      std::optional<double> box_radius,
                                      RandomSource& rng, int min_level = 1,
                                      const PacFamilyOptions& opts = {});

// Estimates volumes for every level of `family` relative to the outermost
// one: log V(l+1) = log V(l) + log(fraction of approximate-uniform samples
// of level l that land in level l+1). base_log_volume is the volume of the
// outermost (smallest-index) level. One chain per level: burn-in of `steps`,
// then samples thinned by steps/20. Zero-hit ratios produce -inf with a
// flag; a rowwise nesting violation throws NestingError.
std::map<int, VolumeEstimate> NestedVolumeEstimates(
    const LevelSetFamily& family, double base_log_volume,
    long samples_per_level, long steps, RandomSource& rng,
    double declared_eta = 0.0, double declared_beta = 0.0);

}  // namespace tukeydp

#endif  // TUKEY_GEOMETRY_H_
