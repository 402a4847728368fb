#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lamogen/concept.hpp"
#include "lamogen/instances.hpp"
#include "lamogen/motion.hpp"
#include "lamogen/thresholds.hpp"

namespace lamogen {

// Representative pelvis-relative end-effector offset for one conceptual cell.
// Targets start from fixed per-axis placements and are pulled toward the
// closest in-cell point until within 95% of limb reach, so that every target
// reproduces its own cell through the frame classifiers (fixed point).
Vec3 cell_target(bool lower_body, bool right_side, const ConceptTuple& cell,
                 const Skeleton& skeleton, const ThresholdConfig& cfg);

// In-cell axis bounds (with safety margin) used for target construction and
// for reference-guided targets in granularity experiments.
struct CellBox {
  Vec3 lo;
  Vec3 hi;

  Vec3 clamp(const Vec3& p) const;
};
CellBox cell_box(bool lower_body, bool right_side, const ConceptTuple& cell,
                 const ThresholdConfig& cfg);

struct DecodeOptions {
  double step_length = 0.6;   // pelvis travel per directed support move
  double orbit_radius = 0.012;
  // Optional reference motion: each target is pulled a (1 - 1/granularity)
  // fraction toward the reference interval mean, clamped into the detected
  // cell. Granularity 0 (or no reference) keeps the fixed cell targets;
  // granularity 1 equals them; higher values track the reference.
  const MotionSequence* reference = nullptr;
  int granularity = 0;
};

struct DecodeResult {
  MotionSequence motion;
  std::vector<std::string> warnings; // unreachable targets, clamped
};

// Kinematic inverse of detection: piecewise end-effector trajectories through
// the cell targets, two-bone limbs, pelvis translation integrated from the
// support directions.
DecodeResult decode(const InstanceSequence& seq, const Skeleton& skeleton,
                    const DecodeOptions& options = {});

// Deterministic fixtures built from concept scripts and decoded.
enum class Side : uint8_t { L, R };
enum class WalkDirection : uint8_t { Forward, Backward };

ConceptScript walk_script(int steps, Side side_first, double step_seconds,
                          WalkDirection direction = WalkDirection::Forward,
                          double lead_hold_seconds = 0.4);
ConceptScript arm_wave_script(Side hand, int cycles, double phase_seconds = 0.5);
// Walk with the hand waving throughout; compositional fixture.
ConceptScript walk_and_wave_script(int steps, Side side_first, double step_seconds, Side hand);

MotionSequence synth_walk(int steps, Side side_first, double step_seconds, int fps,
                          WalkDirection direction = WalkDirection::Forward);
MotionSequence synth_arm_wave(Side hand, int cycles, int fps);

// Coherent random script: dynamic moves optionally followed by their matching
// holds, all part durations equalized. Deterministic in the seed.
ConceptScript random_script(uint64_t seed);

// The canonical standing pose (all parts at their rest cells).
Pose rest_pose(const Skeleton& skeleton);

} // namespace lamogen
