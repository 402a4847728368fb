#pragma once

#include <array>
#include <span>
#include <vector>

#include "lamogen/instances.hpp"
#include "lamogen/motion.hpp"
#include "lamogen/thresholds.hpp"

namespace lamogen {

struct Interval {
  int start; // inclusive
  int end;   // exclusive
  bool hold;

  int length() const { return end - start; }
  bool operator==(const Interval&) const = default;
};

// Per body-part group, the hold/dynamic partition of [0, T).
struct IntervalSegmentation {
  std::array<std::vector<Interval>, kGroupCount> groups;

  const std::vector<Interval>& of(Group g) const { return groups[static_cast<int>(g)]; }
};

IntervalSegmentation segment_intervals(const MotionSequence& seq, const ThresholdConfig& cfg);

// Frame symbols for the 33 attributes that are not Hold; Hold comes from the
// segmentation. Cells at hold-attribute positions are left 0 and unused.
using FrameSymbols = std::array<uint8_t, kAttrCount>;

// Symbol extraction for one frame of canonicalized motion. `prev` may be null
// for the first frame (effort then reads 0 velocity); `reference_yaw_deg` is
// the sequence's frame-0 hip-line yaw, the anchor for orientation bins.
FrameSymbols extract_frame_symbols(const CanonicalPose& pose, const CanonicalPose* prev,
                                   double reference_yaw_deg, int fps,
                                   const ThresholdConfig& cfg);

// The published per-axis classifiers, exposed for boundary tests. Displacement
// rules are written for left-side joints; right-side joints negate `a` and
// swap the L/R labels.
DirLMR classify_lmr(double a, bool lower_body, bool right_side, const ThresholdConfig& cfg);
DirBMF classify_bmf(double b, bool lower_body, const ThresholdConfig& cfg);
Level classify_level(double c, bool lower_body, const ThresholdConfig& cfg);
uint8_t classify_bend(double angle_deg, const ThresholdConfig& cfg);
uint8_t classify_orient(double angle_deg, const ThresholdConfig& cfg);
uint8_t classify_effort(double speed, const ThresholdConfig& cfg);

// Modal value over one interval's frame symbols; ties break to the value
// whose first occurrence is earliest.
uint8_t aggregate_mode(std::span<const uint8_t> values);

// Full pipeline: segmentation, frame-wise extraction, interval aggregation.
InstanceSequence detect(const MotionSequence& seq, const ThresholdConfig& cfg);

} // namespace lamogen
