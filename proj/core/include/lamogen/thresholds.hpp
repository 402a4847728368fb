#pragma once

#include <string>

namespace lamogen {

// All detection cutoffs. Defaults are the published values; the x cutoffs are
// written for left-side joints (positive x = body left) and are mirrored for
// right-side joints by flipping the sign of the displacement.
//
// Units: direction/level cutoffs are pelvis-relative displacements in meters;
// hold thresholds are end-effector speeds in meters per frame; effort bins
// are pelvis speeds in meters per second.
struct ThresholdConfig {
  // lower body (feet)
  double lower_x_cross = -0.1; // a < cross -> side crossed over
  double lower_x_out = 0.3;    // a > out   -> own side
  double lower_y_fwd = -0.15;  // b < fwd   -> F
  double lower_y_back = -0.05; // b > back  -> B
  double lower_z_lo_min = -0.8; // lo_min < c < 0 -> Lo
  double lower_z_hi = 0.0;      // c > hi   -> Hi (else Mi)

  // upper body (hands, elbows)
  double upper_x_cross = -0.1;
  double upper_x_out = 0.3;
  double upper_y_fwd = -0.2;
  double upper_y_back = 0.1;
  double upper_z_lo = -0.2; // c < lo -> Lo
  double upper_z_hi = 0.1;  // c > hi -> Hi

  // hold segmentation, meters per frame; speed < threshold is hold
  double hold_foot = 0.015;
  double hold_hand = 0.0005;

  double bend_bin_deg = 30.0;   // 6 bins
  double orient_bin_deg = 45.0; // 8 bins

  // moving effort, meters per second
  double effort_b1 = 0.1;
  double effort_b2 = 0.5;
  double effort_b3 = 1.0;
  double effort_b4 = 2.0;

  int min_run = 2; // segmentation de-flicker, frames

  static ThresholdConfig defaults() { return ThresholdConfig{}; }
};

// key=value config file, one pair per line, '#' comments.
ThresholdConfig load_thresholds(const std::string& text);
std::string save_thresholds(const ThresholdConfig& cfg);

} // namespace lamogen
