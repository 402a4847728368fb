#include "lamogen/detect.hpp"

#include <algorithm>
#include <cmath>

namespace lamogen {

namespace {

bool is_right_side(Joint j) {
  switch (j) {
    case Joint::RShoulder:
    case Joint::RElbow:
    case Joint::RHand:
    case Joint::RHip:
    case Joint::RKnee:
    case Joint::RFoot: return true;
    default: return false;
  }
}

// Reference joint whose speed drives a group's hold/dynamic segmentation.
// The four main groups follow their end-effector in the canonical (pelvis
// relative) frame; Support-Both follows the world pelvis.
struct SegmentSource {
  Joint joint;
  bool world;
  double ThresholdConfig::*threshold;
};

SegmentSource segment_source(Group g) {
  switch (g) {
    case Group::SupportL: return {Joint::LFoot, false, &ThresholdConfig::hold_foot};
    case Group::SupportR: return {Joint::RFoot, false, &ThresholdConfig::hold_foot};
    case Group::UpperL: return {Joint::LHand, false, &ThresholdConfig::hold_hand};
    case Group::UpperR: return {Joint::RHand, false, &ThresholdConfig::hold_hand};
    case Group::SupportBoth: return {Joint::Pelvis, true, &ThresholdConfig::hold_foot};
    case Group::Torso: return {Joint::Spine2, false, &ThresholdConfig::hold_foot};
  }
  return {Joint::Pelvis, true, &ThresholdConfig::hold_foot};
}

std::vector<Interval> runs_from_labels(const std::vector<bool>& hold) {
  std::vector<Interval> runs;
  int t_count = static_cast<int>(hold.size());
  int start = 0;
  for (int t = 1; t <= t_count; ++t) {
    if (t == t_count || hold[t] != hold[start]) {
      runs.push_back(Interval{start, t, hold[start]});
      start = t;
    }
  }
  return runs;
}

// Flip runs shorter than min_run into their neighbor until stable. Merging a
// run into its predecessor (or successor, at the sequence head) keeps the
// partition and restores alternation.
std::vector<Interval> merge_short_runs(std::vector<bool> hold, int min_run) {
  for (;;) {
    auto runs = runs_from_labels(hold);
    if (runs.size() <= 1) return runs;
    bool changed = false;
    for (size_t i = 0; i < runs.size(); ++i) {
      if (runs[i].length() >= min_run) continue;
      bool target = i > 0 ? runs[i - 1].hold : runs[i + 1].hold;
      for (int t = runs[i].start; t < runs[i].end; ++t) hold[t] = target;
      changed = true;
      break;
    }
    if (!changed) return runs;
  }
}

double normalize_deg(double deg) {
  while (deg > 180.0) deg -= 360.0;
  while (deg <= -180.0) deg += 360.0;
  return deg;
}

} // namespace

DirLMR classify_lmr(double a, bool lower_body, bool right_side, const ThresholdConfig& cfg) {
  double cross = lower_body ? cfg.lower_x_cross : cfg.upper_x_cross;
  double out = lower_body ? cfg.lower_x_out : cfg.upper_x_out;
  double eff = right_side ? -a : a;
  DirLMR own = right_side ? DirLMR::R : DirLMR::L;
  DirLMR crossed = right_side ? DirLMR::L : DirLMR::R;
  if (eff < cross) return crossed;
  if (eff > out) return own;
  return DirLMR::M;
}

DirBMF classify_bmf(double b, bool lower_body, const ThresholdConfig& cfg) {
  double fwd = lower_body ? cfg.lower_y_fwd : cfg.upper_y_fwd;
  double back = lower_body ? cfg.lower_y_back : cfg.upper_y_back;
  if (b < fwd) return DirBMF::F;
  if (b > back) return DirBMF::B;
  return DirBMF::M;
}

Level classify_level(double c, bool lower_body, const ThresholdConfig& cfg) {
  if (lower_body) {
    // Published rule, kept verbatim: 0 > c > -0.8 is Lo, c > 0 is Hi,
    // otherwise Mi -- a fully extended leg (c <= -0.8) reads Mi.
    if (c > cfg.lower_z_hi) return Level::Hi;
    if (c < cfg.lower_z_hi && c > cfg.lower_z_lo_min) return Level::Lo;
    return Level::Mi;
  }
  if (c < cfg.upper_z_lo) return Level::Lo;
  if (c > cfg.upper_z_hi) return Level::Hi;
  return Level::Mi;
}

uint8_t classify_bend(double angle_deg, const ThresholdConfig& cfg) {
  int bin = static_cast<int>(std::floor(angle_deg / cfg.bend_bin_deg));
  return static_cast<uint8_t>(std::clamp(bin, 0, 5));
}

uint8_t classify_orient(double angle_deg, const ThresholdConfig& cfg) {
  long bin = std::lround(angle_deg / cfg.orient_bin_deg);
  return static_cast<uint8_t>(((bin % 8) + 8) % 8);
}

uint8_t classify_effort(double speed, const ThresholdConfig& cfg) {
  if (speed <= cfg.effort_b1) return 0;
  if (speed <= cfg.effort_b2) return 1;
  if (speed <= cfg.effort_b3) return 2;
  if (speed <= cfg.effort_b4) return 3;
  return 4;
}

uint8_t aggregate_mode(std::span<const uint8_t> values) {
  if (values.empty()) fail(Errc::empty_interval, "cannot aggregate an empty interval");
  int counts[16] = {0};
  int max_count = 0;
  for (uint8_t v : values) max_count = std::max(max_count, ++counts[v & 15]);
  // ties break to the value occurring earliest in the interval
  for (uint8_t v : values)
    if (counts[v & 15] == max_count) return v;
  return values[0];
}

IntervalSegmentation segment_intervals(const MotionSequence& seq, const ThresholdConfig& cfg) {
  int t_count = seq.frame_count();
  if (t_count < 2) fail(Errc::too_short, "segmentation needs at least 2 frames");
  auto canon = canonicalize_sequence(seq);

  IntervalSegmentation out;
  for (int gi = 0; gi < kGroupCount; ++gi) {
    Group g = static_cast<Group>(gi);
    SegmentSource src = segment_source(g);
    double threshold = cfg.*(src.threshold);
    std::vector<bool> hold(t_count);
    for (int t = 1; t < t_count; ++t) {
      Vec3 cur = src.world ? joint(seq.frames[t], src.joint) : joint(canon[t].joints, src.joint);
      Vec3 prev = src.world ? joint(seq.frames[t - 1], src.joint) : joint(canon[t - 1].joints, src.joint);
      hold[t] = (cur - prev).norm() < threshold;
    }
    hold[0] = hold[1];
    out.groups[gi] = merge_short_runs(std::move(hold), cfg.min_run);
  }
  return out;
}

FrameSymbols extract_frame_symbols(const CanonicalPose& pose, const CanonicalPose* prev,
                                   double reference_yaw_deg, int fps,
                                   const ThresholdConfig& cfg) {
  FrameSymbols out{};
  const Pose& p = pose.joints;
  const Vec3 facing{0.0, -1.0, 0.0};
  const Vec3 up{0.0, 0.0, 1.0};
  const Vec3 torso_down = (joint(p, Joint::Spine2) * -1.0).normalized();

  auto direction_cells = [&](Joint j, bool lower, AttrId lmr, AttrId bmf, AttrId level) {
    const Vec3& d = joint(p, j);
    out[lmr] = static_cast<uint8_t>(classify_lmr(d.x, lower, is_right_side(j), cfg));
    out[bmf] = static_cast<uint8_t>(classify_bmf(d.y, lower, cfg));
    out[level] = static_cast<uint8_t>(classify_level(d.z, lower, cfg));
  };
  auto bend_of = [&](Joint parent, Joint mid, Joint tip) {
    return classify_bend(angle_between_deg(joint(p, mid) - joint(p, parent),
                                           joint(p, tip) - joint(p, mid)),
                         cfg);
  };
  auto bend_from_torso = [&](Joint root, Joint tip) {
    return classify_bend(angle_between_deg(torso_down, joint(p, tip) - joint(p, root)), cfg);
  };

  // feet and hands: conceptual direction and level
  direction_cells(Joint::LFoot, true, attr_id(Group::SupportL, 0), attr_id(Group::SupportL, 1),
                  attr_id(Group::SupportL, 2));
  direction_cells(Joint::RFoot, true, attr_id(Group::SupportR, 0), attr_id(Group::SupportR, 1),
                  attr_id(Group::SupportR, 2));
  direction_cells(Joint::LHand, false, attr_id(Group::UpperL, 0), attr_id(Group::UpperL, 1),
                  attr_id(Group::UpperL, 2));
  direction_cells(Joint::RHand, false, attr_id(Group::UpperR, 0), attr_id(Group::UpperR, 1),
                  attr_id(Group::UpperR, 2));
  // elbows: detail direction and level
  direction_cells(Joint::LElbow, false, attr_id(Group::UpperL, 6), attr_id(Group::UpperL, 7),
                  attr_id(Group::UpperL, 8));
  direction_cells(Joint::RElbow, false, attr_id(Group::UpperR, 6), attr_id(Group::UpperR, 7),
                  attr_id(Group::UpperR, 8));

  // bends between adjacent segments
  out[attr_id(Group::SupportL, 3)] = bend_of(Joint::LHip, Joint::LKnee, Joint::LFoot);
  out[attr_id(Group::SupportR, 3)] = bend_of(Joint::RHip, Joint::RKnee, Joint::RFoot);
  out[attr_id(Group::SupportL, 4)] = bend_from_torso(Joint::LHip, Joint::LKnee);
  out[attr_id(Group::SupportR, 4)] = bend_from_torso(Joint::RHip, Joint::RKnee);
  out[attr_id(Group::UpperL, 3)] = bend_of(Joint::LShoulder, Joint::LElbow, Joint::LHand);
  out[attr_id(Group::UpperR, 3)] = bend_of(Joint::RShoulder, Joint::RElbow, Joint::RHand);
  out[attr_id(Group::UpperL, 4)] = bend_from_torso(Joint::LShoulder, Joint::LElbow);
  out[attr_id(Group::UpperR, 4)] = bend_from_torso(Joint::RShoulder, Joint::RElbow);
  out[attr_id(Group::Torso, 2)] =
      classify_bend(angle_between_deg(joint(p, Joint::Spine2), up), cfg);

  // pelvis orientation: hip-line yaw relative to the sequence start, and hip
  // line tilt out of the horizontal plane
  out[attr_id(Group::SupportBoth, 0)] =
      classify_orient(normalize_deg(pose.world_yaw_deg - reference_yaw_deg), cfg);
  {
    Vec3 hip_line = joint(p, Joint::LHip) - joint(p, Joint::RHip);
    double horiz = std::hypot(hip_line.x, hip_line.y);
    double pitch = std::atan2(hip_line.z, horiz) * 180.0 / M_PI;
    out[attr_id(Group::SupportBoth, 1)] = classify_orient(pitch, cfg);
  }

  // head orientation relative to the body frame
  {
    Vec3 head_dir = joint(p, Joint::Head) - joint(p, Joint::Spine2);
    Vec3 proj{head_dir.x, head_dir.y, 0.0};
    double yaw = 0.0;
    if (proj.norm() > 1e-9)
      yaw = std::atan2(facing.x * proj.y - facing.y * proj.x, facing.dot(proj)) * 180.0 / M_PI;
    out[attr_id(Group::Torso, 0)] = classify_orient(yaw, cfg);
    out[attr_id(Group::Torso, 1)] = classify_orient(angle_between_deg(head_dir, up), cfg);
  }

  // moving effort from pelvis speed, meters per second; the velocity is
  // expressed in the body frame (yaw removed) so the plane components do not
  // depend on the global heading
  {
    double eh = 0.0, ev = 0.0;
    if (prev) {
      Vec3 d = pose.world_pelvis - prev->world_pelvis;
      double yaw = pose.world_yaw_deg * M_PI / 180.0;
      double c = std::cos(yaw), s = std::sin(yaw);
      Vec3 body{c * d.x + s * d.y, -s * d.x + c * d.y, d.z};
      eh = std::hypot(body.x, body.y) * fps;
      ev = std::hypot(body.y, body.z) * fps;
    }
    out[attr_id(Group::SupportBoth, 2)] = classify_effort(eh, cfg);
    out[attr_id(Group::SupportBoth, 3)] = classify_effort(ev, cfg);
  }

  return out;
}

InstanceSequence detect(const MotionSequence& seq, const ThresholdConfig& cfg) {
  int t_count = seq.frame_count();
  if (t_count < 2) fail(Errc::too_short, "detect needs at least 2 frames");
  auto segmentation = segment_intervals(seq, cfg);
  auto canon = canonicalize_sequence(seq);
  double ref_yaw = canon[0].world_yaw_deg;

  std::vector<FrameSymbols> symbols(t_count);
  symbols[0] = extract_frame_symbols(canon[0], nullptr, ref_yaw, seq.fps, cfg);
  for (int t = 1; t < t_count; ++t)
    symbols[t] = extract_frame_symbols(canon[t], &canon[t - 1], ref_yaw, seq.fps, cfg);
  // frame-0 effort copies frame 1, matching the velocity padding convention
  if (t_count > 1) {
    symbols[0][attr_id(Group::SupportBoth, 2)] = symbols[1][attr_id(Group::SupportBoth, 2)];
    symbols[0][attr_id(Group::SupportBoth, 3)] = symbols[1][attr_id(Group::SupportBoth, 3)];
  }

  InstanceSequence out(t_count, seq.fps);
  std::vector<uint8_t> window;
  for (int gi = 0; gi < kGroupCount; ++gi) {
    Group g = static_cast<Group>(gi);
    int attr_count = group_attr_count(g);
    for (const Interval& interval : segmentation.of(g)) {
      for (int i = 0; i < attr_count; ++i) {
        AttrId a = attr_id(g, i);
        if (attr_fields()[a].kind == AttrKind::Hold) {
          uint8_t hv = static_cast<uint8_t>(interval.hold ? HoldState::Hold : HoldState::Dynamic);
          for (int t = interval.start; t < interval.end; ++t) out.set(t, a, hv);
          continue;
        }
        window.clear();
        for (int t = interval.start; t < interval.end; ++t) window.push_back(symbols[t][a]);
        uint8_t rep = aggregate_mode(window);
        for (int t = interval.start; t < interval.end; ++t) out.set(t, a, rep);
      }
    }
  }
  return out;
}

} // namespace lamogen
