#include "lamogen/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "lamogen/detect.hpp"

namespace lamogen {

namespace {

constexpr double kBoxMargin = 0.02;
constexpr double kReachFraction = 0.95;
constexpr double kUnbounded = 4.0; // generous outer box limit, meters

struct AxisBounds {
  double lo, hi;
};

// Per-axis label ranges with margin, left-side frame.
AxisBounds lmr_bounds(DirLMR v, bool lower, const ThresholdConfig& cfg) {
  double cross = lower ? cfg.lower_x_cross : cfg.upper_x_cross;
  double out = lower ? cfg.lower_x_out : cfg.upper_x_out;
  switch (v) {
    case DirLMR::R: return {-kUnbounded, cross - kBoxMargin};
    case DirLMR::M: return {cross + kBoxMargin, out - kBoxMargin};
    case DirLMR::L: return {out + kBoxMargin, kUnbounded};
  }
  return {0, 0};
}

AxisBounds bmf_bounds(DirBMF v, bool lower, const ThresholdConfig& cfg) {
  double fwd = lower ? cfg.lower_y_fwd : cfg.upper_y_fwd;
  double back = lower ? cfg.lower_y_back : cfg.upper_y_back;
  switch (v) {
    case DirBMF::F: return {-kUnbounded, fwd - kBoxMargin};
    case DirBMF::M: return {fwd + kBoxMargin, back - kBoxMargin};
    case DirBMF::B: return {back + kBoxMargin, kUnbounded};
  }
  return {0, 0};
}

AxisBounds level_bounds(Level v, bool lower, const ThresholdConfig& cfg) {
  if (lower) {
    switch (v) {
      case Level::Hi: return {cfg.lower_z_hi + kBoxMargin, kUnbounded};
      case Level::Lo: return {cfg.lower_z_lo_min + kBoxMargin, cfg.lower_z_hi - kBoxMargin};
      case Level::Mi: return {-kUnbounded, cfg.lower_z_lo_min - kBoxMargin};
    }
  } else {
    switch (v) {
      case Level::Hi: return {cfg.upper_z_hi + kBoxMargin, kUnbounded};
      case Level::Mi: return {cfg.upper_z_lo + kBoxMargin, cfg.upper_z_hi - kBoxMargin};
      case Level::Lo: return {-kUnbounded, cfg.upper_z_lo - kBoxMargin};
    }
  }
  return {0, 0};
}

// Nominal per-axis placements, left-side frame.
double nominal_x(DirLMR v, bool lower) {
  if (lower) return v == DirLMR::L ? 0.38 : (v == DirLMR::M ? 0.10 : -0.22);
  return v == DirLMR::L ? 0.38 : (v == DirLMR::M ? 0.20 : -0.18);
}
double nominal_y(DirBMF v, bool lower) {
  if (lower) return v == DirBMF::F ? -0.27 : (v == DirBMF::M ? -0.10 : 0.08);
  return v == DirBMF::F ? -0.30 : (v == DirBMF::M ? -0.05 : 0.18);
}
double nominal_z(Level v, bool lower) {
  if (lower) return v == Level::Hi ? 0.12 : (v == Level::Mi ? -0.84 : -0.40);
  return v == Level::Hi ? 0.20 : (v == Level::Mi ? -0.05 : -0.28);
}

ConceptTuple mirror_cell(const ConceptTuple& cell) {
  ConceptTuple m = cell;
  if (cell.lmr == DirLMR::L) m.lmr = DirLMR::R;
  else if (cell.lmr == DirLMR::R) m.lmr = DirLMR::L;
  return m;
}

Vec3 limb_root(bool lower_body, bool right_side, const Skeleton& skel) {
  if (lower_body) return right_side ? skel.r_hip : skel.l_hip;
  return right_side ? skel.r_shoulder : skel.l_shoulder;
}

} // namespace

Vec3 CellBox::clamp(const Vec3& p) const {
  return Vec3{std::clamp(p.x, lo.x, hi.x), std::clamp(p.y, lo.y, hi.y),
              std::clamp(p.z, lo.z, hi.z)};
}

CellBox cell_box(bool lower_body, bool right_side, const ConceptTuple& cell,
                 const ThresholdConfig& cfg) {
  ConceptTuple c = right_side ? mirror_cell(cell) : cell;
  AxisBounds x = lmr_bounds(c.lmr, lower_body, cfg);
  AxisBounds y = bmf_bounds(c.bmf, lower_body, cfg);
  AxisBounds z = level_bounds(c.level, lower_body, cfg);
  CellBox box{{x.lo, y.lo, z.lo}, {x.hi, y.hi, z.hi}};
  if (right_side) {
    double lo = -box.hi.x, hi = -box.lo.x;
    box.lo.x = lo;
    box.hi.x = hi;
  }
  return box;
}

Vec3 cell_target(bool lower_body, bool right_side, const ConceptTuple& cell,
                 const Skeleton& skeleton, const ThresholdConfig& cfg) {
  ConceptTuple c = right_side ? mirror_cell(cell) : cell;
  Vec3 nominal{nominal_x(c.lmr, lower_body), nominal_y(c.bmf, lower_body),
               nominal_z(c.level, lower_body)};
  if (right_side) nominal.x = -nominal.x;

  Vec3 root = limb_root(lower_body, right_side, skeleton);
  double reach = kReachFraction * (lower_body ? skeleton.leg_reach() : skeleton.arm_reach());
  if ((nominal - root).norm() <= reach) return nominal;

  CellBox box = cell_box(lower_body, right_side, cell, cfg);
  Vec3 nearest = box.clamp(root);
  if ((nearest - root).norm() > reach)
    fail(Errc::unreachable_target,
         "cell has no reachable point for this skeleton: " + std::string(lmr_name(cell.lmr)) +
             bmf_name(cell.bmf) + "." + level_name(cell.level));
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 48; ++i) {
    double mid = 0.5 * (lo + hi);
    if ((lerp(nominal, nearest, mid) - root).norm() <= reach)
      hi = mid;
    else
      lo = mid;
  }
  return lerp(nominal, nearest, hi);
}

namespace {

// ---- trajectory blocks ------------------------------------------------------
//
// A dynamic block travels in three phases: a short sweep into the destination
// cell, a settle orbit around the target whose chords stay above the hold
// threshold, and a final freeze on the target. The sweep is capped below half
// of the transit so strictly more than half of the enclosing dynamic interval
// sits inside the destination cell and interval aggregation lands on the
// block's own symbols.
void append_dynamic_block(std::vector<Vec3>& out, Vec3& cur, const Vec3& target, int frames,
                          double orbit_radius) {
  if (frames <= 0) return;
  constexpr double kSweepStep = 0.12;
  constexpr double kChord = 0.016; // above the 0.015 foot hold threshold
  const Vec3 u{1.0, 0.0, 0.0};
  const Vec3 w{0.0, std::sqrt(0.5), std::sqrt(0.5)};
  const double phi = 2.0 * std::asin(std::min(1.0, kChord / (2.0 * orbit_radius)));

  auto orbit_point = [&](int j) {
    double a = phi * static_cast<double>(j);
    return target + orbit_radius * (std::cos(a) * u + std::sin(a) * w);
  };

  int freeze = frames >= 4 ? 2 : (frames >= 2 ? 1 : 0);
  int transit = frames - freeze; // sweep + orbit + one landing frame on the target
  double dist = (target - cur).norm();

  if (transit == 1) {
    out.push_back(target);
  } else if (transit >= 2) {
    int avail = transit - 1;
    int sweep = 0;
    if (dist > 2.0 * orbit_radius) {
      int cap = std::max(1, (avail - 1) / 2);
      sweep = std::clamp(static_cast<int>(std::ceil(dist / kSweepStep)), 1, cap);
    }
    Vec3 entry = orbit_point(0);
    for (int j = 1; j <= sweep; ++j)
      out.push_back(lerp(cur, entry, static_cast<double>(j) / sweep));
    int first_orbit = sweep > 0 ? 1 : 0;
    int orbit_count = avail - sweep;
    for (int j = 0; j < orbit_count; ++j) out.push_back(orbit_point(first_orbit + j));
    out.push_back(target); // landing: the freeze frames arrive at zero speed
  }
  for (int j = 0; j < freeze; ++j) out.push_back(target);
  cur = target;
}

void append_hold_block(std::vector<Vec3>& out, const Vec3& cur, int frames) {
  for (int j = 0; j < frames; ++j) out.push_back(cur);
}

// ---- two-bone inverse kinematics ---------------------------------------------

Vec3 solve_two_bone(const Vec3& root, const Vec3& target, double l1, double l2, const Vec3& pole,
                    bool* clamped) {
  Vec3 d = target - root;
  double dist = d.norm();
  double min_d = std::abs(l1 - l2) + 1e-6;
  double max_d = l1 + l2 - 1e-6;
  double used = std::clamp(dist, min_d, max_d);
  if (dist > max_d && clamped) *clamped = true;
  Vec3 dir = dist > 1e-12 ? d / dist : Vec3{0, 0, -1};

  double a = (l1 * l1 + used * used - l2 * l2) / (2.0 * used);
  double h2 = l1 * l1 - a * a;
  double h = h2 > 0.0 ? std::sqrt(h2) : 0.0;

  Vec3 side = pole - dir * pole.dot(dir);
  if (side.norm() < 1e-9) {
    Vec3 alt{0.0, 1.0, 0.0};
    side = alt - dir * alt.dot(dir);
    if (side.norm() < 1e-9) {
      alt = Vec3{1.0, 0.0, 0.0};
      side = alt - dir * alt.dot(dir);
    }
  }
  return root + dir * a + side.normalized() * h;
}

// ---- per-part run extraction ---------------------------------------------------

struct PartRun {
  int start, end;
  ConceptTuple cell;
  bool hold;
};

std::vector<PartRun> part_runs(const InstanceSequence& seq, Group g) {
  std::vector<PartRun> runs;
  int t_count = seq.frames();
  int start = 0;
  auto key = [&](int t) {
    return std::make_pair(seq.concept_tuple(t, g), seq.hold_state(t, g));
  };
  for (int t = 1; t <= t_count; ++t) {
    if (t == t_count || key(t) != key(start)) {
      runs.push_back(PartRun{start, t, seq.concept_tuple(start, g),
                             seq.hold_state(start, g) == HoldState::Hold});
      start = t;
    }
  }
  return runs;
}

} // namespace

Pose rest_pose(const Skeleton& skel) {
  ThresholdConfig cfg;
  const ConceptTuple rest{};
  Pose p{};
  joint(p, Joint::Pelvis) = {0, 0, 0};
  joint(p, Joint::Spine2) = skel.spine2;
  joint(p, Joint::Neck) = skel.neck;
  joint(p, Joint::Head) = skel.head;
  joint(p, Joint::LShoulder) = skel.l_shoulder;
  joint(p, Joint::RShoulder) = skel.r_shoulder;
  joint(p, Joint::LHip) = skel.l_hip;
  joint(p, Joint::RHip) = skel.r_hip;
  joint(p, Joint::LFoot) = cell_target(true, false, rest, skel, cfg);
  joint(p, Joint::RFoot) = cell_target(true, true, rest, skel, cfg);
  joint(p, Joint::LHand) = cell_target(false, false, rest, skel, cfg);
  joint(p, Joint::RHand) = cell_target(false, true, rest, skel, cfg);
  const Vec3 knee_pole{0.0, -1.0, 0.0};
  const Vec3 elbow_pole{0.0, 1.0, -0.3};
  joint(p, Joint::LKnee) = solve_two_bone(skel.l_hip, joint(p, Joint::LFoot), skel.thigh,
                                          skel.shin, knee_pole, nullptr);
  joint(p, Joint::RKnee) = solve_two_bone(skel.r_hip, joint(p, Joint::RFoot), skel.thigh,
                                          skel.shin, knee_pole, nullptr);
  joint(p, Joint::LElbow) = solve_two_bone(skel.l_shoulder, joint(p, Joint::LHand),
                                           skel.upper_arm, skel.forearm, elbow_pole, nullptr);
  joint(p, Joint::RElbow) = solve_two_bone(skel.r_shoulder, joint(p, Joint::RHand),
                                           skel.upper_arm, skel.forearm, elbow_pole, nullptr);
  return p;
}

DecodeResult decode(const InstanceSequence& seq, const Skeleton& skel,
                    const DecodeOptions& options) {
  ThresholdConfig cfg;
  int t_count = seq.frames();
  DecodeResult result;
  result.motion.fps = seq.fps();
  if (t_count == 0) return result;

  struct PartSpec {
    Group group;
    bool lower;
    bool right;
    Joint effector;
  };
  const PartSpec parts[4] = {
      {Group::SupportL, true, false, Joint::LFoot},
      {Group::SupportR, true, true, Joint::RFoot},
      {Group::UpperL, false, false, Joint::LHand},
      {Group::UpperR, false, true, Joint::RHand},
  };

  // reference interval means for granularity experiments
  std::vector<CanonicalPose> ref_canon;
  if (options.reference) ref_canon = canonicalize_sequence(*options.reference);

  int unreachable_cells = 0;
  auto resolve_target = [&](bool lower, bool right, const ConceptTuple& cell) {
    try {
      return cell_target(lower, right, cell, skel, cfg);
    } catch (const Error&) {
      // cell out of this skeleton's reach: clamp toward its nearest point
      Vec3 root = limb_root(lower, right, skel);
      double reach = kReachFraction * (lower ? skel.leg_reach() : skel.arm_reach());
      Vec3 nearest = cell_box(lower, right, cell, cfg).clamp(root);
      Vec3 dir = (nearest - root).normalized();
      ++unreachable_cells;
      return root + dir * reach;
    }
  };

  std::array<std::vector<Vec3>, 4> tracks;
  std::array<std::vector<PartRun>, 4> runs;
  for (int p = 0; p < 4; ++p) {
    const PartSpec& spec = parts[p];
    runs[p] = part_runs(seq, spec.group);
    Vec3 cur = resolve_target(spec.lower, spec.right, ConceptTuple{});
    tracks[p].reserve(t_count);
    for (const PartRun& run : runs[p]) {
      if (run.hold) {
        append_hold_block(tracks[p], cur, run.end - run.start);
        continue;
      }
      Vec3 target = resolve_target(spec.lower, spec.right, run.cell);
      if (options.reference && options.granularity > 0 &&
          run.end <= static_cast<int>(ref_canon.size())) {
        // pull the target toward the reference interval mean, clamped into the
        // detected cell; granularity 1 keeps the fixed target, higher values
        // track the reference more closely
        Vec3 mean{};
        for (int t = run.start; t < run.end; ++t)
          mean += joint(ref_canon[t].joints, spec.effector);
        mean = mean / static_cast<double>(run.end - run.start);
        CellBox box = cell_box(spec.lower, spec.right, run.cell, cfg);
        Vec3 guided = lerp(target, box.clamp(mean), 1.0 - 1.0 / options.granularity);
        double reach = kReachFraction * (spec.lower ? skel.leg_reach() : skel.arm_reach());
        if ((guided - limb_root(spec.lower, spec.right, skel)).norm() <= reach) target = guided;
      }
      append_dynamic_block(tracks[p], cur, target, run.end - run.start, options.orbit_radius);
    }
  }

  // pelvis path: directed support moves advance the body
  std::vector<Vec3> pelvis(t_count, Vec3{0, 0, 0.9});
  {
    std::vector<Vec3> vel(t_count, Vec3{});
    for (int p = 0; p < 2; ++p) {
      for (const PartRun& run : runs[p]) {
        if (run.hold) continue;
        double dx = run.cell.lmr == DirLMR::L ? 1.0 : (run.cell.lmr == DirLMR::R ? -1.0 : 0.0);
        double dy = run.cell.bmf == DirBMF::F ? -1.0 : (run.cell.bmf == DirBMF::B ? 1.0 : 0.0);
        Vec3 dir{dx, dy, 0.0};
        if (dir.norm() < 1e-9) continue;
        dir = dir.normalized() * (options.step_length / (run.end - run.start));
        for (int t = run.start; t < run.end; ++t) vel[t] += dir;
      }
    }
    for (int t = 1; t < t_count; ++t) pelvis[t] = pelvis[t - 1] + vel[t];
  }

  const Vec3 knee_pole{0.0, -1.0, 0.0};
  const Vec3 elbow_pole{0.0, 1.0, -0.3};
  int clamp_count = 0;
  result.motion.frames.resize(t_count);
  for (int t = 0; t < t_count; ++t) {
    Pose& p = result.motion.frames[t];
    const Vec3& root = pelvis[t];
    joint(p, Joint::Pelvis) = root;
    joint(p, Joint::Spine2) = root + skel.spine2;
    joint(p, Joint::Neck) = root + skel.neck;
    joint(p, Joint::Head) = root + skel.head;
    joint(p, Joint::LShoulder) = root + skel.l_shoulder;
    joint(p, Joint::RShoulder) = root + skel.r_shoulder;
    joint(p, Joint::LHip) = root + skel.l_hip;
    joint(p, Joint::RHip) = root + skel.r_hip;
    joint(p, Joint::LFoot) = root + tracks[0][t];
    joint(p, Joint::RFoot) = root + tracks[1][t];
    joint(p, Joint::LHand) = root + tracks[2][t];
    joint(p, Joint::RHand) = root + tracks[3][t];

    bool clamped = false;
    joint(p, Joint::LKnee) = solve_two_bone(root + skel.l_hip, joint(p, Joint::LFoot), skel.thigh,
                                            skel.shin, knee_pole, &clamped);
    joint(p, Joint::RKnee) = solve_two_bone(root + skel.r_hip, joint(p, Joint::RFoot), skel.thigh,
                                            skel.shin, knee_pole, &clamped);
    joint(p, Joint::LElbow) = solve_two_bone(root + skel.l_shoulder, joint(p, Joint::LHand),
                                             skel.upper_arm, skel.forearm, elbow_pole, &clamped);
    joint(p, Joint::RElbow) = solve_two_bone(root + skel.r_shoulder, joint(p, Joint::RHand),
                                             skel.upper_arm, skel.forearm, elbow_pole, &clamped);
    if (clamped) ++clamp_count;
  }
  if (unreachable_cells > 0)
    result.warnings.push_back("unreachable cell target clamped toward the cell in " +
                              std::to_string(unreachable_cells) + " block(s)");
  if (clamp_count > 0)
    result.warnings.push_back("unreachable target clamped to limb reach in " +
                              std::to_string(clamp_count) + " frame(s)");
  return result;
}

// ---- fixtures -----------------------------------------------------------------

namespace {

ConceptualDescription support_cd(Side side, int semantic, double seconds) {
  return ConceptualDescription{side == Side::L ? Group::SupportL : Group::SupportR, semantic,
                               seconds};
}

ConceptualDescription hand_cd(Side side, int semantic, double seconds) {
  return ConceptualDescription{side == Side::L ? Group::UpperL : Group::UpperR, semantic, seconds};
}

constexpr int kStepRest = 1;      // steps to rest position
constexpr int kStepForward = 2;   // steps forward
constexpr int kStepBackward = 3;  // steps backward
constexpr int kHoldRest = 28;     // holds in rest position
constexpr int kArmRest = 1;       // moves close to shoulder
constexpr int kArmForward = 2;    // moves forward
constexpr int kArmBackward = 3;   // moves backward
constexpr int kArmRise = 10;      // rises up
constexpr int kArmHoldRest = 28;  // holds close to shoulder position

} // namespace

ConceptScript walk_script(int steps, Side side_first, double step_seconds,
                          WalkDirection direction, double lead_hold_seconds) {
  if (steps < 1) fail(Errc::out_of_range, "walk needs at least one step");
  if (!(step_seconds > 0.0)) fail(Errc::out_of_range, "step duration must be positive");
  ConceptScript script;
  script.caption = std::string(direction == WalkDirection::Forward ? "walk forward " : "walk backward ") +
                   std::to_string(steps) + " steps";
  int step_semantic = direction == WalkDirection::Forward ? kStepForward : kStepBackward;

  if (lead_hold_seconds > 0.0) {
    SupportMove lead;
    lead.sides = {support_cd(Side::L, kHoldRest, lead_hold_seconds),
                  support_cd(Side::R, kHoldRest, lead_hold_seconds)};
    script.support.push_back(lead);
    script.left_hand.push_back(hand_cd(Side::L, kArmHoldRest, lead_hold_seconds));
    script.right_hand.push_back(hand_cd(Side::R, kArmHoldRest, lead_hold_seconds));
  }

  Side stepping = side_first;
  for (int i = 0; i < steps; ++i) {
    Side other = stepping == Side::L ? Side::R : Side::L;
    SupportMove move;
    move.sides = {support_cd(stepping, step_semantic, step_seconds),
                  support_cd(other, kStepRest, step_seconds)};
    script.support.push_back(move);
    // the arm opposite the stepping foot swings backward, the same-side arm forward
    auto& same_hand = stepping == Side::L ? script.left_hand : script.right_hand;
    auto& opposite_hand = stepping == Side::L ? script.right_hand : script.left_hand;
    same_hand.push_back(hand_cd(stepping, kArmForward, step_seconds));
    opposite_hand.push_back(hand_cd(other, kArmBackward, step_seconds));
    stepping = other;
  }
  return script;
}

ConceptScript arm_wave_script(Side hand, int cycles, double phase_seconds) {
  if (cycles < 1) fail(Errc::out_of_range, "wave needs at least one cycle");
  ConceptScript script;
  script.caption = "wave " + std::string(hand == Side::L ? "left" : "right") + " hand";
  double total = 2.0 * phase_seconds * cycles;
  SupportMove hold;
  hold.sides = {support_cd(Side::L, kHoldRest, total), support_cd(Side::R, kHoldRest, total)};
  script.support.push_back(hold);
  auto& waving = hand == Side::L ? script.left_hand : script.right_hand;
  auto& still = hand == Side::L ? script.right_hand : script.left_hand;
  for (int c = 0; c < cycles; ++c) {
    waving.push_back(hand_cd(hand, kArmRise, phase_seconds));
    waving.push_back(hand_cd(hand, kArmRest, phase_seconds));
  }
  still.push_back(hand_cd(hand == Side::L ? Side::R : Side::L, kArmHoldRest, total));
  return script;
}

ConceptScript walk_and_wave_script(int steps, Side side_first, double step_seconds, Side hand) {
  ConceptScript script = walk_script(steps, side_first, step_seconds);
  script.caption = "walks while waving one hand";
  auto& waving = hand == Side::L ? script.left_hand : script.right_hand;
  waving.clear();
  double total = 0.4 + steps * step_seconds; // lead hold plus steps
  int phases = std::max(2, 2 * static_cast<int>(std::floor(total / (2 * step_seconds))));
  double phase_seconds = total / phases;
  for (int i = 0; i < phases; ++i)
    waving.push_back(hand_cd(hand, i % 2 == 0 ? kArmRise : kArmRest, phase_seconds));
  return script;
}

MotionSequence synth_walk(int steps, Side side_first, double step_seconds, int fps,
                          WalkDirection direction) {
  ConceptScript script = walk_script(steps, side_first, step_seconds, direction);
  InstanceSequence seq = script_to_instances(script, fps);
  return decode(seq, Skeleton::standard()).motion;
}

MotionSequence synth_arm_wave(Side hand, int cycles, int fps) {
  ConceptScript script = arm_wave_script(hand, cycles);
  InstanceSequence seq = script_to_instances(script, fps);
  return decode(seq, Skeleton::standard()).motion;
}

ConceptScript random_script(uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  const double durations[4] = {0.25, 0.5, 0.75, 1.0};

  ConceptScript script;
  script.caption = "random motion " + std::to_string(seed);

  // support: alternating sides, dynamic moves sometimes followed by the
  // matching hold of the position just reached
  double support_total = 0.0;
  {
    Side side = uniform(0, 1) ? Side::L : Side::R;
    int moves = uniform(2, 5);
    for (int i = 0; i < moves; ++i) {
      int semantic = uniform(1, 27);
      double d = durations[uniform(0, 3)];
      SupportMove move;
      move.sides = {support_cd(side, semantic, d)};
      script.support.push_back(move);
      support_total += d;
      if (uniform(0, 2) == 0) {
        double hd = durations[uniform(0, 1)];
        SupportMove hold;
        hold.sides = {support_cd(side, semantic + 27, hd)};
        script.support.push_back(hold);
        support_total += hd;
      }
      side = side == Side::L ? Side::R : Side::L;
    }
  }

  // hands: dynamic moves with matching holds, then pad to the support total
  for (Side hand : {Side::L, Side::R}) {
    auto& list = hand == Side::L ? script.left_hand : script.right_hand;
    double total = 0.0;
    int moves = uniform(1, 4);
    ConceptTuple cur{};
    for (int i = 0; i < moves && total + 0.25 <= support_total; ++i) {
      int semantic = uniform(1, 27);
      double d = durations[uniform(0, 3)];
      if (total + d > support_total) d = 0.25;
      if (total + d > support_total) break;
      list.push_back(hand_cd(hand, semantic, d));
      cur = arm_semantic_symbols(semantic).cell;
      total += d;
      if (uniform(0, 2) == 0 && total + 0.25 <= support_total) {
        double hd = 0.25;
        list.push_back(hand_cd(hand, semantic + 27, hd));
        total += hd;
      }
    }
    if (support_total - total > 1e-9) {
      int hold_idx = arm_index_of(cur, HoldState::Hold);
      list.push_back(hand_cd(hand, hold_idx, support_total - total));
    }
  }
  return script;
}

} // namespace lamogen
