#pragma once

#include <array>
#include <string>
#include <vector>

#include "lamogen/error.hpp"
#include "lamogen/geometry.hpp"

namespace lamogen {

inline constexpr int kJointCount = 16;

enum class Joint : uint8_t {
  Pelvis = 0, Spine2, Neck, Head,
  LShoulder, RShoulder, LElbow, RElbow, LHand, RHand,
  LHip, RHip, LKnee, RKnee, LFoot, RFoot,
};

const std::array<const char*, kJointCount>& joint_names();
Joint parse_joint_name(const std::string& name);

using Pose = std::array<Vec3, kJointCount>;

inline Vec3& joint(Pose& p, Joint j) { return p[static_cast<int>(j)]; }
inline const Vec3& joint(const Pose& p, Joint j) { return p[static_cast<int>(j)]; }

// Fixed 16-joint skeleton with segment lengths in meters and the canonical
// rest offsets of the rigid joints (pelvis at origin, facing -y, z up).
struct Skeleton {
  double thigh = 0.48;
  double shin = 0.46;
  double upper_arm = 0.42;
  double forearm = 0.40;

  Vec3 l_hip{0.10, 0.0, -0.06};
  Vec3 r_hip{-0.10, 0.0, -0.06};
  Vec3 spine2{0.0, 0.0, 0.25};
  Vec3 neck{0.0, 0.0, 0.46};
  Vec3 head{0.0, 0.0, 0.64};
  Vec3 l_shoulder{0.17, 0.0, 0.42};
  Vec3 r_shoulder{-0.17, 0.0, 0.42};

  double leg_reach() const { return thigh + shin; }
  double arm_reach() const { return upper_arm + forearm; }

  static Skeleton standard() { return Skeleton{}; }
};

// World-frame positions of the 16 joints over T frames.
struct MotionSequence {
  int fps = 20;
  std::vector<Pose> frames;

  int frame_count() const { return static_cast<int>(frames.size()); }
};

// Pose expressed in the canonical frame: pelvis at origin, the pelvis-hip
// triangle on the xz-plane, body facing -y. The removed world transform is
// kept alongside (translation and hip-line yaw) for the detail attributes
// that are defined globally.
struct CanonicalPose {
  Pose joints;
  Vec3 world_pelvis;
  double world_yaw_deg = 0.0; // yaw of the hip line in the world xy-plane
};

CanonicalPose canonicalize(const Pose& world);
std::vector<CanonicalPose> canonicalize_sequence(const MotionSequence& seq);

// Backward-difference velocities in meters per frame; frame 0 copies frame 1.
std::vector<Pose> velocity(const MotionSequence& seq);

// Text format:
//   #motion v1 fps=<n> joints=<comma list>
//   one frame per line, 48 floats
std::string save_motion(const MotionSequence& seq);
MotionSequence load_motion(const std::string& text);

MotionSequence concat_motions(const MotionSequence& a, const MotionSequence& b);

} // namespace lamogen
