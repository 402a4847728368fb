#include "lamogen/motion.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace lamogen {

const std::array<const char*, kJointCount>& joint_names() {
  static const std::array<const char*, kJointCount> names = {
      "pelvis", "spine2", "neck", "head",
      "l_shoulder", "r_shoulder", "l_elbow", "r_elbow", "l_hand", "r_hand",
      "l_hip", "r_hip", "l_knee", "r_knee", "l_foot", "r_foot",
  };
  return names;
}

Joint parse_joint_name(const std::string& name) {
  const auto& names = joint_names();
  for (int i = 0; i < kJointCount; ++i)
    if (name == names[i]) return static_cast<Joint>(i);
  fail(Errc::joint_count_mismatch, "unknown joint name: " + name);
}

CanonicalPose canonicalize(const Pose& world) {
  const Vec3& pelvis = joint(world, Joint::Pelvis);
  Vec3 lhip = joint(world, Joint::LHip) - pelvis;
  Vec3 rhip = joint(world, Joint::RHip) - pelvis;

  Vec3 lat = lhip - rhip;            // maps to +x (left)
  Vec3 normal = lhip.cross(rhip);    // maps to +y (backward of facing)
  constexpr double kEps = 1e-9;
  if (lat.norm() < kEps || normal.norm() < kEps)
    fail(Errc::degenerate_pose, "hips coincide with pelvis, no facing direction");

  Vec3 ex = lat.normalized();
  Vec3 ey = normal.normalized();
  Vec3 ez = ex.cross(ey);

  CanonicalPose out;
  out.world_pelvis = pelvis;
  out.world_yaw_deg = std::atan2(lat.y, lat.x) * 180.0 / M_PI;
  for (int j = 0; j < kJointCount; ++j) {
    Vec3 d = world[j] - pelvis;
    out.joints[j] = Vec3{d.dot(ex), d.dot(ey), d.dot(ez)};
  }
  return out;
}

std::vector<CanonicalPose> canonicalize_sequence(const MotionSequence& seq) {
  std::vector<CanonicalPose> out;
  out.reserve(seq.frames.size());
  for (const Pose& p : seq.frames) out.push_back(canonicalize(p));
  return out;
}

std::vector<Pose> velocity(const MotionSequence& seq) {
  int t_count = seq.frame_count();
  if (t_count < 2) fail(Errc::too_short, "velocity needs at least 2 frames");
  std::vector<Pose> v(t_count);
  for (int t = 1; t < t_count; ++t)
    for (int j = 0; j < kJointCount; ++j)
      v[t][j] = seq.frames[t][j] - seq.frames[t - 1][j];
  v[0] = v[1];
  return v;
}

std::string save_motion(const MotionSequence& seq) {
  std::ostringstream os;
  os << "#motion v1 fps=" << seq.fps << " joints=";
  const auto& names = joint_names();
  for (int i = 0; i < kJointCount; ++i) {
    if (i) os << ',';
    os << names[i];
  }
  os << '\n';
  char buf[32];
  for (const Pose& p : seq.frames) {
    bool first = true;
    for (const Vec3& v : p) {
      for (double c : {v.x, v.y, v.z}) {
        if (!first) os << ' ';
        std::snprintf(buf, sizeof buf, "%.17g", c);
        os << buf;
        first = false;
      }
    }
    os << '\n';
  }
  return os.str();
}

MotionSequence load_motion(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) fail(Errc::parse_error, "empty motion file");

  MotionSequence seq;
  {
    std::istringstream hs(line);
    std::string tag, version, kv;
    hs >> tag >> version;
    if (tag != "#motion" || version != "v1")
      fail(Errc::parse_error, "motion line 1: bad header, expected '#motion v1'");
    bool have_joints = false;
    while (hs >> kv) {
      auto eq = kv.find('=');
      if (eq == std::string::npos)
        fail(Errc::parse_error, "motion line 1: bad header field: " + kv);
      std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
      if (key == "fps") {
        seq.fps = std::atoi(val.c_str());
        if (seq.fps <= 0) fail(Errc::parse_error, "motion line 1: bad fps");
      } else if (key == "joints") {
        const auto& names = joint_names();
        std::istringstream js(val);
        std::string name;
        int idx = 0;
        while (std::getline(js, name, ',')) {
          if (idx >= kJointCount || name != names[idx])
            fail(Errc::joint_count_mismatch,
                 "motion header joint list mismatch at position " + std::to_string(idx) +
                     ": '" + name + "'");
          ++idx;
        }
        if (idx != kJointCount)
          fail(Errc::joint_count_mismatch,
               "motion header lists " + std::to_string(idx) + " joints, expected 16");
        have_joints = true;
      } else {
        fail(Errc::parse_error, "motion line 1: unknown header field: " + key);
      }
    }
    if (!have_joints) fail(Errc::joint_count_mismatch, "motion header missing joint list");
  }

  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    Pose p;
    const char* s = line.c_str();
    char* end = nullptr;
    for (int j = 0; j < kJointCount; ++j) {
      double c[3];
      for (int k = 0; k < 3; ++k) {
        c[k] = std::strtod(s, &end);
        if (end == s)
          fail(Errc::parse_error, "motion line " + std::to_string(lineno) + ": column " +
                                      std::to_string(static_cast<int>(s - line.c_str()) + 1) +
                                      ": expected number");
        if (!std::isfinite(c[k]))
          fail(Errc::parse_error, "motion line " + std::to_string(lineno) + ": non-finite value");
        s = end;
      }
      p[j] = Vec3{c[0], c[1], c[2]};
    }
    while (*s == ' ' || *s == '\t' || *s == '\r') ++s;
    if (*s != '\0')
      fail(Errc::parse_error, "motion line " + std::to_string(lineno) + ": trailing data");
    seq.frames.push_back(p);
  }
  if (seq.frames.empty()) fail(Errc::parse_error, "motion file has no frames");
  return seq;
}

MotionSequence concat_motions(const MotionSequence& a, const MotionSequence& b) {
  if (a.fps != b.fps) fail(Errc::shape_mismatch, "fps mismatch in motion concat");
  MotionSequence out = a;
  // Continue b from a's final pelvis position so the seam has no jump.
  Vec3 shift{};
  if (!a.frames.empty() && !b.frames.empty())
    shift = joint(a.frames.back(), Joint::Pelvis) - joint(b.frames.front(), Joint::Pelvis);
  for (Pose p : b.frames) {
    for (Vec3& v : p) v += shift;
    out.frames.push_back(p);
  }
  return out;
}

} // namespace lamogen
