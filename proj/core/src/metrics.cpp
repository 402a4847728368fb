#include "lamogen/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace lamogen {

Group part_group(Part p) {
  switch (p) {
    case Part::SupL: return Group::SupportL;
    case Part::SupR: return Group::SupportR;
    case Part::ArmL: return Group::UpperL;
    case Part::ArmR: return Group::UpperR;
  }
  return Group::SupportL;
}

const char* part_name(Part p) {
  switch (p) {
    case Part::SupL: return "supL";
    case Part::SupR: return "supR";
    case Part::ArmL: return "armL";
    case Part::ArmR: return "armR";
  }
  return "";
}

std::array<Part, 2> pair_parts(PartPair pair) {
  switch (pair) {
    case PartPair::ArmArm: return {Part::ArmL, Part::ArmR};
    case PartPair::SupSup: return {Part::SupL, Part::SupR};
    case PartPair::ArmLSupL: return {Part::ArmL, Part::SupL};
    case PartPair::ArmLSupR: return {Part::ArmL, Part::SupR};
    case PartPair::ArmRSupL: return {Part::ArmR, Part::SupL};
    case PartPair::ArmRSupR: return {Part::ArmR, Part::SupR};
  }
  return {Part::ArmL, Part::ArmR};
}

const char* pair_name(PartPair pair) {
  switch (pair) {
    case PartPair::ArmArm: return "arm-arm";
    case PartPair::SupSup: return "sup-sup";
    case PartPair::ArmLSupL: return "armL-supL";
    case PartPair::ArmLSupR: return "armL-supR";
    case PartPair::ArmRSupL: return "armR-supL";
    case PartPair::ArmRSupR: return "armR-supR";
  }
  return "";
}

std::vector<ConceptRun> compress_part(const InstanceSequence& seq, Part part) {
  std::vector<ConceptRun> runs;
  Group g = part_group(part);
  int t_count = seq.frames();
  int start = 0;
  for (int t = 1; t <= t_count; ++t) {
    if (t == t_count || !(seq.concept_tuple(t, g) == seq.concept_tuple(start, g))) {
      runs.push_back(ConceptRun{seq.concept_tuple(start, g), start, t - start});
      start = t;
    }
  }
  return runs;
}

int lcs_length(const std::vector<int>& a, const std::vector<int>& b) {
  return lcs_length(std::span<const int>(a), std::span<const int>(b));
}

namespace {

int tuple_token(const ConceptTuple& c) {
  return static_cast<int>(c.lmr) * 9 + static_cast<int>(c.bmf) * 3 + static_cast<int>(c.level);
}

double normalized_lcs(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.empty() && b.empty()) return 1.0;
  if (a.empty() || b.empty()) return 0.0;
  return static_cast<double>(lcs_length(a, b)) / static_cast<double>(std::max(a.size(), b.size()));
}

} // namespace

double smt(const InstanceSequence& gt, const InstanceSequence& gen, Part part) {
  std::vector<int> a, b;
  for (const auto& r : compress_part(gt, part)) a.push_back(tuple_token(r.value));
  for (const auto& r : compress_part(gen, part)) b.push_back(tuple_token(r.value));
  return normalized_lcs(a, b);
}

double tmp(const InstanceSequence& gt, const InstanceSequence& gen, Part part) {
  Group g = part_group(part);
  std::vector<int> a, b;
  a.reserve(gt.frames());
  b.reserve(gen.frames());
  for (int t = 0; t < gt.frames(); ++t) a.push_back(tuple_token(gt.concept_tuple(t, g)));
  for (int t = 0; t < gen.frames(); ++t) b.push_back(tuple_token(gen.concept_tuple(t, g)));
  return normalized_lcs(a, b);
}

namespace {

// Joint tuples of synchronously occurring runs. For each run of the first
// part, the single maximum-IoU run of the second part qualifies when the
// intersection over union of their spans exceeds one half; above that bound
// pairings are exclusive by construction.
std::vector<int> joint_tuples(const InstanceSequence& seq, PartPair pair) {
  auto [p1, p2] = pair_parts(pair);
  auto runs1 = compress_part(seq, p1);
  auto runs2 = compress_part(seq, p2);
  std::vector<int> joint;
  for (const auto& u : runs1) {
    double best_iou = 0.0;
    const ConceptRun* best = nullptr;
    for (const auto& v : runs2) {
      int lo = std::max(u.start, v.start);
      int hi = std::min(u.start + u.length, v.start + v.length);
      int inter = std::max(0, hi - lo);
      if (inter == 0) continue;
      int uni = u.length + v.length - inter;
      double iou = static_cast<double>(inter) / uni;
      if (iou > best_iou) {
        best_iou = iou;
        best = &v;
      }
    }
    if (best && best_iou > 0.5)
      joint.push_back(tuple_token(u.value) * 27 + tuple_token(best->value));
  }
  return joint;
}

} // namespace

double hmn(const InstanceSequence& gt, const InstanceSequence& gen, PartPair pair) {
  return normalized_lcs(joint_tuples(gt, pair), joint_tuples(gen, pair));
}

double reconstruction_distance(const MotionSequence& a, const MotionSequence& b, double lambda) {
  if (a.frame_count() != b.frame_count())
    fail(Errc::shape_mismatch, "motions differ in frame count: " + std::to_string(a.frame_count()) +
                                   " vs " + std::to_string(b.frame_count()));
  if (a.frames.empty()) return 0.0;
  auto l1 = [](const std::vector<Pose>& x, const std::vector<Pose>& y) {
    double sum = 0.0;
    for (size_t t = 0; t < x.size(); ++t)
      for (int j = 0; j < kJointCount; ++j) {
        Vec3 d = x[t][j] - y[t][j];
        sum += std::abs(d.x) + std::abs(d.y) + std::abs(d.z);
      }
    return sum;
  };
  double pose_term = l1(a.frames, b.frames);
  double vel_term = 0.0;
  if (a.frame_count() >= 2) vel_term = l1(velocity(a), velocity(b));
  return pose_term + lambda * vel_term;
}

double MetricReport::avg_smt() const {
  double s = 0.0;
  for (double v : smt) s += v;
  return s / kPartCount;
}

double MetricReport::avg_tmp() const {
  double s = 0.0;
  for (double v : tmp) s += v;
  return s / kPartCount;
}

double MetricReport::avg_hmn() const {
  double s = 0.0;
  for (double v : hmn) s += v;
  return s / kPartPairCount;
}

double MetricReport::hmn_arm_sup() const {
  return (hmn[2] + hmn[3] + hmn[4] + hmn[5]) / 4.0;
}

MetricReport evaluate(const InstanceSequence& gt, const InstanceSequence& gen) {
  MetricReport report{};
  for (int p = 0; p < kPartCount; ++p) {
    report.smt[p] = smt(gt, gen, static_cast<Part>(p));
    report.tmp[p] = tmp(gt, gen, static_cast<Part>(p));
  }
  for (int q = 0; q < kPartPairCount; ++q)
    report.hmn[q] = hmn(gt, gen, static_cast<PartPair>(q));
  return report;
}

std::string format_report(const MetricReport& r) {
  std::ostringstream os;
  char buf[160];
  os << "metric   supL   supR   armL   armR    avg\n";
  std::snprintf(buf, sizeof buf, "SMT    %6.3f %6.3f %6.3f %6.3f %6.3f\n", r.smt[0], r.smt[1],
                r.smt[2], r.smt[3], r.avg_smt());
  os << buf;
  std::snprintf(buf, sizeof buf, "TMP    %6.3f %6.3f %6.3f %6.3f %6.3f\n", r.tmp[0], r.tmp[1],
                r.tmp[2], r.tmp[3], r.avg_tmp());
  os << buf;
  std::snprintf(buf, sizeof buf, "HMN    arm-arm %6.3f  sup-sup %6.3f  arm-sup %6.3f  avg %6.3f\n",
                r.hmn[0], r.hmn[1], r.hmn_arm_sup(), r.avg_hmn());
  os << buf;
  for (int p = 0; p < kPartCount; ++p) {
    std::snprintf(buf, sizeof buf, "smt.%s=%.6f\ntmp.%s=%.6f\n", part_name(static_cast<Part>(p)),
                  r.smt[p], part_name(static_cast<Part>(p)), r.tmp[p]);
    os << buf;
  }
  for (int q = 0; q < kPartPairCount; ++q) {
    std::snprintf(buf, sizeof buf, "hmn.%s=%.6f\n", pair_name(static_cast<PartPair>(q)), r.hmn[q]);
    os << buf;
  }
  std::snprintf(buf, sizeof buf, "avg.smt=%.6f\navg.tmp=%.6f\navg.hmn=%.6f\nhmn.arm-sup=%.6f\n",
                r.avg_smt(), r.avg_tmp(), r.avg_hmn(), r.hmn_arm_sup());
  os << buf;
  return os.str();
}

} // namespace lamogen
