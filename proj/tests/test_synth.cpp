#include <doctest.h>

#include <random>

#include "lamogen/detect.hpp"
#include "lamogen/metrics.hpp"
#include "lamogen/synth.hpp"

using namespace lamogen;

namespace {

const ThresholdConfig kCfg;
const Skeleton kSkel = Skeleton::standard();

InstanceSequence detect_decoded(const ConceptScript& script, int fps = 20) {
  InstanceSequence inst = script_to_instances(script, fps);
  return detect(decode(inst, kSkel).motion, kCfg);
}

} // namespace

TEST_CASE("every cell target reproduces its own cell through the classifiers") {
  for (bool lower : {true, false})
    for (bool right : {false, true})
      for (int lmr = 0; lmr < 3; ++lmr)
        for (int bmf = 0; bmf < 3; ++bmf)
          for (int lv = 0; lv < 3; ++lv) {
            ConceptTuple cell{static_cast<DirLMR>(lmr), static_cast<DirBMF>(bmf),
                              static_cast<Level>(lv)};
            Vec3 t = cell_target(lower, right, cell, kSkel, kCfg);
            CHECK(classify_lmr(t.x, lower, right, kCfg) == cell.lmr);
            CHECK(classify_bmf(t.y, lower, kCfg) == cell.bmf);
            CHECK(classify_level(t.z, lower, kCfg) == cell.level);
            Vec3 root = lower ? (right ? kSkel.r_hip : kSkel.l_hip)
                              : (right ? kSkel.r_shoulder : kSkel.l_shoulder);
            double reach = 0.95 * (lower ? kSkel.leg_reach() : kSkel.arm_reach());
            CHECK((t - root).norm() <= reach + 1e-9);
          }
}

TEST_CASE("an all-hold rest script decodes to a constant rest pose") {
  ConceptScript script;
  SupportMove hold;
  hold.sides = {{Group::SupportL, 28, 1.0}, {Group::SupportR, 28, 1.0}};
  script.support.push_back(hold);
  script.left_hand = {{Group::UpperL, 28, 1.0}};
  script.right_hand = {{Group::UpperR, 28, 1.0}};
  MotionSequence m = decode(script_to_instances(script, 20), kSkel).motion;
  REQUIRE(m.frame_count() == 20);
  for (int t = 1; t < m.frame_count(); ++t)
    for (int j = 0; j < kJointCount; ++j)
      CHECK((m.frames[t][j] - m.frames[0][j]).norm() == doctest::Approx(0.0));
  // and it is the standing rest pose in canonical terms
  CanonicalPose c = canonicalize(m.frames[0]);
  Pose rest = rest_pose(kSkel);
  for (int j = 0; j < kJointCount; ++j) CHECK((c.joints[j] - rest[j]).norm() < 1e-9);
}

TEST_CASE("a three-step walk advances the pelvis by three step lengths") {
  MotionSequence m = synth_walk(3, Side::L, 0.5, 20);
  Vec3 start = joint(m.frames.front(), Joint::Pelvis);
  Vec3 end = joint(m.frames.back(), Joint::Pelvis);
  CHECK(end.y - start.y == doctest::Approx(-1.8).epsilon(0.05)); // forward is -y
  CHECK(end.x - start.x == doctest::Approx(0.0).epsilon(0.05));
}

TEST_CASE("decode then detect recovers the script exactly") {
  for (uint64_t seed = 1; seed <= 50; ++seed) {
    ConceptScript script = random_script(seed);
    InstanceSequence inst = script_to_instances(script, 20);
    InstanceSequence det = detect(decode(inst, kSkel).motion, kCfg);
    MetricReport r = evaluate(inst, det);
    for (int p = 0; p < kPartCount; ++p) {
      CHECK(r.smt[p] == 1.0);
      CHECK(r.tmp[p] >= 0.9);
    }
  }
}

TEST_CASE("synth_walk detects three alternating dynamic support intervals") {
  MotionSequence m = synth_walk(3, Side::L, 0.5, 20);
  auto seg = segment_intervals(m, kCfg);
  for (Group g : {Group::SupportL, Group::SupportR}) {
    int dynamic = 0;
    for (const auto& iv : seg.of(g))
      if (!iv.hold) ++dynamic;
    CHECK(dynamic == 3);
  }
  // the stepping sides alternate: collect dynamic forward runs in time order
  InstanceSequence det = detect(m, kCfg);
  struct Run { int start; Group g; };
  std::vector<Run> fwd_runs;
  for (Group g : {Group::SupportL, Group::SupportR})
    for (const auto& run : compress_part(det, g == Group::SupportL ? Part::SupL : Part::SupR))
      if (run.value.bmf == DirBMF::F) fwd_runs.push_back({run.start, g});
  std::sort(fwd_runs.begin(), fwd_runs.end(), [](auto& a, auto& b) { return a.start < b.start; });
  REQUIRE(fwd_runs.size() == 3);
  CHECK(fwd_runs[0].g == Group::SupportL);
  CHECK(fwd_runs[1].g == Group::SupportR);
  CHECK(fwd_runs[2].g == Group::SupportL);
}

TEST_CASE("ten half-second steps run about five seconds plus the lead hold") {
  MotionSequence m = synth_walk(10, Side::L, 0.5, 20);
  CHECK(m.frame_count() == 8 + 100); // 0.4 s lead + 10 x 0.5 s
}

TEST_CASE("five forward then three backward steps produce 5 F runs then 3 B runs") {
  ConceptScript fwd = walk_script(5, Side::L, 0.5);
  ConceptScript back = walk_script(3, Side::R, 0.5, WalkDirection::Backward, 0.0);
  fwd.support.insert(fwd.support.end(), back.support.begin(), back.support.end());
  fwd.left_hand.insert(fwd.left_hand.end(), back.left_hand.begin(), back.left_hand.end());
  fwd.right_hand.insert(fwd.right_hand.end(), back.right_hand.begin(), back.right_hand.end());

  InstanceSequence det = detect_decoded(fwd);
  struct Run { int start; DirBMF bmf; };
  std::vector<Run> runs;
  for (Part p : {Part::SupL, Part::SupR})
    for (const auto& run : compress_part(det, p))
      if (run.value.bmf != DirBMF::M) runs.push_back({run.start, run.value.bmf});
  std::sort(runs.begin(), runs.end(), [](auto& a, auto& b) { return a.start < b.start; });
  REQUIRE(runs.size() == 8);
  for (int i = 0; i < 5; ++i) CHECK(runs[i].bmf == DirBMF::F);
  for (int i = 5; i < 8; ++i) CHECK(runs[i].bmf == DirBMF::B);
}

TEST_CASE("arm waves detect one level-change run per phase") {
  MotionSequence m = synth_arm_wave(Side::R, 2, 20);
  InstanceSequence det = detect(m, kCfg);
  auto runs = compress_part(det, Part::ArmR);
  REQUIRE(runs.size() == 4);
  CHECK(runs[0].value.level == Level::Hi);
  CHECK(runs[1].value.level == Level::Mi);
  CHECK(runs[2].value.level == Level::Hi);
  CHECK(runs[3].value.level == Level::Mi);
  CHECK_THROWS_AS(synth_arm_wave(Side::R, 0, 20), Error);
  CHECK_THROWS_AS(synth_walk(0, Side::L, 0.5, 20), Error);
}

TEST_CASE("walking while waving detects both the steps and the wave") {
  ConceptScript script = walk_and_wave_script(4, Side::L, 0.5, Side::R);
  InstanceSequence det = detect_decoded(script);
  int fwd_runs = 0;
  for (Part p : {Part::SupL, Part::SupR})
    for (const auto& run : compress_part(det, p))
      if (run.value.bmf == DirBMF::F) ++fwd_runs;
  CHECK(fwd_runs == 4);
  int hi_runs = 0;
  for (const auto& run : compress_part(det, Part::ArmR))
    if (run.value.level == Level::Hi) ++hi_runs;
  CHECK(hi_runs >= 2);
}

TEST_CASE("reconstruction distance of the round trip is finite and improves with granularity") {
  MotionSequence m = synth_walk(3, Side::L, 0.5, 20);
  InstanceSequence det = detect(m, kCfg);

  DecodeOptions coarse;
  coarse.reference = &m;
  coarse.granularity = 1;
  DecodeOptions fine = coarse;
  fine.granularity = 4;

  double plain = reconstruction_distance(decode(det, kSkel).motion, m);
  double d1 = reconstruction_distance(decode(det, kSkel, coarse).motion, m);
  double d4 = reconstruction_distance(decode(det, kSkel, fine).motion, m);
  CHECK(std::isfinite(plain));
  CHECK(std::isfinite(d1));
  CHECK(d4 <= d1 + 1e-9);
}

TEST_CASE("decode reports clamped unreachable targets instead of failing") {
  // force an unreachable hand cell by shrinking the arm far below any target
  Skeleton tiny = kSkel;
  tiny.upper_arm = 0.05;
  tiny.forearm = 0.05;
  ConceptScript script;
  SupportMove hold;
  hold.sides = {{Group::SupportL, 28, 0.5}, {Group::SupportR, 28, 0.5}};
  script.support.push_back(hold);
  script.left_hand = {{Group::UpperL, 19, 0.5}}; // lowers down
  script.right_hand = {{Group::UpperR, 28, 0.5}};
  InstanceSequence inst = script_to_instances(script, 20);
  DecodeResult result = decode(inst, tiny);
  CHECK(result.motion.frame_count() == inst.frames());
  CHECK(!result.warnings.empty());
}

TEST_CASE("random scripts are deterministic in the seed") {
  ConceptScript a = random_script(123);
  ConceptScript b = random_script(123);
  ConceptScript c = random_script(124);
  CHECK(a == b);
  CHECK(a.caption != c.caption);
}
