#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "lamogen/metrics.hpp"
#include "lamogen/synth.hpp"
#include "test_util.hpp"

using namespace lamogen;

#ifndef LAMOGEN_GOLDEN_DIR
#define LAMOGEN_GOLDEN_DIR "tests/golden"
#endif

namespace {

// Builds a dense sequence whose SupL stream follows the given cells, one
// block per entry, `frames` frames each. Other parts stay at rest.
InstanceSequence blocks(const std::vector<ConceptTuple>& cells, int frames_per_block) {
  InstanceSequence seq = InstanceSequence::rest(static_cast<int>(cells.size()) * frames_per_block,
                                                20);
  for (size_t b = 0; b < cells.size(); ++b)
    for (int i = 0; i < frames_per_block; ++i) {
      int t = static_cast<int>(b) * frames_per_block + i;
      seq.set(t, Group::SupportL, 0, static_cast<uint8_t>(cells[b].lmr));
      seq.set(t, Group::SupportL, 1, static_cast<uint8_t>(cells[b].bmf));
      seq.set(t, Group::SupportL, 2, static_cast<uint8_t>(cells[b].level));
    }
  return seq;
}

const ConceptTuple F{DirLMR::M, DirBMF::F, Level::Mi};
const ConceptTuple M{};

InstanceSequence stretch2(const InstanceSequence& seq) {
  InstanceSequence out(seq.frames() * 2, seq.fps());
  for (int t = 0; t < seq.frames(); ++t)
    for (AttrId a = 0; a < kAttrCount; ++a) {
      out.set(2 * t, a, seq.get(t, a));
      out.set(2 * t + 1, a, seq.get(t, a));
    }
  return out;
}

double smt_oracle(const InstanceSequence& gt, const InstanceSequence& gen, Part part) {
  auto tokens = [&](const InstanceSequence& s) {
    std::vector<int> v;
    for (const auto& r : compress_part(s, part))
      v.push_back(static_cast<int>(r.value.lmr) * 9 + static_cast<int>(r.value.bmf) * 3 +
                  static_cast<int>(r.value.level));
    return v;
  };
  auto a = tokens(gt), b = tokens(gen);
  if (a.empty() && b.empty()) return 1.0;
  if (a.empty() || b.empty()) return 0.0;
  return double(testutil::lcs_memo(a, b)) / double(std::max(a.size(), b.size()));
}

} // namespace

TEST_CASE("lcs matches the worked examples") {
  std::vector<int> abc{1, 2, 3}, ac{1, 3}, empty;
  CHECK(lcs_length(abc, ac) == 2);
  CHECK(lcs_length(abc, abc) == 3);
  CHECK(lcs_length(abc, empty) == 0);
  CHECK(lcs_length(empty, empty) == 0);
}

TEST_CASE("lcs equals brute force exhaustively on small alphabets") {
  // all pairs of length <= 4 over a 3-symbol alphabet
  std::vector<std::vector<int>> seqs;
  seqs.push_back({});
  for (size_t begin = 0, end = 1; seqs.size() < 121; ) {
    size_t old_end = end;
    for (size_t i = begin; i < old_end; ++i)
      for (int s = 0; s < 3; ++s) {
        auto v = seqs[i];
        v.push_back(s);
        seqs.push_back(v);
      }
    begin = old_end;
    end = seqs.size();
  }
  for (const auto& a : seqs)
    for (const auto& b : seqs)
      CHECK(lcs_length(a, b) == testutil::lcs_brute(a, b));
}

TEST_CASE("compressed streams merge equal neighbours and cover the frames") {
  std::mt19937_64 rng(51);
  for (int it = 0; it < 30; ++it) {
    InstanceSequence seq = testutil::random_runs_sequence(rng, 40);
    for (int p = 0; p < kPartCount; ++p) {
      auto runs = compress_part(seq, static_cast<Part>(p));
      int total = 0;
      for (size_t i = 0; i < runs.size(); ++i) {
        CHECK(runs[i].length >= 1);
        total += runs[i].length;
        if (i > 0) {
          CHECK(!(runs[i].value == runs[i - 1].value));
          CHECK(runs[i].start == runs[i - 1].start + runs[i - 1].length);
        }
      }
      CHECK(total == 40);
    }
  }
}

TEST_CASE("smt follows the duration-ignored brute-force oracle") {
  InstanceSequence gt = blocks({F, M, F}, 5);
  // two adjacent forward blocks compress into one run
  InstanceSequence gen_merged = blocks({F, F}, 5);
  CHECK(smt(gt, gen_merged, Part::SupL) == doctest::Approx(smt_oracle(gt, gen_merged, Part::SupL)));
  CHECK(smt(gt, gen_merged, Part::SupL) == doctest::Approx(1.0 / 3.0));
  // a forward block followed by a rest block shares two of three runs
  InstanceSequence gen_fm = blocks({F, M}, 5);
  CHECK(smt(gt, gen_fm, Part::SupL) == doctest::Approx(smt_oracle(gt, gen_fm, Part::SupL)));
  CHECK(smt(gt, gen_fm, Part::SupL) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("smt is invariant to uniform temporal stretching") {
  std::mt19937_64 rng(53);
  for (int it = 0; it < 20; ++it) {
    InstanceSequence seq = testutil::random_runs_sequence(rng, 25);
    InstanceSequence wide = stretch2(seq);
    for (int p = 0; p < kPartCount; ++p) {
      CHECK(smt(seq, wide, static_cast<Part>(p)) == 1.0);
      CHECK(smt(seq, seq, static_cast<Part>(p)) == 1.0);
    }
  }
}

TEST_CASE("tmp of a doubled copy is exactly one half") {
  std::mt19937_64 rng(59);
  InstanceSequence seq = testutil::random_runs_sequence(rng, 10);
  InstanceSequence wide = stretch2(seq);
  for (int p = 0; p < kPartCount; ++p) {
    CHECK(tmp(seq, wide, static_cast<Part>(p)) == 0.5);
    CHECK(tmp(seq, seq, static_cast<Part>(p)) == 1.0);
  }
}

TEST_CASE("tmp of disjoint vocabularies is zero") {
  InstanceSequence gt = blocks({F}, 10);
  InstanceSequence gen = blocks({ConceptTuple{DirLMR::L, DirBMF::B, Level::Hi}}, 10);
  // make the comparison part differ everywhere, other parts rest
  CHECK(tmp(gt, gen, Part::SupL) == 0.0);
  CHECK(smt(gt, gen, Part::SupL) == 0.0);
}

TEST_CASE("hmn pairs runs above the 0.5 interval IoU bound") {
  // armL runs [0,10) and [10,20); supL runs [3,12) and [12,20):
  // IoU([0,10),[3,12)) = 7/12 > 0.5 and IoU([10,20),[12,20)) = 8/10 > 0.5
  auto build = [](bool arms_move) {
    InstanceSequence seq = InstanceSequence::rest(20, 20);
    for (int t = 0; t < 20; ++t) {
      if (arms_move) {
        Level lv = t < 10 ? Level::Hi : Level::Lo;
        seq.set(t, Group::UpperL, 2, static_cast<uint8_t>(lv));
      }
      DirBMF b = t < 3 ? DirBMF::M : (t < 12 ? DirBMF::F : DirBMF::B);
      seq.set(t, Group::SupportL, 1, static_cast<uint8_t>(b));
    }
    return seq;
  };
  InstanceSequence gt = build(true);
  CHECK(hmn(gt, gt, PartPair::ArmLSupL) == 1.0);
  // a generation with static arms shares no joint tuple
  InstanceSequence gen = build(false);
  CHECK(hmn(gt, gen, PartPair::ArmLSupL) == 0.0);
}

TEST_CASE("reconstruction distance follows its definition") {
  MotionSequence a;
  a.frames.assign(8, rest_pose(Skeleton::standard()));
  CHECK(reconstruction_distance(a, a) == 0.0);

  MotionSequence b = a;
  for (Pose& p : b.frames) joint(p, Joint::LHand).x += 0.25;
  // constant offset: velocities cancel, pose term is T * |d|
  CHECK(reconstruction_distance(a, b) == doctest::Approx(8 * 0.25));
  CHECK(reconstruction_distance(a, b, 0.0) == doctest::Approx(8 * 0.25));

  // lambda weights the velocity term
  MotionSequence c = a;
  joint(c.frames[4], Joint::LHand).x += 0.1; // one-frame spike
  double pose_l1 = 0.1;
  double vel_l1 = 0.2; // enters and leaves
  CHECK(reconstruction_distance(a, c, 0.0) == doctest::Approx(pose_l1));
  CHECK(reconstruction_distance(a, c, 0.5) == doctest::Approx(pose_l1 + 0.5 * vel_l1));

  MotionSequence shorter = a;
  shorter.frames.pop_back();
  CHECK_THROWS_AS(reconstruction_distance(a, shorter), Error);
}

TEST_CASE("evaluate of a sequence against itself is all ones") {
  std::mt19937_64 rng(61);
  InstanceSequence seq = testutil::random_runs_sequence(rng, 35);
  MetricReport r = evaluate(seq, seq);
  for (double v : r.smt) CHECK(v == 1.0);
  for (double v : r.tmp) CHECK(v == 1.0);
  for (double v : r.hmn) CHECK(v == 1.0);
  CHECK(r.avg_smt() == 1.0);
  CHECK(r.hmn_arm_sup() == 1.0);
}

TEST_CASE("metric axioms hold over random pairs") {
  std::mt19937_64 rng(67);
  for (int it = 0; it < 200; ++it) {
    InstanceSequence a = testutil::random_runs_sequence(
        rng, std::uniform_int_distribution<int>(2, 40)(rng));
    InstanceSequence b = testutil::random_runs_sequence(
        rng, std::uniform_int_distribution<int>(2, 40)(rng));
    MetricReport ab = evaluate(a, b);
    MetricReport ba = evaluate(b, a);
    for (int p = 0; p < kPartCount; ++p) {
      CHECK(ab.smt[p] >= 0.0);
      CHECK(ab.smt[p] <= 1.0);
      CHECK(ab.tmp[p] >= 0.0);
      CHECK(ab.tmp[p] <= 1.0);
      CHECK(ab.smt[p] == ba.smt[p]); // max-normalized LCS is symmetric
      CHECK(ab.tmp[p] == ba.tmp[p]);
    }
    for (int q = 0; q < kPartPairCount; ++q) {
      CHECK(ab.hmn[q] >= 0.0);
      CHECK(ab.hmn[q] <= 1.0);
      CHECK(ab.hmn[q] == ba.hmn[q]);
    }
  }
}

TEST_CASE("smt agrees with the brute-force oracle on random pairs") {
  std::mt19937_64 rng(71);
  for (int it = 0; it < 100; ++it) {
    InstanceSequence a = testutil::random_runs_sequence(rng, 30);
    InstanceSequence b = testutil::random_runs_sequence(rng, 30);
    for (int p = 0; p < kPartCount; ++p)
      CHECK(smt(a, b, static_cast<Part>(p)) ==
            doctest::Approx(smt_oracle(a, b, static_cast<Part>(p))));
  }
}

TEST_CASE("the walk-3 versus walk-2 report matches its golden file") {
  InstanceSequence gt = script_to_instances(walk_script(3, Side::L, 0.5), 20);
  InstanceSequence gen = script_to_instances(walk_script(2, Side::L, 0.5), 20);
  MetricReport r = evaluate(gt, gen);
  // cross-check against the independent oracle before trusting the snapshot
  for (int p = 0; p < kPartCount; ++p)
    CHECK(r.smt[p] == doctest::Approx(smt_oracle(gt, gen, static_cast<Part>(p))));

  std::ifstream in(std::string(LAMOGEN_GOLDEN_DIR) + "/walk3_vs_walk2_report.txt",
                   std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "golden report missing");
  std::ostringstream ss;
  ss << in.rdbuf();
  CHECK(format_report(r) == ss.str());
}
